#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod defaults;
pub mod error;
pub mod fuzzy;
pub mod harness;
pub mod hypotheses;
pub mod maps;
pub mod rng;
pub mod solver;

pub use error::{Error, Result};

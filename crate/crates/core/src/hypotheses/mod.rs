//! Sampled evaluation of the contraction hypotheses and of the step
//! recurrences along iteration traces.

mod cor3;
mod recurrence;
mod report;
mod thm1;
mod thm2;

pub use cor3::{cor3_f, cor3_g, cor3_h, cor3_terms, estimate_k_cor3};
pub use recurrence::{check_recurrence_thm1, check_recurrence_thm2, RecurrenceReport, RecurrenceWitness};
pub use report::{HypothesisReport, RatioRow, SampleSet, Tuple};
pub use thm1::{estimate_k_thm1, estimate_k_thm1_dual, thm1_dual_lhs_rhs, thm1_lhs_rhs};
pub use thm2::{estimate_k_thm2, thm2_f, thm2_g, thm2_h, thm2_terms, QuadTerms};

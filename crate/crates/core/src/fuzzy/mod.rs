//! Carrier spaces, t-norms, fuzzy metrics, t-grids and the sampled
//! convergence predicates.

pub mod axioms;
pub mod carrier;
pub mod grid;
pub mod metric;
pub mod sequence;
pub mod tnorm;

pub use axioms::{check_fm_axioms, check_tnorm_axioms, Axiom, AxiomReport, Violation, Witness};
pub use carrier::{CarrierSpace, CrispMetric, Point};
pub use grid::TGrid;
pub use metric::{FuzzyMetric, MetricForm, NearnessTable};
pub use sequence::{chained_lower_bound, is_cauchy, is_convergent, SequenceTrace};
pub use tnorm::{TNorm, TriangularNorm};

//! Default values shared by the library, the harness and the command line.
//!
//! | name                  | value  | used by                                   |
//! |-----------------------|--------|-------------------------------------------|
//! | `GRID_T_MIN`          | 1e-2   | smallest sampled t                        |
//! | `GRID_T_MAX`          | 1e2    | largest sampled t                         |
//! | `GRID_POINTS`         | 17     | log-spaced grid size (4 points / decade)  |
//! | `POINT_TOL`           | 1e-9   | crisp distance below which points are equal |
//! | `EPS`                 | 1e-9   | nearness tolerance of the stopping rule   |
//! | `MAX_ITER`            | 10000  | iteration cap                             |
//! | `STALL_WINDOW`        | 50     | strictly decreasing steps => diverging    |
//! | `P_MAX`               | 8      | Cauchy probe depth                        |
//! | `VERIFY_TOL`          | 1e-6   | conclusion residual tolerance             |
//! | `SAMPLING_WINDOW`     | 10     | half-width used to sample unbounded boxes |
//! | `SAMPLE_TRAJECTORY`   | 8      | hypothesis sample points from the trace   |
//! | `SAMPLE_RANDOM`       | 8      | hypothesis sample points drawn at random  |
//! | `UNIQUENESS_STARTS`   | 4      | starts per uniqueness probe in the suite  |
//! | `AXIOM_SAMPLES`       | 1000   | t-norm tuples / fuzzy metric triples      |
//! | `AXIOM_SEED`          | 42     | seed of the axiom samplers                |
//! | `SUITE_AXIOM_SAMPLES` | 50     | fuzzy metric triples per suite instance   |
//! | `SUITE_FACTOR`        | [0.05, 0.9] | contraction factor range of the suite |
//! | `SUITE_INSTANCES`     | 100    | instances per group of the default suite  |
//! | `SUITE_SEED`          | 1      | base seed of the default suite            |
//! | `T_MAX_SCALES`        | 10, 100 | t_max multipliers of the vacuity re-run  |

pub const GRID_T_MIN: f64 = 1e-2;
pub const GRID_T_MAX: f64 = 1e2;
pub const GRID_POINTS: usize = 17;
pub const POINT_TOL: f64 = 1e-9;
pub const EPS: f64 = 1e-9;
pub const MAX_ITER: usize = 10_000;
pub const STALL_WINDOW: usize = 50;
pub const P_MAX: usize = 8;
pub const VERIFY_TOL: f64 = 1e-6;
pub const SAMPLING_WINDOW: f64 = 10.0;
pub const SAMPLE_TRAJECTORY: usize = 8;
pub const SAMPLE_RANDOM: usize = 8;
pub const UNIQUENESS_STARTS: usize = 4;
pub const AXIOM_SAMPLES: usize = 1000;
pub const AXIOM_SEED: u64 = 42;
pub const SUITE_AXIOM_SAMPLES: usize = 50;
pub const SUITE_FACTOR: [f64; 2] = [0.05, 0.9];
pub const SUITE_INSTANCES: usize = 100;
pub const SUITE_SEED: u64 = 1;
pub const T_MAX_SCALES: [f64; 2] = [10.0, 100.0];

/// Absolute slack used when comparing two floating-point evaluations of the
/// same real quantity (associativity, triangle inequality).
pub const FLOAT_SLACK: f64 = 1e-12;

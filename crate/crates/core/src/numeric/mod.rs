//! Exact evaluation and randomized verification.

pub mod eval;
pub mod oracle;
pub mod polynomial;
pub mod report;
pub mod scaling;
pub mod smooth;
pub mod suites;

pub use eval::{eval_delta, eval_delta_dirs, eval_expr, Bindings};
pub use oracle::{derive_seed, RandomRationalMap};
pub use polynomial::{Polynomial, PolynomialMap};
pub use report::{Failure, VerificationReport};
pub use scaling::{scaling_slope, scaling_suite, ScalingConfig, ScalingOutcome};
pub use smooth::verify_smooth_chain;
pub use suites::{chain_suite, identity_suite, substitution, tangent_suite, SuiteConfig};

//! Searches for low-degree polynomials computing square roots and t-th roots.
//!
//! Every root-computing polynomial of degree below `|S_t|` is the interpolant
//! of one root choice per residue, so minimising degree is a search over
//! root assignments. The searches here enumerate those assignments (with
//! optional dropped nodes), look for sign vectors killing leading
//! coefficients, and sample the value distribution of the odd power sums
//! that govern those coefficients.

mod degree;
pub(crate) mod engine;
mod equidist;
mod kernel;
mod sign;

pub use degree::{
    degree_bounds, min_degree_exhaustive, min_degree_robust, min_degree_robust_with,
    min_degree_with, BoundCheck, SearchReport,
};
pub use engine::{SearchOptions, DEFAULT_MAX_ASSIGNMENTS};
pub use equidist::{equidist_stats, random_y, EquidistReport};
pub use kernel::{kernel_sign_search, kernel_sign_search_with, KernelReport, KernelStrategy};
pub use sign::{interpolant, interpolant_degree, leading_coefficient, SignVector};

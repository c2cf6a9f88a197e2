//! Polynomials over prime fields that compute square roots and t-th roots.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`]: residues mod p, Legendre symbols, primitive roots, Tonelli–Shanks.
//! * [`poly`]: dense polynomials over F_p, interpolation, gcd and radicals.
//! * [`roots`]: explicit root-computing polynomials and the error-count verifier.
//! * [`series`] and [`zero_run`]: exact rational power series and the
//!   consecutive-zero-coefficient checks for powers, rational powers and exponentials.
//! * [`search`]: exhaustive and randomized searches for low-degree root polynomials.

pub mod error;
pub mod field;
pub mod poly;
pub mod roots;
pub mod search;
pub mod series;
pub mod zero_run;

pub use error::{Error, ErrorKind, Result};
pub use field::{FieldContext, FieldElement};
pub use poly::{Degree, DensePoly};

//! Exact complex polynomial, rational and truncated-Laurent arithmetic.
//!
//! "Exact" means exact-in-floating-point: every series coefficient produced
//! here is a finite sum of double-precision products, with no truncation
//! inside a stated window. All values are immutable after construction and
//! every operation is pure.

mod laurent;
mod poly;
mod principal;
mod rational;
mod residue;
pub(crate) mod roots;

pub use laurent::LaurentWindow;
pub use poly::PolyC;
pub use principal::{exp_principal_series, PrincipalPart};
pub use rational::RationalC;
pub use residue::{residue_exp_product, residue_meromorphic};

//! Numerical machinery for genus-zero curves carrying exponential singularity
//! data: contour periods of `Q(z) e^{P(z)} dz` over relative cycles joining
//! infinite-order ramification points, an algebraic model of the associated
//! de Rham group, and recovery of the singularity derivative `P'` from period
//! matrices.
//!
//! The flagship configuration is a single puncture at infinity whose
//! singularity type is a polynomial `P` of degree `d`. The punctured plane
//! then completes with `d` ramification points, one per descent direction of
//! `Re P`, and the relative cycles joining them pair with the forms
//! `z^k e^P dz` by integration. The crate computes that pairing numerically,
//! checks its nondegeneracy, and extracts `P'` from the kernel of the period
//! matrix.
//!
//! Modules mirror the layers of the computation:
//!
//! - [`algebra`]: complex polynomial / rational / truncated-Laurent
//!   arithmetic, series of `e^h` for pole-only germs, residue extraction.
//! - [`curve`]: curve data, descent-direction combinatorics, divisors.
//! - [`homology`]: concrete contour representatives of relative cycles.
//! - [`quadrature`]: adaptive contour quadrature of exponential periods with
//!   truncation bounds for the infinite rays.
//! - [`cohomology`]: reduction of `Q e^P dz` to the spanning monomial forms
//!   and exactness testing.
//! - [`torelli`]: period-matrix assembly, rank verification, kernel
//!   extraction and the end-to-end recovery experiment.
//!
//! With the default `parallel` feature the period-matrix rows are evaluated
//! on a rayon pool; results are bit-identical to the sequential fallback.

pub mod algebra;
pub mod cohomology;
pub mod curve;
pub mod error;
pub mod homology;
mod parallel;
pub mod quadrature;
pub mod sphere;
pub mod torelli;

pub use algebra::{
    exp_principal_series, residue_exp_product, residue_meromorphic, LaurentWindow, PolyC,
    PrincipalPart, RationalC,
};
pub use cohomology::{h1_dimension, is_exact, reduce, DeRhamClass, ReductionCertificate};
pub use curve::{
    degree_check, divisor_of, ramification_points, CurveSpec, Divisor, ExpCurveGZ, Puncture,
    RamPoint,
};
pub use error::{Error, Result};
pub use homology::{standard_basis, CycleBasis, Ray, RelativeCycle};
pub use quadrature::{period, period_row, PeriodValue};
pub use sphere::SpherePoint;
pub use torelli::{
    build_period_matrix, build_period_matrix_seq, case2_residue_test, lemma_distinguisher,
    recover_derivative, torelli_verify, verify_nondegeneracy, Case2Residue, NondegeneracyReport,
    PeriodMatrix, RecoveryResult, TorelliReport, Verdict,
};

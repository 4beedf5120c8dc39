//! Metric Lie algebra engine for the solvable Iwasawa model of complex
//! hyperbolic space, with Ricci soliton certification for its Lie subgroups.
//!
//! The ambient object is the solvable Lie group `AN` acting simply
//! transitively on the complex hyperbolic space `CH^n`, modelled here as a
//! metric Lie algebra `a + n` in an orthonormal basis `(B; X_1, Y_1, ...,
//! X_{n-1}, Y_{n-1}; Z)` with complex structure `J` (`JB = Z`, `JX_i = Y_i`).
//! On top of that the crate provides:
//!
//! - intrinsic geometry of any finite-dimensional metric Lie algebra given by
//!   structure constants: Levi-Civita connection (Koszul formula), curvature,
//!   Jacobi operators, Ricci tensor, derivation spaces, nilpotency and
//!   solvability tests ([`algebra`]);
//! - the ambient `CH^n` model with closed-form connection for cross checks
//!   ([`ambient`]);
//! - constant Kähler angle decompositions of real subspaces of a complex
//!   vector space, with adapted bases ([`kahler`]);
//! - extrinsic geometry of Lie subalgebras at the identity: shape operators,
//!   mean curvature, Gauss-equation Ricci, curvature signatures
//!   ([`submanifold`]);
//! - certification of the algebraic Ricci soliton condition
//!   `Ric = c id + D` with `D` a derivation, Einstein detection and the
//!   rank-one solvable extension conditions ([`soliton`]);
//! - constructors and a classifier for the six families of Ricci soliton
//!   subgroups, plus a randomized falsification scanner ([`families`],
//!   [`scan`]);
//! - a JSON document format and report builders used by the `chn-soliton`
//!   binary ([`document`], [`cli`]).
//!
//! Every value is immutable after construction and all operations are pure
//! functions of their inputs, so the whole API can be driven concurrently.
//!
//! The `examples/` directory contains one runnable program per capability;
//! start with `cargo run --example ambient_curvature`.

pub mod algebra;
pub mod ambient;
pub mod cli;
pub mod document;
pub mod error;
pub mod families;
pub mod kahler;
mod linalg;
pub mod scan;
pub mod soliton;
pub mod submanifold;

pub use algebra::MetricLieAlgebra;
pub use ambient::AmbientModel;
pub use error::{Error, Result};
pub use families::{classify, build_family, Classification, FamilyItem, FamilySpec};
pub use kahler::KahlerDecomposition;
pub use scan::{scan, Profile, ScanReport};
pub use soliton::{certify_soliton, SolitonCertificate};
pub use submanifold::{GeometryReport, Subalgebra};

/// Numerical thresholds used throughout the crate.
///
/// The problems solved here are tiny and well conditioned; all exact answers
/// are rational or algebraic numbers separated by large gaps, so the defaults
/// below only have to absorb floating-point roundoff.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Relative singular-value threshold for rank and null-space decisions.
    pub rank_rel: f64,
    /// Per-component residual allowed when validating structure constants.
    pub jacobi: f64,
    /// Residual allowed when checking closure of a subspace under brackets.
    pub closure: f64,
    /// Frobenius residual below which `Ric - c id - D` counts as zero.
    pub soliton: f64,
    /// Residuals above this value count as a definite refutation; values
    /// between `soliton` and this floor are reported as inconclusive.
    pub falsification_floor: f64,
    /// Eigenvalue clustering width defining "constant Kähler angle".
    pub cluster: f64,
    /// Tolerance for curvature signature and parameter recovery matching.
    pub signature: f64,
    /// Norm threshold for flatness, minimality and total geodesy flags.
    pub flatness: f64,
}

impl Tolerances {
    pub const fn new() -> Self {
        Self {
            rank_rel: 1e-10,
            jacobi: 1e-12,
            closure: 1e-10,
            soliton: 1e-9,
            falsification_floor: 1e-4,
            cluster: 1e-8,
            signature: 1e-8,
            flatness: 1e-9,
        }
    }

    /// Same defaults with a different soliton certification threshold.
    pub fn with_soliton_tol(tol: f64) -> Self {
        Self {
            soliton: tol,
            ..Self::new()
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::new()
    }
}

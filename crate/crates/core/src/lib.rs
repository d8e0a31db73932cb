//! Moment spaces of probability measures on `[0,1]` and the random
//! orthogonal polynomials they induce.
//!
//! The library is organised around the bijection between a strictly interior
//! moment vector `(c_1, ..., c_k)` and its canonical moments
//! `(p_1, ..., p_k) ∈ (0,1)^k`: each `p_j` is the relative position of `c_j`
//! inside the range left free by the lower-order moments. Canonical moments
//! parametrise the three-term recurrence of the associated monic orthogonal
//! polynomials, whose roots are the eigenvalues of a symmetric tridiagonal
//! Jacobi matrix.
//!
//! Modules:
//! - [`canonical`]: moment ↔ canonical ↔ ζ transforms, moment ranges,
//!   arcsine reference moments, moment-space volume.
//! - [`orthopoly`]: monic polynomials from recurrences and Hankel
//!   determinants; the shifted Chebyshev family, its matrix, roots and
//!   eigenvectors.
//! - [`ensemble`]: seeded sampling of uniformly distributed moment
//!   sequences via independent symmetric Beta canonical moments, the two
//!   tridiagonal matrix models, and log-density evaluators.
//! - [`spectral`]: eigenvalues and first-row spectral weights of symmetric
//!   tridiagonal matrices; the lower principal representation.
//! - [`stats`]: empirical CDF distances, the arcsine law, covariance
//!   estimation, and the limit covariance matrices.
//!
//! All kernels are generic over the floating-point scalar through [`Real`];
//! `f64` is the working precision and the one the type aliases at the crate
//! root pin down.

pub mod canonical;
pub mod ensemble;
pub mod linalg;
pub mod orthopoly;
pub mod special;
pub mod spectral;
pub mod stats;
pub mod tridiag;

mod dd;
mod error;

pub use error::{Error, Result};
pub use tridiag::SymmetricTridiagonal;

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar the library is generic over.
///
/// `f32` and `f64` implement it; the interior tolerance is type-dependent
/// because `1 - 1e-10` is not representable away from `1` in `f32`.
pub trait Real:
    Float + FromPrimitive + std::iter::Sum + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
    /// Canonical moments inside `[EPS, 1 - EPS]` count as interior; anything
    /// outside is treated as a boundary point of the moment space.
    const INTERIOR_EPS: Self;
}

impl Real for f64 {
    const INTERIOR_EPS: Self = 1e-10;
}

impl Real for f32 {
    const INTERIOR_EPS: Self = 1e-5;
}

/// Shorthand for converting an `f64` literal into the working scalar.
pub(crate) fn fp<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("finite literal must convert")
}

/// Working-precision aliases.
pub type MomentVector64 = canonical::MomentVector<f64>;
pub type CanonicalVector64 = canonical::CanonicalVector<f64>;
pub type ZetaVector64 = canonical::ZetaVector<f64>;
pub type SymmetricTridiagonal64 = tridiag::SymmetricTridiagonal<f64>;
pub type Spectrum64 = spectral::Spectrum<f64>;
pub type PrincipalRepresentation64 = spectral::PrincipalRepresentation<f64>;
pub type CanonicalSample64 = ensemble::CanonicalSample<f64>;
pub type EmpiricalCdf64 = stats::EmpiricalCdf<f64>;

/// Single-precision aliases, mainly useful for quick scans.
pub type MomentVector32 = canonical::MomentVector<f32>;
pub type CanonicalVector32 = canonical::CanonicalVector<f32>;
pub type ZetaVector32 = canonical::ZetaVector<f32>;
pub type SymmetricTridiagonal32 = tridiag::SymmetricTridiagonal<f32>;

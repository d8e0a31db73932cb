//! Seeded sampling of uniformly distributed moment sequences and the two
//! tridiagonal matrix models built from them.
//!
//! A uniform draw from the order-`2n-1` moment space has independent
//! canonical moments, the j-th following the symmetric Beta law with shape
//! `2n - j` (so the last one is uniform). Sampling therefore reduces to a
//! stream of symmetric Beta variates, realized as ratios of two
//! Marsaglia-Tsang Gamma variates.
//!
//! Reproducibility contract: every sample is a pure function of
//! `(seed, replicate)`. The generator is a ChaCha8 stream keyed by
//! `mix_seed(seed, replicate)`, a fixed 64-bit avalanche mix, so parallel
//! replicates are substreams that do not depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canonical::{canonical_to_zeta, CanonicalVector};
use crate::special::{ln_beta, ln_gamma};
use crate::tridiag::SymmetricTridiagonal;
use crate::{fp, Error, Real, Result};

/// Parameters of one ensemble draw: the moment order parameter `n` (the
/// canonical vector has length `2n-1`), the experiment seed, and the
/// replicate index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnsembleSpec {
    pub n: usize,
    pub seed: u64,
    pub replicate: u64,
}

/// One sampled canonical vector together with the affine coordinates
/// `α_j = 2 p_{j+1} - 1 ∈ (-1, 1)` used by the second matrix model.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalSample<T> {
    order: usize,
    p: CanonicalVector<T>,
    alpha: Vec<T>,
}

impl<T: Real> CanonicalSample<T> {
    /// Wrap an explicit canonical vector of length `2n-1`.
    pub fn from_canonical(n: usize, p: CanonicalVector<T>) -> Result<Self> {
        if p.len() != 2 * n - 1 {
            return Err(Error::LengthMismatch {
                expected: 2 * n - 1,
                got: p.len(),
            });
        }
        let alpha = p.values().iter().map(|&v| (v + v) - T::one()).collect();
        Ok(Self { order: n, p, alpha })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn canonical(&self) -> &CanonicalVector<T> {
        &self.p
    }

    /// `α_j`, 0-based: `alpha()[j] = 2 p_{j+1} - 1`.
    pub fn alpha(&self) -> &[T] {
        &self.alpha
    }
}

/// Fixed avalanche mix deriving the per-replicate generator key. This is
/// the 64-bit finalizer of SplitMix64 applied to
/// `seed XOR replicate·0x9E3779B97F4A7C15`.
pub fn mix_seed(seed: u64, replicate: u64) -> u64 {
    let mut z = seed ^ replicate.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The generator owned by one replicate.
pub fn replicate_rng(spec: &EnsembleSpec) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix_seed(spec.seed, spec.replicate))
}

/// Standard normal variate by the Marsaglia polar method.
pub fn sample_standard_normal<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    loop {
        let u = fp::<T>(2.0) * fp::<T>(rng.random::<f64>()) - T::one();
        let v = fp::<T>(2.0) * fp::<T>(rng.random::<f64>()) - T::one();
        let s = u * u + v * v;
        if s > T::zero() && s < T::one() {
            let factor = (-(T::one() + T::one()) * s.ln() / s).sqrt();
            return u * factor;
        }
    }
}

/// Gamma(shape, 1) variate for shape ≥ 1 by the Marsaglia-Tsang
/// squeeze-and-accept method.
fn sample_gamma<T: Real, R: Rng + ?Sized>(shape: T, rng: &mut R) -> T {
    debug_assert!(shape >= T::one());
    let third = T::one() / fp::<T>(3.0);
    let d = shape - third;
    let c = (fp::<T>(9.0) * d).sqrt().recip();
    loop {
        let x: T = sample_standard_normal(rng);
        let v = T::one() + c * x;
        if v <= T::zero() {
            continue;
        }
        let v = v * v * v;
        let u = fp::<T>(rng.random::<f64>());
        let x2 = x * x;
        if u < T::one() - fp::<T>(0.0331) * x2 * x2 {
            return d * v;
        }
        if u.ln() < fp::<T>(0.5) * x2 + d * (T::one() - v + v.ln()) {
            return d * v;
        }
    }
}

/// Symmetric Beta(a, a) variate for a ≥ 1, as the ratio `G₁ / (G₁ + G₂)`
/// of two independent Gamma(a) draws, clamped into the interior band.
pub fn sample_beta_symmetric<T: Real, R: Rng + ?Sized>(a: T, rng: &mut R) -> T {
    assert!(a >= T::one(), "symmetric Beta sampler needs shape >= 1");
    let g1 = sample_gamma(a, rng);
    let g2 = sample_gamma(a, rng);
    let x = g1 / (g1 + g2);
    let eps = T::INTERIOR_EPS;
    x.max(eps).min(T::one() - eps)
}

/// Uniform draw from the order-`2n-1` moment space, in canonical
/// coordinates: `p_j ~ Beta(2n-j, 2n-j)` independently, `j = 1..=2n-1`.
/// Bit-identical for identical `(seed, replicate)`.
pub fn sample_canonical<T: Real>(spec: &EnsembleSpec) -> CanonicalSample<T> {
    assert!(spec.n >= 1);
    let p = sample_canonical_prefix(spec, 2 * spec.n - 1);
    CanonicalSample::from_canonical(spec.n, p).expect("length is 2n-1 by construction")
}

/// First `len` coordinates of [`sample_canonical`]'s draw, consuming the
/// identical generator stream. Truncated draws are what fixed-order
/// experiments need: the m×m Jacobi block depends only on the first `2m-1`
/// canonical moments, and moments of order ≤ k only on the first k.
pub fn sample_canonical_prefix<T: Real>(spec: &EnsembleSpec, len: usize) -> CanonicalVector<T> {
    assert!(spec.n >= 1);
    assert!(
        len >= 1 && len <= 2 * spec.n - 1,
        "prefix length {len} out of range for order {}",
        spec.n
    );
    let mut rng = replicate_rng(spec);
    let values = (1..=len)
        .map(|j| sample_beta_symmetric(fp::<T>((2 * spec.n - j) as f64), &mut rng))
        .collect();
    CanonicalVector::new(values).expect("sampler output is finite and nonempty")
}

/// The m×m Jacobi matrix of the sample: diagonal
/// `(Ξ₁, Ξ₂+Ξ₃, ..., Ξ_{2m-2}+Ξ_{2m-1})`, off-diagonal `√(Ξ_{2k-1} Ξ_{2k})`,
/// where `Ξ` are the ζ-coefficients of the sampled canonical moments. Its
/// eigenvalues are the roots of the sample's degree-m monic orthogonal
/// polynomial.
pub fn build_jacobi<T: Real>(s: &CanonicalSample<T>, m: usize) -> Result<SymmetricTridiagonal<T>> {
    if m == 0 || m > s.order {
        return Err(Error::OutOfRange {
            what: "jacobi dimension",
            got: m,
            max: s.order,
        });
    }
    let prefix = CanonicalVector::new(s.p.values()[..2 * m - 1].to_vec())?;
    let zeta = canonical_to_zeta(&prefix)?;
    SymmetricTridiagonal::jacobi_from_zeta(&zeta, m)
}

/// The n×n affine model in the α-coordinates, with sentinel `α_{-1} = -1`:
///
/// ```text
/// b_{k+1} = (1 - α_{2k-1}) α_{2k} - (1 + α_{2k-1}) α_{2k-2}
/// a_{k+1} = √( (1 - α_{2k-1}) (1 - α_{2k}²) (1 + α_{2k+1}) )
/// ```
///
/// Entrywise it equals `4·J - 2·I` for the same sample's full Jacobi
/// matrix, so its spectrum lives in `(-2, 2)`.
pub fn build_killip_nenciu<T: Real>(s: &CanonicalSample<T>) -> SymmetricTridiagonal<T> {
    let n = s.order;
    let alpha = |j: isize| -> T {
        if j < 0 {
            -T::one()
        } else {
            s.alpha[j as usize]
        }
    };
    let mut diag = Vec::with_capacity(n);
    for k in 0..n as isize {
        let a_mid = alpha(2 * k - 1);
        let second = if k == 0 {
            T::zero() // killed by the sentinel: 1 + α_{-1} = 0
        } else {
            (T::one() + a_mid) * alpha(2 * k - 2)
        };
        diag.push((T::one() - a_mid) * alpha(2 * k) - second);
    }
    let mut offdiag = Vec::with_capacity(n - 1);
    for k in 0..(n as isize - 1) {
        let a1 = alpha(2 * k - 1);
        let a2 = alpha(2 * k);
        let a3 = alpha(2 * k + 1);
        offdiag.push(((T::one() - a1) * (T::one() - a2 * a2) * (T::one() + a3)).sqrt());
    }
    SymmetricTridiagonal::new(diag, offdiag).expect("consistent lengths")
}

/// Log of the normalizing constant of the joint root density,
/// `c = Γ(n+1)⁻¹ Π_{r=0}^{n-1} Γ(2r+2n) / (Γ(2r+1)² Γ(2r+2))`.
pub fn joint_root_log_constant<T: Real>(n: usize) -> T {
    let mut acc = -ln_gamma(fp::<T>((n + 1) as f64));
    for r in 0..n {
        let tr = fp::<T>((2 * r) as f64);
        acc = acc + ln_gamma(tr + fp((2 * n) as f64))
            - fp::<T>(2.0) * ln_gamma(tr + T::one())
            - ln_gamma(tr + fp(2.0));
    }
    acc
}

/// Log joint density of the `n` roots: `log c + 4 Σ_{i<j} log|x_i - x_j|`
/// on the unit cube, `-∞` outside it or on any diagonal.
pub fn joint_root_log_density<T: Real>(x: &[T], n: usize) -> T {
    assert_eq!(x.len(), n, "need exactly n coordinates");
    let neg_inf = T::neg_infinity();
    for &xi in x {
        if !(xi >= T::zero() && xi <= T::one()) {
            return neg_inf;
        }
    }
    let mut acc = joint_root_log_constant::<T>(n);
    for i in 0..n {
        for j in i + 1..n {
            let gap = (x[i] - x[j]).abs();
            if gap == T::zero() {
                return neg_inf;
            }
            acc = acc + fp::<T>(4.0) * gap.ln();
        }
    }
    acc
}

/// Log density of the canonical vector of a uniform moment-space draw:
/// the sum of independent symmetric-Beta log densities with shapes
/// `2n - j`, `j = 1..=2n-1`.
pub fn canonical_log_density<T: Real>(p: &CanonicalVector<T>, n: usize) -> Result<T> {
    if p.len() != 2 * n - 1 {
        return Err(Error::LengthMismatch {
            expected: 2 * n - 1,
            got: p.len(),
        });
    }
    let mut acc = T::zero();
    for (idx, &pj) in p.values().iter().enumerate() {
        let shape = fp::<T>((2 * n - (idx + 1)) as f64);
        if pj < T::zero() || pj > T::one() {
            return Ok(T::neg_infinity());
        }
        if shape == T::one() {
            continue; // uniform factor
        }
        if pj == T::zero() || pj == T::one() {
            return Ok(T::neg_infinity());
        }
        acc = acc + (shape - T::one()) * (pj.ln() + (T::one() - pj).ln()) - ln_beta(shape, shape);
    }
    Ok(acc)
}

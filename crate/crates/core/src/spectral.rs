//! Eigenvalues and first-row spectral weights of real symmetric tridiagonal
//! matrices.
//!
//! Two independent solver paths are kept on purpose: the implicit-shift QL
//! iteration is the workhorse, and Sturm-sequence bisection exists as a
//! cross-check mode exercised by the test suite. Everything downstream
//! (root laws, distances, covariances) rests on these eigenvalues.
//!
//! The spectral weight of an eigenvalue is the squared first component of
//! its normalized eigenvector. For a Jacobi matrix with positive
//! off-diagonal these are the Gauss-quadrature weights of the unique
//! measure supported on `dim` points that matches the generating moments up
//! to order `2·dim - 1` (the lower principal representation). The QL
//! iteration accumulates the rotations on the first row only, keeping the
//! solve at O(dim²) time and O(dim) memory.

use crate::canonical::MomentVector;
use crate::tridiag::SymmetricTridiagonal;
use crate::{Error, Real, Result};

/// Sorted eigenvalues of a symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    eigenvalues: Vec<T>,
}

impl<T: Real> Spectrum<T> {
    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

/// Discrete measure `Σ w_k δ(x_k)`: support points ascending, weights
/// positive and summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalRepresentation<T> {
    support: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> PrincipalRepresentation<T> {
    pub fn support(&self) -> &[T] {
        &self.support
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    /// `∫ x^j dη` for `j = 1..=k`.
    pub fn moments(&self, k: usize) -> Vec<T> {
        let mut pow: Vec<T> = self.weights.clone();
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            for (p, &x) in pow.iter_mut().zip(&self.support) {
                *p = *p * x;
            }
            out.push(pow.iter().copied().sum());
        }
        out
    }
}

const MAX_SWEEPS: usize = 50;

/// Implicit-shift QL iteration on (d, e); `e` must carry a trailing zero.
/// When `first_row` is given it is rotated along and ends up holding the
/// first components of the normalized eigenvectors.
fn ql_implicit<T: Real>(d: &mut [T], e: &mut [T], mut first_row: Option<&mut [T]>) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(Error::NonConvergence {
                    index: l,
                    sweeps: MAX_SWEEPS,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (e[l] + e[l]);
            let mut r = g.hypot(T::one());
            let sign_r = if g >= T::zero() { r } else { -r };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let mut s = T::one();
            let mut c = T::one();
            let mut p = T::zero();
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + (c + c) * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(w) = first_row.as_deref_mut() {
                    let wf = w[i + 1];
                    w[i + 1] = s * w[i] + c * wf;
                    w[i] = c * w[i] - s * wf;
                }
            }
            if deflated {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}

/// All eigenvalues by implicit-shift QL, sorted ascending. Zero
/// off-diagonal entries are harmless (the iteration splits at them); the
/// only error is a failure to converge within the sweep budget, which is
/// reported, never silently truncated.
pub fn eigenvalues<T: Real>(t: &SymmetricTridiagonal<T>) -> Result<Spectrum<T>> {
    let mut d = t.diag().to_vec();
    let mut e = Vec::with_capacity(d.len());
    e.extend_from_slice(t.offdiag());
    e.push(T::zero());
    ql_implicit(&mut d, &mut e, None)?;
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(Spectrum { eigenvalues: d })
}

/// Number of eigenvalues strictly below `x`, from the signs of the LDLᵀ
/// pivots (Sturm sequence).
pub fn sturm_count<T: Real>(diag: &[T], offdiag: &[T], x: T) -> usize {
    let n = diag.len();
    if n == 0 {
        return 0;
    }
    let pivot_guard = T::min_positive_value() / T::epsilon();
    let mut count = 0;
    let mut q = diag[0] - x;
    if q < T::zero() {
        count += 1;
    }
    for i in 1..n {
        let denom = if q.abs() < pivot_guard {
            if q >= T::zero() {
                pivot_guard
            } else {
                -pivot_guard
            }
        } else {
            q
        };
        q = (diag[i] - x) - offdiag[i - 1] * offdiag[i - 1] / denom;
        if q < T::zero() {
            count += 1;
        }
    }
    count
}

/// All eigenvalues by Sturm-sequence bisection inside the Gershgorin
/// interval. Independent of [`eigenvalues`]; used as a cross-check.
pub fn eigenvalues_bisect<T: Real>(t: &SymmetricTridiagonal<T>) -> Spectrum<T> {
    let n = t.dim();
    let diag = t.diag();
    let off = t.offdiag();
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    for i in 0..n {
        let left = if i > 0 { off[i - 1].abs() } else { T::zero() };
        let right = if i < n - 1 { off[i].abs() } else { T::zero() };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    lo = lo - T::one();
    hi = hi + T::one();

    let two = T::one() + T::one();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut a = lo;
        let mut b = hi;
        for _ in 0..200 {
            let mid = (a + b) / two;
            if b - a < two * T::epsilon() * mid.abs().max(T::one()) {
                break;
            }
            if sturm_count(diag, off, mid) <= k {
                a = mid;
            } else {
                b = mid;
            }
        }
        out.push((a + b) / two);
    }
    Spectrum { eigenvalues: out }
}

/// Gauss measure of a Jacobi matrix: eigenvalues as support, squared first
/// eigenvector components as weights. Requires strictly positive
/// off-diagonal entries so the support points are distinct.
pub fn principal_representation<T: Real>(
    t: &SymmetricTridiagonal<T>,
) -> Result<PrincipalRepresentation<T>> {
    for (i, &e) in t.offdiag().iter().enumerate() {
        if !(e > T::zero()) {
            return Err(Error::DegenerateOffdiagonal { index: i });
        }
    }
    let n = t.dim();
    let mut d = t.diag().to_vec();
    let mut e = Vec::with_capacity(n);
    e.extend_from_slice(t.offdiag());
    e.push(T::zero());
    let mut w = vec![T::zero(); n];
    w[0] = T::one();
    ql_implicit(&mut d, &mut e, Some(&mut w))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap());
    let support: Vec<T> = order.iter().map(|&i| d[i]).collect();
    let weights: Vec<T> = order.iter().map(|&i| w[i] * w[i]).collect();
    Ok(PrincipalRepresentation { support, weights })
}

/// Spectral moments `c_j = Σ w_i x_i^j`, `j = 1..=k`, of the matrix's
/// principal representation.
pub fn spectral_moments<T: Real>(t: &SymmetricTridiagonal<T>, k: usize) -> Result<MomentVector<T>> {
    if k == 0 {
        return Err(Error::OutOfRange {
            what: "moment order",
            got: 0,
            max: usize::MAX,
        });
    }
    let pr = principal_representation(t)?;
    MomentVector::new(pr.moments(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{zeta_to_moments, ZetaVector};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn chebyshev_like(m: usize) -> SymmetricTridiagonal<f64> {
        let diag = vec![0.5; m];
        let mut off = vec![0.25; m.saturating_sub(1)];
        if !off.is_empty() {
            off[0] = 0.5 / 2f64.sqrt();
        }
        SymmetricTridiagonal::new(diag, off).unwrap()
    }

    fn random_tridiag(rng: &mut ChaCha8Rng, n: usize) -> SymmetricTridiagonal<f64> {
        let diag: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let off: Vec<f64> = (0..n - 1).map(|_| rng.random_range(0.05..1.0)).collect();
        SymmetricTridiagonal::new(diag, off).unwrap()
    }

    #[test]
    fn eigenvalues_of_3x3_reference() {
        let s = eigenvalues(&chebyshev_like(3)).unwrap();
        let expected = [0.066_987_298_11, 0.5, 0.933_012_701_89];
        for (got, want) in s.eigenvalues().iter().zip(expected) {
            assert!((got - want).abs() < 1e-11, "{got} vs {want}");
        }
    }

    #[test]
    fn eigenvalue_of_1x1() {
        let t = SymmetricTridiagonal::new(vec![0.3], vec![]).unwrap();
        assert_eq!(eigenvalues(&t).unwrap().eigenvalues(), &[0.3]);
    }

    #[test]
    fn similarity_invariants_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let n = rng.random_range(2..40);
            let t = random_tridiag(&mut rng, n);
            let s = eigenvalues(&t).unwrap();
            let sum: f64 = s.eigenvalues().iter().sum();
            let sum_sq: f64 = s.eigenvalues().iter().map(|l| l * l).sum();
            assert!((sum - t.trace()).abs() < 1e-10 * (1.0 + t.trace().abs()));
            assert!((sum_sq - t.frobenius_sq()).abs() < 1e-10 * (1.0 + t.frobenius_sq()));
        }
    }

    #[test]
    fn ql_and_bisection_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let n = rng.random_range(2..60);
            let t = random_tridiag(&mut rng, n);
            let a = eigenvalues(&t).unwrap();
            let b = eigenvalues_bisect(&t);
            for (x, y) in a.eigenvalues().iter().zip(b.eigenvalues()) {
                assert!((x - y).abs() < 1e-10, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn zero_offdiagonal_splits_blocks() {
        let t = SymmetricTridiagonal::new(vec![2.0, 1.0], vec![0.0]).unwrap();
        let s = eigenvalues(&t).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0, 2.0]);
        assert!(matches!(
            principal_representation(&t),
            Err(Error::DegenerateOffdiagonal { index: 0 })
        ));
    }

    #[test]
    fn interlacing_of_leading_principal_block() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let n = rng.random_range(3..30);
            let t = random_tridiag(&mut rng, n);
            let full = eigenvalues(&t).unwrap();
            let sub = eigenvalues(&t.leading_principal(n - 1).unwrap()).unwrap();
            // strict in exact arithmetic; allow solver-precision slack where
            // the true gap is below it
            let tol = 1e-13;
            for i in 0..n - 1 {
                assert!(
                    full.eigenvalues()[i] < sub.eigenvalues()[i] + tol
                        && sub.eigenvalues()[i] < full.eigenvalues()[i + 1] + tol,
                    "interlacing violated at {i}: {} | {} | {}",
                    full.eigenvalues()[i],
                    sub.eigenvalues()[i],
                    full.eigenvalues()[i + 1]
                );
            }
        }
    }

    #[test]
    fn principal_representation_point_mass() {
        let t = SymmetricTridiagonal::new(vec![0.42], vec![]).unwrap();
        let pr = principal_representation(&t).unwrap();
        assert_eq!(pr.support(), &[0.42]);
        assert_eq!(pr.weights(), &[1.0]);
    }

    #[test]
    fn equal_weights_for_chebyshev_matrix() {
        for m in [1usize, 2, 5, 16] {
            let pr = principal_representation(&chebyshev_like(m)).unwrap();
            let sum: f64 = pr.weights().iter().sum();
            assert!((sum - 1.0).abs() < 1e-12);
            for &w in pr.weights() {
                assert!((w - 1.0 / m as f64).abs() < 1e-12, "m={m}, w={w}");
            }
        }
    }

    #[test]
    fn principal_representation_matches_generating_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let p: Vec<f64> = (0..5).map(|_| rng.random_range(0.05..0.95)).collect();
            let z = crate::canonical::canonical_to_zeta(
                &crate::canonical::CanonicalVector::new(p).unwrap(),
            )
            .unwrap();
            let jac = SymmetricTridiagonal::jacobi_from_zeta(&z, 3).unwrap();
            let got = spectral_moments(&jac, 5).unwrap();
            let want = zeta_to_moments(&z, 5).unwrap();
            for (g, w) in got.values().iter().zip(want.values()) {
                assert!((g - w).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn spectral_moments_of_point_mass() {
        let t = SymmetricTridiagonal::new(vec![0.3f64], vec![]).unwrap();
        let m = spectral_moments(&t, 2).unwrap();
        assert!((m.values()[0] - 0.3).abs() < 1e-15);
        assert!((m.values()[1] - 0.09).abs() < 1e-15);
    }

    #[test]
    fn truncation_consistency_of_moments() {
        // The n-point and (n+1)-point truncations of the same coefficient
        // data share moments up to order 2n-1.
        let zeta_values = vec![0.4f64, 0.2, 0.3, 0.2, 0.25, 0.2, 0.3, 0.1, 0.2];
        let z = ZetaVector::new(zeta_values).unwrap();
        let j3 = SymmetricTridiagonal::jacobi_from_zeta(&z, 3).unwrap();
        let j4 = SymmetricTridiagonal::jacobi_from_zeta(&z, 4).unwrap();
        let m3 = spectral_moments(&j3, 5).unwrap();
        let m4 = spectral_moments(&j4, 5).unwrap();
        for (a, b) in m3.values().iter().zip(m4.values()) {
            assert!((a - b).abs() < 1e-9);
        }
    }
}

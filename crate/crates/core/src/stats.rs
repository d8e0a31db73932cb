//! Distribution distances, the arcsine reference law, covariance
//! estimation, and the exact limit covariance matrices of the root and
//! moment fluctuations.
//!
//! The root-fluctuation covariance is computed twice on purpose: once from
//! the closed-form entries `γ_{k,l}` (five Chebyshev sums) and once as the
//! exact covariance of the quadratic forms `t_kᵀ S t_k` of a structured
//! Gaussian tridiagonal matrix. The two must agree entrywise; the scalar
//! prefactor in front of `γ` is where the two published conventions
//! disagree, so both are exposed and [`GammaPrefactor::Derived`] (4/m²) is
//! the default. At m = 1 the derived mode gives variance 1, consistent
//! with the Beta fluctuation of the single root; the 2/m mode gives 1/2
//! and is kept only for reproducing the printed statement.

use ndarray::Array2;

use crate::orthopoly::{chebyshev_eigvec, chebyshev_roots, chebyshev_t};
use crate::tridiag::SymmetricTridiagonal;
use crate::{fp, Error, Real, Result};

/// Sorted sample representing its empirical distribution function.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf<T> {
    sorted: Vec<T>,
}

impl<T: Real> EmpiricalCdf<T> {
    pub fn new(mut sample: Vec<T>) -> Result<Self> {
        if sample.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(bad) = sample.iter().find(|v| !v.is_finite()) {
            return Err(Error::Domain {
                value: bad.to_f64().unwrap_or(f64::NAN),
            });
        }
        sample.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(Self { sorted: sample })
    }

    pub fn sample(&self) -> &[T] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Right-continuous value `#{x_i ≤ x} / n`.
    pub fn eval(&self, x: T) -> T {
        let count = self.sorted.partition_point(|&v| v <= x);
        fp::<T>(count as f64) / fp::<T>(self.len() as f64)
    }

    /// Left limit `#{x_i < x} / n`.
    pub fn eval_left(&self, x: T) -> T {
        let count = self.sorted.partition_point(|&v| v < x);
        fp::<T>(count as f64) / fp::<T>(self.len() as f64)
    }
}

/// Arcsine distribution function on `[0,1]`: `(2/π) asin(√x)`, with exact
/// endpoint values.
pub fn arcsine_cdf<T: Real>(x: T) -> Result<T> {
    if x < T::zero() || x > T::one() {
        return Err(Error::Domain {
            value: x.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(arcsine_cdf_total(x))
}

/// Total version of [`arcsine_cdf`], clamping arguments outside `[0,1]`
/// to the endpoint values. Handy as a plain closure for the distances.
pub fn arcsine_cdf_total<T: Real>(x: T) -> T {
    if x <= T::zero() {
        T::zero()
    } else if x >= T::one() {
        T::one()
    } else {
        fp::<T>(2.0 / std::f64::consts::PI) * x.sqrt().asin()
    }
}

/// Arcsine quantile by bisection (50 halvings, no special functions).
pub fn arcsine_quantile<T: Real>(u: T) -> T {
    let half = fp::<T>(0.5);
    if u <= T::zero() {
        return T::zero();
    }
    if u >= T::one() {
        return T::one();
    }
    let mut lo = T::zero();
    let mut hi = T::one();
    for _ in 0..50 {
        let mid = half * (lo + hi);
        if arcsine_cdf_total(mid) < u {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    half * (lo + hi)
}

/// Kolmogorov-Smirnov distance between an empirical CDF and a reference
/// CDF, taking both one-sided limits at every jump.
pub fn ks_distance<T: Real>(e: &EmpiricalCdf<T>, cdf: impl Fn(T) -> T) -> T {
    let n = fp::<T>(e.len() as f64);
    let mut sup = T::zero();
    for (i, &x) in e.sample().iter().enumerate() {
        let f = cdf(x);
        let below = (f - fp::<T>(i as f64) / n).abs();
        let above = (f - fp::<T>((i + 1) as f64) / n).abs();
        sup = sup.max(below).max(above);
    }
    sup
}

/// A distribution function that can be queried from both sides and can
/// list the points where its graph has corners or jumps.
pub trait DistributionFunction<T> {
    fn eval_right(&self, x: T) -> T;
    fn eval_left(&self, x: T) -> T;
    fn critical_points(&self) -> Vec<T>;
}

impl<T: Real> DistributionFunction<T> for EmpiricalCdf<T> {
    fn eval_right(&self, x: T) -> T {
        self.eval(x)
    }

    fn eval_left(&self, x: T) -> T {
        EmpiricalCdf::eval_left(self, x)
    }

    fn critical_points(&self) -> Vec<T> {
        self.sorted.clone()
    }
}

/// Continuous distribution function given by a total evaluation closure;
/// critical points are a fixed refinement grid over `[0,1]`, which is where
/// every distribution in this crate lives.
pub struct ContinuousCdf<F> {
    f: F,
}

impl<F> ContinuousCdf<F> {
    pub fn new(f: F) -> Self {
        Self { f }
    }
}

impl<T: Real, F: Fn(T) -> T> DistributionFunction<T> for ContinuousCdf<F> {
    fn eval_right(&self, x: T) -> T {
        (self.f)(x)
    }

    fn eval_left(&self, x: T) -> T {
        (self.f)(x)
    }

    fn critical_points(&self) -> Vec<T> {
        let n = 2048;
        (0..=n).map(|i| fp::<T>(i as f64 / n as f64)).collect()
    }
}

fn levy_feasible<T, A, B>(a: &A, b: &B, crit: &[T], h: T) -> bool
where
    T: Real,
    A: DistributionFunction<T>,
    B: DistributionFunction<T>,
{
    for &t in crit {
        // x = t and x → t⁻; the sup of the defect over each constancy
        // interval of a step function is attained in one of these limits.
        if b.eval_right(t) > a.eval_right(t + h) + h {
            return false;
        }
        if a.eval_right(t - h) - h > b.eval_right(t) {
            return false;
        }
        if b.eval_left(t) > a.eval_left(t + h) + h {
            return false;
        }
        if a.eval_left(t - h) - h > b.eval_left(t) {
            return false;
        }
    }
    true
}

/// Lévy distance `inf { h : F(x-h) - h ≤ G(x) ≤ F(x+h) + h  ∀x }` between
/// two distribution functions supported in `[0,1]`, by bisection on `h`
/// with evaluation at the union of both functions' critical points.
///
/// Converges to 1e-6 and returns the lower end of the final bracket, so
/// the result never overstates the distance; in particular the standard
/// bounds `L ≤ KS` and any cube-root trace bound stay valid for the
/// returned value.
pub fn levy_distance<T, A, B>(a: &A, b: &B) -> T
where
    T: Real,
    A: DistributionFunction<T>,
    B: DistributionFunction<T>,
{
    let mut crit = a.critical_points();
    crit.extend(b.critical_points());
    crit.sort_by(|x, y| x.partial_cmp(y).unwrap());
    crit.dedup();

    if levy_feasible(a, b, &crit, T::zero()) {
        return T::zero();
    }
    let mut lo = T::zero();
    let mut hi = T::one();
    let tol = fp::<T>(1e-6);
    let half = fp::<T>(0.5);
    while hi - lo > tol {
        let mid = half * (lo + hi);
        if levy_feasible(a, b, &crit, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo
}

/// The trace statistic dominating the cubed Lévy distance between the root
/// empirical CDF and the reference: `tr((J - D)²) / n`, computed from the
/// tridiagonal entries as `(Σ (diag diff)² + 2 Σ (offdiag diff)²) / n`.
pub fn levy_bound_statistic<T: Real>(
    j: &SymmetricTridiagonal<T>,
    d: &SymmetricTridiagonal<T>,
) -> Result<T> {
    if j.dim() != d.dim() {
        return Err(Error::DimensionMismatch {
            left: j.dim(),
            right: d.dim(),
        });
    }
    let n = fp::<T>(j.dim() as f64);
    let diag_sq: T = j
        .diag()
        .iter()
        .zip(d.diag())
        .map(|(&a, &b)| (a - b) * (a - b))
        .sum();
    let off_sq: T = j
        .offdiag()
        .iter()
        .zip(d.offdiag())
        .map(|(&a, &b)| (a - b) * (a - b))
        .sum();
    Ok((diag_sq + off_sq + off_sq) / n)
}

/// Which scalar prefactor turns the raw `γ` entries into the limit
/// covariance of the centered, `4√n`-scaled roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaPrefactor {
    /// `2/m`, as printed in the theorem statement.
    Paper,
    /// `4/m² = 1/(m/2)²`, the quadratic-form normalization `(t_kᵀt_k)⁻²`;
    /// the default, and the one consistent with the m = 1 Beta variance.
    Derived,
}

/// Raw root-fluctuation covariance entries together with the prefactor
/// convention used to scale them.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaMatrix<T> {
    m: usize,
    gamma_raw: Array2<T>,
    prefactor: GammaPrefactor,
}

impl<T: Real> GammaMatrix<T> {
    pub fn order(&self) -> usize {
        self.m
    }

    pub fn prefactor_mode(&self) -> GammaPrefactor {
        self.prefactor
    }

    pub fn with_prefactor(mut self, prefactor: GammaPrefactor) -> Self {
        self.prefactor = prefactor;
        self
    }

    /// The unscaled entries `γ_{k,l}`.
    pub fn raw(&self) -> &Array2<T> {
        &self.gamma_raw
    }

    pub fn prefactor_value(&self) -> T {
        let m = fp::<T>(self.m as f64);
        match self.prefactor {
            GammaPrefactor::Paper => fp::<T>(2.0) / m,
            GammaPrefactor::Derived => fp::<T>(4.0) / (m * m),
        }
    }

    /// `prefactor · γ`.
    pub fn scaled(&self) -> Array2<T> {
        let s = self.prefactor_value();
        self.gamma_raw.mapv(|v| s * v)
    }
}

/// Closed-form `γ_{k,l}`, assembled term by term from the five Chebyshev
/// sums (with the `T_0 = 1` convention) at the degree-m Chebyshev roots.
pub fn gamma_matrix<T: Real>(m: usize) -> GammaMatrix<T> {
    assert!(m >= 1);
    let roots = chebyshev_roots::<T>(m);
    // t[j][k] = T_j(x_{k+1,m})
    let t: Vec<Vec<T>> = (0..=m)
        .map(|j| {
            roots
                .iter()
                .map(|&x| chebyshev_t(j, x).expect("roots lie in [0,1]"))
                .collect()
        })
        .collect();
    let quarter = fp::<T>(0.25);
    let half = fp::<T>(0.5);
    let gamma_raw = Array2::from_shape_fn((m, m), |(k, l)| {
        let mut acc = quarter;
        for j in 2..=m {
            let a = t[j - 1][k];
            let b = t[j - 1][l];
            acc = acc + half * a * a * b * b;
        }
        for j in 1..m {
            let ak = t[j - 1][k];
            let bk = t[j][k];
            let al = t[j - 1][l];
            let bl = t[j][l];
            acc = acc - quarter * (ak * ak * bl * bl + al * al * bk * bk);
        }
        acc = acc + quarter * t[1][k] * t[1][l];
        for j in 2..m {
            acc = acc + half * t[j - 1][k] * t[j][k] * t[j - 1][l] * t[j][l];
        }
        for j in 1..m.saturating_sub(1) {
            acc = acc
                - quarter
                    * (t[j - 1][k] * t[j][k] * t[j][l] * t[j + 1][l]
                        + t[j - 1][l] * t[j][l] * t[j][k] * t[j + 1][k]);
        }
        acc
    });
    GammaMatrix {
        m,
        gamma_raw,
        prefactor: GammaPrefactor::Derived,
    }
}

/// Covariance of the centered diagonal limit variables: variance 1 for the
/// first, 1/2 after; covariance -1/2 between the first pair, -1/4 between
/// later neighbours. (This is also the tridiagonal matrix `A` of
/// [`intermediate_covariances`].)
fn diag_block_cov<T: Real>(dim: usize) -> Array2<T> {
    let mut c = Array2::zeros((dim, dim));
    for i in 0..dim {
        c[(i, i)] = if i == 0 { T::one() } else { fp(0.5) };
        if i + 1 < dim {
            let v = if i == 0 { fp::<T>(-0.5) } else { fp(-0.25) };
            c[(i, i + 1)] = v;
            c[(i + 1, i)] = v;
        }
    }
    c
}

/// Covariance of the off-diagonal limit variables: variance 1/8 each,
/// covariance -1/(8√2) between the first pair, -1/16 between later
/// neighbours.
fn offdiag_block_cov<T: Real>(dim: usize) -> Array2<T> {
    let mut c = Array2::zeros((dim, dim));
    for i in 0..dim {
        c[(i, i)] = fp(0.125);
        if i + 1 < dim {
            let v = if i == 0 {
                fp::<T>(-1.0) / (fp::<T>(8.0) * fp::<T>(std::f64::consts::SQRT_2))
            } else {
                fp(-0.0625)
            };
            c[(i, i + 1)] = v;
            c[(i + 1, i)] = v;
        }
    }
    c
}

/// Exact covariance of the quadratic forms `(t_kᵀ S t_k)_{k=1..m}` of the
/// structured Gaussian tridiagonal limit matrix `S`:
///
/// ```text
/// Cov_kl = Σ_{i,j} v_i² w_j² Cov(M_i, M_j) + 4 Σ_{i,j} v_i v_{i+1} w_j w_{j+1} Cov(N_i, N_j)
/// ```
///
/// with `v = t_{k,m}`, `w = t_{l,m}`. A deterministic finite sum, no
/// sampling; dividing by `(m/2)²` yields the limit covariance of the
/// scaled roots. This is the independent cross-check for [`gamma_matrix`].
pub fn quadratic_form_covariance<T: Real>(m: usize) -> Array2<T> {
    assert!(m >= 1);
    let vecs: Vec<Vec<T>> = (1..=m)
        .map(|k| chebyshev_eigvec(m, k).expect("k in range"))
        .collect();
    let cov_m = diag_block_cov::<T>(m);
    let cov_n = offdiag_block_cov::<T>(m.saturating_sub(1));
    let four = fp::<T>(4.0);
    Array2::from_shape_fn((m, m), |(k, l)| {
        let v = &vecs[k];
        let w = &vecs[l];
        let mut acc = T::zero();
        for i in 0..m {
            for j in 0..m {
                let c = cov_m[(i, j)];
                if c != T::zero() {
                    acc = acc + v[i] * v[i] * w[j] * w[j] * c;
                }
            }
        }
        for i in 0..m.saturating_sub(1) {
            for j in 0..m.saturating_sub(1) {
                let c = cov_n[(i, j)];
                if c != T::zero() {
                    acc = acc + four * v[i] * v[i + 1] * w[j] * w[j + 1] * c;
                }
            }
        }
        acc
    })
}

/// The two intermediate tridiagonal covariance matrices of the coefficient
/// fluctuations: `A` of dimension `2m-1` for the ζ-coordinates, and the
/// block-diagonal `V = diag(V₁₁, V₂₂)` for the matrix entries, where `V₁₁`
/// is structurally the dimension-m instance of `A` and `V₂₂` carries the
/// 1/8 prefactor with a `-1/√2` leading off-diagonal entry. `V` is
/// returned as one tridiagonal matrix with a zero junction entry.
pub fn intermediate_covariances<T: Real>(
    m: usize,
) -> Result<(SymmetricTridiagonal<T>, SymmetricTridiagonal<T>)> {
    if m < 2 {
        return Err(Error::OutOfRange {
            what: "order",
            got: m,
            max: usize::MAX,
        });
    }
    let a_pattern = |dim: usize| -> (Vec<T>, Vec<T>) {
        let mut diag = vec![fp::<T>(0.5); dim];
        diag[0] = T::one();
        let mut off = vec![fp::<T>(-0.25); dim - 1];
        off[0] = fp(-0.5);
        (diag, off)
    };

    let (a_diag, a_off) = a_pattern(2 * m - 1);
    let a = SymmetricTridiagonal::new(a_diag, a_off)?;

    let (mut v_diag, mut v_off) = a_pattern(m);
    v_off.push(T::zero()); // junction between the two independent blocks
    let eighth = fp::<T>(0.125);
    for i in 0..m - 1 {
        v_diag.push(eighth);
        if i + 1 < m - 1 {
            v_off.push(if i == 0 {
                -eighth / fp::<T>(std::f64::consts::SQRT_2)
            } else {
                eighth * fp(-0.5)
            });
        }
    }
    let v = SymmetricTridiagonal::new(v_diag, v_off)?;
    Ok((a, v))
}

/// Sample mean and unbiased sample covariance of replicated vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceEstimate<T> {
    pub mean: Vec<T>,
    pub cov: Array2<T>,
    pub count: usize,
}

pub fn covariance_estimate<T: Real>(samples: &[Vec<T>]) -> Result<CovarianceEstimate<T>> {
    if samples.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: samples.len(),
        });
    }
    let dim = samples[0].len();
    if let Some(bad) = samples.iter().find(|s| s.len() != dim) {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: bad.len(),
        });
    }
    let count = samples.len();
    let n = fp::<T>(count as f64);
    let mut mean = vec![T::zero(); dim];
    for s in samples {
        for (acc, &v) in mean.iter_mut().zip(s) {
            *acc = *acc + v;
        }
    }
    for acc in &mut mean {
        *acc = *acc / n;
    }
    let mut cov = Array2::zeros((dim, dim));
    for s in samples {
        for i in 0..dim {
            let di = s[i] - mean[i];
            for j in i..dim {
                cov[(i, j)] = cov[(i, j)] + di * (s[j] - mean[j]);
            }
        }
    }
    let denom = n - T::one();
    for i in 0..dim {
        for j in i..dim {
            cov[(i, j)] = cov[(i, j)] / denom;
            cov[(j, i)] = cov[(i, j)];
        }
    }
    Ok(CovarianceEstimate { mean, cov, count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::sample_standard_normal;
    use crate::linalg::{cholesky, symmetric_eigenvalues};
    use crate::spectral::eigenvalues;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn arcsine_cdf_reference_points() {
        assert_eq!(arcsine_cdf(0.0f64).unwrap(), 0.0);
        assert_eq!(arcsine_cdf(1.0f64).unwrap(), 1.0);
        assert!((arcsine_cdf(0.5f64).unwrap() - 0.5).abs() < 1e-15);
        // value at the larger degree-2 Chebyshev root
        assert!((arcsine_cdf(0.853_553_39f64).unwrap() - 0.75).abs() < 1e-8);
        assert!(arcsine_cdf(1.5f64).is_err());
    }

    #[test]
    fn arcsine_quantile_inverts_cdf() {
        for i in 0..=1000 {
            let u = i as f64 / 1000.0;
            let x = arcsine_quantile(u);
            assert!((arcsine_cdf_total(x) - u).abs() < 1e-12, "u={u}");
        }
    }

    #[test]
    fn ks_of_exact_quantile_sample() {
        let n = 100;
        let sample: Vec<f64> = (1..=n)
            .map(|k| arcsine_quantile((k as f64 - 0.5) / n as f64))
            .collect();
        let e = EmpiricalCdf::new(sample).unwrap();
        let d = ks_distance(&e, arcsine_cdf_total);
        assert!(d <= 0.5 / n as f64 + 1e-12, "d = {d}");
    }

    #[test]
    fn ks_of_single_point() {
        let e = EmpiricalCdf::new(vec![0.5f64]).unwrap();
        let d = ks_distance(&e, arcsine_cdf_total);
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ks_of_chebyshev_roots() {
        let e = EmpiricalCdf::new(chebyshev_roots::<f64>(200)).unwrap();
        let d = ks_distance(&e, arcsine_cdf_total);
        assert!(d < 0.01, "d = {d}");
        // Chebyshev roots are the exact midpoint quantiles, so the distance
        // is in fact 1/(2n).
        assert!(d <= 0.5 / 200.0 + 1e-12);
    }

    #[test]
    fn levy_identical_samples_is_zero() {
        let e1 = EmpiricalCdf::new(vec![0.1f64, 0.4, 0.9]).unwrap();
        let e2 = e1.clone();
        assert_eq!(levy_distance(&e1, &e2), 0.0);
    }

    /// Dense-grid Lévy oracle: scan h upward until the band condition holds
    /// on a fine x grid refined around every jump of either sample.
    fn levy_grid_oracle(f: &EmpiricalCdf<f64>, g: &EmpiricalCdf<f64>) -> f64 {
        let mut xs: Vec<f64> = (-200..=1400).map(|i| i as f64 / 1000.0).collect();
        for &j in f.sample().iter().chain(g.sample()) {
            xs.push(j - 1e-9);
            xs.push(j);
            xs.push(j + 1e-9);
        }
        let feasible = |h: f64| {
            xs.iter().all(|&x| {
                g.eval(x) <= f.eval(x + h) + h + 1e-12 && f.eval(x - h) - h <= g.eval(x) + 1e-12
            })
        };
        let mut h = 0.0;
        while h <= 1.2 {
            if feasible(h) {
                return h;
            }
            h += 1e-4;
        }
        1.2
    }

    #[test]
    fn levy_point_masses_match_grid_oracle() {
        let f = EmpiricalCdf::new(vec![0.0f64]).unwrap();
        let g = EmpiricalCdf::new(vec![0.2f64]).unwrap();
        let fast = levy_distance(&f, &g);
        let slow = levy_grid_oracle(&f, &g);
        assert!((fast - slow).abs() < 2e-4, "{fast} vs {slow}");
        assert!((fast - 0.2).abs() < 1e-4);
    }

    #[test]
    fn levy_random_pairs_against_oracle_and_ks_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(2718);
        for _ in 0..100 {
            let n1 = rng.random_range(1..30);
            let n2 = rng.random_range(1..30);
            let s1: Vec<f64> = (0..n1).map(|_| rng.random::<f64>()).collect();
            let s2: Vec<f64> = (0..n2).map(|_| rng.random::<f64>()).collect();
            let e1 = EmpiricalCdf::new(s1).unwrap();
            let e2 = EmpiricalCdf::new(s2).unwrap();
            let levy = levy_distance(&e1, &e2);
            // against the dense-grid oracle
            let oracle = levy_grid_oracle(&e1, &e2);
            assert!((levy - oracle).abs() < 2e-4, "{levy} vs {oracle}");
            // L ≤ KS, evaluated against the other empirical CDF
            let ks = {
                let mut sup = 0.0f64;
                for &x in e1.sample().iter().chain(e2.sample()) {
                    sup = sup.max((e1.eval(x) - e2.eval(x)).abs());
                    sup = sup.max((e1.eval_left(x) - e2.eval_left(x)).abs());
                }
                sup
            };
            assert!(levy <= ks + 1e-9, "levy {levy} > ks {ks}");
        }
    }

    #[test]
    fn levy_against_continuous_reference() {
        let e = EmpiricalCdf::new(chebyshev_roots::<f64>(100)).unwrap();
        let arcsine = ContinuousCdf::new(arcsine_cdf_total::<f64>);
        let levy = levy_distance(&arcsine, &e);
        let ks = ks_distance(&e, arcsine_cdf_total);
        assert!(levy <= ks + 1e-9);
        assert!(levy > 0.0);
    }

    #[test]
    fn levy_bound_statistic_values() {
        let d = crate::orthopoly::chebyshev_matrix::<f64>(5);
        assert_eq!(levy_bound_statistic(&d, &d).unwrap(), 0.0);
        let j = d.affine(1.0, 0.1); // shift diagonal by 0.1
        let stat = levy_bound_statistic(&j, &d).unwrap();
        assert!((stat - 0.01).abs() < 1e-14); // 5 · 0.1² / 5
        let small = crate::orthopoly::chebyshev_matrix::<f64>(3);
        assert!(levy_bound_statistic(&j, &small).is_err());
    }

    #[test]
    fn gamma_matrix_order_one() {
        let g = gamma_matrix::<f64>(1);
        assert!((g.raw()[(0, 0)] - 0.25).abs() < 1e-15);
        // derived prefactor gives variance 1; the printed 2/m would give 1/2
        assert!((g.scaled()[(0, 0)] - 1.0).abs() < 1e-14);
        let printed = g.clone().with_prefactor(GammaPrefactor::Paper);
        assert!((printed.scaled()[(0, 0)] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn gamma_matrix_order_two_is_quarter_identity() {
        let g = gamma_matrix::<f64>(2);
        for k in 0..2 {
            for l in 0..2 {
                let want = if k == l { 0.25 } else { 0.0 };
                assert!((g.raw()[(k, l)] - want).abs() < 1e-14, "({k},{l})");
            }
        }
        // at m = 2 both prefactors coincide at 1
        assert!((g.prefactor_value() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gamma_matrix_matches_quadratic_form_oracle() {
        for m in 1..=8usize {
            let g = gamma_matrix::<f64>(m);
            let q = quadratic_form_covariance::<f64>(m);
            for k in 0..m {
                for l in 0..m {
                    assert!(
                        (g.raw()[(k, l)] - q[(k, l)]).abs() < 1e-10,
                        "m={m}, ({k},{l}): {} vs {}",
                        g.raw()[(k, l)],
                        q[(k, l)]
                    );
                }
            }
        }
    }

    #[test]
    fn gamma_matrix_scaled_is_psd() {
        for m in 1..=8usize {
            let g = gamma_matrix::<f64>(m).scaled();
            for l in symmetric_eigenvalues(&g) {
                assert!(l >= -1e-12, "m={m}: {l}");
            }
        }
    }

    #[test]
    fn quadratic_form_covariance_against_gaussian_sampling() {
        // Simulate the structured Gaussian matrix and compare the sampled
        // covariance of the quadratic forms with the exact finite sum.
        let m = 3usize;
        let lm = cholesky(&diag_block_cov::<f64>(m)).unwrap();
        let ln = cholesky(&offdiag_block_cov::<f64>(m - 1)).unwrap();
        let vecs: Vec<Vec<f64>> = (1..=m).map(|k| chebyshev_eigvec(m, k).unwrap()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(60_601);
        let reps = 1_000_000usize;
        let mut draws: Vec<Vec<f64>> = Vec::with_capacity(reps);
        for _ in 0..reps {
            let zm: Vec<f64> = (0..m).map(|_| sample_standard_normal(&mut rng)).collect();
            let zn: Vec<f64> = (0..m - 1).map(|_| sample_standard_normal(&mut rng)).collect();
            let mv: Vec<f64> = (0..m)
                .map(|i| (0..=i).map(|j| lm[(i, j)] * zm[j]).sum())
                .collect();
            let nv: Vec<f64> = (0..m - 1)
                .map(|i| (0..=i).map(|j| ln[(i, j)] * zn[j]).sum())
                .collect();
            let q: Vec<f64> = vecs
                .iter()
                .map(|v| {
                    let diag: f64 = (0..m).map(|i| v[i] * v[i] * mv[i]).sum();
                    let off: f64 = (0..m - 1).map(|i| 2.0 * v[i] * v[i + 1] * nv[i]).sum();
                    diag + off
                })
                .collect();
            draws.push(q);
        }
        let est = covariance_estimate(&draws).unwrap();
        let exact = quadratic_form_covariance::<f64>(m);
        for k in 0..m {
            for l in 0..m {
                let se = ((exact[(k, k)] * exact[(l, l)] + exact[(k, l)].powi(2))
                    / reps as f64)
                    .sqrt();
                let tol = 3.0 * se + 1e-6;
                assert!(
                    (est.cov[(k, l)] - exact[(k, l)]).abs() < tol,
                    "({k},{l}): {} vs {}",
                    est.cov[(k, l)],
                    exact[(k, l)]
                );
            }
        }
    }

    #[test]
    fn intermediate_covariance_entries() {
        let (a, v) = intermediate_covariances::<f64>(2).unwrap();
        assert_eq!(a.diag(), &[1.0, 0.5, 0.5]);
        assert_eq!(a.offdiag(), &[-0.5, -0.25]);
        // V = diag(A_2, [1/8])
        assert_eq!(v.diag(), &[1.0, 0.5, 0.125]);
        assert_eq!(v.offdiag(), &[-0.5, 0.0]);

        let (_, v3) = intermediate_covariances::<f64>(3).unwrap();
        // V₂₂ block for m = 3: (1/8) [[1, -1/√2], [-1/√2, 1]]
        assert_eq!(&v3.diag()[3..], &[0.125, 0.125]);
        assert!((v3.offdiag()[3] + 0.125 / 2f64.sqrt()).abs() < 1e-15);

        assert!(intermediate_covariances::<f64>(1).is_err());
    }

    #[test]
    fn intermediate_covariance_leading_block_is_a_pattern() {
        for m in 2..=6usize {
            let (a, v) = intermediate_covariances::<f64>(m).unwrap();
            assert_eq!(a.dim(), 2 * m - 1);
            assert_eq!(v.dim(), 2 * m - 1);
            let a_m = a.leading_principal(m).unwrap();
            let v_11 = v.leading_principal(m).unwrap();
            // ... except for the junction zero replacing A's next coupling,
            // the first block of V is exactly the dimension-m instance of A.
            assert_eq!(v_11.diag(), a_m.diag());
            assert_eq!(&v_11.offdiag()[..m - 1], &a_m.offdiag()[..m - 1]);
        }
    }

    #[test]
    fn intermediate_covariances_are_psd() {
        for m in 2..=10usize {
            let (a, v) = intermediate_covariances::<f64>(m).unwrap();
            for l in eigenvalues(&a).unwrap().eigenvalues() {
                assert!(*l >= -1e-12, "A m={m}: {l}");
            }
            for l in eigenvalues(&v).unwrap().eigenvalues() {
                assert!(*l >= -1e-12, "V m={m}: {l}");
            }
        }
    }

    #[test]
    fn covariance_estimate_basics() {
        let constant = vec![vec![1.0f64, 2.0]; 5];
        let est = covariance_estimate(&constant).unwrap();
        assert_eq!(est.mean, vec![1.0, 2.0]);
        assert!(est.cov.iter().all(|&v| v == 0.0));

        let two = vec![vec![0.0f64], vec![2.0]];
        let est = covariance_estimate(&two).unwrap();
        assert_eq!(est.cov[(0, 0)], 2.0);

        assert!(covariance_estimate(&[vec![1.0f64]]).is_err());
        assert!(covariance_estimate(&[vec![1.0f64], vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn covariance_estimate_of_standard_normals() {
        let mut rng = ChaCha8Rng::seed_from_u64(8128);
        let reps = 100_000usize;
        let samples: Vec<Vec<f64>> = (0..reps)
            .map(|_| (0..3).map(|_| sample_standard_normal(&mut rng)).collect())
            .collect();
        let est = covariance_estimate(&samples).unwrap();
        let se_diag = (2.0 / reps as f64).sqrt();
        let se_off = (1.0 / reps as f64).sqrt();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                let se = if i == j { se_diag } else { se_off };
                assert!(
                    (est.cov[(i, j)] - want).abs() < 3.0 * se,
                    "({i},{j}): {}",
                    est.cov[(i, j)]
                );
            }
        }
    }
}

//! The bijection between interior moment vectors and canonical moments.
//!
//! A probability measure on `[0,1]` with moments `(c_1, ..., c_k)` strictly
//! inside the moment space determines, for each order `j`, the feasible
//! range `[c_j^-, c_j^+]` left free by the lower-order moments. Canonical
//! moments are the relative positions
//!
//! ```text
//! p_1 = c_1,     p_j = (c_j - c_j^-) / (c_j^+ - c_j^-)
//! ```
//!
//! and map the moment-space interior bijectively onto the open cube. The
//! products `ζ_1 = p_1`, `ζ_j = (1 - p_{j-1}) p_j` are the coefficients of
//! the three-term recurrence of the associated monic orthogonal polynomials,
//! which is how moments are reconstructed here: the Jacobi matrix of the
//! recurrence is applied repeatedly to the first basis vector, so no
//! explicit matrix power is ever formed.
//!
//! Conditioning note: the moment-to-recurrence direction degrades
//! exponentially with the order. Round-trip accuracy of 1e-8 is asserted in
//! tests up to dimension 15; longer vectors are computed but not guaranteed.

use ndarray::Array2;

use crate::dd::Dd;
use crate::special::ln_gamma;
use crate::tridiag::SymmetricTridiagonal;
use crate::{fp, Error, Real, Result};

/// Ordinary moments `(c_1, ..., c_k)` of a probability measure on `[0,1]`.
///
/// Membership in the moment space is not enforced at construction (it is a
/// nontrivial property); the transforms detect and report non-interior data.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentVector<T>(Vec<T>);

/// Canonical moments `(p_1, ..., p_k)`, each in `(0,1)` for interior points.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalVector<T>(Vec<T>);

/// Recurrence coefficients `ζ_1 = p_1`, `ζ_j = (1 - p_{j-1}) p_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaVector<T>(Vec<T>);

macro_rules! value_vector {
    ($name:ident) => {
        impl<T: Real> $name<T> {
            pub fn new(values: Vec<T>) -> Result<Self> {
                if values.is_empty() {
                    return Err(Error::Empty);
                }
                if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
                    return Err(Error::Domain {
                        value: bad.to_f64().unwrap_or(f64::NAN),
                    });
                }
                Ok(Self(values))
            }

            pub fn values(&self) -> &[T] {
                &self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn into_vec(self) -> Vec<T> {
                self.0
            }
        }
    };
}

value_vector!(MomentVector);
value_vector!(CanonicalVector);
value_vector!(ZetaVector);

fn require_interior<T: Real>(values: &[T]) -> Result<()> {
    let eps = T::INTERIOR_EPS;
    for (i, &v) in values.iter().enumerate() {
        if !(v >= eps && v <= T::one() - eps) {
            return Err(Error::BoundaryPoint {
                index: i + 1,
                value: v.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(())
}

/// `ζ_1 = p_1`, `ζ_j = (1 - p_{j-1}) p_j`. Rejects canonical moments outside
/// `[ε, 1-ε]` as boundary points.
pub fn canonical_to_zeta<T: Real>(p: &CanonicalVector<T>) -> Result<ZetaVector<T>> {
    let pv = p.values();
    require_interior(pv)?;
    let mut zeta = Vec::with_capacity(pv.len());
    zeta.push(pv[0]);
    for j in 1..pv.len() {
        zeta.push((T::one() - pv[j - 1]) * pv[j]);
    }
    ZetaVector::new(zeta)
}

/// Exact inverse of [`canonical_to_zeta`]: `p_j = ζ_j / (1 - p_{j-1})`.
/// Fails when a reconstructed `1 - p_{j-1}` drops to the interior tolerance,
/// i.e. the underlying canonical moment sits on the boundary.
///
/// The chain divides by `1 - p_{j-1}` at every step, so rounding would
/// compound geometrically for coordinates near 1; the recursion runs in
/// double-double to keep the reconstruction at input accuracy.
pub fn zeta_to_canonical<T: Real>(z: &ZetaVector<T>) -> Result<CanonicalVector<T>> {
    let zv = z.values();
    let eps = T::INTERIOR_EPS;
    let mut p = Vec::with_capacity(zv.len());
    let mut p_prev = Dd::from_scalar(zv[0]);
    p.push(zv[0]);
    for j in 1..zv.len() {
        let q = Dd::one().sub(p_prev);
        if q.hi() <= eps {
            return Err(Error::BoundaryPoint {
                index: j,
                value: p[j - 1].to_f64().unwrap_or(f64::NAN),
            });
        }
        let pj = Dd::from_scalar(zv[j]).div(q);
        p.push(pj.to_scalar());
        p_prev = pj;
    }
    CanonicalVector::new(p)
}

/// Moments `(c_1, ..., c_k)` of the measure whose recurrence coefficients
/// are `z`, via `c_j = e_1ᵀ Jʲ e_1` with `J` the Jacobi matrix of `z`. The
/// power is realized as repeated tridiagonal matrix-vector products.
pub fn zeta_to_moments<T: Real>(z: &ZetaVector<T>, k: usize) -> Result<MomentVector<T>> {
    if k == 0 || k > z.len() {
        return Err(Error::OutOfRange {
            what: "moment order",
            got: k,
            max: z.len(),
        });
    }
    let dim = k / 2 + 1;
    let jac = SymmetricTridiagonal::jacobi_from_zeta(z, dim)?;
    let mut v = vec![T::zero(); dim];
    v[0] = T::one();
    let mut moments = Vec::with_capacity(k);
    for _ in 0..k {
        v = jac.matvec(&v)?;
        moments.push(v[0]);
    }
    MomentVector::new(moments)
}

/// Recurrence coefficients from moments, by the moment-to-recurrence
/// (modified moments with the monomial basis) algorithm: build the mixed
/// inner products `σ_{k,l} = L(P_k x^l)` row by row, read off the monic
/// recurrence coefficients `α_k`, `β_k`, and unpack them into
/// `ζ_1 = α_0`, `ζ_{2m} = β_m / ζ_{2m-1}`, `ζ_{2m+1} = α_m − ζ_{2m}`.
///
/// The `σ_{k,k}` cancel down to Hankel-determinant ratios below
/// `4^{-(k-1)}`, so the recursion runs in double-double arithmetic; the
/// remaining error is the input's representation error amplified by the
/// map's intrinsic conditioning (which still grows exponentially with the
/// order — see the module note).
///
/// Non-interior input is detected either through a failed positivity
/// condition on `σ_{k,k}` (a Hankel determinant ratio) or through an
/// intermediate `ζ_j` escaping `(ε, 1-ε)`; both report the first failing
/// 1-based index.
pub fn moments_to_zeta<T: Real>(c: &MomentVector<T>) -> Result<ZetaVector<T>> {
    let k_max = c.len();
    let eps = T::INTERIOR_EPS;

    // m[l] = c_l with c_0 = 1.
    let mut m = Vec::with_capacity(k_max + 1);
    m.push(Dd::one());
    m.extend(c.values().iter().map(|&v| Dd::from_scalar(v)));

    let n_alpha = k_max.div_ceil(2); // α_0 .. α_{n_alpha - 1}
    let n_beta = k_max / 2; // β_1 .. β_{n_beta}
    let steps = k_max / 2;

    let mut alpha = vec![Dd::zero(); n_alpha];
    let mut beta = vec![Dd::zero(); n_beta + 1];
    alpha[0] = m[1];

    let mut prev = vec![Dd::zero(); k_max + 1]; // σ_{k-2, ·}
    let mut cur = m; // σ_{k-1, ·}
    for k in 1..=steps {
        let mut next = vec![Dd::zero(); k_max + 1];
        let (a_prev, b_prev) = (alpha[k - 1], beta[k - 1]);
        for l in k..=(k_max - k) {
            next[l] = cur[l + 1].sub(a_prev.mul(cur[l])).sub(b_prev.mul(prev[l]));
        }
        if !(next[k].to_scalar() > T::zero()) {
            return Err(Error::NonInterior { index: 2 * k });
        }
        beta[k] = next[k].div(cur[k - 1]);
        if k < n_alpha {
            alpha[k] = next[k + 1].div(next[k]).sub(cur[k].div(cur[k - 1]));
        }
        prev = cur;
        cur = next;
    }

    let mut zeta: Vec<Dd<T>> = Vec::with_capacity(k_max);
    let push_checked = |zeta: &mut Vec<Dd<T>>, value: Dd<T>| -> Result<()> {
        let v = value.to_scalar();
        if !(v > eps && v < T::one() - eps) {
            return Err(Error::NonInterior {
                index: zeta.len() + 1,
            });
        }
        zeta.push(value);
        Ok(())
    };
    push_checked(&mut zeta, alpha[0])?;
    for mm in 1..=n_beta {
        let z_odd = zeta[2 * mm - 2];
        push_checked(&mut zeta, beta[mm].div(z_odd))?;
        if 2 * mm + 1 <= k_max {
            let z_even = zeta[2 * mm - 1];
            push_checked(&mut zeta, alpha[mm].sub(z_even))?;
        }
    }
    ZetaVector::new(zeta.into_iter().map(Dd::to_scalar).collect())
}

/// Canonical moments of an interior moment vector, as the composition
/// `zeta_to_canonical ∘ moments_to_zeta`.
pub fn moments_to_canonical<T: Real>(c: &MomentVector<T>) -> Result<CanonicalVector<T>> {
    zeta_to_canonical(&moments_to_zeta(c)?)
}

/// Moments of the measure with canonical moments `p` (inverse of
/// [`moments_to_canonical`]).
pub fn canonical_to_moments<T: Real>(p: &CanonicalVector<T>) -> Result<MomentVector<T>> {
    zeta_to_moments(&canonical_to_zeta(p)?, p.len())
}

/// Feasible range `(c_k^-, c_k^+)` of the next moment given an interior
/// prefix `(c_1, ..., c_{k-1})`. The empty prefix yields `(0, 1)`.
///
/// The width is the range product `r_k = Π p_j (1 - p_j)` over the prefix's
/// canonical moments, and `c_k` is affine in `p_k` with slope `r_k`, so the
/// bounds are recovered from the midpoint value at `p_k = 1/2`.
pub fn moment_range<T: Real>(c_prefix: &[T]) -> Result<(T, T)> {
    if c_prefix.is_empty() {
        return Ok((T::zero(), T::one()));
    }
    let k = c_prefix.len() + 1;
    let p = moments_to_canonical(&MomentVector::new(c_prefix.to_vec())?)?;
    let half = fp::<T>(0.5);
    let r = p
        .values()
        .iter()
        .fold(T::one(), |acc, &pj| acc * pj * (T::one() - pj));
    let mut extended = p.into_vec();
    extended.push(half);
    let mid = canonical_to_moments(&CanonicalVector::new(extended)?)?;
    let c_mid = mid.values()[k - 1];
    Ok((c_mid - half * r, c_mid + half * r))
}

/// `k`-th moment of the arcsine distribution on `[0,1]`:
/// `binom(2k, k) / 4^k`, evaluated as `Π (2j-1)/(2j)` so it neither
/// overflows nor loses accuracy up to k ≈ 1000.
pub fn arcsine_moment<T: Real>(k: usize) -> T {
    let mut acc = T::one();
    for j in 1..=k {
        acc = acc * fp::<T>((2 * j - 1) as f64) / fp::<T>((2 * j) as f64);
    }
    acc
}

/// Limit covariance of scaled moment fluctuations around the arcsine
/// moments: `Σ_{ij} = (c⁰_{i+j} − c⁰_i c⁰_j) / 2` for `i, j = 1..k`.
pub fn sigma_matrix<T: Real>(k: usize) -> Array2<T> {
    assert!(k >= 1);
    let c0: Vec<T> = (0..=2 * k).map(arcsine_moment).collect();
    let half = fp::<T>(0.5);
    Array2::from_shape_fn((k, k), |(i, j)| {
        half * (c0[i + j + 2] - c0[i + 1] * c0[j + 1])
    })
}

/// Log-volume of the order-`n` moment space: `Σ_{k=1}^{n} ln Γ(k)² / Γ(2k)`.
pub fn log_moment_space_volume<T: Real>(n: usize) -> T {
    assert!(n >= 1);
    let mut acc = T::zero();
    for k in 1..=n {
        let lk = ln_gamma(fp::<T>(k as f64));
        acc = acc + lk + lk - ln_gamma(fp::<T>((2 * k) as f64));
    }
    acc
}

/// Volume of the order-`n` moment space, `exp` of
/// [`log_moment_space_volume`]. Decays like `2^{-n²}`.
pub fn moment_space_volume<T: Real>(n: usize) -> T {
    log_moment_space_volume::<T>(n).exp()
}

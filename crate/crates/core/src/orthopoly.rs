//! Monic orthogonal polynomials from three-term recurrences and from
//! Hankel-bordered determinants, plus the shifted Chebyshev reference
//! family: its tridiagonal matrix, roots and eigenvectors.
//!
//! Polynomials are dense ascending coefficient vectors (degrees stay small
//! here); evaluation is Horner. The determinant route is deliberately
//! literal cofactor expansion and capped at degree 8: it exists to validate
//! the recurrence, not to compute with.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::canonical::{MomentVector, ZetaVector};
use crate::tridiag::SymmetricTridiagonal;
use crate::{fp, Error, Real, Result};

/// Polynomial with leading coefficient exactly one, stored as ascending
/// coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPolynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Real> MonicPolynomial<T> {
    fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        let last = coeffs.len() - 1;
        coeffs[last] = T::one();
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Ascending coefficients; the last entry is exactly one.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, x: T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * x + c)
    }
}

/// Degree-`m` monic orthogonal polynomial of the recurrence coefficients
/// `z`: `P_0 = 1`, `P_1 = x - ζ_1`,
/// `P_{k+1} = (x - ζ_{2k} - ζ_{2k+1}) P_k - ζ_{2k-1} ζ_{2k} P_{k-1}`.
pub fn monic_from_zeta<T: Real>(z: &ZetaVector<T>, m: usize) -> Result<MonicPolynomial<T>> {
    if m == 0 {
        return Ok(MonicPolynomial {
            coeffs: vec![T::one()],
        });
    }
    let zs = z.values();
    if zs.len() < 2 * m - 1 {
        return Err(Error::InsufficientLength {
            needed: 2 * m - 1,
            got: zs.len(),
        });
    }
    let zeta = |j: usize| zs[j - 1];
    let mut prev = vec![T::one()]; // P_0
    let mut cur = vec![-zeta(1), T::one()]; // P_1
    for k in 1..m {
        let a = zeta(2 * k) + zeta(2 * k + 1);
        let b = zeta(2 * k - 1) * zeta(2 * k);
        // next = x·cur − a·cur − b·prev
        let mut next = vec![T::zero(); cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] = next[i + 1] + c;
            next[i] = next[i] - a * c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] = next[i] - b * c;
        }
        prev = cur;
        cur = next;
    }
    Ok(MonicPolynomial::from_coeffs(cur))
}

/// Exact determinant of an integer matrix by fraction-free Bareiss
/// elimination (all intermediate divisions are exact).
fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Degree-`m` monic orthogonal polynomial of the moment data `c`, computed
/// as the ratio of a Hankel-bordered determinant (last column `1, x, ...,
/// x^m`) and the leading Hankel determinant. Expanding the bordered
/// determinant along its last column yields each coefficient as a signed
/// m×m minor over the Hankel determinant.
///
/// Hankel determinants of unit-interval moments decay below 2^{-50} well
/// before degree 8, far past what floating-point cancellation survives, so
/// the minors are evaluated exactly: the moments are dyadic rationals,
/// scaled to a common power of two and eliminated over integers. The two
/// powers cancel in the ratio. Correctness oracle only; capped at `m ≤ 8`.
pub fn hankel_polynomial<T: Real>(c: &MomentVector<T>, m: usize) -> Result<MonicPolynomial<T>> {
    if m == 0 || m > 8 {
        return Err(Error::OutOfRange {
            what: "hankel degree",
            got: m,
            max: 8,
        });
    }
    let cs = c.values();
    if cs.len() < 2 * m - 1 {
        return Err(Error::InsufficientLength {
            needed: 2 * m - 1,
            got: cs.len(),
        });
    }
    // moment(l) = c_l with c_0 = 1, as exact (mantissa, exponent) pairs
    let decode = |v: f64| -> (BigInt, i16) {
        let (mant, exp, sign) = num_traits::Float::integer_decode(v);
        (BigInt::from(sign as i64) * BigInt::from(mant), exp)
    };
    let values: Vec<(BigInt, i16)> = (0..2 * m)
        .map(|l| {
            let v = if l == 0 {
                1.0
            } else {
                cs[l - 1].to_f64().expect("finite moment")
            };
            decode(v)
        })
        .collect();
    let min_exp = values.iter().map(|&(_, e)| e).min().expect("nonempty");
    let scaled: Vec<BigInt> = values
        .into_iter()
        .map(|(mant, exp)| mant << (exp - min_exp) as usize)
        .collect();

    // Rows i = 0..=m of the bordered matrix without its last column:
    // (c_i, c_{i+1}, ..., c_{i+m-1}), in the common integer scaling.
    let rows: Vec<Vec<BigInt>> = (0..=m)
        .map(|i| (0..m).map(|j| scaled[i + j].clone()).collect())
        .collect();

    // Denominator: Hankel determinant of rows 0..m (equals the minor that
    // multiplies x^m, so the result is monic by construction). All minors
    // are m×m, so the 2^{m·shift} factors divide out of every ratio.
    let den = bareiss_det(rows[..m].to_vec());
    if den.is_zero() {
        return Err(Error::SingularHankel);
    }

    let mut coeffs = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let minor: Vec<Vec<BigInt>> = rows
            .iter()
            .enumerate()
            .filter(|&(r, _)| r != i)
            .map(|(_, row)| row.clone())
            .collect();
        let mut num = bareiss_det(minor);
        if (m + i) % 2 == 1 {
            num = -num;
        }
        let ratio = BigRational::new(num, den.clone())
            .to_f64()
            .ok_or(Error::SingularHankel)?;
        coeffs.push(fp::<T>(ratio));
    }
    Ok(MonicPolynomial::from_coeffs(coeffs))
}

/// Chebyshev polynomial of the first kind shifted to `[0,1]`:
/// `T_j(x) = cos(j arccos(2x - 1))`, evaluated by the three-term recurrence
/// `T_{j+1} = 2(2x-1) T_j - T_{j-1}` rather than trigonometric calls.
pub fn chebyshev_t<T: Real>(j: usize, x: T) -> Result<T> {
    if x < T::zero() || x > T::one() {
        return Err(Error::Domain {
            value: x.to_f64().unwrap_or(f64::NAN),
        });
    }
    let u = (x + x) - T::one();
    let mut prev = T::one();
    if j == 0 {
        return Ok(prev);
    }
    let mut cur = u;
    for _ in 1..j {
        let next = (u + u) * cur - prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// The `m` roots of the degree-`m` shifted Chebyshev polynomial,
/// `x_k = (cos((2k-1)π/(2m)) + 1)/2`, in descending order.
pub fn chebyshev_roots<T: Real>(m: usize) -> Vec<T> {
    assert!(m >= 1);
    let half = fp::<T>(0.5);
    (1..=m)
        .map(|k| {
            let theta = fp::<T>((2 * k - 1) as f64) * fp::<T>(std::f64::consts::PI)
                / fp::<T>((2 * m) as f64);
            half * (theta.cos() + T::one())
        })
        .collect()
}

/// The m×m tridiagonal matrix whose characteristic polynomial is the monic
/// shifted Chebyshev polynomial: diagonal 1/2, off-diagonal
/// `(1/(2√2), 1/4, 1/4, ...)`.
pub fn chebyshev_matrix<T: Real>(m: usize) -> SymmetricTridiagonal<T> {
    assert!(m >= 1);
    let half = fp::<T>(0.5);
    let quarter = fp::<T>(0.25);
    let diag = vec![half; m];
    let mut offdiag = vec![quarter; m - 1];
    if let Some(first) = offdiag.first_mut() {
        *first = half / fp::<T>(std::f64::consts::SQRT_2);
    }
    SymmetricTridiagonal::new(diag, offdiag).expect("consistent lengths")
}

/// Unnormalized eigenvector of [`chebyshev_matrix`] for the `k`-th root
/// (1-based, descending root order):
/// `(1/√2, cos(θ_k), cos(2θ_k), ..., cos((m-1)θ_k))` with
/// `θ_k = (2k-1)π/(2m)`. Its squared norm is `m/2`.
pub fn chebyshev_eigvec<T: Real>(m: usize, k: usize) -> Result<Vec<T>> {
    if k == 0 || k > m {
        return Err(Error::OutOfRange {
            what: "eigenvector index",
            got: k,
            max: m,
        });
    }
    let theta =
        fp::<T>((2 * k - 1) as f64) * fp::<T>(std::f64::consts::PI) / fp::<T>((2 * m) as f64);
    let mut v = Vec::with_capacity(m);
    v.push(fp::<T>(std::f64::consts::FRAC_1_SQRT_2));
    for j in 1..m {
        v.push((fp::<T>(j as f64) * theta).cos());
    }
    Ok(v)
}

/// Roots and eigenvectors of the degree-`m` Chebyshev reference family,
/// bundled for the experiments that center on them.
#[derive(Debug, Clone)]
pub struct ChebyshevGrid<T> {
    m: usize,
    roots: Vec<T>,
    eigvecs: Vec<Vec<T>>,
}

impl<T: Real> ChebyshevGrid<T> {
    pub fn new(m: usize) -> Self {
        let roots = chebyshev_roots(m);
        let eigvecs = (1..=m)
            .map(|k| chebyshev_eigvec(m, k).expect("k in range"))
            .collect();
        Self { m, roots, eigvecs }
    }

    pub fn order(&self) -> usize {
        self.m
    }

    /// Roots in descending order (k = 1 is the largest).
    pub fn roots(&self) -> &[T] {
        &self.roots
    }

    /// Eigenvector for the k-th root, 1-based.
    pub fn eigvec(&self, k: usize) -> &[T] {
        &self.eigvecs[k - 1]
    }
}

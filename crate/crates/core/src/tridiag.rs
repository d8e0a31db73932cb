//! Real symmetric tridiagonal matrices, stored as diagonal + off-diagonal
//! arrays. This is the shared currency between the moment transforms, the
//! matrix models and the eigensolvers.

use crate::canonical::ZetaVector;
use crate::{Error, Real, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricTridiagonal<T> {
    diag: Vec<T>,
    offdiag: Vec<T>,
}

impl<T: Real> SymmetricTridiagonal<T> {
    /// `offdiag` must be one entry shorter than `diag`. No sign constraint
    /// on the off-diagonal.
    pub fn new(diag: Vec<T>, offdiag: Vec<T>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Empty);
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::LengthMismatch {
                expected: diag.len() - 1,
                got: offdiag.len(),
            });
        }
        Ok(Self { diag, offdiag })
    }

    /// The m×m Jacobi matrix of the three-term recurrence encoded by `z`:
    /// diagonal `(ζ₁, ζ₂+ζ₃, ..., ζ_{2m-2}+ζ_{2m-1})`, off-diagonal
    /// `√(ζ_{2k-1} ζ_{2k})`.
    ///
    /// Needs at least `2m-2` coefficients; a missing trailing `ζ_{2m-1}` is
    /// read as zero, which realizes the minimal-mass extension of an
    /// even-length coefficient vector.
    pub fn jacobi_from_zeta(z: &ZetaVector<T>, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Empty);
        }
        let zs = z.values();
        if zs.len() + 2 < 2 * m {
            return Err(Error::InsufficientLength {
                needed: 2 * m - 2,
                got: zs.len(),
            });
        }
        // 1-based zeta access with zero padding past the end.
        let zeta = |j: usize| -> T {
            if j >= 1 && j <= zs.len() {
                zs[j - 1]
            } else {
                T::zero()
            }
        };
        let mut diag = Vec::with_capacity(m);
        diag.push(zeta(1));
        for i in 2..=m {
            diag.push(zeta(2 * i - 2) + zeta(2 * i - 1));
        }
        let mut offdiag = Vec::with_capacity(m - 1);
        for k in 1..m {
            offdiag.push((zeta(2 * k - 1) * zeta(2 * k)).sqrt());
        }
        Ok(Self { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[T] {
        &self.offdiag
    }

    pub fn trace(&self) -> T {
        self.diag.iter().copied().sum()
    }

    /// Squared Frobenius norm, `Σ dᵢ² + 2 Σ eᵢ²`.
    pub fn frobenius_sq(&self) -> T {
        let d: T = self.diag.iter().map(|&x| x * x).sum();
        let e: T = self.offdiag.iter().map(|&x| x * x).sum();
        d + (e + e)
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[T]) -> Result<Vec<T>> {
        let n = self.dim();
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: v.len(),
            });
        }
        let mut out = vec![T::zero(); n];
        for i in 0..n {
            let mut acc = self.diag[i] * v[i];
            if i > 0 {
                acc = acc + self.offdiag[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                acc = acc + self.offdiag[i] * v[i + 1];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// `scale·A + shift·I`, entrywise.
    pub fn affine(&self, scale: T, shift: T) -> Self {
        Self {
            diag: self.diag.iter().map(|&d| scale * d + shift).collect(),
            offdiag: self.offdiag.iter().map(|&e| scale * e).collect(),
        }
    }

    /// Leading m×m principal submatrix.
    pub fn leading_principal(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.dim() {
            return Err(Error::OutOfRange {
                what: "submatrix dimension",
                got: m,
                max: self.dim(),
            });
        }
        Ok(Self {
            diag: self.diag[..m].to_vec(),
            offdiag: self.offdiag[..m - 1].to_vec(),
        })
    }

    /// Largest absolute entrywise difference; errors on dimension mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        let d = self
            .diag
            .iter()
            .zip(&other.diag)
            .map(|(&a, &b)| (a - b).abs())
            .fold(T::zero(), T::max);
        let e = self
            .offdiag
            .iter()
            .zip(&other.offdiag)
            .map(|(&a, &b)| (a - b).abs())
            .fold(T::zero(), T::max);
        Ok(d.max(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::ZetaVector;

    #[test]
    fn jacobi_from_arcsine_zeta() {
        let z = ZetaVector::new(vec![0.5, 0.25, 0.25, 0.25, 0.25]).unwrap();
        let j = SymmetricTridiagonal::jacobi_from_zeta(&z, 3).unwrap();
        assert_eq!(j.diag(), &[0.5, 0.5, 0.5]);
        assert!((j.offdiag()[0] - 0.5 / 2f64.sqrt()).abs() < 1e-15);
        assert!((j.offdiag()[1] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn jacobi_even_length_pads_with_zero() {
        // len 2 supports a 2x2 matrix whose last diagonal entry is ζ₂ + 0.
        let z = ZetaVector::new(vec![0.5, 0.25]).unwrap();
        let j = SymmetricTridiagonal::<f64>::jacobi_from_zeta(&z, 2).unwrap();
        assert_eq!(j.diag()[1], 0.25);
    }

    #[test]
    fn matvec_and_invariants() {
        let t = SymmetricTridiagonal::new(vec![1.0, 2.0, 3.0], vec![0.5, -0.5]).unwrap();
        let v = t.matvec(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(v, vec![1.0, 0.5, 0.0]);
        assert_eq!(t.trace(), 6.0);
        assert_eq!(t.frobenius_sq(), 1.0 + 4.0 + 9.0 + 2.0 * 0.5);
    }

    #[test]
    fn affine_map() {
        let t = SymmetricTridiagonal::new(vec![0.5, 0.5], vec![0.25]).unwrap();
        let s = t.affine(4.0, -2.0);
        assert_eq!(s.diag(), &[0.0, 0.0]);
        assert_eq!(s.offdiag(), &[1.0]);
    }

    #[test]
    fn dimension_errors() {
        assert!(SymmetricTridiagonal::<f64>::new(vec![], vec![]).is_err());
        assert!(SymmetricTridiagonal::new(vec![1.0], vec![1.0]).is_err());
        let t = SymmetricTridiagonal::new(vec![1.0, 2.0], vec![0.1]).unwrap();
        assert!(t.matvec(&[1.0]).is_err());
    }
}

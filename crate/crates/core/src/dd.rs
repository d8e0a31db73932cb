//! Minimal double-double arithmetic (unevaluated hi + lo pairs) for the
//! moment-to-recurrence direction, whose intermediate quantities cancel
//! down to range products as small as 4^{-(k-1)}. Working at roughly twice
//! the scalar precision removes the algorithm's own rounding from that
//! cancellation; what remains is the irreducible amplification of the
//! input's representation error.
//!
//! Standard error-free transforms: Knuth two-sum, FMA two-product, one
//! long-division correction step.

use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd<T> {
    hi: T,
    lo: T,
}

fn two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Requires |a| >= |b| (or a == 0).
fn quick_two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

fn two_prod<T: Real>(a: T, b: T) -> (T, T) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl<T: Real> Dd<T> {
    pub fn from_scalar(a: T) -> Self {
        Self { hi: a, lo: T::zero() }
    }

    pub fn zero() -> Self {
        Self::from_scalar(T::zero())
    }

    pub fn one() -> Self {
        Self::from_scalar(T::one())
    }

    pub fn to_scalar(self) -> T {
        self.hi + self.lo
    }

    pub fn hi(self) -> T {
        self.hi
    }

    fn renorm(hi: T, lo: T) -> Self {
        let (s, e) = quick_two_sum(hi, lo);
        Self { hi: s, lo: e }
    }

    pub fn add(self, other: Self) -> Self {
        let (s, e) = two_sum(self.hi, other.hi);
        Self::renorm(s, e + self.lo + other.lo)
    }

    pub fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn sub(self, other: Self) -> Self {
        self.add(other.neg())
    }

    pub fn mul(self, other: Self) -> Self {
        let (p, e) = two_prod(self.hi, other.hi);
        Self::renorm(p, e + self.hi * other.lo + self.lo * other.hi)
    }

    pub fn div(self, other: Self) -> Self {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul(Self::from_scalar(q1)));
        let q2 = (r.hi + r.lo) / other.hi;
        Self::renorm(q1, q2)
    }
}

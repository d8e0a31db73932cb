//! Log-gamma and regularized incomplete gamma, the only special functions
//! the crate needs. All gamma ratios elsewhere go through [`ln_gamma`] so
//! nothing ever forms a raw factorial.

use crate::{fp, Real};

const LANCZOS_COEFFS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];

/// Natural log of the gamma function for strictly positive arguments.
///
/// Lanczos approximation with g = 671/128 and 14 coefficients; relative
/// error is near machine precision in `f64` over the range used here
/// (arguments up to a few thousand).
pub fn ln_gamma<T: Real>(x: T) -> T {
    assert!(x > T::zero(), "ln_gamma requires a positive argument");
    let g_half = fp::<T>(5.242_187_5);
    let tmp = x + g_half;
    let tmp = (x + fp(0.5)) * tmp.ln() - tmp;
    let mut ser = fp::<T>(0.999_999_999_999_997_092);
    let mut y = x;
    for &c in &LANCZOS_COEFFS {
        y = y + T::one();
        ser = ser + fp::<T>(c) / y;
    }
    tmp + (fp::<T>(2.506_628_274_631_000_5) * ser / x).ln()
}

/// `ln B(a, b) = ln Γ(a) + ln Γ(b) − ln Γ(a+b)`.
pub fn ln_beta<T: Real>(a: T, b: T) -> T {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// Lower regularized incomplete gamma `P(a, x)`.
pub fn gamma_p<T: Real>(a: T, x: T) -> T {
    assert!(a > T::zero() && x >= T::zero());
    if x == T::zero() {
        T::zero()
    } else if x < a + T::one() {
        gamma_p_series(a, x)
    } else {
        T::one() - gamma_q_contfrac(a, x)
    }
}

/// Upper regularized incomplete gamma `Q(a, x) = 1 − P(a, x)`.
pub fn gamma_q<T: Real>(a: T, x: T) -> T {
    assert!(a > T::zero() && x >= T::zero());
    if x == T::zero() {
        T::one()
    } else if x < a + T::one() {
        T::one() - gamma_p_series(a, x)
    } else {
        gamma_q_contfrac(a, x)
    }
}

/// Survival function of the chi-square law with `dof` degrees of freedom.
pub fn chi_square_sf<T: Real>(x: T, dof: usize) -> T {
    let half = fp::<T>(0.5);
    gamma_q(half * fp(dof as f64), half * x)
}

fn gamma_p_series<T: Real>(a: T, x: T) -> T {
    let mut ap = a;
    let mut sum = a.recip();
    let mut del = sum;
    for _ in 0..500 {
        ap = ap + T::one();
        del = del * x / ap;
        sum = sum + del;
        if del.abs() < sum.abs() * T::epsilon() {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

fn gamma_q_contfrac<T: Real>(a: T, x: T) -> T {
    let fpmin = T::min_positive_value() / T::epsilon();
    let mut b = x + T::one() - a;
    let mut c = fpmin.recip();
    let mut d = b.recip();
    let mut h = d;
    for i in 1..500 {
        let an = -fp::<T>(i as f64) * (fp::<T>(i as f64) - a);
        b = b + fp(2.0);
        d = an * d + b;
        if d.abs() < fpmin {
            d = fpmin;
        }
        c = b + an / c;
        if c.abs() < fpmin {
            c = fpmin;
        }
        d = d.recip();
        let del = d * c;
        h = h * del;
        if (del - T::one()).abs() < T::epsilon() {
            break;
        }
    }
    (-x + a * x.ln() - ln_gamma(a)).exp() * h
}

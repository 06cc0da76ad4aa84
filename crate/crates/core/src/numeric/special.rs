use crate::real::Real;

/// `sinh(x)/x`, equal to 1 at the origin.
pub fn sinhc<T: Real>(x: T) -> T {
    if x.abs() < T::lit(1e-4) {
        T::one() + x * x / T::lit(6.0)
    } else {
        x.sinh() / x
    }
}

/// `ln(sinh(x)/x)` for `x ≥ 0`, finite for arguments where `sinh` overflows.
pub fn ln_sinhc<T: Real>(x: T) -> T {
    if x < T::one() {
        sinhc(x).ln()
    } else {
        x - (x + x).ln() + (-(-(x + x)).exp()).ln_1p()
    }
}

/// `sin(x)/x`, equal to 1 at the origin.
pub fn sinc<T: Real>(x: T) -> T {
    if x.abs() < T::lit(1e-4) {
        T::one() - x * x / T::lit(6.0)
    } else {
        x.sin() / x
    }
}

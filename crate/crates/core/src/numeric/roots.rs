use crate::error::{QtstError, Result};
use crate::real::Real;

/// Bisection for a sign change of `f` on `[lo, hi]`.
///
/// Iterates until the bracket is narrower than `xtol` and returns its midpoint.
/// Fails with [`QtstError::SolverNonconvergence`] if the endpoints do not
/// bracket a root or `max_iter` is exhausted.
pub fn bisect<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    mut lo: T,
    mut hi: T,
    xtol: T,
    max_iter: usize,
) -> Result<T> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == T::zero() {
        return Ok(lo);
    }
    if fhi == T::zero() {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(QtstError::SolverNonconvergence {
            lo: lo.f64(),
            hi: hi.f64(),
        });
    }
    let half = T::lit(0.5);
    for _ in 0..max_iter {
        let mid = half * (lo + hi);
        if hi - lo <= xtol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == T::zero() {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Err(QtstError::SolverNonconvergence {
        lo: lo.f64(),
        hi: hi.f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt2() {
        let r = bisect(|x: f64| x * x - 2.0, 0.0, 2.0, 1e-14, 200).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn rejects_non_bracket() {
        let e = bisect(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-12, 100).unwrap_err();
        assert_eq!(e, QtstError::SolverNonconvergence { lo: -1.0, hi: 1.0 });
    }

    #[test]
    fn reports_iteration_exhaustion() {
        assert!(bisect(|x: f64| x - 0.3, 0.0, 1.0, 0.0, 5).is_err());
    }
}

use crate::error::{QtstError, Result};
use crate::real::Real;

/// Piecewise cubic Hermite interpolant with Fritsch–Butland slopes.
///
/// Monotone data produce a monotone interpolant and no new extrema appear
/// between samples. Evaluation outside the knot range extends the end cubics.
#[derive(Debug, Clone, PartialEq)]
pub struct Pchip<T> {
    x: Vec<T>,
    y: Vec<T>,
    d: Vec<T>,
}

impl<T: Real> Pchip<T> {
    pub fn new(x: Vec<T>, y: Vec<T>) -> Result<Self> {
        let n = x.len();
        if n < 2 || y.len() != n {
            return Err(QtstError::InvalidDataset(format!(
                "interpolation needs at least two (x, y) pairs of equal length, got {} and {}",
                n,
                y.len()
            )));
        }
        if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
            return Err(QtstError::InvalidDataset("non-finite sample".into()));
        }
        if x.windows(2).any(|w| w[1] <= w[0]) {
            return Err(QtstError::InvalidDataset("x must be strictly increasing".into()));
        }
        let h: Vec<T> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<T> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
        let mut d = vec![T::zero(); n];
        if n == 2 {
            d[0] = delta[0];
            d[1] = delta[0];
            return Ok(Self { x, y, d });
        }
        let two = T::lit(2.0);
        for k in 1..n - 1 {
            let (a, b) = (delta[k - 1], delta[k]);
            if a * b <= T::zero() {
                continue;
            }
            let w1 = two * h[k] + h[k - 1];
            let w2 = h[k] + two * h[k - 1];
            d[k] = (w1 + w2) / (w1 / a + w2 / b);
        }
        d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
        d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        Ok(Self { x, y, d })
    }

    pub fn knots(&self) -> &[T] {
        &self.x
    }

    pub fn values(&self) -> &[T] {
        &self.y
    }

    pub fn eval(&self, t: T) -> T {
        let (k, h, s) = self.locate(t);
        let one = T::one();
        let two = T::lit(2.0);
        let three = T::lit(3.0);
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = two * s3 - three * s2 + one;
        let h10 = s3 - two * s2 + s;
        let h01 = three * s2 - two * s3;
        let h11 = s3 - s2;
        h00 * self.y[k] + h10 * h * self.d[k] + h01 * self.y[k + 1] + h11 * h * self.d[k + 1]
    }

    pub fn derivative(&self, t: T) -> T {
        let (k, h, s) = self.locate(t);
        let one = T::one();
        let two = T::lit(2.0);
        let three = T::lit(3.0);
        let six = T::lit(6.0);
        let s2 = s * s;
        let g00 = (six * s2 - six * s) / h;
        let g10 = three * s2 - T::lit(4.0) * s + one;
        let g01 = (six * s - six * s2) / h;
        let g11 = three * s2 - two * s;
        g00 * self.y[k] + g10 * self.d[k] + g01 * self.y[k + 1] + g11 * self.d[k + 1]
    }

    fn locate(&self, t: T) -> (usize, T, T) {
        let n = self.x.len();
        let k = self.x.partition_point(|&xi| xi <= t).clamp(1, n - 1) - 1;
        let h = self.x[k + 1] - self.x[k];
        (k, h, (t - self.x[k]) / h)
    }
}

fn end_slope<T: Real>(h0: T, h1: T, d0: T, d1: T) -> T {
    let two = T::lit(2.0);
    let s = ((two * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if s.signum() != d0.signum() || d0 == T::zero() {
        T::zero()
    } else if d0.signum() != d1.signum() && s.abs() > T::lit(3.0) * d0.abs() {
        T::lit(3.0) * d0
    } else {
        s
    }
}

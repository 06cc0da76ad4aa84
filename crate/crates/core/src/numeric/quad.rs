use crate::error::{QtstError, Result};
use crate::real::Real;

const MAX_INTERVALS: usize = 4000;

// 15-point Kronrod abscissae (non-negative half) and weights, with the
// embedded 7-point Gauss weights on the odd-indexed nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_0,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Integration domain piece.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Segment<T> {
    /// Finite interval `[a, b]`.
    Finite(T, T),
    /// `[a, ∞)`, mapped onto `[0, 1)` with `x = a + scale·t/(1−t)`.
    Tail { a: T, scale: T },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: T,
    pub intervals: usize,
}

struct Piece<T> {
    seg: usize,
    a: T,
    b: T,
    value: T,
    error: T,
}

fn eval<T: Real, F: Fn(T) -> T>(f: &F, seg: &Segment<T>, t: T) -> T {
    match *seg {
        Segment::Finite(..) => f(t),
        Segment::Tail { a, scale } => {
            let one = T::one();
            let s = one - t;
            let y = f(a + scale * t / s);
            if y == T::zero() {
                y
            } else {
                y * scale / (s * s)
            }
        }
    }
}

fn kronrod<T: Real, F: Fn(T) -> T>(f: &F, seg: &Segment<T>, a: T, b: T) -> (T, T) {
    let half = T::lit(0.5);
    let c = half * (a + b);
    let h = half * (b - a);
    let fc = eval(f, seg, c);
    let mut k = fc * T::lit(WGK[7]);
    let mut g = fc * T::lit(WG[3]);
    for j in 0..7 {
        let dx = h * T::lit(XGK[j]);
        let pair = eval(f, seg, c - dx) + eval(f, seg, c + dx);
        k = k + pair * T::lit(WGK[j]);
        if j % 2 == 1 {
            g = g + pair * T::lit(WG[j / 2]);
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Globally adaptive Gauss–Kronrod 7/15 quadrature over a union of segments.
///
/// The interval with the largest error estimate is bisected until the total
/// error falls below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate_segments<T: Real, F: Fn(T) -> T>(
    f: F,
    segments: &[Segment<T>],
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadResult<T>> {
    let rel = T::tol(rel_tol);
    let abs = T::lit(abs_tol);
    let mut pieces: Vec<Piece<T>> = Vec::with_capacity(64);
    for (i, seg) in segments.iter().enumerate() {
        let (a, b) = match *seg {
            Segment::Finite(a, b) => (a, b),
            Segment::Tail { .. } => (T::zero(), T::one()),
        };
        if a == b {
            continue;
        }
        let (value, error) = kronrod(&f, seg, a, b);
        pieces.push(Piece {
            seg: i,
            a,
            b,
            value,
            error,
        });
    }
    loop {
        let value = pieces.iter().fold(T::zero(), |s, p| s + p.value);
        let error = pieces.iter().fold(T::zero(), |s, p| s + p.error);
        if !(value.is_finite() && error.is_finite()) {
            return Err(QtstError::Quadrature {
                estimate: value.f64(),
                error: error.f64(),
            });
        }
        if error <= abs.max(rel * value.abs()) {
            return Ok(QuadResult {
                value,
                error,
                intervals: pieces.len(),
            });
        }
        if pieces.len() >= MAX_INTERVALS {
            return Err(QtstError::Quadrature {
                estimate: value.f64(),
                error: error.f64(),
            });
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.partial_cmp(&y.1.error).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let p = pieces.swap_remove(worst);
        let mid = T::lit(0.5) * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            return Err(QtstError::Quadrature {
                estimate: value.f64(),
                error: error.f64(),
            });
        }
        let seg = &segments[p.seg];
        for (a, b) in [(p.a, mid), (mid, p.b)] {
            let (value, error) = kronrod(&f, seg, a, b);
            pieces.push(Piece {
                seg: p.seg,
                a,
                b,
                value,
                error,
            });
        }
    }
}

/// Adaptive quadrature of `f` over the finite interval `[a, b]`.
pub fn integrate<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadResult<T>> {
    integrate_segments(f, &[Segment::Finite(a, b)], rel_tol, abs_tol)
}

//! Generic numerical building blocks: adaptive quadrature, bracketed root
//! finding, the scaled complementary error function, monotone cubic
//! interpolation and the `sinh(x)/x`, `sin(x)/x` helpers.

mod erfcx;
mod pchip;
mod quad;
mod roots;
mod special;

pub use erfcx::erfcx;
pub use pchip::Pchip;
pub use quad::{integrate, integrate_segments, QuadResult, Segment};
pub use roots::bisect;
pub use special::{ln_sinhc, sinc, sinhc};

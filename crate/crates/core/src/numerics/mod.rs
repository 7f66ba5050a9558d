//! Complex kernels shared by every other module.

mod gamma;
mod quad;
mod roots;

pub use gamma::{gamma, gamma_ratio, log_gamma, log_sin_pi, pochhammer, reflection_sin};
pub use quad::{contour_residue, jacobi_integral, line_integral, Node};
pub use roots::poly_roots;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};
use std::fmt::Debug;

/// Scalar the kernels are generic over. `f64` is what the rest of the crate uses;
/// `f32` works for the kernels at correspondingly looser tolerances.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal fits the scalar type")
    }
}

impl<T> Real for T where T: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {}

pub(crate) fn c<R: Real>(re: f64, im: f64) -> Complex<R> {
    Complex::new(R::lit(re), R::lit(im))
}

/// Tolerances and limits for the kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionPolicy<R = f64> {
    pub rel_tol: R,
    /// underflow guard for quadrature weights and series terms
    pub abs_floor: R,
    pub max_series_terms: usize,
    pub quadrature_levels: usize,
}

impl<R: Real> Default for PrecisionPolicy<R> {
    fn default() -> Self {
        PrecisionPolicy {
            rel_tol: R::lit(1e-10),
            abs_floor: R::lit(1e-300).max(R::min_positive_value()),
            max_series_terms: 10_000,
            quadrature_levels: 12,
        }
    }
}

impl<R: Real> PrecisionPolicy<R> {
    pub fn new(rel_tol: R, max_series_terms: usize, quadrature_levels: usize) -> crate::Result<Self> {
        let p = PrecisionPolicy { rel_tol, max_series_terms, quadrature_levels, ..Self::default() };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> crate::Result<()> {
        if !(self.rel_tol > R::zero()) {
            return Err(crate::Error::Config("rel_tol must be positive".into()));
        }
        if self.max_series_terms < 100 {
            return Err(crate::Error::Config("max_series_terms must be at least 100".into()));
        }
        Ok(())
    }
}

impl PrecisionPolicy<f64> {
    /// Default policy with `rel_tol` taken from `ANCRC_PRECISION` when set.
    pub fn from_env() -> crate::Result<Self> {
        let mut p = Self::default();
        if let Ok(s) = std::env::var("ANCRC_PRECISION") {
            p.rel_tol =
                s.trim().parse().map_err(|_| crate::Error::Config(format!("ANCRC_PRECISION: cannot parse {s:?}")))?;
            p.validate()?;
        }
        Ok(p)
    }
}

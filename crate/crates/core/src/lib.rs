//! Numerical laboratory for the open crepant resolution correspondence of
//! threefold A_n singularities `[C^3/Z_{n+1}]` and their resolutions.
//!
//! Layering, bottom to top:
//!
//! - [`numerics`]: log-gamma, gamma ratios, tanh-sinh line quadrature,
//!   trapezoid contour residues, polynomial roots. Generic over [`Real`].
//! - [`hypergeom`]: Gauss, Appell and Lauricella functions with Euler oracles.
//! - [`an_geometry`]: equivariant (quantum) cohomology of `X` and `Y`.
//! - [`hurwitz_mirror`]: the Landau-Ginzburg mirror and its residue correlators.
//! - [`periods`]: twisted periods, the matrices `A`, `A^{-1}`, `B` and `U`.
//! - [`open_crc`]: disk functions, Gamma classes, `O` and `O_Z`.
//! - [`monodromy`]: the rank two system at `n = 1`.
//! - [`verify`]: seeded suites that produce [`verify::CaseRecord`]s.
//!
//! Everything above `numerics` works in double precision through [`C64`].

pub mod an_geometry;
pub mod error;
pub mod hurwitz_mirror;
pub mod hypergeom;
pub mod monodromy;
pub mod numerics;
pub mod open_crc;
pub mod periods;
pub mod sampling;
pub mod verify;

pub use error::{Error, Result};
pub use numerics::{PrecisionPolicy, Real};

/// Complex double, the scalar of every domain module.
pub type C64 = num_complex::Complex<f64>;
/// Dense complex matrix.
pub type CMat = nalgebra::DMatrix<C64>;

/// `e^{2 pi i x}`
#[inline]
pub fn e2pi(x: C64) -> C64 {
    (C64::new(0.0, 2.0 * std::f64::consts::PI) * x).exp()
}

/// `omega^x` with `omega = e^{2 pi i/(n+1)}`, any complex exponent.
#[inline]
pub fn omega_pow(n: usize, x: C64) -> C64 {
    e2pi(x / (n as f64 + 1.0))
}

/// Largest entry modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Induced infinity norm (max row sum).
pub fn norm_inf(m: &CMat) -> f64 {
    (0..m.nrows()).map(|i| m.row(i).iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

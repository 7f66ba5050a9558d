use super::{c, Real};
use crate::{Error, Result};
use num_complex::Complex;

// Lanczos g = 7, nine terms. Relative error around 1e-15 for Re z >= 1/2.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const POLE_GUARD: f64 = 1e-12;

fn pole_err<R: Real>(z: Complex<R>) -> Error {
    Error::pole(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}

fn near_integer<R: Real>(z: Complex<R>) -> bool {
    z.im.abs() < R::lit(POLE_GUARD) && (z.re - z.re.round()).abs() < R::lit(POLE_GUARD)
}

fn near_nonpositive_integer<R: Real>(z: Complex<R>) -> bool {
    near_integer(z) && z.re.round() <= R::zero()
}

fn lanczos<R: Real>(z: Complex<R>) -> Complex<R> {
    let z = z - R::one();
    let mut x = Complex::from(R::lit(LANCZOS[0]));
    for (k, &p) in LANCZOS.iter().enumerate().skip(1) {
        x = x + Complex::from(R::lit(p)) / (z + R::lit(k as f64));
    }
    let t = z + R::lit(LANCZOS_G + 0.5);
    let half_log_two_pi = (R::lit(2.0) * R::PI()).ln() * R::lit(0.5);
    (z + R::lit(0.5)) * t.ln() - t + x.ln() + half_log_two_pi
}

/// `log sin(pi z)` on some branch; safe from overflow for large `|Im z|`.
pub fn log_sin_pi<R: Real>(z: Complex<R>) -> Complex<R> {
    let w = z * R::PI();
    let i = Complex::<R>::i();
    let big = R::lit(15.0);
    let half = R::lit(0.5);
    if w.im > big {
        -i * w + ((Complex::from(R::one()) - (i * w * R::lit(2.0)).exp()) * i * half).ln()
    } else if w.im < -big {
        i * w + ((Complex::from(R::one()) - (-i * w * R::lit(2.0)).exp()) * (-i) * half).ln()
    } else {
        w.sin().ln()
    }
}

/// `log Gamma(z)`. The imaginary part is not normalised to the principal
/// log-gamma branch; `exp` of the result is `Gamma(z)`.
pub fn log_gamma<R: Real>(z: Complex<R>) -> Result<Complex<R>> {
    if near_nonpositive_integer(z) {
        return Err(pole_err(z));
    }
    if z.re < R::lit(0.5) {
        let one = Complex::from(R::one());
        Ok(Complex::from(R::PI().ln()) - log_sin_pi(z) - lanczos(one - z))
    } else {
        Ok(lanczos(z))
    }
}

pub fn gamma<R: Real>(z: Complex<R>) -> Result<Complex<R>> {
    Ok(log_gamma(z)?.exp())
}

/// `prod Gamma(nums) / prod Gamma(dens)` through log-gamma differences.
///
/// A numerator pole is an error. A denominator at a pole contributes
/// `1/Gamma = 0`, so the ratio is exactly zero.
pub fn gamma_ratio<R: Real>(nums: &[Complex<R>], dens: &[Complex<R>]) -> Result<Complex<R>> {
    let mut acc = Complex::from(R::zero());
    for &x in nums {
        acc = acc + log_gamma(x)?;
    }
    for &y in dens {
        if near_nonpositive_integer(y) {
            return Ok(Complex::from(R::zero()));
        }
        acc = acc - log_gamma(y)?;
    }
    Ok(acc.exp())
}

/// `pi / sin(pi x)`
pub fn reflection_sin<R: Real>(x: Complex<R>) -> Result<Complex<R>> {
    if near_integer(x) {
        return Err(pole_err(x));
    }
    Ok((Complex::from(R::PI().ln()) - log_sin_pi(x)).exp())
}

/// Rising factorial `(x)_m`.
pub fn pochhammer<R: Real>(x: Complex<R>, m: usize) -> Complex<R> {
    (0..m).fold(c(1.0, 0.0), |acc, k| acc * (x + R::lit(k as f64)))
}

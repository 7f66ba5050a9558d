use super::{gamma_ratio, PrecisionPolicy, Real};
use crate::{Error, Result};
use num_complex::Complex;

/// A quadrature node on the segment `p -> q`: `z = p + t (q - p)` with the
/// complement `tc = 1 - t` kept to full relative precision near `q`.
#[derive(Debug, Clone, Copy)]
pub struct Node<R> {
    pub t: R,
    pub tc: R,
    pub z: Complex<R>,
}

/// Integral of `f` along the straight segment between `endpoints`, by
/// tanh-sinh quadrature with level doubling.
///
/// The integrand may have power singularities at both ends; their exponents
/// must exceed -1. Nodes pile up double-exponentially at the ends, so `f`
/// should use `node.t` / `node.tc` for the distances to the endpoints rather
/// than recomputing them from `node.z`.
pub fn line_integral<R, F>(
    f: F,
    endpoints: (Complex<R>, Complex<R>),
    singular_exponents: (R, R),
    policy: &PrecisionPolicy<R>,
) -> Result<Complex<R>>
where
    R: Real,
    F: Fn(&Node<R>) -> Complex<R>,
{
    let m1 = -R::one();
    if !(singular_exponents.0 > m1 && singular_exponents.1 > m1) {
        return Err(Error::Domain("endpoint exponents must exceed -1".into()));
    }
    let (p, q) = endpoints;
    let d = q - p;
    let pi = R::PI();
    let half = R::lit(0.5);
    // |x| beyond which t or 1-t drops under the underflow guard
    let x_max = (-policy.abs_floor.ln() / pi).asinh();

    let eval = |x: R| -> Result<(Complex<R>, R)> {
        let s = pi * x.sinh();
        let t = R::one() / (R::one() + (-s).exp());
        let tc = R::one() / (R::one() + s.exp());
        let w = pi * x.cosh() * t * tc;
        if t <= R::zero() || tc <= R::zero() || w < policy.abs_floor {
            return Ok((Complex::from(R::zero()), R::zero()));
        }
        let z = if t <= half { p + d * t } else { q - d * tc };
        let v = f(&Node { t, tc, z }) * w;
        if v.re.is_finite() && v.im.is_finite() {
            Ok((v, v.norm()))
        } else if x.abs() > R::lit(2.0) {
            // endpoint overflow of an integrable singularity; the weight has
            // already killed the true contribution
            Ok((Complex::from(R::zero()), R::zero()))
        } else {
            Err(Error::Domain("integrand not finite inside the segment".into()))
        }
    };

    let mut sum = Complex::from(R::zero());
    let mut l1 = R::zero();
    let (v, a) = eval(R::zero())?;
    sum = sum + v;
    l1 = l1 + a;
    let mut k = 1usize;
    while R::lit(k as f64) <= x_max {
        for sgn in [R::one(), m1] {
            let (v, a) = eval(sgn * R::lit(k as f64))?;
            sum = sum + v;
            l1 = l1 + a;
        }
        k += 1;
    }
    let mut h = R::one();
    let mut prev = sum * h;
    for level in 1..=policy.quadrature_levels {
        h = h * half;
        let mut j = 1usize;
        loop {
            let x = h * R::lit(j as f64);
            if x > x_max {
                break;
            }
            for sgn in [R::one(), m1] {
                let (v, a) = eval(sgn * x)?;
                sum = sum + v;
                l1 = l1 + a;
            }
            j += 2;
        }
        let cur = sum * h;
        let err = (cur - prev).norm();
        let floor = R::lit(64.0) * R::epsilon() * l1 * h;
        if level >= 3 && (err <= policy.rel_tol * cur.norm() || err <= floor) {
            return Ok(cur * d);
        }
        prev = cur;
    }
    Err(Error::NonConvergence(format!("tanh-sinh did not settle after {} levels", policy.quadrature_levels)))
}

/// `\int_p^q t^{e0} (1-t)^{e1} phi dz` along the segment, `t` the affine
/// parameter, for complex exponents with real parts above -1 and `phi`
/// smooth on the closed segment.
///
/// The linear interpolant of `phi` is integrated exactly through Beta
/// functions and only the remainder goes through [`line_integral`]. The
/// remainder vanishes at both ends, so the mass that sits below the
/// underflow guard when an exponent is close to -1 is not lost.
pub fn jacobi_integral<R, F>(
    phi: F,
    endpoints: (Complex<R>, Complex<R>),
    exponents: (Complex<R>, Complex<R>),
    policy: &PrecisionPolicy<R>,
) -> Result<Complex<R>>
where
    R: Real,
    F: Fn(&Node<R>) -> Complex<R>,
{
    let (p, q) = endpoints;
    let (e0, e1) = exponents;
    let one = Complex::from(R::one());
    let two = Complex::from(R::lit(2.0));
    let phi0 = phi(&Node { t: R::zero(), tc: R::one(), z: p });
    let phi1 = phi(&Node { t: R::one(), tc: R::zero(), z: q });
    let rest = |nd: &Node<R>| -> Complex<R> {
        let lin = phi0 * nd.tc + phi1 * nd.t;
        (e0 * nd.t.ln() + e1 * nd.tc.ln()).exp() * (phi(nd) - lin)
    };
    let body = line_integral(rest, endpoints, (e0.re, e1.re), policy)?;
    let beta = |x: Complex<R>, y: Complex<R>| gamma_ratio(&[x, y], &[x + y]);
    let ends = phi0 * beta(e0 + one, e1 + two)? + phi1 * beta(e0 + two, e1 + one)?;
    Ok(body + ends * (q - p))
}

/// `(1/2 pi i) \oint f(q) dq` over the circle of `radius` around `pole`,
/// by the trapezoid rule with node doubling.
///
/// Converges geometrically when the disc of twice the radius contains no
/// other singularity of `f`.
pub fn contour_residue<R, F>(f: F, pole: Complex<R>, radius: R, policy: &PrecisionPolicy<R>) -> Result<Complex<R>>
where
    R: Real,
    F: Fn(Complex<R>) -> Complex<R>,
{
    if !(radius > R::zero()) {
        return Err(Error::Domain("contour radius must be positive".into()));
    }
    let two_pi = R::lit(2.0) * R::PI();
    let sample = |theta: R| -> Complex<R> {
        let e = Complex::from_polar(radius, theta);
        f(pole + e) * e
    };
    let mut n = 16usize;
    let mut sum = Complex::from(R::zero());
    let mut big = R::zero();
    for m in 0..n {
        let v = sample(two_pi * R::lit(m as f64) / R::lit(n as f64));
        big = big.max(v.norm());
        sum = sum + v;
    }
    let mut prev = sum / R::lit(n as f64);
    while n < 1 << 16 {
        for m in 0..n {
            let theta = two_pi * R::lit((2 * m + 1) as f64) / R::lit((2 * n) as f64);
            let v = sample(theta);
            big = big.max(v.norm());
            sum = sum + v;
        }
        n *= 2;
        let cur = sum / R::lit(n as f64);
        if !(cur.re.is_finite() && cur.im.is_finite()) {
            return Err(Error::Domain("integrand not finite on the contour".into()));
        }
        let err = (cur - prev).norm();
        if n >= 32 && (err <= policy.rel_tol * cur.norm() || err <= R::lit(64.0) * R::epsilon() * big) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NonConvergence("trapezoid residue did not stabilise".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    type C = Complex<f64>;

    fn pol() -> PrecisionPolicy<f64> {
        PrecisionPolicy::default()
    }
    fn unit() -> (C, C) {
        (C::new(0.0, 0.0), C::new(1.0, 0.0))
    }

    #[test]
    fn trivial_integrals() {
        let one = line_integral(|_| C::new(1.0, 0.0), unit(), (0.0, 0.0), &pol()).unwrap();
        assert!((one - 1.0).norm() < 1e-14);
        let r = line_integral(|n| C::new(n.t.powf(-0.5), 0.0), unit(), (-0.5, 0.0), &pol()).unwrap();
        assert!((r - 2.0).norm() < 1e-12, "{r}");
    }

    #[test]
    fn bad_exponent() {
        assert!(line_integral(|_| C::new(1.0, 0.0), unit(), (-1.0, 0.0), &pol()).is_err());
    }

    #[test]
    fn complex_segment() {
        // \int_i^{2+i} z^2 dz
        let (p, q) = (C::new(0.0, 1.0), C::new(2.0, 1.0));
        let v = line_integral(|n| n.z * n.z, (p, q), (0.0, 0.0), &pol()).unwrap();
        let want = (q * q * q - p * p * p) / 3.0;
        assert!((v - want).norm() < 1e-12);
    }

    #[test]
    fn jacobi_near_minus_one() {
        // \int_0^1 t^{-0.3} (1-t)^{e1} (1 + t^2) dt with e1 close to -1
        let e1 = C::new(-0.975, 0.12);
        let e0 = C::new(-0.3, 0.0);
        let v = jacobi_integral(|n| C::new(1.0 + n.t * n.t, 0.0), unit(), (e0, e1), &pol()).unwrap();
        let beta = |x: C, y: C| gamma_ratio(&[x, y], &[x + y]).unwrap();
        let want = beta(e0 + 1.0, e1 + 1.0) + beta(e0 + 3.0, e1 + 1.0);
        assert!(((v - want) / want).norm() < 1e-12, "{v} {want}");
    }

    #[test]
    fn residues() {
        let p = C::new(0.3, -0.2);
        let r = contour_residue(|q| 1.0 / (q - p), p, 0.5, &pol()).unwrap();
        assert!((r - 1.0).norm() < 1e-14);
        let r = contour_residue(|q| 1.0 / ((q - p) * (q - p)), p, 0.5, &pol()).unwrap();
        assert!(r.norm() < 1e-14);
        let two = C::new(2.0, 0.0);
        let r = contour_residue(|q| q / ((q - 2.0) * (q - 3.0)), two, 0.5, &pol()).unwrap();
        assert!((r + 2.0).norm() < 1e-12, "{r}");
        assert!(contour_residue(|q| q, two, 0.0, &pol()).is_err());
    }
}

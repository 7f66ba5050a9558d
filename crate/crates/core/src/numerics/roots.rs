use super::Real;
use crate::{Error, Result};
use num_complex::Complex;

fn horner<R: Real>(coeffs: &[Complex<R>], x: Complex<R>) -> (Complex<R>, Complex<R>) {
    // value and derivative, coefficients in ascending order
    let mut p = Complex::from(R::zero());
    let mut dp = Complex::from(R::zero());
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// All roots of `sum_k coeffs[k] x^k` (Durand-Kerner, then a Newton polish).
///
/// Leading zero coefficients are dropped. Clustered roots converge linearly,
/// which is plenty for the separation estimates this is used for.
pub fn poly_roots<R: Real>(coeffs: &[Complex<R>]) -> Result<Vec<Complex<R>>> {
    let mut deg = coeffs.len();
    while deg > 0 && coeffs[deg - 1].norm() == R::zero() {
        deg -= 1;
    }
    if deg <= 1 {
        return Ok(Vec::new());
    }
    let deg = deg - 1;
    let lead = coeffs[deg];
    let monic: Vec<Complex<R>> = coeffs[..=deg].iter().map(|&c| c / lead).collect();
    // Cauchy bound for the initial circle
    let bound = R::one() + monic[..deg].iter().fold(R::zero(), |m, c| m.max(c.norm()));
    let seed = Complex::new(R::lit(0.4), R::lit(0.9));
    let mut z: Vec<Complex<R>> = (0..deg).map(|k| seed.powu(k as u32 + 1) * bound * R::lit(0.5)).collect();
    let tol = R::lit(1e3) * R::epsilon() * bound;
    let mut settled = false;
    for _ in 0..5000 {
        let mut change = R::zero();
        for i in 0..deg {
            let (p, _) = horner(&monic, z[i]);
            let mut den = Complex::from(R::one());
            for j in 0..deg {
                if j != i {
                    den = den * (z[i] - z[j]);
                }
            }
            if den.norm() == R::zero() {
                den = Complex::from(R::epsilon());
            }
            let step = p / den;
            z[i] = z[i] - step;
            change = change.max(step.norm());
        }
        if change <= tol {
            settled = true;
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&monic, *r);
            if dp.norm() > R::zero() {
                *r = *r - p / dp;
            }
        }
    }
    if !settled {
        let worst = z.iter().fold(R::zero(), |m, &r| m.max(horner(&monic, r).0.norm()));
        if !(worst <= R::lit(1e-6) * bound.powi(deg as i32)) {
            return Err(Error::NonConvergence("polynomial roots did not settle".into()));
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    type C = Complex<f64>;

    #[test]
    fn cubic() {
        // (x-1)(x+2)(x-i) expanded
        let r = [C::new(1.0, 0.0), C::new(-2.0, 0.0), C::new(0.0, 1.0)];
        let mut c = vec![C::new(1.0, 0.0)];
        for &root in &r {
            let mut next = vec![C::new(0.0, 0.0); c.len() + 1];
            for (k, &a) in c.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * root;
            }
            c = next;
        }
        let got = poly_roots(&c).unwrap();
        for &want in &r {
            assert!(got.iter().any(|&g| (g - want).norm() < 1e-12));
        }
    }

    #[test]
    fn degenerate_inputs() {
        assert!(poly_roots::<f64>(&[C::new(3.0, 0.0)]).unwrap().is_empty());
        let r = poly_roots(&[C::new(-2.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 0.0)]).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] - 2.0).norm() < 1e-14);
    }
}

//! Twisted periods of the mirror, the matrices `A^{-1}`, `A`, `B`, and the
//! symplectomorphism `U` both as the product `A B` and in closed form.

use crate::an_geometry::{atiyah_bott_matrix, pairing_x_matrix, pairing_y_diag, u0_matrix, SmallQCPoint, TorusWeights};
use crate::hurwitz_mirror::{kappa_from_x, KappaPoint};
use crate::hypergeom::{lauricella_fd, LauricellaParams, RESONANCE_RADIUS};
use crate::numerics::{gamma_ratio, jacobi_integral, Node};
use crate::open_crc::{gamma_class, Side as GSide};
use crate::{max_abs, omega_pow, CMat, Error, PrecisionPolicy, Result, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Minimal distance between a singular point of the period integrand and the path `[0, 1]`.
pub const PATH_GUARD: f64 = 0.02;
/// Tolerance of the printed-inverse test before `A` falls back to a numeric inverse.
pub const INVERSE_TOL: f64 = 1e-9;
/// Tolerance on `A B = s U` and on the fitted scalar.
pub const FACTORIZATION_TOL: f64 = 1e-8;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Distance of `x` to the nearest non-positive integer.
pub(crate) fn nonpositive_int_dist(x: C64) -> f64 {
    let k = x.re.round().min(0.0);
    (x - k).norm()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodParams {
    pub w: TorusWeights,
    pub z: C64,
}

impl PeriodParams {
    /// Validates `z != 0` and keeps `a`, `b`, `a - j b` (`j <= n+2`), `a/(n+1)` and
    /// `(a-k)/(n+1) + 1 - b` away from the poles of Gamma.
    pub fn new(w: TorusWeights, z: C64) -> Result<Self> {
        if z.norm() < 1e-12 {
            return Err(Error::Domain("z must be nonzero".into()));
        }
        let p = PeriodParams { w, z };
        let (a, b) = (p.a(), p.b());
        let n = w.n;
        let nf = n as f64 + 1.0;
        let mut probes = vec![("a".to_string(), a), ("b".to_string(), b), ("a/(n+1)".to_string(), a / nf)];
        for j in 0..=n + 2 {
            probes.push((format!("a-{j}b"), a - j as f64 * b));
        }
        // numerator Gammas of A and B
        probes.push(("1-b".to_string(), 1.0 - b));
        for j in 1..=n + 1 {
            probes.push((format!("{j}b-a"), j as f64 * b - a));
        }
        for k in 0..=n {
            probes.push((format!("(a-{k})/(n+1)+1-b"), (a - k as f64) / nf + 1.0 - b));
        }
        for (label, v) in probes {
            if nonpositive_int_dist(v) < RESONANCE_RADIUS {
                return Err(Error::Resonance(format!("{label} = {v} is too close to a pole of Gamma")));
            }
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.w.n
    }

    pub fn a(&self) -> C64 {
        self.w.a(self.z)
    }

    pub fn b(&self) -> C64 {
        self.w.b(self.z)
    }

    /// The same weights at `-z`.
    pub fn negated(&self) -> Result<Self> {
        PeriodParams::new(self.w, -self.z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomainTag {
    XToY,
    YToY,
    XToX,
}

/// A matrix-valued function of `z`, evaluated at one `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct GiventalMatrix {
    pub tag: DomainTag,
    pub z: C64,
    pub entries: CMat,
    /// Set when a printed closed form failed its check and was replaced numerically.
    pub numeric_fallback: bool,
}

impl GiventalMatrix {
    pub fn new(tag: DomainTag, z: C64, entries: CMat) -> Self {
        GiventalMatrix { tag, z, entries, numeric_fallback: false }
    }
}

// (-1)^x read as e^{-i pi x}
fn m1pow(x: C64) -> C64 {
    (c(0.0, -PI) * x).exp()
}

fn sin_pi(x: C64) -> C64 {
    (PI * x).sin()
}

fn c_pow_inv_z(k: &KappaPoint, p: &PeriodParams) -> C64 {
    let s: C64 = k.logs().iter().sum();
    (p.w.alpha1 / p.z * s).exp()
}

fn check_point(k: &KappaPoint, p: &PeriodParams) -> Result<()> {
    if k.n() != p.n() {
        return Err(Error::Geometry("kappa point and period parameters disagree on n".into()));
    }
    Ok(())
}

/// Ratios `kappa_m/kappa_i` over `m in 1..=n+1`, `m != i`, i.e. the Lauricella arguments of `Pi_i`.
fn period_arguments(i: usize, k: &KappaPoint) -> Vec<C64> {
    let n = k.n();
    let ki = k.kappa(i);
    (1..=n + 1).filter(|&m| m != i).map(|m| k.kappa(m) / ki).collect()
}

/// `Pi_i` from the degenerate double loop: the line integral
/// `C^{1/z} kappa_i^{-a} \int_0^1 s^{a-1} (1-s)^{-b} prod_{m != i} (1 - s kappa_m/kappa_i)^{-b} ds`,
/// already divided by `(1 - e^{2 pi i a})(1 - e^{-2 pi i b})`.
pub fn twisted_period_euler(i: usize, k: &KappaPoint, p: &PeriodParams, policy: &PrecisionPolicy) -> Result<C64> {
    check_point(k, p)?;
    let n = p.n();
    if i == 0 || i > n + 1 {
        return Err(Error::Domain(format!("period index {i} outside 1..={}", n + 1)));
    }
    let (a, b) = (p.a(), p.b());
    if !(a.re > 0.0 && b.re < 1.0) {
        return Err(Error::Domain("line-integral regime needs Re a > 0 and Re b < 1".into()));
    }
    let args = period_arguments(i, k);
    for r in &args {
        // singular point s = 1/r must stay off the path
        let s = 1.0 / r;
        let d = if s.re < 0.0 {
            s.norm()
        } else if s.re > 1.0 {
            (s - 1.0).norm()
        } else {
            s.im.abs()
        };
        if d < PATH_GUARD {
            return Err(Error::Domain("a branch point of the period integrand is too close to the path".into()));
        }
    }
    let phi = |nd: &Node<f64>| -> C64 { args.iter().map(|r| -b * (1.0 - nd.t * r).ln()).sum::<C64>().exp() };
    let integral = jacobi_integral(phi, (c(0.0, 0.0), c(1.0, 0.0)), (a - 1.0, -b), policy)?;
    Ok(c_pow_inv_z(k, p) * (-a * k.log_kappa(i)).exp() * integral)
}

/// `Pi_i = Gamma(a)Gamma(1-b)/Gamma(1+a-b) C^{1/z} kappa_i^{-a} F_D(a; b..b; 1+a-b; 1/kappa_i, kappa_m/kappa_i)`.
pub fn twisted_period_lauricella(i: usize, k: &KappaPoint, p: &PeriodParams, policy: &PrecisionPolicy) -> Result<C64> {
    check_point(k, p)?;
    let n = p.n();
    if i == 0 || i > n + 1 {
        return Err(Error::Domain(format!("period index {i} outside 1..={}", n + 1)));
    }
    let (a, b) = (p.a(), p.b());
    let params = LauricellaParams::equal(a, b, 1.0 + a - b, n)?;
    let fd = lauricella_fd(&params, &period_arguments(i, k), policy)?;
    let pre = gamma_ratio(&[a, 1.0 - b], &[1.0 + a - b])?;
    Ok(pre * c_pow_inv_z(k, p) * (-a * k.log_kappa(i)).exp() * fd)
}

/// Closed forms at the orbifold point `x = 0`:
/// values `Pi_j = omega^{(j-n/2)a} Gamma(a/(n+1))Gamma(1-b)/((n+1)Gamma(1-b+a/(n+1)))`
/// and first derivatives `d Pi_j/d x_k` (row `j`, column `k`).
pub fn orbifold_point_values(p: &PeriodParams) -> Result<(Vec<C64>, CMat)> {
    let n = p.n();
    let nf = n as f64 + 1.0;
    let (a, b) = (p.a(), p.b());
    let base = gamma_ratio(&[a / nf, 1.0 - b], &[1.0 - b + a / nf])? / nf;
    let phase = |j: usize| omega_pow(n, (j as f64 - n as f64 / 2.0) * a);
    let values = (1..=n + 1).map(|j| phase(j) * base).collect();
    let mut der = CMat::zeros(n + 1, n + 1);
    for k in 1..=n {
        let g = gamma_ratio(&[(a - k as f64) / nf + 1.0, 1.0 - b], &[(a - k as f64) / nf + 1.0 - b])? / nf;
        for j in 1..=n + 1 {
            let e = omega_pow(n, c(k as f64 / 2.0 - (j * k) as f64, 0.0));
            der[(j - 1, k - 1)] = -phase(j) * e * g;
        }
    }
    Ok((values, der))
}

/// `A^{-1}`, rows indexed by periods `j`, columns by fixed points `i`; zero for `j > i`.
pub fn matrix_a_inv(p: &PeriodParams) -> Result<GiventalMatrix> {
    let n = p.n();
    let (a, b, z) = (p.a(), p.b(), p.z);
    let mut m = CMat::zeros(n + 1, n + 1);
    for i in 1..=n + 1 {
        let r = (n + 1 - i) as f64;
        let diag = m1pow(r * b) * gamma_ratio(&[1.0 - b, a - r * b], &[1.0 + a - (r + 1.0) * b])? / z;
        let off = m1pow(a) * gamma_ratio(&[a - r * b, (r + 1.0) * b - a], &[b])? / z;
        m[(i - 1, i - 1)] = diag;
        for j in 1..i {
            m[(j - 1, i - 1)] = off;
        }
    }
    Ok(GiventalMatrix::new(DomainTag::YToY, z, m))
}

/// `A` from its closed form (upper triangular), with the numeric inverse of
/// `A^{-1}` as a flagged fallback if the two disagree beyond [`INVERSE_TOL`].
pub fn matrix_a(p: &PeriodParams) -> Result<GiventalMatrix> {
    let n = p.n();
    let z = p.z;
    let m = printed_a(p)?;
    let inv = matrix_a_inv(p)?;
    let resid = max_abs(&(&m * &inv.entries - CMat::identity(n + 1, n + 1)));
    if resid <= INVERSE_TOL {
        return Ok(GiventalMatrix::new(DomainTag::YToY, z, m));
    }
    let fallback = inv.entries.clone().try_inverse().ok_or_else(|| Error::Assertion("A^{-1} is singular".into()))?;
    Ok(GiventalMatrix { tag: DomainTag::YToY, z, entries: fallback, numeric_fallback: true })
}

fn printed_a(p: &PeriodParams) -> Result<CMat> {
    let n = p.n();
    let (a, b, z) = (p.a(), p.b(), p.z);
    let mut m = CMat::zeros(n + 1, n + 1);
    for i in 1..=n + 1 {
        let r = (n + 1 - i) as f64;
        m[(i - 1, i - 1)] = (c(0.0, PI * r) * b).exp()
            * z
            * gamma_ratio(&[1.0 + a - (r + 1.0) * b, 1.0 - a + r * b], &[1.0 - b])?
            * sin_pi(a - r * b)
            / PI;
        for j in i + 1..=n + 1 {
            let phase = (c(0.0, -PI) * (a - b * (2.0 * n as f64 - 2.0 * j as f64 + 3.0))).exp();
            m[(i - 1, j - 1)] =
                phase * z * sin_pi(b) * gamma_ratio(&[1.0 - a + b * r, 1.0 + a - b * (r + 1.0)], &[1.0 - b])? / PI;
        }
    }
    Ok(m)
}

/// `max |A A^{-1} - I|` with `A` as printed (before any fallback).
pub fn inverse_residual(p: &PeriodParams) -> Result<f64> {
    let a = printed_a(p)?;
    let inv = matrix_a_inv(p)?;
    let n = p.n();
    Ok(max_abs(&(&a * &inv.entries - CMat::identity(n + 1, n + 1))))
}

/// `B = D_1 V D_2`: `D_1 = diag(omega^{(j-n/2)a})`, `V_{jk} = omega^{-jk}/(n+1)`,
/// `D_2 = diag(-omega^{k/2} Gamma((a-k)/(n+1)+1)Gamma(1-b)/Gamma((a-k)/(n+1)+1-b), Gamma(a/(n+1))Gamma(1-b)/(z Gamma(1-b+a/(n+1))))`.
pub fn matrix_b(p: &PeriodParams) -> Result<GiventalMatrix> {
    let n = p.n();
    let nf = n as f64 + 1.0;
    let (a, b, z) = (p.a(), p.b(), p.z);
    let mut d2 = Vec::with_capacity(n + 1);
    for k in 1..=n {
        let x = (a - k as f64) / nf + 1.0;
        d2.push(-omega_pow(n, c(k as f64 / 2.0, 0.0)) * gamma_ratio(&[x, 1.0 - b], &[x - b])?);
    }
    d2.push(gamma_ratio(&[a / nf, 1.0 - b], &[1.0 - b + a / nf])? / z);
    let m = CMat::from_fn(n + 1, n + 1, |j, k| {
        let (jj, kk) = ((j + 1) as f64, (k + 1) as f64);
        omega_pow(n, (jj - n as f64 / 2.0) * a) * omega_pow(n, c(-jj * kk, 0.0)) / nf * d2[k]
    });
    Ok(GiventalMatrix::new(DomainTag::XToY, z, m))
}

/// `B` rebuilt from the twisted periods at `kappa_from_x(x)` near `x = 0`:
/// column `n+1` is `Pi/z`, column `k` is `d Pi/d x_k` by a five-point stencil.
pub fn matrix_b_from_periods(p: &PeriodParams, delta_x: C64, policy: &PrecisionPolicy) -> Result<GiventalMatrix> {
    let n = p.n();
    let h = 1e-3;
    let periods_at = |x: Vec<C64>| -> Result<Vec<C64>> {
        let k = kappa_from_x(&SmallQCPoint::x(x), delta_x, &p.w)?;
        (1..=n + 1).map(|i| twisted_period_euler(i, &k, p, policy)).collect()
    };
    let mut m = CMat::zeros(n + 1, n + 1);
    let v0 = periods_at(vec![c(0.0, 0.0); n + 1])?;
    for j in 0..=n {
        m[(j, n)] = v0[j] / p.z;
    }
    for k in 0..n {
        let shifted = |s: f64| -> Result<Vec<C64>> {
            let mut x = vec![c(0.0, 0.0); n + 1];
            x[k] = c(s * h, 0.0);
            periods_at(x)
        };
        let (p2, p1, m1, m2) = (shifted(2.0)?, shifted(1.0)?, shifted(-1.0)?, shifted(-2.0)?);
        for j in 0..=n {
            m[(j, k)] = (8.0 * (p1[j] - m1[j]) - (p2[j] - m2[j])) / (12.0 * h);
        }
    }
    Ok(GiventalMatrix::new(DomainTag::XToY, p.z, m))
}

/// `U[i,k] = (Gamma_Y^i/Gamma_X^k) (1/(n+1)) (sum_{j<i} omega^{-jk} e^{2 pi i j alpha_1/z} + sum_{j=i}^n omega^{-jk} e^{2 pi i (n+1-j) alpha_2/z})`,
/// columns in the `1_k` basis, rows in the fixed-point basis.
pub fn u_closed_form(p: &PeriodParams) -> Result<GiventalMatrix> {
    let n = p.n();
    let w = &p.w;
    let z = p.z;
    let gx = gamma_class(GSide::X, z, w)?;
    let gy = gamma_class(GSide::Y, z, w)?;
    let e1 = crate::e2pi(w.alpha1 / z);
    let e2 = crate::e2pi(w.alpha2 / z);
    let mut m = CMat::zeros(n + 1, n + 1);
    for i in 1..=n + 1 {
        for k in 1..=n + 1 {
            let mut s = c(0.0, 0.0);
            for j in 0..=n {
                let base = omega_pow(n, c(-((j * k) as f64), 0.0));
                s += if j < i { base * e1.powu(j as u32) } else { base * e2.powu((n + 1 - j) as u32) };
            }
            m[(i - 1, k - 1)] = gy.components[i - 1] / gx.components[k - 1] * s / (n as f64 + 1.0);
        }
    }
    Ok(GiventalMatrix::new(DomainTag::XToY, z, m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalarForm {
    /// `s = omega^{a}`
    OmegaPlusA,
    /// `s = omega^{-a}`
    OmegaMinusA,
}

#[derive(Debug, Clone)]
pub struct Factorization {
    pub product: GiventalMatrix,
    pub scalar: C64,
    pub form: ScalarForm,
    /// `||A B - s U||_inf / ||U||_inf`
    pub rel_err: f64,
    /// `|s - omega^{+-a}|` for the matching sign
    pub scalar_err: f64,
}

/// `A B`, the fitted scalar `s = (A B)_{n+1,n+1}/U_{n+1,n+1}` and the factorization error.
/// Fails if `s` is not `omega^{+-a}` or the entries do not match after the fit.
pub fn u_from_ab(p: &PeriodParams) -> Result<Factorization> {
    let f = factorization_report(p)?;
    if f.scalar_err > FACTORIZATION_TOL {
        return Err(Error::Assertion(format!("fitted scalar {} is not omega^(+-a)", f.scalar)));
    }
    if f.rel_err > FACTORIZATION_TOL {
        return Err(Error::Assertion(format!("A B differs from s U by {:.3e}", f.rel_err)));
    }
    Ok(f)
}

/// [`u_from_ab`] without the assertions.
pub fn factorization_report(p: &PeriodParams) -> Result<Factorization> {
    let n = p.n();
    let a = matrix_a(p)?;
    let b = matrix_b(p)?;
    let u = u_closed_form(p)?;
    let ab = &a.entries * &b.entries;
    let s = ab[(n, n)] / u.entries[(n, n)];
    let plus = omega_pow(n, p.a());
    let minus = omega_pow(n, -p.a());
    let (form, scalar_err) = if (s - plus).norm() <= (s - minus).norm() {
        (ScalarForm::OmegaPlusA, (s - plus).norm())
    } else {
        (ScalarForm::OmegaMinusA, (s - minus).norm())
    };
    let diff = &ab - &u.entries * s;
    let rel_err = crate::norm_inf(&diff) / crate::norm_inf(&u.entries);
    let mut product = GiventalMatrix::new(DomainTag::XToY, p.z, ab);
    product.numeric_fallback = a.numeric_fallback;
    Ok(Factorization { product, scalar: s, form, rel_err, scalar_err })
}

/// `max |eta_Y(U(-z)u, U(z)v) - eta_X(u, v)|` over basis pairs.
pub fn symplectic_residual(p: &PeriodParams) -> Result<f64> {
    let up = u_closed_form(p)?;
    let um = u_closed_form(&p.negated()?)?;
    Ok(symplectic_residual_of(&um.entries, &up.entries, &p.w))
}

/// The residual for explicit `U(-z)` and `U(z)`; used for negative controls.
pub fn symplectic_residual_of(u_minus: &CMat, u_plus: &CMat, w: &TorusWeights) -> f64 {
    let eta = CMat::from_diagonal(&nalgebra::DVector::from_vec(pairing_y_diag(w)));
    max_abs(&(u_minus.transpose() * eta * u_plus - pairing_x_matrix(w)))
}

/// Large-`|z|` check: `U(z)` against the classical map `U0` composed with
/// localization, relative to its largest entry. The twisted columns have a
/// finite limit because `sum_j omega^{-jk}` vanishes and the `1/z` of `Gamma_X^k`
/// is compensated by the first-order term of the exponentials.
pub fn u_large_z_residual(w: &TorusWeights, z: C64) -> Result<f64> {
    let n = w.n;
    let u = u_closed_form(&PeriodParams { w: *w, z })?;
    let target = atiyah_bott_matrix(w) * u0_matrix(n);
    Ok(max_abs(&(u.entries - &target)) / max_abs(&target))
}

/// `max |eta_Y(U(z)u, U(z)v) - eta_X(u, v)|`; at large `|z|` this is the pairing
/// preservation of the classical identification.
pub fn large_z_pairing_residual(w: &TorusWeights, z: C64) -> Result<f64> {
    let u = u_closed_form(&PeriodParams { w: *w, z })?.entries;
    Ok(symplectic_residual_of(&u, &u, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::an_geometry::u0_pairing_residual;

    fn weights(n: usize) -> TorusWeights {
        TorusWeights::new(n, c(0.7, 0.2), c(1.1, -0.3)).unwrap()
    }
    fn params(n: usize) -> PeriodParams {
        PeriodParams::new(weights(n), c(3.1, 0.4)).unwrap()
    }
    fn pol() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn genericity_guard() {
        // b = 1 exactly hits Gamma(1-b)
        let w = weights(1);
        assert!(matches!(PeriodParams::new(w, w.sum()), Err(Error::Resonance(_))));
        assert!(PeriodParams::new(w, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn a_inverse_and_triangularity() {
        for n in 1..=4 {
            let p = params(n);
            let a = matrix_a(&p).unwrap();
            assert!(!a.numeric_fallback);
            assert!(inverse_residual(&p).unwrap() < 1e-10);
            let inv = matrix_a_inv(&p).unwrap();
            for i in 0..=n {
                for j in 0..i {
                    assert_eq!(a.entries[(i, j)], c(0.0, 0.0));
                    assert_eq!(inv.entries[(i, j)], c(0.0, 0.0));
                }
            }
        }
        let p = params(1);
        let (a, b, z) = (p.a(), p.b(), p.z);
        let want = m1pow(b) * crate::numerics::gamma(1.0 - b).unwrap() * crate::numerics::gamma(a - b).unwrap()
            / (z * crate::numerics::gamma(1.0 + a - 2.0 * b).unwrap());
        assert!((matrix_a_inv(&p).unwrap().entries[(0, 0)] - want).norm() < 1e-14);
    }

    #[test]
    fn ab_factorization() {
        for n in 1..=4 {
            let f = u_from_ab(&params(n)).unwrap();
            assert_eq!(f.form, ScalarForm::OmegaPlusA);
            assert!(f.rel_err < 1e-10);
        }
    }

    #[test]
    fn symplectic_and_negative_control() {
        for n in 1..=4 {
            let p = params(n);
            assert!(symplectic_residual(&p).unwrap() < 1e-10);
            let up = u_closed_form(&p).unwrap().entries * c(1.01, 0.0);
            let um = u_closed_form(&p.negated().unwrap()).unwrap().entries;
            assert!(symplectic_residual_of(&um, &up, &p.w) > 1e-3 * max_abs(&pairing_x_matrix(&p.w)));
            assert!(u0_pairing_residual(&p.w) < 1e-12);
        }
    }

    #[test]
    fn large_z_limit() {
        for n in 1..=4 {
            let w = weights(n);
            let r6 = u_large_z_residual(&w, c(1e6, 2e5)).unwrap();
            let r7 = u_large_z_residual(&w, c(1e7, 2e6)).unwrap();
            // first order in 1/z
            assert!((r6 / r7 - 10.0).abs() < 0.1, "n={n}: {r6} {r7}");
            assert!(r7 < 1e-5);
            assert!(large_z_pairing_residual(&w, c(1e6, 0.0)).unwrap() < 1e-5);
        }
    }

    #[test]
    fn dft_block_of_b() {
        let n = 3;
        let nf = n as f64 + 1.0;
        let v = CMat::from_fn(n + 1, n + 1, |j, k| omega_pow(n, c(-(((j + 1) * (k + 1)) as f64), 0.0)) / nf);
        let vv = &v * v.adjoint();
        assert!(max_abs(&(vv - CMat::identity(n + 1, n + 1) * c(1.0 / nf, 0.0))) < 1e-15);
    }

    #[test]
    fn euler_vs_lauricella() {
        let p = params(2);
        // kappa_1 dominant so Pi_1 goes through the series
        let k = KappaPoint::new(vec![c(0.8, 0.1), c(2.4, 0.6), c(0.5, -0.3)]).unwrap();
        for i in 1..=3 {
            let e = twisted_period_euler(i, &k, &p, &pol()).unwrap();
            let l = twisted_period_lauricella(i, &k, &p, &pol()).unwrap();
            assert!((e - l).norm() < 1e-9 * e.norm().max(1.0), "i={i}: {e} {l}");
        }
        // kappa_0 scaling
        let k2 = KappaPoint::from_logs(vec![k.logs()[0] + 0.3, k.logs()[1], k.logs()[2]]).unwrap();
        let ratio =
            twisted_period_euler(3, &k2, &p, &pol()).unwrap() / twisted_period_euler(3, &k, &p, &pol()).unwrap();
        assert!((ratio - (0.3 * p.w.alpha1 / p.z).exp()).norm() < 1e-12);
    }

    #[test]
    fn orbifold_values_and_b() {
        for n in 1..=3 {
            let p = params(n);
            let b = matrix_b(&p).unwrap().entries;
            let (vals, der) = orbifold_point_values(&p).unwrap();
            for j in 0..=n {
                assert!((b[(j, n)] * p.z - vals[j]).norm() < 1e-13, "{} {}", b[(j, n)] * p.z, vals[j]);
                for k in 0..n {
                    assert!((b[(j, k)] - der[(j, k)]).norm() < 1e-13);
                }
            }
            let numeric = matrix_b_from_periods(&p, c(0.0, 0.0), &pol()).unwrap().entries;
            let e = max_abs(&(&numeric - &b)) / max_abs(&b);
            assert!(e < 1e-8, "n={n}: {e}");
        }
    }

    #[test]
    fn default_shift_gives_exact_u() {
        let p = params(2);
        let dx = crate::hurwitz_mirror::default_delta_x(&p.w);
        let b = matrix_b_from_periods(&p, dx, &pol()).unwrap().entries;
        let ab = matrix_a(&p).unwrap().entries * b;
        let u = u_closed_form(&p).unwrap().entries;
        assert!(max_abs(&(ab - &u)) < 1e-7 * max_abs(&u));
    }
}

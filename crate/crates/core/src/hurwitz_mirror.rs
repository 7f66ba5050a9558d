//! One-dimensional Landau-Ginzburg mirror
//! `lambda(q) = C(kappa) q^{(n+1) alpha_1} (1-q)^{alpha_1+alpha_2} prod_k (1 - q kappa_k)^{alpha_1+alpha_2}`
//! with `C = prod_j kappa_j^{alpha_1}`, and the residue formula for its
//! three-point correlators.
//!
//! `kappa_{n+1} = 1` stands for the `(1-q)` factor, so every sum over poles
//! runs over `1..=n+1` uniformly.

use crate::an_geometry::{correlator_x, correlator_y, u0_matrix, Side, SmallQCPoint, TorusWeights};
use crate::numerics::{contour_residue, poly_roots};
use crate::{Error, PrecisionPolicy, Result, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const DISCRIMINANT_GUARD: f64 = 1e-12;
/// Minimal separation of the poles `{0, 1, 1/kappa_l, infinity}`.
pub const POLE_SEPARATION: f64 = 1e-3;
/// Largest tolerated magnitude of the `q = 1` residue.
pub const Q1_RESIDUE_BOUND: f64 = 1e-10;
const MAX_RADIUS: f64 = 0.1;

/// Mirror coordinates `kappa_0..kappa_n`, stored through a chosen logarithm
/// so that branch-sensitive quantities (periods) see a definite branch.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaPoint {
    log_kappa: Vec<C64>,
    // branch of log kappa_{n+1}, a multiple of 2 pi i
    log_unit: C64,
}

impl KappaPoint {
    pub fn from_logs(log_kappa: Vec<C64>) -> Result<Self> {
        if log_kappa.len() < 2 {
            return Err(Error::Geometry("need kappa_0 and at least one kappa_j".into()));
        }
        if log_kappa.iter().any(|l| !(l.re.is_finite() && l.im.is_finite())) {
            return Err(Error::Geometry("kappa_j must be finite and nonzero".into()));
        }
        let p = KappaPoint { log_kappa, log_unit: C64::new(0.0, 0.0) };
        let n = p.n();
        for i in 1..=n + 1 {
            for j in i + 1..=n + 1 {
                let (a, b) = (p.kappa(i), p.kappa(j));
                if (a - b).norm() <= DISCRIMINANT_GUARD * a.norm().max(b.norm()) {
                    return Err(Error::Geometry(format!("kappa_{i} = kappa_{j} lies on the discriminant")));
                }
            }
        }
        Ok(p)
    }

    /// From values, principal logarithms.
    pub fn new(kappa: Vec<C64>) -> Result<Self> {
        if kappa.iter().any(|k| k.norm() == 0.0) {
            return Err(Error::Geometry("kappa_j must be nonzero".into()));
        }
        Self::from_logs(kappa.iter().map(|k| k.ln()).collect())
    }

    pub fn n(&self) -> usize {
        self.log_kappa.len() - 1
    }

    /// Chooses the branch of `log kappa_{n+1}`; `kappa_{n+1}` itself stays 1.
    pub fn with_unit_branch(mut self, winding: i64) -> Self {
        self.log_unit = C64::new(0.0, 2.0 * PI * winding as f64);
        self
    }

    /// `kappa_j` for `j in 0..=n+1`, with `kappa_{n+1} = 1`.
    pub fn kappa(&self, j: usize) -> C64 {
        if j == self.n() + 1 {
            C64::new(1.0, 0.0)
        } else {
            self.log_kappa[j].exp()
        }
    }

    pub fn log_kappa(&self, j: usize) -> C64 {
        if j == self.n() + 1 {
            self.log_unit
        } else {
            self.log_kappa[j]
        }
    }

    pub fn logs(&self) -> &[C64] {
        &self.log_kappa
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldKind {
    /// `kappa_j d/d kappa_j`, index `0..=n`
    KappaScaled,
    /// `d/d t_i`, index `1..=n+1`
    TFrame,
    /// `d/d x_k`, index `1..=n+1`
    XFrame,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorField {
    pub kind: FieldKind,
    pub index: usize,
}

impl VectorField {
    pub fn kappa(index: usize) -> Self {
        VectorField { kind: FieldKind::KappaScaled, index }
    }
    pub fn t(index: usize) -> Self {
        VectorField { kind: FieldKind::TFrame, index }
    }
    pub fn x(index: usize) -> Self {
        VectorField { kind: FieldKind::XFrame, index }
    }

    /// Coefficients `c_j` with `field = sum_{j=0}^n c_j kappa_j d/d kappa_j`.
    ///
    /// `d/d t_i = sum_{1 <= j <= i} kappa_j d_j` for `i <= n`, `d/d t_{n+1} = kappa_0 d_0 / alpha_1`,
    /// and `d/d x_k = sum_i U0[i,k] d/d t_i` since the change of variables is affine.
    pub fn coefficients(&self, n: usize, w: &TorusWeights) -> Result<Vec<C64>> {
        let zero = C64::new(0.0, 0.0);
        let mut c = vec![zero; n + 1];
        match self.kind {
            FieldKind::KappaScaled => {
                if self.index > n {
                    return Err(Error::Geometry(format!("kappa field index {} outside 0..={n}", self.index)));
                }
                c[self.index] = C64::new(1.0, 0.0);
            }
            FieldKind::TFrame => {
                let i = self.index;
                if i == 0 || i > n + 1 {
                    return Err(Error::Geometry(format!("t field index {i} outside 1..={}", n + 1)));
                }
                if i == n + 1 {
                    c[0] = 1.0 / w.alpha1;
                } else {
                    for cj in &mut c[1..=i] {
                        *cj = C64::new(1.0, 0.0);
                    }
                }
            }
            FieldKind::XFrame => {
                let k = self.index;
                if k == 0 || k > n + 1 {
                    return Err(Error::Geometry(format!("x field index {k} outside 1..={}", n + 1)));
                }
                let u0 = u0_matrix(n);
                for i in 1..=n + 1 {
                    let coef = u0[(i - 1, k - 1)];
                    if coef == zero {
                        continue;
                    }
                    for (j, cj) in VectorField::t(i).coefficients(n, w)?.into_iter().enumerate() {
                        c[j] += coef * cj;
                    }
                }
            }
        }
        Ok(c)
    }
}

fn pole_guard(q: C64, k: &KappaPoint) -> Result<()> {
    for j in 1..=k.n() + 1 {
        if (1.0 - q * k.kappa(j)).norm() < DISCRIMINANT_GUARD {
            return Err(Error::pole(q.re, q.im));
        }
    }
    Ok(())
}

// kappa_j d_j log lambda at q, for the coefficient vector of a field
fn field_log_deriv(c: &[C64], k: &KappaPoint, q: C64, w: &TorusWeights) -> C64 {
    let s = w.sum();
    let mut v = c[0] * w.alpha1;
    for (j, cj) in c.iter().enumerate().skip(1) {
        if cj.norm() != 0.0 {
            let qk = q * k.kappa(j);
            v += cj * (w.alpha1 + s * qk / (1.0 - qk));
        }
    }
    v
}

fn q_log_deriv(k: &KappaPoint, q: C64, w: &TorusWeights) -> C64 {
    let n = k.n();
    let s = w.sum();
    let mut v = (n as f64 + 1.0) * w.alpha1;
    for j in 1..=n + 1 {
        let qk = q * k.kappa(j);
        v += s * qk / (1.0 - qk);
    }
    v
}

/// `X(log lambda)` at `q`.
pub fn log_lambda_grad(k: &KappaPoint, x: &VectorField, q: C64, w: &TorusWeights) -> Result<C64> {
    check_rank(k, w)?;
    pole_guard(q, k)?;
    Ok(field_log_deriv(&x.coefficients(k.n(), w)?, k, q, w))
}

/// `q d/dq log lambda = (n+1) alpha_1 + (alpha_1+alpha_2)[q/(1-q) + sum_k q kappa_k/(1 - q kappa_k)]`
pub fn q_dlog_lambda(k: &KappaPoint, q: C64, w: &TorusWeights) -> Result<C64> {
    check_rank(k, w)?;
    pole_guard(q, k)?;
    Ok(q_log_deriv(k, q, w))
}

fn check_rank(k: &KappaPoint, w: &TorusWeights) -> Result<()> {
    if k.n() != w.n {
        return Err(Error::Geometry(format!("kappa point has n = {}, weights have n = {}", k.n(), w.n)));
    }
    Ok(())
}

fn poly_mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Critical points of `lambda`: zeros of the numerator of `q d/dq log lambda`,
/// `(n+1) alpha_1 prod_{l<=n+1}(1 - q kappa_l) + (alpha_1+alpha_2) sum_l q kappa_l prod_{m != l}(1 - q kappa_m)`.
pub fn critical_points(k: &KappaPoint, w: &TorusWeights) -> Result<Vec<C64>> {
    check_rank(k, w)?;
    let n = k.n();
    let one = C64::new(1.0, 0.0);
    let lin = |l: usize| vec![one, -k.kappa(l)];
    let mut full = vec![one];
    for l in 1..=n + 1 {
        full = poly_mul(&full, &lin(l));
    }
    let mut num: Vec<C64> = full.iter().map(|c| c * (n as f64 + 1.0) * w.alpha1).collect();
    for l in 1..=n + 1 {
        let mut term = vec![C64::new(0.0, 0.0), k.kappa(l) * w.sum()];
        for m in (1..=n + 1).filter(|&m| m != l) {
            term = poly_mul(&term, &lin(m));
        }
        for (i, t) in term.into_iter().enumerate() {
            num[i] += t;
        }
    }
    poly_roots(&num)
}

/// A pole of the residue integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pole {
    Zero,
    /// `q = 1/kappa_l`, `l in 1..=n+1`; `l = n+1` is `q = 1`.
    InvKappa(usize),
    Infinity,
}

/// Pole positions and critical points of one mirror point, shared by all residues there.
#[derive(Debug, Clone)]
pub struct PoleLayout {
    pub finite: Vec<(Pole, C64)>,
    pub critical: Vec<C64>,
}

impl PoleLayout {
    pub fn new(k: &KappaPoint, w: &TorusWeights) -> Result<Self> {
        check_rank(k, w)?;
        let n = k.n();
        let mut finite = vec![(Pole::Zero, C64::new(0.0, 0.0))];
        for l in 1..=n + 1 {
            finite.push((Pole::InvKappa(l), 1.0 / k.kappa(l)));
        }
        for (a, (_, p)) in finite.iter().enumerate() {
            for (_, r) in &finite[a + 1..] {
                if (p - r).norm() < POLE_SEPARATION {
                    return Err(Error::Geometry("residue poles closer than the separation guard".into()));
                }
            }
            if p.norm() > 1.0 / POLE_SEPARATION {
                return Err(Error::Geometry("a pole is too close to infinity".into()));
            }
        }
        Ok(PoleLayout { finite, critical: critical_points(k, w)? })
    }

    fn radius(&self, p: C64) -> f64 {
        let nearest = self
            .finite
            .iter()
            .map(|(_, x)| *x)
            .chain(self.critical.iter().copied())
            .map(|x| (p - x).norm())
            .filter(|&d| d > 1e-14)
            .fold(f64::INFINITY, f64::min);
        MAX_RADIUS.min(nearest / 2.0)
    }

    fn radius_at_infinity(&self) -> f64 {
        // in u = 1/q the other singularities sit at kappa_l and 1/c
        let nearest = self
            .finite
            .iter()
            .filter(|(pole, _)| *pole != Pole::Zero)
            .map(|(_, x)| (1.0 / x).norm())
            .chain(self.critical.iter().filter(|c| c.norm() > 1e-14).map(|c| 1.0 / c.norm()))
            .fold(f64::INFINITY, f64::min);
        MAX_RADIUS.min(nearest / 2.0)
    }
}

/// Residue at one pole of
/// `X(log lambda) Y(log lambda) Z(log lambda) / ((alpha_1+alpha_2)^2 q q d_q log lambda) dq`.
pub fn residue_at(
    k: &KappaPoint,
    fields: [&VectorField; 3],
    pole: Pole,
    layout: &PoleLayout,
    w: &TorusWeights,
    policy: &PrecisionPolicy,
) -> Result<C64> {
    let n = k.n();
    let cs = [fields[0].coefficients(n, w)?, fields[1].coefficients(n, w)?, fields[2].coefficients(n, w)?];
    residue_with_coeffs(k, &cs, pole, layout, w, policy)
}

fn residue_with_coeffs(
    k: &KappaPoint,
    cs: &[Vec<C64>; 3],
    pole: Pole,
    layout: &PoleLayout,
    w: &TorusWeights,
    policy: &PrecisionPolicy,
) -> Result<C64> {
    let s2 = w.sum() * w.sum();
    let f = |q: C64| -> C64 {
        let mut v = C64::new(1.0, 0.0);
        for c in cs {
            v *= field_log_deriv(c, k, q, w);
        }
        v / (s2 * q * q_log_deriv(k, q, w))
    };
    match pole {
        Pole::Infinity => {
            let g = |u: C64| -f(1.0 / u) / (u * u);
            contour_residue(g, C64::new(0.0, 0.0), layout.radius_at_infinity(), policy)
        }
        _ => {
            let p = layout
                .finite
                .iter()
                .find(|(tag, _)| *tag == pole)
                .map(|(_, p)| *p)
                .ok_or_else(|| Error::Geometry(format!("no pole {pole:?} at this point")))?;
            contour_residue(f, p, layout.radius(p), policy)
        }
    }
}

/// Per-pole contributions of one correlator.
#[derive(Debug, Clone)]
pub struct ResidueBreakdown {
    pub per_pole: Vec<(Pole, C64)>,
    pub total: C64,
}

impl ResidueBreakdown {
    /// Magnitude of the `q = 1` contribution.
    pub fn q1(&self) -> f64 {
        let last = self.per_pole.iter().filter_map(|(p, v)| match p {
            Pole::InvKappa(l) => Some((*l, v.norm())),
            _ => None,
        });
        last.max_by_key(|(l, _)| *l).map(|(_, v)| v).unwrap_or(0.0)
    }
}

pub fn residue_breakdown(
    k: &KappaPoint,
    fields: [&VectorField; 3],
    w: &TorusWeights,
    policy: &PrecisionPolicy,
) -> Result<ResidueBreakdown> {
    let layout = PoleLayout::new(k, w)?;
    let n = k.n();
    let cs = [fields[0].coefficients(n, w)?, fields[1].coefficients(n, w)?, fields[2].coefficients(n, w)?];
    let mut per_pole = Vec::with_capacity(n + 3);
    let mut total = C64::new(0.0, 0.0);
    let poles = layout.finite.iter().map(|(p, _)| *p).chain(std::iter::once(Pole::Infinity)).collect::<Vec<_>>();
    for pole in poles {
        let r = residue_with_coeffs(k, &cs, pole, &layout, w, policy)?;
        total += r;
        per_pole.push((pole, r));
    }
    Ok(ResidueBreakdown { per_pole, total })
}

/// The mirror three-point function: sum of all residues, including `q = 1` and
/// `q = infinity`. Fails if the `q = 1` residue is not negligible.
pub fn residue_correlator(
    k: &KappaPoint,
    fields: [&VectorField; 3],
    w: &TorusWeights,
    policy: &PrecisionPolicy,
) -> Result<C64> {
    let b = residue_breakdown(k, fields, w, policy)?;
    if b.q1() > Q1_RESIDUE_BOUND {
        return Err(Error::Assertion(format!("q = 1 residue {:.3e} is not negligible", b.q1())));
    }
    Ok(b.total)
}

/// `kappa_0 = e^{(t_{n+1} + delta_Y)/alpha_1}`, `kappa_j = prod_{i=j}^n e^{t_i}`.
pub fn kappa_from_t(t: &SmallQCPoint, delta_y: C64, w: &TorusWeights) -> Result<KappaPoint> {
    if t.side != Side::Y || t.n() != w.n {
        return Err(Error::Geometry("kappa_from_t needs a Y point of matching rank".into()));
    }
    let n = w.n;
    let mut logs = vec![(t.t[n] + delta_y) / w.alpha1];
    for j in 1..=n {
        logs.push(t.t[j - 1..n].iter().sum());
    }
    KappaPoint::from_logs(logs)
}

/// `log kappa_j = -(2i/(n+1)) (pi j + sum_k e^{-i pi k (j-1)/(n+1)} sin(pi j k/(n+1)) x_k)`,
/// `kappa_0 = e^{(x_{n+1} + delta_X)/alpha_1}`.
///
/// At `x = 0` this is the orbifold point `kappa_j = omega^{-j}` on the branch
/// `log kappa_j = -2 pi i j/(n+1)`. The formula at `j = n+1` gives
/// `log kappa_{n+1} = -2 pi i` for every `x`, and that branch is kept.
pub fn kappa_from_x(x: &SmallQCPoint, delta_x: C64, w: &TorusWeights) -> Result<KappaPoint> {
    if x.side != Side::X || x.n() != w.n {
        return Err(Error::Geometry("kappa_from_x needs an X point of matching rank".into()));
    }
    let n = w.n;
    let nf = n as f64 + 1.0;
    let mut logs = vec![(x.t[n] + delta_x) / w.alpha1];
    for j in 1..=n {
        let mut v = C64::new(PI * j as f64, 0.0);
        for kk in 1..=n {
            let phase = C64::new(0.0, -PI * (kk * (j - 1)) as f64 / nf).exp();
            v += phase * (PI * (j * kk) as f64 / nf).sin() * x.t[kk - 1];
        }
        logs.push(C64::new(0.0, -2.0 / nf) * v);
    }
    Ok(KappaPoint::from_logs(logs)?.with_unit_branch(-1))
}

/// Default shift on the `Y` side.
pub fn default_delta_y(_w: &TorusWeights) -> C64 {
    C64::new(0.0, 0.0)
}

/// Default shift on the `X` side, `-2 pi i alpha_1`. With it the periods built at
/// `kappa_from_x` match `A B = s U` with no extra power of `omega^a`.
pub fn default_delta_x(w: &TorusWeights) -> C64 {
    C64::new(0.0, -2.0 * PI) * w.alpha1
}

/// `|mirror correlator - quantum correlator|` for one index triple, in the
/// `t` frame on `Y` or the `x` frame on `X`.
pub fn mirror_check(
    point: &SmallQCPoint,
    triple: (usize, usize, usize),
    w: &TorusWeights,
    policy: &PrecisionPolicy,
) -> Result<f64> {
    let (i, j, k) = triple;
    let (kp, fields, quantum) = match point.side {
        Side::Y => (
            kappa_from_t(point, default_delta_y(w), w)?,
            [VectorField::t(i), VectorField::t(j), VectorField::t(k)],
            correlator_y(i, j, k, point, w)?,
        ),
        Side::X => (
            kappa_from_x(point, default_delta_x(w), w)?,
            [VectorField::x(i), VectorField::x(j), VectorField::x(k)],
            correlator_x(i, j, k, point, w)?,
        ),
    };
    let r = residue_correlator(&kp, [&fields[0], &fields[1], &fields[2]], w, policy)?;
    Ok((r - quantum).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::an_geometry::change_of_vars;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }
    fn weights(n: usize) -> TorusWeights {
        TorusWeights::new(n, c(0.8, 0.15), c(1.05, -0.2)).unwrap()
    }
    fn pol() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }
    fn kp(n: usize) -> KappaPoint {
        let mut v = vec![c(0.9, 0.1)];
        for j in 1..=n {
            v.push(c(0.3 + 0.37 * j as f64, 0.5 - 0.3 * j as f64));
        }
        KappaPoint::new(v).unwrap()
    }

    #[test]
    fn gradient_values() {
        let w = weights(2);
        let k = kp(2);
        let q = c(0.3, -0.2);
        assert_eq!(log_lambda_grad(&k, &VectorField::kappa(0), q, &w).unwrap(), w.alpha1);
        assert!((log_lambda_grad(&k, &VectorField::kappa(1), c(0.0, 0.0), &w).unwrap() - w.alpha1).norm() < 1e-15);
        assert!((q_dlog_lambda(&k, c(0.0, 0.0), &w).unwrap() - 3.0 * w.alpha1).norm() < 1e-15);
        assert!(matches!(q_dlog_lambda(&k, c(1.0, 0.0), &w), Err(Error::Pole { .. })));
        let q1 = 1.0 / k.kappa(2);
        assert!(log_lambda_grad(&k, &VectorField::kappa(2), q1, &w).is_err());
    }

    #[test]
    fn discriminant_guard() {
        assert!(KappaPoint::new(vec![c(1.0, 0.0), c(1.0, 0.0)]).is_err());
        assert!(KappaPoint::new(vec![c(1.0, 0.0), c(0.5, 0.0), c(0.5, 0.0)]).is_err());
        assert!(KappaPoint::new(vec![c(0.0, 0.0), c(0.5, 0.0)]).is_err());
    }

    #[test]
    fn critical_points_are_zeros() {
        for n in 1..=4 {
            let w = weights(n);
            let k = kp(n);
            let cps = critical_points(&k, &w).unwrap();
            assert_eq!(cps.len(), n + 1);
            for q in cps {
                assert!(q_dlog_lambda(&k, q, &w).unwrap().norm() < 1e-9);
            }
        }
    }

    #[test]
    fn single_pole_formulas() {
        for n in 2..=3 {
            let w = weights(n);
            let k = kp(n);
            let s = w.sum();
            let layout = PoleLayout::new(&k, &w).unwrap();
            let kk: Vec<C64> = (1..=n + 1).map(|j| k.kappa(j)).collect();
            let f = |j| VectorField::kappa(j);
            for i in 1..=n {
                let r = residue_at(&k, [&f(0), &f(i), &f(i)], Pole::InvKappa(i), &layout, &w, &pol()).unwrap();
                assert!((r + w.alpha1 / s).norm() < 1e-10);
                let r = residue_at(&k, [&f(i), &f(i), &f(i)], Pole::InvKappa(i), &layout, &w, &pol()).unwrap();
                let mut want = ((n as f64 - 1.0) * w.alpha1 + w.alpha2) / s;
                for l in (1..=n + 1).filter(|&l| l != i) {
                    want += kk[l - 1] / (kk[i - 1] - kk[l - 1]);
                }
                assert!((r - want).norm() < 1e-10);
                for m in (1..=n).filter(|&m| m != i) {
                    let r = residue_at(&k, [&f(i), &f(i), &f(m)], Pole::InvKappa(i), &layout, &w, &pol()).unwrap();
                    let want = kk[i - 1] / (kk[m - 1] - kk[i - 1]) + w.alpha2 / s;
                    assert!((r - want).norm() < 1e-10);
                }
            }
            // at q = 0 every field gives alpha_1, at infinity kappa_0 d_0 gives alpha_1 and the rest -alpha_2
            let nf = n as f64 + 1.0;
            for cnt in 0..=3usize {
                let fs: Vec<VectorField> = (0..3).map(|m| if m < cnt { f(0) } else { f(1 + m % n) }).collect();
                let r = residue_at(&k, [&fs[0], &fs[1], &fs[2]], Pole::Zero, &layout, &w, &pol()).unwrap();
                assert!((r - w.alpha1 * w.alpha1 / (nf * s * s)).norm() < 1e-10);
                let r = residue_at(&k, [&fs[0], &fs[1], &fs[2]], Pole::Infinity, &layout, &w, &pol()).unwrap();
                let want = w.alpha1.powu(cnt as u32) * (-w.alpha2).powu(3 - cnt as u32) / (nf * w.alpha2 * s * s);
                assert!((r - want).norm() < 1e-10, "{r} {want}");
            }
        }
    }

    #[test]
    fn inspection_and_q1() {
        for n in 1..=3 {
            let w = weights(n);
            let k = kp(n);
            let layout = PoleLayout::new(&k, &w).unwrap();
            for a in 0..=n {
                for b in a..=n {
                    for d in b..=n {
                        let fs = [VectorField::kappa(a), VectorField::kappa(b), VectorField::kappa(d)];
                        for l in 1..=n + 1 {
                            let hits = [a, b, d].iter().filter(|&&m| m == l).count();
                            if hits >= 2 {
                                continue;
                            }
                            let r = residue_at(&k, [&fs[0], &fs[1], &fs[2]], Pole::InvKappa(l), &layout, &w, &pol())
                                .unwrap();
                            assert!(r.norm() < 1e-10, "n={n} ({a},{b},{d}) l={l}: {r}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn n1_diagonal_example() {
        let w = weights(1);
        let t1 = c(-0.9, 0.4);
        let p = SmallQCPoint::y(vec![t1, c(0.1, 0.0)]).unwrap();
        let k = kappa_from_t(&p, c(0.0, 0.0), &w).unwrap();
        let layout = PoleLayout::new(&k, &w).unwrap();
        let f = VectorField::kappa(1);
        let r = residue_at(&k, [&f, &f, &f], Pole::InvKappa(1), &layout, &w, &pol()).unwrap();
        let want = w.alpha2 / w.sum() + 1.0 / (k.kappa(1) - 1.0);
        assert!((r - want).norm() < 1e-10);
        let e = t1.exp();
        let total = residue_correlator(&k, [&f, &f, &f], &w, &pol()).unwrap();
        assert!((total - (-0.5 - e / (1.0 - e))).norm() < 1e-9);
    }

    #[test]
    fn charts() {
        let w = weights(2);
        let p = SmallQCPoint::y(vec![c(-0.5, 0.2), c(-0.7, -0.1), c(0.3, 0.0)]).unwrap();
        let k = kappa_from_t(&p, c(0.0, 0.0), &w).unwrap();
        assert!((k.kappa(1) - (p.t[0] + p.t[1]).exp()).norm() < 1e-15);
        assert!((k.kappa(2) - p.t[1].exp()).norm() < 1e-15);
        let k2 = kappa_from_t(&p, c(0.2, 0.0), &w).unwrap();
        assert_eq!(k.logs()[1..], k2.logs()[1..]);
        for n in 1..=4 {
            let w = weights(n);
            let x0 = SmallQCPoint::x(vec![c(0.0, 0.0); n + 1]);
            let k = kappa_from_x(&x0, c(0.0, 0.0), &w).unwrap();
            for j in 1..=n {
                assert!((k.kappa(j) - crate::omega_pow(n, c(-(j as f64), 0.0))).norm() < 1e-14);
            }
            let x = SmallQCPoint::x((0..=n).map(|i| c(0.05 * i as f64, -0.03)).collect());
            let kx = kappa_from_x(&x, c(0.0, 0.0), &w).unwrap();
            let kt = kappa_from_t(&change_of_vars(&x).unwrap(), c(0.0, 0.0), &w).unwrap();
            for j in 0..=n {
                assert!((kx.kappa(j) - kt.kappa(j)).norm() < 1e-13, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn mirror_matches_both_sides() {
        for n in 1..=3 {
            let w = weights(n);
            let y = SmallQCPoint::y((0..=n).map(|i| c(-0.6 - 0.1 * i as f64, 0.2)).collect()).unwrap();
            let x = SmallQCPoint::x((0..=n).map(|i| c(0.04 * i as f64, 0.05)).collect());
            for i in 1..=n + 1 {
                for j in i..=n + 1 {
                    for k in j..=n + 1 {
                        assert!(mirror_check(&y, (i, j, k), &w, &pol()).unwrap() < 1e-8, "Y n={n}");
                        assert!(mirror_check(&x, (i, j, k), &w, &pol()).unwrap() < 1e-8, "X n={n}");
                    }
                }
            }
        }
    }
}

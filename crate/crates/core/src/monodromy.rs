//! Monodromy of the rank two system at `n = 1`.
//!
//! In the coordinate `x = kappa_1` the twisted periods are
//! `(kappa_0 kappa_1)^{a/2}` times solutions of the Gauss equation
//! `x(1-x) y'' + (c - (a+b+1) x) y' - a b y = 0` with `c = 1 + a - b`.
//! The equation is transported numerically and the prefactor is applied as an
//! exact phase.

use crate::periods::PeriodParams;
use crate::{max_abs, CMat, Error, Result, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Step-halving tolerance of the transport.
pub const TRANSPORT_TOL: f64 = 1e-7;
const MAX_REFINEMENTS: usize = 6;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn mat2(a: C64, b: C64, cc: C64, d: C64) -> CMat {
    CMat::from_row_slice(2, 2, &[a, b, cc, d])
}

fn check_n1(p: &PeriodParams) -> Result<()> {
    if p.n() != 1 {
        return Err(Error::Domain("monodromy is implemented for n = 1 only".into()));
    }
    Ok(())
}

/// The closed-form monodromies around large radius (`LR1`), the conifold (`CP`)
/// and the second large-radius point (`LR2`).
#[derive(Debug, Clone, PartialEq)]
pub struct PaperMatrices {
    pub lr1: CMat,
    pub cp: CMat,
    pub lr2: CMat,
}

pub fn paper_matrices_n1(p: &PeriodParams) -> Result<PaperMatrices> {
    check_n1(p)?;
    Ok(paper_matrices_ab(p.a(), p.b()))
}

/// [`paper_matrices_n1`] for explicit `(a, b)`.
pub fn paper_matrices_ab(a: C64, b: C64) -> PaperMatrices {
    let e = |x: C64| (c(0.0, PI) * x).exp();
    let one = c(1.0, 0.0);
    let sb = (PI * b).sin();
    let i = c(0.0, 1.0);
    let lr1 = mat2(e(-a) * (e(2.0 * a) + e(2.0 * b)), e(2.0 * b), -one, c(0.0, 0.0));
    let q = e(2.0 * b) - 1.0;
    let cp = mat2(one, -2.0 * i * e(b - a) * sb, -e(-(a + 2.0 * b)) * q, e(-2.0 * (a + b)) * q * q + 1.0);
    let lr2 = mat2(2.0 * (PI * a).cos(), one - e(-2.0 * a) * q, -one, 2.0 * i * e(b - a) * sb);
    PaperMatrices { lr1, cp, lr2 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Center {
    Zero,
    One,
    Infinity,
}

/// A circle through `basepoint`. Around `0` and `1` it runs counterclockwise;
/// around infinity it is a clockwise circle about `0` enclosing both finite
/// singular points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoopSpec {
    pub basepoint: C64,
    pub center: Center,
    pub radius: f64,
    pub steps: usize,
}

impl LoopSpec {
    pub fn new(basepoint: C64, center: Center, radius: f64, steps: usize) -> Result<Self> {
        let l = LoopSpec { basepoint, center, radius, steps };
        l.validate()?;
        Ok(l)
    }

    fn circle_center(&self) -> C64 {
        match self.center {
            Center::One => c(1.0, 0.0),
            _ => c(0.0, 0.0),
        }
    }

    fn orientation(&self) -> f64 {
        if self.center == Center::Infinity {
            -1.0
        } else {
            1.0
        }
    }

    /// Keeps the circle at least `radius/2` away from `0`, `1` and the orbifold point `-1`
    /// (the enclosed point is at distance `radius`).
    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0) || self.steps < 8 {
            return Err(Error::Config("loop needs a positive radius and at least 8 steps".into()));
        }
        let cc = self.circle_center();
        if ((self.basepoint - cc).norm() - self.radius).abs() > 1e-9 * self.radius.max(1.0) {
            return Err(Error::Config("basepoint must lie on the loop".into()));
        }
        if self.center == Center::Infinity && self.radius <= 1.0 {
            return Err(Error::Config("a loop around infinity must enclose 0 and 1".into()));
        }
        for s in [c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)] {
            let gap = ((s - cc).norm() - self.radius).abs();
            if gap < self.radius / 2.0 {
                return Err(Error::Geometry(format!("loop passes within {gap:.3} of {s}")));
            }
        }
        Ok(())
    }

    /// Phase picked up by `(kappa_0 kappa_1)^{a/2}`.
    pub fn prefactor_phase(&self, a: C64) -> C64 {
        match self.center {
            Center::Zero => (c(0.0, PI) * a).exp(),
            Center::One => c(1.0, 0.0),
            Center::Infinity => (c(0.0, -PI) * a).exp(),
        }
    }
}

fn gauss_rhs(x: C64, y: [C64; 2], a: C64, b: C64) -> [C64; 2] {
    let cc = 1.0 + a - b;
    [y[1], -((cc - (a + b + 1.0) * x) * y[1] - a * b * y[0]) / (x * (1.0 - x))]
}

// carries the columns of `init`, states (y, y'), once around the loop with `steps` RK4 steps in the angle
fn transport(l: &LoopSpec, a: C64, b: C64, steps: usize, init: &CMat) -> CMat {
    let cc = l.circle_center();
    let theta0 = (l.basepoint - cc).arg();
    let h = l.orientation() * 2.0 * PI / steps as f64;
    let r = l.radius;
    let point = |t: f64| cc + C64::from_polar(r, t);
    let f = |t: f64, y: [C64; 2]| -> [C64; 2] {
        let dx = c(0.0, 1.0) * C64::from_polar(r, t);
        let g = gauss_rhs(point(t), y, a, b);
        [g[0] * dx, g[1] * dx]
    };
    let mut m = init.clone();
    for col in 0..init.ncols() {
        let mut y = [init[(0, col)], init[(1, col)]];
        for s in 0..steps {
            let t = theta0 + h * s as f64;
            let k1 = f(t, y);
            let k2 = f(t + h / 2.0, [y[0] + h / 2.0 * k1[0], y[1] + h / 2.0 * k1[1]]);
            let k3 = f(t + h / 2.0, [y[0] + h / 2.0 * k2[0], y[1] + h / 2.0 * k2[1]]);
            let k4 = f(t + h, [y[0] + h * k3[0], y[1] + h * k3[1]]);
            for j in 0..2 {
                y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
            }
        }
        m[(0, col)] = y[0];
        m[(1, col)] = y[1];
    }
    m
}

// one continuous integration along the concatenated loops, each with `scale` times its own step count
fn transport_path(loops: &[LoopSpec], a: C64, b: C64, scale: usize) -> CMat {
    loops.iter().fold(CMat::identity(2, 2), |state, l| transport(l, a, b, l.steps * scale, &state))
}

/// Transport with step doubling until two successive results agree to [`TRANSPORT_TOL`].
fn converged_transport(loops: &[LoopSpec], a: C64, b: C64) -> Result<CMat> {
    let mut scale = 1;
    let mut prev = transport_path(loops, a, b, scale);
    for _ in 0..MAX_REFINEMENTS {
        scale *= 2;
        let cur = transport_path(loops, a, b, scale);
        if max_abs(&(&cur - &prev)) <= TRANSPORT_TOL {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NonConvergence(format!("monodromy transport not settled at {scale}x the base steps")))
}

/// Monodromy of the twisted periods around one loop, in the frame of solutions
/// normalized at the basepoint, including the prefactor phase.
pub fn numeric_monodromy_n1(l: &LoopSpec, p: &PeriodParams) -> Result<CMat> {
    check_n1(p)?;
    numeric_monodromy_ab(l, p.a(), p.b())
}

/// [`numeric_monodromy_n1`] for explicit `(a, b)`.
pub fn numeric_monodromy_ab(l: &LoopSpec, a: C64, b: C64) -> Result<CMat> {
    l.validate()?;
    Ok(converged_transport(std::slice::from_ref(l), a, b)? * l.prefactor_phase(a))
}

/// Transport along loops traversed in order, all sharing one basepoint, as a
/// single integration of the system. Comparing with the product `M_k ... M_1`
/// of separately computed monodromies tests the frame composition.
pub fn numeric_monodromy_path(loops: &[LoopSpec], p: &PeriodParams) -> Result<CMat> {
    check_n1(p)?;
    let first = loops.first().ok_or_else(|| Error::Config("empty path".into()))?;
    let mut phase = c(1.0, 0.0);
    for l in loops {
        l.validate()?;
        if (l.basepoint - first.basepoint).norm() > 1e-12 {
            return Err(Error::Config("loops must share a basepoint".into()));
        }
        phase *= l.prefactor_phase(p.a());
    }
    Ok(converged_transport(loops, p.a(), p.b())? * phase)
}

/// `max(|tr M - tr N|, |det M - det N|)`
pub fn invariant_compare(numeric: &CMat, paper: &CMat) -> f64 {
    let (t, d) = tr_det(numeric);
    let (t2, d2) = tr_det(paper);
    (t - t2).norm().max((d - d2).norm())
}

pub fn tr_det(m: &CMat) -> (C64, C64) {
    (m[(0, 0)] + m[(1, 1)], m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)])
}

/// Determinant predicted by the local exponents and the prefactor:
/// `e^{2 pi i b}` around `0` and around infinity, `e^{-4 pi i b}` around `1`.
pub fn expected_det(center: Center, b: C64) -> C64 {
    match center {
        Center::Zero | Center::Infinity => crate::e2pi(b),
        Center::One => crate::e2pi(-2.0 * b),
    }
}

/// Standard loops used by the checks: radius `1/2` around `0` and `1` through
/// `x = 1/2`, radius 2 around infinity through `x = 2`.
pub fn standard_loops() -> [LoopSpec; 3] {
    [
        LoopSpec { basepoint: c(0.5, 0.0), center: Center::Zero, radius: 0.5, steps: 400 },
        LoopSpec { basepoint: c(0.5, 0.0), center: Center::One, radius: 0.5, steps: 400 },
        LoopSpec { basepoint: c(2.0, 0.0), center: Center::Infinity, radius: 2.0, steps: 800 },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> (C64, C64) {
        (c(0.37, 0.11), c(0.23, -0.07))
    }

    #[test]
    fn paper_dets_and_relation() {
        let (a, b) = ab();
        let m = paper_matrices_ab(a, b);
        assert!((tr_det(&m.lr1).1 - crate::e2pi(b)).norm() < 1e-14);
        // CP is LR1^{-1} LR2 as printed
        let rel = m.lr1.clone().try_inverse().unwrap() * &m.lr2;
        assert!(max_abs(&(rel - &m.cp)) < 1e-13);
        let z = paper_matrices_ab(a, c(1e-9, 0.0));
        assert!(max_abs(&(z.cp - CMat::identity(2, 2))) < 1e-7);
    }

    #[test]
    fn loops_validate() {
        assert!(LoopSpec::new(c(0.5, 0.0), Center::Zero, 0.5, 100).is_ok());
        assert!(LoopSpec::new(c(0.6, 0.0), Center::Zero, 0.5, 100).is_err());
        assert!(LoopSpec::new(c(0.9, 0.0), Center::One, 0.1, 100).is_ok());
        assert!(LoopSpec::new(c(0.95, 0.0), Center::Zero, 0.95, 100).is_err());
        assert!(LoopSpec::new(c(0.8, 0.0), Center::Infinity, 0.8, 100).is_err());
    }

    #[test]
    fn local_exponents() {
        let (a, b) = ab();
        let [l0, l1, linf] = standard_loops();
        let m0 = numeric_monodromy_ab(&l0, a, b).unwrap();
        let m1 = numeric_monodromy_ab(&l1, a, b).unwrap();
        let mi = numeric_monodromy_ab(&linf, a, b).unwrap();
        assert!((tr_det(&m0).1 - expected_det(Center::Zero, b)).norm() < 1e-8);
        assert!((tr_det(&m1).1 - expected_det(Center::One, b)).norm() < 1e-8);
        assert!((tr_det(&mi).1 - expected_det(Center::Infinity, b)).norm() < 1e-8);
        // eigenvalues around 0: e^{i pi a} and e^{i pi a} e^{2 pi i (b-a)}
        let (e1, e2) = ((c(0.0, PI) * a).exp(), (c(0.0, PI) * a).exp() * crate::e2pi(b - a));
        assert!((tr_det(&m0).0 - (e1 + e2)).norm() < 1e-8);
        // one eigenvalue 1 around the conifold
        let (t, d) = tr_det(&m1);
        assert!((1.0 - t + d).norm() < 1e-8);
    }

    #[test]
    fn large_radius_against_paper() {
        let (a, b) = ab();
        let m = paper_matrices_ab(a, b);
        let [l0, _, linf] = standard_loops();
        assert!(invariant_compare(&numeric_monodromy_ab(&l0, a, b).unwrap(), &m.lr1) < 1e-6);
        assert!(invariant_compare(&numeric_monodromy_ab(&linf, a, b).unwrap(), &m.lr2) < 1e-6);
    }

    #[test]
    fn conifold_trivial_at_b_zero() {
        let (a, _) = ab();
        let [_, l1, _] = standard_loops();
        let m = numeric_monodromy_ab(&l1, a, c(1e-10, 0.0)).unwrap();
        assert!(max_abs(&(m - CMat::identity(2, 2))) < 1e-6);
    }

    #[test]
    fn composition_and_conjugation() {
        let w = crate::an_geometry::TorusWeights::new(1, c(0.6, 0.1), c(0.9, -0.2)).unwrap();
        let p = PeriodParams::new(w, c(3.3, 0.2)).unwrap();
        let [l0, l1, _] = standard_loops();
        let both = numeric_monodromy_path(&[l0, l1], &p).unwrap();
        let prod = numeric_monodromy_n1(&l1, &p).unwrap() * numeric_monodromy_n1(&l0, &p).unwrap();
        assert!(max_abs(&(both - prod)) < 1e-9);
        let a = p.a();
        let b = p.b();
        let conj = CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(2.0, 1.0), c(0.0, 1.0), c(3.0, 0.0)]);
        let m = paper_matrices_ab(a, b).lr1;
        let g = &conj * &m * conj.clone().try_inverse().unwrap();
        assert!(invariant_compare(&g, &m) < 1e-12);
    }
}

//! Gauss 2F1, Appell F1 and Lauricella F_D^{(N)}: series, Euler-integral
//! oracles, the large-argument continuation and the Toscano reduction.

use crate::numerics::{gamma_ratio, line_integral, pochhammer, PrecisionPolicy};
use crate::{Error, Result, C64};

/// Disc radius inside which the Gauss series is trusted.
pub const GAUSS_DISC: f64 = 0.9;
/// Polydisc radius for the Lauricella series.
pub const FD_POLYDISC: f64 = 0.6;
/// Exclusion radius around resonant (integer) parameter combinations.
pub const RESONANCE_RADIUS: f64 = 0.02;
/// Ordering parameter of the sector where the leading asymptotics apply.
pub const SECTOR_EPS: f64 = 0.05;

fn nonpositive_int_dist(z: C64) -> f64 {
    let k = z.re.round().min(0.0);
    (z - k).norm()
}

fn integer_dist(z: C64) -> f64 {
    (z - z.re.round()).norm()
}

fn check_c(c: C64) -> Result<()> {
    if nonpositive_int_dist(c) < 1e-12 {
        return Err(Error::Domain(format!("c = {c} is a non-positive integer")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussParams {
    pub a: C64,
    pub b: C64,
    pub c: C64,
}

impl GaussParams {
    pub fn new(a: C64, b: C64, c: C64) -> Result<Self> {
        check_c(c)?;
        Ok(GaussParams { a, b, c })
    }

    pub fn swapped(&self) -> Self {
        GaussParams { a: self.b, b: self.a, c: self.c }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LauricellaParams {
    pub a: C64,
    pub b: Vec<C64>,
    pub c: C64,
}

impl LauricellaParams {
    pub fn new(a: C64, b: Vec<C64>, c: C64) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::Domain("Lauricella F_D needs N >= 1".into()));
        }
        check_c(c)?;
        Ok(LauricellaParams { a, b, c })
    }

    /// The `Phi^{(N)}(a, b, c)` case with all `b_j` equal.
    pub fn equal(a: C64, b: C64, c: C64, n: usize) -> Result<Self> {
        Self::new(a, vec![b; n], c)
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn equal_b(&self) -> bool {
        self.b.iter().all(|&x| x == self.b[0])
    }
}

/// A point together with the verdict of the sector test
/// (`|w_i| >= 1/eps` and `|w_i / w_{i+1}| < eps`).
#[derive(Debug, Clone, PartialEq)]
pub struct SectorPoint {
    pub w: Vec<C64>,
    pub sector_ok: bool,
}

impl SectorPoint {
    pub fn classify(w: &[C64]) -> Self {
        let big = w.iter().all(|z| z.norm() >= 1.0 / SECTOR_EPS);
        let ordered = w.windows(2).all(|p| (p[0] / p[1]).norm() < SECTOR_EPS);
        SectorPoint { w: w.to_vec(), sector_ok: big && ordered }
    }
}

// Plain hypergeometric series; the caller owns the convergence margin.
fn gauss_sum(p: &GaussParams, z: C64, policy: &PrecisionPolicy) -> Result<C64> {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0;
    for k in 0..policy.max_series_terms {
        let kf = k as f64;
        term *= (p.a + kf) * (p.b + kf) / ((p.c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term.norm() <= 0.5 * f64::EPSILON * sum.norm() {
            quiet += 1;
            if quiet >= 2 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence(format!("2F1 series at z = {z}")))
}

/// `2F1(a, b; c; z)` by its power series, `|z| <= 0.9`.
pub fn gauss_2f1_series(p: &GaussParams, z: C64, policy: &PrecisionPolicy) -> Result<C64> {
    if z.norm() > GAUSS_DISC {
        return Err(Error::Domain(format!("|z| = {} outside the series disc", z.norm())));
    }
    gauss_sum(p, z, policy)
}

fn gauss_conn_coeffs(p: &GaussParams) -> Result<(C64, C64)> {
    let (a, b, c) = (p.a, p.b, p.c);
    let ca = gamma_ratio(&[c, b - a], &[b, c - a])?;
    let cb = gamma_ratio(&[c, a - b], &[a, c - b])?;
    Ok((ca, cb))
}

/// `2F1(a, b; c; z)` for `|z| >= 1.1` through the `1/z` connection formula,
/// principal branches for `(-z)^{-a}` and `(-z)^{-b}`.
pub fn gauss_2f1_continued(p: &GaussParams, z: C64, policy: &PrecisionPolicy) -> Result<C64> {
    if z.norm() < 1.1 {
        return Err(Error::Domain(format!("|z| = {} too small for continuation", z.norm())));
    }
    if integer_dist(p.b - p.a) < RESONANCE_RADIUS {
        return Err(Error::Resonance(format!("b - a = {} is nearly an integer", p.b - p.a)));
    }
    let (a, b, c) = (p.a, p.b, p.c);
    let (ca, cb) = gauss_conn_coeffs(p)?;
    let mz = -z;
    let u = 1.0 / z;
    let fa = gauss_sum(&GaussParams { a, b: a - c + 1.0, c: a - b + 1.0 }, u, policy)?;
    let fb = gauss_sum(&GaussParams { a: b, b: b - c + 1.0, c: b - a + 1.0 }, u, policy)?;
    Ok(ca * mz.powc(-a) * fa + cb * mz.powc(-b) * fb)
}

/// The two leading terms of the continuation as `|z| -> infinity`.
pub fn gauss_2f1_leading(p: &GaussParams, z: C64) -> Result<C64> {
    let (ca, cb) = gauss_conn_coeffs(p)?;
    Ok(ca * (-z).powc(-p.a) + cb * (-z).powc(-p.b))
}

/// Euler integral for `2F1`; needs `Re c > Re b > 0` and `z` off `[1, inf)`.
pub fn gauss_2f1_euler(p: &GaussParams, z: C64, policy: &PrecisionPolicy) -> Result<C64> {
    // F_D^{(1)}(b; a; c; z) is 2F1(b, a; c; z) = 2F1(a, b; c; z)
    lauricella_fd_euler(&LauricellaParams::new(p.b, vec![p.a], p.c)?, &[z], policy)
}

// Total-degree reorganisation of the F_D series. With
//   prod_j (1 - w_j x)^{-b_j} = sum_m h_m x^m,
// F_D = sum_m (a)_m/(c)_m h_m and m h_m = sum_{r=1}^m s_r h_{m-r},
// s_r = sum_j b_j w_j^r.
fn fd_sum(a: C64, b: &[C64], c: C64, w: &[C64], policy: &PrecisionPolicy) -> Result<C64> {
    let mut pw: Vec<C64> = w.to_vec();
    let mut s: Vec<C64> = vec![C64::new(0.0, 0.0)];
    let mut h: Vec<C64> = vec![C64::new(1.0, 0.0)];
    let mut ratio = C64::new(1.0, 0.0);
    let mut sum = C64::new(1.0, 0.0);
    let mut quiet = 0;
    for m in 1..policy.max_series_terms {
        let sm: C64 = b.iter().zip(&pw).map(|(&bj, &p)| bj * p).sum();
        for (p, &wj) in pw.iter_mut().zip(w) {
            *p *= wj;
        }
        s.push(sm);
        let hm: C64 = (1..=m).map(|r| s[r] * h[m - r]).sum::<C64>() / m as f64;
        h.push(hm);
        ratio *= (a + (m - 1) as f64) / (c + (m - 1) as f64);
        let term = ratio * hm;
        sum += term;
        if ratio.norm() == 0.0 {
            return Ok(sum);
        }
        if term.norm() <= 0.5 * f64::EPSILON * sum.norm() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence("Lauricella series".into()))
}

/// `F_D^{(N)}(a; b; c; w)` by its series, `max |w_i| <= 0.6`.
pub fn lauricella_fd_series(p: &LauricellaParams, w: &[C64], policy: &PrecisionPolicy) -> Result<C64> {
    check_len(p, w)?;
    if w.iter().any(|z| z.norm() > FD_POLYDISC) {
        return Err(Error::Domain("Lauricella argument outside the series polydisc".into()));
    }
    fd_sum(p.a, &p.b, p.c, w, policy)
}

fn check_len(p: &LauricellaParams, w: &[C64]) -> Result<()> {
    if w.len() != p.n() {
        return Err(Error::Domain(format!("expected {} arguments, got {}", p.n(), w.len())));
    }
    Ok(())
}

/// One-dimensional Euler integral
/// `Gamma(c)/(Gamma(a)Gamma(c-a)) \int_0^1 t^{a-1}(1-t)^{c-a-1} prod (1-w_i t)^{-b_i} dt`.
///
/// Ground truth outside the polydisc. Needs `Re a > 0`, `Re(c-a) > 0`, and every
/// `w_i` off the cut `[1, inf)`.
pub fn lauricella_fd_euler(p: &LauricellaParams, w: &[C64], policy: &PrecisionPolicy) -> Result<C64> {
    check_len(p, w)?;
    let (a, c) = (p.a, p.c);
    if !(a.re > 0.0 && (c - a).re > 0.0) {
        return Err(Error::Domain("Euler integral needs Re a > 0 and Re(c-a) > 0".into()));
    }
    for z in w {
        if z.re >= 1.0 && z.im.abs() <= 1e-14 * z.norm().max(1.0) {
            return Err(Error::Domain(format!("w = {z} lies on the cut [1, inf)")));
        }
    }
    // split where some factor 1 - w_i t turns over
    let mut cuts = vec![0.0, 1.0];
    for z in w {
        let t = 1.0 / z.norm();
        if t < 0.999 {
            cuts.push(t);
            if t < 0.1 {
                cuts.push(10.0 * t);
            }
        }
    }
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup_by(|x, y| (*x - *y).abs() <= 1e-3 * y.abs().max(1e-300));
    let e0 = a.re - 1.0;
    let e1 = (c - a).re - 1.0;
    let mut total = C64::new(0.0, 0.0);
    for seg in cuts.windows(2) {
        let (lo, hi) = (seg[0], seg[1]);
        let len = hi - lo;
        let f = |n: &crate::numerics::Node<f64>| -> C64 {
            let ln_t = if lo == 0.0 { n.t.ln() + hi.ln() } else { (lo + n.t * len).ln() };
            let t = if lo == 0.0 { n.t * hi } else { lo + n.t * len };
            let ln_1mt = if hi == 1.0 { n.tc.ln() + (1.0 - lo).ln() } else { ((1.0 - hi) + n.tc * len).ln() };
            let mut e = (a - 1.0) * ln_t + (c - a - 1.0) * ln_1mt;
            for (&bi, &wi) in p.b.iter().zip(w) {
                e -= bi * (1.0 - wi * t).ln();
            }
            e.exp()
        };
        let exps = (if lo == 0.0 { e0 } else { 0.0 }, if hi == 1.0 { e1 } else { 0.0 });
        total += line_integral(f, (C64::new(lo, 0.0), C64::new(hi, 0.0)), exps, policy)?;
    }
    Ok(total * gamma_ratio(&[c], &[a, c - a])?)
}

/// Series inside the polydisc, Euler integral elsewhere.
pub fn lauricella_fd(p: &LauricellaParams, w: &[C64], policy: &PrecisionPolicy) -> Result<C64> {
    if w.iter().all(|z| z.norm() <= FD_POLYDISC) {
        lauricella_fd_series(p, w, policy)
    } else {
        lauricella_fd_euler(p, w, policy)
    }
}

fn resonance_guard(label: &str, z: C64) -> Result<()> {
    if nonpositive_int_dist(z) < RESONANCE_RADIUS {
        return Err(Error::Resonance(format!("{label} = {z} near a pole of Gamma")));
    }
    Ok(())
}

/// Leading terms of `F_D^{(N)}` in the sector where `w_N` dominates:
///
/// `sum_{j=0}^{N-1} Gamma[c, a-S1, S2-a / a, b_{N-j}, c-a]
///    prod_{i=1}^j (-w_{N-i+1})^{-b_{N-i+1}} (-w_{N-j})^{S1-a}
///  + prod_i (-w_i)^{-b_i} Gamma[c, a - sum b / a, c - sum b]`
///
/// with `S1 = b_{N-j+1} + ... + b_N` and `S2 = S1 + b_{N-j}`.
pub fn fd_leading_asymptotics(p: &LauricellaParams, w: &[C64]) -> Result<C64> {
    check_len(p, w)?;
    if !SectorPoint::classify(w).sector_ok {
        return Err(Error::Domain("point outside the asymptotic sector".into()));
    }
    fd_leading_terms(p.a, &p.b, p.c, w)
}

/// The same expansion in the relabeled sector where `w_1` dominates,
/// obtained by reversing the `(b_i, w_i)` pairs.
pub fn fd_leading_asymptotics_relabeled(p: &LauricellaParams, w: &[C64]) -> Result<C64> {
    check_len(p, w)?;
    let b: Vec<C64> = p.b.iter().rev().copied().collect();
    let wr: Vec<C64> = w.iter().rev().copied().collect();
    fd_leading_asymptotics(&LauricellaParams { a: p.a, b, c: p.c }, &wr)
}

fn fd_leading_terms(a: C64, b: &[C64], c: C64, w: &[C64]) -> Result<C64> {
    let n = b.len();
    // 1-based accessors keep the index gymnastics readable
    let bb = |i: usize| b[i - 1];
    let ww = |i: usize| w[i - 1];
    let mut sum = C64::new(0.0, 0.0);
    for j in 0..n {
        let s1: C64 = (n - j + 1..=n).map(bb).sum();
        let s2 = s1 + bb(n - j);
        resonance_guard("a - S1", a - s1)?;
        resonance_guard("S2 - a", s2 - a)?;
        let mut term = gamma_ratio(&[c, a - s1, s2 - a], &[a, bb(n - j), c - a])?;
        for i in 1..=j {
            term *= (-ww(n - i + 1)).powc(-bb(n - i + 1));
        }
        term *= (-ww(n - j)).powc(s1 - a);
        sum += term;
    }
    let sb: C64 = b.iter().sum();
    resonance_guard("a - sum b", a - sb)?;
    let mut last = gamma_ratio(&[c, a - sb], &[a, c - sb])?;
    for (&bi, &wi) in b.iter().zip(w) {
        last *= (-wi).powc(-bi);
    }
    Ok(sum + last)
}

/// Both sides of the Toscano reduction for the polynomial case `a = -d`:
///
/// `F_D(-d; b; c; w) = (-w_N)^d (b_N)_d/(c)_d
///   F_D(-d; b_1..b_{N-1}, 1-d-c; 1-d-b_N; w_1/w_N, .., w_{N-1}/w_N, 1/w_N)`.
pub fn toscano_sides(p: &LauricellaParams, w: &[C64], policy: &PrecisionPolicy) -> Result<(C64, C64)> {
    check_len(p, w)?;
    let d = -p.a.re;
    if (p.a + d.round()).norm() > 1e-14 || d.round() < 0.0 {
        return Err(Error::Domain("Toscano reduction needs a = -d with d a non-negative integer".into()));
    }
    let d = d.round() as usize;
    let n = p.n();
    let wn = w[n - 1];
    if wn.norm() == 0.0 {
        return Err(Error::Domain("w_N must be nonzero".into()));
    }
    let bn = p.b[n - 1];
    let lhs = fd_sum(p.a, &p.b, p.c, w, policy)?;
    let df = d as f64;
    let mut b2: Vec<C64> = p.b[..n - 1].to_vec();
    b2.push(1.0 - df - p.c);
    let c2 = 1.0 - df - bn;
    check_c(c2)?;
    let mut w2: Vec<C64> = w[..n - 1].iter().map(|&x| x / wn).collect();
    w2.push(1.0 / wn);
    let pref = (-wn).powu(d as u32) * pochhammer(bn, d) / pochhammer(p.c, d);
    let rhs = pref * fd_sum(p.a, &b2, c2, &w2, policy)?;
    Ok((lhs, rhs))
}

/// Left side of the Toscano identity after checking it against the right side.
pub fn toscano_reduce(p: &LauricellaParams, w: &[C64], policy: &PrecisionPolicy) -> Result<C64> {
    let (lhs, rhs) = toscano_sides(p, w, policy)?;
    let err = (lhs - rhs).norm() / lhs.norm().max(1.0);
    if err > 1e-10 {
        return Err(Error::Assertion(format!("Toscano mismatch {err:e}")));
    }
    Ok(lhs)
}

/// Appell `F1(a; b1, b2; c; x, y)`, series or Euler integral by domain.
pub fn appell_f1(a: C64, b1: C64, b2: C64, c: C64, x: C64, y: C64, policy: &PrecisionPolicy) -> Result<C64> {
    lauricella_fd(&LauricellaParams::new(a, vec![b1, b2], c)?, &[x, y], policy)
}

/// Residuals of the rank three Appell system, maximised over the three
/// period-derived solutions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AppellResidual {
    /// `(x - y) f_xy - b (f_x - f_y)`
    pub eq1: f64,
    /// the F1 second-order equation in `x` with `c = 1 + a - b`
    pub eq2: f64,
    /// the second equation as printed (theta_1^2, shifted coefficients); diagnostic only
    pub eq2_as_printed: f64,
}

impl AppellResidual {
    pub fn max(&self) -> f64 {
        self.eq1.max(self.eq2)
    }
}

/// `Pi_i / C_2^{1/z}` for `n = 2`, as functions of `(kappa_1, kappa_2)`:
/// `G F1(x, y)`, `G x^{-a} F1(1/x, y/x)` and `G y^{-a} F1(1/y, x/y)` with
/// `F1 = F1(a; b, b; 1+a-b)` and `G = Gamma(a)Gamma(1-b)/Gamma(1+a-b)`.
pub fn appell_period_solution(which: usize, a: C64, b: C64, x: C64, y: C64, policy: &PrecisionPolicy) -> Result<C64> {
    let c = 1.0 + a - b;
    let g = gamma_ratio(&[a, 1.0 - b], &[c])?;
    let f1 = |u: C64, v: C64| appell_f1(a, b, b, c, u, v, policy);
    Ok(g * match which {
        0 => x.powc(-a) * f1(1.0 / x, y / x)?,
        1 => y.powc(-a) * f1(1.0 / y, x / y)?,
        2 => f1(x, y)?,
        _ => return Err(Error::Domain("Appell solution index is 0, 1 or 2".into())),
    })
}

/// Residuals of an arbitrary trial function under fourth-order central differences.
pub fn appell_residual_of<F>(f: F, a: C64, b: C64, point: (C64, C64), h: f64) -> Result<AppellResidual>
where
    F: Fn(C64, C64) -> Result<C64>,
{
    if !(1e-3..=1e-2).contains(&h) {
        return Err(Error::Domain(format!("finite-difference step {h} outside [1e-3, 1e-2]")));
    }
    let (x, y) = point;
    let mut grid = [[C64::new(0.0, 0.0); 5]; 5];
    for (i, row) in grid.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let (di, dj) = (i as f64 - 2.0, j as f64 - 2.0);
            *v = f(x + h * di, y + h * dj)?;
        }
    }
    let g = |di: i32, dj: i32| grid[(di + 2) as usize][(dj + 2) as usize];
    let d1 = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
    let d2 = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];
    let f0 = g(0, 0);
    let (mut fx, mut fy, mut fxx, mut fxy) = (C64::default(), C64::default(), C64::default(), C64::default());
    for k in 0..5 {
        let s = k as i32 - 2;
        fx += d1[k] * g(s, 0);
        fy += d1[k] * g(0, s);
        fxx += d2[k] * g(s, 0);
        for l in 0..5 {
            let t = l as i32 - 2;
            if d1[k] != 0.0 && d1[l] != 0.0 {
                fxy += d1[k] * d1[l] * g(s, t);
            }
        }
    }
    fx /= h;
    fy /= h;
    fxx /= h * h;
    fxy /= h * h;
    let c = 1.0 + a - b;
    let eq1 = (x - y) * fxy - b * (fx - fy);
    let eq2 = x * (1.0 - x) * fxx + y * (1.0 - x) * fxy + (c - (a + b + 1.0) * x) * fx - b * y * fy - a * b * f0;
    let th2 = x * x * fxx + x * fx;
    let eq2p = x * (1.0 - x) * th2 + y * (1.0 - x) * fxy + (a + 1.0 - 2.0 * b) * fx
        - (a + 1.0 + 2.0 * b) * x * fx
        - b * y * fy
        - a * b * f0;
    Ok(AppellResidual { eq1: eq1.norm(), eq2: eq2.norm(), eq2_as_printed: eq2p.norm() })
}

/// Appell-system residuals of one period-derived solution at `kappa`.
pub fn appell_solution_residual(
    which: usize,
    a: C64,
    b: C64,
    kappa: (C64, C64),
    h: f64,
    policy: &PrecisionPolicy,
) -> Result<AppellResidual> {
    appell_residual_of(|x, y| appell_period_solution(which, a, b, x, y, policy), a, b, kappa, h)
}

/// Appell-system residuals of the three period-derived solutions at `kappa`.
///
/// Solutions 0 and 1 continue `F1` through `1/kappa`, so `kappa` must keep
/// `1/kappa_1`, `1/kappa_2` and the ratios off the cut `[1, inf)`.
pub fn appell_system_residual(
    a: C64,
    b: C64,
    kappa: (C64, C64),
    h: f64,
    policy: &PrecisionPolicy,
) -> Result<AppellResidual> {
    let mut worst = AppellResidual { eq1: 0.0, eq2: 0.0, eq2_as_printed: 0.0 };
    for which in 0..3 {
        let r = appell_solution_residual(which, a, b, kappa, h, policy)?;
        worst.eq1 = worst.eq1.max(r.eq1);
        worst.eq2 = worst.eq2.max(r.eq2);
        worst.eq2_as_printed = worst.eq2_as_printed.max(r.eq2_as_printed);
    }
    Ok(worst)
}

//! Seeded verification suites.
//!
//! Each suite turns identities into [`CaseRecord`]s with a measured error and
//! a tolerance. A case that errors is recorded as failed with the message in
//! `note`; it never aborts the run.

use crate::an_geometry::{
    correlator_y, pairing_x_inverse, pairing_x_matrix, triple_classical, triple_localization, u0_pairing_residual,
    wdvv_residual_x, wdvv_residual_y, SmallQCPoint, TorusWeights,
};
use crate::hurwitz_mirror::{
    kappa_from_t, kappa_from_x, mirror_check, residue_at, residue_breakdown, residue_correlator, Pole, PoleLayout,
    VectorField,
};
use crate::hypergeom::{
    appell_solution_residual, fd_leading_asymptotics, fd_leading_asymptotics_relabeled, gauss_2f1_continued,
    gauss_2f1_euler, lauricella_fd_euler, lauricella_fd_series, toscano_sides, GaussParams, LauricellaParams,
};
use crate::monodromy::{
    expected_det, invariant_compare, numeric_monodromy_ab, numeric_monodromy_n1, numeric_monodromy_path,
    paper_matrices_ab, paper_matrices_n1, standard_loops, tr_det, Center,
};
use crate::numerics::{contour_residue, gamma, gamma_ratio, line_integral, log_gamma, reflection_sin};
use crate::open_crc::{
    lemma_residual_all, o_direct, o_via_iritani, oz_effective_report, oz_ineffective_report, theta_identity_residual,
    BoundaryCondition, Leg, Side as DiskSide,
};
use crate::periods::{
    factorization_report, inverse_residual, large_z_pairing_residual, matrix_a, orbifold_point_values,
    symplectic_residual, twisted_period_euler, twisted_period_lauricella, u_large_z_residual, PeriodParams, ScalarForm,
};
use crate::sampling::Sampler;
use crate::{max_abs, CMat, Error, PrecisionPolicy, Result, C64};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Gamma,
    Hypergeom,
    Cohomology,
    Mirror,
    Periods,
    Ocrc,
    Monodromy,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Gamma,
        Suite::Hypergeom,
        Suite::Cohomology,
        Suite::Mirror,
        Suite::Periods,
        Suite::Ocrc,
        Suite::Monodromy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gamma => "gamma",
            Suite::Hypergeom => "hypergeom",
            Suite::Cohomology => "cohomology",
            Suite::Mirror => "mirror",
            Suite::Periods => "periods",
            Suite::Ocrc => "ocrc",
            Suite::Monodromy => "monodromy",
        }
    }

    fn stream(self) -> u64 {
        (Suite::ALL.iter().position(|&s| s == self).unwrap() as u64 + 1) << 32
    }

    /// Parses a comma separated list; `all` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim) {
            if part == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A parameter value in a report. Complex numbers serialize as `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Int(i64),
    Real(f64),
    Complex([f64; 2]),
    Text(String),
    List(Vec<Param>),
}

impl From<C64> for Param {
    fn from(z: C64) -> Self {
        Param::Complex([z.re, z.im])
    }
}
impl From<f64> for Param {
    fn from(x: f64) -> Self {
        Param::Real(x)
    }
}
impl From<usize> for Param {
    fn from(x: usize) -> Self {
        Param::Int(x as i64)
    }
}
impl From<&str> for Param {
    fn from(x: &str) -> Self {
        Param::Text(x.to_string())
    }
}
impl From<Vec<C64>> for Param {
    fn from(v: Vec<C64>) -> Self {
        Param::List(v.into_iter().map(Param::from).collect())
    }
}

pub type Params = BTreeMap<String, Param>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub suite: Suite,
    pub case_id: String,
    pub n: Option<usize>,
    pub params: Params,
    /// `None` when the case errored.
    pub max_abs_err: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    /// seconds
    pub wall_time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub suites: Vec<Suite>,
    pub n_min: usize,
    pub n_max: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol_overrides: BTreeMap<Suite, f64>,
    pub policy: PrecisionPolicy,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            suites: Suite::ALL.to_vec(),
            n_min: 1,
            n_max: 4,
            samples: 20,
            seed: 0,
            tol_overrides: BTreeMap::new(),
            policy: PrecisionPolicy::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(Error::Config(format!("bad n range {}..{}", self.n_min, self.n_max)));
        }
        if self.samples == 0 {
            return Err(Error::Config("samples must be positive".into()));
        }
        if self.suites.is_empty() {
            return Err(Error::Config("no suite selected".into()));
        }
        for (s, t) in &self.tol_overrides {
            if !(*t > 0.0) {
                return Err(Error::Config(format!("tolerance for {s} must be positive")));
            }
        }
        self.policy.validate()
    }

    fn ns(&self) -> impl Iterator<Item = usize> {
        self.n_min..=self.n_max
    }
}

/// Runs the configured suites (concurrently) and assembles the report in suite order.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let per_suite: Vec<Vec<CaseRecord>> = std::thread::scope(|scope| {
        let handles: Vec<_> = cfg.suites.iter().map(|&s| scope.spawn(move || run_suite(s, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let cases: Vec<CaseRecord> = per_suite.into_iter().flatten().collect();
    let passed = cases.iter().filter(|c| c.pass).count();
    Ok(Report { summary: Summary { total: cases.len(), passed, wall_time: start.elapsed().as_secs_f64() }, cases })
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Vec<CaseRecord> {
    let mut b = Builder { suite, cfg, out: Vec::new() };
    match suite {
        Suite::Gamma => gamma_suite(&mut b),
        Suite::Hypergeom => hypergeom_suite(&mut b),
        Suite::Cohomology => cohomology_suite(&mut b),
        Suite::Mirror => mirror_suite(&mut b),
        Suite::Periods => periods_suite(&mut b),
        Suite::Ocrc => ocrc_suite(&mut b),
        Suite::Monodromy => monodromy_suite(&mut b),
    }
    b.out
}

/// A measured error with an optional remark for the report.
struct Measured {
    err: f64,
    note: Option<String>,
}

impl From<f64> for Measured {
    fn from(err: f64) -> Self {
        Measured { err, note: None }
    }
}

fn noted(err: f64, note: String) -> Measured {
    Measured { err, note: Some(note) }
}

struct Builder<'a> {
    suite: Suite,
    cfg: &'a RunConfig,
    out: Vec<CaseRecord>,
}

impl Builder<'_> {
    fn sampler(&self, tag: u64, n: usize) -> Sampler {
        Sampler::new(self.cfg.seed, self.suite.stream() | (tag << 8) | n as u64)
    }

    fn policy(&self) -> &PrecisionPolicy {
        &self.cfg.policy
    }

    fn samples(&self) -> usize {
        self.cfg.samples
    }

    fn push<M: Into<Measured>>(&mut self, id: String, n: Option<usize>, params: Params, tol: f64, r: Result<M>) {
        let tolerance = self.cfg.tol_overrides.get(&self.suite).copied().unwrap_or(tol);
        let (max_abs_err, note) = match r.map(Into::into) {
            Ok(m) if m.err.is_finite() => (Some(m.err), m.note),
            Ok(m) => (None, Some(m.note.unwrap_or_else(|| "non-finite error".into()))),
            Err(e) => (None, Some(e.to_string())),
        };
        let pass = max_abs_err.is_some_and(|e| e <= tolerance);
        self.out.push(CaseRecord { suite: self.suite, case_id: id, n, params, max_abs_err, tolerance, pass, note });
    }
}

fn params<const K: usize>(items: [(&str, Param); K]) -> Params {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn weight_params(w: &TorusWeights) -> Params {
    params([("alpha1", w.alpha1.into()), ("alpha2", w.alpha2.into())])
}

fn period_param_map(p: &PeriodParams) -> Params {
    let mut m = weight_params(&p.w);
    m.insert("z".into(), p.z.into());
    m
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

// ---------------------------------------------------------------- gamma

fn gamma_suite(b: &mut Builder) {
    let pol = *b.policy();
    let mut s = b.sampler(0, 0);
    const PER_CASE: usize = 10;
    for k in 0..b.samples() {
        let zs: Vec<C64> = (0..PER_CASE)
            .map(|_| {
                s.rejecting(|s| {
                    let z = s.complex_annulus(0.3, 5.0);
                    if crate::periods::nonpositive_int_dist(z) < 0.05 || (z - z.re.round()).norm() < 0.05 {
                        return Err(Error::pole(z.re, z.im));
                    }
                    Ok(z)
                })
                .expect("annulus sampling never exhausts")
            })
            .collect();
        let rec = zs.iter().try_fold(0.0f64, |acc, &z| {
            let g1 = gamma(z + 1.0)?;
            Ok::<_, Error>(acc.max((g1 - z * gamma(z)?).norm() / g1.norm()))
        });
        let p = params([("z", zs.clone().into())]);
        b.push(format!("recurrence/{k}"), None, p.clone(), 1e-9, rec);
        let refl = zs.iter().try_fold(0.0f64, |acc, &z| {
            let v = gamma(z)? * gamma(1.0 - z)? * (PI * z).sin() / PI;
            Ok::<_, Error>(acc.max((v - 1.0).norm()))
        });
        b.push(format!("reflection/{k}"), None, p, 1e-9, refl);
    }

    let special = (|| -> Result<f64> {
        let mut e = (gamma(c(1.0, 0.0))? - 1.0).norm();
        e = e.max(log_gamma(c(1.0, 0.0))?.norm());
        e = e.max((log_gamma(c(0.5, 0.0))? - PI.sqrt().ln()).norm());
        e = e.max((reflection_sin(c(0.5, 0.0))? - PI).norm());
        let x = c(0.3, 0.2);
        e = e.max(rel(reflection_sin(x)?, gamma_ratio(&[x, 1.0 - x], &[])?));
        e = e.max(rel(gamma_ratio(&[x + 1.0], &[x])?, x));
        e = e.max(rel(gamma_ratio(&[x], &[x - 3.0])?, (x - 3.0) * (x - 2.0) * (x - 1.0)));
        Ok(e)
    })();
    b.push("special_values".into(), None, Params::new(), 1e-10, special);

    let mut s = b.sampler(1, 0);
    for k in 0..b.samples() {
        // rational integrand, other poles at distance >= 1
        let p0 = s.complex_box((-1.0, 1.0), (-1.0, 1.0));
        let others: Vec<C64> = (0..3).map(|_| p0 + s.complex_annulus(1.0, 2.0)).collect();
        let num = s.complex_box((-1.0, 1.0), (-1.0, 1.0));
        let f = |q: C64| (q - num) / ((q - p0) * others.iter().map(|o| q - o).product::<C64>());
        let r = contour_residue(f, p0, 0.4, &pol).and_then(|r1| Ok((r1 - contour_residue(f, p0, 0.2, &pol)?).norm()));
        b.push(format!("contour_radius_halving/{k}"), None, params([("pole", p0.into())]), 1e-10, r);

        let coeffs: Vec<C64> = (0..4).map(|_| s.complex_box((-2.0, 2.0), (-2.0, 2.0))).collect();
        let (a, e) = (s.complex_box((-1.0, 1.0), (-1.0, 1.0)), s.complex_box((-1.0, 1.0), (-1.0, 1.0)));
        let poly = |z: C64| coeffs.iter().rev().fold(c(0.0, 0.0), |acc, &co| acc * z + co);
        let anti = |z: C64| {
            coeffs.iter().enumerate().map(|(j, &co)| co * z.powu(j as u32 + 1) / (j as f64 + 1.0)).sum::<C64>()
        };
        let exact = anti(e) - anti(a);
        let r = line_integral(|nd| poly(nd.z), (a, e), (0.0, 0.0), &pol).map(|v| rel(v, exact));
        b.push(format!("line_integral_poly/{k}"), None, params([("coeffs", coeffs.clone().into())]), 1e-12, r);
    }
}

// ---------------------------------------------------------------- hypergeom

fn random_fd(s: &mut Sampler, nn: usize) -> LauricellaParams {
    let a = s.complex_box((0.2, 1.2), (-0.3, 0.3));
    let bs: Vec<C64> = (0..nn).map(|_| s.complex_box((-0.8, 0.8), (-0.3, 0.3))).collect();
    let cc = a + s.complex_box((0.5, 1.5), (-0.3, 0.3));
    LauricellaParams { a, b: bs, c: cc }
}

fn fd_params(p: &LauricellaParams, w: &[C64]) -> Params {
    params([("a", p.a.into()), ("b", p.b.clone().into()), ("c", p.c.into()), ("w", w.to_vec().into())])
}

fn hypergeom_suite(b: &mut Builder) {
    let pol = *b.policy();
    let mut s = b.sampler(0, 0);
    for k in 0..2 * b.samples() + 10 {
        let nn = 1 + k % 4;
        let p = random_fd(&mut s, nn);
        let w: Vec<C64> = (0..nn).map(|_| s.complex_annulus(0.0, 0.4)).collect();
        let r = lauricella_fd_series(&p, &w, &pol)
            .and_then(|sv| Ok((sv - lauricella_fd_euler(&p, &w, &pol)?).norm() / sv.norm()));
        b.push(format!("series_euler/{k}"), None, fd_params(&p, &w), 1e-9, r);
    }

    let mut s = b.sampler(1, 0);
    for k in 0..b.samples() {
        let nn = 2 + k % 3;
        let p = random_fd(&mut s, nn);
        let w: Vec<C64> = (0..nn).map(|_| s.complex_annulus(0.0, 0.5)).collect();
        let rev = LauricellaParams { b: p.b.iter().rev().copied().collect(), ..p.clone() };
        let wr: Vec<C64> = w.iter().rev().copied().collect();
        let r =
            lauricella_fd_series(&p, &w, &pol).and_then(|v| Ok((v - lauricella_fd_series(&rev, &wr, &pol)?).norm()));
        b.push(format!("fd_symmetry/{k}"), None, fd_params(&p, &w), 1e-12, r);
    }

    let mut s = b.sampler(2, 0);
    for k in 0..b.samples() {
        let drawn = s.rejecting(|s| {
            let a = s.complex_box((-0.8, 1.5), (-0.4, 0.4));
            let bb = s.complex_box((0.2, 1.2), (-0.4, 0.4));
            let cc = bb + s.complex_box((0.4, 1.6), (-0.4, 0.4));
            let g = GaussParams::new(a, bb, cc)?;
            let z = C64::from_polar(1.5, s.uniform(0.2, PI - 0.2));
            let cont = gauss_2f1_continued(&g, z, &pol)?;
            Ok((g, z, cont))
        });
        let (pm, r) = match drawn {
            Ok((g, z, cont)) => (
                params([("a", g.a.into()), ("b", g.b.into()), ("c", g.c.into()), ("z", z.into())]),
                gauss_2f1_euler(&g, z, &pol).map(|e| (cont - e).norm() / e.norm()),
            ),
            Err(e) => (Params::new(), Err(e)),
        };
        b.push(format!("gauss_connection/{k}"), None, pm, 1e-8, r);
    }

    let mut s = b.sampler(3, 0);
    for d in 0..=5usize {
        for nn in 1..=4usize {
            let mut p = random_fd(&mut s, nn);
            p.a = c(-(d as f64), 0.0);
            p.c = s.complex_box((0.6, 2.0), (-0.5, 0.5));
            let w: Vec<C64> = (0..nn).map(|_| s.complex_annulus(0.3, 3.0)).collect();
            let r = toscano_sides(&p, &w, &pol).map(|(l, r)| (l - r).norm() / l.norm().max(1.0));
            b.push(format!("toscano/d{d}/N{nn}"), None, fd_params(&p, &w), 1e-10, r);
        }
    }

    let mut s = b.sampler(4, 0);
    let scale: f64 = 1e-3;
    for nn in 1..=4usize {
        for k in 0..(b.samples() / 4).max(1) {
            let drawn = s.rejecting(|s| {
                let p = random_fd(s, nn);
                let t: Vec<f64> = (0..nn).map(|_| s.uniform(1.0, 2.0)).collect();
                let w: Vec<C64> = (0..nn).map(|i| c(-t[i] / scale.powi(i as i32 + 1), 0.0)).collect();
                let wr: Vec<C64> = (0..nn).map(|i| c(-t[i] / scale.powi((nn - i) as i32), 0.0)).collect();
                let lead = fd_leading_asymptotics(&p, &w)?;
                let lead_r = fd_leading_asymptotics_relabeled(&p, &wr)?;
                Ok((p, w, wr, lead, lead_r))
            });
            match drawn {
                Ok((p, w, wr, lead, lead_r)) => {
                    let r = lauricella_fd_euler(&p, &w, &pol).map(|e| (e / lead - 1.0).norm());
                    b.push(format!("fd_asymptotics/N{nn}/{k}"), None, fd_params(&p, &w), 1e-2, r);
                    let r = lauricella_fd_euler(&p, &wr, &pol).map(|e| (e / lead_r - 1.0).norm());
                    b.push(format!("fd_asymptotics_relabeled/N{nn}/{k}"), None, fd_params(&p, &wr), 1e-2, r);
                }
                Err(e) => b.push(format!("fd_asymptotics/N{nn}/{k}"), None, Params::new(), 1e-2, Err::<f64, _>(e)),
            }
        }
    }

    // solution 2 is the series at a real point; 0 and 1 continue through
    // 1/kappa and are probed at complex points off their cuts
    let points = [(c(2.5, 0.4), c(3.7, -0.6)), (c(3.1, 0.2), c(1.9, -0.3)), (c(0.2, 0.0), c(0.3, 0.0))];
    let mut s = b.sampler(5, 0);
    for k in 0..(b.samples() / 4).max(1) {
        let drawn = s.rejecting(|s| {
            let p = s.period_params(2)?;
            if p.a().re <= 0.0 || p.b().re >= 1.0 {
                return Err(Error::Domain("Euler continuation needs Re a > 0 and Re b < 1".into()));
            }
            Ok(p)
        });
        for (which, &kappa) in points.iter().enumerate() {
            let id = format!("appell_system/s{which}/{k}");
            let p = match &drawn {
                Ok(p) => p,
                Err(e) => {
                    b.push(id, None, Params::new(), 1e-5, Err::<f64, _>(e.clone()));
                    continue;
                }
            };
            let (a, bb) = (p.a(), p.b());
            let pm = params([
                ("a", a.into()),
                ("b", bb.into()),
                ("kappa", vec![kappa.0, kappa.1].into()),
                ("h", 3e-3.into()),
            ]);
            let r = appell_solution_residual(which, a, bb, kappa, 3e-3, &pol)
                .map(|r| noted(r.max(), format!("second equation as printed: residual {:.3e}", r.eq2_as_printed)));
            b.push(id, None, pm, 1e-5, r);
        }
    }
}

// ---------------------------------------------------------------- cohomology

fn cohomology_suite(b: &mut Builder) {
    for n in b.cfg.ns() {
        let mut s = b.sampler(0, n);
        let mut loc = 0.0f64;
        let mut u0 = 0.0f64;
        let mut inv = 0.0f64;
        let mut sym = 0.0f64;
        let mut err: Option<Error> = None;
        for k in 0..b.samples() {
            let w = match s.weights(n) {
                Ok(w) => w,
                Err(e) => {
                    err = Some(e);
                    continue;
                }
            };
            let y = s.y_point(&w);
            let x = s.x_point(n);
            let mut py = weight_params(&w);
            if let Ok(y) = &y {
                py.insert("t".into(), y.t.clone().into());
            }
            let r = y.as_ref().map_err(Clone::clone).and_then(|y| wdvv_residual_y(y, &w));
            b.push(format!("wdvv_y/n{n}/{k}"), Some(n), py, 1e-8, r);
            let mut px = weight_params(&w);
            px.insert("x".into(), x.t.clone().into());
            b.push(format!("wdvv_x/n{n}/{k}"), Some(n), px, 1e-8, wdvv_residual_x(&x, &w));

            let aggregate = (|| -> Result<()> {
                for i in 1..=n + 1 {
                    for j in i..=n + 1 {
                        for l in j..=n + 1 {
                            loc = loc.max(rel(triple_localization(i, j, l, &w)?, triple_classical(i, j, l, &w)?));
                            if let Ok(y) = &y {
                                let v = correlator_y(i, j, l, y, &w)?;
                                for (p, q, r) in [(j, i, l), (l, j, i), (i, l, j), (j, l, i), (l, i, j)] {
                                    sym = sym.max((correlator_y(p, q, r, y, &w)? - v).norm());
                                }
                            }
                        }
                    }
                }
                u0 = u0.max(u0_pairing_residual(&w));
                let id = pairing_x_inverse(&w) * pairing_x_matrix(&w) - CMat::identity(n + 1, n + 1);
                inv = inv.max(max_abs(&id));
                Ok(())
            })();
            if let Err(e) = aggregate {
                err = Some(e);
            }
        }
        let agg = params([("samples", b.samples().into())]);
        let wrap = |v: f64| match &err {
            Some(e) => Err(e.clone()),
            None => Ok(v),
        };
        b.push(format!("localization/n{n}"), Some(n), agg.clone(), 1e-10, wrap(loc));
        b.push(format!("u0_pairing/n{n}"), Some(n), agg.clone(), 1e-10, wrap(u0));
        b.push(format!("pairing_inverse/n{n}"), Some(n), agg.clone(), 1e-10, wrap(inv));
        b.push(format!("correlator_symmetry/n{n}"), Some(n), agg, 1e-12, wrap(sym));
    }
}

// ---------------------------------------------------------------- mirror

fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut v = Vec::new();
    for i in 1..=n + 1 {
        for j in i..=n + 1 {
            for k in j..=n + 1 {
                v.push((i, j, k));
            }
        }
    }
    v
}

fn mirror_all(point: &SmallQCPoint, w: &TorusWeights, pol: &PrecisionPolicy) -> Result<f64> {
    triples(w.n).into_iter().try_fold(0.0f64, |acc, t| Ok(acc.max(mirror_check(point, t, w, pol)?)))
}

fn mirror_suite(b: &mut Builder) {
    let pol = *b.policy();
    for n in b.cfg.ns() {
        let mut s = b.sampler(0, n);
        let mut q1 = 0.0f64;
        let mut sym = 0.0f64;
        let mut insp = 0.0f64;
        let mut err: Option<Error> = None;
        for k in 0..b.samples() {
            let drawn = s.weights(n).and_then(|w| Ok((w, s.y_point(&w)?)));
            let (w, y) = match drawn {
                Ok(v) => v,
                Err(e) => {
                    b.push(format!("y/n{n}/{k}"), Some(n), Params::new(), 1e-7, Err::<f64, _>(e.clone()));
                    err = Some(e);
                    continue;
                }
            };
            let mut py = weight_params(&w);
            py.insert("t".into(), y.t.clone().into());
            b.push(format!("y/n{n}/{k}"), Some(n), py, 1e-7, mirror_all(&y, &w, &pol));
            let x = s.x_point(n);
            let mut px = weight_params(&w);
            px.insert("x".into(), x.t.clone().into());
            b.push(format!("x/n{n}/{k}"), Some(n), px, 1e-7, mirror_all(&x, &w, &pol));

            // invariants on the first few points
            if k < 3 {
                let r = (|| -> Result<()> {
                    let kp = kappa_from_t(&y, c(0.0, 0.0), &w)?;
                    let kx = kappa_from_x(&x, crate::hurwitz_mirror::default_delta_x(&w), &w)?;
                    let layout = PoleLayout::new(&kp, &w)?;
                    for (i, j, l) in triples(n) {
                        for point in [&kp, &kx] {
                            let f = [VectorField::t(i), VectorField::t(j), VectorField::t(l)];
                            q1 = q1.max(residue_breakdown(point, [&f[0], &f[1], &f[2]], &w, &pol)?.q1());
                            let a = residue_correlator(point, [&f[0], &f[1], &f[2]], &w, &pol)?;
                            let p = residue_correlator(point, [&f[2], &f[0], &f[1]], &w, &pol)?;
                            sym = sym.max((a - p).norm());
                        }
                        if n <= 3 {
                            let f = [VectorField::kappa(i - 1), VectorField::kappa(j - 1), VectorField::kappa(l - 1)];
                            for pole in 1..=n + 1 {
                                let hits = [i - 1, j - 1, l - 1].iter().filter(|&&m| m == pole).count();
                                if hits < 2 {
                                    let r = residue_at(
                                        &kp,
                                        [&f[0], &f[1], &f[2]],
                                        Pole::InvKappa(pole),
                                        &layout,
                                        &w,
                                        &pol,
                                    )?;
                                    insp = insp.max(r.norm());
                                }
                            }
                        }
                    }
                    Ok(())
                })();
                if let Err(e) = r {
                    err = Some(e);
                }
            }
        }
        let agg = params([("points", b.samples().min(3).into())]);
        let wrap = |v: f64| match &err {
            Some(e) => Err(e.clone()),
            None => Ok(v),
        };
        b.push(format!("q1_residue/n{n}"), Some(n), agg.clone(), 1e-10, wrap(q1));
        b.push(format!("field_symmetry/n{n}"), Some(n), agg.clone(), 1e-12, wrap(sym));
        if n <= 3 {
            b.push(format!("inspection/n{n}"), Some(n), agg, 1e-10, wrap(insp));
        }
    }
}

// ---------------------------------------------------------------- periods

fn periods_suite(b: &mut Builder) {
    let pol = *b.policy();
    for n in b.cfg.ns() {
        let mut s = b.sampler(0, n);
        for k in 0..b.samples() {
            let p = match s.period_params(n) {
                Ok(p) => p,
                Err(e) => {
                    b.push(format!("factorization/n{n}/{k}"), Some(n), Params::new(), 1e-8, Err::<f64, _>(e));
                    continue;
                }
            };
            let pm = period_param_map(&p);
            let f = factorization_report(&p).map(|f| {
                let form = match f.form {
                    ScalarForm::OmegaPlusA => "omega^(+a)",
                    ScalarForm::OmegaMinusA => "omega^(-a)",
                };
                let fb = if f.product.numeric_fallback { ", numeric inverse fallback" } else { "" };
                noted(f.rel_err.max(f.scalar_err), format!("scalar {form}{fb}"))
            });
            b.push(format!("factorization/n{n}/{k}"), Some(n), pm.clone(), 1e-8, f);
            b.push(format!("symplectic/n{n}/{k}"), Some(n), pm.clone(), 1e-8, symplectic_residual(&p));
            let inv = inverse_residual(&p).and_then(|r| {
                let fb = matrix_a(&p)?.numeric_fallback;
                Ok(if fb {
                    noted(r, "printed A failed the inverse test; numeric inverse used".into())
                } else {
                    r.into()
                })
            });
            b.push(format!("inverse/n{n}/{k}"), Some(n), pm, 1e-9, inv);

            let zl = C64::from_polar(1e6, s.uniform(-PI, PI));
            let mut pl = weight_params(&p.w);
            pl.insert("z".into(), zl.into());
            b.push(format!("large_z_pairing/n{n}/{k}"), Some(n), pl.clone(), 1e-5, large_z_pairing_residual(&p.w, zl));
            let lim = u_large_z_residual(&p.w, zl).map(|r| noted(r, format!("r |z| = {:.3}", r * zl.norm())));
            b.push(format!("large_z_limit/n{n}/{k}"), Some(n), pl.clone(), 1e-5, lim);
            // the residual carries a first-order 1/z term, so a tenfold |z| divides it by ten
            let rate = u_large_z_residual(&p.w, zl).and_then(|r6| {
                let r7 = u_large_z_residual(&p.w, zl * 10.0)?;
                let q = r6 / r7;
                Ok(noted((q - 10.0).abs() / 10.0, format!("r(|z|) / r(10|z|) = {q:.6}")))
            });
            b.push(format!("large_z_rate/n{n}/{k}"), Some(n), pl, 1e-2, rate);
        }

        // Euler integral against the Lauricella form, n <= 3
        if n <= 3 {
            let mut s = b.sampler(1, n);
            for k in 0..b.samples() {
                let target = 1 + k % (n + 1);
                let drawn = s.rejecting(|s| {
                    let p = s.period_params(n)?;
                    if p.a().re <= 0.0 || p.b().re >= 1.0 {
                        return Err(Error::Domain("Euler integral needs Re a > 0 and Re b < 1".into()));
                    }
                    Ok((p, s.kappa_for_target(n, target)?))
                });
                let (pm, r) = match drawn {
                    Ok((p, kp)) => {
                        let mut pm = period_param_map(&p);
                        pm.insert("target".into(), target.into());
                        pm.insert("kappa".into(), (1..=n).map(|j| kp.kappa(j)).collect::<Vec<_>>().into());
                        let r = twisted_period_euler(target, &kp, &p, &pol).and_then(|e| {
                            let l = twisted_period_lauricella(target, &kp, &p, &pol)?;
                            Ok((e - l).norm() / e.norm().max(1.0))
                        });
                        (pm, r)
                    }
                    Err(e) => (Params::new(), Err(e)),
                };
                b.push(format!("euler_lauricella/n{n}/{k}"), Some(n), pm, 1e-9, r);
            }
        }

        // closed-form values at the orbifold point against the Euler oracle
        let mut s = b.sampler(2, n);
        for k in 0..(b.samples() / 4).max(1) {
            let drawn = s.rejecting(|s| {
                let p = s.period_params(n)?;
                if p.a().re <= 0.0 || p.b().re >= 1.0 {
                    return Err(Error::Domain("Euler integral needs Re a > 0 and Re b < 1".into()));
                }
                Ok(p)
            });
            let (pm, r) = match drawn {
                Ok(p) => (period_param_map(&p), orbifold_check(&p, &pol)),
                Err(e) => (Params::new(), Err(e)),
            };
            b.push(format!("orbifold_values/n{n}/{k}"), Some(n), pm, 1e-8, r);
        }
    }
}

fn orbifold_check(p: &PeriodParams, pol: &PrecisionPolicy) -> Result<f64> {
    let n = p.n();
    let (vals, _) = orbifold_point_values(p)?;
    let kp = kappa_from_x(&SmallQCPoint::x(vec![c(0.0, 0.0); n + 1]), c(0.0, 0.0), &p.w)?;
    let mut worst = 0.0f64;
    for j in 1..=n + 1 {
        let e = twisted_period_euler(j, &kp, p, pol)?;
        worst = worst.max((e - vals[j - 1]).norm() / e.norm().max(1.0));
    }
    Ok(worst)
}

// ---------------------------------------------------------------- ocrc

fn leg_name(bc: &BoundaryCondition) -> &'static str {
    match bc.leg {
        Leg::Ineffective => "ineffective",
        Leg::Effective => "effective",
    }
}

fn ocrc_suite(b: &mut Builder) {
    let legs = [BoundaryCondition::ineffective(), BoundaryCondition::effective()];
    for n in b.cfg.ns() {
        let mut s = b.sampler(0, n);
        for k in 0..b.samples() {
            let w = s.weights(n);
            for bc in &legs {
                let (pm, r) = match &w {
                    Ok(w) => (weight_params(w), lemma_residual_all(bc, 6, w)),
                    Err(e) => (Params::new(), Err(e.clone())),
                };
                b.push(format!("disk_lemma/{}/n{n}/{k}", leg_name(bc)), Some(n), pm, 1e-10, r);
            }
        }

        let mut s = b.sampler(1, n);
        for d in 1..=4usize {
            let mut lit = 0.0f64;
            let mut signed = 0.0f64;
            let mut cols = 0.0f64;
            let mut spread = 0.0f64;
            let mut err = None;
            for _ in 0..(b.samples() / 4).max(1) {
                match s.weights(n).and_then(|w| oz_ineffective_report(d, &w)) {
                    Ok(r) => {
                        lit = lit.max(r.residual);
                        signed = signed.max(r.residual_signed);
                        cols = cols.max(r.column_sums);
                        let r0 = r.wvcov_ratio[0];
                        spread = spread.max(r.wvcov_ratio.iter().map(|x| (x / r0 - 1.0).norm()).fold(0.0, f64::max));
                    }
                    Err(e) => err = Some(e),
                }
            }
            let pm = params([("d", d.into())]);
            let wrap = |v: f64| match &err {
                Some(e) => Err(e.clone()),
                None => Ok(v),
            };
            let lit_m =
                wrap(lit).map(|v| noted(v, format!("with the extra sign (-1)^(d+1) the residual is {signed:.3e}")));
            b.push(format!("oz_ineffective/n{n}/d{d}"), Some(n), pm.clone(), 1e-8, lit_m);
            b.push(format!("oz_ineffective_signed/n{n}/d{d}"), Some(n), pm.clone(), 1e-8, wrap(signed));
            b.push(format!("oz_column_sums/n{n}/d{d}"), Some(n), pm.clone(), 1e-10, wrap(cols));
            b.push(format!("wvcov_row_independence/n{n}/d{d}"), Some(n), pm, 1e-10, wrap(spread));
        }

        let mut s = b.sampler(2, n);
        for d in 1..=2 * (n + 1) {
            let mut worst = 0.0f64;
            let mut err = None;
            for _ in 0..(b.samples() / 4).max(1) {
                match s.weights(n).and_then(|w| oz_effective_report(d, &w)) {
                    Ok((_, e)) => worst = worst.max(e),
                    Err(e) => err = Some(e),
                }
            }
            let r = match err {
                Some(e) => Err(e),
                None => Ok(worst),
            };
            b.push(format!("oz_effective/n{n}/d{d}"), Some(n), params([("d", d.into())]), 1e-10, r);
        }

        if n <= 3 {
            let mut s = b.sampler(3, n);
            for k in 0..b.samples().min(10) {
                let p = s.period_params(n);
                for bc in &legs {
                    let (pm, r) = match &p {
                        Ok(p) => (period_param_map(p), iritani_check(bc, p)),
                        Err(e) => (Params::new(), Err(e.clone())),
                    };
                    b.push(format!("iritani/{}/n{n}/{k}", leg_name(bc)), Some(n), pm, 1e-8, r);
                }
            }
        }

        let mut s = b.sampler(4, n);
        let p = s.period_params(n);
        for bc in &legs {
            for side in [DiskSide::X, DiskSide::Y] {
                let (pm, r) = match &p {
                    Ok(p) => (period_param_map(p), theta_identity_residual(bc, side, p.z, &p.w)),
                    Err(e) => (Params::new(), Err(e.clone())),
                };
                let sn = if side == DiskSide::X { "x" } else { "y" };
                b.push(format!("theta/{}/{sn}/n{n}", leg_name(bc)), Some(n), pm, 1e-10, r);
            }
        }
    }
}

fn iritani_check(bc: &BoundaryCondition, p: &PeriodParams) -> Result<f64> {
    let d = o_direct(bc, p.z, &p.w)?.entries;
    let i = o_via_iritani(bc, p.z, &p.w)?.entries;
    Ok(max_abs(&(&i - &d)) / max_abs(&d).max(1.0))
}

// ---------------------------------------------------------------- monodromy

fn monodromy_suite(b: &mut Builder) {
    if !(b.cfg.n_min..=b.cfg.n_max).contains(&1) {
        return;
    }
    let n = Some(1);
    let [l0, l1, linf] = standard_loops();
    let mut s = b.sampler(0, 1);
    let mut first_a = None;
    for k in 0..b.samples() {
        let p = match s.period_params(1) {
            Ok(p) => p,
            Err(e) => {
                b.push(format!("lr1/{k}"), n, Params::new(), 1e-6, Err::<f64, _>(e));
                continue;
            }
        };
        first_a.get_or_insert(p.a());
        let mut pm = period_param_map(&p);
        pm.insert("a".into(), p.a().into());
        pm.insert("b".into(), p.b().into());
        let paper = paper_matrices_n1(&p);
        let m0 = numeric_monodromy_n1(&l0, &p);
        let m1 = numeric_monodromy_n1(&l1, &p);
        let mi = numeric_monodromy_n1(&linf, &p);
        let cmp = |m: &Result<CMat>, pick: fn(&crate::monodromy::PaperMatrices) -> &CMat| -> Result<f64> {
            let m = m.as_ref().map_err(Clone::clone)?;
            let pp = paper.as_ref().map_err(Clone::clone)?;
            Ok(invariant_compare(m, pick(pp)))
        };
        b.push(format!("lr1/{k}"), n, pm.clone(), 1e-6, cmp(&m0, |m| &m.lr1));
        b.push(format!("cp/{k}"), n, pm.clone(), 1e-6, cmp(&m1, |m| &m.cp));
        b.push(format!("lr2/{k}"), n, pm.clone(), 1e-6, cmp(&mi, |m| &m.lr2));

        let det = (|| -> Result<f64> {
            let mut e = 0.0f64;
            for (m, center) in [(&m0, Center::Zero), (&m1, Center::One), (&mi, Center::Infinity)] {
                let m = m.as_ref().map_err(Clone::clone)?;
                e = e.max((tr_det(m).1 - expected_det(center, p.b())).norm());
            }
            Ok(e)
        })();
        b.push(format!("local_exponent_det/{k}"), n, pm.clone(), 1e-8, det);

        let comp = (|| -> Result<f64> {
            let path = numeric_monodromy_path(&[l0, l1], &p)?;
            let prod = m1.as_ref().map_err(Clone::clone)? * m0.as_ref().map_err(Clone::clone)?;
            Ok(max_abs(&(path - prod)))
        })();
        b.push(format!("composition/{k}"), n, pm.clone(), 1e-6, comp);

        // cw loop around infinity is the inverse of going around 1 after 0, up to conjugation
        let rel_check = (|| -> Result<f64> {
            let prod = m1.as_ref().map_err(Clone::clone)? * m0.as_ref().map_err(Clone::clone)?;
            let inv = prod.try_inverse().ok_or_else(|| Error::Domain("singular monodromy".into()))?;
            Ok(invariant_compare(mi.as_ref().map_err(Clone::clone)?, &inv))
        })();
        b.push(format!("loop_relation/{k}"), n, pm, 1e-6, rel_check);
    }

    // conifold triviality as b -> 0
    let a = first_a.unwrap_or(c(0.37, 0.11));
    let bsmall = C64::from_polar(1e-4, 0.3);
    let pm = params([("a", a.into()), ("b", bsmall.into())]);
    let id = CMat::identity(2, 2);
    let r = numeric_monodromy_ab(&l1, a, bsmall).map(|m| max_abs(&(m - &id)));
    b.push("cp_b_limit/numeric".into(), n, pm.clone(), 1e-5, r);
    let printed = paper_matrices_ab(a, bsmall).cp;
    b.push("cp_b_limit/printed".into(), n, pm, 1e-5, Ok(max_abs(&(printed - id))));
}

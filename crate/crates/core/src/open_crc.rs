//! Open-string side: disk functions, Gamma classes, disk endomorphisms, `Theta`,
//! Chern-character matrices, and the two constructions of the open
//! transformation `O` with its winding specializations `O_Z`.

use crate::an_geometry::TorusWeights;
use crate::numerics::{gamma, gamma_ratio};
use crate::periods::{u_closed_form, DomainTag, GiventalMatrix};
use crate::{max_abs, omega_pow, CMat, Error, Result, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Factorization tolerance for `O_Z` on the ineffective leg.
pub const OZ_TOL: f64 = 1e-8;
/// Tolerance for the effective-leg delta row and the column sums.
pub const OZ_EXACT_TOL: f64 = 1e-10;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Leg {
    /// The gerby leg, on which the isotropy acts trivially.
    Ineffective,
    /// The leg acted on faithfully.
    Effective,
}

/// Choice of Lagrangian leg. `negative` swaps the roles of the second and
/// third coordinates (the opposite disk orientation).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryCondition {
    pub leg: Leg,
    pub negative: bool,
}

impl BoundaryCondition {
    pub fn ineffective() -> Self {
        BoundaryCondition { leg: Leg::Ineffective, negative: false }
    }

    pub fn effective() -> Self {
        BoundaryCondition { leg: Leg::Effective, negative: false }
    }

    /// Local data of the leg on `X`.
    pub fn x_data(&self, w: &TorusWeights) -> DiskData {
        let (a1, a2, s) = (w.alpha1, w.alpha2, w.sum());
        let d = match self.leg {
            Leg::Ineffective => DiskData { order: w.order(), m: [0, -1, 1], w: [s, -a1, -a2], n_e: 1 },
            Leg::Effective => DiskData { order: w.order(), m: [-1, 1, 0], w: [-a1, -a2, s], n_e: w.order() },
        };
        self.orient(d)
    }

    /// Local data at the fixed point `P_i` of `Y`; `None` where the leg does not reach `P_i`.
    pub fn y_data(&self, i: usize, w: &TorusWeights) -> Option<DiskData> {
        let n = w.n;
        let s = w.sum();
        let d = match self.leg {
            Leg::Ineffective => DiskData { order: 1, m: [0, 0, 0], w: [s, w.w_plus(i), w.w_minus(i)], n_e: 1 },
            Leg::Effective if i == n + 1 => DiskData {
                order: 1,
                m: [0, 0, 0],
                w: [-(n as f64 + 1.0) * w.alpha1, n as f64 * w.alpha1 - w.alpha2, s],
                n_e: 1,
            },
            Leg::Effective => return None,
        };
        Some(self.orient(d))
    }

    fn orient(&self, mut d: DiskData) -> DiskData {
        if self.negative {
            d.m.swap(1, 2);
            d.w.swap(1, 2);
        }
        d
    }
}

/// Isotropy order, representation weights `m` and torus weights `w` of a leg
/// at one chart; `n_e = order / gcd(m_1, order)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskData {
    pub order: usize,
    pub m: [i64; 3],
    pub w: [C64; 3],
    pub n_e: usize,
}

impl DiskData {
    /// `<k m_j / order>`
    pub fn frac(&self, k: usize, j: usize) -> f64 {
        let o = self.order as i64;
        (k as i64 * self.m[j]).rem_euclid(o) as f64 / o as f64
    }

    pub fn age(&self, k: usize) -> f64 {
        (0..3).map(|j| self.frac(k, j)).sum()
    }

    /// `d/n_e - k m_1/order` is an integer.
    pub fn compatible(&self, d: usize, k: usize) -> bool {
        // d * order - k m_1 n_e divisible by n_e * order
        let (o, ne) = (self.order as i64, self.n_e as i64);
        (d as i64 * o - k as i64 * self.m[0] * ne).rem_euclid(o * ne) == 0
    }

    /// Calabi-Yau check `w_1 + w_2 + w_3 = 0`.
    pub fn cy_residual(&self) -> f64 {
        (self.w[0] + self.w[1] + self.w[2]).norm()
    }

    /// Winding specialization `z = n_e w_1 / d`.
    pub fn winding_z(&self, d: usize) -> C64 {
        self.n_e as f64 * self.w[0] / d as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskValue {
    pub value: C64,
    pub compatible: bool,
}

/// Positively oriented disk function
/// `(n_e w_1/d)^{age-1} n_e/(d (n+1) floor(d/n_e)!) Gamma(d w_2/(n_e w_1) + <k m_3/(n+1)> + d/n_e) / Gamma(d w_2/(n_e w_1) - <k m_2/(n+1)> + 1)`;
/// exactly zero when winding and twisting are incompatible.
pub fn disk_function(d: usize, k: usize, data: &DiskData) -> Result<DiskValue> {
    if d == 0 {
        return Err(Error::Domain("winding must be positive".into()));
    }
    if !data.compatible(d, k) {
        return Ok(DiskValue { value: c(0.0, 0.0), compatible: false });
    }
    let ne = data.n_e as f64;
    let df = d as f64;
    let base = ne * data.w[0] / df;
    let x = df * data.w[1] / (ne * data.w[0]);
    let fact: f64 = (1..=d / data.n_e).map(|m| m as f64).product();
    let g = gamma_ratio(&[x + data.frac(k, 2) + df / ne], &[x - data.frac(k, 1) + 1.0])?;
    let value = base.powc(c(data.age(k) - 1.0, 0.0)) * ne / (df * data.order as f64 * fact) * g;
    Ok(DiskValue { value, compatible: true })
}

/// Gamma class components: `Gamma_X^k` over twisted sectors `k <= n` and the
/// untwisted `k = n+1`, or `Gamma_Y^i` over fixed points.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaClass {
    pub side: Side,
    pub z: C64,
    pub components: Vec<C64>,
}

/// Homogenized Gamma classes.
///
/// `X`, twisted: `Gamma(1+(a_1+a_2)/z) Gamma(k/(n+1) - a_1/z) Gamma(1 - k/(n+1) - a_2/z) / z`;
/// untwisted: `Gamma(1+(a_1+a_2)/z) Gamma(1-a_1/z) Gamma(1-a_2/z)`.
/// `Y`: `Gamma(1+(a_1+a_2)/z) Gamma(1+w_i^+/z) Gamma(1+w_i^-/z)`.
///
/// In the twisted sector `1_k` the first coordinate carries `omega^k` and the
/// second `omega^{-k}`, which puts `k/(n+1)` next to `alpha_1`.
pub fn gamma_class(side: Side, z: C64, w: &TorusWeights) -> Result<GammaClass> {
    let n = w.n;
    let nf = n as f64 + 1.0;
    let (a1, a2) = (w.alpha1 / z, w.alpha2 / z);
    let common = gamma(1.0 + a1 + a2)?;
    let components = match side {
        Side::X => (1..=n + 1)
            .map(|k| {
                if k == n + 1 {
                    Ok(common * gamma(1.0 - a1)? * gamma(1.0 - a2)?)
                } else {
                    let f = k as f64 / nf;
                    Ok(common * gamma(f - a1)? * gamma(1.0 - f - a2)? / z)
                }
            })
            .collect::<Result<Vec<_>>>()?,
        Side::Y => (1..=n + 1)
            .map(|i| Ok(common * gamma(1.0 + w.w_plus(i) / z)? * gamma(1.0 + w.w_minus(i) / z)?))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(GammaClass { side, z, components })
}

fn sin_pi(x: C64) -> C64 {
    (PI * x).sin()
}

// pi / (w_1 order sin(pi(<k m_3/order> - w_3/z)))
fn theta_core(data: &DiskData, k: usize, z: C64) -> Result<C64> {
    let s = sin_pi(data.frac(k, 2) - data.w[2] / z);
    let den = data.w[0] * data.order as f64 * s;
    if den.norm() < 1e-300 || !den.re.is_finite() {
        return Err(Error::pole(z.re, z.im));
    }
    Ok(PI / den)
}

/// `D-hat` eigenvalue `pi / (w_1 (n+1) sin(pi(<k m_3/(n+1)> - w_3/z)) Gamma^k)`.
pub fn disk_eigenvalue(data: &DiskData, k: usize, gamma_k: C64, z: C64) -> Result<C64> {
    Ok(theta_core(data, k, z)? / gamma_k)
}

fn diagonal(tag: DomainTag, z: C64, d: Vec<C64>) -> GiventalMatrix {
    GiventalMatrix::new(tag, z, CMat::from_diagonal(&nalgebra::DVector::from_vec(d)))
}

/// Diagonal disk endomorphism `D-hat` on `X` (basis `1_k`) or `Y` (basis `P_i`).
/// On `Y` the effective leg only reaches `P_{n+1}`, so the matrix has rank one.
pub fn disk_endomorphism(bc: &BoundaryCondition, side: Side, z: C64, w: &TorusWeights) -> Result<GiventalMatrix> {
    let n = w.n;
    let g = gamma_class(side, z, w)?;
    let mut d = Vec::with_capacity(n + 1);
    for k in 1..=n + 1 {
        d.push(match side {
            Side::X => disk_eigenvalue(&bc.x_data(w), k, g.components[k - 1], z)?,
            Side::Y => match bc.y_data(k, w) {
                Some(data) => disk_eigenvalue(&data, 1, g.components[k - 1], z)?,
                None => c(0.0, 0.0),
            },
        });
    }
    let tag = if side == Side::X { DomainTag::XToX } else { DomainTag::YToY };
    Ok(diagonal(tag, z, d))
}

/// `Theta = z^{3/2} pi / (w_1 (n+1) sin(pi(<k m_3/(n+1)> - w_3/z)))`, so that
/// `Theta = z^{3/2} Gamma-hat D-hat` entrywise.
pub fn theta(bc: &BoundaryCondition, side: Side, z: C64, w: &TorusWeights) -> Result<GiventalMatrix> {
    let n = w.n;
    let z32 = z.powf(1.5);
    let mut d = Vec::with_capacity(n + 1);
    for k in 1..=n + 1 {
        d.push(match side {
            Side::X => z32 * theta_core(&bc.x_data(w), k, z)?,
            Side::Y => match bc.y_data(k, w) {
                Some(data) => z32 * theta_core(&data, 1, z)?,
                None => c(0.0, 0.0),
            },
        });
    }
    let tag = if side == Side::X { DomainTag::XToX } else { DomainTag::YToY };
    Ok(diagonal(tag, z, d))
}

/// `max |Theta - z^{3/2} Gamma-hat D-hat|` relative to `max |Theta|`.
pub fn theta_identity_residual(bc: &BoundaryCondition, side: Side, z: C64, w: &TorusWeights) -> Result<f64> {
    let t = theta(bc, side, z, w)?.entries;
    let d = disk_endomorphism(bc, side, z, w)?.entries;
    let g = gamma_class(side, z, w)?;
    let z32 = z.powf(1.5);
    let mut worst: f64 = 0.0;
    for k in 0..=w.n {
        worst = worst.max((t[(k, k)] - z32 * g.components[k] * d[(k, k)]).norm());
    }
    Ok(worst / max_abs(&t).max(f64::MIN_POSITIVE))
}

/// Homogenized Chern characters of the grade restriction window.
///
/// `X`: entry `(m, k) = omega^{km}`, column `n+1` the trivial bundle.
/// `Y`: column `k` is `sum_{i<=k} e^{2 pi i (n+1-k) alpha_2/z} P_i + sum_{i>k} e^{2 pi i k alpha_1/z} P_i`.
pub fn chern_matrix(side: Side, z: C64, w: &TorusWeights) -> GiventalMatrix {
    let n = w.n;
    match side {
        Side::X => GiventalMatrix::new(
            DomainTag::XToX,
            z,
            CMat::from_fn(n + 1, n + 1, |m, k| omega_pow(n, c(((m + 1) * (k + 1)) as f64, 0.0))),
        ),
        Side::Y => GiventalMatrix::new(
            DomainTag::YToY,
            z,
            CMat::from_fn(n + 1, n + 1, |i, k| {
                let (i, k) = (i + 1, k + 1);
                if i <= k {
                    crate::e2pi((n + 1 - k) as f64 * w.alpha2 / z)
                } else {
                    crate::e2pi(k as f64 * w.alpha1 / z)
                }
            }),
        ),
    }
}

/// Closed-form inverse of the `X` Chern matrix: `omega^{-km}/(n+1)`.
pub fn chern_x_inverse(n: usize) -> CMat {
    CMat::from_fn(n + 1, n + 1, |k, m| omega_pow(n, c(-(((m + 1) * (k + 1)) as f64), 0.0)) / (n as f64 + 1.0))
}

/// `O = D-hat_Y U D-hat_X^{-1}` at `z`.
pub fn o_direct(bc: &BoundaryCondition, z: C64, w: &TorusWeights) -> Result<GiventalMatrix> {
    let dy = disk_endomorphism(bc, Side::Y, z, w)?.entries;
    let dx = disk_endomorphism(bc, Side::X, z, w)?.entries;
    let u = u_closed_form(&crate::periods::PeriodParams { w: *w, z })?.entries;
    let n = w.n;
    let mut o = dy * u;
    for k in 0..=n {
        let e = dx[(k, k)];
        if e.norm() == 0.0 || !e.re.is_finite() {
            return Err(Error::Domain("disk endomorphism of X is not invertible here".into()));
        }
        for i in 0..=n {
            o[(i, k)] /= e;
        }
    }
    Ok(GiventalMatrix::new(DomainTag::XToY, z, o))
}

/// `O = Theta_Y CH_Y CH_X^{-1} Theta_X^{-1}` at `z`.
pub fn o_via_iritani(bc: &BoundaryCondition, z: C64, w: &TorusWeights) -> Result<GiventalMatrix> {
    let n = w.n;
    let ty = theta(bc, Side::Y, z, w)?.entries;
    let tx = theta(bc, Side::X, z, w)?.entries;
    let chy = chern_matrix(Side::Y, z, w).entries;
    let mut o = ty * chy * chern_x_inverse(n);
    for k in 0..=n {
        let e = tx[(k, k)];
        if e.norm() == 0.0 {
            return Err(Error::Domain("Theta_X is not invertible here".into()));
        }
        for i in 0..=n {
            o[(i, k)] /= e;
        }
    }
    Ok(GiventalMatrix::new(DomainTag::XToY, z, o))
}

/// Constant matrix `O_Z`: `-omega^{(1/2-i)k}` for `k <= n`, `-1` in the last column.
pub fn oz_constant(n: usize) -> CMat {
    CMat::from_fn(n + 1, n + 1, |i, k| {
        let (i, k) = ((i + 1) as f64, k + 1);
        if k == n + 1 {
            c(-1.0, 0.0)
        } else {
            -omega_pow(n, c((0.5 - i) * k as f64, 0.0))
        }
    })
}

/// Winding factor `e^{d pi i [(n-i+2) + (2i-n-2) alpha_1/(alpha_1+alpha_2)]}` of row `i`.
pub fn winding_factor(i: usize, d: usize, w: &TorusWeights) -> C64 {
    let n = w.n as f64;
    let i = i as f64;
    (c(0.0, d as f64 * PI) * ((n - i + 2.0) + (2.0 * i - n - 2.0) * w.alpha1 / w.sum())).exp()
}

/// The same factor in change-of-variables form, `e^{pi i d (w_i^- + (2i-1) alpha_1)/(alpha_1+alpha_2)}`.
pub fn winding_factor_wvcov(i: usize, d: usize, w: &TorusWeights) -> C64 {
    let e = (w.w_minus(i) + (2.0 * i as f64 - 1.0) * w.alpha1) / w.sum();
    (c(0.0, PI * d as f64) * e).exp()
}

/// Everything measured for one ineffective-leg specialization.
#[derive(Debug, Clone)]
pub struct OzIneffective {
    pub d: usize,
    pub o: CMat,
    pub winding: Vec<C64>,
    pub oz: CMat,
    /// `max |O - W O_Z| / max |W O_Z|` with the winding factors as stated.
    pub residual: f64,
    /// The same with the extra sign `(-1)^{d+1}` on every row.
    pub residual_signed: f64,
    /// `max_{k<=n} |sum_i (O_Z)_{ik}|`
    pub column_sums: f64,
    /// Ratio of the two winding-factor forms, per row.
    pub wvcov_ratio: Vec<C64>,
    /// Spread of that ratio over rows (0 when it is row independent).
    pub wvcov_spread: f64,
}

/// Specialization at `z = (alpha_1+alpha_2)/d` and the factorization `O = W O_Z`.
pub fn oz_ineffective_report(d: usize, w: &TorusWeights) -> Result<OzIneffective> {
    if d == 0 {
        return Err(Error::Domain("winding must be positive".into()));
    }
    let n = w.n;
    let z = w.sum() / d as f64;
    let o = o_direct(&BoundaryCondition::ineffective(), z, w)?.entries;
    let oz = oz_constant(n);
    let winding: Vec<C64> = (1..=n + 1).map(|i| winding_factor(i, d, w)).collect();
    let sign = if d % 2 == 1 { 1.0 } else { -1.0 };
    let target = CMat::from_fn(n + 1, n + 1, |i, k| winding[i] * oz[(i, k)]);
    let scale = max_abs(&target);
    let residual = max_abs(&(&o - &target)) / scale;
    let residual_signed = max_abs(&(&o - &target * c(sign, 0.0))) / scale;
    let column_sums = (0..n).map(|k| oz.column(k).iter().sum::<C64>().norm()).fold(0.0, f64::max);
    let wvcov_ratio: Vec<C64> = (1..=n + 1).map(|i| winding_factor_wvcov(i, d, w) / winding[i - 1]).collect();
    let wvcov_spread = wvcov_ratio.iter().map(|r| (r - wvcov_ratio[0]).norm()).fold(0.0, f64::max);
    Ok(OzIneffective { d, o, winding, oz, residual, residual_signed, column_sums, wvcov_ratio, wvcov_spread })
}

/// As [`oz_ineffective_report`], failing unless the factorization holds to [`OZ_TOL`].
pub fn oz_ineffective(d: usize, w: &TorusWeights) -> Result<(CMat, Vec<C64>)> {
    let r = oz_ineffective_report(d, w)?;
    if r.residual > OZ_TOL {
        return Err(Error::Assertion(format!("O_Z factorization off by {:.3e} at d = {d}", r.residual)));
    }
    Ok((r.oz, r.winding))
}

/// Specialization at `z = -(n+1) alpha_1/d` on the effective leg, with the
/// deviation from the delta row `delta_{k, -d mod n+1}` (other rows zero).
pub fn oz_effective_report(d: usize, w: &TorusWeights) -> Result<(CMat, f64)> {
    if d == 0 {
        return Err(Error::Domain("winding must be positive".into()));
    }
    let n = w.n;
    let z = -(n as f64 + 1.0) * w.alpha1 / d as f64;
    let o = o_direct(&BoundaryCondition::effective(), z, w)?.entries;
    let target = effective_delta_row(n, d);
    let err = max_abs(&(&o - &target));
    Ok((o, err))
}

/// The matrix with a single 1 in row `n+1`, column `k = -d mod (n+1)` (slot `n+1` for 0).
pub fn effective_delta_row(n: usize, d: usize) -> CMat {
    let nn = n + 1;
    let k = (nn - d % nn) % nn;
    let col = if k == 0 { nn } else { k };
    let mut m = CMat::zeros(nn, nn);
    m[(n, col - 1)] = c(1.0, 0.0);
    m
}

pub fn oz_effective(d: usize, w: &TorusWeights) -> Result<CMat> {
    let (o, err) = oz_effective_report(d, w)?;
    if err > OZ_EXACT_TOL {
        return Err(Error::Assertion(format!("effective O_Z differs from the delta row by {err:.3e}")));
    }
    Ok(o)
}

/// Relative gap between the `D-hat` eigenvalue at `z = n_e w_1/d` and the disk
/// function, for one chart; `None` when `(d, k)` is incompatible.
pub fn lemma_residual(
    d: usize,
    k: usize,
    data: &DiskData,
    gamma_at: impl Fn(C64) -> Result<C64>,
) -> Result<Option<f64>> {
    let dv = disk_function(d, k, data)?;
    if !dv.compatible {
        return Ok(None);
    }
    let z = data.winding_z(d);
    let e = disk_eigenvalue(data, k, gamma_at(z)?, z)?;
    Ok(Some((e - dv.value).norm() / dv.value.norm().max(f64::MIN_POSITIVE)))
}

/// Worst Lemma residual over all compatible `(d <= d_max, k)` for both sides of one leg.
pub fn lemma_residual_all(bc: &BoundaryCondition, d_max: usize, w: &TorusWeights) -> Result<f64> {
    let n = w.n;
    let mut worst: f64 = 0.0;
    let xd = bc.x_data(w);
    for d in 1..=d_max {
        for k in 1..=n + 1 {
            if let Some(r) = lemma_residual(d, k, &xd, |z| Ok(gamma_class(Side::X, z, w)?.components[k - 1]))? {
                worst = worst.max(r);
            }
        }
        for i in 1..=n + 1 {
            if let Some(yd) = bc.y_data(i, w) {
                if let Some(r) = lemma_residual(d, 1, &yd, |z| Ok(gamma_class(Side::Y, z, w)?.components[i - 1]))? {
                    worst = worst.max(r);
                }
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weights(n: usize) -> TorusWeights {
        TorusWeights::new(n, c(0.7, 0.2), c(1.1, -0.3)).unwrap()
    }

    #[test]
    fn leg_data() {
        let w = weights(3);
        for bc in [BoundaryCondition::ineffective(), BoundaryCondition::effective()] {
            assert!(bc.x_data(&w).cy_residual() < 1e-15);
            for i in 1..=4 {
                if let Some(d) = bc.y_data(i, &w) {
                    assert!(d.cy_residual() < 1e-14);
                }
            }
        }
        assert_eq!(BoundaryCondition::ineffective().x_data(&w).n_e, 1);
        assert_eq!(BoundaryCondition::effective().x_data(&w).n_e, 4);
        assert!(BoundaryCondition::effective().y_data(2, &w).is_none());
    }

    #[test]
    fn disk_function_compatibility() {
        let w = weights(2);
        let eff = BoundaryCondition::effective().x_data(&w);
        for d in 1..=6 {
            for k in 1..=3 {
                let v = disk_function(d, k, &eff).unwrap();
                assert_eq!(v.compatible, (k + d) % 3 == 0, "d={d} k={k}");
                if !v.compatible {
                    assert_eq!(v.value, c(0.0, 0.0));
                }
            }
        }
        let ineff = BoundaryCondition::ineffective().x_data(&w);
        assert!((1..=3).all(|k| ineff.compatible(5, k)));
        assert_eq!(ineff.age(3), 0.0);
        // untwisted: (w_1/d)^{-1} / (d (n+1) d!) Gamma(d w_2/w_1 + d)/Gamma(d w_2/w_1 + 1)
        let d = 2;
        let x = 2.0 * ineff.w[1] / ineff.w[0];
        let want = (ineff.w[0] / 2.0).inv() / (2.0 * 3.0 * 2.0) * gamma(x + 2.0).unwrap() / gamma(x + 1.0).unwrap();
        assert!((disk_function(d, 3, &ineff).unwrap().value - want).norm() < 1e-14);
    }

    #[test]
    fn lemma_both_legs() {
        for n in 1..=4 {
            let w = weights(n);
            for bc in [BoundaryCondition::ineffective(), BoundaryCondition::effective()] {
                assert!(lemma_residual_all(&bc, 6, &w).unwrap() < 1e-10, "n={n} {bc:?}");
            }
        }
    }

    #[test]
    fn gamma_large_z() {
        let w = weights(2);
        let z = c(1e8, 0.0);
        let gx = gamma_class(Side::X, z, &w).unwrap();
        assert!((gx.components[2] - 1.0).norm() < 1e-6);
        let gy = gamma_class(Side::Y, z, &w).unwrap();
        assert!(gy.components.iter().all(|g| (g - 1.0).norm() < 1e-6));
    }

    #[test]
    fn iritani_matches_direct() {
        for n in 1..=3 {
            let w = weights(n);
            let z = c(2.7, -0.6);
            for bc in [BoundaryCondition::ineffective(), BoundaryCondition::effective()] {
                let a = o_direct(&bc, z, &w).unwrap().entries;
                let b = o_via_iritani(&bc, z, &w).unwrap().entries;
                assert!(max_abs(&(&a - &b)) < 1e-10 * max_abs(&a), "n={n}");
                assert!(theta_identity_residual(&bc, Side::X, z, &w).unwrap() < 1e-14);
            }
            let chx = chern_matrix(Side::X, z, &w).entries;
            assert!(max_abs(&(chx * chern_x_inverse(n) - CMat::identity(n + 1, n + 1))) < 1e-14);
        }
    }

    #[test]
    fn oz_n1_example() {
        let oz = oz_constant(1);
        let want = [[c(0.0, 1.0), c(-1.0, 0.0)], [c(0.0, -1.0), c(-1.0, 0.0)]];
        for i in 0..2 {
            for k in 0..2 {
                assert!((oz[(i, k)] - want[i][k]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn oz_ineffective_odd_and_even() {
        for n in 1..=4 {
            let w = weights(n);
            for d in 1..=4 {
                let r = oz_ineffective_report(d, &w).unwrap();
                assert!(r.column_sums < 1e-12);
                assert!(r.residual_signed < 1e-10, "n={n} d={d}");
                assert!(r.wvcov_spread < 1e-10);
                if d % 2 == 1 {
                    assert!(r.residual < 1e-10);
                    assert!(oz_ineffective(d, &w).is_ok());
                } else {
                    assert!((r.residual - 2.0).abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn oz_effective_rows() {
        for n in 1..=4 {
            let w = weights(n);
            for d in 1..=2 * (n + 1) {
                let (_, err) = oz_effective_report(d, &w).unwrap();
                assert!(err < 1e-10, "n={n} d={d}: {err}");
            }
        }
        let d1 = effective_delta_row(2, 1);
        assert_eq!(d1[(2, 1)], c(1.0, 0.0));
        let d3 = effective_delta_row(2, 3);
        assert_eq!(d3[(2, 2)], c(1.0, 0.0));
        assert_eq!(effective_delta_row(2, 1), effective_delta_row(2, 4));
    }
}

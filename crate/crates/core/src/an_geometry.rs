//! Equivariant classical and small quantum cohomology of `X = [C^3/Z_{n+1}]`
//! and of its crepant resolution `Y`.
//!
//! Indices are 1-based throughout to match the usual labelling: twisted
//! sectors `1_1..1_n` plus the untwisted `1_{n+1}` on `X`, fixed points
//! `P_1..P_{n+1}` and divisor classes `gamma_1..gamma_n`, `gamma_{n+1} = 1` on `Y`.

use crate::{omega_pow, CMat, Error, Result, C64};
use serde::{Deserialize, Serialize};

/// Torus weights `(alpha_1, alpha_2)`; the third fibre weight is
/// `-alpha_1 - alpha_2` (Calabi-Yau).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusWeights {
    pub n: usize,
    pub alpha1: C64,
    pub alpha2: C64,
}

impl TorusWeights {
    pub fn new(n: usize, alpha1: C64, alpha2: C64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Geometry("n must be at least 1".into()));
        }
        let w = TorusWeights { n, alpha1, alpha2 };
        let tiny = 1e-12;
        if alpha1.norm() < tiny || alpha2.norm() < tiny || w.sum().norm() < tiny {
            return Err(Error::Geometry("alpha1, alpha2 and alpha1+alpha2 must be nonzero".into()));
        }
        for i in 1..=n + 1 {
            if w.w_minus(i).norm() < tiny || w.w_plus(i).norm() < tiny {
                return Err(Error::Geometry(format!("tangent weight vanishes at P_{i}")));
            }
        }
        Ok(w)
    }

    /// `n + 1`, the order of the isotropy group.
    pub fn order(&self) -> usize {
        self.n + 1
    }

    pub fn sum(&self) -> C64 {
        self.alpha1 + self.alpha2
    }

    /// `w_i^- = (i-1) alpha_1 + (i-n-2) alpha_2`
    pub fn w_minus(&self, i: usize) -> C64 {
        (i as f64 - 1.0) * self.alpha1 + (i as f64 - self.n as f64 - 2.0) * self.alpha2
    }

    /// `w_i^+ = -i alpha_1 + (n+1-i) alpha_2`
    pub fn w_plus(&self, i: usize) -> C64 {
        -(i as f64) * self.alpha1 + (self.n as f64 + 1.0 - i as f64) * self.alpha2
    }

    /// `a = (n+1) alpha_1 / z`
    pub fn a(&self, z: C64) -> C64 {
        self.order() as f64 * self.alpha1 / z
    }

    /// `b = (alpha_1 + alpha_2) / z`
    pub fn b(&self, z: C64) -> C64 {
        self.sum() / z
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    XTwisted,
    YFixed,
    YGamma,
}

/// Coefficients over one of the three named bases.
#[derive(Debug, Clone, PartialEq)]
pub struct CohVector {
    pub basis: Basis,
    pub coeffs: Vec<C64>,
}

impl CohVector {
    pub fn new(basis: Basis, coeffs: Vec<C64>) -> Self {
        CohVector { basis, coeffs }
    }

    /// The `k`-th basis vector (1-based) in rank `n + 1`.
    pub fn unit(basis: Basis, n: usize, k: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
        coeffs[k - 1] = C64::new(1.0, 0.0);
        CohVector { basis, coeffs }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis || self.coeffs.len() != other.coeffs.len() {
            return Err(Error::Geometry("vectors live in different bases".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CohVector { basis: self.basis, coeffs })
    }

    pub fn scale(&self, s: C64) -> Self {
        CohVector { basis: self.basis, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

/// A point of the small phase space. On `X` the entries are the flat
/// coordinates `x_1..x_{n+1}`, on `Y` they are `t_1..t_{n+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmallQCPoint {
    pub side: Side,
    pub t: Vec<C64>,
}

const QUANTUM_POLE_GUARD: f64 = 1e-12;

impl SmallQCPoint {
    pub fn x(x: Vec<C64>) -> Self {
        SmallQCPoint { side: Side::X, t: x }
    }

    /// A `Y` point, rejected when some `e^{t_l + .. + t_m}` (`l <= m <= n`) equals 1.
    pub fn y(t: Vec<C64>) -> Result<Self> {
        let p = SmallQCPoint { side: Side::Y, t };
        p.quantum_guard()?;
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.t.len() - 1
    }

    /// `min |e^{t_l+..+t_m} - 1|` over `1 <= l <= m <= n`.
    pub fn quantum_separation(&self) -> f64 {
        let n = self.n();
        let mut sep = f64::INFINITY;
        for l in 1..=n {
            for m in l..=n {
                let e = self.t[l - 1..m].iter().sum::<C64>().exp();
                sep = sep.min((e - 1.0).norm());
            }
        }
        sep
    }

    fn quantum_guard(&self) -> Result<()> {
        if self.quantum_separation() < QUANTUM_POLE_GUARD {
            return Err(Error::Geometry("point sits on a quantum pole e^{t_l+..+t_m} = 1".into()));
        }
        Ok(())
    }
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n + 1 {
        return Err(Error::Geometry(format!("index {i} outside 1..={}", n + 1)));
    }
    Ok(())
}

/// Orbifold Poincare pairing on `X`:
/// `eta(1_i, 1_j) = (delta_{i,n+1} delta_{j,n+1} + alpha_1 alpha_2 delta_{i+j,n+1}) / (alpha_1 alpha_2 (alpha_1+alpha_2)(n+1))`.
pub fn pairing_x_matrix(w: &TorusWeights) -> CMat {
    let n = w.n;
    let (a1, a2) = (w.alpha1, w.alpha2);
    let den = a1 * a2 * w.sum() * (n as f64 + 1.0);
    CMat::from_fn(n + 1, n + 1, |i, j| {
        let (i, j) = (i + 1, j + 1);
        let mut v = C64::new(0.0, 0.0);
        if i == n + 1 && j == n + 1 {
            v += 1.0;
        }
        if i + j == n + 1 {
            v += a1 * a2;
        }
        v / den
    })
}

/// Closed-form inverse of [`pairing_x_matrix`].
pub fn pairing_x_inverse(w: &TorusWeights) -> CMat {
    let n = w.n;
    let nn = n as f64 + 1.0;
    CMat::from_fn(n + 1, n + 1, |i, j| {
        let (i, j) = (i + 1, j + 1);
        if i == n + 1 && j == n + 1 {
            nn * w.alpha1 * w.alpha2 * w.sum()
        } else if i <= n && j <= n && i + j == n + 1 {
            nn * w.sum()
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

fn check_basis(v: &CohVector, basis: Basis, n: usize) -> Result<()> {
    if v.basis != basis || v.coeffs.len() != n + 1 {
        return Err(Error::Geometry(format!("expected a {basis:?} vector of rank {}", n + 1)));
    }
    Ok(())
}

pub fn pairing_x(u: &CohVector, v: &CohVector, w: &TorusWeights) -> Result<C64> {
    check_basis(u, Basis::XTwisted, w.n)?;
    check_basis(v, Basis::XTwisted, w.n)?;
    let eta = pairing_x_matrix(w);
    let mut s = C64::new(0.0, 0.0);
    for i in 0..=w.n {
        for j in 0..=w.n {
            s += u.coeffs[i] * eta[(i, j)] * v.coeffs[j];
        }
    }
    Ok(s)
}

/// `eta(P_i, P_i) = 1 / (w_i^- w_i^+ (alpha_1 + alpha_2))`
pub fn pairing_y_diag(w: &TorusWeights) -> Vec<C64> {
    (1..=w.n + 1).map(|i| 1.0 / (w.w_minus(i) * w.w_plus(i) * w.sum())).collect()
}

pub fn pairing_y(u: &CohVector, v: &CohVector, w: &TorusWeights) -> Result<C64> {
    check_basis(u, Basis::YFixed, w.n)?;
    check_basis(v, Basis::YFixed, w.n)?;
    Ok(pairing_y_diag(w).iter().zip(u.coeffs.iter().zip(&v.coeffs)).map(|(e, (a, b))| e * a * b).sum())
}

/// Localization of `gamma_j`: weight `(n+1-j) alpha_2` at `P_i` for `i <= j`,
/// `j alpha_1` for `i > j`; `gamma_{n+1}` restricts to 1 everywhere.
pub fn atiyah_bott(j: usize, w: &TorusWeights) -> Result<CohVector> {
    check_index(j, w.n)?;
    let n = w.n;
    let coeffs = (1..=n + 1)
        .map(|i| {
            if j == n + 1 {
                C64::new(1.0, 0.0)
            } else if i <= j {
                (n + 1 - j) as f64 * w.alpha2
            } else {
                j as f64 * w.alpha1
            }
        })
        .collect();
    Ok(CohVector::new(Basis::YFixed, coeffs))
}

/// Matrix of the localization map, columns `gamma_j` in the `P_i` basis.
pub fn atiyah_bott_matrix(w: &TorusWeights) -> CMat {
    let n = w.n;
    let mut m = CMat::zeros(n + 1, n + 1);
    for j in 1..=n + 1 {
        let v = atiyah_bott(j, w).expect("index in range");
        for i in 0..=n {
            m[(i, j - 1)] = v.coeffs[i];
        }
    }
    m
}

pub fn gamma_to_fixed(v: &CohVector, w: &TorusWeights) -> Result<CohVector> {
    check_basis(v, Basis::YGamma, w.n)?;
    let m = atiyah_bott_matrix(w);
    let coeffs = (0..=w.n).map(|i| (0..=w.n).map(|j| m[(i, j)] * v.coeffs[j]).sum()).collect();
    Ok(CohVector::new(Basis::YFixed, coeffs))
}

fn sorted3(i: usize, j: usize, k: usize) -> (usize, usize, usize) {
    let mut s = [i, j, k];
    s.sort_unstable();
    (s[0], s[1], s[2])
}

/// Equivariant triple intersections `<gamma_i, gamma_j, gamma_k>` of `Y`.
pub fn triple_classical(i: usize, j: usize, k: usize, w: &TorusWeights) -> Result<C64> {
    for x in [i, j, k] {
        check_index(x, w.n)?;
    }
    let (i, j, k) = sorted3(i, j, k);
    let nn = w.order();
    let nf = nn as f64;
    let s = w.sum();
    Ok(if i == nn {
        1.0 / (nf * w.alpha1 * w.alpha2 * s)
    } else if j == nn {
        C64::new(0.0, 0.0)
    } else if k == nn {
        C64::new(-((i * (nn - j)) as f64), 0.0) / (nf * s)
    } else {
        -((i * j * (nn - k)) as f64 * w.alpha1 + (i * (nn - j) * (nn - k)) as f64 * w.alpha2) / (nf * s)
    })
}

/// The same triple intersection as a fixed-point sum; an independent oracle.
pub fn triple_localization(i: usize, j: usize, k: usize, w: &TorusWeights) -> Result<C64> {
    let (vi, vj, vk) = (atiyah_bott(i, w)?, atiyah_bott(j, w)?, atiyah_bott(k, w)?);
    Ok(pairing_y_diag(w).iter().enumerate().map(|(m, e)| vi.coeffs[m] * vj.coeffs[m] * vk.coeffs[m] * e).sum())
}

/// Pairing of `Y` in the `gamma` basis, `eta(gamma_a, gamma_b) = <gamma_a, gamma_b, gamma_{n+1}>`.
pub fn pairing_gamma_matrix(w: &TorusWeights) -> CMat {
    let n = w.n;
    CMat::from_fn(n + 1, n + 1, |a, b| triple_classical(a + 1, b + 1, n + 1, w).expect("index in range"))
}

/// Closed-form inverse of [`pairing_gamma_matrix`]: on the divisor block it
/// is `-(alpha_1+alpha_2)` times the A_n Cartan matrix.
pub fn pairing_gamma_inverse(w: &TorusWeights) -> CMat {
    let n = w.n;
    let s = w.sum();
    CMat::from_fn(n + 1, n + 1, |a, b| {
        if a == n || b == n {
            if a == b {
                (n as f64 + 1.0) * w.alpha1 * w.alpha2 * s
            } else {
                C64::new(0.0, 0.0)
            }
        } else if a == b {
            -2.0 * s
        } else if a.abs_diff(b) == 1 {
            s
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Three-point correlator of `Y` at `t`:
/// `<gamma_i, gamma_j, gamma_k> - sum_{l <= i, k <= m <= n} e^{T}/(1 - e^{T})`, `T = t_l + .. + t_m`.
pub fn correlator_y(i: usize, j: usize, k: usize, p: &SmallQCPoint, w: &TorusWeights) -> Result<C64> {
    if p.side != Side::Y || p.n() != w.n {
        return Err(Error::Geometry("correlator_y needs a Y point of matching rank".into()));
    }
    let mut v = triple_classical(i, j, k, w)?;
    let (i, _, k) = sorted3(i, j, k);
    let n = w.n;
    if k == n + 1 {
        return Ok(v);
    }
    for l in 1..=i {
        for m in k..=n {
            let tt: C64 = p.t[l - 1..m].iter().sum();
            let e = tt.exp();
            if (1.0 - e).norm() < QUANTUM_POLE_GUARD {
                return Err(Error::pole(tt.re, tt.im));
            }
            v -= e / (1.0 - e);
        }
    }
    Ok(v)
}

/// All `(n+1)^3` correlators, flattened as `[(i-1)(n+1)^2 + (j-1)(n+1) + (k-1)]`.
pub fn correlator_tensor_y(p: &SmallQCPoint, w: &TorusWeights) -> Result<Vec<C64>> {
    let r = w.order();
    let mut out = vec![C64::new(0.0, 0.0); r * r * r];
    for i in 1..=r {
        for j in i..=r {
            for k in j..=r {
                let v = correlator_y(i, j, k, p, w)?;
                for (a, b, c) in [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
                    out[((a - 1) * r + (b - 1)) * r + (c - 1)] = v;
                }
            }
        }
    }
    Ok(out)
}

/// Matrix of the classical identification `1_k -> sum_i U0[i,k] gamma_i`:
/// `U0[i,k] = omega^{-ik}(omega^{k/2} - omega^{-k/2})/(n+1)` for `i, k <= n`,
/// and `1_{n+1} -> gamma_{n+1}`.
pub fn u0_map(w: &TorusWeights) -> CMat {
    u0_matrix(w.n)
}

pub(crate) fn u0_matrix(n: usize) -> CMat {
    let nf = n as f64 + 1.0;
    CMat::from_fn(n + 1, n + 1, |i, k| {
        let (i, k) = (i + 1, k + 1);
        if i == n + 1 || k == n + 1 {
            return C64::new(if i == k { 1.0 } else { 0.0 }, 0.0);
        }
        let (ii, kk) = (i as f64, k as f64);
        omega_pow(n, C64::new(-ii * kk, 0.0))
            * (omega_pow(n, C64::new(kk / 2.0, 0.0)) - omega_pow(n, C64::new(-kk / 2.0, 0.0)))
            / nf
    })
}

/// Affine change of variables from the flat coordinates of `X` to those of `Y`:
/// `t_i = 2 pi i/(n+1) + sum_k U0[i,k] x_k` for `i <= n`, `t_{n+1} = x_{n+1}`.
///
/// The constant is `+2 pi i/(n+1)`, so `x = 0` lands on `e^{t_i} = omega` and
/// the mirror chart sends it to the orbifold point `kappa_j = omega^{-j}`.
pub fn change_of_vars(x: &SmallQCPoint) -> Result<SmallQCPoint> {
    if x.side != Side::X {
        return Err(Error::Geometry("change_of_vars takes an X point".into()));
    }
    let n = x.n();
    let u0 = u0_matrix(n);
    let shift = C64::new(0.0, 2.0 * std::f64::consts::PI / (n as f64 + 1.0));
    let mut t: Vec<C64> =
        (1..=n).map(|i| shift + (1..=n).map(|k| u0[(i - 1, k - 1)] * x.t[k - 1]).sum::<C64>()).collect();
    t.push(x.t[n]);
    SmallQCPoint::y(t)
}

/// Correlators of `X`: `correlator_y` at `change_of_vars(x)` pulled back through `U0`.
pub fn correlator_tensor_x(x: &SmallQCPoint, w: &TorusWeights) -> Result<Vec<C64>> {
    let y = change_of_vars(x)?;
    let ty = correlator_tensor_y(&y, w)?;
    let u0 = u0_matrix(w.n);
    Ok(contract3(&ty, &u0))
}

// T'[a,b,c] = sum U[i,a] U[j,b] U[k,c] T[i,j,k], one index at a time
fn contract3(t: &[C64], u: &CMat) -> Vec<C64> {
    let r = u.nrows();
    let idx = |i: usize, j: usize, k: usize| (i * r + j) * r + k;
    let mut s1 = vec![C64::new(0.0, 0.0); r * r * r];
    for a in 0..r {
        for j in 0..r {
            for k in 0..r {
                s1[idx(a, j, k)] = (0..r).map(|i| u[(i, a)] * t[idx(i, j, k)]).sum();
            }
        }
    }
    let mut s2 = vec![C64::new(0.0, 0.0); r * r * r];
    for a in 0..r {
        for b in 0..r {
            for k in 0..r {
                s2[idx(a, b, k)] = (0..r).map(|j| u[(j, b)] * s1[idx(a, j, k)]).sum();
            }
        }
    }
    let mut s3 = vec![C64::new(0.0, 0.0); r * r * r];
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                s3[idx(a, b, c)] = (0..r).map(|k| u[(k, c)] * s2[idx(a, b, k)]).sum();
            }
        }
    }
    s3
}

pub fn correlator_x(k1: usize, k2: usize, k3: usize, x: &SmallQCPoint, w: &TorusWeights) -> Result<C64> {
    for k in [k1, k2, k3] {
        check_index(k, w.n)?;
    }
    let r = w.order();
    Ok(correlator_tensor_x(x, w)?[((k1 - 1) * r + (k2 - 1)) * r + (k3 - 1)])
}

/// Structure constants `C[a][c, b]` of `e_a * e_b = sum_c C[a][c, b] e_c`,
/// raised with the closed-form inverse pairing.
pub fn structure_constants(tensor: &[C64], eta_inv: &CMat) -> Vec<CMat> {
    let r = eta_inv.nrows();
    (0..r)
        .map(|a| CMat::from_fn(r, r, |c, b| (0..r).map(|d| tensor[(a * r + b) * r + d] * eta_inv[(d, c)]).sum()))
        .collect()
}

/// `max |(e_a e_b) e_c - e_a (e_b e_c)|` over all basis triples.
pub fn wdvv_residual(consts: &[CMat]) -> f64 {
    let r = consts.len();
    let mut worst: f64 = 0.0;
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for f in 0..r {
                    let mut lhs = C64::new(0.0, 0.0);
                    let mut rhs = C64::new(0.0, 0.0);
                    for e in 0..r {
                        lhs += consts[a][(e, b)] * consts[e][(f, c)];
                        rhs += consts[b][(e, c)] * consts[a][(f, e)];
                    }
                    worst = worst.max((lhs - rhs).norm());
                }
            }
        }
    }
    worst
}

/// WDVV residual of `Y` at `t`.
pub fn wdvv_residual_y(p: &SmallQCPoint, w: &TorusWeights) -> Result<f64> {
    let t = correlator_tensor_y(p, w)?;
    Ok(wdvv_residual(&structure_constants(&t, &pairing_gamma_inverse(w))))
}

/// WDVV residual of `X` at `x`.
pub fn wdvv_residual_x(x: &SmallQCPoint, w: &TorusWeights) -> Result<f64> {
    let t = correlator_tensor_x(x, w)?;
    Ok(wdvv_residual(&structure_constants(&t, &pairing_x_inverse(w))))
}

/// `max |eta_Y(U0 e_a, U0 e_b) - eta_X(e_a, e_b)|` over basis pairs.
pub fn u0_pairing_residual(w: &TorusWeights) -> f64 {
    let u0 = u0_map(w);
    let lhs = u0.transpose() * pairing_gamma_matrix(w) * &u0;
    crate::max_abs(&(lhs - pairing_x_matrix(w)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }
    fn weights(n: usize) -> TorusWeights {
        TorusWeights::new(n, c(0.7, 0.2), c(1.1, -0.3)).unwrap()
    }

    #[test]
    fn pairings() {
        for n in 1..=4 {
            let w = weights(n);
            let nf = n as f64 + 1.0;
            let un = CohVector::unit(Basis::XTwisted, n, n + 1);
            let v = pairing_x(&un, &un, &w).unwrap();
            assert!((v - 1.0 / (nf * w.alpha1 * w.alpha2 * w.sum())).norm() < 1e-14);
            if n >= 2 {
                let v = pairing_x(&CohVector::unit(Basis::XTwisted, n, 1), &CohVector::unit(Basis::XTwisted, n, n), &w)
                    .unwrap();
                assert!((v - 1.0 / (nf * w.sum())).norm() < 1e-14);
            }
            let p1 = CohVector::unit(Basis::YFixed, n, 1);
            let p2 = CohVector::unit(Basis::YFixed, n, 2);
            let want = 1.0 / ((-nf * w.alpha2) * (-w.alpha1 + n as f64 * w.alpha2) * w.sum());
            assert!((pairing_y(&p1, &p1, &w).unwrap() - want).norm() < 1e-14);
            assert_eq!(pairing_y(&p1, &p2, &w).unwrap(), c(0.0, 0.0));
            assert!(pairing_y(&p1, &un, &w).is_err());
            let id = pairing_x_matrix(&w) * pairing_x_inverse(&w);
            assert!(crate::max_abs(&(id - CMat::identity(n + 1, n + 1))) < 1e-13);
            let id = pairing_gamma_matrix(&w) * pairing_gamma_inverse(&w);
            assert!(crate::max_abs(&(id - CMat::identity(n + 1, n + 1))) < 1e-13);
        }
        let w = weights(2);
        let u = CohVector::unit(Basis::XTwisted, 2, 1);
        assert_eq!(pairing_x(&u, &u, &w).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn localization() {
        let w = weights(1);
        let v = atiyah_bott(1, &w).unwrap();
        assert_eq!(v.coeffs, vec![w.alpha2, w.alpha1]);
        let w = weights(3);
        assert!(atiyah_bott(4, &w).unwrap().coeffs.iter().all(|&x| x == c(1.0, 0.0)));
        assert!(atiyah_bott(0, &w).is_err());
        let g = CohVector::unit(Basis::YGamma, 3, 2);
        assert_eq!(gamma_to_fixed(&g, &w).unwrap(), atiyah_bott(2, &w).unwrap());
    }

    #[test]
    fn triples_against_localization() {
        for n in 1..=6 {
            let w = weights(n);
            for i in 1..=n + 1 {
                for j in 1..=n + 1 {
                    for k in 1..=n + 1 {
                        let d = triple_classical(i, j, k, &w).unwrap() - triple_localization(i, j, k, &w).unwrap();
                        assert!(d.norm() < 1e-10, "n={n} ({i},{j},{k})");
                    }
                }
            }
        }
        let w = weights(1);
        assert!((triple_classical(1, 1, 1, &w).unwrap() + 0.5).norm() < 1e-15);
        assert_eq!(triple_classical(2, 2, 1, &w).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn correlators_y() {
        let w = weights(1);
        let t1 = c(-1.3, 0.4);
        let p = SmallQCPoint::y(vec![t1, c(0.2, 0.0)]).unwrap();
        let e = t1.exp();
        let want = -0.5 - e / (1.0 - e);
        assert!((correlator_y(1, 1, 1, &p, &w).unwrap() - want).norm() < 1e-14);
        assert_eq!(correlator_y(2, 1, 1, &p, &w).unwrap(), triple_classical(2, 1, 1, &w).unwrap());
        let lr = SmallQCPoint::y(vec![c(-800.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(correlator_y(1, 1, 1, &lr, &w).unwrap(), c(-0.5, 0.0));
        assert!(SmallQCPoint::y(vec![c(0.0, 0.0), c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn change_of_vars_constant_and_n1() {
        for n in 1..=4 {
            let x = SmallQCPoint::x(vec![c(0.0, 0.0); n + 1]);
            let t = change_of_vars(&x).unwrap();
            let om = omega_pow(n, c(1.0, 0.0));
            for ti in &t.t[..n] {
                assert!((ti.exp() - om).norm() < 1e-14);
            }
        }
        // n = 1: t_1 = i pi + (-1)(i - (-i))/2 x_1 = i pi - i x_1
        let x1 = c(0.13, 0.0);
        let t = change_of_vars(&SmallQCPoint::x(vec![x1, c(0.0, 0.0)])).unwrap();
        assert!((t.t[0] - c(0.0, std::f64::consts::PI) + c(0.0, 1.0) * x1).norm() < 1e-14);
    }

    #[test]
    fn u0_preserves_pairing() {
        for n in 1..=6 {
            let w = weights(n);
            assert!(u0_pairing_residual(&w) < 1e-10);
            let u0 = u0_map(&w);
            assert_eq!(u0[(n, n)], c(1.0, 0.0));
            assert!((0..n).all(|i| u0[(i, n)] == c(0.0, 0.0)));
        }
        // n = 1: 1_1 -> (omega^{-1}(omega^{1/2} - omega^{-1/2})/2) gamma_1 = -i gamma_1
        let u0 = u0_map(&weights(1));
        assert!((u0[(0, 0)] - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn chen_ruan_limit() {
        // at x = 0 the product with 1_{n+1} is the pairing
        for n in 1..=4 {
            let w = weights(n);
            let x = SmallQCPoint::x(vec![c(0.0, 0.0); n + 1]);
            let eta = pairing_x_matrix(&w);
            for k in 1..=n {
                let v = correlator_x(n + 1, k, n + 1 - k, &x, &w).unwrap();
                assert!((v - eta[(k - 1, n - k)]).norm() < 1e-12, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn wdvv_both_sides() {
        for n in 1..=4 {
            let w = weights(n);
            let t: Vec<C64> = (0..=n).map(|i| c(-1.0 - 0.2 * i as f64, 0.3 * i as f64)).collect();
            let p = SmallQCPoint::y(t).unwrap();
            assert!(wdvv_residual_y(&p, &w).unwrap() < 1e-10);
            let x = SmallQCPoint::x((0..=n).map(|i| c(0.1 * i as f64, -0.05)).collect());
            assert!(wdvv_residual_x(&x, &w).unwrap() < 1e-10);
        }
    }
}

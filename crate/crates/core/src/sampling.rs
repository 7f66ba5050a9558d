//! Seeded samplers for the verification suites.
//!
//! Every suite draws from its own ChaCha stream, so adding cases to one suite
//! never shifts the parameters of another.

use crate::an_geometry::{SmallQCPoint, TorusWeights};
use crate::hurwitz_mirror::{kappa_from_t, KappaPoint, PoleLayout};
use crate::periods::PeriodParams;
use crate::{Error, Result, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Attempts before a rejection loop gives up.
pub const MAX_REJECTIONS: usize = 500;

/// Minimal `|e^{t_l+..+t_m} - 1|` accepted for random `Y` points.
pub const Y_SEPARATION: f64 = 0.1;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    /// Stream `stream` of the generator seeded with `seed`.
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn index(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        self.rng.gen_range(lo..=hi_inclusive)
    }

    pub fn complex_box(&mut self, re: (f64, f64), im: (f64, f64)) -> C64 {
        C64::new(self.uniform(re.0, re.1), self.uniform(im.0, im.1))
    }

    /// Uniform modulus in `[r0, r1]`, uniform argument.
    pub fn complex_annulus(&mut self, r0: f64, r1: f64) -> C64 {
        C64::from_polar(self.uniform(r0, r1), self.uniform(-PI, PI))
    }

    /// Retries `f` on data-dependent rejections (poles, resonances, geometry
    /// and domain guards). Other errors propagate.
    pub fn rejecting<T>(&mut self, mut f: impl FnMut(&mut Self) -> Result<T>) -> Result<T> {
        let mut last = None;
        for _ in 0..MAX_REJECTIONS {
            match f(self) {
                Ok(v) => return Ok(v),
                Err(e @ (Error::Pole { .. } | Error::Resonance(_) | Error::Geometry(_) | Error::Domain(_))) => {
                    last = Some(e)
                }
                Err(e) => return Err(e),
            }
        }
        Err(Error::NonConvergence(format!(
            "no admissible sample in {MAX_REJECTIONS} draws (last: {})",
            last.map(|e| e.to_string()).unwrap_or_default()
        )))
    }

    /// `Re alpha in [0.3, 1.5]`, `Im alpha in [-0.5, 0.5]`.
    pub fn weights(&mut self, n: usize) -> Result<TorusWeights> {
        self.rejecting(|s| {
            let a1 = s.complex_box((0.3, 1.5), (-0.5, 0.5));
            let a2 = s.complex_box((0.3, 1.5), (-0.5, 0.5));
            TorusWeights::new(n, a1, a2)
        })
    }

    /// Weights and `Re z in [2, 5]`, `Im z in [-1, 1]` on the genericity region.
    pub fn period_params(&mut self, n: usize) -> Result<PeriodParams> {
        self.rejecting(|s| {
            let w = s.weights(n)?;
            let z = s.complex_box((2.0, 5.0), (-1.0, 1.0));
            PeriodParams::new(w, z)
        })
    }

    /// A `Y` point whose mirror pole layout passes the separation guards.
    pub fn y_point(&mut self, w: &TorusWeights) -> Result<SmallQCPoint> {
        let n = w.n;
        self.rejecting(|s| {
            let mut t: Vec<C64> = (0..n).map(|_| s.complex_box((-1.2, -0.3), (-0.5, 0.5))).collect();
            t.push(s.complex_box((-0.5, 0.5), (-0.5, 0.5)));
            let p = SmallQCPoint::y(t)?;
            if p.quantum_separation() < Y_SEPARATION {
                return Err(Error::Geometry("too close to a quantum pole".into()));
            }
            PoleLayout::new(&kappa_from_t(&p, C64::new(0.0, 0.0), w)?, w)?;
            Ok(p)
        })
    }

    /// An `X` point with `|x_i| <= 0.2`.
    pub fn x_point(&mut self, n: usize) -> SmallQCPoint {
        SmallQCPoint::x((0..=n).map(|_| self.complex_annulus(0.0, 0.2)).collect())
    }

    /// A point where the Lauricella form of `Pi_target` converges:
    /// `|kappa_target|` in `[2, 3.5]` and the others at most `0.55 |kappa_target|`,
    /// or every `|kappa_j| <= 0.55` when `target = n+1`.
    pub fn kappa_for_target(&mut self, n: usize, target: usize) -> Result<KappaPoint> {
        self.rejecting(|s| {
            let mut v = vec![s.complex_box((0.5, 1.5), (-0.5, 0.5))];
            let big = if target <= n { s.uniform(2.0, 3.5) } else { 1.0 };
            for j in 1..=n {
                if j == target {
                    v.push(C64::from_polar(big, s.uniform(-PI, PI)));
                } else {
                    v.push(s.complex_annulus(0.1 * big, 0.55 * big));
                }
            }
            KappaPoint::new(v)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_independent() {
        let a: Vec<f64> = (0..4).map(|_| 0.0).scan(Sampler::new(7, 1), |s, _| Some(s.uniform(0.0, 1.0))).collect();
        let b: Vec<f64> = (0..4).map(|_| 0.0).scan(Sampler::new(7, 1), |s, _| Some(s.uniform(0.0, 1.0))).collect();
        let c: Vec<f64> = (0..4).map(|_| 0.0).scan(Sampler::new(7, 2), |s, _| Some(s.uniform(0.0, 1.0))).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn samples_respect_ranges() {
        let mut s = Sampler::new(3, 0);
        for n in 1..=4 {
            let p = s.period_params(n).unwrap();
            assert!((2.0..5.0).contains(&p.z.re));
            let y = s.y_point(&p.w).unwrap();
            assert!(y.quantum_separation() >= Y_SEPARATION);
            assert!(s.x_point(n).t.iter().all(|x| x.norm() <= 0.2));
            let k = s.kappa_for_target(n, 1).unwrap();
            assert!(k.kappa(1).norm() >= 2.0);
        }
    }

    #[test]
    fn rejection_gives_up() {
        let mut s = Sampler::new(0, 0);
        let r: Result<()> = s.rejecting(|_| Err(Error::Domain("never".into())));
        assert!(matches!(r, Err(Error::NonConvergence(_))));
        let r: Result<()> = s.rejecting(|_| Err(Error::Assertion("bug".into())));
        assert!(matches!(r, Err(Error::Assertion(_))));
    }
}

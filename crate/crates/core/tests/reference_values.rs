//! Values frozen from 30-digit mpmath runs (hyp2f1, appellf1, quad on the
//! Euler integral, loggamma, gamma).

use ancrc_core::hypergeom::{
    appell_f1, gauss_2f1_continued, gauss_2f1_series, lauricella_fd, GaussParams, LauricellaParams,
};
use ancrc_core::numerics::{gamma, log_gamma};
use ancrc_core::{PrecisionPolicy, C64};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn close(got: C64, want: C64, rel: f64) {
    assert!((got - want).norm() <= rel * want.norm(), "got {got}, want {want}");
}

fn gauss() -> GaussParams {
    GaussParams::new(c(0.3, 0.2), c(0.45, -0.1), c(1.7, 0.3)).unwrap()
}

#[test]
fn gauss_inside_the_disc() {
    let v = gauss_2f1_series(&gauss(), c(0.5, 0.3), &PrecisionPolicy::default()).unwrap();
    close(v, c(1.043_195_368_361_372_1, 0.052_887_255_679_587_88), 1e-12);
}

#[test]
fn gauss_continued() {
    let pol = PrecisionPolicy::default();
    let v = gauss_2f1_continued(&gauss(), c(-1.2, 0.9), &pol).unwrap();
    close(v, c(0.900_707_945_810_199_6, 0.026_991_435_681_354_376), 1e-10);
    let v = gauss_2f1_continued(&gauss(), c(1.1, 0.9), &pol).unwrap();
    close(v, c(1.020_473_430_184_905_7, 0.169_994_772_979_880_47), 1e-10);
}

#[test]
fn appell_outside_the_polydisc() {
    let v = appell_f1(
        c(0.4, 0.1),
        c(0.3, -0.2),
        c(0.25, 0.15),
        c(1.6, 0.2),
        c(-1.3, 0.4),
        c(0.8, -0.5),
        &PrecisionPolicy::default(),
    )
    .unwrap();
    close(v, c(1.011_121_413_741_341_2, 0.051_454_293_854_373_4), 1e-10);
}

#[test]
fn lauricella_three_variables() {
    let p = LauricellaParams::new(c(0.4, 0.1), vec![c(0.3, -0.2), c(0.25, 0.15), c(-0.1, 0.2)], c(1.6, 0.2)).unwrap();
    let v = lauricella_fd(&p, &[c(-1.3, 0.4), c(0.8, -0.5), c(2.0, 1.0)], &PrecisionPolicy::default()).unwrap();
    close(v, c(0.870_767_099_509_975_6, 0.019_395_713_878_871_198), 1e-10);
}

#[test]
fn gamma_far_and_left() {
    let v = log_gamma(c(30.0, 40.0)).unwrap();
    close(v, c(49.232_808_494_070_3, 143.834_795_822_664_82), 1e-13);
    let v = gamma(c(-2.5, 0.1)).unwrap();
    close(v, c(-0.896_507_701_199_758_8, -0.099_318_350_500_568_56), 1e-12);
}

//! Acceptance criteria as groups of verification cases.
//!
//! Criteria 1 to 12 are each a set of `suite/case_id` prefixes; a criterion
//! holds when it has cases and every one of them passes at the tolerance
//! recorded in the report. Criterion 13 (reproducibility and run time) needs
//! two runs and is scored by the caller.

use ancrc_core::verify::{CaseRecord, Report};

pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    pub prefixes: &'static [&'static str],
}

pub const CRITERIA: [Criterion; 12] = [
    Criterion { id: 1, title: "A B = s U_closed with s = omega^a", prefixes: &["periods/factorization/"] },
    Criterion {
        id: 2,
        title: "U symplectic, pairing preserved at |z| = 1e6",
        prefixes: &["periods/symplectic/", "periods/large_z_pairing/"],
    },
    Criterion { id: 3, title: "mirror residues equal correlators", prefixes: &["mirror/y/", "mirror/x/"] },
    Criterion {
        id: 4,
        title: "ineffective O_Z factorization and column sums",
        prefixes: &["ocrc/oz_ineffective/", "ocrc/oz_column_sums/"],
    },
    Criterion { id: 5, title: "effective O_Z delta row", prefixes: &["ocrc/oz_effective/"] },
    Criterion { id: 6, title: "Iritani route", prefixes: &["ocrc/iritani/"] },
    Criterion { id: 7, title: "disk lemma", prefixes: &["ocrc/disk_lemma/"] },
    Criterion {
        id: 8,
        title: "hypergeometric stack",
        prefixes: &[
            "hypergeom/series_euler/",
            "hypergeom/gauss_connection/",
            "hypergeom/toscano/",
            "hypergeom/fd_asymptotics",
        ],
    },
    Criterion { id: 9, title: "Appell system residuals", prefixes: &["hypergeom/appell_system/"] },
    Criterion { id: 10, title: "orbifold-point values", prefixes: &["periods/orbifold_values/"] },
    Criterion {
        id: 11,
        title: "n = 1 monodromy and the conifold limit",
        prefixes: &["monodromy/lr1/", "monodromy/cp/", "monodromy/lr2/", "monodromy/cp_b_limit/"],
    },
    Criterion { id: 12, title: "WDVV on both sides", prefixes: &["cohomology/wdvv_"] },
];

#[derive(Debug, Clone, PartialEq)]
pub struct Score {
    pub id: usize,
    pub title: &'static str,
    pub total: usize,
    pub failed: Vec<String>,
    /// largest `max_abs_err / tolerance`, infinite when a case errored
    pub worst: f64,
}

impl Score {
    pub fn pass(&self) -> bool {
        self.total > 0 && self.failed.is_empty()
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "{} {:>2}. {}: {}/{} cases within tolerance, worst err/tol {:.3e}",
            if self.pass() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.total - self.failed.len(),
            self.total,
            self.worst
        );
        if !self.failed.is_empty() {
            let shown: Vec<&str> = self.failed.iter().take(3).map(String::as_str).collect();
            let more = if self.failed.len() > 3 { ", ..." } else { "" };
            s.push_str(&format!(" (failing: {}{more})", shown.join(", ")));
        }
        s
    }
}

fn full_id(c: &CaseRecord) -> String {
    format!("{}/{}", c.suite, c.case_id)
}

pub fn score(report: &Report, c: &Criterion) -> Score {
    let mut s = Score { id: c.id, title: c.title, total: 0, failed: Vec::new(), worst: 0.0 };
    for case in &report.cases {
        let id = full_id(case);
        if !c.prefixes.iter().any(|p| id.starts_with(p)) {
            continue;
        }
        s.total += 1;
        let ratio = case.max_abs_err.map_or(f64::INFINITY, |e| e / case.tolerance);
        s.worst = s.worst.max(ratio);
        if !case.pass {
            s.failed.push(id);
        }
    }
    s
}

pub fn score_all(report: &Report) -> Vec<Score> {
    CRITERIA.iter().map(|c| score(report, c)).collect()
}

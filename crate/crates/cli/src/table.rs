//! `ancrc table`: matrices and correlator grids at user-supplied parameters.

use crate::parse::{complex_sig, sig};
use ancrc_core::an_geometry::{correlator_x, correlator_y, SmallQCPoint, TorusWeights};
use ancrc_core::monodromy::{numeric_monodromy_ab, paper_matrices_ab, standard_loops, tr_det};
use ancrc_core::open_crc::{oz_effective_report, oz_ineffective_report};
use ancrc_core::periods::{matrix_a, matrix_a_inv, matrix_b, u_closed_form, PeriodParams};
use ancrc_core::{CMat, Result, C64};
use serde_json::json;

/// A labelled complex matrix.
pub struct Table {
    pub title: String,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<C64>>,
}

impl Table {
    fn from_matrix(title: impl Into<String>, m: &CMat, row: &str, col: &str) -> Self {
        Table {
            title: title.into(),
            rows: (1..=m.nrows()).map(|i| format!("{row}{i}")).collect(),
            cols: (1..=m.ncols()).map(|k| format!("{col}{k}")).collect(),
            entries: (0..m.nrows()).map(|i| (0..m.ncols()).map(|k| m[(i, k)]).collect()).collect(),
        }
    }
}

pub fn u_matrix(p: &PeriodParams) -> Result<Vec<Table>> {
    let u = u_closed_form(p)?;
    Ok(vec![Table::from_matrix(format!("U(z), n = {}", p.n()), &u.entries, "P", "1_")])
}

pub fn a_matrices(p: &PeriodParams) -> Result<Vec<Table>> {
    let a = matrix_a(p)?;
    let mut title = "A".to_string();
    if a.numeric_fallback {
        title.push_str(" (numeric inverse of A^-1)");
    }
    Ok(vec![
        Table::from_matrix("A^-1", &matrix_a_inv(p)?.entries, "Pi_", "P"),
        Table::from_matrix(title, &a.entries, "P", "Pi_"),
        Table::from_matrix("B", &matrix_b(p)?.entries, "Pi_", "1_"),
    ])
}

pub fn oz(w: &TorusWeights, effective: bool, d: usize) -> Result<Vec<Table>> {
    if effective {
        let (o, err) = oz_effective_report(d, w)?;
        let title = format!(
            "O at z = -(n+1) alpha_1/d, effective leg, d = {d} (max deviation from the delta row {})",
            sig(err, 3)
        );
        Ok(vec![Table::from_matrix(title, &o, "P", "1_")])
    } else {
        let r = oz_ineffective_report(d, w)?;
        let n = w.n;
        let measured = CMat::from_fn(n + 1, n + 1, |i, k| r.o[(i, k)] / r.winding[i]);
        Ok(vec![
            Table::from_matrix(format!("O / winding factor, ineffective leg, d = {d}"), &measured, "P", "1_"),
            Table::from_matrix("O_Z", &r.oz, "P", "1_"),
        ])
    }
}

pub fn correlators(w: &TorusWeights, point: &SmallQCPoint) -> Result<Vec<Table>> {
    let n = w.n;
    let mut out = Vec::new();
    for i in 1..=n + 1 {
        let mut m = CMat::zeros(n + 1, n + 1);
        for j in 1..=n + 1 {
            for k in 1..=n + 1 {
                m[(j - 1, k - 1)] = match point.side {
                    ancrc_core::an_geometry::Side::Y => correlator_y(i, j, k, point, w)?,
                    ancrc_core::an_geometry::Side::X => correlator_x(i, j, k, point, w)?,
                };
            }
        }
        let label = if point.side == ancrc_core::an_geometry::Side::Y { "gamma" } else { "1_" };
        out.push(Table::from_matrix(format!("<{label}{i}, ., .>"), &m, label, label));
    }
    Ok(out)
}

pub fn monodromy(a: C64, b: C64) -> Result<Vec<Table>> {
    let paper = paper_matrices_ab(a, b);
    let [l0, l1, linf] = standard_loops();
    let mut out = Vec::new();
    for (name, m, l) in [("LR1", &paper.lr1, l0), ("CP", &paper.cp, l1), ("LR2", &paper.lr2, linf)] {
        out.push(Table::from_matrix(format!("{name} as printed"), m, "r", "c"));
        let num = numeric_monodromy_ab(&l, a, b)?;
        out.push(Table::from_matrix(format!("{name} numeric transport"), &num, "r", "c"));
        let (t0, d0) = tr_det(m);
        let (t1, d1) = tr_det(&num);
        out.push(Table {
            title: format!("{name} invariants"),
            rows: vec!["printed".into(), "numeric".into()],
            cols: vec!["trace".into(), "det".into()],
            entries: vec![vec![t0, d0], vec![t1, d1]],
        });
    }
    Ok(out)
}

pub fn render_text(tables: &[Table]) -> String {
    let mut s = String::new();
    for t in tables {
        s.push_str(&t.title);
        s.push('\n');
        let cells: Vec<Vec<String>> = t.entries.iter().map(|r| r.iter().map(|&z| complex_sig(z)).collect()).collect();
        let lw = t.rows.iter().map(String::len).max().unwrap_or(0);
        let cw = cells.iter().flatten().map(String::len).chain(t.cols.iter().map(String::len)).max().unwrap_or(0);
        s.push_str(&format!("{:lw$}", ""));
        for c in &t.cols {
            s.push_str(&format!("  {c:>cw$}"));
        }
        s.push('\n');
        for (label, row) in t.rows.iter().zip(&cells) {
            s.push_str(&format!("{label:lw$}"));
            for v in row {
                s.push_str(&format!("  {v:>cw$}"));
            }
            s.push('\n');
        }
        s.push('\n');
    }
    s
}

pub fn render_csv(tables: &[Table]) -> std::result::Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["table", "row", "col", "re", "im", "value"])?;
    for t in tables {
        for (r, row) in t.rows.iter().zip(&t.entries) {
            for (c, z) in t.cols.iter().zip(row) {
                w.write_record([&t.title, r, c, &sig(z.re, 6), &sig(z.im, 6), &complex_sig(*z)])?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn render_json(tables: &[Table]) -> String {
    let v: Vec<_> = tables
        .iter()
        .map(|t| {
            json!({
                "title": t.title,
                "rows": t.rows,
                "cols": t.cols,
                "entries": t.entries.iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        })
        .collect();
    serde_json::to_string_pretty(&v).expect("tables serialize")
}

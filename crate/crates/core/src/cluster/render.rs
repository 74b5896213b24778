//! Plain-text rendering of a [`ClusterReport`].

use std::fmt::Write;

use crate::cluster::{ClusterReport, ExtTables};

fn table(out: &mut String, title: &str, t: &ExtTables, values: &[Vec<usize>]) {
    let _ = writeln!(out, "{title}");
    let width = t.rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let _ = write!(out, "  {:width$} ", "");
    for j in 0..t.cols.len() {
        let _ = write!(out, "{:>3}", j);
    }
    out.push('\n');
    for (i, row) in values.iter().enumerate() {
        let _ = write!(out, "  {:width$} ", t.rows[i]);
        for d in row {
            if *d == 0 {
                out.push_str("  .");
            } else {
                let _ = write!(out, "{d:>3}");
            }
        }
        out.push('\n');
    }
}

pub fn render_text(r: &ClusterReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algebra   {}", r.algebra);
    let _ = writeln!(out, "field     {}", r.field);
    if let Some(l) = &r.lambda {
        let _ = writeln!(out, "lambda    {l}");
    }
    let _ = writeln!(out, "Gamma     {{{}}}", r.gamma.join(", "));
    let _ = writeln!(out, "summands of M ({}):", r.summands.len());
    for (i, s) in r.summands.iter().enumerate() {
        let _ = writeln!(out, "  {i:>3}  {:<24} dims {:?}", s.label, s.dims);
    }
    if r.ext_tables.is_zero() {
        let _ = writeln!(out, "Ext^1(M, M) = Ext^2(M, M) = 0");
    } else {
        table(&mut out, "Ext^1 over summands:", &r.ext_tables, &r.ext_tables.ext1);
        table(&mut out, "Ext^2 over summands:", &r.ext_tables, &r.ext_tables.ext2);
    }
    let _ = writeln!(out, "candidates ({}):", r.candidates.len());
    for c in &r.candidates {
        let place = match &c.matches {
            Some(s) => format!("= {s}"),
            None => "not in add(M)".to_string(),
        };
        let _ = writeln!(out, "  {:<24} x{}  {}", c.label, c.multiplicity, place);
    }
    if r.orthogonality.is_zero() {
        let _ = writeln!(out, "Ext^1(M, X) = Ext^2(M, X) = 0 for every candidate X");
    } else {
        table(&mut out, "Ext^1(M, X):", &r.orthogonality, &r.orthogonality.ext1);
        table(&mut out, "Ext^2(M, X):", &r.orthogonality, &r.orthogonality.ext2);
    }
    let _ = writeln!(out, "verdict   {}", r.verdict);
    if let Some(e) = r.expected {
        let _ = writeln!(out, "expected  {e}");
    }
    if let Some(w) = &r.witness {
        let _ = writeln!(
            out,
            "witness   0 -> {} -> E -> {} -> 0, dim Ext^1 = {}, dim E = {:?}{}",
            w.right,
            w.left,
            w.ext1,
            w.middle_dims,
            if w.non_split { ", non-split" } else { "" }
        );
    }
    if let Some(a) = &r.audit {
        let _ = writeln!(out, "audit     {}", if a.ok { "ok" } else { "FAILED" });
        let periods: Vec<String> = a
            .periodicity
            .iter()
            .map(|p| format!("{}:{}", p.vertex, p.period.map_or("-".to_string(), |k| k.to_string())))
            .collect();
        let _ = writeln!(out, "  periods of simples  {}", periods.join(" "));
        let _ = writeln!(
            out,
            "  Ext symmetry        {} pairs, {}",
            a.ext_symmetry.pairs.len(),
            if a.ext_symmetry.ok { "ok" } else { "FAILED" }
        );
        let _ = writeln!(out, "  Hom vs simples      {} checks, {} failures", a.simple_hom.checked, a.simple_hom.failures.len());
        let _ = writeln!(out, "  Hom(Omega X, S_a)   {} checks, {} failures", a.omega_top.checked, a.omega_top.failures.len());
        if let Some(c) = &a.chain {
            let e = &c.e_lambda_e;
            let _ = writeln!(
                out,
                "  eAe                 dim {}, generated {}, {}",
                e.dim,
                e.generated_dim,
                if e.ok { "ok" } else { "FAILED" }
            );
            let shapes = c.waists.iter().chain(&c.uniserials).filter(|s| s.ok).count();
            let _ = writeln!(out, "  syzygy shapes       {}/{} ok", shapes, c.waists.len() + c.uniserials.len());
        }
    }
    out
}

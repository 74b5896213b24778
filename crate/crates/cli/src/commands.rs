use std::process::ExitCode;

use serde_json::{json, Value};
use thiserror::Error;
use wsa_core::algebra::{check_symmetric, AlgebraError};
use wsa_core::cluster::{
    analyze, audit, render_text, AuditOptions, AuditReport, ClusterError, ClusterOptions, ClusterReport, Verdict,
};
use wsa_core::families::FamilyError;
use wsa_core::modules::{ExtError, ExtSource, IsoOptions};
use wsa_core::parallel::Exec;
use wsa_core::specfile::SpecError;

use crate::expr::{self, ExprError};
use crate::target::Target;
use crate::{Cli, Command, GlobalOpts};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn iso_options(opts: &GlobalOpts) -> IsoOptions {
    IsoOptions {
        seed: opts.seed,
        ..Default::default()
    }
}

fn exec(opts: &GlobalOpts) -> Exec {
    Exec::from_jobs(opts.jobs)
}

pub fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Validate { target } => validate(&Target::resolve(target, opts)?, opts),
        Command::Algebra { target, dump } => algebra(&Target::resolve(target, opts)?, *dump, opts),
        Command::Ext {
            target,
            left,
            right,
            degree,
        } => ext(&Target::resolve(target, opts)?, left, right, *degree, opts),
        Command::ClusterCheck { target, expect, audit } => {
            cluster_check(&Target::resolve(target, opts)?, expect.as_deref(), *audit, opts)
        }
        Command::Audit { target, pairs } => run_audit(&Target::resolve(target, opts)?, *pairs, opts),
        Command::Export { target, output } => {
            let t = Target::resolve(target, opts)?;
            let text = t.spec.to_toml()?;
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn validate(t: &Target, opts: &GlobalOpts) -> Result<ExitCode, CliError> {
    let td = t.data()?;
    let cls = match td.validate() {
        Ok(c) => c,
        Err(e) => {
            if opts.json {
                let violations: Vec<String> = e.0.iter().map(|v| v.to_string()).collect();
                print_json(&json!({ "id": t.id, "valid": false, "violations": violations }));
            } else {
                println!("{}: invalid", t.id);
                for v in &e.0 {
                    println!("  {v}");
                }
            }
            return Ok(ExitCode::from(1));
        }
    };
    let q = &td.quiver;
    let names = |arrows: &[usize]| arrows.iter().map(|&a| q.arrows[a].name.clone()).collect::<Vec<_>>();
    let g_cycles: Vec<Value> = cls
        .g_cycles
        .iter()
        .map(|c| {
            json!({
                "arrows": names(c),
                "m": cls.m[c[0]],
                "n": cls.n[c[0]],
                "c": td.params[c[0]].to_string(),
            })
        })
        .collect();
    let virtual_arrows: Vec<usize> = (0..q.num_arrows()).filter(|&a| cls.is_virtual[a]).collect();
    let gamma: Vec<String> = cls.gamma_vertices(&td).iter().map(|&v| q.vertices[v].clone()).collect();
    let dims: Vec<usize> = (0..q.num_vertices()).map(|v| cls.vertex_dimension(&td, v)).collect();
    if opts.json {
        print_json(&json!({
            "id": t.id,
            "valid": true,
            "field": t.field.to_string(),
            "vertices": q.vertices,
            "f_cycles": cls.f_cycles.iter().map(|c| names(c)).collect::<Vec<_>>(),
            "g_cycles": g_cycles,
            "virtual": names(&virtual_arrows),
            "gamma": gamma,
            "vertex_dims": dims,
            "bipartite": q.is_bipartite(),
        }));
    } else {
        println!("{}: valid triangulation data over {}", t.id, t.field);
        println!("vertices   {}", q.vertices.join(" "));
        println!("f          {}", cls.cycle_string(&td, &cls.f_cycles));
        println!("g          {}", cls.cycle_string(&td, &cls.g_cycles));
        for c in &cls.g_cycles {
            println!(
                "  ({})  m={} n={} c={}",
                q.word_name(c),
                cls.m[c[0]],
                cls.n[c[0]],
                td.params[c[0]]
            );
        }
        println!("virtual    {}", names(&virtual_arrows).join(" "));
        println!("Gamma      {{{}}}", gamma.join(", "));
        let d: Vec<String> = q.vertices.iter().zip(&dims).map(|(v, d)| format!("{v}:{d}")).collect();
        println!("dim e_iA   {}", d.join(" "));
    }
    Ok(ExitCode::SUCCESS)
}

fn algebra(t: &Target, dump: bool, opts: &GlobalOpts) -> Result<ExitCode, CliError> {
    let w = t.algebra()?;
    let alg = &w.algebra;
    let q = alg.quiver();
    let dims = w.vertex_dims();
    let expected = w.expected_vertex_dims();
    let sym = check_symmetric(alg);
    let basis: Vec<Value> = if dump {
        (0..alg.dim())
            .map(|b| {
                let word = alg.basis_word(b);
                let name = if word.arrows.is_empty() {
                    format!("e_{}", q.vertices[word.source])
                } else {
                    q.word_name(&word.arrows)
                };
                json!({ "source": q.vertices[word.source], "target": q.vertices[word.target], "path": name })
            })
            .collect()
    } else {
        Vec::new()
    };
    let gabriel: Vec<String> = (0..q.num_arrows())
        .filter(|&a| alg.gabriel_arrows()[a])
        .map(|a| q.arrows[a].name.clone())
        .collect();
    if opts.json {
        let mut v = json!({
            "id": t.id,
            "field": t.field.to_string(),
            "dim": alg.dim(),
            "vertices": q.vertices,
            "vertex_dims": dims,
            "expected_vertex_dims": expected,
            "cartan": alg.cartan(),
            "gabriel_arrows": gabriel,
            "symmetric": sym,
        });
        if dump {
            v["basis"] = Value::Array(basis);
        }
        print_json(&v);
    } else {
        println!("{} over {}: dimension {}", t.id, t.field, alg.dim());
        println!("Gabriel arrows  {}", gabriel.join(" "));
        for (i, v) in q.vertices.iter().enumerate() {
            println!("  dim e_{v}A = {:<3} (formula {})", dims[i], expected[i]);
        }
        println!("Cartan matrix");
        for row in alg.cartan() {
            println!("  {}", row.iter().map(|d| format!("{d:>2}")).collect::<Vec<_>>().join(" "));
        }
        println!(
            "socle dims {:?}; symmetric form: {} (rank {} of {}{})",
            sym.socle_dims,
            if sym.symmetric { "yes" } else { "no" },
            sym.form_rank,
            sym.dim,
            if sym.socle_form { ", socle form" } else { "" }
        );
        if dump {
            println!("basis");
            for b in &basis {
                println!("  {} -> {}  {}", b["source"], b["target"], b["path"].as_str().unwrap_or(""));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn ext(t: &Target, left: &str, right: &str, degree: usize, opts: &GlobalOpts) -> Result<ExitCode, CliError> {
    if degree == 0 {
        return Err(ExtError::DegreeZero.into());
    }
    let l = expr::parse(left)?;
    let r = expr::parse(right)?;
    let w = t.algebra()?;
    let x = l.build(&w.algebra)?;
    let y = r.build(&w.algebra)?;
    let d = ExtSource::new(&x, degree).ext(&y, degree)?;
    if opts.json {
        print_json(&json!({
            "id": t.id,
            "left": l.to_string(),
            "right": r.to_string(),
            "left_dims": x.dims(),
            "right_dims": y.dims(),
            "degree": degree,
            "dim": d,
        }));
    } else {
        println!("dim Ext^{degree}({l}, {r}) = {d}");
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_verdict(s: &str) -> Result<Verdict, CliError> {
    match s {
        "three-cluster-tilting" => Ok(Verdict::ThreeClusterTilting),
        "fails-with-witness" => Ok(Verdict::FailsWithWitness),
        "inconclusive" => Ok(Verdict::Inconclusive),
        _ => Err(CliError::Input(format!("unknown verdict `{s}`"))),
    }
}

fn cluster_check(t: &Target, expect: Option<&str>, with_audit: bool, opts: &GlobalOpts) -> Result<ExitCode, CliError> {
    let expected = match (expect, &t.preset) {
        (Some(s), _) => Some(parse_verdict(s)?),
        (None, Some(p)) => Some(if p.expected_cluster_tilting() {
            Verdict::ThreeClusterTilting
        } else {
            Verdict::FailsWithWitness
        }),
        (None, None) => None,
    };
    let w = t.algebra()?;
    let copts = ClusterOptions {
        exec: exec(opts),
        iso: iso_options(opts),
    };
    let analysis = analyze(&w.algebra, &w.gamma(), &copts)?;
    let mut report = ClusterReport::new(&t.id, t.lambda(), &analysis);
    report.expected = expected;
    if with_audit {
        report.audit = Some(audit(&analysis, t.chain().as_ref(), &audit_options(opts, 24))?);
    }
    if opts.json {
        print_json(&report);
    } else {
        print!("{}", render_text(&report));
    }
    let matches = expected.is_none_or(|e| e == report.verdict);
    let audit_ok = report.audit.as_ref().is_none_or(|a| a.ok);
    Ok(if matches && audit_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn audit_options(opts: &GlobalOpts, pairs: usize) -> AuditOptions {
    AuditOptions {
        seed: opts.seed,
        pairs,
        exec: exec(opts),
        iso: iso_options(opts),
    }
}

fn run_audit(t: &Target, pairs: usize, opts: &GlobalOpts) -> Result<ExitCode, CliError> {
    let w = t.algebra()?;
    let copts = ClusterOptions {
        exec: exec(opts),
        iso: iso_options(opts),
    };
    let analysis = analyze(&w.algebra, &w.gamma(), &copts)?;
    let report: AuditReport = audit(&analysis, t.chain().as_ref(), &audit_options(opts, pairs))?;
    if opts.json {
        print_json(&json!({ "id": t.id, "audit": report }));
    } else {
        println!("{}: audit {}", t.id, if report.ok { "ok" } else { "FAILED" });
        for p in &report.periodicity {
            println!(
                "  Omega^k S({}) dims {:?}, period {}",
                p.vertex,
                p.dims,
                p.period.map_or("> 4".to_string(), |k| k.to_string())
            );
        }
        let s = &report.ext_symmetry;
        let bad = s.pairs.iter().filter(|p| p.ext2 != p.ext1_swapped).count();
        println!(
            "  Ext^2(X,Y) = Ext^1(Y,X) on {} sampled pairs (seed {}): {} failures",
            s.pairs.len(),
            s.seed,
            bad
        );
        println!(
            "  Hom(S_v, X) = Hom(X, S_v) = 0 for v outside Gamma: {} checks, {} failures",
            report.simple_hom.checked,
            report.simple_hom.failures.len()
        );
        println!(
            "  Hom(Omega X, S_a) = Hom(S_a, Omega^-1 X) = 0: {} checks, {} failures",
            report.omega_top.checked,
            report.omega_top.failures.len()
        );
        if let Some(c) = &report.chain {
            for sh in c.waists.iter().chain(&c.uniserials) {
                let layers: Vec<String> = sh.layers.iter().map(|l| l.join("+")).collect();
                println!("  {:<20} {} [{}]", sh.module, if sh.ok { "ok" } else { "MISMATCH" }, layers.join(" | "));
            }
            let e = &c.e_lambda_e;
            println!(
                "  eAe: dim {}, generated by x_i, y_i: {}; corrections {:?}; relations {}",
                e.dim,
                e.generated_dim == e.dim,
                e.corrections,
                if e.ok { "ok" } else { "FAILED" }
            );
        }
    }
    Ok(if report.ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

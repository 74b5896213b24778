use wsa_core::cluster::{analyze, audit, check_lambda_stability, AuditOptions, ClusterOptions, ClusterReport, SummandKind, Verdict};
use wsa_core::families::{Preset, PresetArgs};
use wsa_core::field::Field;
use wsa_core::modules::{ext_dim, uniserial};
use wsa_core::parallel::Exec;

fn preset(name: &str, args: PresetArgs) -> Preset {
    Preset::from_name(name, &args).unwrap()
}

fn report(p: &Preset, field: Field, exec: Exec) -> ClusterReport {
    let w = p.build(field).unwrap();
    let opts = ClusterOptions {
        exec,
        ..Default::default()
    };
    let a = analyze(&w.algebra, &w.gamma(), &opts).unwrap();
    ClusterReport::new(&p.id(), Some(p.lambda().to_string()), &a)
}

#[test]
fn summand_counts() {
    for (name, count, simples) in [("triangle", 6, 1), ("spherical", 12, 2), ("n-spherical", 18, 3)] {
        let r = report(&preset(name, PresetArgs::default()), Field::Rational, Exec::Sequential);
        assert_eq!(r.summands.len(), count, "{name}");
        assert_eq!(r.summands.len(), 2 * r.vertices.len());
        let s = r.summands.iter().filter(|s| s.kind == SummandKind::Simple).count();
        assert_eq!(s, simples, "{name}");
    }
}

#[test]
fn triangle_candidates() {
    let r = report(&preset("triangle", PresetArgs::default()), Field::Rational, Exec::Sequential);
    let labels: Vec<&str> = r.candidates.iter().map(|c| c.label.as_str()).collect();
    assert_eq!(labels, ["U(2)", "U(2,3,2)", "U(2,1,2)"]);
    assert!(r.candidates.iter().all(|c| c.in_add_m));
    assert_eq!(r.verdict, Verdict::ThreeClusterTilting);
    assert!(r.witness.is_none());
}

#[test]
fn verdicts_match_expectations() {
    let cases = [
        ("triangular", PresetArgs { k: Some(1), ..Default::default() }),
        ("triangular", PresetArgs { k: Some(2), ..Default::default() }),
        ("n-spherical", PresetArgs { n: Some(2), ..Default::default() }),
        ("n-spherical", PresetArgs { n: Some(4), ..Default::default() }),
        ("mixed", PresetArgs::default()),
    ];
    for (name, args) in cases {
        let p = preset(name, args);
        let r = report(&p, Field::Rational, Exec::Sequential);
        let ct = r.verdict == Verdict::ThreeClusterTilting;
        assert_eq!(ct, p.expected_cluster_tilting(), "{}", p.id());
        assert!(r.ext_tables.is_zero(), "{}", p.id());
        assert!(r.orthogonality.is_zero(), "{}", p.id());
        if !ct {
            let w = r.witness.as_ref().unwrap();
            assert!(w.non_split && w.ext1 >= 1);
        }
    }
}

#[test]
fn n_spherical_extra_candidates() {
    let p = preset("n-spherical", PresetArgs::default());
    let r = report(&p, Field::Rational, Exec::Sequential);
    let extra: Vec<&str> = r
        .candidates
        .iter()
        .filter(|c| !c.in_add_m)
        .map(|c| c.label.as_str())
        .collect();
    for i in 1..=3 {
        let next = i % 3 + 1;
        let prev = (i + 1) % 3 + 1;
        assert!(extra.contains(&format!("U(a{i},b{i},a{next})").as_str()));
        assert!(extra.contains(&format!("U(a{i},d{prev},a{prev})").as_str()));
    }
    assert_eq!(extra.len(), 6);
    // every extra copy appears in two of the U_ν
    assert!(r.candidates.iter().filter(|c| !c.in_add_m).all(|c| c.multiplicity == 2));
}

#[test]
fn triangular_self_extension() {
    let w = preset("triangular", PresetArgs::default()).build(Field::Rational).unwrap();
    let q = w.algebra.quiver();
    let v = |s: &str| q.vertex(s).unwrap();
    let u212 = uniserial(&w.algebra, &[v("2"), v("1"), v("2")]).unwrap();
    let u232 = uniserial(&w.algebra, &[v("2"), v("3"), v("2")]).unwrap();
    assert_eq!(ext_dim(&u212, &u232, 1).unwrap(), 1);
    assert_eq!(ext_dim(&u232, &u212, 1).unwrap(), 1);
}

#[test]
fn lambda_and_field_stability() {
    for name in ["triangle", "spherical", "n-spherical"] {
        let mut reports = Vec::new();
        for l in ["2", "3", "-1"] {
            let p = preset(
                name,
                PresetArgs {
                    lambda: Some(l.into()),
                    ..Default::default()
                },
            );
            reports.push(report(&p, Field::Rational, Exec::Sequential));
            reports.push(report(&p, Field::Prime(101), Exec::Sequential));
        }
        check_lambda_stability(&reports).unwrap();
    }
}

#[test]
fn parallel_matches_sequential() {
    let p = preset("n-spherical", PresetArgs::default());
    let a = report(&p, Field::Rational, Exec::Sequential);
    let b = report(&p, Field::Rational, Exec::Parallel);
    assert_eq!(a, b);
}

#[test]
fn audits_pass() {
    for name in ["triangle", "spherical", "n-spherical", "mixed"] {
        let p = preset(name, PresetArgs::default());
        let w = p.build(Field::Rational).unwrap();
        let a = analyze(&w.algebra, &w.gamma(), &ClusterOptions::default()).unwrap();
        let r = audit(&a, p.chain().as_ref(), &AuditOptions::default()).unwrap();
        assert!(r.ok, "{name}");
        assert!(r.ext_symmetry.pairs.len() >= 20);
        assert_eq!(r.chain.is_some(), matches!(name, "spherical" | "n-spherical"));
    }
}

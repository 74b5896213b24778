//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so that the lines always reach stdout.
//! The process fails if a criterion fails that is not listed in `KNOWN_RED`.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};

use wsa_core::algebra::{check_symmetric, presentations_agree, search_normalization, WeightedSurfaceAlgebra};
use wsa_core::cluster::{
    analyze, audit, build_m, enumerate_star_candidates, AuditOptions, ClusterAnalysis, ClusterOptions, Verdict,
};
use wsa_core::families::{Preset, PresetArgs, SPHERICAL_RELATIONS, TRIANGLE_RELATIONS};
use wsa_core::field::Field;
use wsa_core::modules::{
    composition_word, ext1_witness, ext_by_resolution, ext_by_stable_hom, ext_dim, is_isomorphic, omega_power,
    uniserial, IsoOptions, Representation,
};
use wsa_core::parallel::Exec;

/// Criteria expected to stay red, with the reason.
const KNOWN_RED: &[(u32, &str)] = &[(
    9,
    "with y_i = rho_i delta_i the products x_i y_i and y_i x_i are nonzero socle elements; \
     the zero relations hold only after replacing y_i by y_i + t x_{i+1}...",
)];

static EXT_COUNT: AtomicUsize = AtomicUsize::new(0);
/// Ext computations made in criteria 6 to 8.
static EXT_6_TO_8: AtomicUsize = AtomicUsize::new(0);

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn preset(name: &str, args: PresetArgs) -> Preset {
    Preset::from_name(name, &args).unwrap()
}

fn with_lambda(name: &str, lambda: &str, mut args: PresetArgs) -> Preset {
    args.lambda = Some(lambda.into());
    preset(name, args)
}

/// Triangle, triangular k=2, spherical, n-spherical n=3 and mixed n=1.
fn five(lambda: &str) -> Vec<Preset> {
    vec![
        with_lambda("triangle", lambda, PresetArgs::default()),
        with_lambda("triangular", lambda, PresetArgs { k: Some(2), ..Default::default() }),
        with_lambda("spherical", lambda, PresetArgs::default()),
        with_lambda("n-spherical", lambda, PresetArgs { n: Some(3), ..Default::default() }),
        with_lambda("mixed", lambda, PresetArgs { n: Some(1), ..Default::default() }),
    ]
}

fn build(p: &Preset, field: Field) -> WeightedSurfaceAlgebra {
    p.build(field).unwrap_or_else(|e| panic!("{}: {e}", p.id()))
}

fn run_analysis(w: &WeightedSurfaceAlgebra) -> Result<ClusterAnalysis, String> {
    let opts = ClusterOptions {
        exec: Exec::Parallel,
        ..Default::default()
    };
    let a = analyze(&w.algebra, &w.gamma(), &opts).map_err(|e| e.to_string())?;
    let cells = a.tables.ext1.len() * a.tables.cols.len()
        + a.orthogonality.ext1.len() * a.orthogonality.cols.len()
        + a.extra.ext1.len() * a.extra.cols.len();
    EXT_COUNT.fetch_add(2 * cells, Ordering::Relaxed);
    Ok(a)
}

fn c1_dimensions() -> Result<String, String> {
    let t = build(&preset("triangle", PresetArgs::default()), Field::Rational);
    ensure(t.algebra.dim() == 20 && t.vertex_dims() == [6, 8, 6], || {
        format!("T(2): dim {} dims {:?}", t.algebra.dim(), t.vertex_dims())
    })?;
    let s = build(&preset("spherical", PresetArgs::default()), Field::Rational);
    ensure(s.vertex_dims() == [8, 6, 8, 6, 6, 6], || format!("S(2): {:?}", s.vertex_dims()))?;
    let p = preset("n-spherical", PresetArgs { n: Some(3), ..Default::default() });
    let n = build(&p, Field::Rational);
    let q = n.algebra.quiver();
    let by_type = |c: char| -> BTreeSet<usize> {
        (0..q.num_vertices())
            .filter(|&v| q.vertices[v].starts_with(c))
            .map(|v| n.vertex_dims()[v])
            .collect()
    };
    let (a, b, d) = (by_type('a'), by_type('b'), by_type('d'));
    // 2n(m+m'), 2nm+2, 2nm'+2 with n=3, m=m'=1
    ensure(a == [12].into() && b == [8].into() && d == [8].into(), || {
        format!("n-spherical: a {a:?} b {b:?} d {d:?}")
    })?;
    for w in [&t, &s, &n] {
        ensure(w.vertex_dims() == w.expected_vertex_dims(), || "formula mismatch".into())?;
    }
    Ok("T: 20 = 6+8+6, S: (8,6,8,6,6,6), n-spherical n=3: a 12, b 8, d 8; all equal to the vertex formula".into())
}

fn c2_presentations() -> Result<String, String> {
    let mut notes = Vec::new();
    for (name, count) in [("triangle", TRIANGLE_RELATIONS.len()), ("spherical", SPHERICAL_RELATIONS.len())] {
        let p = preset(name, PresetArgs::default());
        let g = p.build_gabriel(Field::Rational).unwrap().unwrap();
        let rels = &g.relations().relations;
        ensure(rels.len() == count, || format!("{name}: {} relations", rels.len()))?;
        for r in rels {
            ensure(wsa_core::BoundedAlgebra::is_zero_elem(&g.eval(r)), || {
                format!("{name}: relation does not vanish")
            })?;
        }
        // the recorded normalization
        let w = build(&p, Field::Rational);
        ensure(presentations_agree(&w.algebra, &g), || format!("{name}: recorded normalization disagrees"))?;
        // and the search from all-ones parameters finds one
        let mut td = w.data.clone();
        for c in td.params.iter_mut() {
            *c = Field::Rational.one();
        }
        let (norm, found) = search_normalization(&td, &Field::Rational.from_i64(2), &g)
            .ok_or_else(|| format!("{name}: no normalization found"))?;
        ensure(found.algebra.cartan() == g.cartan() && found.algebra.dim() == g.dim(), || {
            format!("{name}: search result differs")
        })?;
        let shown: Vec<String> = norm
            .cycles
            .iter()
            .filter(|(_, v)| v != "1")
            .map(|(c, v)| format!("c{c}={v}"))
            .collect();
        notes.push(format!("{name}: {count} relations vanish, dim {}, {}", g.dim(), shown.join(" ")));
    }
    Ok(notes.join("; "))
}

fn c3_symmetric() -> Result<String, String> {
    for p in five("2") {
        let w = build(&p, Field::Rational);
        let r = check_symmetric(&w.algebra);
        ensure(r.socle_dims.iter().all(|&d| d == 1), || format!("{}: socle dims {:?}", p.id(), r.socle_dims))?;
        ensure(r.symmetric && r.form_rank == r.dim, || format!("{}: form rank {} of {}", p.id(), r.form_rank, r.dim))?;
        for (cb, diff) in w.socle_elements() {
            ensure(!wsa_core::BoundedAlgebra::is_zero_elem(&cb), || format!("{}: c B vanishes", p.id()))?;
            ensure(wsa_core::BoundedAlgebra::is_zero_elem(&diff), || {
                format!("{}: c_a B_a != c_abar B_abar", p.id())
            })?;
        }
    }
    Ok("five presets: simple socles, c B equal at each vertex, symmetric nondegenerate socle form".into())
}

fn c4_periodicity() -> Result<String, String> {
    let mut total = 0;
    for p in five("2") {
        let w = build(&p, Field::Rational);
        for v in 0..w.algebra.num_vertices() {
            let s = Representation::simple(&w.algebra, v);
            let o4 = omega_power(&s, 4);
            ensure(is_isomorphic(&o4, &s, IsoOptions::default()), || {
                format!("{}: Omega^4 S({}) has dims {:?}", p.id(), w.algebra.quiver().vertices[v], o4.dims())
            })?;
            total += 1;
        }
    }
    Ok(format!("Omega^4(S) = S for all {total} simples of the five presets"))
}

fn c5_syzygy_shapes() -> Result<String, String> {
    let mut checked = 0;
    for n in [2, 3] {
        let p = preset("n-spherical", PresetArgs { n: Some(n), ..Default::default() });
        let w = build(&p, Field::Rational);
        let a = run_analysis(&w)?;
        let r = audit(&a, p.chain().as_ref(), &AuditOptions::default()).map_err(|e| e.to_string())?;
        let chain = r.chain.ok_or("no chain audit")?;
        for s in chain.waists.iter().chain(&chain.uniserials) {
            ensure(s.ok, || format!("n={n}: {} has layers {:?}", s.module, s.layers))?;
            checked += 1;
        }
        for s in &chain.waists {
            ensure(s.dims.iter().sum::<usize>() == 5, || format!("{} is not 5-dimensional", s.module))?;
        }
        for s in &chain.uniserials {
            ensure(s.layers.len() == 2 * n - 1, || format!("{} has length {}", s.module, s.layers.len()))?;
        }
    }
    Ok(format!("{checked} second syzygies of simples match (waists and uniserial words), n = 2, 3"))
}

fn c6_vanishing() -> Result<String, String> {
    EXT_COUNT.store(0, Ordering::Relaxed);
    let mut runs = 0;
    for field in [Field::Rational, Field::Prime(101)] {
        for lambda in ["2", "3", "-1"] {
            for p in five(lambda) {
                let w = build(&p, field);
                let a = run_analysis(&w)?;
                ensure(a.tables.is_zero(), || format!("{} over {field}: {:?}", p.id(), a.tables.nonzero()))?;
                runs += 1;
            }
        }
    }
    Ok(format!("Ext^1(M,M) = Ext^2(M,M) = 0 in all {runs} runs (5 presets, lambda 2/3/-1, Q and GF(101))"))
}

fn c7_symmetry() -> Result<String, String> {
    let mut pairs = 0;
    for p in five("2") {
        let w = build(&p, Field::Rational);
        let a = run_analysis(&w)?;
        let r = audit(&a, p.chain().as_ref(), &AuditOptions::default()).map_err(|e| e.to_string())?;
        let s = r.ext_symmetry;
        ensure(s.pairs.len() >= 20, || format!("{}: only {} pairs", p.id(), s.pairs.len()))?;
        for c in &s.pairs {
            ensure(c.ext2 == c.ext1_swapped, || {
                format!("{}: Ext^2({}, {}) = {} but Ext^1 swapped = {}", p.id(), c.left, c.right, c.ext2, c.ext1_swapped)
            })?;
        }
        EXT_COUNT.fetch_add(2 * s.pairs.len(), Ordering::Relaxed);
        pairs += s.pairs.len();
    }
    Ok(format!("dim Ext^2(X,Y) = dim Ext^1(Y,X) on {pairs} seeded pairs over 5 presets"))
}

/// The sequence `0 → right → S ⊕ long → left → 0`.
fn split_sequence(w: &WeightedSurfaceAlgebra, left: &[&str], right: &[&str], s: &str, long: &[&str]) -> Result<String, String> {
    let alg = &w.algebra;
    let q = alg.quiver();
    let ids = |word: &[&str]| word.iter().map(|v| q.vertex(v).unwrap()).collect::<Vec<_>>();
    let l = uniserial(alg, &ids(left)).map_err(|e| e.to_string())?;
    let r = uniserial(alg, &ids(right)).map_err(|e| e.to_string())?;
    let long = uniserial(alg, &ids(long)).map_err(|e| e.to_string())?;
    let simple = Representation::simple(alg, q.vertex(s).unwrap());
    let d = ext_dim(&l, &r, 1).map_err(|e| e.to_string())?;
    EXT_COUNT.fetch_add(1, Ordering::Relaxed);
    ensure(d >= 1, || format!("Ext^1({}, {}) = 0", l.label(), r.label()))?;
    let e = ext1_witness(&l, &r).ok_or("no extension")?;
    ensure(e.non_split, || "extension splits".into())?;
    let expected: Vec<usize> = simple.dims().iter().zip(long.dims()).map(|(a, b)| a + b).collect();
    ensure(e.middle.dims() == expected, || {
        format!("middle term dims {:?}, expected {expected:?}", e.middle.dims())
    })?;
    let iso = is_isomorphic(&e.middle, &simple.direct_sum(&long), IsoOptions::default());
    ensure(iso, || "middle term is not S + uniserial".into())?;
    Ok(format!(
        "Ext^1({}, {}) = {d}, middle {} = S({s}) + {}",
        l.label(),
        r.label(),
        e.middle.dim(),
        long.label()
    ))
}

fn c8_verdicts() -> Result<String, String> {
    let mut notes = Vec::new();
    for (name, args, expected) in [
        ("triangle", PresetArgs::default(), Verdict::ThreeClusterTilting),
        ("spherical", PresetArgs::default(), Verdict::ThreeClusterTilting),
        ("n-spherical", PresetArgs { n: Some(3), ..Default::default() }, Verdict::FailsWithWitness),
        ("triangular", PresetArgs { k: Some(2), ..Default::default() }, Verdict::FailsWithWitness),
    ] {
        let p = preset(name, args);
        let w = build(&p, Field::Rational);
        let a = run_analysis(&w)?;
        ensure(a.verdict == expected, || format!("{}: {}", p.id(), a.verdict))?;
        if let Some(wit) = &a.witness {
            ensure(wit.extension.non_split && wit.ext1 >= 1, || format!("{}: witness splits", p.id()))?;
        }
        notes.push(format!("{name} {}", a.verdict));
    }
    let k2 = build(&preset("triangular", PresetArgs { k: Some(2), ..Default::default() }), Field::Rational);
    notes.push(split_sequence(&k2, &["2", "1", "2"], &["2", "3", "2"], "2", &["2", "1", "2", "3", "2"])?);
    let n3 = build(&preset("n-spherical", PresetArgs { n: Some(3), ..Default::default() }), Field::Rational);
    notes.push(split_sequence(
        &n3,
        &["a1", "b1", "a2"],
        &["a2", "b2", "a3"],
        "a2",
        &["a1", "b1", "a2", "b2", "a3"],
    )?);
    EXT_6_TO_8.store(EXT_COUNT.load(Ordering::Relaxed), Ordering::Relaxed);
    Ok(notes.join("; "))
}

fn c9_e_lambda_e() -> Result<String, String> {
    let mut notes = Vec::new();
    let mut literal_ok = true;
    for n in [2, 3, 4] {
        let p = preset("n-spherical", PresetArgs { n: Some(n), ..Default::default() });
        let w = build(&p, Field::Rational);
        let a = run_analysis(&w)?;
        let r = audit(&a, p.chain().as_ref(), &AuditOptions::default()).map_err(|e| e.to_string())?;
        let e = r.chain.ok_or("no chain audit")?.e_lambda_e;
        ensure(e.ok, || format!("n={n}: corrected relations fail: {e:?}"))?;
        let raw = e.raw_xy_zero.iter().chain(&e.raw_yx_zero).all(|&b| b);
        literal_ok &= raw;
        notes.push(format!(
            "n={n}: x_i y_i = 0 literally: {raw}, after correction t = {:?}: x_i y_i' = y_i' x_i = 0, \
             y_i x_(i-1) never composes, generated dim {}/{}, maximal monomials proportional",
            e.corrections.iter().flatten().collect::<BTreeSet<_>>(),
            e.generated_dim,
            e.dim
        ));
    }
    let msg = notes.join("; ");
    if literal_ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c10_methods() -> Result<String, String> {
    // every Ext above went through the checked path; spot-check both methods
    // directly on the triangular self-extension as well
    let w = build(&preset("triangular", PresetArgs { k: Some(2), ..Default::default() }), Field::Rational);
    let q = w.algebra.quiver();
    let u = |word: &[&str]| uniserial(&w.algebra, &word.iter().map(|v| q.vertex(v).unwrap()).collect::<Vec<_>>()).unwrap();
    let (x, y) = (u(&["2", "1", "2"]), u(&["2", "3", "2"]));
    for i in 1..=2 {
        let (a, b) = (ext_by_resolution(&x, &y, i), ext_by_stable_hom(&x, &y, i));
        ensure(a == b, || format!("degree {i}: {a} vs {b}"))?;
    }
    let n = EXT_6_TO_8.load(Ordering::Relaxed);
    ensure(n > 0, || "criteria 6-8 did not complete".into())?;
    Ok(format!("{n} Ext dimensions computed in criteria 6-8, resolution and stable Hom agreed on each"))
}

fn c11_oracle() -> Result<String, String> {
    let p = preset("triangular", PresetArgs { k: Some(1), ..Default::default() });
    let w = build(&p, Field::Rational);
    let alg = &w.algebra;
    let q = alg.quiver();
    let gamma = w.gamma();
    let loewy = (0..q.num_vertices())
        .map(|v| wsa_core::modules::radical_series(&Representation::projective(alg, v)).len() - 1)
        .max()
        .unwrap();
    // every walk in the Gabriel quiver up to the Loewy length, kept if it is
    // the composition series of a module
    let mut walks: Vec<Vec<usize>> = (0..q.num_vertices()).map(|v| vec![v]).collect();
    let mut frontier = walks.clone();
    for _ in 1..loewy {
        let mut next = Vec::new();
        for wk in &frontier {
            for a in q.arrows_from(*wk.last().unwrap()).filter(|&a| alg.gabriel_arrows()[a]) {
                let mut longer = wk.clone();
                longer.push(q.target(a));
                next.push(longer);
            }
        }
        walks.extend(next.iter().cloned());
        frontier = next;
    }
    let mut oracle = BTreeSet::new();
    for wk in &walks {
        if let Ok(m) = uniserial(alg, wk) {
            ensure(composition_word(&m).as_deref() == Some(&wk[..]), || "bad word".into())?;
            if gamma.contains(&wk[0]) && gamma.contains(wk.last().unwrap()) {
                oracle.insert(wk.iter().map(|&v| q.vertices[v].clone()).collect::<Vec<_>>().join(","));
            }
        }
    }
    let m = build_m(alg, &gamma);
    let found: BTreeSet<String> = enumerate_star_candidates(&m, IsoOptions::default())
        .map_err(|e| e.to_string())?
        .iter()
        .map(|c| c.word.iter().map(|&v| q.vertices[v].clone()).collect::<Vec<_>>().join(","))
        .collect();
    let expected: BTreeSet<String> = ["2", "2,3,2", "2,1,2"].iter().map(|s| s.to_string()).collect();
    ensure(oracle == found && found == expected, || {
        format!("oracle {oracle:?}, enumeration {found:?}")
    })?;
    Ok(format!(
        "{} walks up to Loewy length {loewy}; both give {{S2, U(2,3,2), U(2,1,2)}}",
        walks.len()
    ))
}

fn main() {
    let criteria: [(u32, &str, Check); 11] = [
        (1, "family dimensions", c1_dimensions),
        (2, "presentation cross-check", c2_presentations),
        (3, "symmetric algebra and socle", c3_symmetric),
        (4, "periodicity of simples", c4_periodicity),
        (5, "syzygy shapes", c5_syzygy_shapes),
        (6, "Ext vanishing on M", c6_vanishing),
        (7, "Ext symmetry", c7_symmetry),
        (8, "verdicts and witnesses", c8_verdicts),
        (9, "eAe structure", c9_e_lambda_e),
        (10, "method cross-validation", c10_methods),
        (11, "brute-force uniserial oracle", c11_oracle),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut unexpected = Vec::new();
    for (id, name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let known = KNOWN_RED.iter().find(|(k, _)| *k == id);
        match (&outcome, known) {
            (Ok(detail), _) => println!("PASS {id:>2} {name}: {detail}"),
            (Err(detail), Some((_, why))) => println!("FAIL {id:>2} {name} (known: {why}): {detail}"),
            (Err(detail), None) => {
                println!("FAIL {id:>2} {name}: {detail}");
                unexpected.push(id);
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}

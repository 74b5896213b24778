//! Redundant checks run alongside the verdict: periodicity of simples, Ext
//! symmetry on random pairs, Hom vanishing against simples, and for the
//! spherical chains the shape of `Ω²` of simples and of `eΛe`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::path::Word;
use crate::algebra::{idempotent_subalgebra, AlgElem, BoundedAlgebra};
use crate::cluster::{ClusterAnalysis, ClusterError, SummandKind};
use crate::families::Chain;
use crate::field::Scalar;
use crate::linalg::Matrix;
use crate::modules::{
    composition_word, hom_dim, is_isomorphic, omega, omega_inverse, omega_power, radical_series, uniserial,
    ExtSource, IsoOptions, Representation,
};
use crate::parallel::{self, Exec};
use crate::quiver::VertexId;

#[derive(Debug, Clone)]
pub struct AuditOptions {
    pub seed: u64,
    /// Number of random pairs for the Ext symmetry check.
    pub pairs: usize,
    pub exec: Exec,
    pub iso: IsoOptions,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            seed: 0x5eed,
            pairs: 24,
            exec: Exec::Sequential,
            iso: IsoOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodCheck {
    pub vertex: String,
    /// Total dimension of `Ω^k S` for `k = 1, …, 4`.
    pub dims: Vec<usize>,
    /// Smallest `k ≤ 4` with `Ω^k S ≅ S`.
    pub period: Option<usize>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtPairCheck {
    pub left: String,
    pub right: String,
    /// `dim Ext²(left, right)`.
    pub ext2: usize,
    /// `dim Ext¹(right, left)`.
    pub ext1_swapped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtSymmetryAudit {
    pub seed: u64,
    pub pool: usize,
    pub pairs: Vec<ExtPairCheck>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomAudit {
    pub checked: usize,
    pub failures: Vec<String>,
    pub ok: bool,
}

impl HomAudit {
    fn from_checks(checks: Vec<(String, bool)>) -> Self {
        let checked = checks.len();
        let failures: Vec<String> = checks.into_iter().filter(|c| !c.1).map(|c| c.0).collect();
        HomAudit {
            checked,
            ok: failures.is_empty(),
            failures,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeCheck {
    pub module: String,
    pub dims: Vec<usize>,
    pub expected: Vec<Vec<String>>,
    /// Vertices in each radical layer.
    pub layers: Vec<Vec<String>>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialCheck {
    pub vertex: String,
    pub x_length: usize,
    pub y_length: usize,
    pub proportional: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ELambdaEAudit {
    pub dim: usize,
    /// Dimension of the subalgebra generated by the `x_i` and the
    /// corrected `y_i`.
    pub generated_dim: usize,
    /// `x_i y_i = 0` for the plain paths `y_i = ρ_i δ_i`.
    pub raw_xy_zero: Vec<bool>,
    pub raw_yx_zero: Vec<bool>,
    /// `t_i` in `y_i' = y_i + t_i x_{i+1} x_{i+2} ⋯`, chosen so that
    /// `x_i y_i' = 0`; `None` if no such multiple exists.
    pub corrections: Vec<Option<String>>,
    /// `x_i y_i' = 0`.
    pub xy_zero: Vec<bool>,
    /// `y_i' x_i = 0`.
    pub yx_zero: Vec<bool>,
    /// `y_i x_{i-1}` taken literally; these paths never compose.
    pub yx_prev_zero: Vec<bool>,
    pub monomials: Vec<MonomialCheck>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainAudit {
    /// `Ω²S_{a_i}`: five-dimensional with simple middle layer.
    pub waists: Vec<ShapeCheck>,
    /// `Ω²S_{b_i}` and `Ω²S_{d_i}` against the expected uniserials.
    pub uniserials: Vec<ShapeCheck>,
    pub e_lambda_e: ELambdaEAudit,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub periodicity: Vec<PeriodCheck>,
    pub ext_symmetry: ExtSymmetryAudit,
    /// `Hom(S_ν, X) = 0 = Hom(X, S_ν)` for candidates `X` and `ν ∉ Γ`.
    pub simple_hom: HomAudit,
    /// `Hom(ΩX, S_a) = 0 = Hom(S_a, Ω⁻¹X)` for candidates `X ∈ add(M)`, `a ∈ Γ`.
    pub omega_top: HomAudit,
    pub chain: Option<ChainAudit>,
    pub ok: bool,
}

pub fn audit(analysis: &ClusterAnalysis, chain: Option<&Chain>, opts: &AuditOptions) -> Result<AuditReport, ClusterError> {
    let alg = analysis.m.algebra().clone();
    let q = alg.quiver();
    let gamma = &analysis.m.gamma;
    let vertices: Vec<VertexId> = (0..q.num_vertices()).collect();

    let periodicity = parallel::map(opts.exec, &vertices, |&v| {
        let s = Representation::simple(&alg, v);
        let mut x = s.clone();
        let mut dims = Vec::new();
        let mut period = None;
        for k in 1..=4 {
            x = omega(&x);
            dims.push(x.dim());
            if period.is_none() && is_isomorphic(&x, &s, opts.iso) {
                period = Some(k);
            }
        }
        PeriodCheck {
            vertex: q.vertices[v].clone(),
            dims,
            ok: period.is_some_and(|p| 4 % p == 0),
            period,
        }
    });

    let ext_symmetry = ext_symmetry(analysis, opts)?;

    let non_gamma: Vec<VertexId> = vertices.iter().copied().filter(|v| !gamma.contains(v)).collect();
    let mut simple_checks = Vec::new();
    for c in &analysis.candidates {
        for &v in &non_gamma {
            let s = Representation::simple(&alg, v);
            let ok = hom_dim(&s, &c.module) == 0 && hom_dim(&c.module, &s) == 0;
            simple_checks.push((format!("{} / S({})", c.module.label(), q.vertices[v]), ok));
        }
    }
    let mut omega_checks = Vec::new();
    for c in analysis.candidates.iter().filter(|c| c.in_m.is_some()) {
        let om = omega(&c.module);
        let om_inv = omega_inverse(&c.module);
        for &a in gamma {
            let s = Representation::simple(&alg, a);
            let ok = hom_dim(&om, &s) == 0 && hom_dim(&s, &om_inv) == 0;
            omega_checks.push((format!("{} / S({})", c.module.label(), q.vertices[a]), ok));
        }
    }

    let chain = match chain {
        Some(ch) => Some(chain_audit(&alg, ch, opts)?),
        None => None,
    };
    let simple_hom = HomAudit::from_checks(simple_checks);
    let omega_top = HomAudit::from_checks(omega_checks);
    let ok = periodicity.iter().all(|p| p.ok)
        && ext_symmetry.ok
        && simple_hom.ok
        && omega_top.ok
        && chain.as_ref().is_none_or(|c| c.ok);
    Ok(AuditReport {
        periodicity,
        ext_symmetry,
        simple_hom,
        omega_top,
        chain,
        ok,
    })
}

/// Simples, their first syzygies and cosyzygies, the non-projective summands
/// of `M` and the candidates.
fn symmetry_pool(analysis: &ClusterAnalysis) -> Vec<Representation> {
    let alg = analysis.m.algebra();
    let q = alg.quiver();
    let mut pool = Vec::new();
    for v in 0..q.num_vertices() {
        let s = Representation::simple(alg, v).with_label(format!("S({})", q.vertices[v]));
        pool.push(omega(&s).with_label(format!("Omega(S({}))", q.vertices[v])));
        pool.push(omega_power(&s, -1).with_label(format!("Omega^-1(S({}))", q.vertices[v])));
        pool.push(s);
    }
    for s in analysis.m.summands.iter().filter(|s| s.kind == SummandKind::SecondSyzygy) {
        pool.push(s.module.clone());
    }
    for c in &analysis.candidates {
        pool.push(c.module.clone());
    }
    pool
}

fn ext_symmetry(analysis: &ClusterAnalysis, opts: &AuditOptions) -> Result<ExtSymmetryAudit, ClusterError> {
    let pool = symmetry_pool(analysis);
    let n = pool.len();
    let total = n * n;
    let want = opts.pairs.min(total);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut chosen = BTreeSet::new();
    let mut pairs = Vec::new();
    while pairs.len() < want {
        let p = (rng.gen_range(0..n), rng.gen_range(0..n));
        if chosen.insert(p) {
            pairs.push(p);
        }
    }
    let results = parallel::map(opts.exec, &pairs, |&(i, j)| -> Result<ExtPairCheck, ClusterError> {
        let (x, y) = (&pool[i], &pool[j]);
        Ok(ExtPairCheck {
            left: x.label().to_string(),
            right: y.label().to_string(),
            ext2: ExtSource::new(x, 2).ext(y, 2)?,
            ext1_swapped: ExtSource::new(y, 1).ext(x, 1)?,
        })
    });
    let pairs = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(ExtSymmetryAudit {
        seed: opts.seed,
        pool: n,
        ok: pairs.iter().all(|p| p.ext2 == p.ext1_swapped),
        pairs,
    })
}

fn layer_names(m: &Representation) -> Vec<Vec<String>> {
    let q = m.algebra().quiver();
    let series = radical_series(m);
    series
        .windows(2)
        .map(|w| {
            let mut names = Vec::new();
            for (v, (a, b)) in w[0].iter().zip(&w[1]).enumerate() {
                for _ in 0..a.rows() - b.rows() {
                    names.push(q.vertices[v].clone());
                }
            }
            names.sort();
            names
        })
        .collect()
}

fn chain_audit(alg: &std::sync::Arc<BoundedAlgebra>, ch: &Chain, opts: &AuditOptions) -> Result<ChainAudit, ClusterError> {
    let q = alg.quiver();
    let vid = |name: &str| {
        q.vertex(name)
            .ok_or_else(|| ClusterError::Module(crate::modules::ModuleError::NotRealizable(name.to_string())))
    };
    let n = ch.n;
    let at = |v: &[String], i: isize| v[i.rem_euclid(n as isize) as usize].clone();

    let mut waists = Vec::new();
    for i in 0..n as isize {
        let a = at(&ch.a, i);
        let m = omega_power(&Representation::simple(alg, vid(&a)?), 2);
        let mut top = vec![at(&ch.b, i - 1), at(&ch.d, i)];
        let mut bottom = vec![at(&ch.b, i), at(&ch.d, i - 1)];
        top.sort();
        bottom.sort();
        let expected = vec![top, vec![a.clone()], bottom];
        let layers = layer_names(&m);
        let ok = m.dim() == 5 && layers.len() == 3 && layers[1] == vec![a.clone()];
        waists.push(ShapeCheck {
            module: format!("Omega^2(S({a}))"),
            dims: m.dims().to_vec(),
            ok: ok && layers == expected,
            expected,
            layers,
        });
    }

    let mut uniserials = Vec::new();
    for i in 0..n as isize {
        // U_{b_i} = 𝒰(a_i, d_{i-1}, a_{i-1}, …), length 2nm'-1
        let len_b = 2 * n * ch.m_prime as usize - 1;
        let word_b: Vec<String> = (0..len_b as isize)
            .map(|k| if k % 2 == 0 { at(&ch.a, i - k / 2) } else { at(&ch.d, i - 1 - k / 2) })
            .collect();
        // U_{d_i} = 𝒰(a_{i+1}, b_{i+1}, a_{i+2}, …), length 2nm-1
        let len_d = 2 * n * ch.m as usize - 1;
        let word_d: Vec<String> = (0..len_d as isize)
            .map(|k| if k % 2 == 0 { at(&ch.a, i + 1 + k / 2) } else { at(&ch.b, i + 1 + k / 2) })
            .collect();
        for (v, word) in [(at(&ch.b, i), word_b), (at(&ch.d, i), word_d)] {
            let m = omega_power(&Representation::simple(alg, vid(&v)?), 2);
            let ids = word.iter().map(|w| vid(w)).collect::<Result<Vec<_>, _>>()?;
            let found = composition_word(&m);
            let ok = found.as_deref() == Some(&ids[..])
                && uniserial(alg, &ids).is_ok_and(|u| is_isomorphic(&u, &m, opts.iso));
            uniserials.push(ShapeCheck {
                module: format!("Omega^2(S({v}))"),
                dims: m.dims().to_vec(),
                expected: word.iter().map(|w| vec![w.clone()]).collect(),
                layers: layer_names(&m),
                ok,
            });
        }
    }

    let e_lambda_e = e_lambda_e(alg, ch)?;
    let ok = waists.iter().all(|w| w.ok) && uniserials.iter().all(|u| u.ok) && e_lambda_e.ok;
    Ok(ChainAudit {
        waists,
        uniserials,
        e_lambda_e,
        ok,
    })
}

fn element(alg: &BoundedAlgebra, word: &str) -> Result<AlgElem, ClusterError> {
    let q = alg.quiver();
    let bad = || ClusterError::Module(crate::modules::ModuleError::NotRealizable(word.to_string()));
    let arrows = q.parse_word(word).map_err(|_| bad())?;
    let w = Word::from_arrows(q, &arrows).ok_or_else(bad)?;
    Ok(alg.word(&w))
}

/// `t` with `p + t·s = 0`, if there is one.
fn cancelling_multiple(p: &AlgElem, s: &AlgElem) -> Option<Scalar> {
    let k = s.iter().position(|c| !c.is_zero())?;
    let t = -p[k].checked_div(&s[k]).ok()?;
    p.iter()
        .zip(s)
        .all(|(a, b)| (a.clone() + t.clone() * b.clone()).is_zero())
        .then_some(t)
}

fn e_lambda_e(alg: &BoundedAlgebra, ch: &Chain) -> Result<ELambdaEAudit, ClusterError> {
    let q = alg.quiver();
    let n = ch.n;
    let xs = ch.x.iter().map(|w| element(alg, w)).collect::<Result<Vec<_>, _>>()?;
    let ys = ch.y.iter().map(|w| element(alg, w)).collect::<Result<Vec<_>, _>>()?;
    let zero = |x: &AlgElem| BoundedAlgebra::is_zero_elem(x);
    let a_ids: Vec<VertexId> = ch.a.iter().filter_map(|a| q.vertex(a)).collect();

    // products g_j g_{j+step} ⋯ starting at a_vertex, `len` factors
    let monomial = |vertex: usize, first: usize, gens: &[AlgElem], step: isize, len: usize| {
        let mut p = alg.vertex_idempotent(a_ids[vertex]);
        let mut j = first as isize;
        for _ in 0..len {
            p = alg.mul(&p, &gens[j.rem_euclid(n as isize) as usize]);
            j += step;
        }
        p
    };
    let longest = |vertex: usize, first: usize, gens: &[AlgElem], step: isize| {
        let mut len = 0;
        while !zero(&monomial(vertex, first, gens, step, len + 1)) {
            len += 1;
        }
        (monomial(vertex, first, gens, step, len), len)
    };

    let raw_xy_zero: Vec<bool> = (0..n).map(|i| zero(&alg.mul(&xs[i], &ys[i]))).collect();
    let raw_yx_zero: Vec<bool> = (0..n).map(|i| zero(&alg.mul(&ys[i], &xs[i]))).collect();
    let yx_prev_zero: Vec<bool> = (0..n).map(|i| zero(&alg.mul(&ys[i], &xs[(i + n - 1) % n]))).collect();

    // y_i' = y_i + t_i·x_{i+1}x_{i+2}⋯, the x-path from a_{i+1} to a_i one
    // factor short of the longest x-monomial at a_i
    let mut corrections = Vec::new();
    let mut ys_new = Vec::new();
    for i in 0..n {
        let (_, lx) = longest(i, i, &xs, 1);
        let z = monomial((i + 1) % n, (i + 1) % n, &xs, 1, lx.saturating_sub(1));
        let p = alg.mul(&xs[i], &ys[i]);
        let s = alg.mul(&xs[i], &z);
        let t = if zero(&p) {
            Some(alg.field().zero())
        } else {
            cancelling_multiple(&p, &s)
        };
        match t {
            Some(t) => {
                let y: AlgElem = ys[i].iter().zip(&z).map(|(a, b)| a.clone() + t.clone() * b.clone()).collect();
                corrections.push(Some(t.to_string()));
                ys_new.push(y);
            }
            None => {
                corrections.push(None);
                ys_new.push(ys[i].clone());
            }
        }
    }
    let ys = ys_new;
    let xy_zero: Vec<bool> = (0..n).map(|i| zero(&alg.mul(&xs[i], &ys[i]))).collect();
    let yx_zero: Vec<bool> = (0..n).map(|i| zero(&alg.mul(&ys[i], &xs[i]))).collect();

    let sub = idempotent_subalgebra(alg, &a_ids);
    let gens: Vec<AlgElem> = xs.iter().chain(&ys).cloned().collect();
    let generated_dim = sub.generated_dim(alg, &gens);

    let mut monomials = Vec::new();
    for i in 0..n {
        let (px, lx) = longest(i, i, &xs, 1);
        // y_{i-1} y_{i-2} ⋯
        let (py, ly) = longest(i, (i + n - 1) % n, &ys, -1);
        let rows = Matrix::from_rows(alg.field(), alg.dim(), vec![px.clone(), py.clone()]);
        let proportional = lx > 0 && ly > 0 && rows.rank() == 1;
        monomials.push(MonomialCheck {
            vertex: ch.a[i].clone(),
            x_length: lx,
            y_length: ly,
            proportional,
        });
    }
    let ok = xy_zero.iter().chain(&yx_zero).chain(&yx_prev_zero).all(|&b| b)
        && generated_dim == sub.dim()
        && monomials.iter().all(|m| m.proportional);
    Ok(ELambdaEAudit {
        dim: sub.dim(),
        generated_dim,
        raw_xy_zero,
        raw_yx_zero,
        corrections,
        xy_zero,
        yx_zero,
        yx_prev_zero,
        monomials,
        ok,
    })
}

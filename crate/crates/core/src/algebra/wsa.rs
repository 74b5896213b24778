//! Weighted surface algebras `Λ(Q, f, m, c)`.
//!
//! Relations are generated on the full triangulation quiver. Virtual arrows
//! are then eliminated using the type (1) relations that express them as
//! scalar multiples of paths of length two, which leaves a presentation on
//! the Gabriel quiver. The algebra itself is built on the Gabriel quiver.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::build::{AlgElem, BoundedAlgebra};
use crate::algebra::path::{PathComb, RelationSet, Word};
use crate::algebra::AlgebraError;
use crate::field::{Field, Scalar};
use crate::quiver::{ArrowClassification, ArrowId, Quiver, TriangulationData, VertexId};

fn path_of(q: &Quiver, arrows: &[ArrowId], field: Field) -> PathComb {
    PathComb::word(Word::from_arrows(q, arrows).expect("path"), field)
}

/// Generators of the ideal `I(Q, f, m, c)` on the full quiver.
pub fn wsa_relations(td: &TriangulationData, cls: &ArrowClassification) -> RelationSet {
    let q = &td.quiver;
    let field = td.params[0].field();
    let f = &td.f;
    let g = &cls.g;
    let bar = &cls.bar;
    let mut rels = RelationSet::default();
    for a in 0..q.num_arrows() {
        let ab = bar[a];
        let (_, a_path, _) = cls.paths_b_a(ab);
        let lhs = path_of(q, &[a, f[a]], field);
        let rhs = path_of(q, &a_path, field).scale(&td.params[ab]);
        rels.push(
            format!("(1) {} {}", q.arrows[a].name, q.arrows[f[a]].name),
            lhs.add(&rhs.scale(&-field.one())),
        );
    }
    for a in 0..q.num_arrows() {
        let fa = f[a];
        let ffa = f[fa];
        let ab = bar[a];
        let exempt = cls.is_virtual[ffa]
            || (cls.is_virtual[f[ab]] && cls.m[ab] == 1 && cls.n[ab] == 3);
        if !exempt {
            let w = [a, fa, g[fa]];
            rels.push(format!("(2) {}", q.word_name(&w)), path_of(q, &w, field));
        }
    }
    for a in 0..q.num_arrows() {
        let fa = f[a];
        let ffa = f[fa];
        let exempt = cls.is_virtual[fa]
            || (cls.is_virtual[ffa] && cls.m[fa] == 1 && cls.n[fa] == 3);
        if !exempt {
            let w = [a, g[a], f[g[a]]];
            rels.push(format!("(3) {}", q.word_name(&w)), path_of(q, &w, field));
        }
    }
    rels
}

/// Expresses every arrow of `Q` as an element of the path algebra of the
/// Gabriel quiver: a virtual arrow `v` becomes `c_v⁻¹ · v̄ f(v̄)`.
pub fn eliminate_virtual(
    td: &TriangulationData,
    cls: &ArrowClassification,
) -> Result<(Quiver, Vec<PathComb>), AlgebraError> {
    let q = &td.quiver;
    let field = td.params[0].field();
    let gq = cls.gabriel_quiver(td);
    let mut images: Vec<Option<PathComb>> = vec![None; q.num_arrows()];
    for a in 0..q.num_arrows() {
        if !cls.is_virtual[a] {
            let id = gq.arrow(&q.arrows[a].name).unwrap();
            images[a] = Some(path_of(&gq, &[id], field));
        }
    }
    // resolve virtual arrows whose defining path only uses known arrows
    loop {
        let mut progress = false;
        for v in 0..q.num_arrows() {
            if images[v].is_some() {
                continue;
            }
            let b = cls.bar[v];
            let fb = td.f[b];
            if let (Some(x), Some(y)) = (&images[b], &images[fb]) {
                let c = td.params[v].inv().ok_or_else(|| {
                    AlgebraError::Elimination(format!("zero parameter at {}", q.arrows[v].name))
                })?;
                images[v] = Some(x.mul(y).scale(&c));
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    let images: Vec<PathComb> = images
        .into_iter()
        .enumerate()
        .map(|(a, p)| p.ok_or_else(|| AlgebraError::Elimination(q.arrows[a].name.clone())))
        .collect::<Result<_, _>>()?;
    Ok((gq, images))
}

fn substitute(p: &PathComb, images: &[PathComb], field: Field) -> PathComb {
    let mut out = PathComb::zero();
    for (w, c) in &p.terms {
        let mut acc = PathComb::word(Word::trivial(w.source), field);
        for &a in &w.arrows {
            acc = acc.mul(&images[a]);
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// A weighted surface algebra built on its Gabriel quiver.
#[derive(Debug, Clone)]
pub struct WeightedSurfaceAlgebra {
    pub data: TriangulationData,
    pub classification: ArrowClassification,
    /// Relations of `I(Q, f, m, c)` on the full quiver.
    pub full_relations: RelationSet,
    /// Image of each arrow of `Q` in the Gabriel path algebra.
    pub arrow_images: Vec<PathComb>,
    pub algebra: Arc<BoundedAlgebra>,
}

impl WeightedSurfaceAlgebra {
    pub fn build(td: &TriangulationData) -> Result<Self, AlgebraError> {
        let cls = td.validate()?;
        let field = td.params[0].field();
        let full_relations = wsa_relations(td, &cls);
        let (gq, images) = eliminate_virtual(td, &cls)?;
        let mut rels = RelationSet::default();
        for (r, label) in full_relations.relations.iter().zip(&full_relations.labels) {
            let s = substitute(r, &images, field);
            if !s.is_zero() {
                rels.push(label.clone(), s);
            }
        }
        let max_dim = (0..td.quiver.num_vertices())
            .map(|v| cls.vertex_dimension(td, v))
            .max()
            .unwrap_or(1);
        let algebra = BoundedAlgebra::build(field, gq, rels, max_dim + 1)?;
        Ok(WeightedSurfaceAlgebra {
            data: td.clone(),
            classification: cls,
            full_relations,
            arrow_images: images,
            algebra: Arc::new(algebra),
        })
    }

    /// The same algebra built on the full quiver `Q` without eliminating
    /// virtual arrows. Only practical for small weights.
    pub fn build_full_quiver(td: &TriangulationData) -> Result<BoundedAlgebra, AlgebraError> {
        let cls = td.validate()?;
        let rels = wsa_relations(td, &cls);
        let max_dim = (0..td.quiver.num_vertices())
            .map(|v| cls.vertex_dimension(td, v))
            .max()
            .unwrap_or(1);
        BoundedAlgebra::build(td.params[0].field(), td.quiver.clone(), rels, max_dim + 1)
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    /// Evaluates a combination of paths of the full quiver in `Λ`.
    pub fn eval_full(&self, p: &PathComb) -> AlgElem {
        let s = substitute(p, &self.arrow_images, self.field());
        self.algebra.eval(&s)
    }

    pub fn eval_full_word(&self, arrows: &[ArrowId]) -> AlgElem {
        let q = &self.data.quiver;
        self.eval_full(&path_of(q, arrows, self.field()))
    }

    /// `m_α n_α + m_ᾱ n_ᾱ` for every vertex.
    pub fn expected_vertex_dims(&self) -> Vec<usize> {
        (0..self.data.quiver.num_vertices())
            .map(|v| self.classification.vertex_dimension(&self.data, v))
            .collect()
    }

    pub fn vertex_dims(&self) -> Vec<usize> {
        (0..self.algebra.num_vertices())
            .map(|v| self.algebra.vertex_dim(v))
            .collect()
    }

    pub fn gamma(&self) -> Vec<VertexId> {
        self.classification.gamma_vertices(&self.data)
    }

    /// `c_α B_α − c_ᾱ B_ᾱ` for the two arrows at each vertex, together with
    /// `c_α B_α` itself.
    pub fn socle_elements(&self) -> Vec<(AlgElem, AlgElem)> {
        let q = &self.data.quiver;
        (0..q.num_vertices())
            .map(|v| {
                let mut arrows = q.arrows_from(v);
                let a = arrows.next().unwrap();
                let b = arrows.next().unwrap();
                let (ba, _, _) = self.classification.paths_b_a(a);
                let (bb, _, _) = self.classification.paths_b_a(b);
                let field = self.field();
                let pa = path_of(q, &ba, field).scale(&self.data.params[a]);
                let pb = path_of(q, &bb, field).scale(&self.data.params[b]);
                let x = self.eval_full(&pa);
                let diff = self.eval_full(&pa.add(&pb.scale(&-field.one())));
                (x, diff)
            })
            .collect()
    }
}

/// A choice of parameters per g-cycle, written symbolically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Normalization {
    pub cycles: Vec<(String, String)>,
}

fn candidate_values(lambda: &Scalar) -> Vec<(String, Scalar)> {
    let f = lambda.field();
    let inv = lambda.inv().expect("nonzero lambda");
    vec![
        ("lambda".into(), lambda.clone()),
        ("1/lambda".into(), inv.clone()),
        ("-1".into(), -f.one()),
        ("-lambda".into(), -lambda),
        ("-1/lambda".into(), -inv),
    ]
}

/// Whether every relation of `target` vanishes in `alg` (matched by arrow
/// names) and the two algebras have equal dimension and Cartan matrix.
pub fn presentations_agree(alg: &BoundedAlgebra, target: &BoundedAlgebra) -> bool {
    if alg.dim() != target.dim() || alg.cartan() != target.cartan() {
        return false;
    }
    let tq = target.quiver();
    let q = alg.quiver();
    if q.vertices != tq.vertices {
        return false;
    }
    for r in &target.relations().relations {
        let mut p = PathComb::zero();
        for (w, c) in &r.terms {
            let ids: Option<Vec<ArrowId>> = w
                .arrows
                .iter()
                .map(|&a| q.arrow(&tq.arrows[a].name))
                .collect();
            let Some(ids) = ids else { return false };
            let word = if ids.is_empty() {
                Word::trivial(w.source)
            } else {
                match Word::from_arrows(q, &ids) {
                    Some(w) => w,
                    None => return false,
                }
            };
            p.add_term(word, c.clone());
        }
        if !BoundedAlgebra::is_zero_elem(&alg.eval(&p)) {
            return false;
        }
    }
    true
}

/// Searches parameters over `{1, λ, λ⁻¹, −1, −λ, −λ⁻¹}` per g-cycle, with at
/// most two cycles away from 1, for a weighted surface algebra equal to
/// `target` as a quotient of the Gabriel path algebra.
pub fn search_normalization(
    td: &TriangulationData,
    lambda: &Scalar,
    target: &BoundedAlgebra,
) -> Option<(Normalization, WeightedSurfaceAlgebra)> {
    let cls = td.validate().ok()?;
    let cycles = cls.g_cycles.clone();
    let values = candidate_values(lambda);
    let one = lambda.field().one();
    let mut assignments: Vec<Vec<Option<usize>>> = vec![vec![None; cycles.len()]];
    for i in 0..cycles.len() {
        for v in 0..values.len() {
            let mut a = vec![None; cycles.len()];
            a[i] = Some(v);
            assignments.push(a);
        }
    }
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            for v in 0..values.len() {
                for w in 0..values.len() {
                    let mut a = vec![None; cycles.len()];
                    a[i] = Some(v);
                    a[j] = Some(w);
                    assignments.push(a);
                }
            }
        }
    }
    for assign in assignments {
        let mut cand = td.clone();
        for (cyc, choice) in cycles.iter().zip(&assign) {
            let c = choice.map_or(one.clone(), |v| values[v].1.clone());
            for &a in cyc {
                cand.params[a] = c.clone();
            }
        }
        let Ok(wsa) = WeightedSurfaceAlgebra::build(&cand) else {
            continue;
        };
        if presentations_agree(&wsa.algebra, target) {
            let norm = Normalization {
                cycles: cycles
                    .iter()
                    .zip(&assign)
                    .map(|(cyc, choice)| {
                        (
                            cls.cycle_string(td, std::slice::from_ref(cyc)),
                            choice.map_or("1".to_string(), |v| values[v].0.clone()),
                        )
                    })
                    .collect(),
            };
            return Some((norm, wsa));
        }
    }
    None
}

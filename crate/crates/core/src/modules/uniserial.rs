//! Uniserial modules and their subquotients `rad^s U / rad^t U`.

use std::sync::Arc;

use crate::algebra::BoundedAlgebra;
use crate::linalg::{coords_in_rref, rref, Matrix};
use crate::modules::{ModuleError, Representation};
use crate::quiver::VertexId;

/// `𝒰(v_1, …, v_t)`: basis `x_1, …, x_t` with `x_i ∈ M_{v_i}`, the unique
/// Gabriel arrow `v_i → v_{i+1}` sending `x_i` to `x_{i+1}` and every other
/// arrow acting as zero.
pub fn uniserial(alg: &Arc<BoundedAlgebra>, word: &[VertexId]) -> Result<Representation, ModuleError> {
    let q = alg.quiver();
    let field = alg.field();
    let name = || {
        format!(
            "({})",
            word.iter().map(|&v| q.vertices[v].as_str()).collect::<Vec<_>>().join(",")
        )
    };
    if word.is_empty() {
        return Err(ModuleError::NotRealizable(name()));
    }
    let gabriel = alg.gabriel_arrows();
    let mut steps = Vec::new();
    for w in word.windows(2) {
        let arrows: Vec<_> = q
            .arrows_from(w[0])
            .filter(|&a| q.target(a) == w[1] && gabriel[a])
            .collect();
        if arrows.len() != 1 {
            return Err(ModuleError::NotRealizable(name()));
        }
        steps.push(arrows[0]);
    }
    let mut dims = vec![0; q.num_vertices()];
    // position of x_i inside its vertex space
    let mut slot = Vec::with_capacity(word.len());
    for &v in word {
        slot.push(dims[v]);
        dims[v] += 1;
    }
    let mut maps: Vec<Matrix> = (0..q.num_arrows())
        .map(|a| Matrix::zeros(field, dims[q.source(a)], dims[q.target(a)]))
        .collect();
    for (i, &a) in steps.iter().enumerate() {
        maps[a].set(slot[i], slot[i + 1], field.one());
    }
    let rep = Representation::new(alg.clone(), dims, maps, format!("U{}", name()))
        .map_err(|_| ModuleError::NotRealizable(name()))?;
    if composition_word(&rep).as_deref() != Some(word) {
        return Err(ModuleError::NotRealizable(name()));
    }
    Ok(rep)
}

/// `rad^k M` for `k = 0, 1, …` until it vanishes (the zero term included).
pub fn radical_series(m: &Representation) -> Vec<Vec<Matrix>> {
    let mut series = vec![m.full_bases()];
    loop {
        let last = series.last().unwrap();
        if last.iter().all(|b| b.rows() == 0) {
            break;
        }
        let next = m.radical_of(last);
        series.push(next);
    }
    series
}

/// The vertex of each radical layer, if every layer is simple.
pub fn composition_word(m: &Representation) -> Option<Vec<VertexId>> {
    let series = radical_series(m);
    let mut word = Vec::new();
    for k in 0..series.len() - 1 {
        let layer: Vec<usize> = series[k]
            .iter()
            .zip(&series[k + 1])
            .map(|(a, b)| a.rows() - b.rows())
            .collect();
        if layer.iter().sum::<usize>() != 1 {
            return None;
        }
        word.push(layer.iter().position(|&d| d == 1).unwrap());
    }
    Some(word)
}

pub fn is_uniserial(m: &Representation) -> bool {
    composition_word(m).is_some()
}

/// `A/B` for submodules `B ⊆ A ⊆ M` given by row bases.
pub fn subquotient(m: &Representation, upper: &[Matrix], lower: &[Matrix]) -> Result<Representation, ModuleError> {
    let (sub, inc) = m.submodule(upper)?;
    // rows of `lower` in the basis of `upper`
    let field = m.field();
    let low: Vec<Matrix> = lower
        .iter()
        .zip(&inc.blocks)
        .enumerate()
        .map(|(v, (l, basis))| {
            let (r, piv) = rref(basis);
            let r = r.select_rows(&(0..piv.len()).collect::<Vec<_>>());
            let rows = (0..l.rows())
                .map(|i| {
                    coords_in_rref(&r, &piv, l.row(i)).ok_or_else(|| {
                        ModuleError::NotSubmodule(format!("vertex {}", m.algebra().quiver().vertices[v]))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Matrix::from_rows(field, sub.dims()[v], rows))
        })
        .collect::<Result<_, ModuleError>>()?;
    Ok(sub.quotient(&low)?.0)
}

/// One subquotient `rad^s U / rad^t U` of a uniserial module.
#[derive(Debug, Clone)]
pub struct Subquotient {
    pub s: usize,
    pub t: usize,
    pub word: Vec<VertexId>,
    pub module: Representation,
}

/// All `rad^s U / rad^t U`, `0 ≤ s < t ≤ ℓ(U)`.
pub fn subquotients_of_uniserial(u: &Representation) -> Result<Vec<Subquotient>, ModuleError> {
    let word = composition_word(u).ok_or_else(|| ModuleError::NotUniserial(u.label().to_string()))?;
    let series = radical_series(u);
    let q = u.algebra().quiver();
    let mut out = Vec::new();
    for s in 0..word.len() {
        for t in s + 1..=word.len() {
            let sub_word = word[s..t].to_vec();
            let label = format!(
                "U({})",
                sub_word.iter().map(|&v| q.vertices[v].as_str()).collect::<Vec<_>>().join(",")
            );
            let module = subquotient(u, &series[s], &series[t])?.with_label(label);
            out.push(Subquotient {
                s,
                t,
                word: sub_word,
                module,
            });
        }
    }
    Ok(out)
}

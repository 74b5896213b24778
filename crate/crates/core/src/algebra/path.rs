//! Paths and formal combinations of paths in a quiver.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::field::{Field, Scalar};
use crate::quiver::{ArrowId, Quiver, QuiverError, VertexId};

/// A path `e_source · a_1 ⋯ a_k`, composed left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Word {
    pub source: VertexId,
    pub target: VertexId,
    pub arrows: Vec<ArrowId>,
}

impl Word {
    pub fn trivial(v: VertexId) -> Word {
        Word {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn from_arrows(q: &Quiver, arrows: &[ArrowId]) -> Option<Word> {
        let (&first, _) = arrows.split_first()?;
        for w in arrows.windows(2) {
            if q.target(w[0]) != q.source(w[1]) {
                return None;
            }
        }
        Some(Word {
            source: q.source(first),
            target: q.target(*arrows.last().unwrap()),
            arrows: arrows.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Option<Word> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Word {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertices[self.source])
        } else {
            q.word_name(&self.arrows)
        }
    }
}

/// A finite scalar combination of paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathComb {
    pub terms: BTreeMap<Word, Scalar>,
}

impl PathComb {
    pub fn zero() -> Self {
        PathComb {
            terms: BTreeMap::new(),
        }
    }

    pub fn word(w: Word, field: Field) -> Self {
        let mut p = PathComb::zero();
        p.add_term(w, field.one());
        p
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(|| c.field().zero());
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = PathComb::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn add(&self, other: &PathComb) -> Self {
        let mut out = self.clone();
        for (w, x) in &other.terms {
            out.add_term(w.clone(), x.clone());
        }
        out
    }

    pub fn mul(&self, other: &PathComb) -> Self {
        let mut out = PathComb::zero();
        for (w1, x1) in &self.terms {
            for (w2, x2) in &other.terms {
                if let Some(w) = w1.concat(w2) {
                    out.add_term(w, x1 * x2);
                }
            }
        }
        out
    }

    /// `(source, target)` if every term is parallel.
    pub fn endpoints(&self) -> Option<(VertexId, VertexId)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let st = (first.source, first.target);
        it.all(|w| (w.source, w.target) == st).then_some(st)
    }

    pub fn min_len(&self) -> usize {
        self.terms.keys().map(Word::len).min().unwrap_or(0)
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if i > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            if !abs.is_one() {
                s.push_str(&format!("{abs}*"));
            }
            s.push_str(&w.display(q));
        }
        s
    }
}

/// Generators of a two-sided ideal, each with a human-readable label.
#[derive(Debug, Clone, Default)]
pub struct RelationSet {
    pub relations: Vec<PathComb>,
    pub labels: Vec<String>,
}

impl RelationSet {
    pub fn push(&mut self, label: impl Into<String>, r: PathComb) {
        self.labels.push(label.into());
        self.relations.push(r);
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum RelationParseError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("malformed relation `{0}`")]
    Malformed(String),
}

/// Parses `"delta beta alpha = lambda delta gamma delta"` or
/// `"alpha beta alpha gamma = 0"`. A side is a sum of terms; a term is an
/// optional coefficient (`lambda`, `-lambda`, an integer or `p/q`) followed by
/// arrow names. The relation returned is `lhs − rhs`.
pub fn parse_relation(q: &Quiver, field: Field, lambda: &Scalar, s: &str) -> Result<PathComb, RelationParseError> {
    let malformed = || RelationParseError::Malformed(s.to_string());
    let (lhs, rhs) = s.split_once('=').ok_or_else(malformed)?;
    let l = parse_side(q, field, lambda, lhs).ok_or_else(malformed)??;
    let r = parse_side(q, field, lambda, rhs).ok_or_else(malformed)??;
    Ok(l.add(&r.scale(&-field.one())))
}

fn parse_side(
    q: &Quiver,
    field: Field,
    lambda: &Scalar,
    side: &str,
) -> Option<Result<PathComb, RelationParseError>> {
    let side = side.trim();
    if side == "0" {
        return Some(Ok(PathComb::zero()));
    }
    let mut out = PathComb::zero();
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut sign = false;
    let mut cur = String::new();
    for tok in side.split_whitespace() {
        match tok {
            "+" | "-" => {
                if !cur.trim().is_empty() {
                    terms.push((sign, cur.clone()));
                }
                cur.clear();
                sign = tok == "-";
            }
            _ => {
                cur.push(' ');
                cur.push_str(tok);
            }
        }
    }
    if !cur.trim().is_empty() {
        terms.push((sign, cur));
    }
    for (neg, term) in terms {
        let mut coeff = field.one();
        let mut arrows = Vec::new();
        for tok in term.split(|c: char| c.is_whitespace() || c == '*' || c == '.') {
            if tok.is_empty() {
                continue;
            }
            if let Some(a) = q.arrow(tok) {
                arrows.push(a);
                continue;
            }
            if !arrows.is_empty() {
                return Some(Err(QuiverError::UnknownArrow(tok.to_string()).into()));
            }
            let c = match tok {
                "lambda" => lambda.clone(),
                "-lambda" => -lambda,
                _ => match field.parse_scalar(tok) {
                    Ok(c) => c,
                    Err(_) => return Some(Err(QuiverError::UnknownArrow(tok.to_string()).into())),
                },
            };
            coeff = &coeff * &c;
        }
        let w = Word::from_arrows(q, &arrows)?;
        if neg {
            coeff = -coeff;
        }
        out.add_term(w, coeff);
    }
    Some(Ok(out))
}

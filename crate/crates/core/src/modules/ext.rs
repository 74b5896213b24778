//! `Ext^i(M, N)` computed twice: as cohomology of `Hom(P_•, N)` and as the
//! stable Hom `Hom(Ω^i M, N)` modulo maps through the injective hull.

use thiserror::Error;

use crate::modules::hom::hom_dim;
use crate::modules::syzygy::{injective_hull, Hull, Resolution};
use crate::modules::Representation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtError {
    #[error("Ext^{degree}({left}, {right}): resolution gives {resolution}, stable Hom gives {stable}")]
    MethodMismatch {
        left: String,
        right: String,
        degree: usize,
        resolution: usize,
        stable: usize,
    },
    #[error("Ext degree must be at least 1")]
    DegreeZero,
}

/// Resolution and syzygy hulls of a fixed first argument, reusable against
/// many second arguments.
#[derive(Debug, Clone)]
pub struct ExtSource {
    pub resolution: Resolution,
    hulls: Vec<Option<Hull>>,
}

impl ExtSource {
    pub fn new(m: &Representation, max_degree: usize) -> Self {
        let resolution = Resolution::new(m, max_degree + 1);
        let hulls = (0..=max_degree)
            .map(|i| {
                let x = &resolution.syzygies[i];
                (i > 0 && !x.is_zero()).then(|| injective_hull(x).expect("self-injective algebra"))
            })
            .collect();
        ExtSource { resolution, hulls }
    }

    pub fn module(&self) -> &Representation {
        &self.resolution.syzygies[0]
    }

    pub fn max_degree(&self) -> usize {
        self.hulls.len() - 1
    }

    pub fn by_resolution(&self, n: &Representation, i: usize) -> usize {
        let res = &self.resolution;
        let h: usize = res.tops[i].iter().map(|&v| n.dims()[v]).sum();
        let out = res.dual_differential(i + 1, n).rank();
        let inc = res.dual_differential(i, n).rank();
        h - out - inc
    }

    pub fn by_stable_hom(&self, n: &Representation, i: usize) -> usize {
        let x = &self.resolution.syzygies[i];
        let Some(hull) = &self.hulls[i] else { return 0 };
        let hom = hom_dim(x, n);
        if hom == 0 {
            return 0;
        }
        hom - hull.restriction_rank(n)
    }

    /// Both computations, which must agree.
    pub fn ext(&self, n: &Representation, i: usize) -> Result<usize, ExtError> {
        if i == 0 {
            return Err(ExtError::DegreeZero);
        }
        assert!(i <= self.max_degree(), "degree beyond the prepared resolution");
        let a = self.by_resolution(n, i);
        let b = self.by_stable_hom(n, i);
        if a != b {
            return Err(ExtError::MethodMismatch {
                left: self.module().label().to_string(),
                right: n.label().to_string(),
                degree: i,
                resolution: a,
                stable: b,
            });
        }
        Ok(a)
    }
}

pub fn ext_by_resolution(m: &Representation, n: &Representation, i: usize) -> usize {
    ExtSource::new(m, i).by_resolution(n, i)
}

pub fn ext_by_stable_hom(m: &Representation, n: &Representation, i: usize) -> usize {
    ExtSource::new(m, i).by_stable_hom(n, i)
}

/// `dim Ext^i(M, N)` for `i ≥ 1`, cross-checked between both methods.
pub fn ext_dim(m: &Representation, n: &Representation, i: usize) -> Result<usize, ExtError> {
    if i == 0 {
        return Err(ExtError::DegreeZero);
    }
    ExtSource::new(m, i).ext(n, i)
}

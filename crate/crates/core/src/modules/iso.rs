//! Isomorphism testing through invertible elements of `Hom(M, N)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::modules::hom::hom_space;
use crate::modules::{Morphism, Representation};

#[derive(Debug, Clone, Copy)]
pub struct IsoOptions {
    pub seed: u64,
    /// Random combinations tried over ℚ.
    pub retries: usize,
    /// Hom dimension up to which all `{0,1}` combinations are enumerated.
    pub exhaustive_up_to: usize,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            seed: 0x5eed,
            retries: 8,
            exhaustive_up_to: 10,
        }
    }
}

fn combination(basis: &[Morphism], coeffs: &[crate::field::Scalar]) -> Morphism {
    let mut acc = basis[0].scale(&coeffs[0]);
    for (b, c) in basis.iter().zip(coeffs).skip(1) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// Whether `M ≅ N`.
///
/// Invertible maps form a Zariski-open subset of `Hom(M, N)`, so a random
/// combination of a basis is invertible with high probability when one
/// exists. Basis elements are tried first, then seeded random combinations
/// (`retries` over ℚ, four times as many over `GF(p)`), then every
/// `{0,1}`-combination when the Hom space is small enough.
pub fn is_isomorphic(m: &Representation, n: &Representation, opts: IsoOptions) -> bool {
    if m.dims() != n.dims() {
        return false;
    }
    if m.is_zero() {
        return true;
    }
    let basis = hom_space(m, n);
    if basis.is_empty() {
        return false;
    }
    if basis.iter().any(Morphism::is_iso) {
        return true;
    }
    let field = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let tries = match field {
        Field::Rational => opts.retries,
        Field::Prime(_) => opts.retries * 4,
    };
    for _ in 0..tries {
        let coeffs: Vec<_> = basis.iter().map(|_| field.random(&mut rng)).collect();
        if combination(&basis, &coeffs).is_iso() {
            return true;
        }
    }
    if basis.len() <= opts.exhaustive_up_to {
        for mask in 1u32..(1 << basis.len()) {
            let coeffs: Vec<_> = (0..basis.len())
                .map(|i| if mask >> i & 1 == 1 { field.one() } else { field.zero() })
                .collect();
            if combination(&basis, &coeffs).is_iso() {
                return true;
            }
        }
    }
    false
}

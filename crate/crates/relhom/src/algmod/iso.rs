//! Isomorphism search between modules.

use super::hom::HomSpace;
use super::module::{ModMap, Module};
use crate::exactlin::FpMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_TRIALS: usize = 200;

/// Budget for the deterministic sums-of-basis-elements phase.
const COMBINATION_BUDGET: usize = 4000;

/// `(dim, dim top, dim socle)`.
pub fn invariants(m: &Module) -> (usize, usize, usize) {
    (m.dim(), m.top_dim(), m.socle_dim())
}

#[derive(Clone, Debug)]
pub enum IsoSearch {
    Found(ModMap),
    /// Invariants differ; no isomorphism exists.
    Impossible { reason: String },
    /// Invariants agree but no invertible element turned up.
    NotFound { trials: usize },
}

impl IsoSearch {
    pub fn map(&self) -> Option<&ModMap> {
        match self {
            IsoSearch::Found(f) => Some(f),
            _ => None,
        }
    }
    pub fn found(&self) -> bool {
        matches!(self, IsoSearch::Found(_))
    }
}

/// Searches `Hom(M, N)` for an invertible element: basis elements, sums of
/// up to three of them, then seeded random combinations.
pub fn find_isomorphism(m: &Module, n: &Module, trials: usize, seed: u64) -> IsoSearch {
    if m.check_same_algebra(n).is_err() {
        return IsoSearch::Impossible {
            reason: "different algebras".into(),
        };
    }
    let (im, inn) = (invariants(m), invariants(n));
    if im != inn {
        return IsoSearch::Impossible {
            reason: format!("invariants (dim, top, socle) {im:?} vs {inn:?}"),
        };
    }
    if m.dim() == 0 {
        return IsoSearch::Found(ModMap::zero(m, n));
    }
    let hs = HomSpace::new(m, n).expect("same algebra");
    let h = hs.dim();
    let p = m.p();
    let maps: Vec<FpMatrix> = (0..h).map(|l| hs.basis_map(l)).collect();
    let found = |f: FpMatrix| -> Option<IsoSearch> {
        (f.rank() == m.dim())
            .then(|| IsoSearch::Found(ModMap::new_unchecked(m.clone(), n.clone(), f)))
    };
    let mut budget = COMBINATION_BUDGET;
    for a in 0..h {
        if let Some(r) = found(maps[a].clone()) {
            return r;
        }
    }
    'pairs: for a in 0..h {
        for b in a + 1..h {
            if budget == 0 {
                break 'pairs;
            }
            budget -= 1;
            if let Some(r) = found(maps[a].add(&maps[b])) {
                return r;
            }
        }
    }
    'triples: for a in 0..h {
        for b in a + 1..h {
            let ab = maps[a].add(&maps[b]);
            for c in b + 1..h {
                if budget == 0 {
                    break 'triples;
                }
                budget -= 1;
                if let Some(r) = found(ab.add(&maps[c])) {
                    return r;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let coeffs: Vec<u32> = (0..h).map(|_| rng.gen_range(0..p)).collect();
        if let Some(r) = found(hs.element(&coeffs)) {
            return r;
        }
    }
    IsoSearch::NotFound { trials }
}

#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relhom::algmod::{Algebra, ModMap, Module};
use relhom::sample;
use relhom::shipped;
use std::sync::Arc;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One of the four shipped algebras, chosen by `i`.
pub fn algebra(i: usize) -> Arc<Algebra> {
    match i % 4 {
        0 => shipped::kxx2(),
        1 => shipped::a3(),
        2 => shipped::a4(),
        _ => shipped::kxx3(),
    }
}

/// `0 -> Ker h -> U -> Im h -> 0` for a random `h : U -> V`.
pub fn short_exact(alg: &Arc<Algebra>, rng: &mut ChaCha8Rng, max_dim: usize) -> (ModMap, ModMap) {
    sample::short_exact(alg, rng, max_dim)
}

pub fn residue(alg: &Arc<Algebra>) -> Module {
    Module::residue_field(alg)
}

//! Seeded random modules, maps and complexes for property checks.

use crate::algmod::{cokernel, image, kernel, Algebra, HomSpace, ModMap, Module};
use crate::chaincx::{ChainMap, Complex};
use crate::exactlin::FpMatrix;
use crate::shipped::cyclic_quotient;
use rand::seq::SliceRandom;
use rand::Rng;
use std::sync::Arc;

/// A random element of the radical.
pub fn radical_element<R: Rng>(alg: &Arc<Algebra>, rng: &mut R) -> Vec<u32> {
    let rad = alg.radical().basis();
    let p = alg.p();
    let mut v = vec![0; alg.dim()];
    for c in 0..rad.cols() {
        let s = rng.gen_range(0..p);
        for (r, x) in v.iter_mut().enumerate() {
            *x = (*x + s * rad.get(r, c)) % p;
        }
    }
    v
}

/// A random cyclic module `A / (a_1, ..., a_t)` with `a_i` in the radical.
pub fn cyclic_module<R: Rng>(alg: &Arc<Algebra>, rng: &mut R) -> Module {
    let t = rng.gen_range(0..=2);
    let elems: Vec<Vec<u32>> = (0..t).map(|_| radical_element(alg, rng)).collect();
    cyclic_quotient(alg, &elems)
}

/// A random nonzero module of dimension at most `max_dim` (or the residue
/// field when nothing smaller fits).
pub fn module<R: Rng>(alg: &Arc<Algebra>, rng: &mut R, max_dim: usize) -> Module {
    for _ in 0..16 {
        let m = match rng.gen_range(0..7) {
            0 => Module::residue_field(alg),
            1 => Module::regular(alg),
            2 => Module::regular(alg).dual(),
            3 => cyclic_module(alg, rng),
            4 => cyclic_module(alg, rng).dual(),
            5 => cyclic_module(alg, rng).direct_sum(&cyclic_module(alg, rng)),
            _ => {
                // A random quotient of a small free module.
                let f = Module::free(alg, 2);
                let g = homomorphism(&Module::regular(alg), &f, rng);
                cokernel(&g).0
            }
        };
        if !m.is_zero() && m.dim() <= max_dim {
            return m;
        }
    }
    Module::residue_field(alg)
}

/// A uniformly random element of `Hom(M, N)`.
pub fn homomorphism<R: Rng>(m: &Module, n: &Module, rng: &mut R) -> ModMap {
    let hs = HomSpace::new(m, n).expect("same algebra");
    let p = m.p();
    let coeffs: Vec<u32> = (0..hs.dim()).map(|_| rng.gen_range(0..p)).collect();
    ModMap::new(m.clone(), n.clone(), hs.element(&coeffs)).expect("Hom elements are linear")
}

/// `0 -> Ker h -> U -> Im h -> 0` for a random `h : U -> V`.
pub fn short_exact<R: Rng>(alg: &Arc<Algebra>, rng: &mut R, max_dim: usize) -> (ModMap, ModMap) {
    let u = module(alg, rng, max_dim);
    let v = module(alg, rng, max_dim);
    let h = homomorphism(&u, &v, rng);
    let (_, inc) = kernel(&h);
    let (_, onto, _) = image(&h);
    (inc, onto)
}

/// A random complex in degrees `0..=len` with free or cyclic terms. Each
/// differential factors through the cokernel of the previous one, so
/// `∂∂ = 0` holds and homology is usually nonzero.
pub fn complex<R: Rng>(alg: &Arc<Algebra>, rng: &mut R, len: usize) -> Complex {
    let pick = |rng: &mut R| -> Module {
        let objs = [
            Module::regular(alg),
            Module::residue_field(alg),
            Module::free(alg, 2),
            Module::regular(alg).dual(),
        ];
        objs.choose(rng).expect("nonempty").clone()
    };
    // Build top-down: X_len -> X_{len-1} -> ... -> X_0.
    let mut objects = vec![pick(rng)];
    let mut maps: Vec<FpMatrix> = Vec::new();
    for _ in 0..len {
        let src = objects.last().expect("nonempty").clone();
        let tgt = pick(rng);
        let d = match maps.last() {
            None => homomorphism(&src, &tgt, rng).matrix,
            Some(prev) => {
                let prev = ModMap::new(objects[objects.len() - 2].clone(), src.clone(), prev.clone())
                    .expect("linear");
                let (q, proj, _) = cokernel(&prev);
                homomorphism(&q, &tgt, rng).matrix.mul(&proj.matrix)
            }
        };
        maps.push(d);
        objects.push(tgt);
    }
    objects.reverse();
    maps.reverse();
    Complex::new(alg, 0, objects, maps).expect("random complex is valid")
}

/// Multiplication by a random algebra element, a chain endomorphism.
pub fn scalar_chain_map<R: Rng>(x: &Complex, rng: &mut R) -> ChainMap {
    let alg = x.algebra();
    let p = alg.p();
    let a: Vec<u32> = (0..alg.dim()).map(|_| rng.gen_range(0..p)).collect();
    let comps = (x.lo()..=x.hi()).map(|n| x.object(n).action_of(&a)).collect();
    ChainMap::new(x, x, x.lo(), comps).expect("scalars commute with everything")
}

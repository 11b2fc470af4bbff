//! Minimal projective resolutions and the absolute Ext and Tor dimensions
//! read off from them.

use crate::algmod::{find_isomorphism, kernel, projective_cover, HomSpace, ModMap, Module};
use crate::chaincx::Complex;
use crate::exactlin::FpMatrix;

/// One step `P_n ->> Ω^n M`, with `Ω^{n+1} M` and its inclusion in `P_n`.
#[derive(Clone, Debug)]
struct Level {
    cover: ModMap,
    inclusion: ModMap,
}

/// A minimal projective resolution, extended on demand.
#[derive(Clone, Debug)]
pub struct MinimalResolution {
    module: Module,
    levels: Vec<Level>,
}

impl MinimalResolution {
    pub fn new(m: &Module) -> MinimalResolution {
        MinimalResolution {
            module: m.clone(),
            levels: Vec::new(),
        }
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    /// Computes `P_0, ..., P_n`.
    pub fn ensure(&mut self, n: usize) {
        while self.levels.len() <= n {
            let omega = self.syzygy_computed(self.levels.len());
            let cover = projective_cover(&omega);
            let (_, inclusion) = kernel(&cover);
            self.levels.push(Level { cover, inclusion });
        }
    }

    fn syzygy_computed(&self, n: usize) -> Module {
        if n == 0 {
            self.module.clone()
        } else {
            self.levels[n - 1].inclusion.source.clone()
        }
    }

    /// `Ω^n M`, with `Ω^0 M = M`.
    pub fn syzygy(&mut self, n: usize) -> Module {
        if n > 0 {
            self.ensure(n - 1);
        }
        self.syzygy_computed(n)
    }

    /// `P_n`.
    pub fn free(&mut self, n: usize) -> Module {
        self.ensure(n);
        self.levels[n].cover.source.clone()
    }
    pub fn rank(&mut self, n: usize) -> usize {
        self.free(n).free_rank().expect("free")
    }

    /// `P_n ->> Ω^n M`.
    pub fn cover(&mut self, n: usize) -> ModMap {
        self.ensure(n);
        self.levels[n].cover.clone()
    }

    /// `Ω^{n+1} M >-> P_n`.
    pub fn inclusion(&mut self, n: usize) -> ModMap {
        self.ensure(n);
        self.levels[n].inclusion.clone()
    }

    /// `∂_n : P_n -> P_{n-1}` for `n >= 1`.
    pub fn differential(&mut self, n: usize) -> ModMap {
        assert!(n >= 1);
        self.ensure(n);
        self.levels[n - 1].inclusion.compose(&self.levels[n].cover)
    }

    /// `P_len -> ... -> P_0` in degrees `0..=len`.
    pub fn complex(&mut self, len: usize) -> Complex {
        self.ensure(len);
        let alg = self.module.algebra().clone();
        let objects = (0..=len).map(|n| self.levels[n].cover.source.clone()).collect();
        let diffs = (1..=len).map(|n| self.differential(n).matrix).collect();
        Complex::new_unchecked(&alg, 0, objects, diffs).expect("resolution shapes")
    }

    /// Least `j <= bound` with `Ω^j M = 0`.
    pub fn finite_length(&mut self, bound: usize) -> Option<usize> {
        (0..=bound).find(|&j| self.syzygy(j).is_zero())
    }

    /// A pair `i < j <= bound` with `Ω^i M ≅ Ω^j M` found by an explicit
    /// isomorphism, so that the resolution repeats from `i` on.
    pub fn periodicity(&mut self, bound: usize, trials: usize, seed: u64) -> Option<(usize, usize)> {
        for j in 1..=bound {
            let oj = self.syzygy(j);
            for i in 0..j {
                let oi = self.syzygy(i);
                if find_isomorphism(&oi, &oj, trials, seed).found() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// `dim Ext^i(M, N)`, through `Ext^i = coker(Hom(P_{i-1}, N) -> Hom(Ω^i, N))`.
    pub fn ext_dim(&mut self, n: &Module, i: usize) -> usize {
        if i == 0 {
            return HomSpace::new(&self.module, n).expect("same algebra").dim();
        }
        let inc = self.inclusion(i - 1);
        if inc.source.is_zero() {
            return 0;
        }
        let h_omega = HomSpace::new(&inc.source, n).expect("same algebra");
        if h_omega.dim() == 0 {
            return 0;
        }
        let h_free = HomSpace::new(&inc.target, n).expect("same algebra");
        let restrict = h_free.precompose(&inc.matrix, &h_omega);
        h_omega.dim() - restrict.rank()
    }

    /// `dim Tor_i(C, M)` as homology of `C ⊗ P`.
    pub fn tor_dim(&mut self, c: &Module, i: usize) -> usize {
        let rank = self.rank(i);
        let d_out = if i == 0 {
            FpMatrix::zeros(c.p(), 0, rank * c.dim())
        } else {
            let d = self.differential(i);
            tensor_free_map(c, &d)
        };
        let d_in = tensor_free_map(c, &self.differential(i + 1));
        rank * c.dim() - d_out.rank() - d_in.rank()
    }
}

/// `C ⊗ f : C^r -> C^s` for a map `f : A^r -> A^s` of free modules.
pub fn tensor_free_map(c: &Module, f: &ModMap) -> FpMatrix {
    let alg = c.algebra();
    let d = alg.dim();
    let r = f.source.free_rank().expect("free source");
    let s = f.target.free_rank().expect("free target");
    let n = c.dim();
    let mut out = FpMatrix::zeros(c.p(), s * n, r * n);
    let images = f.matrix.mul(&f.source.top().gens);
    for i in 0..r {
        for k in 0..s {
            let a: Vec<u32> = (0..d).map(|t| images.get(k * d + t, i)).collect();
            if a.iter().all(|&x| x == 0) {
                continue;
            }
            out.set_block(k * n, i * n, &c.action_of(&a));
        }
    }
    out
}

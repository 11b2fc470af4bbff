//! `Hom_A(M, N)` computed through a presentation of `M`.
//!
//! A homomorphism `h : M -> N` is determined by the images `x_i = h(g_i)`
//! of the minimal generators of `M`, subject to the relations of `M`. The
//! "x-vector" of `h` stacks `x_1, ..., x_r`; Hom is the null space of the
//! relation equations in that space. When `M` is free there are no
//! relations and coordinates are the x-vector itself.

use super::module::{ModMap, Module};
use crate::error::Result;
use crate::exactlin::FpMatrix;
use std::sync::Arc;

#[derive(Clone, Debug)]
enum Basis {
    /// Every x-vector is a homomorphism.
    Full,
    /// Columns span Hom inside x-space; coordinates are `x[free]`.
    Kernel { k: FpMatrix, free: Vec<usize> },
}

/// `Hom_A(source, target)` with canonical coordinates.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: Module,
    target: Module,
    rank: usize,
    basis: Basis,
}

impl HomSpace {
    pub fn new(source: &Module, target: &Module) -> Result<HomSpace> {
        source.check_same_algebra(target)?;
        let alg = source.algebra();
        let p = source.p();
        let d = alg.dim();
        let n = target.dim();
        let rank = source.num_generators();
        let rel = source.relations();
        let basis = if rel.cols() == 0 {
            Basis::Full
        } else {
            // Relation ρ = Σ a_{ρ,i} e_i imposes Σ a_{ρ,i} x_i = 0.
            let mut eq = FpMatrix::zeros(p, rel.cols() * n, rank * n);
            for rho in 0..rel.cols() {
                for i in 0..rank {
                    let a: Vec<u32> = (0..d).map(|j| rel.get(i * d + j, rho)).collect();
                    if a.iter().all(|&c| c == 0) {
                        continue;
                    }
                    eq.set_block(rho * n, i * n, &target.action_of(&a));
                }
            }
            let (k, free) = eq.kernel_with_free_cols();
            Basis::Kernel { k, free }
        };
        Ok(HomSpace {
            source: source.clone(),
            target: target.clone(),
            rank,
            basis,
        })
    }

    pub fn source(&self) -> &Module {
        &self.source
    }
    pub fn target(&self) -> &Module {
        &self.target
    }
    pub fn dim(&self) -> usize {
        match &self.basis {
            Basis::Full => self.rank * self.target.dim(),
            Basis::Kernel { k, .. } => k.cols(),
        }
    }
    fn x_dim(&self) -> usize {
        self.rank * self.target.dim()
    }

    /// The x-vector of basis element `l`.
    pub fn basis_x(&self, l: usize) -> Vec<u32> {
        match &self.basis {
            Basis::Full => {
                let mut v = vec![0; self.x_dim()];
                v[l] = 1;
                v
            }
            Basis::Kernel { k, .. } => k.column(l),
        }
    }

    /// `phi * K`: applies an x-space map to every basis element.
    fn apply_to_basis(&self, phi: &FpMatrix) -> FpMatrix {
        match &self.basis {
            Basis::Full => phi.clone(),
            Basis::Kernel { k, .. } => phi.mul(k),
        }
    }

    /// Coordinates of x-vectors given as columns.
    pub fn coords_of_x(&self, xs: &FpMatrix) -> FpMatrix {
        match &self.basis {
            Basis::Full => xs.clone(),
            Basis::Kernel { free, .. } => xs.select_rows(free),
        }
    }

    /// The homomorphism with the given x-vector.
    pub fn map_from_x(&self, x: &[u32]) -> FpMatrix {
        let alg = self.source.algebra();
        let d = alg.dim();
        let n = self.target.dim();
        let xs = FpMatrix::from_vec(self.source.p(), self.rank, n, x.to_vec())
            .expect("x-vector length")
            .transpose();
        // Column (i, j) of H is b_j · x_i; then h = H σ.
        let mut h = FpMatrix::zeros(self.source.p(), n, self.rank * d);
        for j in 0..d {
            let img = self.target.act(&alg.basis_vector(j), &xs);
            for i in 0..self.rank {
                for r in 0..n {
                    h.set(r, i * d + j, img.get(r, i));
                }
            }
        }
        if self.source.free_rank().is_some() {
            h
        } else {
            h.mul(self.source.cover_section())
        }
    }

    /// The homomorphism with the given coordinates.
    pub fn element(&self, coords: &[u32]) -> FpMatrix {
        let x = match &self.basis {
            Basis::Full => coords.to_vec(),
            Basis::Kernel { k, .. } => k.mul_vec(coords),
        };
        self.map_from_x(&x)
    }

    pub fn basis_map(&self, l: usize) -> FpMatrix {
        self.map_from_x(&self.basis_x(l))
    }

    pub fn basis_maps(&self) -> Vec<ModMap> {
        (0..self.dim())
            .map(|l| {
                ModMap::new_unchecked(
                    self.source.clone(),
                    self.target.clone(),
                    self.basis_map(l),
                )
            })
            .collect()
    }

    /// x-vector of a homomorphism.
    pub fn x_of_map(&self, h: &FpMatrix) -> Vec<u32> {
        h.mul(&self.source.top().gens).transpose().data().to_vec()
    }

    pub fn coords_of_map(&self, h: &FpMatrix) -> Vec<u32> {
        let x = self.x_of_map(h);
        match &self.basis {
            Basis::Full => x,
            Basis::Kernel { free, .. } => free.iter().map(|&i| x[i]).collect(),
        }
    }

    /// Matrix of `Hom(f, N) : Hom(S, N) -> Hom(S', N)`, `h ↦ h ∘ f`, where
    /// `f : S' -> S` and `other = Hom(S', N)`.
    pub fn precompose(&self, f: &FpMatrix, other: &HomSpace) -> FpMatrix {
        let phi = self.precompose_x(f, other);
        other.coords_of_x(&self.apply_to_basis(&phi))
    }

    /// The x-space map behind [`Self::precompose`].
    fn precompose_x(&self, f: &FpMatrix, other: &HomSpace) -> FpMatrix {
        let alg = self.source.algebra();
        let d = alg.dim();
        let n = self.target.dim();
        let p = self.source.p();
        let r_new = other.rank;
        let mut phi = FpMatrix::zeros(p, r_new * n, self.rank * n);
        if r_new == 0 || self.rank == 0 || n == 0 {
            return phi;
        }
        let images = f.mul(&other.source.top().gens);
        let z = if self.source.free_rank().is_some() {
            images
        } else {
            self.source.cover_section().mul(&images)
        };
        for j in 0..r_new {
            for i in 0..self.rank {
                let a: Vec<u32> = (0..d).map(|t| z.get(i * d + t, j)).collect();
                if a.iter().all(|&c| c == 0) {
                    continue;
                }
                phi.set_block(j * n, i * n, &self.target.action_of(&a));
            }
        }
        phi
    }

    /// Matrix of `Hom(S, g) : Hom(S, N) -> Hom(S, N')`, `h ↦ g ∘ h`, where
    /// `g : N -> N'` and `other = Hom(S, N')`.
    pub fn postcompose(&self, g: &FpMatrix, other: &HomSpace) -> FpMatrix {
        let phi = g.repeat_diag(self.rank);
        other.coords_of_x(&self.apply_to_basis(&phi))
    }

    /// The A-module structure `(a·h)(m) = a·h(m)`.
    pub fn module(&self) -> Module {
        let alg = self.source.algebra();
        let action = (0..alg.dim())
            .map(|i| {
                let phi = self.target.action(i).repeat_diag(self.rank);
                self.coords_of_x(&self.apply_to_basis(&phi))
            })
            .collect();
        if self.dim() == 0 {
            return Module::zero(alg);
        }
        Module::new_unchecked(Arc::clone(alg), action)
    }
}

/// `Hom_A(M, N)` as a module, with its basis as homomorphisms.
pub fn hom_module(m: &Module, n: &Module) -> Result<(Module, Vec<ModMap>)> {
    let h = HomSpace::new(m, n)?;
    Ok((h.module(), h.basis_maps()))
}

/// Finds `h : S -> B` with `g ∘ h = t`, where `g : B -> C` and `t : S -> C`.
pub fn lift_through(g: &ModMap, t: &ModMap) -> Option<FpMatrix> {
    let s = &t.source;
    let b = &g.source;
    let p = s.p();
    if s.is_zero() {
        return Some(FpMatrix::zeros(p, b.dim(), 0));
    }
    let gens = &s.top().gens;
    let rhs = t.matrix.mul(gens);
    if s.relations().cols() == 0 {
        // Generator images can be chosen independently.
        let xs = g.matrix.solve_matrix(&rhs)?;
        let x = xs.transpose().data().to_vec();
        let hs = HomSpace::new(s, b).ok()?;
        return Some(hs.map_from_x(&x));
    }
    let hs = HomSpace::new(s, b).ok()?;
    let phi = g.matrix.repeat_diag(hs.rank);
    let lhs = hs.apply_to_basis(&phi);
    let target = rhs.transpose().data().to_vec();
    let (c, _) = lhs.solve(&target)?;
    Some(hs.element(&c))
}

/// Finds `h : B -> C` with `h ∘ g = t`, where `g : S -> B` and `t : S -> C`.
pub fn extend_through(g: &ModMap, t: &ModMap) -> Option<FpMatrix> {
    let hs_b = HomSpace::new(&g.target, &t.target).ok()?;
    let hs_s = HomSpace::new(&g.source, &t.target).ok()?;
    let pre = hs_b.precompose(&g.matrix, &hs_s);
    let target = hs_s.coords_of_map(&t.matrix);
    let (c, _) = pre.solve(&target)?;
    Some(hs_b.element(&c))
}

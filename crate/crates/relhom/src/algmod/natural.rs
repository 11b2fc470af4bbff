//! The four natural maps attached to a module `C`.

use super::hom::HomSpace;
use super::module::{ModMap, Module};
use super::tensor::{tensor_module, Tensor};
use crate::error::Result;
use crate::exactlin::FpMatrix;

/// `A -> Hom(C, C)`, `a ↦ (c ↦ a c)`.
pub fn homothety_map(c: &Module) -> Result<ModMap> {
    let alg = c.algebra();
    let hs = HomSpace::new(c, c)?;
    let cols: Vec<Vec<u32>> = (0..alg.dim())
        .map(|j| hs.coords_of_map(&c.action(j)))
        .collect();
    let m = FpMatrix::from_columns(c.p(), hs.dim(), &cols);
    Ok(ModMap::new_unchecked(Module::regular(alg), hs.module(), m))
}

/// Canonical data for `Hom(Hom(M, C), C)`.
pub struct Biduality {
    pub inner: HomSpace,
    pub outer: HomSpace,
    pub map: ModMap,
}

/// `M -> Hom(Hom(M, C), C)`, `m ↦ (f ↦ f(m))`.
pub fn biduality(m: &Module, c: &Module) -> Result<Biduality> {
    let inner = HomSpace::new(m, c)?;
    let dual = inner.module();
    let outer = HomSpace::new(&dual, c)?;
    let p = m.p();
    let maps: Vec<FpMatrix> = (0..inner.dim()).map(|l| inner.basis_map(l)).collect();
    let mut cols = Vec::with_capacity(m.dim());
    for j in 0..m.dim() {
        // Column l of the evaluation at e_j is f_l(e_j).
        let mut ev = FpMatrix::zeros(p, c.dim(), inner.dim());
        for (l, f) in maps.iter().enumerate() {
            for r in 0..c.dim() {
                ev.set(r, l, f.get(r, j));
            }
        }
        cols.push(outer.coords_of_map(&ev));
    }
    let matrix = FpMatrix::from_columns(p, outer.dim(), &cols);
    let map = ModMap::new_unchecked(m.clone(), outer.module(), matrix);
    Ok(Biduality { inner, outer, map })
}

pub fn biduality_map(m: &Module, c: &Module) -> Result<ModMap> {
    Ok(biduality(m, c)?.map)
}

/// `C ⊗ Hom(C, N) -> N`, `c ⊗ f ↦ f(c)`.
pub fn evaluation_map(c: &Module, n: &Module) -> Result<ModMap> {
    let hs = HomSpace::new(c, n)?;
    let h = hs.module();
    let t = tensor_module(c, &h)?;
    let p = c.p();
    let maps: Vec<FpMatrix> = (0..hs.dim()).map(|l| hs.basis_map(l)).collect();
    let mut ev = FpMatrix::zeros(p, n.dim(), c.dim() * hs.dim());
    for i in 0..c.dim() {
        for (l, f) in maps.iter().enumerate() {
            for r in 0..n.dim() {
                ev.set(r, i * hs.dim() + l, f.get(r, i));
            }
        }
    }
    let matrix = ev.mul(&t.section);
    Ok(ModMap::new_unchecked(t.module, n.clone(), matrix))
}

/// `M -> Hom(C, C ⊗ M)`, `m ↦ (c ↦ c ⊗ m)`.
pub fn unit_map(m: &Module, c: &Module) -> Result<ModMap> {
    let t: Tensor = tensor_module(c, m)?;
    let hs = HomSpace::new(c, &t.module)?;
    let p = m.p();
    let mut cols = Vec::with_capacity(m.dim());
    for j in 0..m.dim() {
        let mut raw = FpMatrix::zeros(p, c.dim() * m.dim(), c.dim());
        for i in 0..c.dim() {
            raw.set(i * m.dim() + j, i, 1);
        }
        cols.push(hs.coords_of_map(&t.projection.mul(&raw)));
    }
    let matrix = FpMatrix::from_columns(p, hs.dim(), &cols);
    Ok(ModMap::new_unchecked(m.clone(), hs.module(), matrix))
}

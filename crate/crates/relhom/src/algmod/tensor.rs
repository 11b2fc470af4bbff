//! `M ⊗_A N` as a quotient of `M ⊗_k N`.

use super::module::Module;
use crate::error::Result;
use crate::exactlin::{FpMatrix, Subspace};

/// The tensor product with the quotient data relating it to `M ⊗_k N`,
/// whose basis `m_i ⊗ n_j` is indexed `i * dim N + j`.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub module: Module,
    pub left: Module,
    pub right: Module,
    /// `M ⊗_k N -> M ⊗_A N`.
    pub projection: FpMatrix,
    /// A linear section of the projection.
    pub section: FpMatrix,
}

/// Kronecker product.
pub fn kron(a: &FpMatrix, b: &FpMatrix) -> FpMatrix {
    let p = a.p();
    let fp = a.fp();
    let mut out = FpMatrix::zeros(p, a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let c = a.get(i, j);
            if c == 0 {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    let v = b.get(k, l);
                    if v != 0 {
                        out.set(i * b.rows() + k, j * b.cols() + l, fp.mul(c, v));
                    }
                }
            }
        }
    }
    out
}

pub fn tensor_module(m: &Module, n: &Module) -> Result<Tensor> {
    m.check_same_algebra(n)?;
    let alg = m.algebra();
    let p = m.p();
    let (dm, dn) = (m.dim(), n.dim());
    let id_m = FpMatrix::identity(p, dm);
    let id_n = FpMatrix::identity(p, dn);
    // (g m) ⊗ n - m ⊗ (g n) for the radical generators g span all relations.
    let parts: Vec<FpMatrix> = alg
        .generators()
        .iter()
        .map(|g| kron(&m.action_of(g), &id_n).sub(&kron(&id_m, &n.action_of(g))))
        .collect();
    let rel = Subspace::span(&FpMatrix::hstack_all(p, dm * dn, &parts));
    let projection = rel.quotient_projection();
    let comp = rel.complement_coordinates();
    let mut section = FpMatrix::zeros(p, dm * dn, comp.len());
    for (t, &j) in comp.iter().enumerate() {
        section.set(j, t, 1);
    }
    let module = if comp.is_empty() {
        Module::zero(alg)
    } else {
        let action = (0..alg.dim())
            .map(|i| {
                projection
                    .mul(&kron(&m.action(i), &id_n))
                    .mul(&section)
            })
            .collect();
        Module::new_unchecked(alg.clone(), action)
    };
    Ok(Tensor {
        module,
        left: m.clone(),
        right: n.clone(),
        projection,
        section,
    })
}

impl Tensor {
    /// Matrix of `f ⊗ g : self -> other` for `f : M -> M'`, `g : N -> N'`.
    pub fn map(&self, other: &Tensor, f: &FpMatrix, g: &FpMatrix) -> FpMatrix {
        other.projection.mul(&kron(f, g)).mul(&self.section)
    }
}

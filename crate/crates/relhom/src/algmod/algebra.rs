//! Finite-dimensional commutative local algebras given by structure constants.

use crate::error::{Error, Result};
use crate::exactlin::{check_prime, Fp, FpMatrix, Subspace};
use std::sync::Arc;

/// A commutative local F_p-algebra with residue field F_p.
///
/// Basis element `i` times basis element `j` is `mult[i * dim + j]`, a
/// coefficient vector. Construction validates every axiom, so an `Algebra`
/// value is always associative, commutative, unital and local.
#[derive(Debug)]
pub struct Algebra {
    p: u32,
    names: Vec<String>,
    unit: Vec<u32>,
    mult: Vec<Vec<u32>>,
    left: Vec<FpMatrix>,
    radical_chain: Vec<Subspace>,
    generators: Vec<Vec<u32>>,
    augmentation: Vec<u32>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.unit == other.unit && self.mult == other.mult
    }
}
impl Eq for Algebra {}

/// Summary returned by [`validate_algebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraReport {
    pub dim: usize,
    pub loewy_length: usize,
    /// `dim rad^i` for `i = 1, 2, ...` down to zero.
    pub radical_dims: Vec<usize>,
    pub embedding_dim: usize,
}

/// Validates raw structure constants and reports the radical filtration.
pub fn validate_algebra(
    p: u32,
    names: Vec<String>,
    unit: Vec<u32>,
    mult: Vec<Vec<u32>>,
) -> Result<(Arc<Algebra>, AlgebraReport)> {
    let a = Algebra::new(p, names, unit, mult)?;
    let report = a.report();
    Ok((a, report))
}

impl Algebra {
    pub fn new(
        p: u32,
        names: Vec<String>,
        unit: Vec<u32>,
        mult: Vec<Vec<u32>>,
    ) -> Result<Arc<Algebra>> {
        check_prime(p)?;
        let d = names.len();
        if d == 0 {
            return Err(Error::Malformed("algebra of dimension zero".into()));
        }
        if unit.len() != d {
            return Err(Error::Malformed(format!(
                "unit has {} coefficients, expected {d}",
                unit.len()
            )));
        }
        if mult.len() != d * d || mult.iter().any(|v| v.len() != d) {
            return Err(Error::Malformed(format!(
                "multiplication table must be {d}x{d} vectors of length {d}"
            )));
        }
        let unit: Vec<u32> = unit.into_iter().map(|x| x % p).collect();
        let mult: Vec<Vec<u32>> = mult
            .into_iter()
            .map(|v| v.into_iter().map(|x| x % p).collect())
            .collect();
        let mut left = Vec::with_capacity(d);
        for i in 0..d {
            let cols: Vec<Vec<u32>> = (0..d).map(|j| mult[i * d + j].clone()).collect();
            left.push(FpMatrix::from_columns(p, d, &cols));
        }
        let mut alg = Algebra {
            p,
            names,
            unit,
            mult,
            left,
            radical_chain: Vec::new(),
            generators: Vec::new(),
            augmentation: Vec::new(),
        };
        alg.check_axioms()?;
        alg.compute_radical()?;
        Ok(Arc::new(alg))
    }

    /// The prime field itself, used as the base of vector-space complexes.
    pub fn ground_field(p: u32) -> Arc<Algebra> {
        Algebra::new(p, vec!["1".into()], vec![1], vec![vec![1]]).expect("F_p is a local algebra")
    }

    fn check_axioms(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                if self.mult[i * d + j] != self.mult[j * d + i] {
                    return Err(Error::Axiom {
                        axiom: "commutativity",
                        i,
                        j,
                        k: j,
                    });
                }
            }
        }
        for i in 0..d {
            let e = self.basis_vector(i);
            if self.mul(&self.unit, &e) != e {
                return Err(Error::Axiom {
                    axiom: "unit law",
                    i,
                    j: i,
                    k: i,
                });
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = &self.mult[i * d + j];
                for k in 0..d {
                    let lhs = self.mul(ij, &self.basis_vector(k));
                    let rhs = self.mul(&self.basis_vector(i), &self.mult[j * d + k]);
                    if lhs != rhs {
                        return Err(Error::Axiom {
                            axiom: "associativity",
                            i,
                            j,
                            k,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_radical(&mut self) -> Result<()> {
        let d = self.dim();
        let p = self.p;
        // In characteristic p the Frobenius a -> a^p is F_p-linear on a
        // commutative algebra; its iterates kill exactly the nilpotents.
        let frob_cols: Vec<Vec<u32>> = (0..d)
            .map(|i| self.power(&self.basis_vector(i), p as u64))
            .collect();
        let frob = FpMatrix::from_columns(p, d, &frob_cols);
        let mut iterate = frob.clone();
        let mut kernel_dim = iterate.kernel_basis().cols();
        loop {
            let next = frob.mul(&iterate);
            let k = next.kernel_basis().cols();
            if k == kernel_dim {
                break;
            }
            iterate = next;
            kernel_dim = k;
        }
        let radical = Subspace::span(&iterate.kernel_basis());
        let codim = d - radical.dim();
        if codim != 1 {
            return Err(Error::NotLocal { codim });
        }
        let mut chain = vec![radical.clone()];
        while chain.last().unwrap().dim() > 0 {
            let last = chain.last().unwrap();
            let mut cols = Vec::new();
            for a in 0..radical.dim() {
                let la = self.left_matrix(&radical.basis().column(a));
                let prod = la.mul(last.basis());
                for c in 0..prod.cols() {
                    cols.push(prod.column(c));
                }
            }
            let next = Subspace::span(&FpMatrix::from_columns(p, d, &cols));
            if next.dim() == last.dim() {
                return Err(Error::Malformed("radical is not nilpotent".into()));
            }
            chain.push(next);
        }
        let rad2 = chain.get(1).cloned().unwrap_or_else(|| Subspace::zero(p, d));
        let mut span = rad2.clone();
        let mut gens = Vec::new();
        for c in 0..radical.dim() {
            let v = radical.basis().column(c);
            if !span.contains_vector(&v) {
                span = span
                    .sum(&Subspace::span(&FpMatrix::column_vector(p, &v)))
                    .expect("same ambient");
                gens.push(v);
            }
        }
        let q = radical.quotient_projection();
        let fp = Fp::new(p);
        let at_unit = q.mul_vec(&self.unit)[0];
        let scale = fp.inv(at_unit);
        self.augmentation = q.row(0).iter().map(|&x| fp.mul(x, scale)).collect();
        self.radical_chain = chain;
        self.generators = gens;
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn fp(&self) -> Fp {
        Fp::new(self.p)
    }
    pub fn dim(&self) -> usize {
        self.names.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn unit(&self) -> &[u32] {
        &self.unit
    }
    /// Product of basis elements `i` and `j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[u32] {
        &self.mult[i * self.dim() + j]
    }
    pub fn mult_table(&self) -> &[Vec<u32>] {
        &self.mult
    }
    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i] = 1 % self.p;
        v
    }
    /// Index of the basis element by name.
    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let d = self.dim();
        let fp = self.fp();
        let mut out = vec![0u32; d];
        for i in 0..d {
            if a[i] == 0 {
                continue;
            }
            for j in 0..d {
                if b[j] == 0 {
                    continue;
                }
                let c = fp.mul(a[i], b[j]);
                for (o, &m) in out.iter_mut().zip(&self.mult[i * d + j]) {
                    if m != 0 {
                        *o = fp.add(*o, fp.mul(c, m));
                    }
                }
            }
        }
        out
    }

    pub fn power(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut base = a.to_vec();
        let mut acc = self.unit.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Matrix of multiplication by basis element `i`.
    pub fn left(&self, i: usize) -> &FpMatrix {
        &self.left[i]
    }

    /// Matrix of multiplication by `a`.
    pub fn left_matrix(&self, a: &[u32]) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.p, self.dim(), self.dim());
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                m.add_scaled(c, &self.left[i]);
            }
        }
        m
    }

    pub fn radical(&self) -> &Subspace {
        &self.radical_chain[0]
    }
    /// `rad^1 ⊇ rad^2 ⊇ ... ⊇ 0`.
    pub fn radical_chain(&self) -> &[Subspace] {
        &self.radical_chain
    }
    /// Least `m` with `rad^m = 0`.
    pub fn loewy_length(&self) -> usize {
        1 + self
            .radical_chain
            .iter()
            .position(|s| s.dim() == 0)
            .expect("chain ends in zero")
    }
    /// Algebra generators of the radical: lifts of a basis of rad/rad².
    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }
    /// The residue map `A -> F_p` as a row of coefficients.
    pub fn augmentation(&self) -> &[u32] {
        &self.augmentation
    }
    pub fn augment(&self, a: &[u32]) -> u32 {
        let fp = self.fp();
        a.iter()
            .zip(&self.augmentation)
            .fold(0, |s, (&x, &e)| fp.add(s, fp.mul(x, e)))
    }

    /// Whether this algebra is a field (dimension one).
    pub fn is_field(&self) -> bool {
        self.dim() == 1
    }

    pub fn report(&self) -> AlgebraReport {
        AlgebraReport {
            dim: self.dim(),
            loewy_length: self.loewy_length(),
            radical_dims: self.radical_chain.iter().map(|s| s.dim()).collect(),
            embedding_dim: self.generators.len(),
        }
    }
}

/// Same algebra, by pointer or by content.
pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

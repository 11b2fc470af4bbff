//! The stock algebras and modules used by examples, suites and tests.

use crate::algmod::{Algebra, Module};
use crate::exactlin::FpMatrix;
use std::sync::Arc;

/// A monomial algebra `F_p[x_1..x_v] / I` whose basis is the given set of
/// exponent vectors (closed under division); products leaving the set vanish.
pub fn monomial_algebra(p: u32, vars: &[&str], monomials: &[Vec<u32>]) -> Arc<Algebra> {
    let d = monomials.len();
    let name = |e: &Vec<u32>| -> String {
        let parts: Vec<String> = e
            .iter()
            .zip(vars)
            .filter(|(&k, _)| k > 0)
            .map(|(&k, v)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("")
        }
    };
    let names = monomials.iter().map(name).collect();
    let mut unit = vec![0; d];
    let one = monomials
        .iter()
        .position(|e| e.iter().all(|&k| k == 0))
        .expect("1 is a basis monomial");
    unit[one] = 1;
    let mut mult = Vec::with_capacity(d * d);
    for a in monomials {
        for b in monomials {
            let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            let mut v = vec![0; d];
            if let Some(k) = monomials.iter().position(|e| *e == prod) {
                v[k] = 1;
            }
            mult.push(v);
        }
    }
    Algebra::new(p, names, unit, mult).expect("monomial algebra is local")
}

/// `F_5[x]/(x²)`.
pub fn kxx2() -> Arc<Algebra> {
    monomial_algebra(5, &["x"], &[vec![0], vec![1]])
}
/// `F_5[x,y]/(x²,xy,y²)`.
pub fn a3() -> Arc<Algebra> {
    monomial_algebra(5, &["x", "y"], &[vec![0, 0], vec![1, 0], vec![0, 1]])
}
/// `F_5[x,y]/(x²,y²)`.
pub fn a4() -> Arc<Algebra> {
    monomial_algebra(
        5,
        &["x", "y"],
        &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]],
    )
}
/// `F_5[x]/(x³)`.
pub fn kxx3() -> Arc<Algebra> {
    monomial_algebra(5, &["x"], &[vec![0], vec![1], vec![2]])
}

/// `A / (elements)`, the quotient by the ideal they generate.
pub fn cyclic_quotient(alg: &Arc<Algebra>, elements: &[Vec<u32>]) -> Module {
    let a = Module::regular(alg);
    let p = alg.p();
    let d = alg.dim();
    let mut cols = Vec::new();
    for e in elements {
        for j in 0..d {
            cols.push(alg.mul(e, &alg.basis_vector(j)));
        }
    }
    let span = FpMatrix::from_columns(p, d, &cols);
    a.quotient(&span).expect("ideals are submodules").0
}

/// A shipped algebra with its named modules.
#[derive(Clone, Debug)]
pub struct Shipped {
    pub name: &'static str,
    pub algebra: Arc<Algebra>,
    pub modules: Vec<(&'static str, Module)>,
    /// The semidualizing module singled out for this algebra.
    pub semidualizing: &'static str,
}

impl Shipped {
    pub fn module(&self, name: &str) -> Option<&Module> {
        self.modules.iter().find(|(n, _)| *n == name).map(|(_, m)| m)
    }
    pub fn c(&self) -> &Module {
        self.module(self.semidualizing).expect("semidualizing module is shipped")
    }
}

fn base_modules(alg: &Arc<Algebra>) -> Vec<(&'static str, Module)> {
    vec![
        ("A", Module::regular(alg)),
        ("k", Module::residue_field(alg)),
    ]
}

pub fn shipped_kxx2() -> Shipped {
    let algebra = kxx2();
    let mut modules = base_modules(&algebra);
    modules.push(("C", Module::regular(&algebra)));
    Shipped {
        name: "kxx2",
        algebra,
        modules,
        semidualizing: "C",
    }
}

pub fn shipped_a3() -> Shipped {
    let algebra = a3();
    let mut modules = base_modules(&algebra);
    let d = Module::regular(&algebra).dual();
    modules.push(("D", d.clone()));
    modules.push(("C", d));
    Shipped {
        name: "a3",
        algebra,
        modules,
        semidualizing: "D",
    }
}

pub fn shipped_a4() -> Shipped {
    let algebra = a4();
    let mut modules = base_modules(&algebra);
    modules.push(("C", Module::regular(&algebra)));
    Shipped {
        name: "a4",
        algebra,
        modules,
        semidualizing: "C",
    }
}

pub fn shipped_kxx3() -> Shipped {
    let algebra = kxx3();
    let mut modules = base_modules(&algebra);
    let x2 = algebra.basis_vector(2);
    let q = cyclic_quotient(&algebra, &[x2]);
    modules.push(("Q", q.clone()));
    modules.push(("T", Module::regular(&algebra).direct_sum(&q)));
    modules.push(("C", Module::regular(&algebra)));
    Shipped {
        name: "kxx3",
        algebra,
        modules,
        semidualizing: "C",
    }
}

pub fn all() -> Vec<Shipped> {
    vec![shipped_kxx2(), shipped_a3(), shipped_a4(), shipped_kxx3()]
}

//! Grade with respect to `C`, perfect modules, and the duality
//! `M ≅ Ext^g(Ext^g(M, C), C)` for a perfect module of grade `g`.

use crate::algmod::{find_isomorphism, IsoSearch, Module};
use crate::catclass::Bounds;
use crate::chaincx::{homology_module, Complex, HomComplex};
use crate::error::{Error, Result};
use crate::resolve::{gc_dim, projective_resolution, GcDim, MinimalResolution};

/// The least `n` with `Ext^n(M, C) != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grade {
    Finite(usize),
    /// `M = 0`, or every `Ext^n(M, C)` vanishes and the resolution of `M`
    /// stops or repeats within the bound.
    Infinite,
    /// Nothing nonzero up to the bound, without a certificate beyond it.
    Unknown(usize),
}

impl Grade {
    pub fn value(self) -> Option<usize> {
        match self {
            Grade::Finite(g) => Some(g),
            _ => None,
        }
    }
}

pub fn grade(m: &Module, c: &Module, b: Bounds) -> Grade {
    if m.is_zero() {
        return Grade::Infinite;
    }
    let mut res = MinimalResolution::new(m);
    if let Some(g) = (0..=b.bound).find(|&i| res.ext_dim(c, i) != 0) {
        return Grade::Finite(g);
    }
    if res.finite_length(b.bound).is_some() || res.periodicity(b.bound, b.trials, b.seed).is_some() {
        Grade::Infinite
    } else {
        Grade::Unknown(b.bound)
    }
}

#[derive(Clone, Debug)]
pub struct PerfectionReport {
    pub grade: Grade,
    pub gc_dim: GcDim,
    /// `dim Ext^n(M, C)` for `n <= bound`.
    pub ext_dims: Vec<usize>,
    /// `grade = gc_dim`, finite, and `Ext^n(M, C) = 0` for `n != g` up to
    /// the bound.
    pub perfect: bool,
}

impl PerfectionReport {
    /// Grade at most the `GP_C`-dimension, when both are determined.
    pub fn grade_bounded_by_gc_dim(&self) -> Option<bool> {
        match (self.grade, self.gc_dim.value) {
            (Grade::Finite(g), Some(d)) => Some(g <= d),
            (Grade::Infinite, Some(_)) => Some(false),
            _ => None,
        }
    }
}

pub fn is_perfect(m: &Module, c: &Module, b: Bounds) -> PerfectionReport {
    let gr = grade(m, c, b);
    let gc = gc_dim(m, c, b);
    let mut res = MinimalResolution::new(m);
    let ext_dims: Vec<usize> = (0..=b.bound).map(|i| res.ext_dim(c, i)).collect();
    let perfect = match (gr, gc.value) {
        (Grade::Finite(g), Some(d)) => {
            g == d && ext_dims.iter().enumerate().all(|(i, &e)| i == g || e == 0)
        }
        _ => false,
    };
    PerfectionReport {
        grade: gr,
        gc_dim: gc,
        ext_dims,
        perfect,
    }
}

/// `Ext^n(M, C)` as a module, from the Hom complex of a projective
/// resolution with its A-action.
pub fn ext_module(m: &Module, c: &Module, n: usize) -> Result<Module> {
    let res = projective_resolution(m, n + 1);
    let d = n as i64;
    let hom = HomComplex::new(&res.complex, &Complex::single(c, 0), -d - 1, 1, true)?;
    Ok(homology_module(&hom.complex, -d)?.0)
}

/// The dual of a perfect module and the search for `M ≅ M††`.
#[derive(Clone, Debug)]
pub struct PerfectDual {
    pub grade: usize,
    /// `M† = Ext^g(M, C)`.
    pub dual: Module,
    pub dual_report: PerfectionReport,
    /// `M†† = Ext^g(M†, C)`.
    pub double: Module,
    /// `M†† -> M`.
    pub iso: IsoSearch,
}

impl PerfectDual {
    pub fn holds(&self) -> bool {
        self.iso.found() && self.dual_report.perfect && self.dual_report.grade == Grade::Finite(self.grade)
    }
}

/// Requires `M` perfect, otherwise [`Error::Hypothesis`].
pub fn perfect_dual(m: &Module, c: &Module, b: Bounds) -> Result<PerfectDual> {
    let report = is_perfect(m, c, b);
    let Some(g) = report.grade.value().filter(|_| report.perfect) else {
        return Err(Error::Hypothesis(format!(
            "module is not perfect (grade {:?}, GP_C-dimension {:?})",
            report.grade, report.gc_dim.value
        )));
    };
    let dual = ext_module(m, c, g)?;
    let dual_report = is_perfect(&dual, c, b);
    let double = ext_module(&dual, c, g)?;
    let iso = find_isomorphism(&double, m, b.trials, b.seed);
    Ok(PerfectDual {
        grade: g,
        dual,
        dual_report,
        double,
        iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algmod::HomSpace;
    use crate::shipped::{a3, all, kxx2};

    #[test]
    fn residue_field_over_dual_numbers_is_perfect_of_grade_zero() {
        let a = kxx2();
        let k = Module::residue_field(&a);
        let reg = Module::regular(&a);
        let r = is_perfect(&k, &reg, Bounds::for_algebra(&a));
        assert_eq!(r.grade, Grade::Finite(0));
        assert_eq!(r.gc_dim.value, Some(0));
        assert!(r.perfect);
        let d = perfect_dual(&k, &reg, Bounds::for_algebra(&a)).unwrap();
        assert!(d.holds());
    }

    #[test]
    fn ext_module_in_degree_zero_is_hom() {
        let a = a3();
        let dm = Module::regular(&a).dual();
        for m in [Module::residue_field(&a), dm.clone(), Module::regular(&a)] {
            let e = ext_module(&m, &dm, 0).unwrap();
            let h = HomSpace::new(&m, &dm).unwrap().module();
            assert!(find_isomorphism(&e, &h, 50, 0).found());
        }
    }

    #[test]
    fn residue_field_against_regular_over_a3_is_not_perfect() {
        let a = a3();
        let k = Module::residue_field(&a);
        let r = is_perfect(&k, &Module::regular(&a), Bounds::for_algebra(&a).with_bound(3));
        assert_eq!(r.grade, Grade::Finite(0));
        assert_eq!(r.gc_dim.value, None);
        assert!(!r.perfect);
        assert!(matches!(
            perfect_dual(&k, &Module::regular(&a), Bounds::for_algebra(&a).with_bound(3)),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn shipped_modules_are_reflexive_against_their_parameter() {
        for s in all() {
            let b = Bounds::for_algebra(&s.algebra).with_bound(4);
            for (name, m) in &s.modules {
                let d = perfect_dual(m, s.c(), b).unwrap();
                assert!(d.holds(), "{} {name}", s.name);
            }
        }
    }

    #[test]
    fn zero_module_has_infinite_grade() {
        let a = kxx2();
        let r = grade(&Module::zero(&a), &Module::regular(&a), Bounds::for_algebra(&a));
        assert_eq!(r, Grade::Infinite);
    }
}

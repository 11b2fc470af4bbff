//! Relative Ext through proper resolutions and coresolutions, the maps
//! comparing flavors, long exact sequences, relative projective dimension
//! and balance.
//!
//! `Ext^n` is read off as `H_{-n}` of a Hom complex, so a class resolution
//! must reach length `n + 1` (or be complete) to see degree `n`.

mod balance;
mod les;

pub use balance::{check_balance, BalanceReport, Hypothesis};
pub use les::{les, LesReport, LesSlot, LesVariant};

use crate::algmod::{kernel, ModMap, Module};
use crate::catclass::{ClassKind, ClassOracle, Verdict};
use crate::chaincx::{ChainMap, Complex, HomComplex, Homology};
use crate::error::{Error, Result};
use crate::exactlin::FpMatrix;
use crate::resolve::{
    class_coresolution, class_resolution, lift, projective_resolution, Direction, MinimalResolution,
    Resolution, Style,
};

/// `Ext^0..=max` of a pair, computed from one side.
#[derive(Clone, Debug)]
pub struct ExtTable {
    pub class: ClassKind,
    pub direction: Direction,
    pub max: usize,
    /// `Hom(X, N)` or `Hom(M, Y)` over degrees `-(max+1)..=1`.
    pub hom: HomComplex,
    groups: Vec<Homology>,
}

impl ExtTable {
    pub fn dim(&self, n: usize) -> usize {
        self.groups[n].dim()
    }
    pub fn dims(&self) -> Vec<usize> {
        self.groups.iter().map(Homology::dim).collect()
    }

    /// `H_{-n}` of the Hom complex.
    pub fn group(&self, n: usize) -> &Homology {
        &self.groups[n]
    }

    /// Cocycles representing a basis of `Ext^n`, each split into its
    /// components `X_q -> N` (or `M -> Y^q`, keyed by degree `-q`).
    pub fn cocycles(&self, n: usize) -> Vec<Vec<(i64, FpMatrix)>> {
        let reps = &self.groups[n].reps;
        (0..reps.cols())
            .map(|j| self.hom.components(-(n as i64), &reps.column(j)))
            .collect()
    }
}

fn long_enough(res: &Resolution, max: usize) -> Result<()> {
    if res.length > max || res.is_complete() {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!(
            "resolution of length {} cannot see Ext^{max}",
            res.length
        )))
    }
}

/// `Ext^n` from a resolution of the first argument (paired with `other` as
/// the second) or from a coresolution of the second (with `other` first).
pub fn ext_table(res: &Resolution, other: &Module, max: usize) -> Result<ExtTable> {
    long_enough(res, max)?;
    let single = Complex::single(other, 0);
    let lo = -(max as i64) - 1;
    let hom = match res.direction {
        Direction::Resolution => HomComplex::new(&res.complex, &single, lo, 1, false)?,
        Direction::Coresolution => HomComplex::new(&single, &res.complex, lo, 1, false)?,
    };
    let groups = (0..=max).map(|n| hom.complex.homology(-(n as i64))).collect();
    Ok(ExtTable {
        class: res.class.clone(),
        direction: res.direction,
        max,
        hom,
        groups,
    })
}

/// `Ext_X^n(M, N)` from a proper X-resolution of `M`.
pub fn relative_ext(m: &Module, n: &Module, oracle: &ClassOracle, max: usize, style: Style) -> Result<ExtTable> {
    let res = class_resolution(m, oracle, max + 1, style)?;
    ext_table(&res, n, max)
}

/// `Ext_Y^n(M, N)` from a proper Y-coresolution of `N`.
pub fn relative_ext_co(m: &Module, n: &Module, oracle: &ClassOracle, max: usize, style: Style) -> Result<ExtTable> {
    let res = class_coresolution(n, oracle, max + 1, style)?;
    ext_table(&res, m, max)
}

/// Absolute `dim Ext^n(M, N)` for `n <= max`, from syzygies.
pub fn absolute_ext(m: &Module, n: &Module, max: usize) -> Vec<usize> {
    let mut res = MinimalResolution::new(m);
    (0..=max).map(|i| res.ext_dim(n, i)).collect()
}

/// Absolute `dim Tor_n(C, M)` for `n <= max`.
pub fn absolute_tor(c: &Module, m: &Module, max: usize) -> Vec<usize> {
    let mut res = MinimalResolution::new(m);
    (0..=max).map(|i| res.tor_dim(c, i)).collect()
}

/// Matrices of a natural map `Ext^n -> Ext'^n` for `n <= max`.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub source_dims: Vec<usize>,
    pub target_dims: Vec<usize>,
    pub matrices: Vec<FpMatrix>,
}

impl Comparison {
    pub fn rank(&self, n: usize) -> usize {
        self.matrices[n].rank()
    }
    pub fn is_injective(&self, n: usize) -> bool {
        self.rank(n) == self.source_dims[n]
    }
    pub fn is_surjective(&self, n: usize) -> bool {
        self.rank(n) == self.target_dims[n]
    }
    pub fn is_bijective(&self, n: usize) -> bool {
        self.is_injective(n) && self.is_surjective(n)
    }
}

/// `Hom(φ, N)` on homology for a chain map `φ : X -> X'` between
/// resolutions of `M`, as `Ext(X') -> Ext(X)`.
fn induced_by_lift(phi: &ChainMap, n: &Module, max: usize) -> Result<Comparison> {
    let single = Complex::single(n, 0);
    let lo = -(max as i64) - 1;
    let h_target = HomComplex::new(&phi.target, &single, lo, 1, false)?;
    let h_source = HomComplex::new(&phi.source, &single, lo, 1, false)?;
    let map = h_target.precompose(phi, &h_source);
    let mut out = Comparison {
        source_dims: Vec::new(),
        target_dims: Vec::new(),
        matrices: Vec::new(),
    };
    for i in 0..=max {
        let d = -(i as i64);
        let (hs, ht) = (h_target.complex.homology(d), h_source.complex.homology(d));
        out.matrices.push(map.induced(d, &hs, &ht));
        out.source_dims.push(hs.dim());
        out.target_dims.push(ht.dim());
    }
    Ok(out)
}

/// `ϑ : Ext_X^n(M, N) -> Ext_W^n(M, N)` for classes `W ⊆ X`, induced by
/// lifting `id_M` from a W-resolution to an X-resolution.
pub fn comparison_theta(
    m: &Module,
    n: &Module,
    inner: &ClassOracle,
    outer: &ClassOracle,
    max: usize,
    style: Style,
) -> Result<Comparison> {
    let res_w = class_resolution(m, inner, max + 1, style)?;
    let res_x = class_resolution(m, outer, max + 1, style)?;
    let phi = lift(&ModMap::identity(m), &res_w, &res_x)?;
    induced_by_lift(&phi, n, max)
}

/// `ϰ : Ext_X^n(M, N) -> Ext^n(M, N)`, induced by lifting `id_M` from a
/// projective resolution.
pub fn comparison_kappa(m: &Module, n: &Module, oracle: &ClassOracle, max: usize, style: Style) -> Result<Comparison> {
    let proj = projective_resolution(m, max + 1);
    let res_x = class_resolution(m, oracle, max + 1, style)?;
    let phi = lift(&ModMap::identity(m), &proj, &res_x)?;
    induced_by_lift(&phi, n, max)
}

/// Relative projective dimension as found by [`detect_pd`].
#[derive(Clone, Debug)]
pub struct PdReport {
    pub value: Option<usize>,
    /// Membership verdict of the kernel at `value`.
    pub verdict: Verdict,
    /// `dim Ext_X^{n+1}(M, P)` per probe, for each `n` tried.
    pub ext_dims: Vec<Vec<usize>>,
}

/// The least `n <= bound` such that the `n`-th kernel of a proper
/// X-resolution is in X and `Ext_X^{n+1}(M, P) = 0` for every probe.
pub fn detect_pd(m: &Module, oracle: &ClassOracle, bound: usize, probes: &[Module], style: Style) -> Result<PdReport> {
    if probes.is_empty() {
        return Err(Error::EmptyProbes);
    }
    let res = class_resolution(m, oracle, bound + 2, style)?;
    let tables = probes
        .iter()
        .map(|p| ext_table(&res, p, bound + 1))
        .collect::<Result<Vec<_>>>()?;
    let mut ext_dims = Vec::new();
    for n in 0..=bound {
        let dims: Vec<usize> = tables.iter().map(|t| t.dim(n + 1)).collect();
        let vanishes = dims.iter().all(|&d| d == 0);
        ext_dims.push(dims);
        if !vanishes {
            continue;
        }
        let k = nth_kernel(&res, n);
        let v = oracle.contains(&k)?;
        if v.holds {
            return Ok(PdReport {
                value: Some(n),
                verdict: v,
                ext_dims,
            });
        }
    }
    Ok(PdReport {
        value: None,
        verdict: Verdict::bounded(bound),
        ext_dims,
    })
}

/// `K_0 = M` and `K_n = Ker(X_{n-1} -> X_{n-2})`.
fn nth_kernel(res: &Resolution, n: usize) -> Module {
    match n {
        0 => res.module.clone(),
        1 => kernel(&res.augmentation).0,
        _ => kernel(&res.differential(n - 1)).0,
    }
}

#[cfg(test)]
mod tests;

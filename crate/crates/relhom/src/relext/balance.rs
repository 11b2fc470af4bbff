//! Balance of relative Ext: the X-resolution of `M` and the
//! Y-coresolution of `N` compute the same groups when the zig-zag
//! `Hom(M, Y) -> Hom(X, Y) <- Hom(X, N)` consists of quasi-isomorphisms.

use crate::algmod::Module;
use crate::catclass::{ext_vanishing, ClassKind, ClassOracle, Mode, Verdict};
use crate::chaincx::{cone, ChainMap, Complex, HomComplex};
use crate::error::Result;
use crate::resolve::{class_coresolution, class_resolution, Resolution, Style};

/// One sufficient condition for balance and its verdict.
#[derive(Clone, Debug)]
pub struct Hypothesis {
    pub name: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct BalanceReport {
    /// `dim H_{-n} Hom(X, N)`.
    pub resolved: Vec<usize>,
    /// `dim H_{-n} Hom(M, Y)`.
    pub coresolved: Vec<usize>,
    /// `Hom(M, Y) -> Hom(X, Y)` is a quasi-isomorphism through degree `max`.
    pub left_quasiiso: bool,
    /// `Hom(X, N) -> Hom(X, Y)` is a quasi-isomorphism through degree `max`.
    pub right_quasiiso: bool,
    pub hypotheses: Vec<Hypothesis>,
}

impl BalanceReport {
    pub fn balanced(&self) -> bool {
        self.left_quasiiso && self.right_quasiiso && self.resolved == self.coresolved
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.verdict.holds)
    }
}

/// The class of "projective-like" objects inside a resolving class, and
/// dually, with a module that generates it up to sums and summands.
fn core(kind: &ClassKind, alg_module: &Module) -> (ClassKind, Module) {
    let a = alg_module;
    match kind {
        ClassKind::Proj => (ClassKind::Proj, a.clone()),
        ClassKind::Inj => (ClassKind::Inj, a.dual()),
        ClassKind::ProjC(c) | ClassKind::GProjC(c) => (ClassKind::ProjC(c.clone()), c.clone()),
        ClassKind::InjC(c) | ClassKind::GInjC(c) => (ClassKind::InjC(c.clone()), c.dual()),
        ClassKind::AddT(t) => (ClassKind::AddT(t.clone()), t.clone()),
    }
}

/// The generator together with the probes the oracle accepts.
fn members(oracle: &ClassOracle, generator: &Module, probes: &[Module]) -> Result<Vec<Module>> {
    let mut out = vec![generator.clone()];
    if matches!(oracle.kind, ClassKind::AddT(_)) {
        return Ok(out);
    }
    for p in probes {
        if oracle.contains(p)?.holds && !out.contains(p) {
            out.push(p.clone());
        }
    }
    Ok(out)
}

fn perp_hypothesis(name: &str, xs: &[Module], ys: &[Module], oracle: &ClassOracle) -> Hypothesis {
    let mut verdict = Verdict::certified(true);
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            let v = ext_vanishing(x, y, oracle.bounds);
            if !v.holds {
                let witness = format!("pair ({i}, {j}): {}", v.witness.unwrap_or_default());
                return Hypothesis {
                    name: name.into(),
                    verdict: Verdict::fails(witness),
                };
            }
            verdict = verdict.and(|| v);
        }
    }
    Hypothesis {
        name: name.into(),
        verdict,
    }
}

fn finite_hypothesis(name: &str, res: &Resolution) -> Hypothesis {
    let verdict = if res.is_complete() {
        Verdict::certified(true)
    } else {
        Verdict {
            holds: false,
            mode: Mode::Bounded(res.length),
            witness: Some(format!("no complete resolution of length {}", res.length)),
        }
    };
    Hypothesis {
        name: name.into(),
        verdict,
    }
}

/// Compares `Ext` computed from an X-resolution of `M` with `Ext` from a
/// Y-coresolution of `N` for degrees `0..=max`, and checks both zig-zag
/// maps. Orthogonality and finiteness conditions are reported as
/// hypotheses, tested on the class generators and on those probes the
/// oracles accept.
pub fn check_balance(
    m: &Module,
    n: &Module,
    x: &ClassOracle,
    y: &ClassOracle,
    max: usize,
    probes: &[Module],
    style: Style,
) -> Result<BalanceReport> {
    let len = max + 2;
    let res = class_resolution(m, x, len, style)?;
    let cores = class_coresolution(n, y, len, style)?;
    let lo = -(len as i64);
    let (sm, sn) = (Complex::single(m, 0), Complex::single(n, 0));
    let hxy = HomComplex::new(&res.complex, &cores.complex, lo, 1, false)?;
    let hmy = HomComplex::new(&sm, &cores.complex, lo, 1, false)?;
    let hxn = HomComplex::new(&res.complex, &sn, lo, 1, false)?;
    let left = hmy.precompose(&res.augmentation_map(), &hxy);
    let right = hxn.postcompose(&cores.augmentation_map(), &hxy);
    let quasi = |f: &ChainMap| {
        let c = cone(f);
        (-(max as i64)..=1).all(|k| c.is_exact_at(k))
    };
    let dims = |h: &HomComplex| (0..=max).map(|i| h.complex.homology_dim(-(i as i64))).collect();

    let a = Module::regular(m.algebra());
    let (w_kind, w_gen) = core(&x.kind, &a);
    let (v_kind, v_gen) = core(&y.kind, &a);
    let w = ClassOracle {
        kind: w_kind,
        ..x.clone()
    };
    let v = ClassOracle {
        kind: v_kind,
        ..y.clone()
    };
    let ws = members(&w, &w_gen, probes)?;
    let vs = members(&v, &v_gen, probes)?;
    let xs = members(x, &w_gen, probes)?;
    let ys = members(y, &v_gen, probes)?;
    let hypotheses = vec![
        perp_hypothesis("W ⊥ Y", &ws, &ys, x),
        perp_hypothesis("X ⊥ V", &xs, &vs, x),
        finite_hypothesis("M has finite X-dimension", &res),
        finite_hypothesis("N has finite Y-dimension", &cores),
    ];
    Ok(BalanceReport {
        resolved: dims(&hxn),
        coresolved: dims(&hmy),
        left_quasiiso: quasi(&left),
        right_quasiiso: quasi(&right),
        hypotheses,
    })
}

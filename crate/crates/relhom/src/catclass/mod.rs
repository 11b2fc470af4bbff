//! Membership oracles for the module classes built from a semidualizing
//! module `C`: projectives, injectives, `P_C`, `I_C`, `GP_C`, `GI_C`, the
//! Auslander and Bass classes, and `add T`.
//!
//! Conditions quantified over all `n >= 1` are checked up to a bound and
//! upgraded to certified answers when the minimal resolution involved is
//! finite or visibly periodic.

use crate::algmod::{
    biduality_map, cokernel, evaluation_map, homothety_map, tensor_module, unit_map, Algebra,
    HomSpace, ModMap, Module, DEFAULT_TRIALS,
};
use crate::error::{Error, Result};
use crate::exactlin::FpMatrix;
use crate::resolve::MinimalResolution;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Degree bound and isomorphism-search settings for bounded checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub bound: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Bounds {
    /// `2 dim A + 2`, with the default iso-search budget.
    pub fn for_algebra(alg: &Algebra) -> Bounds {
        Bounds {
            bound: 2 * alg.dim() + 2,
            trials: DEFAULT_TRIALS,
            seed: 0,
        }
    }
    pub fn with_bound(self, bound: usize) -> Bounds {
        Bounds { bound, ..self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Certified,
    /// Checked in degrees up to the bound only.
    Bounded(usize),
}

/// Outcome of a membership or vanishing check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub mode: Mode,
    pub witness: Option<String>,
}

impl Verdict {
    pub fn certified(holds: bool) -> Verdict {
        Verdict {
            holds,
            mode: Mode::Certified,
            witness: None,
        }
    }
    /// A certified negative with its witness.
    pub fn fails(witness: impl Into<String>) -> Verdict {
        Verdict {
            holds: false,
            mode: Mode::Certified,
            witness: Some(witness.into()),
        }
    }
    pub fn bounded(bound: usize) -> Verdict {
        Verdict {
            holds: true,
            mode: Mode::Bounded(bound),
            witness: None,
        }
    }
    pub fn is_certified(&self) -> bool {
        self.mode == Mode::Certified
    }

    /// Conjunction: the first failure wins; a pass is certified only when
    /// both parts are.
    pub fn and(self, other: impl FnOnce() -> Verdict) -> Verdict {
        if !self.holds {
            return self;
        }
        let other = other();
        if !other.holds {
            return other;
        }
        let mode = match (self.mode, other.mode) {
            (Mode::Certified, Mode::Certified) => Mode::Certified,
            (Mode::Bounded(a), Mode::Bounded(b)) => Mode::Bounded(a.max(b)),
            (Mode::Bounded(a), _) | (_, Mode::Bounded(a)) => Mode::Bounded(a),
        };
        Verdict {
            holds: true,
            mode,
            witness: None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = if self.holds { "holds" } else { "fails" };
        match self.mode {
            Mode::Certified => write!(f, "{word} (certified)")?,
            Mode::Bounded(n) => write!(f, "{word} (bounded N={n})")?,
        }
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

/// Pass verdict for a resolution-based vanishing check, certified when the
/// resolution stops or repeats within the bound.
fn certify(res: &mut MinimalResolution, b: Bounds) -> Verdict {
    if res.finite_length(b.bound).is_some() || res.periodicity(b.bound, b.trials, b.seed).is_some() {
        Verdict::certified(true)
    } else {
        Verdict::bounded(b.bound)
    }
}

/// `Ext^{1..N}(M, N) = 0`, certified at once when `M` is projective or
/// `N` injective.
pub fn ext_vanishing(m: &Module, n: &Module, b: Bounds) -> Verdict {
    if is_projective(m).holds || is_injective(n).holds {
        return Verdict::certified(true);
    }
    ext_vanishing_resolved(m, n, b)
}

/// The same check read off the minimal resolution of `M` alone. Memoized,
/// since class oracles repeat the same pairs.
fn ext_vanishing_resolved(m: &Module, n: &Module, b: Bounds) -> Verdict {
    type Memo = Mutex<Vec<(Module, Module, Bounds, Verdict)>>;
    static MEMO: OnceLock<Memo> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    let hit = memo
        .lock()
        .unwrap()
        .iter()
        .find(|(x, y, bb, _)| *bb == b && x == m && y == n)
        .map(|e| e.3.clone());
    if let Some(v) = hit {
        return v;
    }
    let v = ext_vanishing_uncached(m, n, b);
    memo.lock().unwrap().push((m.clone(), n.clone(), b, v.clone()));
    v
}

fn ext_vanishing_uncached(m: &Module, n: &Module, b: Bounds) -> Verdict {
    let mut res = MinimalResolution::new(m);
    for i in 1..=b.bound {
        let e = res.ext_dim(n, i);
        if e != 0 {
            return Verdict::fails(format!("dim Ext^{i} = {e}"));
        }
        if res.syzygy(i).is_zero() {
            return Verdict::certified(true);
        }
    }
    certify(&mut res, b)
}

/// `Tor_{1..N}(C, M) = 0`, resolving `M`.
pub fn tor_vanishing(c: &Module, m: &Module, b: Bounds) -> Verdict {
    if is_projective(c).holds {
        return Verdict::certified(true);
    }
    let mut res = MinimalResolution::new(m);
    for i in 1..=b.bound {
        if res.syzygy(i).is_zero() {
            return Verdict::certified(true);
        }
        let t = res.tor_dim(c, i);
        if t != 0 {
            return Verdict::fails(format!("dim Tor_{i} = {t}"));
        }
    }
    certify(&mut res, b)
}

/// Whether `f` is bijective, as a certified verdict.
fn iso_verdict(f: &ModMap, what: &str) -> Verdict {
    if f.is_isomorphism() {
        Verdict::certified(true)
    } else {
        Verdict::fails(format!(
            "{what} has rank {} between dimensions {} and {}",
            f.rank(),
            f.source.dim(),
            f.target.dim()
        ))
    }
}

pub fn is_projective(m: &Module) -> Verdict {
    let r = m.top_dim();
    if m.dim() == r * m.algebra().dim() {
        Verdict::certified(true)
    } else {
        Verdict::fails(format!(
            "projective cover A^{r} -> M has a kernel of dimension {}",
            r * m.algebra().dim() - m.dim()
        ))
    }
}

pub fn is_injective(m: &Module) -> Verdict {
    is_projective(&m.dual())
}

/// Memoized: oracles over the same parameter are built often and the
/// bounded Ext check dominates their cost.
pub fn is_semidualizing(c: &Module, b: Bounds) -> Verdict {
    type Memo = Mutex<Vec<(Module, Bounds, Verdict)>>;
    static MEMO: OnceLock<Memo> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some((_, _, v)) = memo.lock().unwrap().iter().find(|(m, bb, _)| *bb == b && m == c) {
        return v.clone();
    }
    let v = semidualizing_uncached(c, b);
    memo.lock().unwrap().push((c.clone(), b, v.clone()));
    v
}

fn semidualizing_uncached(c: &Module, b: Bounds) -> Verdict {
    let h = homothety_map(c).expect("same algebra");
    // Resolution-based even when C is injective, so the mode records the
    // bound actually reached.
    iso_verdict(&h, "homothety map").and(|| ext_vanishing_resolved(c, c, b))
}

/// `M ≅ C^r`: `Hom(C, M)` is free and evaluation `C ⊗ Hom(C, M) -> M` is
/// bijective.
pub fn is_pc(m: &Module, c: &Module) -> Verdict {
    let h = HomSpace::new(c, m).expect("same algebra").module();
    if !is_projective(&h).holds {
        return Verdict::fails("Hom(C, M) is not free");
    }
    iso_verdict(&evaluation_map(c, m).expect("same algebra"), "evaluation map")
}

pub fn is_ic(m: &Module, c: &Module) -> Verdict {
    is_pc(&m.dual(), c)
}

pub fn is_totally_reflexive(m: &Module, c: &Module, b: Bounds) -> Verdict {
    let bd = biduality_map(m, c).expect("same algebra");
    iso_verdict(&bd, "biduality map")
        .and(|| ext_vanishing(m, c, b))
        .and(|| {
            let dual = HomSpace::new(m, c).expect("same algebra").module();
            ext_vanishing(&dual, c, b)
        })
}

pub fn is_gprojc(m: &Module, c: &Module, b: Bounds) -> Verdict {
    is_totally_reflexive(m, c, b)
}

/// `D` carries complete `P P_C`-resolutions to complete `I_C I`-
/// coresolutions, so `M ∈ GI_C` exactly when `D(M) ∈ GP_C`.
pub fn is_ginjc(m: &Module, c: &Module, b: Bounds) -> Verdict {
    is_totally_reflexive(&m.dual(), c, b)
}

pub fn in_auslander_class(m: &Module, c: &Module, b: Bounds) -> Verdict {
    tor_vanishing(c, m, b)
        .and(|| {
            let cm = tensor_module(c, m).expect("same algebra").module;
            ext_vanishing(c, &cm, b)
        })
        .and(|| iso_verdict(&unit_map(m, c).expect("same algebra"), "unit map"))
}

pub fn in_bass_class(m: &Module, c: &Module, b: Bounds) -> Verdict {
    ext_vanishing(c, m, b)
        .and(|| {
            let h = HomSpace::new(c, m).expect("same algebra").module();
            tor_vanishing(c, &h, b)
        })
        .and(|| iso_verdict(&evaluation_map(c, m).expect("same algebra"), "evaluation map"))
}

/// `Ext^{1..N}(X_i, Y_j)` dimensions and a verdict for every pair.
pub fn perp_check(xs: &[Module], ys: &[Module], b: Bounds) -> Vec<Vec<(Vec<usize>, Verdict)>> {
    xs.iter()
        .map(|x| {
            let mut res = MinimalResolution::new(x);
            ys.iter()
                .map(|y| {
                    if is_projective(x).holds || is_injective(y).holds {
                        return (vec![0; b.bound], Verdict::certified(true));
                    }
                    let dims: Vec<usize> = (1..=b.bound).map(|i| res.ext_dim(y, i)).collect();
                    let verdict = match dims.iter().position(|&d| d != 0) {
                        Some(i) => Verdict::fails(format!("dim Ext^{} = {}", i + 1, dims[i])),
                        None => certify(&mut res, b),
                    };
                    (dims, verdict)
                })
                .collect()
        })
        .collect()
}

/// The subcategories the engine can test or resolve by.
#[derive(Clone, Debug)]
pub enum ClassKind {
    Proj,
    Inj,
    ProjC(Module),
    InjC(Module),
    GProjC(Module),
    GInjC(Module),
    AddT(Module),
}

impl ClassKind {
    pub fn tag(&self) -> &'static str {
        match self {
            ClassKind::Proj => "proj",
            ClassKind::Inj => "inj",
            ClassKind::ProjC(_) => "pc",
            ClassKind::InjC(_) => "ic",
            ClassKind::GProjC(_) => "gp",
            ClassKind::GInjC(_) => "gi",
            ClassKind::AddT(_) => "add",
        }
    }

    pub fn parameter(&self) -> Option<&Module> {
        match self {
            ClassKind::Proj | ClassKind::Inj => None,
            ClassKind::ProjC(c)
            | ClassKind::InjC(c)
            | ClassKind::GProjC(c)
            | ClassKind::GInjC(c)
            | ClassKind::AddT(c) => Some(c),
        }
    }

    /// Whether the class is used for coresolutions.
    pub fn is_injective_side(&self) -> bool {
        matches!(self, ClassKind::Inj | ClassKind::InjC(_) | ClassKind::GInjC(_))
    }

    /// The class `D` carries this one to.
    pub fn dual(&self) -> Option<ClassKind> {
        Some(match self {
            ClassKind::Proj => ClassKind::Inj,
            ClassKind::Inj => ClassKind::Proj,
            ClassKind::ProjC(c) => ClassKind::InjC(c.clone()),
            ClassKind::InjC(c) => ClassKind::ProjC(c.clone()),
            ClassKind::GProjC(c) => ClassKind::GInjC(c.clone()),
            ClassKind::GInjC(c) => ClassKind::GProjC(c.clone()),
            ClassKind::AddT(_) => return None,
        })
    }
}

/// A class together with the settings of its bounded checks. Classes
/// built from `C` verify at construction that `C` is semidualizing.
#[derive(Clone, Debug)]
pub struct ClassOracle {
    pub kind: ClassKind,
    pub bounds: Bounds,
    /// The semidualizing verdict for `C`, when the class involves one.
    pub parameter_verdict: Option<Verdict>,
}

impl ClassOracle {
    pub fn new(kind: ClassKind, bounds: Bounds) -> Result<ClassOracle> {
        let parameter_verdict = match &kind {
            ClassKind::Proj | ClassKind::Inj | ClassKind::AddT(_) => None,
            ClassKind::ProjC(c) | ClassKind::InjC(c) | ClassKind::GProjC(c) | ClassKind::GInjC(c) => {
                let v = is_semidualizing(c, bounds);
                if !v.holds {
                    return Err(Error::NotSemidualizing(format!(
                        "parameter of dimension {} ({})",
                        c.dim(),
                        v
                    )));
                }
                Some(v)
            }
        };
        Ok(ClassOracle {
            kind,
            bounds,
            parameter_verdict,
        })
    }

    /// Builds the oracle for `kind` over `alg` with default bounds.
    pub fn with_defaults(kind: ClassKind, alg: &Algebra) -> Result<ClassOracle> {
        ClassOracle::new(kind, Bounds::for_algebra(alg))
    }

    pub fn contains(&self, m: &Module) -> Result<Verdict> {
        let b = self.bounds;
        Ok(match &self.kind {
            ClassKind::Proj => is_projective(m),
            ClassKind::Inj => is_injective(m),
            ClassKind::ProjC(c) => is_pc(m, c),
            ClassKind::InjC(c) => is_ic(m, c),
            ClassKind::GProjC(c) => is_gprojc(m, c, b),
            ClassKind::GInjC(c) => is_ginjc(m, c, b),
            ClassKind::AddT(_) => {
                return Err(Error::Unsupported(
                    "membership in add T needs summand detection".into(),
                ))
            }
        })
    }

    pub fn dual(&self) -> Option<ClassOracle> {
        Some(ClassOracle {
            kind: self.kind.dual()?,
            bounds: self.bounds,
            parameter_verdict: self.parameter_verdict.clone(),
        })
    }
}

/// `0 -> X -> C^r -> X' -> 0` for `X` in `GP_C`.
#[derive(Clone, Debug)]
pub struct CogeneratorSequence {
    pub inclusion: ModMap,
    pub projection: ModMap,
}

/// Embeds `X` into `C^r` using minimal generators of `Hom(X, C)`; the
/// cokernel is again in `GP_C`. Both memberships are re-verified.
pub fn cogenerator_sequence(x: &Module, c: &Module, b: Bounds) -> Result<CogeneratorSequence> {
    let v = is_gprojc(x, c, b);
    if !v.holds {
        return Err(Error::Membership(format!("X is not in GP_C: {v}")));
    }
    let inclusion = cogenerator_map(x, c);
    if !inclusion.is_injective() {
        return Err(Error::Membership("cogenerator map is not injective".into()));
    }
    let (q, projection, _) = cokernel(&inclusion);
    let v = is_gprojc(&q, c, b);
    if !v.holds {
        return Err(Error::Membership(format!("cokernel is not in GP_C: {v}")));
    }
    Ok(CogeneratorSequence {
        inclusion,
        projection,
    })
}

/// `X -> C^r`, `x ↦ (f_1(x), ..., f_r(x))` for minimal generators `f_i` of
/// `Hom(X, C)`.
pub fn cogenerator_map(x: &Module, c: &Module) -> ModMap {
    let alg = x.algebra();
    let hs = HomSpace::new(x, c).expect("same algebra");
    let hm = hs.module();
    let gens = &hm.top().gens;
    let r = gens.cols();
    let parts: Vec<FpMatrix> = (0..r).map(|i| hs.element(&gens.column(i))).collect();
    let matrix = FpMatrix::vstack_all(x.p(), x.dim(), &parts);
    ModMap::new(x.clone(), Module::direct_sum_all(alg, &vec![c.clone(); r]), matrix)
        .expect("cogenerator map is linear")
}

/// `T^s -> M` evaluating each basis element of `Hom(T, M)` on its own copy
/// of `T`; every map `T -> M` factors through it.
pub fn right_approximation(m: &Module, t: &Module) -> Result<ModMap> {
    let f = evaluation_approximation(m, t, false);
    if !f.is_surjective() {
        return Err(Error::ApproximationNotSurjective { stage: 0 });
    }
    Ok(f)
}

/// Evaluation on a basis of `Hom(T, M)`, or on minimal generators of it
/// as a module when `minimal` is set. Not necessarily surjective.
pub fn evaluation_approximation(m: &Module, t: &Module, minimal: bool) -> ModMap {
    let alg: &Arc<Algebra> = m.algebra();
    let hs = HomSpace::new(t, m).expect("same algebra");
    let maps: Vec<FpMatrix> = if minimal {
        let hm = hs.module();
        let gens = &hm.top().gens;
        (0..gens.cols()).map(|i| hs.element(&gens.column(i))).collect()
    } else {
        (0..hs.dim()).map(|l| hs.basis_map(l)).collect()
    };
    let s = maps.len();
    let matrix = FpMatrix::hstack_all(m.p(), m.dim(), &maps);
    let source = Module::direct_sum_all(alg, &vec![t.clone(); s]);
    ModMap::new(source, m.clone(), matrix).expect("evaluation is linear")
}

/// `T^s -> M` on maps `f_1, ..., f_s` generating `Hom(T, M)` as a right
/// `End(T)`-module, chosen greedily from a basis. Every map `T -> M` is
/// `Σ f_i e_i` and so factors through it.
pub fn end_generated_approximation(m: &Module, t: &Module) -> ModMap {
    let alg = m.algebra();
    let hs = HomSpace::new(t, m).expect("same algebra");
    let end = HomSpace::new(t, t).expect("same algebra");
    let mut span = FpMatrix::zeros(m.p(), hs.dim(), 0);
    let mut rank = 0;
    let mut maps = Vec::new();
    for l in 0..hs.dim() {
        let f = hs.basis_map(l);
        let orbit = end.postcompose(&f, &hs);
        let grown = span.hstack(&orbit);
        let r = grown.rank();
        if r > rank {
            span = grown;
            rank = r;
            maps.push(f);
        }
        if rank == hs.dim() {
            break;
        }
    }
    let s = maps.len();
    let matrix = FpMatrix::hstack_all(m.p(), m.dim(), &maps);
    let source = Module::direct_sum_all(alg, &vec![t.clone(); s]);
    ModMap::new(source, m.clone(), matrix).expect("evaluation is linear")
}

#[cfg(test)]
mod tests;

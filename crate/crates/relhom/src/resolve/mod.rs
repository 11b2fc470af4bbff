//! Resolutions by a class, comparison lifts, horseshoes and the
//! approximations behind `GP_C`.
//!
//! A resolution `X -> M` keeps `X_n` in degree `n`. A coresolution
//! `N -> Y` keeps `Y^n` in degree `-n`, so both are ordinary complexes
//! with degree-lowering differentials.

mod horseshoe;
mod minimal;
mod wx;

pub use horseshoe::{horseshoe, horseshoe_co, Horseshoe, HorseshoeReport};
pub use minimal::{tensor_free_map, MinimalResolution};
pub use wx::{
    gc_dim, strict_wx_resolution, strict_wx_resolution_at, wx_approximation,
    wx_approximation_at, wx_hull, GcDim, WxApproximation, WxHull,
};

use crate::algmod::{
    cokernel, injective_envelope, kernel, lift_through, ModMap, Module,
};
use crate::catclass::{end_generated_approximation, evaluation_approximation, is_pc, ClassKind, ClassOracle};
use crate::chaincx::{is_hom_exact, ChainMap, Complex, Side};
use crate::error::{Error, Result};
use crate::exactlin::FpMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Resolution,
    Coresolution,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Properness {
    /// Guaranteed by how the resolution was built.
    ByConstruction,
    /// Checked against this many probes.
    Sampled(usize),
}

/// Which of two independent constructions to use. `Minimal` builds from
/// minimal generators, `Full` evaluates on a whole basis of Hom; both are
/// proper, and comparing them tests homotopy invariance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Minimal,
    Full,
}

/// A bounded resolution or coresolution of `module` by a class.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: Module,
    pub complex: Complex,
    /// `X_0 -> M`, or `M -> Y^0` for a coresolution.
    pub augmentation: ModMap,
    pub direction: Direction,
    pub class: ClassKind,
    pub length: usize,
    pub properness: Properness,
}

impl Resolution {
    fn degree(&self, n: usize) -> i64 {
        match self.direction {
            Direction::Resolution => n as i64,
            Direction::Coresolution => -(n as i64),
        }
    }

    /// `X_n` (or `Y^n`).
    pub fn object(&self, n: usize) -> Module {
        self.complex.object(self.degree(n))
    }

    /// `∂_n : X_n -> X_{n-1}` for a resolution, `∂^n : Y^n -> Y^{n+1}`
    /// for a coresolution.
    pub fn differential(&self, n: usize) -> ModMap {
        match self.direction {
            Direction::Resolution => self.complex.differential_map(n as i64),
            Direction::Coresolution => self.complex.differential_map(-(n as i64)),
        }
    }

    /// The map into (or out of) the last term that completes the
    /// resolution: the kernel of `∂_len` with its inclusion, or the
    /// cokernel of `∂^{len-1}` with its projection.
    pub fn tail(&self) -> ModMap {
        let len = self.length;
        match self.direction {
            Direction::Resolution => {
                let last = if len == 0 {
                    self.augmentation.clone()
                } else {
                    self.differential(len)
                };
                kernel(&last).1
            }
            Direction::Coresolution => {
                let last = if len == 0 {
                    self.augmentation.clone()
                } else {
                    self.differential(len - 1)
                };
                cokernel(&last).1
            }
        }
    }

    /// Whether the tail vanishes, i.e. the resolution is complete.
    pub fn is_complete(&self) -> bool {
        let t = self.tail();
        match self.direction {
            Direction::Resolution => t.source.is_zero(),
            Direction::Coresolution => t.target.is_zero(),
        }
    }

    /// The exact complex `K -> X_len -> ... -> X_0 -> M` with `M` in
    /// degree -1, or `M -> Y^0 -> ... -> Y^len -> Q` with `M` in degree 1.
    pub fn augmented(&self) -> Complex {
        let alg = self.module.algebra();
        let tail = self.tail();
        let len = self.length as i64;
        match self.direction {
            Direction::Resolution => {
                let mut objects = vec![self.module.clone()];
                let mut diffs = vec![self.augmentation.matrix.clone()];
                for n in 0..=len {
                    objects.push(self.complex.object(n));
                    if n >= 1 {
                        diffs.push(self.complex.differential(n));
                    }
                }
                objects.push(tail.source.clone());
                diffs.push(tail.matrix);
                Complex::new_unchecked(alg, -1, objects, diffs).expect("shapes")
            }
            Direction::Coresolution => {
                let mut objects = vec![tail.target.clone()];
                let mut diffs = vec![tail.matrix];
                for n in -len..=0 {
                    objects.push(self.complex.object(n));
                    if n > -len {
                        diffs.push(self.complex.differential(n));
                    }
                }
                objects.push(self.module.clone());
                diffs.push(self.augmentation.matrix.clone());
                Complex::new_unchecked(alg, -len - 1, objects, diffs).expect("shapes")
            }
        }
    }

    /// The augmentation as a chain map to (or from) `M` in degree 0.
    pub fn augmentation_map(&self) -> ChainMap {
        let m = Complex::single(&self.module, 0);
        let comp = vec![self.augmentation.matrix.clone()];
        match self.direction {
            Direction::Resolution => ChainMap::new_unchecked(&self.complex, &m, 0, comp),
            Direction::Coresolution => ChainMap::new_unchecked(&m, &self.complex, 0, comp),
        }
        .expect("shapes")
    }

    /// Whether the augmented complex is exact.
    pub fn is_exact(&self) -> bool {
        self.augmented().is_exact()
    }

    /// Whether every term passes the class oracle.
    pub fn terms_in_class(&self, oracle: &ClassOracle) -> Result<bool> {
        for n in 0..=self.length {
            if !oracle.contains(&self.object(n))?.holds {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The degreewise dual, a coresolution of `D(M)` (or a resolution of
    /// `D(N)`). `module` must be `D(M)` as data; passing it keeps the
    /// caller's instance.
    pub fn dual_onto(&self, module: &Module) -> Resolution {
        debug_assert!(*module == self.module.dual());
        let aug = self.augmentation.dual();
        let augmentation = match self.direction {
            Direction::Resolution => {
                ModMap::new_unchecked(module.clone(), aug.target, aug.matrix)
            }
            Direction::Coresolution => {
                ModMap::new_unchecked(aug.source, module.clone(), aug.matrix)
            }
        };
        Resolution {
            module: module.clone(),
            complex: self.complex.dual(),
            augmentation,
            direction: match self.direction {
                Direction::Resolution => Direction::Coresolution,
                Direction::Coresolution => Direction::Resolution,
            },
            class: self.class.dual().unwrap_or_else(|| self.class.clone()),
            length: self.length,
            properness: self.properness.clone(),
        }
    }

    pub fn dual(&self) -> Resolution {
        self.dual_onto(&self.module.dual())
    }

    /// The first `len` terms.
    pub fn truncate(&self, len: usize) -> Resolution {
        let len = len.min(self.length);
        let complex = match self.direction {
            Direction::Resolution => self.complex.truncate(0, len as i64),
            Direction::Coresolution => self.complex.truncate(-(len as i64), 0),
        };
        Resolution {
            complex,
            length: len,
            ..self.clone()
        }
    }
}

/// Hom-exactness of the augmented complex against every probe: `Hom(P, -)`
/// for resolutions, `Hom(-, P)` for coresolutions.
pub fn check_proper(res: &Resolution, probes: &[Module]) -> Result<bool> {
    let side = match res.direction {
        Direction::Resolution => Side::Covariant,
        Direction::Coresolution => Side::Contravariant,
    };
    is_hom_exact(&res.augmented(), probes, side)
}

/// Assembles `X_len -> ... -> X_0` from the maps `X_{n+1} -> X_n`.
fn assemble(
    m: &Module,
    objects: Vec<Module>,
    maps: Vec<FpMatrix>,
    augmentation: ModMap,
    class: ClassKind,
) -> Resolution {
    let length = objects.len() - 1;
    let complex = Complex::new_unchecked(m.algebra(), 0, objects, maps).expect("shapes");
    Resolution {
        module: m.clone(),
        complex,
        augmentation,
        direction: Direction::Resolution,
        class,
        length,
        properness: Properness::ByConstruction,
    }
}

/// The minimal projective resolution to length `len`.
pub fn projective_resolution(m: &Module, len: usize) -> Resolution {
    let mut res = MinimalResolution::new(m);
    let complex = res.complex(len);
    Resolution {
        module: m.clone(),
        complex,
        augmentation: res.cover(0),
        direction: Direction::Resolution,
        class: ClassKind::Proj,
        length: len,
        properness: Properness::ByConstruction,
    }
}

/// The minimal injective coresolution to length `len`, built from
/// injective envelopes of successive cokernels.
pub fn injective_coresolution(m: &Module, len: usize) -> Resolution {
    let alg = m.algebra();
    let augmentation = injective_envelope(m);
    let mut objects = vec![augmentation.target.clone()];
    let mut maps = Vec::new();
    let mut last = augmentation.clone();
    for _ in 0..len {
        let (_, proj, _) = cokernel(&last);
        let env = injective_envelope(&proj.target);
        let d = env.compose(&proj);
        objects.push(env.target.clone());
        maps.push(d.matrix.clone());
        last = d;
    }
    objects.reverse();
    maps.reverse();
    let complex = Complex::new_unchecked(alg, -(len as i64), objects, maps).expect("shapes");
    Resolution {
        module: m.clone(),
        complex,
        augmentation,
        direction: Direction::Coresolution,
        class: ClassKind::Inj,
        length: len,
        properness: Properness::ByConstruction,
    }
}

/// Iterated right approximations of `M` and its successive kernels.
/// A module already in the class is its own approximation, so the
/// resolution stops.
fn resolve_by(
    m: &Module,
    len: usize,
    class: ClassKind,
    member: impl Fn(&Module) -> bool,
    approx: impl Fn(&Module) -> ModMap,
) -> Result<Resolution> {
    let mut objects = Vec::new();
    let mut maps = Vec::new();
    let mut augmentation = None;
    let mut k = m.clone();
    let mut inc: Option<ModMap> = None;
    for stage in 0..=len {
        let f = if member(&k) { ModMap::identity(&k) } else { approx(&k) };
        if !f.is_surjective() {
            return Err(Error::ApproximationNotSurjective { stage });
        }
        objects.push(f.source.clone());
        match &inc {
            None => augmentation = Some(f.clone()),
            Some(i) => maps.push(i.compose(&f).matrix),
        }
        let (kk, kinc) = kernel(&f);
        k = kk;
        inc = Some(kinc);
    }
    Ok(assemble(m, objects, maps, augmentation.expect("stage 0"), class))
}

/// A proper resolution of `M` by the oracle's class, to length `len`.
/// `GP_C` uses the strict WX-resolution, whose length is the
/// `GP_C`-dimension; the injective-side classes need
/// [`class_coresolution`].
pub fn class_resolution(m: &Module, oracle: &ClassOracle, len: usize, style: Style) -> Result<Resolution> {
    match (&oracle.kind, style) {
        (ClassKind::Proj, Style::Minimal) => Ok(projective_resolution(m, len)),
        (ClassKind::Proj, Style::Full) => {
            let a = Module::regular(m.algebra());
            resolve_by(m, len, ClassKind::Proj, |k| k.is_zero(), |k| {
                evaluation_approximation(k, &a, false)
            })
        }
        (ClassKind::ProjC(c), _) => resolve_by(
            m,
            len,
            oracle.kind.clone(),
            |k| k.is_zero() || (style == Style::Minimal && is_pc(k, c).holds),
            |k| evaluation_approximation(k, c, style == Style::Minimal),
        ),
        (ClassKind::AddT(t), _) => resolve_by(
            m,
            len,
            oracle.kind.clone(),
            |k| k.is_zero() || k == t,
            |k| match style {
                Style::Minimal => end_generated_approximation(k, t),
                Style::Full => evaluation_approximation(k, t, false),
            },
        ),
        (ClassKind::GProjC(c), _) => strict_wx_resolution(m, c, oracle.bounds),
        _ => Err(Error::Unsupported(format!(
            "{} resolves on the other side",
            oracle.kind.tag()
        ))),
    }
}

/// A proper coresolution of `N` by an injective-side class. Apart from
/// the minimal injective one, these are duals of resolutions of `D(N)`.
pub fn class_coresolution(n: &Module, oracle: &ClassOracle, len: usize, style: Style) -> Result<Resolution> {
    if matches!((&oracle.kind, style), (ClassKind::Inj, Style::Minimal)) {
        return Ok(injective_coresolution(n, len));
    }
    if !oracle.kind.is_injective_side() {
        return Err(Error::Unsupported(format!(
            "{} resolves on the other side",
            oracle.kind.tag()
        )));
    }
    let dual = oracle.dual().expect("injective-side classes have duals");
    let res = class_resolution(&n.dual(), &dual, len, style)?;
    Ok(res.dual_onto(n))
}

/// The comparison map over `f`. For resolutions `X -> M`, `X' -> M'` and
/// `f : M -> M'` it returns `φ : X -> X'` with `γ' φ_0 = f γ`; for
/// coresolutions `M -> Y`, `M' -> Y'` it returns `ψ : Y -> Y'` with
/// `ψ^0 ι = ι' f`. Both complexes are cut to the shorter length unless
/// one of them is complete.
pub fn lift(f: &ModMap, res: &Resolution, res2: &Resolution) -> Result<ChainMap> {
    if res.direction != res2.direction {
        return Err(Error::Unsupported("lift between opposite directions".into()));
    }
    let len = comparison_length(res, res2);
    let (a, b) = (res.truncate(len), res2.truncate(len));
    let mut comps: Vec<ModMap> = Vec::new();
    let solve = |x: Option<FpMatrix>, src: Module, tgt: Module| -> Result<ModMap> {
        let m = x.ok_or_else(|| Error::LiftFailed("comparison map".into()))?;
        Ok(ModMap::new_unchecked(src, tgt, m))
    };
    match res.direction {
        Direction::Resolution => {
            let t = f.compose(&a.augmentation);
            comps.push(solve(lift_through(&b.augmentation, &t), a.object(0), b.object(0))?);
            for n in 1..=len {
                let t = comps[n - 1].compose(&a.differential(n));
                comps.push(solve(lift_through(&b.differential(n), &t), a.object(n), b.object(n))?);
            }
            let mats = comps.into_iter().map(|c| c.matrix).collect();
            ChainMap::new(&a.complex, &b.complex, 0, mats)
        }
        Direction::Coresolution => {
            // Lifting on the dual resolutions keeps every solve in the
            // terms rather than in a Hom space between them.
            let dual = lift(&f.dual(), &b.dual(), &a.dual())?;
            let comps = (0..=len as i64).rev().map(|n| dual.component(n).transpose()).collect();
            ChainMap::new(&a.complex, &b.complex, -(len as i64), comps)
        }
    }
}

/// How far a comparison map can be built: the shorter length, unless a
/// resolution is complete, in which case its later terms are zero.
fn comparison_length(res: &Resolution, res2: &Resolution) -> usize {
    let cap = |r: &Resolution| if r.is_complete() { usize::MAX } else { r.length };
    match cap(res).min(cap(res2)) {
        usize::MAX => res.length.max(res2.length),
        l => l,
    }
}

/// Lifts `id_M` both ways between two resolutions of `M` and builds a
/// homotopy from the composite `X -> X' -> X` to the identity through
/// degree `len`. Both resolutions need length at least `len + 1` unless
/// complete.
///
/// Component `n` is `s_n : X_n -> X_{n+1}` for a resolution and
/// `s_n : Y^{n+1} -> Y^n` for a coresolution. `None` means some lift
/// failed, which a proper resolution rules out.
pub fn roundtrip_homotopy(res: &Resolution, res2: &Resolution, len: usize) -> Result<Option<Vec<FpMatrix>>> {
    let short = |r: &Resolution| r.length < len + 1 && !r.is_complete();
    if short(res) || short(res2) {
        return Err(Error::Hypothesis(format!(
            "resolutions of length {} and {} are too short for degree {len}",
            res.length, res2.length
        )));
    }
    let id = ModMap::identity(&res.module);
    let f = lift(&id, res, res2)?;
    let g = lift(&id, res2, res)?;
    let p = res.module.p();
    let excess = |d: i64| {
        let gf = g.component(d).mul(&f.component(d));
        gf.sub(&FpMatrix::identity(p, res.complex.dim(d)))
    };
    Ok(match res.direction {
        Direction::Resolution => homotopy_over_zero(res, |n| excess(n as i64), len),
        // Dualize to a resolution, solve there, and transpose back.
        Direction::Coresolution => homotopy_over_zero(&res.dual(), |n| excess(-(n as i64)).transpose(), len)
            .map(|s| s.iter().map(FpMatrix::transpose).collect()),
    })
}

/// `s_n` with `φ_n = ∂_{n+1} s_n + s_{n-1} ∂_n` for an endomorphism `φ` of
/// a resolution lying over zero, lifting one degree at a time.
fn homotopy_over_zero(res: &Resolution, phi: impl Fn(usize) -> FpMatrix, len: usize) -> Option<Vec<FpMatrix>> {
    let mut out: Vec<FpMatrix> = Vec::with_capacity(len + 1);
    for n in 0..=len {
        let mut t = phi(n);
        if let Some(prev) = out.last() {
            t = t.sub(&prev.mul(&res.differential(n).matrix));
        }
        let t = ModMap::new_unchecked(res.object(n), res.object(n), t);
        out.push(lift_through(&res.differential(n + 1), &t)?);
    }
    Some(out)
}

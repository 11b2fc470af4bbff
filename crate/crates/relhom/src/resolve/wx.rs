//! `GP_C`-dimension, WX-approximations and hulls, and strict
//! WX-resolutions, with `X = GP_C` and `W = P_C`.
//!
//! Approximations are built by induction on the number of syzygies taken:
//! if `0 -> K' -> X' -> ΩM -> 0` approximates the first syzygy and
//! `0 -> X' -> W -> X'' -> 0` is a cogenerator sequence, then `Z = W / K'`
//! has finite `P_C`-dimension and the pushout `E` of `P_0 <- ΩM -> Z` sits
//! in `0 -> Z -> E -> M -> 0` with `E` in `GP_C`.

use super::{Direction, MinimalResolution, Properness, Resolution};
use crate::algmod::{cokernel, direct_sum, extend_through, kernel, projective_cover, ModMap, Module};
use crate::catclass::{cogenerator_sequence, is_totally_reflexive, Bounds, ClassKind, Mode, Verdict};
use crate::chaincx::Complex;
use crate::error::{Error, Result};
use crate::exactlin::FpMatrix;

/// The least `n` with `Ω^n M` totally `C`-reflexive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcDim {
    /// `None` when no syzygy up to the bound qualifies.
    pub value: Option<usize>,
    /// For a value, whether membership of that syzygy is certified; for
    /// `None`, certified when the syzygies repeat without qualifying, so
    /// the dimension is infinite.
    pub verdict: Verdict,
}

pub fn gc_dim(m: &Module, c: &Module, b: Bounds) -> GcDim {
    let mut res = MinimalResolution::new(m);
    for n in 0..=b.bound {
        let omega = res.syzygy(n);
        let v = is_totally_reflexive(&omega, c, b);
        if v.holds {
            return GcDim {
                value: Some(n),
                verdict: v,
            };
        }
    }
    let verdict = match res.periodicity(b.bound, b.trials, b.seed) {
        Some((i, j)) => Verdict::fails(format!(
            "syzygies {i} and {j} are isomorphic and none up to {} is totally reflexive",
            b.bound
        )),
        None => Verdict {
            holds: false,
            mode: Mode::Bounded(b.bound),
            witness: Some(format!("no syzygy up to {} is totally reflexive", b.bound)),
        },
    };
    GcDim {
        value: None,
        verdict,
    }
}

/// `0 -> K -> X_0 -> M -> 0` with `X_0` in `GP_C` and a `P_C`-resolution
/// `W_g -> ... -> W_1 -> K`.
#[derive(Clone, Debug)]
pub struct WxApproximation {
    pub module: Module,
    /// `X_0 -> M`.
    pub approximation: ModMap,
    /// `K >-> X_0`.
    pub kernel: ModMap,
    /// `kernel_resolution[0] : W_1 -> K`, then `W_{i+1} -> W_i`.
    pub kernel_resolution: Vec<ModMap>,
}

impl WxApproximation {
    pub fn is_exact(&self) -> bool {
        let (f, k) = (&self.approximation, &self.kernel);
        f.is_surjective()
            && k.is_injective()
            && f.matrix.mul(&k.matrix).is_zero()
            && k.rank() + f.rank() == f.source.dim()
    }
}

fn require_gc_dim(m: &Module, c: &Module, b: Bounds) -> Result<usize> {
    let g = gc_dim(m, c, b);
    g.value.ok_or_else(|| Error::Undetermined {
        what: format!("GP_C-dimension ({})", g.verdict),
        bound: b.bound,
    })
}

/// The approximation for `g = gc_dim(M, C)`.
pub fn wx_approximation(m: &Module, c: &Module, b: Bounds) -> Result<WxApproximation> {
    let g = require_gc_dim(m, c, b)?;
    wx_approximation_at(m, c, g, b)
}

/// The approximation built from the `g`-th syzygy, which must be totally
/// `C`-reflexive. Any `g` at least the `GP_C`-dimension works; larger `g`
/// gives longer kernel resolutions.
pub fn wx_approximation_at(m: &Module, c: &Module, g: usize, b: Bounds) -> Result<WxApproximation> {
    if g == 0 {
        let v = is_totally_reflexive(m, c, b);
        if !v.holds {
            return Err(Error::Membership(format!("M is not in GP_C: {v}")));
        }
        return Ok(WxApproximation {
            module: m.clone(),
            approximation: ModMap::identity(m),
            kernel: ModMap::zero(&Module::zero(m.algebra()), m),
            kernel_resolution: Vec::new(),
        });
    }
    let pi = projective_cover(m);
    let (omega, iota) = kernel(&pi);
    let inner = wx_approximation_at(&omega, c, g - 1, b)?;
    let cog = cogenerator_sequence(&inner.approximation.source, c, b)?;
    let j = &cog.inclusion;
    // Z = W / K'
    let k_to_w = j.compose(&inner.kernel);
    let (z, rho, _) = cokernel(&k_to_w);
    let h = extend_through(&inner.approximation, &rho.compose(j)).ok_or_else(|| Error::LiftFailed("pushout map".into()))?;
    // E = (P_0 ⊕ Z) / {(ι ω, -h ω)}
    let (s, inc, _) = direct_sum(&pi.source, &z);
    let emb = inc[0].matrix.mul(&iota.matrix).sub(&inc[1].matrix.mul(&h));
    let emb = ModMap::new_unchecked(omega.clone(), s.clone(), emb);
    let (e, q, _) = cokernel(&emb);
    let z_to_e = q.compose(&inc[1]);
    let onto = pi.matrix.hstack(&FpMatrix::zeros(m.p(), m.dim(), z.dim()));
    let onto = ModMap::new_unchecked(s, m.clone(), onto);
    let approximation = extend_through(&q, &onto).ok_or_else(|| Error::LiftFailed("pushout map".into()))?;
    let approximation = ModMap::new_unchecked(e.clone(), m.clone(), approximation);

    let mut kernel_resolution = vec![rho];
    if let Some(first) = inner.kernel_resolution.first() {
        kernel_resolution.push(k_to_w.compose(first));
        kernel_resolution.extend(inner.kernel_resolution[1..].iter().cloned());
    }
    let out = WxApproximation {
        module: m.clone(),
        approximation,
        kernel: z_to_e,
        kernel_resolution,
    };
    if !out.is_exact() {
        return Err(Error::Membership(format!("pushout at stage {g} is not exact")));
    }
    Ok(out)
}

/// `0 -> M -> H -> X'' -> 0` with `H` of finite `P_C`-dimension and `X''`
/// in `GP_C`.
#[derive(Clone, Debug)]
pub struct WxHull {
    pub inclusion: ModMap,
    pub projection: ModMap,
}

/// Pushes the approximation out along a cogenerator sequence
/// `X_0 -> W -> X''`: the hull is `M -> W / K -> X''`.
pub fn wx_hull(m: &Module, c: &Module, b: Bounds) -> Result<WxHull> {
    let approx = wx_approximation(m, c, b)?;
    hull_from(&approx, c, b)
}

fn hull_from(approx: &WxApproximation, c: &Module, b: Bounds) -> Result<WxHull> {
    let m = &approx.module;
    let cog = cogenerator_sequence(&approx.approximation.source, c, b)?;
    let (_, rho, _) = cokernel(&cog.inclusion.compose(&approx.kernel));
    let inclusion = extend_through(&approx.approximation, &rho.compose(&cog.inclusion))
        .ok_or_else(|| Error::LiftFailed("pushout map".into()))?;
    let inclusion = ModMap::new_unchecked(m.clone(), rho.target.clone(), inclusion);
    let projection = extend_through(&rho, &cog.projection).ok_or_else(|| Error::LiftFailed("pushout map".into()))?;
    let projection = ModMap::new_unchecked(rho.target.clone(), cog.projection.target.clone(), projection);
    Ok(WxHull {
        inclusion,
        projection,
    })
}

/// The strict WX-resolution `W_g -> ... -> W_1 -> X_0 -> M` with
/// `g = gc_dim(M, C)`.
pub fn strict_wx_resolution(m: &Module, c: &Module, b: Bounds) -> Result<Resolution> {
    let g = require_gc_dim(m, c, b)?;
    strict_wx_resolution_at(m, c, g, b)
}

/// The strict resolution from [`wx_approximation_at`]; `W_1 -> X_0` is
/// `W_1 ->> K >-> X_0`.
pub fn strict_wx_resolution_at(m: &Module, c: &Module, g: usize, b: Bounds) -> Result<Resolution> {
    let approx = wx_approximation_at(m, c, g, b)?;
    let mut objects = vec![approx.approximation.source.clone()];
    let mut diffs = Vec::new();
    for (i, d) in approx.kernel_resolution.iter().enumerate() {
        objects.push(d.source.clone());
        diffs.push(if i == 0 {
            approx.kernel.compose(d).matrix
        } else {
            d.matrix.clone()
        });
    }
    let length = objects.len() - 1;
    let complex = Complex::new(m.algebra(), 0, objects, diffs)?;
    let res = Resolution {
        module: m.clone(),
        complex,
        augmentation: approx.approximation,
        direction: Direction::Resolution,
        class: ClassKind::GProjC(c.clone()),
        length,
        properness: Properness::ByConstruction,
    };
    if !res.is_exact() {
        return Err(Error::Membership("strict resolution is not exact".into()));
    }
    Ok(res)
}

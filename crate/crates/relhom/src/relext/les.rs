//! Long exact sequences of relative Ext from a short exact sequence
//! `0 -> L' -> L -> L'' -> 0`, with connecting maps computed by the snake
//! construction on a degreewise split sequence of Hom complexes.

use crate::algmod::{ModMap, Module};
use crate::catclass::ClassOracle;
use crate::chaincx::{is_hom_exact, ChainMap, Complex, HomComplex, Side};
use crate::error::{Error, Result};
use crate::exactlin::FpMatrix;
use crate::resolve::{class_coresolution, class_resolution, horseshoe, horseshoe_co, Style};

/// Which argument the sequence sits in and how the fixed one is resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LesVariant {
    /// `Ext_X(M, -)` from an X-resolution of the fixed `M`.
    Second,
    /// `Ext_X(-, N)` from a horseshoe of X-resolutions.
    First,
    /// `Ext_Y(-, N)` from a Y-coresolution of the fixed `N`.
    FirstCo,
    /// `Ext_Y(M, -)` from a horseshoe of Y-coresolutions.
    SecondCo,
}

impl LesVariant {
    pub const ALL: [LesVariant; 4] = [
        LesVariant::Second,
        LesVariant::First,
        LesVariant::FirstCo,
        LesVariant::SecondCo,
    ];

    fn side(self) -> Side {
        match self {
            LesVariant::Second | LesVariant::First => Side::Covariant,
            LesVariant::FirstCo | LesVariant::SecondCo => Side::Contravariant,
        }
    }

    /// The three Ext groups of one degree, in sequence order.
    fn labels(self, n: usize) -> [String; 3] {
        let e = |a: &str, b: &str| format!("Ext^{n}({a},{b})");
        match self {
            LesVariant::Second | LesVariant::SecondCo => [e("M", "L'"), e("M", "L"), e("M", "L''")],
            LesVariant::First | LesVariant::FirstCo => [e("L''", "N"), e("L", "N"), e("L'", "N")],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesSlot {
    pub label: String,
    pub dim: usize,
}

/// The sequence from degree 0 through the three groups of degree `max`.
#[derive(Clone, Debug)]
pub struct LesReport {
    pub slots: Vec<LesSlot>,
    /// `maps[i] : slots[i] -> slots[i + 1]` in the homology bases.
    pub maps: Vec<FpMatrix>,
    /// Exactness at each slot but the last; the first slot is checked
    /// against the zero map coming in.
    pub exact: Vec<bool>,
}

impl LesReport {
    pub fn is_exact(&self) -> bool {
        self.exact.iter().all(|&e| e)
    }

    /// The connecting map from degree `n` to degree `n + 1`.
    pub fn connecting(&self, n: usize) -> &FpMatrix {
        &self.maps[3 * n + 2]
    }

    pub fn connecting_is_bijective(&self, n: usize) -> bool {
        let d = self.connecting(n);
        let r = d.rank();
        r == d.rows() && r == d.cols()
    }
}

/// Builds the sequence for `f : L' -> L`, `g : L -> L''`. The short exact
/// sequence must be Hom-exact against the probes (from the class on the
/// covariant side, into it on the contravariant side), otherwise
/// [`Error::Hypothesis`].
#[allow(clippy::too_many_arguments)]
pub fn les(
    variant: LesVariant,
    oracle: &ClassOracle,
    f: &ModMap,
    g: &ModMap,
    fixed: &Module,
    max: usize,
    probes: &[Module],
    style: Style,
) -> Result<LesReport> {
    let ses = Complex::from_maps(&[f.clone(), g.clone()])?;
    if !ses.is_exact_at(1) || !f.is_injective() || !g.is_surjective() {
        return Err(Error::Hypothesis("sequence is not short exact".into()));
    }
    if !is_hom_exact(&ses, probes, variant.side())? {
        return Err(Error::Hypothesis("sequence is not Hom-exact against the probes".into()));
    }
    let len = max + 1;
    let lo = -(len as i64);
    let point = |m: &Module| Complex::single(m, 0);
    let at_zero = |h: &ModMap| {
        ChainMap::new_unchecked(&point(&h.source), &point(&h.target), 0, vec![h.matrix.clone()]).expect("shapes")
    };
    let hom = |x: &Complex, y: &Complex| HomComplex::new(x, y, lo, 1, false);

    let (a, b, c, i, p, sigma) = match variant {
        LesVariant::Second => {
            let x = class_resolution(fixed, oracle, len, style)?.complex;
            let (a, b, c) = (hom(&x, &point(&f.source))?, hom(&x, &point(&f.target))?, hom(&x, &point(&g.target))?);
            let i = a.postcompose(&at_zero(f), &b);
            let p = b.postcompose(&at_zero(g), &c);
            let sigma = linear_section(&p, &b, &c)?;
            (a, b, c, i, p, sigma)
        }
        LesVariant::FirstCo => {
            let y = class_coresolution(fixed, oracle, len, style)?.complex;
            let (a, b, c) = (hom(&point(&g.target), &y)?, hom(&point(&f.target), &y)?, hom(&point(&f.source), &y)?);
            let i = a.precompose(&at_zero(g), &b);
            let p = b.precompose(&at_zero(f), &c);
            let sigma = linear_section(&p, &b, &c)?;
            (a, b, c, i, p, sigma)
        }
        LesVariant::First => {
            let left = class_resolution(&f.source, oracle, len, style)?;
            let right = class_resolution(&g.target, oracle, len, style)?;
            let h = horseshoe(f, g, &left, &right)?;
            let n = point(fixed);
            let (x1, x, x2) = (&h.inclusion.source, &h.middle.complex, &h.projection.target);
            let (a, b, c) = (hom(x2, &n)?, hom(x, &n)?, hom(x1, &n)?);
            let i = a.precompose(&h.projection, &b);
            let p = b.precompose(&h.inclusion, &c);
            // h ↦ h ∘ r for the degreewise retractions r : X -> X'.
            let r = ChainMap::new_unchecked(x, x1, 0, h.retractions.clone())?;
            let sigma = c.precompose(&r, &b);
            (a, b, c, i, p, sigma)
        }
        LesVariant::SecondCo => {
            let left = class_coresolution(&f.source, oracle, len, style)?;
            let right = class_coresolution(&g.target, oracle, len, style)?;
            let h = horseshoe_co(f, g, &left, &right)?;
            let m = point(fixed);
            let (y1, y, y2) = (&h.inclusion.source, &h.middle.complex, &h.projection.target);
            let (a, b, c) = (hom(&m, y1)?, hom(&m, y)?, hom(&m, y2)?);
            let i = a.postcompose(&h.inclusion, &b);
            let p = b.postcompose(&h.projection, &c);
            // h ↦ s ∘ h for the degreewise sections s : Y'' -> Y.
            let top = h.sections.len() as i64 - 1;
            let s = ChainMap::new_unchecked(y2, y, -top, h.sections.iter().rev().cloned().collect())?;
            let sigma = c.postcompose(&s, &b);
            (a, b, c, i, p, sigma)
        }
    };
    check_split(&i, &p, &sigma, &b)?;
    Ok(snake(variant, &a, &b, &c, &i, &p, &sigma, max))
}

/// A degreewise section of a surjective `p : B -> C`, by solving.
fn linear_section(p: &ChainMap, b: &HomComplex, c: &HomComplex) -> Result<ChainMap> {
    let comps = (b.lo()..=b.hi())
        .map(|n| {
            let pn = p.component(n);
            pn.solve_matrix(&FpMatrix::identity(pn.p(), pn.rows()))
                .ok_or_else(|| Error::Hypothesis(format!("Hom sequence is not onto in degree {n}")))
        })
        .collect::<Result<Vec<_>>>()?;
    ChainMap::new_unchecked(&c.complex, &b.complex, b.lo(), comps)
}

/// Degreewise exactness of `0 -> A -> B -> C -> 0` and `p σ = 1`.
fn check_split(i: &ChainMap, p: &ChainMap, sigma: &ChainMap, b: &HomComplex) -> Result<()> {
    for n in b.lo()..=b.hi() {
        let (in_, pn, sn) = (i.component(n), p.component(n), sigma.component(n));
        let ok = in_.rank() == in_.cols()
            && pn.mul(&in_).is_zero()
            && in_.rank() + pn.rank() == pn.cols()
            && pn.mul(&sn).is_identity();
        if !ok {
            return Err(Error::Hypothesis(format!("Hom sequence does not split in degree {n}")));
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn snake(
    variant: LesVariant,
    a: &HomComplex,
    b: &HomComplex,
    c: &HomComplex,
    i: &ChainMap,
    p: &ChainMap,
    sigma: &ChainMap,
    max: usize,
) -> LesReport {
    let mut slots = Vec::new();
    let mut maps = Vec::new();
    for n in 0..=max {
        let d = -(n as i64);
        let (ha, hb, hc) = (a.complex.homology(d), b.complex.homology(d), c.complex.homology(d));
        let labels = variant.labels(n);
        for (label, h) in labels.into_iter().zip([&ha, &hb, &hc]) {
            slots.push(LesSlot { label, dim: h.dim() });
        }
        maps.push(i.induced(d, &ha, &hb));
        maps.push(p.induced(d, &hb, &hc));
        if n < max {
            let next = a.complex.homology(d - 1);
            maps.push(connecting(d, &hc, &next, i, sigma, b));
        }
    }
    let exact = (0..slots.len() - 1)
        .map(|s| {
            let out = &maps[s];
            let rank_in = if s == 0 { 0 } else { maps[s - 1].rank() };
            let composite_zero = s == 0 || out.mul(&maps[s - 1]).is_zero();
            composite_zero && rank_in + out.rank() == slots[s].dim
        })
        .collect();
    LesReport { slots, maps, exact }
}

/// `δ[c] = [a]` with `i(a) = ∂ σ(c)`.
fn connecting(
    d: i64,
    hc: &crate::chaincx::Homology,
    ha_next: &crate::chaincx::Homology,
    i: &ChainMap,
    sigma: &ChainMap,
    b: &HomComplex,
) -> FpMatrix {
    let lifted = sigma.component(d).mul(&hc.reps);
    let boundary = b.complex.differential(d).mul(&lifted);
    let a = i
        .component(d - 1)
        .solve_matrix(&boundary)
        .expect("boundary of a lifted cycle lies in the subcomplex");
    ha_next.class_of(&a)
}

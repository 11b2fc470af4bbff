//! The horseshoe construction: resolutions of the ends of a short exact
//! sequence assemble into a resolution of the middle.

use super::{comparison_length, Direction, Properness, Resolution};
use crate::algmod::{lift_through, ModMap};
use crate::chaincx::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::exactlin::FpMatrix;

/// What was verified about the assembled diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HorseshoeReport {
    pub middle_exact: bool,
    pub squares_commute: bool,
    pub rows_split: bool,
}

impl HorseshoeReport {
    pub fn ok(&self) -> bool {
        self.middle_exact && self.squares_commute && self.rows_split
    }
}

/// `0 -> X' -> X -> X'' -> 0` over `0 -> L' -> L -> L'' -> 0`, degreewise
/// split with explicit sections `X''_n -> X_n` and retractions
/// `X_n -> X'_n`.
#[derive(Clone, Debug)]
pub struct Horseshoe {
    pub middle: Resolution,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
    pub sections: Vec<FpMatrix>,
    pub retractions: Vec<FpMatrix>,
    pub report: HorseshoeReport,
}

/// Builds the middle resolution from resolutions `left` of `L'` and
/// `right` of `L''` for `f : L' -> L`, `g : L -> L''`. Every lift exists
/// when the sequence is Hom-exact for the terms of `right` and `left` is
/// proper; otherwise [`Error::LiftFailed`].
pub fn horseshoe(f: &ModMap, g: &ModMap, left: &Resolution, right: &Resolution) -> Result<Horseshoe> {
    if left.direction != Direction::Resolution || right.direction != Direction::Resolution {
        return Err(Error::Unsupported("horseshoe takes resolutions; see horseshoe_co".into()));
    }
    let p = f.source.p();
    let len = comparison_length(left, right);
    let (x1, x2) = (left.truncate(len), right.truncate(len));
    let l = &f.target;
    let phi = lift_through(g, &x2.augmentation).ok_or_else(|| Error::LiftFailed("horseshoe lift".into()))?;
    let phi = ModMap::new_unchecked(x2.object(0), l.clone(), phi);
    let aug = f.compose(&x1.augmentation).matrix.hstack(&phi.matrix);

    let mut taus: Vec<ModMap> = Vec::new();
    for n in 1..=len {
        let tau = if n == 1 {
            // f γ' τ_1 = -φ ∂''_1
            let rhs = phi.compose(&x2.differential(1));
            let rhs = ModMap::new_unchecked(rhs.source.clone(), rhs.target.clone(), rhs.matrix.neg());
            let u = lift_through(f, &rhs).ok_or_else(|| Error::LiftFailed("horseshoe lift".into()))?;
            let u = ModMap::new_unchecked(x2.object(1), f.source.clone(), u);
            lift_through(&x1.augmentation, &u).ok_or_else(|| Error::LiftFailed("horseshoe lift".into()))?
        } else {
            // ∂'_{n-1} τ_n = -τ_{n-1} ∂''_n
            let prev = &taus[n - 2];
            let rhs = prev.compose(&x2.differential(n));
            let rhs = ModMap::new_unchecked(rhs.source.clone(), rhs.target.clone(), rhs.matrix.neg());
            lift_through(&x1.differential(n - 1), &rhs).ok_or_else(|| Error::LiftFailed("horseshoe lift".into()))?
        };
        taus.push(ModMap::new_unchecked(x2.object(n), x1.object(n - 1), tau));
    }

    let objects: Vec<_> = (0..=len).map(|n| x1.object(n).direct_sum(&x2.object(n))).collect();
    let mut diffs = Vec::new();
    for n in 1..=len {
        let (a1, a0) = (x1.object(n).dim(), x1.object(n - 1).dim());
        let (b1, b0) = (x2.object(n).dim(), x2.object(n - 1).dim());
        let mut d = FpMatrix::zeros(p, a0 + b0, a1 + b1);
        d.set_block(0, 0, &x1.differential(n).matrix);
        d.set_block(0, a1, &taus[n - 1].matrix);
        d.set_block(a0, a1, &x2.differential(n).matrix);
        diffs.push(d);
    }
    let complex = Complex::new(l.algebra(), 0, objects.clone(), diffs)?;
    let middle = Resolution {
        module: l.clone(),
        complex,
        augmentation: ModMap::new_unchecked(objects[0].clone(), l.clone(), aug),
        direction: Direction::Resolution,
        class: left.class.clone(),
        length: len,
        properness: Properness::ByConstruction,
    };

    let mut inc = Vec::new();
    let mut proj = Vec::new();
    for n in 0..=len {
        let (a, b) = (x1.object(n).dim(), x2.object(n).dim());
        inc.push(FpMatrix::identity(p, a).vstack(&FpMatrix::zeros(p, b, a)));
        proj.push(FpMatrix::zeros(p, b, a).hstack(&FpMatrix::identity(p, b)));
    }
    let inclusion = ChainMap::new(&x1.complex, &middle.complex, 0, inc)?;
    let projection = ChainMap::new(&middle.complex, &x2.complex, 0, proj)?;

    let squares_commute = middle.augmentation.matrix.mul(&inclusion.component(0))
        == f.matrix.mul(&x1.augmentation.matrix)
        && x2.augmentation.matrix.mul(&projection.component(0))
            == g.matrix.mul(&middle.augmentation.matrix);

    // Splittings found by solving, not read off the block form.
    let mut sections = Vec::new();
    let mut retractions = Vec::new();
    let mut rows_split = true;
    for n in 0..=len {
        let n_i = n as i64;
        let x = middle.object(n);
        let pm = ModMap::new_unchecked(x.clone(), x2.object(n), projection.component(n_i));
        let im = ModMap::new_unchecked(x1.object(n), x.clone(), inclusion.component(n_i));
        let s = lift_through(&pm, &ModMap::identity(&x2.object(n)));
        // With `s` in hand the retraction is `i⁻¹(1 - s p)`, which is linear
        // algebra on the terms rather than a solve in `Hom(X_n, X'_n)`.
        let r = s.as_ref().and_then(|s| {
            let rest = FpMatrix::identity(p, x.dim()).sub(&s.mul(&pm.matrix));
            im.matrix.solve_matrix(&rest)
        });
        match (s, r) {
            (Some(s), Some(r)) => {
                let exact = im.rank() + pm.rank() == x.dim() && pm.matrix.mul(&im.matrix).is_zero();
                rows_split &= exact
                    && pm.matrix.mul(&s).is_identity()
                    && r.mul(&im.matrix).is_identity();
                sections.push(s);
                retractions.push(r);
            }
            _ => return Err(Error::LiftFailed(format!("no splitting in degree {n}"))),
        }
    }
    let report = HorseshoeReport {
        middle_exact: middle.is_exact(),
        squares_commute,
        rows_split,
    };
    Ok(Horseshoe {
        middle,
        inclusion,
        projection,
        sections,
        retractions,
        report,
    })
}

/// The dual construction for coresolutions `L' -> Y'` and `L'' -> Y''`,
/// obtained by applying `D` to the horseshoe of the dual sequence. The
/// middle terms come out as `Y''^n ⊕ Y'^n`; use the returned chain maps
/// rather than the block order.
pub fn horseshoe_co(f: &ModMap, g: &ModMap, left: &Resolution, right: &Resolution) -> Result<Horseshoe> {
    if left.direction != Direction::Coresolution || right.direction != Direction::Coresolution {
        return Err(Error::Unsupported("horseshoe_co takes coresolutions".into()));
    }
    let h = horseshoe(&g.dual(), &f.dual(), &right.dual(), &left.dual())?;
    let middle = h.middle.dual_onto(&f.target);
    let left_c = left.truncate(h.middle.length).complex;
    let right_c = right.truncate(h.middle.length).complex;
    let inclusion = relabel(h.projection.dual(), &left_c, &middle.complex);
    let projection = relabel(h.inclusion.dual(), &middle.complex, &right_c);
    Ok(Horseshoe {
        middle,
        inclusion,
        projection,
        sections: h.retractions.iter().map(|r| r.transpose()).collect(),
        retractions: h.sections.iter().map(|s| s.transpose()).collect(),
        report: h.report,
    })
}

/// The same components between complexes equal as data.
fn relabel(f: ChainMap, source: &Complex, target: &Complex) -> ChainMap {
    let (lo, hi) = f.range();
    let comps = (lo..=hi).map(|n| f.component(n)).collect();
    ChainMap::new_unchecked(source, target, lo, comps).expect("shapes")
}

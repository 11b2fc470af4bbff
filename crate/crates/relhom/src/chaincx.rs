//! Bounded chain complexes of modules, their homology, the Hom complex,
//! shifts and mapping cones.
//!
//! Differentials lower degree: `∂_n : X_n -> X_{n-1}`. Objects outside the
//! stored support are zero.

use crate::algmod::{Algebra, HomSpace, ModMap, Module};
use crate::error::{Error, Result};
use crate::exactlin::{Coordinatizer, Fp, FpMatrix, Subspace};
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Complex {
    alg: Arc<Algebra>,
    lo: i64,
    objects: Vec<Module>,
    /// `diffs[i] : X_{lo+i+1} -> X_{lo+i}`.
    diffs: Vec<FpMatrix>,
}

impl Complex {
    /// Objects in degrees `lo, lo+1, ...`; `diffs[i]` maps degree `lo+i+1`
    /// to degree `lo+i`. Checks linearity and `∂∂ = 0`.
    pub fn new(
        alg: &Arc<Algebra>,
        lo: i64,
        objects: Vec<Module>,
        diffs: Vec<FpMatrix>,
    ) -> Result<Complex> {
        let c = Complex::new_unchecked(alg, lo, objects, diffs)?;
        c.validate()?;
        Ok(c)
    }

    /// Checks only shapes; `∂∂ = 0` and linearity are left to
    /// [`Complex::validate`].
    pub fn new_unchecked(
        alg: &Arc<Algebra>,
        lo: i64,
        objects: Vec<Module>,
        diffs: Vec<FpMatrix>,
    ) -> Result<Complex> {
        if diffs.len() != objects.len().saturating_sub(1) {
            return Err(Error::DimensionMismatch(format!(
                "{} differentials for {} objects",
                diffs.len(),
                objects.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != objects[i].dim() || d.cols() != objects[i + 1].dim() {
                return Err(Error::DimensionMismatch(format!(
                    "differential out of degree {} has shape {}x{}",
                    lo + i as i64 + 1,
                    d.rows(),
                    d.cols()
                )));
            }
        }
        for m in &objects {
            if !Arc::ptr_eq(m.algebra(), alg) && **m.algebra() != **alg {
                return Err(Error::AlgebraMismatch);
            }
        }
        Ok(Complex {
            alg: alg.clone(),
            lo,
            objects,
            diffs,
        })
    }

    pub fn validate(&self) -> Result<()> {
        for n in self.lo + 1..=self.hi() {
            let d = self.differential(n);
            if !self.object(n).is_linear_map(&self.object(n - 1), &d) {
                return Err(Error::NotHomomorphism(format!(
                    "differential out of degree {n}"
                )));
            }
            if !d.mul(&self.differential(n + 1)).is_zero() {
                return Err(Error::Malformed(format!(
                    "differentials compose to a nonzero map at degree {n}"
                )));
            }
        }
        Ok(())
    }

    /// The complex with `m` in degree `n`.
    pub fn single(m: &Module, n: i64) -> Complex {
        Complex {
            alg: m.algebra().clone(),
            lo: n,
            objects: vec![m.clone()],
            diffs: Vec::new(),
        }
    }

    pub fn zero(alg: &Arc<Algebra>) -> Complex {
        Complex {
            alg: alg.clone(),
            lo: 0,
            objects: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// The complex `M_k -> ... -> M_0` in degrees `k..0` built from maps
    /// listed in the order they are composed, `maps[0] : M_k -> M_{k-1}`.
    pub fn from_maps(maps: &[ModMap]) -> Result<Complex> {
        let Some(first) = maps.first() else {
            return Err(Error::Malformed("no maps".into()));
        };
        let k = maps.len();
        let mut objects = vec![maps[k - 1].target.clone()];
        let mut diffs = Vec::new();
        for f in maps.iter().rev() {
            objects.push(f.source.clone());
            diffs.push(f.matrix.clone());
        }
        Complex::new(first.source.algebra(), 0, objects, diffs)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }
    pub fn p(&self) -> u32 {
        self.alg.p()
    }
    pub fn lo(&self) -> i64 {
        self.lo
    }
    /// Top of the stored support; `lo - 1` for the empty complex.
    pub fn hi(&self) -> i64 {
        self.lo + self.objects.len() as i64 - 1
    }
    pub fn is_empty(&self) -> bool {
        self.objects.iter().all(|m| m.is_zero())
    }

    fn index(&self, n: i64) -> Option<usize> {
        (n >= self.lo && n <= self.hi()).then(|| (n - self.lo) as usize)
    }

    pub fn object(&self, n: i64) -> Module {
        match self.index(n) {
            Some(i) => self.objects[i].clone(),
            None => Module::zero(&self.alg),
        }
    }
    pub fn dim(&self, n: i64) -> usize {
        self.index(n).map_or(0, |i| self.objects[i].dim())
    }

    /// `∂_n : X_n -> X_{n-1}`.
    pub fn differential(&self, n: i64) -> FpMatrix {
        match (self.index(n), self.index(n - 1)) {
            (Some(i), Some(_)) => self.diffs[i - 1].clone(),
            _ => FpMatrix::zeros(self.p(), self.dim(n - 1), self.dim(n)),
        }
    }
    pub fn differential_map(&self, n: i64) -> ModMap {
        ModMap::new(self.object(n), self.object(n - 1), self.differential(n))
            .expect("validated differential")
    }

    pub fn homology(&self, n: i64) -> Homology {
        Homology::new(self, n)
    }
    pub fn homology_dim(&self, n: i64) -> usize {
        let rank_out = self.differential(n).rank();
        let rank_in = self.differential(n + 1).rank();
        self.dim(n) - rank_out - rank_in
    }
    pub fn is_exact_at(&self, n: i64) -> bool {
        self.homology_dim(n) == 0
    }
    /// Exact in every degree of the support.
    pub fn is_exact(&self) -> bool {
        (self.lo..=self.hi()).all(|n| self.is_exact_at(n))
    }

    /// `Σ (-1)^n dim X_n`.
    pub fn euler_characteristic(&self) -> i64 {
        (self.lo..=self.hi())
            .map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.dim(n) as i64)
            .sum()
    }

    /// Degrees `lo..=hi` only; differentials leaving the window are dropped.
    pub fn truncate(&self, lo: i64, hi: i64) -> Complex {
        if hi < lo {
            return Complex::zero(&self.alg);
        }
        let objects: Vec<Module> = (lo..=hi).map(|n| self.object(n)).collect();
        let diffs = (lo + 1..=hi).map(|n| self.differential(n)).collect();
        Complex {
            alg: self.alg.clone(),
            lo,
            objects,
            diffs,
        }
    }

    /// `(Σ^i X)_n = X_{n-i}` with differentials scaled by `(-1)^i`.
    pub fn shift(&self, i: i64) -> Complex {
        let s = Fp::new(self.p()).sign(i);
        Complex {
            alg: self.alg.clone(),
            lo: self.lo + i,
            objects: self.objects.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(s)).collect(),
        }
    }

    /// Appends `m` in degree `hi + 1` with differential `d_out : m -> X_hi`.
    pub fn extend(&self, m: &Module, d_out: FpMatrix) -> Result<Complex> {
        let n = self.hi() + 1;
        let mut objects = self.objects.clone();
        let mut diffs = self.diffs.clone();
        if objects.is_empty() {
            return Ok(Complex::single(m, self.lo));
        }
        objects.push(m.clone());
        diffs.push(d_out);
        let c = Complex::new_unchecked(&self.alg, self.lo, objects, diffs)?;
        let d = c.differential(n);
        if !m.is_linear_map(&c.object(n - 1), &d) || !c.differential(n - 1).mul(&d).is_zero() {
            return Err(Error::Malformed(format!("extension at degree {n}")));
        }
        Ok(c)
    }

    /// Degreewise dual `D(X)`, a complex in degrees `-hi..-lo`.
    pub fn dual(&self) -> Complex {
        let objects: Vec<Module> = self.objects.iter().rev().map(|m| m.dual()).collect();
        let diffs = self.diffs.iter().rev().map(|d| d.transpose()).collect();
        Complex {
            alg: self.alg.clone(),
            lo: -self.hi(),
            objects,
            diffs,
        }
    }
}

/// `H_n` of a complex, with representatives of a basis.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: i64,
    /// Basis of `Ker ∂_n` as columns.
    pub cycles: FpMatrix,
    pub boundaries: Subspace,
    /// Cycles whose classes form the basis of `H_n`.
    pub reps: FpMatrix,
    coord: Option<Coordinatizer>,
}

impl Homology {
    fn new(x: &Complex, n: i64) -> Homology {
        let p = x.p();
        let dim = x.dim(n);
        let cycles = x.differential(n).kernel_basis();
        let boundaries = Subspace::span(&x.differential(n + 1));
        let stacked = boundaries.basis().hstack(&cycles);
        let r = stacked.rref();
        let b = boundaries.dim();
        let rep_cols: Vec<usize> = r.pivots.iter().filter(|&&c| c >= b).copied().collect();
        let reps = stacked.select_cols(&rep_cols);
        let basis = boundaries.basis().hstack(&reps);
        let coord = (basis.cols() > 0).then(|| Coordinatizer::new(&basis).expect("independent"));
        let reps = if reps.cols() == 0 {
            FpMatrix::zeros(p, dim, 0)
        } else {
            reps
        };
        Homology {
            degree: n,
            cycles,
            boundaries,
            reps,
            coord,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    /// Class coordinates of each column of `z`, which must be cycles.
    pub fn class_of(&self, z: &FpMatrix) -> FpMatrix {
        let p = z.p();
        let Some(c) = &self.coord else {
            return FpMatrix::zeros(p, 0, z.cols());
        };
        let all = c.coords(z);
        let b = self.boundaries.dim();
        all.block(b, 0, self.dim(), z.cols())
    }

    pub fn is_boundary(&self, z: &[u32]) -> bool {
        self.boundaries.contains_vector(z)
    }
}

/// Homology as a module: the subquotient `Ker ∂_n / Im ∂_{n+1}`, with the
/// inclusion of cycles and the projection onto classes.
pub fn homology_module(x: &Complex, n: i64) -> Result<(Module, FpMatrix, FpMatrix)> {
    let h = x.homology(n);
    let obj = x.object(n);
    let (z, z_inc) = obj.submodule(&h.cycles)?;
    let zc = Coordinatizer::new(&z_inc)?;
    let b_in_z = if h.boundaries.dim() == 0 {
        FpMatrix::zeros(x.p(), z.dim(), 0)
    } else {
        zc.coords(h.boundaries.basis())
    };
    let (q, proj, _) = z.quotient(&b_in_z)?;
    Ok((q, z_inc, proj.mul(zc.left_inverse())))
}

/// A degree-preserving morphism of complexes.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: Complex,
    pub target: Complex,
    lo: i64,
    /// `components[i]` is the map in degree `lo + i`.
    components: Vec<FpMatrix>,
}

impl ChainMap {
    /// Components listed from degree `lo`; missing degrees are zero.
    pub fn new(source: &Complex, target: &Complex, lo: i64, components: Vec<FpMatrix>) -> Result<ChainMap> {
        let f = ChainMap::new_unchecked(source, target, lo, components)?;
        f.validate()?;
        Ok(f)
    }

    pub fn new_unchecked(
        source: &Complex,
        target: &Complex,
        lo: i64,
        components: Vec<FpMatrix>,
    ) -> Result<ChainMap> {
        for (i, c) in components.iter().enumerate() {
            let n = lo + i as i64;
            if c.rows() != target.dim(n) || c.cols() != source.dim(n) {
                return Err(Error::DimensionMismatch(format!(
                    "chain map component in degree {n} has shape {}x{}",
                    c.rows(),
                    c.cols()
                )));
            }
        }
        Ok(ChainMap {
            source: source.clone(),
            target: target.clone(),
            lo,
            components,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.range();
        for n in lo..=hi + 1 {
            let f = self.component(n);
            if !self.source.object(n).is_linear_map(&self.target.object(n), &f) {
                return Err(Error::NotHomomorphism(format!("component in degree {n}")));
            }
            let lhs = self.target.differential(n).mul(&f);
            let rhs = self.component(n - 1).mul(&self.source.differential(n));
            if lhs != rhs {
                return Err(Error::NotHomomorphism(format!(
                    "square at degree {n} does not commute"
                )));
            }
        }
        Ok(())
    }

    /// Degrees where either complex is nonzero.
    pub fn range(&self) -> (i64, i64) {
        (
            self.source.lo().min(self.target.lo()),
            self.source.hi().max(self.target.hi()),
        )
    }

    pub fn component(&self, n: i64) -> FpMatrix {
        let i = n - self.lo;
        if i >= 0 && (i as usize) < self.components.len() {
            self.components[i as usize].clone()
        } else {
            FpMatrix::zeros(self.source.p(), self.target.dim(n), self.source.dim(n))
        }
    }

    pub fn identity(x: &Complex) -> ChainMap {
        let comps = (x.lo()..=x.hi())
            .map(|n| FpMatrix::identity(x.p(), x.dim(n)))
            .collect();
        ChainMap {
            source: x.clone(),
            target: x.clone(),
            lo: x.lo(),
            components: comps,
        }
    }

    pub fn zero(source: &Complex, target: &Complex) -> ChainMap {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            lo: 0,
            components: Vec::new(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        let lo = other.source.lo().min(self.target.lo());
        let hi = other.source.hi().max(self.target.hi());
        let comps = (lo..=hi)
            .map(|n| self.component(n).mul(&other.component(n)))
            .collect();
        ChainMap {
            source: other.source.clone(),
            target: self.target.clone(),
            lo,
            components: comps,
        }
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        let (lo, hi) = self.range();
        let comps = (lo..=hi)
            .map(|n| self.component(n).sub(&other.component(n)))
            .collect();
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            lo,
            components: comps,
        }
    }

    /// `D(f) : D(Y) -> D(X)`, degreewise transposed.
    pub fn dual(&self) -> ChainMap {
        let (lo, hi) = self.range();
        let comps = (lo..=hi).rev().map(|n| self.component(n).transpose()).collect();
        ChainMap {
            source: self.target.dual(),
            target: self.source.dual(),
            lo: -hi,
            components: comps,
        }
    }

    /// Matrix of `H_n(f)` in the bases of the two homologies.
    pub fn induced(&self, n: i64, hs: &Homology, ht: &Homology) -> FpMatrix {
        let image = self.component(n).mul(&hs.reps);
        ht.class_of(&image)
    }

    pub fn is_quasiiso(&self) -> bool {
        cone(self).is_exact()
    }

    /// Whether `self` is null-homotopic, returning `s_n : X_n -> Y_{n+1}`
    /// from degree `lo` upward when it is.
    pub fn null_homotopy(&self) -> Option<(i64, Vec<FpMatrix>)> {
        null_homotopy(self)
    }
}

/// Solves `f_n = ∂_{n+1} s_n + s_{n-1} ∂_n` for all degrees at once.
/// Greedy degreewise solving can pick an `s_{n-1}` that blocks degree `n`,
/// so the system is solved jointly over the whole range.
fn null_homotopy(f: &ChainMap) -> Option<(i64, Vec<FpMatrix>)> {
    let x = &f.source;
    let y = &f.target;
    let p = x.p();
    let (lo, hi) = f.range();
    // Unknowns: s_n for n in lo..=hi, each Y_{n+1} x X_n, row-major.
    let mut offsets = Vec::new();
    let mut total = 0;
    for n in lo..=hi {
        offsets.push(total);
        total += y.dim(n + 1) * x.dim(n);
    }
    let mut eq_rows = 0;
    for n in lo..=hi {
        eq_rows += y.dim(n) * x.dim(n);
    }
    let mut sys = FpMatrix::zeros(p, eq_rows, total);
    let mut rhs = Vec::with_capacity(eq_rows);
    let mut row0 = 0;
    for n in lo..=hi {
        let (yr, xc) = (y.dim(n), x.dim(n));
        let fy = f.component(n);
        for r in 0..yr {
            for c in 0..xc {
                rhs.push(fy.get(r, c));
            }
        }
        // ∂^Y_{n+1} s_n: entry (r, c) = Σ_k dy[r][k] s_n[k][c].
        {
            let dy = y.differential(n + 1);
            let off = offsets[(n - lo) as usize];
            let sc = x.dim(n);
            for r in 0..yr {
                for k in 0..dy.cols() {
                    let v = dy.get(r, k);
                    if v == 0 {
                        continue;
                    }
                    for c in 0..xc {
                        sys.set(row0 + r * xc + c, off + k * sc + c, v);
                    }
                }
            }
        }
        // s_{n-1} ∂^X_n: entry (r, c) = Σ_k s_{n-1}[r][k] dx[k][c].
        if n > lo {
            let dx = x.differential(n);
            let off = offsets[(n - 1 - lo) as usize];
            let sc = x.dim(n - 1);
            for r in 0..yr {
                for k in 0..sc {
                    for c in 0..xc {
                        let v = dx.get(k, c);
                        if v == 0 {
                            continue;
                        }
                        let idx = row0 + r * xc + c;
                        let cur = sys.get(idx, off + r * sc + k);
                        sys.set(idx, off + r * sc + k, cur + v);
                    }
                }
            }
        }
        row0 += yr * xc;
    }
    let (sol, _) = sys.solve(&rhs)?;
    let comps = (lo..=hi)
        .map(|n| {
            let off = offsets[(n - lo) as usize];
            let (r, c) = (y.dim(n + 1), x.dim(n));
            FpMatrix::from_vec(p, r, c, sol[off..off + r * c].to_vec()).expect("shape")
        })
        .collect();
    Some((lo, comps))
}

/// `Cone(f)_n = Y_n ⊕ X_{n-1}` with differential
/// `[[∂^Y_n, f_{n-1}], [0, -∂^X_{n-1}]]`.
pub fn cone(f: &ChainMap) -> Complex {
    cone_with_sign(f, false)
}

/// The cone with the sign of the lower-right block optionally flipped.
/// Flipping breaks `∂∂ = 0`; it exists so that checkers can be tested
/// against a deliberately wrong construction.
pub fn cone_with_sign(f: &ChainMap, flip: bool) -> Complex {
    let x = &f.source;
    let y = &f.target;
    let alg = y.algebra();
    let p = y.p();
    let fp = Fp::new(p);
    let lo = y.lo().min(x.lo() + 1);
    let hi = y.hi().max(x.hi() + 1);
    if hi < lo {
        return Complex::zero(alg);
    }
    let objects: Vec<Module> = (lo..=hi)
        .map(|n| y.object(n).direct_sum(&x.object(n - 1)))
        .collect();
    let lower = if flip { 1 } else { fp.neg(1) };
    let diffs = (lo + 1..=hi)
        .map(|n| {
            let (yn, xn1) = (y.dim(n), x.dim(n - 1));
            let (yn1, xn2) = (y.dim(n - 1), x.dim(n - 2));
            let mut d = FpMatrix::zeros(p, yn1 + xn2, yn + xn1);
            d.set_block(0, 0, &y.differential(n));
            d.set_block(0, yn, &f.component(n - 1));
            d.set_block(yn1, yn, &x.differential(n - 1).scale(lower));
            d
        })
        .collect();
    Complex::new_unchecked(alg, lo, objects, diffs).expect("cone shapes")
}

/// One summand `Hom(X_p, Y_{p+n})` of a Hom complex degree.
#[derive(Clone, Debug)]
struct Summand {
    p: i64,
    offset: usize,
    space: Arc<HomSpace>,
}

/// The Hom complex `Hom(X, Y)` over a window of degrees, with the data to
/// read its elements back as families of homomorphisms.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub complex: Complex,
    pub x: Complex,
    pub y: Complex,
    layout: Vec<Vec<Summand>>,
}

impl HomComplex {
    /// Degrees `lo..=hi` of `Hom(X, Y)`; homology is correct strictly
    /// inside the window. With `with_action` the objects carry the
    /// A-action of Hom, otherwise they are vector spaces.
    pub fn new(x: &Complex, y: &Complex, lo: i64, hi: i64, with_action: bool) -> Result<HomComplex> {
        if !Arc::ptr_eq(x.algebra(), y.algebra()) && **x.algebra() != **y.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        let alg = x.algebra().clone();
        let p = alg.p();
        let field = Algebra::ground_field(p);
        let mut cache: HashMap<(i64, i64), Arc<HomSpace>> = HashMap::new();
        let mut layout = Vec::new();
        let mut objects = Vec::new();
        for n in lo..=hi {
            let mut row = Vec::new();
            let mut offset = 0;
            let mut parts = Vec::new();
            for q in x.lo()..=x.hi() {
                let (a, b) = (x.object(q), y.object(q + n));
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let hs = cache
                    .entry((q, q + n))
                    .or_insert_with(|| Arc::new(HomSpace::new(&a, &b).expect("same algebra")))
                    .clone();
                if hs.dim() == 0 {
                    continue;
                }
                if with_action {
                    parts.push(hs.module());
                }
                row.push(Summand {
                    p: q,
                    offset,
                    space: hs.clone(),
                });
                offset += hs.dim();
            }
            let obj = if with_action {
                Module::direct_sum_all(&alg, &parts)
            } else {
                Module::vector_space(&field, offset)
            };
            objects.push(obj);
            layout.push(row);
        }
        let fp = Fp::new(p);
        let mut diffs = Vec::new();
        for n in lo + 1..=hi {
            let src = &layout[(n - lo) as usize];
            let tgt = &layout[(n - 1 - lo) as usize];
            let rows = objects[(n - 1 - lo) as usize].dim();
            let cols = objects[(n - lo) as usize].dim();
            let mut d = FpMatrix::zeros(p, rows, cols);
            let sign = fp.neg(fp.sign(n));
            for s in src {
                // ∂^Y ∘ α_q lands in Hom(X_q, Y_{q+n-1}).
                if let Some(t) = tgt.iter().find(|t| t.p == s.p) {
                    let g = y.differential(s.p + n);
                    d.set_block(t.offset, s.offset, &s.space.postcompose(&g, &t.space));
                }
                // -(-1)^n α_q ∘ ∂^X_{q+1} lands in Hom(X_{q+1}, Y_{q+n}).
                if let Some(t) = tgt.iter().find(|t| t.p == s.p + 1) {
                    let f = x.differential(s.p + 1);
                    let block = s.space.precompose(&f, &t.space).scale(sign);
                    add_block(&mut d, t.offset, s.offset, &block);
                }
            }
            diffs.push(d);
        }
        let base = if with_action { alg } else { field };
        let complex = Complex::new_unchecked(&base, lo, objects, diffs)?;
        Ok(HomComplex {
            complex,
            x: x.clone(),
            y: y.clone(),
            layout,
        })
    }

    /// The full Hom complex, over all degrees where it can be nonzero.
    pub fn full(x: &Complex, y: &Complex) -> Result<HomComplex> {
        let lo = y.lo() - x.hi();
        let hi = y.hi() - x.lo();
        HomComplex::new(x, y, lo, hi, false)
    }

    pub fn lo(&self) -> i64 {
        self.complex.lo()
    }
    pub fn hi(&self) -> i64 {
        self.complex.hi()
    }

    /// Splits an element of degree `n` into its components `α_q`.
    pub fn components(&self, n: i64, v: &[u32]) -> Vec<(i64, FpMatrix)> {
        let i = (n - self.lo()) as usize;
        self.layout[i]
            .iter()
            .map(|s| {
                let c = &v[s.offset..s.offset + s.space.dim()];
                (s.p, s.space.element(c))
            })
            .collect()
    }

    /// Coordinates of a family `q ↦ α_q : X_q -> Y_{q+n}`; missing degrees
    /// are zero.
    pub fn element(&self, n: i64, maps: &[(i64, FpMatrix)]) -> Vec<u32> {
        let i = (n - self.lo()) as usize;
        let mut v = vec![0; self.complex.dim(n)];
        for s in &self.layout[i] {
            if let Some((_, m)) = maps.iter().find(|(q, _)| *q == s.p) {
                let c = s.space.coords_of_map(m);
                v[s.offset..s.offset + c.len()].copy_from_slice(&c);
            }
        }
        v
    }

    /// `Hom(f, Y) : Hom(X', Y) -> Hom(X, Y)` for `f : X -> X'`, where
    /// `self = Hom(X', Y)` and `other = Hom(X, Y)` share the window.
    pub fn precompose(&self, f: &ChainMap, other: &HomComplex) -> ChainMap {
        let p = self.complex.p();
        let comps = (self.lo()..=self.hi())
            .map(|n| {
                let i = (n - self.lo()) as usize;
                let mut m = FpMatrix::zeros(p, other.complex.dim(n), self.complex.dim(n));
                for s in &self.layout[i] {
                    if let Some(t) = other.layout[i].iter().find(|t| t.p == s.p) {
                        let block = s.space.precompose(&f.component(s.p), &t.space);
                        m.set_block(t.offset, s.offset, &block);
                    }
                }
                m
            })
            .collect();
        ChainMap::new_unchecked(&self.complex, &other.complex, self.lo(), comps)
            .expect("shapes")
    }

    /// `Hom(X, g) : Hom(X, Y) -> Hom(X, Y')` for `g : Y -> Y'`.
    pub fn postcompose(&self, g: &ChainMap, other: &HomComplex) -> ChainMap {
        let p = self.complex.p();
        let comps = (self.lo()..=self.hi())
            .map(|n| {
                let i = (n - self.lo()) as usize;
                let mut m = FpMatrix::zeros(p, other.complex.dim(n), self.complex.dim(n));
                for s in &self.layout[i] {
                    if let Some(t) = other.layout[i].iter().find(|t| t.p == s.p) {
                        let block = s.space.postcompose(&g.component(s.p + n), &t.space);
                        m.set_block(t.offset, s.offset, &block);
                    }
                }
                m
            })
            .collect();
        ChainMap::new_unchecked(&self.complex, &other.complex, self.lo(), comps)
            .expect("shapes")
    }
}

fn add_block(d: &mut FpMatrix, r0: usize, c0: usize, m: &FpMatrix) {
    let fp = d.fp();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.get(r, c);
            if v != 0 {
                let cur = d.get(r0 + r, c0 + c);
                d.set(r0 + r, c0 + c, fp.add(cur, v));
            }
        }
    }
}

/// Which side of Hom the complex sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `Hom(P, S)` for each probe `P`.
    Covariant,
    /// `Hom(S, P)` for each probe `P`.
    Contravariant,
}

/// Whether `Hom(P, S)` (or `Hom(S, P)`) is exact for every probe. Returns
/// the index of the first failing probe and degree as a witness.
pub fn hom_exactness(s: &Complex, probes: &[Module], side: Side) -> Result<Option<(usize, i64)>> {
    if probes.is_empty() {
        return Err(Error::EmptyProbes);
    }
    for (i, probe) in probes.iter().enumerate() {
        let pc = Complex::single(probe, 0);
        let hc = match side {
            Side::Covariant => HomComplex::new(&pc, s, s.lo() - 1, s.hi() + 1, false)?,
            Side::Contravariant => HomComplex::new(s, &pc, -s.hi() - 1, -s.lo() + 1, false)?,
        };
        for n in hc.lo()..=hc.hi() {
            if !hc.complex.is_exact_at(n) {
                return Ok(Some((i, n)));
            }
        }
    }
    Ok(None)
}

pub fn is_hom_exact(s: &Complex, probes: &[Module], side: Side) -> Result<bool> {
    Ok(hom_exactness(s, probes, side)?.is_none())
}

#[cfg(test)]
mod tests;

//! Finite-dimensional modules and module homomorphisms.

use super::algebra::{same_algebra, Algebra};
use crate::error::{Error, Result};
use crate::exactlin::{FpMatrix, Subspace};
use std::borrow::Cow;
use std::fmt;
use std::sync::{Arc, OnceLock};

/// How the action matrices are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    /// One explicit matrix per algebra basis element.
    Dense(Vec<FpMatrix>),
    /// `A^r` in the basis `b_j e_i`, indexed `i * dim A + j`.
    Free(usize),
    /// `D(A)^r` in the dual basis, indexed like `Free`.
    Cofree(usize),
}

/// Generators of a module and the data needed to present it as a quotient
/// of a free module.
#[derive(Clone, Debug)]
pub struct Top {
    /// Columns are the chosen generators (lifts of a basis of M / rad M).
    pub gens: FpMatrix,
    /// The surjection `A^r -> M` sending `e_i` to generator `i`.
    pub cover: FpMatrix,
}

struct ModuleData {
    alg: Arc<Algebra>,
    dim: usize,
    repr: Repr,
    gen_actions: OnceLock<Vec<FpMatrix>>,
    top: OnceLock<Top>,
    section: OnceLock<FpMatrix>,
    relations: OnceLock<FpMatrix>,
}

/// A finite-dimensional module over a commutative local algebra. Cheap to
/// clone.
#[derive(Clone)]
pub struct Module(Arc<ModuleData>);

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.repr {
            Repr::Free(r) => write!(f, "Module(A^{r})"),
            Repr::Cofree(r) => write!(f, "Module(D(A)^{r})"),
            Repr::Dense(_) => write!(f, "Module(dim {})", self.0.dim),
        }
    }
}

impl PartialEq for Module {
    /// Equality of action matrices in the stored basis, not isomorphism.
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        same_algebra(&self.0.alg, &other.0.alg)
            && self.dim() == other.dim()
            && (0..self.0.alg.dim()).all(|i| self.action(i) == other.action(i))
    }
}

impl Module {
    fn from_repr(alg: Arc<Algebra>, dim: usize, repr: Repr) -> Module {
        Module(Arc::new(ModuleData {
            alg,
            dim,
            repr,
            gen_actions: OnceLock::new(),
            top: OnceLock::new(),
            section: OnceLock::new(),
            relations: OnceLock::new(),
        }))
    }

    /// Validates the module axioms against the structure constants.
    pub fn new(alg: Arc<Algebra>, action: Vec<FpMatrix>) -> Result<Module> {
        let d = alg.dim();
        if action.len() != d {
            return Err(Error::ModuleAxiom(format!(
                "{} action matrices for an algebra of dimension {d}",
                action.len()
            )));
        }
        let n = action[0].rows();
        for (i, m) in action.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::ModuleAxiom(format!(
                    "action of basis element {i} is not {n}x{n}"
                )));
            }
            if m.p() != alg.p() {
                return Err(Error::ModuleAxiom("modulus differs from the algebra".into()));
            }
        }
        let m = Module::from_repr(alg.clone(), n, Repr::Dense(action));
        if !m.action_of(alg.unit()).is_identity() {
            return Err(Error::ModuleAxiom("the unit does not act as the identity".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = m.action(i).mul(&m.action(j));
                let rhs = m.action_of(alg.basis_product(i, j));
                if lhs != rhs {
                    return Err(Error::ModuleAxiom(format!(
                        "action(b{i})·action(b{j}) differs from action(b{i}·b{j})"
                    )));
                }
            }
        }
        Ok(m)
    }

    /// Skips validation; for matrices produced by trusted constructions.
    pub(crate) fn new_unchecked(alg: Arc<Algebra>, action: Vec<FpMatrix>) -> Module {
        let n = action.first().map_or(0, |m| m.rows());
        Module::from_repr(alg, n, Repr::Dense(action))
    }

    pub fn zero(alg: &Arc<Algebra>) -> Module {
        Module::free(alg, 0)
    }
    pub fn free(alg: &Arc<Algebra>, rank: usize) -> Module {
        Module::from_repr(alg.clone(), rank * alg.dim(), Repr::Free(rank))
    }
    pub fn cofree(alg: &Arc<Algebra>, rank: usize) -> Module {
        Module::from_repr(alg.clone(), rank * alg.dim(), Repr::Cofree(rank))
    }
    pub fn regular(alg: &Arc<Algebra>) -> Module {
        Module::free(alg, 1)
    }
    /// The one-dimensional module on which the radical acts as zero.
    pub fn residue_field(alg: &Arc<Algebra>) -> Module {
        let p = alg.p();
        let action = (0..alg.dim())
            .map(|i| FpMatrix::from_vec(p, 1, 1, vec![alg.augmentation()[i]]).unwrap())
            .collect();
        Module::new_unchecked(alg.clone(), action)
    }
    /// An `n`-dimensional vector space over the ground field algebra.
    pub fn vector_space(field: &Arc<Algebra>, n: usize) -> Module {
        debug_assert!(field.is_field());
        Module::free(field, n)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.0.alg
    }
    pub fn p(&self) -> u32 {
        self.0.alg.p()
    }
    pub fn dim(&self) -> usize {
        self.0.dim
    }
    pub fn is_zero(&self) -> bool {
        self.0.dim == 0
    }
    /// `Some(r)` when stored as `A^r`.
    pub fn free_rank(&self) -> Option<usize> {
        match self.0.repr {
            Repr::Free(r) => Some(r),
            _ if self.0.dim == 0 => Some(0),
            _ => None,
        }
    }
    /// `Some(r)` when stored as `D(A)^r`.
    pub fn cofree_rank(&self) -> Option<usize> {
        match self.0.repr {
            Repr::Cofree(r) => Some(r),
            _ if self.0.dim == 0 => Some(0),
            _ => None,
        }
    }

    pub fn check_same_algebra(&self, other: &Module) -> Result<()> {
        if same_algebra(self.algebra(), other.algebra()) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Action matrix of basis element `i`.
    pub fn action(&self, i: usize) -> Cow<'_, FpMatrix> {
        match &self.0.repr {
            Repr::Dense(a) => Cow::Borrowed(&a[i]),
            Repr::Free(r) => Cow::Owned(self.0.alg.left(i).repeat_diag(*r)),
            Repr::Cofree(r) => Cow::Owned(self.0.alg.left(i).transpose().repeat_diag(*r)),
        }
    }

    /// Action matrix of an algebra element.
    pub fn action_of(&self, a: &[u32]) -> FpMatrix {
        match &self.0.repr {
            Repr::Dense(mats) => {
                let mut m = FpMatrix::zeros(self.p(), self.dim(), self.dim());
                for (i, &c) in a.iter().enumerate() {
                    if c != 0 {
                        m.add_scaled(c, &mats[i]);
                    }
                }
                m
            }
            Repr::Free(r) => self.0.alg.left_matrix(a).repeat_diag(*r),
            Repr::Cofree(r) => self.0.alg.left_matrix(a).transpose().repeat_diag(*r),
        }
    }

    /// `action(a) * x` without materializing block-diagonal actions.
    pub fn act(&self, a: &[u32], x: &FpMatrix) -> FpMatrix {
        match &self.0.repr {
            Repr::Dense(_) => self.action_of(a).mul(x),
            Repr::Free(r) => blockwise_left(&self.0.alg.left_matrix(a), *r, x),
            Repr::Cofree(r) => blockwise_left(&self.0.alg.left_matrix(a).transpose(), *r, x),
        }
    }

    /// `x * action(a)`.
    pub fn act_right(&self, x: &FpMatrix, a: &[u32]) -> FpMatrix {
        match &self.0.repr {
            Repr::Dense(_) => x.mul(&self.action_of(a)),
            Repr::Free(r) => blockwise_right(x, &self.0.alg.left_matrix(a), *r),
            Repr::Cofree(r) => blockwise_right(x, &self.0.alg.left_matrix(a).transpose(), *r),
        }
    }

    /// Action matrices of the algebra generators of the radical.
    pub fn gen_actions(&self) -> &[FpMatrix] {
        self.0.gen_actions.get_or_init(|| {
            self.0
                .alg
                .generators()
                .iter()
                .map(|g| self.action_of(g))
                .collect()
        })
    }

    /// Whether `f` (from `self` to `target`) commutes with the actions.
    pub fn is_linear_map(&self, target: &Module, f: &FpMatrix) -> bool {
        if f.rows() != target.dim() || f.cols() != self.dim() {
            return false;
        }
        self.0
            .alg
            .generators()
            .iter()
            .all(|g| target.act(g, f) == self.act_right(f, g))
    }

    pub fn direct_sum(&self, other: &Module) -> Module {
        Module::direct_sum_all(self.algebra(), &[self.clone(), other.clone()])
    }

    pub fn direct_sum_all(alg: &Arc<Algebra>, parts: &[Module]) -> Module {
        let parts: Vec<&Module> = parts.iter().filter(|m| !m.is_zero()).collect();
        if parts.is_empty() {
            return Module::zero(alg);
        }
        if parts.len() == 1 {
            return parts[0].clone();
        }
        if let Some(r) = parts.iter().map(|m| m.free_rank()).sum::<Option<usize>>() {
            return Module::free(alg, r);
        }
        if let Some(r) = parts.iter().map(|m| m.cofree_rank()).sum::<Option<usize>>() {
            return Module::cofree(alg, r);
        }
        let p = alg.p();
        let action = (0..alg.dim())
            .map(|i| {
                let blocks: Vec<FpMatrix> =
                    parts.iter().map(|m| m.action(i).into_owned()).collect();
                FpMatrix::block_diag(p, &blocks)
            })
            .collect();
        Module::new_unchecked(alg.clone(), action)
    }

    pub fn power(&self, r: usize) -> Module {
        Module::direct_sum_all(self.algebra(), &vec![self.clone(); r])
    }

    /// `D(M) = Hom_k(M, k)` with transposed action.
    pub fn dual(&self) -> Module {
        let alg = self.algebra();
        match self.0.repr {
            Repr::Free(r) => Module::cofree(alg, r),
            Repr::Cofree(r) => Module::free(alg, r),
            Repr::Dense(ref a) => {
                Module::new_unchecked(alg.clone(), a.iter().map(|m| m.transpose()).collect())
            }
        }
    }

    /// The submodule spanned by the columns of `basis`, which must be
    /// independent and stable under the action. Returns it together with
    /// its inclusion matrix.
    pub fn submodule(&self, basis: &FpMatrix) -> Result<(Module, FpMatrix)> {
        let alg = self.algebra();
        if basis.cols() == 0 {
            return Ok((Module::zero(alg), FpMatrix::zeros(self.p(), self.dim(), 0)));
        }
        let coord = crate::exactlin::Coordinatizer::new(basis)?;
        let mut action = Vec::with_capacity(alg.dim());
        for i in 0..alg.dim() {
            let image = self.act(&alg.basis_vector(i), basis);
            let c = coord
                .coords_checked(&image)
                .ok_or_else(|| Error::ModuleAxiom("subspace is not a submodule".into()))?;
            action.push(c);
        }
        Ok((Module::new_unchecked(alg.clone(), action), basis.clone()))
    }

    /// `M / S` for a submodule `S` given by spanning columns. Returns the
    /// quotient, the projection `M -> M/S` and a linear section.
    pub fn quotient(&self, span: &FpMatrix) -> Result<(Module, FpMatrix, FpMatrix)> {
        let alg = self.algebra();
        let sub = Subspace::span(span);
        for i in 0..alg.dim() {
            if !sub.contains_columns(&self.act(&alg.basis_vector(i), sub.basis())) {
                return Err(Error::ModuleAxiom("subspace is not a submodule".into()));
            }
        }
        let proj = sub.quotient_projection();
        let comp = sub.complement_coordinates();
        let mut section = FpMatrix::zeros(self.p(), self.dim(), comp.len());
        for (t, &j) in comp.iter().enumerate() {
            section.set(j, t, 1);
        }
        if sub.dim() == 0 {
            return Ok((self.clone(), proj, section));
        }
        let action = (0..alg.dim())
            .map(|i| proj.mul(&self.act(&alg.basis_vector(i), &section)))
            .collect();
        Ok((Module::new_unchecked(alg.clone(), action), proj, section))
    }

    /// `rad M = rad(A) · M` as a subspace.
    pub fn radical_space(&self) -> Subspace {
        let p = self.p();
        let n = self.dim();
        let gens = self.gen_actions();
        if gens.is_empty() || n == 0 {
            return Subspace::zero(p, n);
        }
        Subspace::span(&FpMatrix::hstack_all(p, n, gens))
    }
    /// `soc M = {m : rad(A) m = 0}` as a subspace.
    pub fn socle_space(&self) -> Subspace {
        let p = self.p();
        let n = self.dim();
        let gens = self.gen_actions();
        if gens.is_empty() {
            return Subspace::full(p, n);
        }
        Subspace::span(&FpMatrix::vstack_all(p, n, gens).kernel_basis())
    }
    pub fn top_dim(&self) -> usize {
        if let Some(r) = self.free_rank() {
            return r;
        }
        self.dim() - self.radical_space().dim()
    }
    pub fn socle_dim(&self) -> usize {
        if let Some(r) = self.cofree_rank() {
            return r;
        }
        self.socle_space().dim()
    }

    /// Minimal generators and the projective cover they define.
    pub fn top(&self) -> &Top {
        self.0.top.get_or_init(|| {
            let p = self.p();
            let alg = self.algebra();
            let d = alg.dim();
            if let Some(r) = self.free_rank() {
                let mut gens = FpMatrix::zeros(p, self.dim(), r);
                for i in 0..r {
                    for (j, &u) in alg.unit().iter().enumerate() {
                        gens.set(i * d + j, i, u);
                    }
                }
                return Top {
                    gens,
                    cover: FpMatrix::identity(p, self.dim()),
                };
            }
            let comp = self.radical_space().complement_coordinates();
            let mut gens = FpMatrix::zeros(p, self.dim(), comp.len());
            for (t, &j) in comp.iter().enumerate() {
                gens.set(j, t, 1);
            }
            let cover = cover_matrix(self, &gens);
            Top { gens, cover }
        })
    }

    /// Number of minimal generators.
    pub fn num_generators(&self) -> usize {
        self.top().gens.cols()
    }

    /// A linear section of the projective cover.
    pub fn cover_section(&self) -> &FpMatrix {
        self.0.section.get_or_init(|| {
            if self.free_rank().is_some() {
                return FpMatrix::identity(self.p(), self.dim());
            }
            let cover = &self.top().cover;
            cover
                .solve_matrix(&FpMatrix::identity(self.p(), self.dim()))
                .expect("projective cover is surjective")
        })
    }

    /// Columns in `A^r` generating the kernel of the cover as a module.
    pub fn relations(&self) -> &FpMatrix {
        self.0.relations.get_or_init(|| {
            let p = self.p();
            let r = self.num_generators();
            let alg = self.algebra();
            let ambient = r * alg.dim();
            if self.free_rank().is_some() {
                return FpMatrix::zeros(p, ambient, 0);
            }
            let kernel = self.top().cover.kernel_basis();
            minimal_generators_in_free(alg, r, &kernel)
        })
    }
}

/// Minimal generators of the submodule of `A^r` spanned by the columns of
/// `span` (assumed stable).
pub(crate) fn minimal_generators_in_free(
    alg: &Arc<Algebra>,
    rank: usize,
    span: &FpMatrix,
) -> FpMatrix {
    let p = alg.p();
    let ambient = rank * alg.dim();
    if span.cols() == 0 {
        return FpMatrix::zeros(p, ambient, 0);
    }
    let free = Module::free(alg, rank);
    let rad_parts: Vec<FpMatrix> = alg.generators().iter().map(|g| free.act(g, span)).collect();
    let mut current = Subspace::span(&FpMatrix::hstack_all(p, ambient, &rad_parts));
    let mut chosen = Vec::new();
    let basis = Subspace::span(span);
    for c in 0..basis.dim() {
        let v = basis.basis().column(c);
        if !current.contains_vector(&v) {
            current = current
                .sum(&Subspace::span(&FpMatrix::column_vector(p, &v)))
                .expect("same ambient");
            chosen.push(v);
        }
    }
    FpMatrix::from_columns(p, ambient, &chosen)
}

/// `A^r -> M` sending `e_i` to column `i` of `gens`.
pub(crate) fn cover_matrix(m: &Module, gens: &FpMatrix) -> FpMatrix {
    let alg = m.algebra();
    let d = alg.dim();
    let r = gens.cols();
    let mut cover = FpMatrix::zeros(m.p(), m.dim(), r * d);
    for j in 0..d {
        let img = m.act(&alg.basis_vector(j), gens);
        for i in 0..r {
            for row in 0..m.dim() {
                cover.set(row, i * d + j, img.get(row, i));
            }
        }
    }
    cover
}

fn blockwise_left(block: &FpMatrix, copies: usize, x: &FpMatrix) -> FpMatrix {
    let d = block.rows();
    let mut out = FpMatrix::zeros(x.p(), x.rows(), x.cols());
    for i in 0..copies {
        let part = block.mul(&x.block(i * d, 0, d, x.cols()));
        out.set_block(i * d, 0, &part);
    }
    out
}

fn blockwise_right(x: &FpMatrix, block: &FpMatrix, copies: usize) -> FpMatrix {
    let d = block.rows();
    let mut out = FpMatrix::zeros(x.p(), x.rows(), x.cols());
    for i in 0..copies {
        let part = x.block(0, i * d, x.rows(), d).mul(block);
        out.set_block(0, i * d, &part);
    }
    out
}

/// An action-commuting linear map; `matrix` is `target.dim × source.dim`.
#[derive(Clone, Debug)]
pub struct ModMap {
    pub source: Module,
    pub target: Module,
    pub matrix: FpMatrix,
}

impl PartialEq for ModMap {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.source == other.source && self.target == other.target
    }
}

impl ModMap {
    pub fn new(source: Module, target: Module, matrix: FpMatrix) -> Result<ModMap> {
        source.check_same_algebra(&target)?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for a map from dim {} to dim {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        if !source.is_linear_map(&target, &matrix) {
            return Err(Error::NotHomomorphism(
                "matrix does not commute with the actions".into(),
            ));
        }
        Ok(ModMap {
            source,
            target,
            matrix,
        })
    }
    pub(crate) fn new_unchecked(source: Module, target: Module, matrix: FpMatrix) -> ModMap {
        debug_assert_eq!(matrix.rows(), target.dim());
        debug_assert_eq!(matrix.cols(), source.dim());
        ModMap {
            source,
            target,
            matrix,
        }
    }
    pub fn identity(m: &Module) -> ModMap {
        ModMap::new_unchecked(m.clone(), m.clone(), FpMatrix::identity(m.p(), m.dim()))
    }
    pub fn zero(source: &Module, target: &Module) -> ModMap {
        ModMap::new_unchecked(
            source.clone(),
            target.clone(),
            FpMatrix::zeros(source.p(), target.dim(), source.dim()),
        )
    }
    /// `self ∘ other`.
    pub fn compose(&self, other: &ModMap) -> ModMap {
        ModMap::new_unchecked(
            other.source.clone(),
            self.target.clone(),
            self.matrix.mul(&other.matrix),
        )
    }
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }
    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }
    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }
    /// `D(f) : D(N) -> D(M)`.
    pub fn dual(&self) -> ModMap {
        ModMap::new_unchecked(self.target.dual(), self.source.dual(), self.matrix.transpose())
    }
}

/// Kernel with its inclusion.
pub fn kernel(f: &ModMap) -> (Module, ModMap) {
    let k = f.matrix.kernel_basis();
    let (m, inc) = f.source.submodule(&k).expect("kernels are submodules");
    let inc = ModMap::new_unchecked(m.clone(), f.source.clone(), inc);
    (m, inc)
}

/// Image with the factorization `source ->> image >-> target`.
pub fn image(f: &ModMap) -> (Module, ModMap, ModMap) {
    let basis = f.matrix.column_space();
    let (m, inc) = f.target.submodule(&basis).expect("images are submodules");
    let coord = crate::exactlin::Coordinatizer::new(&inc).expect("independent basis");
    let onto = coord.coords(&f.matrix);
    (
        m.clone(),
        ModMap::new_unchecked(f.source.clone(), m.clone(), onto),
        ModMap::new_unchecked(m, f.target.clone(), inc),
    )
}

/// Cokernel with its projection and a linear section of the projection.
pub fn cokernel(f: &ModMap) -> (Module, ModMap, FpMatrix) {
    let (q, proj, section) = f.target.quotient(&f.matrix).expect("images are submodules");
    (
        q.clone(),
        ModMap::new_unchecked(f.target.clone(), q, proj),
        section,
    )
}

/// Direct sum with the two inclusions and the two projections.
pub fn direct_sum(m: &Module, n: &Module) -> (Module, [ModMap; 2], [ModMap; 2]) {
    let s = m.direct_sum(n);
    let p = m.p();
    let (a, b) = (m.dim(), n.dim());
    let i1 = FpMatrix::identity(p, a).vstack(&FpMatrix::zeros(p, b, a));
    let i2 = FpMatrix::zeros(p, a, b).vstack(&FpMatrix::identity(p, b));
    let inc = [
        ModMap::new_unchecked(m.clone(), s.clone(), i1.clone()),
        ModMap::new_unchecked(n.clone(), s.clone(), i2.clone()),
    ];
    let proj = [
        ModMap::new_unchecked(s.clone(), m.clone(), i1.transpose()),
        ModMap::new_unchecked(s.clone(), n.clone(), i2.transpose()),
    ];
    (s, inc, proj)
}

/// The radical submodule with its inclusion.
pub fn radical_submodule(m: &Module) -> (Module, ModMap) {
    let rad = m.radical_space();
    let (r, inc) = m.submodule(rad.basis()).expect("rad M is a submodule");
    let inc = ModMap::new_unchecked(r.clone(), m.clone(), inc);
    (r, inc)
}

/// The projective cover `A^r ->> M`, `r = dim M / rad M`.
pub fn projective_cover(m: &Module) -> ModMap {
    let top = m.top();
    let free = Module::free(m.algebra(), top.gens.cols());
    ModMap::new_unchecked(free, m.clone(), top.cover.clone())
}

/// The injective envelope `M >-> D(A)^s`, dual to the cover of `D(M)`.
pub fn injective_envelope(m: &Module) -> ModMap {
    let cover = projective_cover(&m.dual());
    ModMap::new_unchecked(m.clone(), cover.source.dual(), cover.matrix.transpose())
}

//! Dense linear algebra over the prime field F_p.
//!
//! Every basis produced here is canonical: elimination always picks the
//! leftmost available pivot column and, within it, the lowest row index.

use crate::error::{Error, Result};
use std::fmt;

/// Largest admissible modulus; keeps `a * b + c` inside `u64` comfortably
/// and every residue inside `u32`.
pub const MAX_PRIME: u32 = 65_521;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p) || p > MAX_PRIME {
        return Err(Error::Malformed(format!(
            "modulus {p} is not a prime in [2, {MAX_PRIME}]"
        )));
    }
    Ok(())
}

/// Residue arithmetic helpers for a fixed prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Self {
        Fp { p }
    }
    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }
    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }
    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
    /// Inverse of a nonzero residue.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero mod {}", self.p);
        self.pow(a, self.p as u64 - 2)
    }
    /// Residue of a signed integer.
    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }
    /// `(-1)^n` as a residue.
    pub fn sign(self, n: i64) -> u32 {
        if n.rem_euclid(2) == 0 {
            1 % self.p
        } else {
            self.p - 1
        }
    }
}

/// A dense matrix over F_p stored row-major with residues in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix({}x{} mod {})", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Output of [`FpMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from residues, reducing each entry mod `p`.
    pub fn from_vec(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let data = data.into_iter().map(|x| x % p).collect();
        Ok(FpMatrix {
            p,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from signed integer rows. Panics on ragged input.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let fp = Fp::new(p);
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| fp.from_i64(x)));
        }
        FpMatrix {
            p,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// A single column.
    pub fn column_vector(p: u32, v: &[u32]) -> Self {
        FpMatrix {
            p,
            rows: v.len(),
            cols: 1,
            data: v.iter().map(|x| x % p).collect(),
        }
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (c, v) in columns.iter().enumerate() {
            assert_eq!(v.len(), rows, "column length");
            for (r, &x) in v.iter().enumerate() {
                m.data[r * m.cols + c] = x % p;
            }
        }
        m
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }
    #[inline]
    pub fn fp(&self) -> Fp {
        Fp::new(self.p)
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }
    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                self.row(r)
                    .iter()
                    .enumerate()
                    .all(|(c, &x)| x == u32::from(r == c) % self.p)
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(
            self.cols, other.rows,
            "product of {}x{} and {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        debug_assert_eq!(self.p, other.p);
        let p = self.p as u64;
        let n = other.cols;
        let mut out = FpMatrix::zeros(self.p, self.rows, n);
        if n == 0 {
            return out;
        }
        let mut acc = vec![0u64; n];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut touched = false;
            for (k, &a) in self.row(r).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                touched = true;
                let a = a as u64;
                for (s, &b) in acc.iter_mut().zip(other.row(k)) {
                    *s += a * b as u64;
                }
            }
            if touched {
                for (o, s) in out.row_mut(r).iter_mut().zip(&acc) {
                    *o = (s % p) as u32;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector length");
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                let s: u64 = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        self.combine(other, |fp, a, b| fp.add(a, b))
    }
    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        self.combine(other, |fp, a, b| fp.sub(a, b))
    }
    fn combine(&self, other: &FpMatrix, f: impl Fn(Fp, u32, u32) -> u32) -> FpMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        let fp = self.fp();
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(fp, a, b))
                .collect(),
        }
    }
    pub fn scale(&self, c: u32) -> FpMatrix {
        let fp = self.fp();
        let c = c % self.p;
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| fp.mul(a, c)).collect(),
        }
    }
    pub fn neg(&self) -> FpMatrix {
        let fp = self.fp();
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| fp.neg(a)).collect(),
        }
    }
    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: u32, other: &FpMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let fp = self.fp();
        if c % self.p == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            if b != 0 {
                *a = fp.add(*a, fp.mul(c, b));
            }
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut out = FpMatrix::zeros(self.p, self.rows, cols);
        for r in 0..self.rows {
            out.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            out.row_mut(r)[self.cols..].copy_from_slice(other.row(r));
        }
        out
    }
    /// `[self ; other]`.
    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }
    pub fn hstack_all(p: u32, rows: usize, parts: &[FpMatrix]) -> FpMatrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = FpMatrix::zeros(p, rows, cols);
        let mut off = 0;
        for m in parts {
            out.set_block(0, off, m);
            off += m.cols;
        }
        out
    }
    pub fn vstack_all(p: u32, cols: usize, parts: &[FpMatrix]) -> FpMatrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = FpMatrix::zeros(p, rows, cols);
        let mut off = 0;
        for m in parts {
            out.set_block(off, 0, m);
            off += m.rows;
        }
        out
    }
    pub fn block_diag(p: u32, parts: &[FpMatrix]) -> FpMatrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = FpMatrix::zeros(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.set_block(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }
    /// `copies` diagonal copies of `self`.
    pub fn repeat_diag(&self, copies: usize) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, self.rows * copies, self.cols * copies);
        for i in 0..copies {
            out.set_block(i * self.rows, i * self.cols, self);
        }
        out
    }
    pub fn set_block(&mut self, r0: usize, c0: usize, m: &FpMatrix) {
        assert!(r0 + m.rows <= self.rows && c0 + m.cols <= self.cols, "block out of range");
        for r in 0..m.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + m.cols].copy_from_slice(m.row(r));
        }
    }
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FpMatrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        let mut out = FpMatrix::zeros(self.p, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.row_mut(r).copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }
    pub fn select_rows(&self, idx: &[usize]) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            out.row_mut(i).copy_from_slice(self.row(r));
        }
        out
    }
    pub fn select_cols(&self, idx: &[usize]) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, self.rows, idx.len());
        for r in 0..self.rows {
            for (i, &c) in idx.iter().enumerate() {
                out.data[r * idx.len() + i] = self.data[r * self.cols + c];
            }
        }
        out
    }

    /// Reduced row echelon form with leftmost pivots, taking the lowest
    /// available row index for each pivot.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let (rank, pivots) = m.rref_in_place(self.cols);
        Rref {
            matrix: m,
            rank,
            pivots,
        }
    }

    /// Row-reduces in place, choosing pivots only among the first
    /// `pivot_cols` columns. Returns the rank and the pivot columns.
    pub fn rref_in_place(&mut self, pivot_cols: usize) -> (usize, Vec<usize>) {
        let fp = self.fp();
        let p = self.p as u64;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        let mut nz: Vec<usize> = Vec::with_capacity(cols);
        let mut pivot_row: Vec<u32> = vec![0; cols];
        for c in 0..pivot_cols.min(cols) {
            if r == self.rows {
                break;
            }
            let Some(i) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if i != r {
                for k in c..cols {
                    self.data.swap(i * cols + k, r * cols + k);
                }
            }
            let inv = fp.inv(self.data[r * cols + c]) as u64;
            nz.clear();
            for k in c..cols {
                let v = &mut self.data[r * cols + k];
                if *v != 0 {
                    *v = ((*v as u64 * inv) % p) as u32;
                    nz.push(k);
                }
                pivot_row[k] = *v;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.data[i * cols + c];
                if f == 0 {
                    continue;
                }
                let g = (p - f as u64) % p;
                let base = i * cols;
                for &k in &nz {
                    let x = &mut self.data[base + k];
                    *x = ((*x as u64 + g * pivot_row[k] as u64) % p) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (r, pivots)
    }

    pub fn rank(&self) -> usize {
        // Eliminating along the shorter side is cheaper and gives the same rank.
        if self.rows < self.cols {
            self.transpose().rref_in_place_owned()
        } else {
            self.clone().rref_in_place_owned()
        }
    }
    fn rref_in_place_owned(mut self) -> usize {
        let c = self.cols;
        self.rref_in_place(c).0
    }

    /// Columns form a basis of the null space, one per free column of the
    /// rref; basis vector `j` has a 1 in free column `j` and 0 in the others.
    pub fn kernel_basis(&self) -> FpMatrix {
        self.kernel_with_free_cols().0
    }

    /// The kernel basis together with its free columns. The coordinates of
    /// any kernel vector `v` in this basis are `v[free_cols]`.
    pub fn kernel_with_free_cols(&self) -> (FpMatrix, Vec<usize>) {
        let Rref {
            matrix: r,
            rank,
            pivots,
        } = self.rref();
        let fp = self.fp();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = FpMatrix::zeros(self.p, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.data[f * free.len() + j] = 1 % self.p;
            for (row, &pc) in pivots.iter().enumerate().take(rank) {
                let v = r.get(row, f);
                if v != 0 {
                    k.data[pc * free.len() + j] = fp.neg(v);
                }
            }
        }
        (k, free)
    }

    /// Solves `self * x = b`: a particular solution plus the kernel basis,
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Option<(Vec<u32>, FpMatrix)> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let x = self.solve_matrix(&FpMatrix::column_vector(self.p, b))?;
        Some((x.column(0), self.kernel_basis()))
    }

    /// Solves `self * X = B` for a matrix `X`, or `None` if any column is
    /// inconsistent. Free variables are set to zero.
    pub fn solve_matrix(&self, b: &FpMatrix) -> Option<FpMatrix> {
        assert_eq!(b.rows, self.rows, "right-hand side rows");
        let mut aug = self.hstack(b);
        let (rank, pivots) = aug.rref_in_place(self.cols);
        for r in rank..self.rows {
            if aug.row(r)[self.cols..].iter().any(|&x| x != 0) {
                return None;
            }
        }
        let mut x = FpMatrix::zeros(self.p, self.cols, b.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            x.row_mut(pc)
                .copy_from_slice(&aug.row(row)[self.cols..self.cols + b.cols]);
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        self.solve_matrix(&FpMatrix::identity(self.p, self.rows))
            .filter(|_| self.rank() == self.rows)
    }

    /// Canonical basis (as columns) of the column space.
    pub fn column_space(&self) -> FpMatrix {
        let t = self.transpose().rref();
        t.matrix.block(0, 0, t.rank, self.rows).transpose()
    }
}

/// A subspace of F_p^n carried by its canonical basis: the nonzero rows of
/// the rref of any spanning set, stored as columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// The span of the columns of `m`.
    pub fn span(m: &FpMatrix) -> Self {
        let r = m.transpose().rref();
        Subspace {
            basis: r.matrix.block(0, 0, r.rank, m.rows()).transpose(),
            pivots: r.pivots,
        }
    }
    pub fn zero(p: u32, ambient: usize) -> Self {
        Subspace {
            basis: FpMatrix::zeros(p, ambient, 0),
            pivots: Vec::new(),
        }
    }
    pub fn full(p: u32, ambient: usize) -> Self {
        Subspace {
            basis: FpMatrix::identity(p, ambient),
            pivots: (0..ambient).collect(),
        }
    }
    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
    /// Canonical basis vectors as columns.
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F_p^{} and F_p^{}",
                self.ambient(),
                other.ambient()
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span(&self.basis.hstack(&other.basis)))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        // Solutions of U a = W b give the intersection as U a.
        let joint = self.basis.hstack(&other.basis.neg());
        let k = joint.kernel_basis();
        let a = k.block(0, 0, self.dim(), k.cols());
        Ok(Subspace::span(&self.basis.mul(&a)))
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient());
        let fp = self.basis.fp();
        let mut w = v.to_vec();
        // The canonical basis has an identity in its pivot rows.
        for (j, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c == 0 {
                continue;
            }
            for (r, x) in w.iter_mut().enumerate() {
                let b = self.basis.get(r, j);
                if b != 0 {
                    *x = fp.sub(*x, fp.mul(c, b));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok((0..other.dim()).all(|j| self.contains_vector(&other.basis.column(j))))
    }

    /// Contains every column of `m`.
    pub fn contains_columns(&self, m: &FpMatrix) -> bool {
        (0..m.cols()).all(|j| self.contains_vector(&m.column(j)))
    }

    /// Standard basis vectors completing this subspace to the whole space:
    /// the non-pivot coordinates.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient()];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient()).filter(|&c| !is_pivot[c]).collect()
    }

    /// Matrix sending `v` to its coordinates in `F_p^n / self` with respect
    /// to the complement basis `e_j`, `j` in [`Self::complement_coordinates`].
    pub fn quotient_projection(&self) -> FpMatrix {
        let comp = self.complement_coordinates();
        let n = self.ambient();
        let p = self.basis.p();
        let fp = Fp::new(p);
        let mut q = FpMatrix::zeros(p, comp.len(), n);
        // v - sum_r v[piv_r] b_r has zero pivot entries; read off the rest.
        for (t, &j) in comp.iter().enumerate() {
            q.set(t, j, 1);
            for (r, &pc) in self.pivots.iter().enumerate() {
                let b = self.basis.get(j, r);
                if b != 0 {
                    q.set(t, pc, fp.neg(b));
                }
            }
        }
        q
    }
}

/// Left inverse of a full-column-rank matrix: recovers coordinates of
/// vectors lying in its column space.
#[derive(Clone, Debug)]
pub struct Coordinatizer {
    basis: FpMatrix,
    left_inverse: FpMatrix,
}

impl Coordinatizer {
    /// Fails if the columns of `basis` are dependent.
    pub fn new(basis: &FpMatrix) -> Result<Self> {
        let p = basis.p();
        let k = basis.cols();
        let t = basis.transpose().rref();
        if t.rank != k {
            return Err(Error::DimensionMismatch(
                "coordinatizer basis is not independent".into(),
            ));
        }
        let rows = t.pivots.clone();
        let square = basis.select_rows(&rows);
        let inv = square
            .inverse()
            .expect("pivot rows of an independent family are invertible");
        let mut sel = FpMatrix::zeros(p, k, basis.rows());
        for (i, &r) in rows.iter().enumerate() {
            sel.set(i, r, 1);
        }
        Ok(Coordinatizer {
            basis: basis.clone(),
            left_inverse: inv.mul(&sel),
        })
    }
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }
    pub fn left_inverse(&self) -> &FpMatrix {
        &self.left_inverse
    }
    /// Coordinates of each column of `m`, assumed to lie in the span.
    pub fn coords(&self, m: &FpMatrix) -> FpMatrix {
        self.left_inverse.mul(m)
    }
    /// Coordinates when every column of `m` lies in the span, else `None`.
    pub fn coords_checked(&self, m: &FpMatrix) -> Option<FpMatrix> {
        let c = self.coords(m);
        (self.basis.mul(&c) == *m).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> FpMatrix {
        FpMatrix::from_rows(5, rows)
    }

    #[test]
    fn rref_examples() {
        let id = FpMatrix::identity(5, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);

        let z = FpMatrix::zeros(5, 2, 4);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);

        let a = m(&[vec![1, 2], vec![2, 4]]);
        let r = a.rref();
        assert_eq!(r.matrix, m(&[vec![1, 2], vec![0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(FpMatrix::identity(5, 4).kernel_basis().cols(), 0);
        let k = FpMatrix::zeros(5, 2, 2).kernel_basis();
        assert_eq!(k, FpMatrix::identity(5, 2));
        let k = m(&[vec![1, 2], vec![2, 4]]).kernel_basis();
        assert_eq!(k.column(0), vec![3, 1]);
    }

    #[test]
    fn kernel_oracle_by_enumeration() {
        // All 25 vectors of F_5^2 annihilated by [[1,2],[2,4]].
        let a = m(&[vec![1, 2], vec![2, 4]]);
        let mut found = Vec::new();
        for x in 0..5u32 {
            for y in 0..5u32 {
                if a.mul_vec(&[x, y]).iter().all(|&v| v == 0) {
                    found.push((x, y));
                }
            }
        }
        assert_eq!(found.len(), 5);
        assert!(found.contains(&(3, 1)));
    }

    #[test]
    fn solve_examples() {
        let id = FpMatrix::identity(5, 3);
        let (x, k) = id.solve(&[1, 4, 2]).unwrap();
        assert_eq!(x, vec![1, 4, 2]);
        assert_eq!(k.cols(), 0);
        assert!(FpMatrix::zeros(5, 2, 2).solve(&[1, 0]).is_none());
        let (x, _) = m(&[vec![2]]).solve(&[3]).unwrap();
        assert_eq!(x, vec![4]);
    }

    #[test]
    fn subspace_examples() {
        let e1 = Subspace::span(&m(&[vec![1], vec![0]]));
        let e2 = Subspace::span(&m(&[vec![0], vec![1]]));
        assert_eq!(e1.sum(&e2).unwrap().dim(), 2);
        assert_eq!(e1.intersection(&e2).unwrap().dim(), 0);
        let small = Subspace::span(&m(&[vec![1], vec![2]]));
        let big = Subspace::span(&m(&[vec![1, 0], vec![2, 1]]));
        assert!(big.contains(&small).unwrap());
        assert!(!small.contains(&big).unwrap());
        let other = Subspace::zero(5, 3);
        assert!(e1.sum(&other).is_err());
    }

    #[test]
    fn quotient_projection_kills_subspace() {
        let s = Subspace::span(&m(&[vec![1, 0], vec![2, 1], vec![3, 4]]));
        let q = s.quotient_projection();
        assert_eq!(q.rows(), 1);
        assert!(q.mul(s.basis()).is_zero());
    }

    #[test]
    fn coordinatizer_roundtrip() {
        let b = m(&[vec![1, 0], vec![2, 1], vec![3, 4]]);
        let c = Coordinatizer::new(&b).unwrap();
        let v = b.mul(&m(&[vec![2], vec![3]]));
        assert_eq!(c.coords(&v), m(&[vec![2], vec![3]]));
        assert!(c.coords_checked(&m(&[vec![0], vec![0], vec![1]])).is_none());
    }

    #[test]
    fn fp_helpers() {
        let fp = Fp::new(5);
        assert_eq!(fp.inv(2), 3);
        assert_eq!(fp.from_i64(-1), 4);
        assert_eq!(fp.sign(3), 4);
        assert!(check_prime(6).is_err());
        assert!(check_prime(5).is_ok());
    }
}

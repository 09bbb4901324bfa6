//! Dense linear algebra over the prime field F_p.
//!
//! Residues are stored as `u32` in `[0, p)`; products go through `u64`, so any
//! prime below 2^31 works. Subspaces are kept in reduced row-echelon form,
//! which makes equality of subspaces plain equality of basis matrices.

use std::fmt;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u64) -> Result<u32> {
    if !is_prime(p) || p >= (1 << 31) {
        return Err(Error::NotPrime(p));
    }
    Ok(p as u32)
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % p as u64) as u32
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    add(a, p - b % p, p)
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// `a^e` for a signed exponent; `a` must be nonzero when `e < 0`.
pub fn pow_signed(a: u32, e: i64, p: u32) -> u32 {
    if e >= 0 {
        pow(a, e as u64, p)
    } else {
        pow(inv(a, p), e.unsigned_abs(), p)
    }
}

pub fn inv(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    pow(a, (p - 2) as u64, p)
}

/// Reduce a signed integer into `[0, p)`.
pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

/// Smallest generator of the multiplicative group F_p^×.
pub fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let order = (p - 1) as u64;
    let mut factors = Vec::new();
    let mut m = order;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow(g, order / q, p) != 1))
        .expect("every prime field has a primitive root")
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixFp {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for MatrixFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixFp(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl MatrixFp {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Build from row-major residues, reducing every entry mod p.
    pub fn from_vec(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(rows * cols, data.len());
        let data = data.into_iter().map(|x| x % p).collect();
        Self { p, rows, cols, data }
    }

    pub fn from_rows_i64(p: u32, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| reduce(x, p)));
        }
        Self { p, rows: rows.len(), cols, data }
    }

    pub fn from_row_vecs(p: u32, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| x % p));
        }
        Self { p, rows: rows.len(), cols, data }
    }

    pub fn diag(p: u32, entries: &[u32]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(p, n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let p = self.p as u64;
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (dst, &b) in acc.iter_mut().zip(orow) {
                    *dst = (*dst + a * b as u64) % p;
                }
            }
            for (c, &v) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = v as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p) as u32
            })
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| sub(a, b, p)).collect();
        Self { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: u32) -> Self {
        let p = self.p;
        let data = self.data.iter().map(|&a| mul(a, s, p)).collect();
        Self { p, rows: self.rows, cols: self.cols, data }
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Reduced row-echelon form in place, searching pivots only among the
    /// first `pivot_cols` columns. Returns the pivot columns; rows past the
    /// pivot count are zero within the pivot range.
    pub fn rref_limited(&mut self, pivot_cols: usize) -> Vec<usize> {
        let p = self.p;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        let mut scratch = vec![0u32; cols];
        for c in 0..pivot_cols.min(cols) {
            if lead == self.rows {
                break;
            }
            let Some(sel) = (lead..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            if sel != lead {
                for k in 0..cols {
                    self.data.swap(sel * cols + k, lead * cols + k);
                }
            }
            let scale = inv(self.get(lead, c), p);
            for k in c..cols {
                let v = self.data[lead * cols + k];
                self.data[lead * cols + k] = mul(v, scale, p);
            }
            scratch[c..].copy_from_slice(&self.data[lead * cols + c..(lead + 1) * cols]);
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let f = self.data[r * cols + c];
                if f == 0 {
                    continue;
                }
                let row = &mut self.data[r * cols + c..(r + 1) * cols];
                if p == 2 {
                    for (dst, &s) in row.iter_mut().zip(&scratch[c..]) {
                        *dst ^= s;
                    }
                    continue;
                }
                let f = (p - f) as u64;
                for (dst, &s) in row.iter_mut().zip(&scratch[c..]) {
                    if s != 0 {
                        *dst = ((*dst as u64 + f * s as u64) % p as u64) as u32;
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    pub fn rref(&mut self) -> Vec<usize> {
        let cols = self.cols;
        self.rref_limited(cols)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Keep only the first `k` rows.
    pub fn truncate_rows(&mut self, k: usize) {
        self.rows = self.rows.min(k);
        self.data.truncate(self.rows * self.cols);
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.p, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let pivots = aug.rref_limited(n);
        if pivots.len() < n {
            return Err(Error::Singular(self.p));
        }
        let mut out = Self::zeros(self.p, n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, aug.get(r, n + c));
            }
        }
        Ok(out)
    }

    pub fn det(&self) -> u32 {
        assert!(self.is_square());
        let p = self.p;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1 % p;
        for c in 0..n {
            let Some(sel) = (c..n).find(|&r| m.get(r, c) != 0) else {
                return 0;
            };
            if sel != c {
                for k in 0..n {
                    m.data.swap(sel * n + k, c * n + k);
                }
                det = neg(det, p);
            }
            let pv = m.get(c, c);
            det = mul(det, pv, p);
            let pinv = inv(pv, p);
            for r in c + 1..n {
                let f = mul(m.get(r, c), pinv, p);
                if f == 0 {
                    continue;
                }
                for k in c..n {
                    let v = sub(m.get(r, k), mul(f, m.get(c, k), p), p);
                    m.set(r, k, v);
                }
            }
        }
        det
    }
}

/// A subspace of F_p^d, held as the canonical reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceFp {
    basis: MatrixFp,
    pivots: Vec<usize>,
}

impl SubspaceFp {
    /// Span of the rows of `rows`.
    pub fn span(rows: &MatrixFp) -> Self {
        let mut m = rows.clone();
        let pivots = m.rref();
        m.truncate_rows(pivots.len());
        Self { basis: m, pivots }
    }

    pub fn span_of(p: u32, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        Self::span(&MatrixFp::from_row_vecs(p, ambient, vectors))
    }

    pub fn zero(p: u32, ambient: usize) -> Self {
        Self { basis: MatrixFp::zeros(p, 0, ambient), pivots: vec![] }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        Self { basis: MatrixFp::identity(p, ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(p: u32, ambient: usize, indices: &[usize]) -> Self {
        let rows: Vec<Vec<u32>> = indices
            .iter()
            .map(|&i| {
                let mut v = vec![0; ambient];
                v[i] = 1 % p;
                v
            })
            .collect();
        Self::span_of(p, ambient, &rows)
    }

    pub fn p(&self) -> u32 {
        self.basis.p
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &MatrixFp {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p() != other.p() || self.ambient() != other.ambient() {
            return Err(Error::Dimension(format!(
                "subspaces of F_{}^{} and F_{}^{}",
                self.p(),
                self.ambient(),
                other.p(),
                other.ambient()
            )));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient());
        let p = self.p();
        let mut rem: Vec<u32> = v.iter().map(|&x| x % p).collect();
        for (r, &c) in self.pivots.iter().enumerate() {
            let f = rem[c];
            if f == 0 {
                continue;
            }
            for (dst, &b) in rem.iter_mut().zip(self.basis.row(r)) {
                *dst = sub(*dst, mul(f, b, p), p);
            }
        }
        rem.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        (0..self.dim()).all(|r| other.contains(self.basis.row(r)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self::span(&self.basis.vstack(&other.basis)))
    }

    /// Vectors orthogonal to every basis row under the standard dot product.
    pub fn annihilator(&self) -> Self {
        nullspace(&self.basis)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let a = self.annihilator();
        let b = other.annihilator();
        Ok(nullspace(&a.basis.vstack(&b.basis)))
    }
}

/// Right kernel `{v : M v = 0}` with its canonical basis.
pub fn nullspace(m: &MatrixFp) -> SubspaceFp {
    let p = m.p;
    let cols = m.cols;
    let mut r = m.clone();
    let pivots = r.rref();
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut vectors = Vec::with_capacity(cols - pivots.len());
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; cols];
        v[free] = 1 % p;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = neg(r.get(row, free), p);
        }
        vectors.push(v);
    }
    SubspaceFp::span_of(p, cols, &vectors)
}

/// Coordinates against a fixed basis, prepared once and reused.
///
/// With `E·B = R` in reduced echelon form, a vector `v` in the row span has
/// `v = yᵀR` where `y` is read off the pivot columns, and then `c = Eᵀy`.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    p: u32,
    ambient: usize,
    reduced: MatrixFp,
    pivots: Vec<usize>,
    transform_t: MatrixFp,
}

impl SpanSolver {
    pub fn new(basis: &MatrixFp) -> Result<Self> {
        let p = basis.p;
        let k = basis.rows;
        let d = basis.cols;
        let mut aug = MatrixFp::zeros(p, k, d + k);
        for r in 0..k {
            aug.data[r * (d + k)..r * (d + k) + d].copy_from_slice(basis.row(r));
            aug.data[r * (d + k) + d + r] = 1 % p;
        }
        let pivots = aug.rref_limited(d);
        if pivots.len() != k {
            return Err(Error::Dimension(format!(
                "basis rows are dependent: rank {} of {}",
                pivots.len(),
                k
            )));
        }
        let mut reduced = MatrixFp::zeros(p, k, d);
        let mut transform = MatrixFp::zeros(p, k, k);
        for r in 0..k {
            reduced.data[r * d..(r + 1) * d].copy_from_slice(&aug.row(r)[..d]);
            transform.data[r * k..(r + 1) * k].copy_from_slice(&aug.row(r)[d..]);
        }
        Ok(Self { p, ambient: d, reduced, pivots, transform_t: transform.transpose() })
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// The unique `c` with `cᵀB = v`, or `None` when `v` is outside the span.
    pub fn solve(&self, v: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(v.len(), self.ambient);
        let p = self.p;
        let y: Vec<u32> = self.pivots.iter().map(|&c| v[c] % p).collect();
        let mut rem: Vec<u32> = v.iter().map(|&x| x % p).collect();
        for (r, &f) in y.iter().enumerate() {
            if f == 0 {
                continue;
            }
            for (dst, &b) in rem.iter_mut().zip(self.reduced.row(r)) {
                if b != 0 {
                    *dst = sub(*dst, mul(f, b, p), p);
                }
            }
        }
        if rem.iter().any(|&x| x != 0) {
            return None;
        }
        Some(self.transform_t.mul_vec(&y))
    }
}

/// One-shot coordinate extraction; see [`SpanSolver`] for repeated use.
pub fn solve_in_span(basis: &MatrixFp, v: &[u32]) -> Result<Option<Vec<u32>>> {
    Ok(SpanSolver::new(basis)?.solve(v))
}

//! Symmetric transforms of a finite matrix group H acting on V = F_p^k.
//!
//! For x ∈ V write X_h for h·x viewed as a linear form in Sym(V). Then
//! Π_{h∈H} (t − X_h) = Σ_d s^(d)(x)·t^{N−d}, the norm is Π X_h and the trace
//! is Σ X_h.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::fp_linalg::{add, check_prime, MatrixFp};
use crate::poly::{var, Poly, MAX_EXPONENT, MAX_VARS};

/// Largest group order whose transforms fit the packed monomials.
pub const MAX_ORDER: usize = MAX_EXPONENT;

fn key(g: &MatrixFp) -> Vec<u32> {
    (0..g.rows()).flat_map(|r| g.row(r).to_vec()).collect()
}

/// An explicit finite subgroup of GL(V).
#[derive(Clone, Debug)]
pub struct FiniteAction {
    p: u32,
    dim: usize,
    elements: Vec<MatrixFp>,
}

impl FiniteAction {
    /// Checks that `elements` is a group: identity, products and inverses.
    pub fn new(p: u32, dim: usize, elements: Vec<MatrixFp>) -> Result<Self> {
        let p = check_prime(p as u64)?;
        if dim == 0 || dim > MAX_VARS {
            return Err(Error::OutOfRange(format!("dim V = {dim} outside 1..={MAX_VARS}")));
        }
        if elements.is_empty() || elements.len() > MAX_ORDER {
            return Err(Error::OutOfRange(format!(
                "group order {} outside 1..={MAX_ORDER}",
                elements.len()
            )));
        }
        for g in &elements {
            if g.p() != p || g.rows() != dim || g.cols() != dim {
                return Err(Error::Dimension(format!("expected {dim}×{dim} matrices mod {p}")));
            }
        }
        let set: HashSet<Vec<u32>> = elements.iter().map(key).collect();
        if set.len() != elements.len() {
            return Err(Error::NotAGroup("repeated elements".into()));
        }
        if !set.contains(&key(&MatrixFp::identity(p, dim))) {
            return Err(Error::NotAGroup("identity missing".into()));
        }
        for g in &elements {
            let gi = g.inverse().map_err(|_| Error::NotAGroup("singular element".into()))?;
            if !set.contains(&key(&gi)) {
                return Err(Error::NotAGroup("not closed under inverses".into()));
            }
            for h in &elements {
                if !set.contains(&key(&g.mul(h))) {
                    return Err(Error::NotAGroup("not closed under products".into()));
                }
            }
        }
        Ok(Self { p, dim, elements })
    }

    /// The subgroup generated by `gens`, listed in breadth-first order.
    pub fn generated_by(p: u32, dim: usize, gens: &[MatrixFp]) -> Result<Self> {
        let id = MatrixFp::identity(p, dim);
        let mut seen: HashSet<Vec<u32>> = HashSet::from([key(&id)]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.mul(g);
                if seen.insert(key(&y)) {
                    if elements.len() == MAX_ORDER {
                        return Err(Error::OutOfRange(format!("group order exceeds {MAX_ORDER}")));
                    }
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Self::new(p, dim, elements)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[MatrixFp] {
        &self.elements
    }
}

/// A homogeneous element of Sym^d(V) in the basis symbols e_1, …, e_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymElement {
    degree: usize,
    poly: Poly,
}

impl SymElement {
    pub fn zero(degree: usize) -> Self {
        Self { degree, poly: Poly::zero() }
    }

    pub fn one(p: u32) -> Self {
        Self { degree: 0, poly: Poly::constant(1, p) }
    }

    /// The linear form Σ x_i e_i.
    pub fn linear(x: &[u32], p: u32) -> Self {
        let terms = x.iter().enumerate().map(|(i, &c)| (var(i), c)).collect();
        Self { degree: 1, poly: Poly::from_terms(terms, p) }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, other: &Self, p: u32) -> Self {
        assert_eq!(self.degree, other.degree, "adding elements of different degree");
        Self { degree: self.degree, poly: self.poly.add(&other.poly, p) }
    }

    pub fn mul(&self, other: &Self, p: u32) -> Self {
        Self { degree: self.degree + other.degree, poly: self.poly.mul(&other.poly, p) }
    }

    pub fn neg(&self, p: u32) -> Self {
        Self { degree: self.degree, poly: self.poly.neg(p) }
    }

    /// Induced action of g on Sym^d(V): e_i ↦ g·e_i = Σ_j g_{j,i} e_j.
    pub fn act(&self, g: &MatrixFp) -> Self {
        let p = g.p();
        let images: Vec<Poly> =
            (0..g.cols()).map(|i| SymElement::linear(&g.column(i), p).poly).collect();
        Self { degree: self.degree, poly: self.poly.substitute(&images, p) }
    }
}

/// s^(0), …, s^(N) at x.
pub fn all_transforms(a: &FiniteAction, x: &[u32]) -> Result<Vec<SymElement>> {
    let p = a.p;
    if x.len() != a.dim {
        return Err(Error::Dimension(format!("vector of length {} in dim {}", x.len(), a.dim)));
    }
    let n = a.order();
    let mut s: Vec<SymElement> = (0..=n).map(SymElement::zero).collect();
    s[0] = SymElement::one(p);
    for (k, h) in a.elements.iter().enumerate() {
        let minus_xh = SymElement::linear(&h.mul_vec(x), p).neg(p);
        for d in (1..=k + 1).rev() {
            s[d] = s[d].add(&s[d - 1].mul(&minus_xh, p), p);
        }
    }
    Ok(s)
}

/// Coefficient of t^{N−d} in Π_h (t − h·x).
pub fn sym_transform(a: &FiniteAction, x: &[u32], d: usize) -> Result<SymElement> {
    if d == 0 || d > a.order() {
        return Err(Error::OutOfRange(format!("d = {d} outside 1..={}", a.order())));
    }
    Ok(all_transforms(a, x)?.swap_remove(d))
}

/// Π_h h·x in Sym^N(V).
pub fn norm(a: &FiniteAction, x: &[u32]) -> Result<SymElement> {
    let p = a.p;
    if x.len() != a.dim {
        return Err(Error::Dimension(format!("vector of length {} in dim {}", x.len(), a.dim)));
    }
    Ok(a
        .elements
        .iter()
        .fold(SymElement::one(p), |acc, h| acc.mul(&SymElement::linear(&h.mul_vec(x), p), p)))
}

/// Σ_h h·x.
pub fn trace(a: &FiniteAction, x: &[u32]) -> Result<Vec<u32>> {
    let p = a.p;
    if x.len() != a.dim {
        return Err(Error::Dimension(format!("vector of length {} in dim {}", x.len(), a.dim)));
    }
    let mut out = vec![0u32; a.dim];
    for h in &a.elements {
        for (o, v) in out.iter_mut().zip(h.mul_vec(x)) {
            *o = add(*o, v, p);
        }
    }
    Ok(out)
}

/// Whether Σ_{d=0}^{N} s^(d)(x)·x^{N−d} vanishes in Sym^N(V).
pub fn annihilation_check(a: &FiniteAction, x: &[u32]) -> Result<bool> {
    let p = a.p;
    let s = all_transforms(a, x)?;
    let lin = SymElement::linear(x, p);
    let n = a.order();
    let mut pow = SymElement::one(p);
    let mut total = SymElement::zero(n);
    for d in (0..=n).rev() {
        total = total.add(&s[d].mul(&pow, p), p);
        pow = pow.mul(&lin, p);
    }
    Ok(total.is_zero())
}

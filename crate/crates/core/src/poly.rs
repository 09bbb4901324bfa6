//! Sparse commutative polynomials over F_p with packed monomials.
//!
//! A monomial in at most 16 variables is a `u128` holding one exponent byte
//! per variable, so multiplying monomials is integer addition as long as no
//! exponent exceeds 255. Callers guarantee that bound.

use crate::fp_linalg::{add, mul, neg};

pub type Mono = u128;

pub const MAX_VARS: usize = 16;
pub const MAX_EXPONENT: usize = 255;

#[inline]
pub fn var(v: usize) -> Mono {
    debug_assert!(v < MAX_VARS);
    1u128 << (8 * v)
}

#[inline]
pub fn exponent(m: Mono, v: usize) -> usize {
    ((m >> (8 * v)) & 0xff) as usize
}

pub fn degree(m: Mono) -> usize {
    (0..MAX_VARS).map(|v| exponent(m, v)).sum()
}

pub fn from_exponents(exps: &[usize]) -> Mono {
    assert!(exps.len() <= MAX_VARS);
    exps.iter().enumerate().fold(0u128, |acc, (v, &e)| {
        assert!(e <= MAX_EXPONENT, "exponent {e} too large for packed monomial");
        acc | ((e as u128) << (8 * v))
    })
}

/// Terms sorted by monomial, coefficients nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: Vec<(Mono, u32)>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn constant(c: u32, p: u32) -> Self {
        Self::monomial(0, c, p)
    }

    pub fn monomial(m: Mono, c: u32, p: u32) -> Self {
        let c = c % p;
        if c == 0 {
            Self::zero()
        } else {
            Self { terms: vec![(m, c)] }
        }
    }

    /// Collects arbitrary terms, merging duplicates.
    pub fn from_terms(mut terms: Vec<(Mono, u32)>, p: u32) -> Self {
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(Mono, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = add(last.1, c, p),
                _ => out.push((m, c % p)),
            }
        }
        out.retain(|t| t.1 != 0);
        Self { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Mono) -> u32 {
        self.terms.binary_search_by_key(&m, |t| t.0).map_or(0, |i| self.terms[i].1)
    }

    pub fn add(&self, other: &Self, p: u32) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self::from_terms(terms, p)
    }

    pub fn neg(&self, p: u32) -> Self {
        Self { terms: self.terms.iter().map(|&(m, c)| (m, neg(c, p))).collect() }
    }

    pub fn scale(&self, s: u32, p: u32) -> Self {
        let s = s % p;
        if s == 0 {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|&(m, c)| (m, mul(c, s, p))).collect() }
    }

    pub fn mul(&self, other: &Self, p: u32) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (big, small) =
            if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut terms = Vec::with_capacity(big.len() * small.len());
        for &(ms, cs) in &small.terms {
            for &(mb, cb) in &big.terms {
                terms.push((mb + ms, mul(cb, cs, p)));
            }
        }
        Self::from_terms(terms, p)
    }

    pub fn pow(&self, e: usize, p: u32) -> Self {
        let mut acc = Self::constant(1, p);
        for _ in 0..e {
            acc = acc.mul(self, p);
        }
        acc
    }

    /// Substitute each variable `v` by the polynomial `images[v]`.
    pub fn substitute(&self, images: &[Poly], p: u32) -> Self {
        let mut out = Self::zero();
        for &(m, c) in &self.terms {
            let mut term = Self::constant(c, p);
            for (v, img) in images.iter().enumerate() {
                let e = exponent(m, v);
                if e > 0 {
                    term = term.mul(&img.pow(e, p), p);
                }
            }
            out = out.add(&term, p);
        }
        out
    }
}

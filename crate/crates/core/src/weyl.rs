//! The Weyl group of GSp(2n), type C_n, as signed permutations.
//!
//! An element is stored as a permutation `w` of `{1, …, 2n}` with
//! `w(i) + w(2n+1-i) = 2n+1`. Composition is `(w1·w2)(i) = w1(w2(i))`.
//! Simple reflections are `s_1 … s_{n-1}` (type A, generating the Levi Weyl
//! group, the permutations that stabilise `{1, …, n}`) and the long
//! reflection `s_n` swapping `n` and `n+1`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    perm: Vec<u16>,
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.perm.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl WeylElement {
    /// Validate a one-line permutation `perm[i-1] = w(i)`.
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let m = perm.len();
        if m == 0 || m % 2 != 0 {
            return Err(Error::Dimension(format!("permutation of length {m} is not of type C")));
        }
        let mut seen = vec![false; m + 1];
        for &v in &perm {
            if v == 0 || v > m || seen[v] {
                return Err(Error::Dimension(format!("{perm:?} is not a permutation")));
            }
            seen[v] = true;
        }
        for i in 0..m {
            if perm[i] + perm[m - 1 - i] != m + 1 {
                return Err(Error::Dimension(format!("{perm:?} breaks w(i)+w(2n+1-i)=2n+1")));
            }
        }
        Ok(Self { perm: perm.into_iter().map(|v| v as u16).collect() })
    }

    fn from_raw(perm: Vec<u16>) -> Self {
        Self { perm }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_raw((1..=2 * n as u16).collect())
    }

    /// `w_0`, the longest element: `i ↦ 2n+1-i`.
    pub fn longest(n: usize) -> Self {
        Self::from_raw((1..=2 * n as u16).rev().collect())
    }

    /// `w_{0,I}`, the longest element of the Levi Weyl group ≅ S_n.
    pub fn longest_levi(n: usize) -> Self {
        let n16 = n as u16;
        let mut perm: Vec<u16> = (1..=n16).rev().collect();
        perm.extend((n16 + 1..=2 * n16).rev());
        Self::from_raw(perm)
    }

    /// The frame element `z = w_{0,I} w_0` (σ is trivial for the split group).
    pub fn frame(n: usize) -> Self {
        Self::longest_levi(n).compose(&Self::longest(n))
    }

    /// `s_i` for `1 ≤ i ≤ n`.
    pub fn simple_reflection(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "simple reflection index {i} out of 1..={n}");
        let mut perm: Vec<u16> = (1..=2 * n as u16).collect();
        if i < n {
            perm.swap(i - 1, i);
            perm.swap(2 * n - i, 2 * n - i - 1);
        } else {
            perm.swap(n - 1, n);
        }
        Self::from_raw(perm)
    }

    /// Embed a permutation `σ` of `{1..n}` (one-line, 1-based) into `W_I`.
    pub fn from_levi_permutation(sigma: &[usize]) -> Self {
        let n = sigma.len();
        let mut perm = vec![0u16; 2 * n];
        for (i, &s) in sigma.iter().enumerate() {
            perm[i] = s as u16;
            perm[2 * n - 1 - i] = (2 * n + 1 - s) as u16;
        }
        Self::from_raw(perm)
    }

    pub fn rank(&self) -> usize {
        self.perm.len() / 2
    }

    pub fn perm(&self) -> Vec<usize> {
        self.perm.iter().map(|&v| v as usize).collect()
    }

    /// `w(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.perm[i - 1] as usize
    }

    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.perm.len(), other.perm.len(), "rank mismatch");
        Self::from_raw(other.perm.iter().map(|&j| self.perm[j as usize - 1]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0u16; self.perm.len()];
        for (i, &v) in self.perm.iter().enumerate() {
            out[v as usize - 1] = i as u16 + 1;
        }
        Self::from_raw(out)
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// Coxeter length: `(inv(w) + #{i ≤ n : w(i) > n}) / 2`, with `inv`
    /// the inversion count in S_2n.
    pub fn length(&self) -> usize {
        let m = self.perm.len();
        let n = m / 2;
        let mut inv = 0;
        for i in 0..m {
            for j in i + 1..m {
                if self.perm[i] > self.perm[j] {
                    inv += 1;
                }
            }
        }
        let neg = self.perm[..n].iter().filter(|&&v| v as usize > n).count();
        (inv + neg) / 2
    }

    /// Some `s` with `ℓ(w s) < ℓ(w)`, if any.
    pub fn right_descent(&self) -> Option<usize> {
        let n = self.rank();
        let l = self.length();
        (1..=n).find(|&i| self.compose(&Self::simple_reflection(n, i)).length() < l)
    }

    /// Reduced word `[i_1, …, i_k]` with `w = s_{i_1} ⋯ s_{i_k}`, built by
    /// peeling right descents greedily.
    pub fn reduced_word(&self) -> Vec<usize> {
        let n = self.rank();
        let mut word = Vec::new();
        let mut cur = self.clone();
        while let Some(i) = cur.right_descent() {
            word.push(i);
            cur = cur.compose(&Self::simple_reflection(n, i));
        }
        word.reverse();
        word
    }

    pub fn from_word(n: usize, word: &[usize]) -> Self {
        word.iter()
            .fold(Self::identity(n), |acc, &i| acc.compose(&Self::simple_reflection(n, i)))
    }

    /// Action on the `a`-coordinates of a character: `e_i ↦ ±e_j`.
    pub fn act_on_coords(&self, x: &[i64]) -> Vec<i64> {
        let n = self.rank();
        assert_eq!(x.len(), n);
        let mut out = vec![0i64; n];
        for (i, &xi) in x.iter().enumerate() {
            let j = self.perm[i] as usize;
            if j <= n {
                out[j - 1] += xi;
            } else {
                out[2 * n - j] -= xi;
            }
        }
        out
    }

    /// True when `w` fixes the block `{1..n}` setwise, i.e. `w ∈ W_I`.
    pub fn is_levi(&self) -> bool {
        let n = self.rank();
        self.perm[..n].iter().all(|&v| v as usize <= n)
    }
}

/// All `2^n n!` elements of W(C_n), sorted by (length, permutation).
pub fn all_elements(n: usize) -> Vec<WeylElement> {
    let mut out = Vec::new();
    for sigma in permutations(n) {
        for signs in 0u32..(1 << n) {
            let mut perm = vec![0u16; 2 * n];
            for (i, &s) in sigma.iter().enumerate() {
                let img = if signs >> i & 1 == 1 { 2 * n + 1 - s } else { s };
                perm[i] = img as u16;
                perm[2 * n - 1 - i] = (2 * n + 1 - img) as u16;
            }
            out.push(WeylElement::from_raw(perm));
        }
    }
    sort_canonical(&mut out);
    out
}

/// The Levi Weyl group `W_I ≅ S_n`.
pub fn levi_elements(n: usize) -> Vec<WeylElement> {
    let mut out: Vec<_> =
        permutations(n).iter().map(|s| WeylElement::from_levi_permutation(s)).collect();
    sort_canonical(&mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v + 1);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

fn sort_canonical(v: &mut [WeylElement]) {
    v.sort_by_cached_key(|w| (w.length(), w.perm.clone()));
}

/// Bruhat order via the lifting property: for a right descent `s` of `w`,
/// `x ≤ w` iff `min(x, xs) ≤ ws`.
pub fn bruhat_leq(x: &WeylElement, w: &WeylElement) -> Result<bool> {
    if x.rank() != w.rank() {
        return Err(Error::RankMismatch(x.rank(), w.rank()));
    }
    let n = w.rank();
    let mut x = x.clone();
    let mut w = w.clone();
    loop {
        let lw = w.length();
        let lx = x.length();
        if lx > lw {
            return Ok(false);
        }
        let Some(i) = w.right_descent() else {
            return Ok(x.is_identity());
        };
        let s = WeylElement::simple_reflection(n, i);
        let xs = x.compose(&s);
        if xs.length() < lx {
            x = xs;
        }
        w = w.compose(&s);
    }
}

/// Whether `w` has minimal length in its coset `W_I w`.
pub fn is_min_coset_rep(w: &WeylElement) -> bool {
    let n = w.rank();
    let l = w.length();
    (1..n).all(|i| WeylElement::simple_reflection(n, i).compose(w).length() > l)
}

/// `^I W`: minimal-length representatives of `W_I \ W`, in canonical order.
pub fn enumerate_iw(n: usize) -> Vec<WeylElement> {
    all_elements(n).into_iter().filter(is_min_coset_rep).collect()
}

/// The closure order on `^I W`: `x ≼ w` iff `v x v⁻¹ ≤ w` for some `v ∈ W_I`
/// (σ is trivial, so the twisted conjugation is ordinary conjugation).
pub fn preceq(x: &WeylElement, w: &WeylElement) -> Result<bool> {
    if x.rank() != w.rank() {
        return Err(Error::RankMismatch(x.rank(), w.rank()));
    }
    for e in [x, w] {
        if !is_min_coset_rep(e) {
            return Err(Error::NotInParabolicQuotient(e.to_string()));
        }
    }
    preceq_unchecked(x, w, &levi_elements(w.rank()))
}

/// [`preceq`] with a precomputed `W_I` and no membership checks.
pub fn preceq_unchecked(x: &WeylElement, w: &WeylElement, levi: &[WeylElement]) -> Result<bool> {
    for v in levi {
        let conj = v.compose(x).compose(&v.inverse());
        if bruhat_leq(&conj, w)? {
            return Ok(true);
        }
    }
    Ok(false)
}

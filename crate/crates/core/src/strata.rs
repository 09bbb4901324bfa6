//! Ekedahl–Oort strata of the Siegel zip stack: the set ^I W with
//! dimensions ℓ(w) + dim P and the closure order ≼.

use std::fmt::Write as _;

use serde::Serialize;

use crate::characters::RootDatum;
use crate::error::{Error, Result};
use crate::weyl::{enumerate_iw, levi_elements, preceq_unchecked, WeylElement};

pub const MAX_POSET_RANK: usize = 6;

#[derive(Clone, Debug)]
pub struct StrataPoset {
    n: usize,
    elements: Vec<WeylElement>,
    lengths: Vec<usize>,
    dims: Vec<usize>,
    /// closure[i][j] is true when elements[i] ≼ elements[j].
    closure: Vec<Vec<bool>>,
    dim_g: usize,
    dim_p: usize,
}

#[derive(Serialize)]
struct JsonElement {
    perm: Vec<usize>,
    length: usize,
    dim: usize,
}

#[derive(Serialize)]
struct JsonPoset {
    elements: Vec<JsonElement>,
    relation: Vec<[usize; 2]>,
}

pub fn build_poset(n: usize) -> Result<StrataPoset> {
    if n == 0 || n > MAX_POSET_RANK {
        return Err(Error::Guard(format!("strata poset needs 1 ≤ n ≤ {MAX_POSET_RANK}, got {n}")));
    }
    let roots = RootDatum::new(n);
    let elements = enumerate_iw(n);
    let levi = levi_elements(n);
    let lengths: Vec<usize> = elements.iter().map(WeylElement::length).collect();
    let dims = lengths.iter().map(|l| l + roots.dim_p()).collect();
    let closure = elements
        .iter()
        .map(|x| {
            elements
                .iter()
                .map(|w| preceq_unchecked(x, w, &levi))
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StrataPoset { n, elements, lengths, dims, closure, dim_g: roots.dim_g(), dim_p: roots.dim_p() })
}

impl StrataPoset {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    pub fn dim_g(&self) -> usize {
        self.dim_g
    }

    pub fn dim_p(&self) -> usize {
        self.dim_p
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.closure[i][j]
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| (0..self.len()).all(|j| j == i || !self.leq(i, j))).collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| (0..self.len()).all(|j| j == i || !self.leq(j, i))).collect()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|i| self.leq(i, i))
    }

    pub fn is_antisymmetric(&self) -> bool {
        let k = self.len();
        (0..k).all(|i| (0..k).all(|j| i == j || !(self.leq(i, j) && self.leq(j, i))))
    }

    pub fn is_transitive(&self) -> bool {
        let k = self.len();
        (0..k).all(|i| {
            (0..k).all(|j| !self.leq(i, j) || (0..k).all(|l| !self.leq(j, l) || self.leq(i, l)))
        })
    }

    pub fn is_total(&self) -> bool {
        let k = self.len();
        (0..k).all(|i| (0..k).all(|j| self.leq(i, j) || self.leq(j, i)))
    }

    /// Covering pairs (i, j): i ≺ j with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let k = self.len();
        let mut cover: Vec<Vec<bool>> =
            (0..k).map(|i| (0..k).map(|j| i != j && self.leq(i, j)).collect()).collect();
        for mid in 0..k {
            for i in 0..k {
                if i == mid || !self.leq(i, mid) {
                    continue;
                }
                for j in 0..k {
                    if j != mid && self.leq(mid, j) {
                        cover[i][j] = false;
                    }
                }
            }
        }
        let mut out = Vec::new();
        for (i, row) in cover.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn label(&self, i: usize) -> String {
        format!("{}:{}:{}", self.elements[i], self.lengths[i], self.dims[i])
    }

    /// Hasse diagram with edges from each element to the ones covering it.
    pub fn export_dot(&self) -> String {
        let mut s = format!("digraph strata_n{} {{\n  rankdir=BT;\n", self.n);
        for i in 0..self.len() {
            writeln!(s, "  n{i} [label=\"{}\"];", self.label(i)).unwrap();
        }
        for (i, j) in self.covers() {
            writeln!(s, "  n{i} -> n{j};").unwrap();
        }
        s.push_str("}\n");
        s
    }

    /// `{elements: [{perm, length, dim}], relation: [[i, j]]}` with i ≼ j.
    pub fn to_json(&self) -> String {
        let elements = (0..self.len())
            .map(|i| JsonElement {
                perm: self.elements[i].perm(),
                length: self.lengths[i],
                dim: self.dims[i],
            })
            .collect();
        let k = self.len();
        let relation = (0..k)
            .flat_map(|i| (0..k).filter(move |&j| self.leq(i, j)).map(move |j| [i, j]))
            .collect();
        serde_json::to_string_pretty(&JsonPoset { elements, relation }).expect("serializable")
    }
}

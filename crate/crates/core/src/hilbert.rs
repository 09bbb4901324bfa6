//! Split Hilbert–Blumenthal case: tuples (A_1, …, A_n) in GL_2 with a common
//! determinant, their symplectic embedding, and the zip cone of the torus
//! Levi.
//!
//! The embedding puts A_i on the plane spanned by e_i and e_{2n+1−i}, which Ψ
//! pairs with each other, so gᵀΨg = det·Ψ. On the torus,
//! (diag(α_i, c/α_i))_i ↦ diag(α_1, …, α_n, c/α_n, …, c/α_1) and a character
//! (a; b) of GSp restricts to Π α_i^{a_i}·c^{(b−Σa)/2}.

use serde::{Deserialize, Serialize};

use crate::characters::Character;
use crate::error::{Error, Result};
use crate::fp_linalg::{check_prime, mul, pow_signed, MatrixFp};

/// Ψ = [[0, J], [−J, 0]] with J the n×n antidiagonal identity.
pub fn psi_matrix(n: usize, p: u32) -> MatrixFp {
    let mut m = MatrixFp::zeros(p, 2 * n, 2 * n);
    for i in 0..n {
        m.set(i, 2 * n - 1 - i, 1 % p);
        m.set(2 * n - 1 - i, i, p - 1);
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertTuple {
    blocks: Vec<MatrixFp>,
    det: u32,
}

impl HilbertTuple {
    pub fn new(blocks: Vec<MatrixFp>) -> Result<Self> {
        let Some(first) = blocks.first() else {
            return Err(Error::Dimension("empty tuple".into()));
        };
        let p = first.p();
        for b in &blocks {
            if b.p() != p || b.rows() != 2 || b.cols() != 2 {
                return Err(Error::Dimension("tuple entries must be 2×2 over one field".into()));
            }
        }
        let det = first.det();
        if det == 0 {
            return Err(Error::Singular(p));
        }
        if blocks.iter().any(|b| b.det() != det) {
            return Err(Error::DeterminantMismatch);
        }
        Ok(Self { blocks, det })
    }

    pub fn identity(n: usize, p: u32) -> Self {
        Self { blocks: vec![MatrixFp::identity(p, 2); n], det: 1 % p }
    }

    pub fn rank(&self) -> usize {
        self.blocks.len()
    }

    pub fn det(&self) -> u32 {
        self.det
    }

    pub fn blocks(&self) -> &[MatrixFp] {
        &self.blocks
    }

    /// Componentwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Self::new(self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect())
    }
}

pub fn embed_split(t: &HilbertTuple) -> MatrixFp {
    let n = t.rank();
    let p = t.blocks[0].p();
    let mut g = MatrixFp::zeros(p, 2 * n, 2 * n);
    for (i, a) in t.blocks.iter().enumerate() {
        let j = 2 * n - 1 - i;
        g.set(i, i, a.get(0, 0));
        g.set(i, j, a.get(0, 1));
        g.set(j, i, a.get(1, 0));
        g.set(j, j, a.get(1, 1));
    }
    g
}

/// Whether gᵀΨg = c·Ψ.
pub fn is_symplectic_similitude(g: &MatrixFp, c: u32) -> bool {
    let n = g.rows() / 2;
    let psi = psi_matrix(n, g.p());
    g.transpose().mul(&psi).mul(g) == psi.scale(c)
}

/// The character Π α_i^{k_i}·c^l of the torus of the Hilbert group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HilbertWeight {
    pub k: Vec<i64>,
    pub l: i64,
}

impl HilbertWeight {
    pub fn scale(&self, d: i64) -> Self {
        Self { k: self.k.iter().map(|x| x * d).collect(), l: self.l * d }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.k.len() != other.k.len() {
            return Err(Error::RankMismatch(self.k.len(), other.k.len()));
        }
        Ok(Self { k: self.k.iter().zip(&other.k).map(|(a, b)| a + b).collect(), l: self.l + other.l })
    }

    /// Value on the torus point (α_1, …, α_n; c).
    pub fn evaluate(&self, alpha: &[u32], c: u32, p: u32) -> u32 {
        self.k
            .iter()
            .zip(alpha)
            .fold(pow_signed(c, self.l, p), |acc, (&k, &a)| mul(acc, pow_signed(a, k, p), p))
    }
}

pub fn restrict_weight(lambda: &Character) -> HilbertWeight {
    HilbertWeight { k: lambda.a().to_vec(), l: lambda.similitude_exponent() }
}

/// Brute force over all (p−1)^{n+1} points of the split torus over F_p.
pub fn trivial_on_torus(w: &HilbertWeight, p: u32) -> bool {
    let n = w.k.len();
    let mut alpha = vec![1u32; n];
    loop {
        for c in 1..p {
            if w.evaluate(&alpha, c, p) != 1 % p {
                return false;
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return true;
            }
            if alpha[i] + 1 < p {
                alpha[i] += 1;
                break;
            }
            alpha[i] = 1;
            i += 1;
        }
    }
}

/// The congruence form of torus triviality: (p−1) divides every exponent.
pub fn trivial_by_congruence(w: &HilbertWeight, p: u32) -> bool {
    let q = p as i64 - 1;
    w.k.iter().all(|k| k.rem_euclid(q) == 0) && w.l.rem_euclid(q) == 0
}

/// Whether d·w gives a nonzero zip section: non-positive and trivial on T_H(F_p).
pub fn is_zip_section(w: &HilbertWeight, p: u32, d: u32) -> bool {
    let dw = w.scale(d as i64);
    dw.k.iter().all(|&k| k <= 0) && trivial_on_torus(&dw, p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Saturated {
    In,
    Out,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HzipVerdict {
    pub k: Vec<i64>,
    pub l: i64,
    pub p: u32,
    pub d_max: u32,
    pub witness_d: Option<u32>,
    pub not_found: bool,
    pub saturated: Saturated,
}

pub fn hzip_cone_check(w: &HilbertWeight, p: u32, d_max: u32) -> Result<HzipVerdict> {
    let p = check_prime(p as u64)?;
    if d_max == 0 {
        return Err(Error::OutOfRange("d_max must be at least 1".into()));
    }
    if w.k.is_empty() {
        return Err(Error::Dimension("empty weight".into()));
    }
    let witness_d = (1..=d_max).find(|&d| is_zip_section(w, p, d));
    // Some k_i > 0 rules out every multiple; otherwise d = p − 1 works.
    let saturated = if w.k.iter().any(|&k| k > 0) {
        Saturated::Out
    } else if is_zip_section(w, p, p - 1) {
        Saturated::In
    } else {
        return Err(Error::Dimension(format!("{w:?}: no section at d = p − 1")));
    };
    Ok(HzipVerdict {
        k: w.k.clone(),
        l: w.l,
        p,
        d_max,
        witness_d,
        not_found: witness_d.is_none(),
        saturated,
    })
}

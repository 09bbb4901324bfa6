//! The Levi representation of highest weight λ as a twisted dual Weyl module.
//!
//! For λ = (a; b) with a_1 ≥ … ≥ a_n put m = max(0, −a_n) and μ = a + m. The
//! GL_n part is realized inside polynomials in the n×n matrix variables
//! x_{r,j}: a semistandard tableau T of shape μ gives the bideterminant
//! Π_c det(x[{1..μ'_c}, col_c(T)]), one minor per column of μ.
//!
//! Convention: (g·f)(x) = f(x·g). This is a left action, it keeps row degrees
//! fixed, and diag(t) multiplies a bideterminant by Π t_j^{content_j(T)}.
//! The twist and the similitude coordinate enter through the scalar
//! det(g)^{−m}·c^{(b−Σa)/2}, so a tableau of content κ has weight
//! (κ − m; b) and the canonical tableau carries λ itself.
//!
//! By Cauchy–Binet a column minor of x·g is Σ_{C'} det(g[C', C])·minor_{C'}(x),
//! which is how [`DualWeylModule::act`] evaluates the substitution.
//!
//! Polynomials are row-multihomogeneous of row degrees μ, and monomials split
//! by column content, which equals the tableau content. Coordinates are
//! extracted separately in each such block.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::characters::Character;
use crate::error::{Error, Result};
use crate::fp_linalg::{check_prime, mul, pow_signed, MatrixFp, SpanSolver, SubspaceFp};
use crate::poly::{exponent, var, Mono, Poly, MAX_EXPONENT, MAX_VARS};

pub const DEFAULT_MONOMIAL_BUDGET: u64 = 2_000_000;

/// Largest rank for which monomials fit the packed representation.
pub const MAX_RANK: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Tableau {
    shape: Vec<usize>,
    rows: Vec<Vec<u8>>,
}

impl Tableau {
    /// Validates shape and semistandardness.
    pub fn new(rows: Vec<Vec<u8>>, n: usize) -> Result<Self> {
        let shape: Vec<usize> = rows.iter().map(Vec::len).collect();
        if shape.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Dimension(format!("row lengths {shape:?} are not a partition")));
        }
        let t = Self { shape, rows };
        if !t.is_semistandard(n) {
            return Err(Error::Dimension(format!("{t} is not semistandard with entries ≤ {n}")));
        }
        Ok(t)
    }

    /// Row i filled with i.
    pub fn canonical(shape: &[usize]) -> Self {
        let rows = shape.iter().enumerate().map(|(i, &l)| vec![(i + 1) as u8; l]).collect();
        Self { shape: shape.to_vec(), rows }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn entry(&self, r: usize, c: usize) -> u8 {
        self.rows[r][c]
    }

    pub fn is_semistandard(&self, n: usize) -> bool {
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                if e == 0 || e as usize > n {
                    return false;
                }
                if c > 0 && row[c - 1] > e {
                    return false;
                }
                if r > 0 && self.rows[r - 1][c] >= e {
                    return false;
                }
            }
        }
        true
    }

    /// Number of entries equal to 1, …, n.
    pub fn content(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for &e in self.rows.iter().flatten() {
            out[e as usize - 1] += 1;
        }
        out
    }

    /// Entries of each column, top to bottom.
    pub fn columns(&self) -> Vec<Vec<u8>> {
        let width = self.shape.first().copied().unwrap_or(0);
        (0..width)
            .map(|c| self.rows.iter().take_while(|r| r.len() > c).map(|r| r[c]).collect())
            .collect()
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| r.iter().map(u8::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

/// Semistandard tableaux of `shape` with entries in 1..n, in row-reading
/// lexicographic order.
pub fn semistandard_tableaux(shape: &[usize], n: usize) -> Vec<Tableau> {
    fn fill(
        shape: &[usize],
        n: u8,
        r: usize,
        c: usize,
        rows: &mut Vec<Vec<u8>>,
        out: &mut Vec<Tableau>,
    ) {
        if r == shape.len() || shape[r] == 0 {
            out.push(Tableau { shape: shape.to_vec(), rows: rows.clone() });
            return;
        }
        if c == shape[r] {
            fill(shape, n, r + 1, 0, rows, out);
            return;
        }
        let left = if c > 0 { rows[r][c - 1] } else { 1 };
        let above = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
        let lo = left.max(above).max(r as u8 + 1);
        for e in lo..=n {
            rows[r].push(e);
            fill(shape, n, r, c + 1, rows, out);
            rows[r].pop();
        }
    }
    let mut out = Vec::new();
    if shape.iter().filter(|&&l| l > 0).count() > n {
        return out;
    }
    let mut rows = vec![Vec::new(); shape.len()];
    fill(shape, n as u8, 0, 0, &mut rows, &mut out);
    for t in &mut out {
        t.rows.iter_mut().zip(shape).for_each(|(row, &l)| debug_assert_eq!(row.len(), l));
    }
    out
}

/// Conjugate partition: column heights.
pub fn conjugate(shape: &[usize]) -> Vec<usize> {
    let width = shape.first().copied().unwrap_or(0);
    (0..width).map(|c| shape.iter().filter(|&&l| l > c).count()).collect()
}

/// Π over cells of (n + content) / hook, computed exactly via prime exponents.
pub fn hook_content_count(shape: &[usize], n: usize) -> u128 {
    let conj = conjugate(shape);
    let mut exps: BTreeMap<u64, i64> = BTreeMap::new();
    let mut factor = |mut x: u64, sign: i64| {
        let mut q = 2;
        while q * q <= x {
            while x % q == 0 {
                *exps.entry(q).or_default() += sign;
                x /= q;
            }
            q += 1;
        }
        if x > 1 {
            *exps.entry(x).or_default() += sign;
        }
    };
    for (i, &len) in shape.iter().enumerate() {
        for j in 0..len {
            let numer = n as i64 + j as i64 - i as i64;
            if numer <= 0 {
                return 0;
            }
            let hook = (len - j - 1) + (conj[j] - i - 1) + 1;
            factor(numer as u64, 1);
            factor(hook as u64, -1);
        }
    }
    exps.into_iter().fold(1u128, |acc, (q, e)| {
        assert!(e >= 0, "hook content quotient is not integral");
        acc * (q as u128).pow(e as u32)
    })
}

/// Size of the row-multihomogeneous monomial space of row degrees `shape`
/// in an n×n array of variables: Π_r C(μ_r + n − 1, n − 1).
pub fn monomial_space_size(shape: &[usize], n: usize) -> u64 {
    shape
        .iter()
        .filter(|&&d| d > 0)
        .map(|&d| binomial((d + n - 1) as u64, (n - 1) as u64))
        .fold(1u64, |acc, x| acc.saturating_mul(x))
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128).min(u64::MAX as u128)
        as u64
}

fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

fn mask_elements(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    // Heap's algorithm; the bool is the sign (true = odd).
    let mut out = Vec::new();
    let mut a: Vec<usize> = (0..k).collect();
    let mut c = vec![0; k];
    let mut odd = false;
    out.push((a.clone(), odd));
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            odd = !odd;
            out.push((a.clone(), odd));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Determinant of the submatrix of `g` with the given rows and columns.
fn minor_of(g: &MatrixFp, rows: &[usize], cols: &[usize]) -> u32 {
    let p = g.p();
    let k = rows.len();
    let mut sub = MatrixFp::zeros(p, k, k);
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            sub.set(i, j, g.get(r, c));
        }
    }
    sub.det()
}

struct WeightBlock {
    content: Vec<usize>,
    members: Vec<usize>,
    monomials: Vec<Mono>,
    solver: SpanSolver,
}

/// The L-module of highest weight λ with an explicit basis.
pub struct DualWeylModule {
    lambda: Character,
    p: u32,
    twist: i64,
    shape: Vec<usize>,
    sim_exp: i64,
    basis: Vec<Tableau>,
    weights: Vec<Character>,
    carrier: Vec<Poly>,
    /// Minor polynomials det(x[{1..k}, C]) indexed by column mask C.
    minors: Vec<Poly>,
    column_masks: Vec<Vec<u32>>,
    blocks: Vec<WeightBlock>,
    block_index: HashMap<Vec<usize>, usize>,
    monomial_space: u64,
}

impl fmt::Debug for DualWeylModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DualWeylModule")
            .field("lambda", &self.lambda)
            .field("p", &self.p)
            .field("twist", &self.twist)
            .field("shape", &self.shape)
            .field("dim", &self.dim())
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleSummary {
    pub lambda: String,
    pub p: u32,
    pub dim: usize,
    pub twist: i64,
    pub shape: Vec<usize>,
    pub sim_exp: i64,
    pub weights: Vec<(String, usize)>,
}

pub fn build_module(lambda: &Character, p: u32) -> Result<DualWeylModule> {
    build_module_with_budget(lambda, p, DEFAULT_MONOMIAL_BUDGET)
}

/// As [`build_module`], refusing when the carrier monomial space exceeds
/// `budget`.
pub fn build_module_with_budget(
    lambda: &Character,
    p: u32,
    budget: u64,
) -> Result<DualWeylModule> {
    let p = check_prime(p as u64)?;
    if !lambda.is_i_dominant() {
        return Err(Error::NotIDominant(lambda.to_string()));
    }
    let n = lambda.rank();
    if n == 0 || n > MAX_RANK {
        return Err(Error::Guard(format!("rank {n} outside 1..={MAX_RANK}")));
    }
    let twist = (-lambda.a()[n - 1]).max(0);
    let shape: Vec<usize> = lambda.a().iter().map(|&x| (x + twist) as usize).collect();
    let monomial_space = monomial_space_size(&shape, n);
    if monomial_space > budget {
        return Err(Error::Budget { monomials: monomial_space, budget });
    }
    if shape[0] > MAX_EXPONENT {
        return Err(Error::Guard(format!("row degree {} exceeds {MAX_EXPONENT}", shape[0])));
    }
    debug_assert!(n * n <= MAX_VARS);

    let minors = minor_polys(n, p);
    let basis = semistandard_tableaux(&shape, n);
    let column_masks: Vec<Vec<u32>> = basis
        .iter()
        .map(|t| {
            t.columns()
                .iter()
                .map(|col| col.iter().fold(0u32, |m, &e| m | 1 << (e - 1)))
                .collect()
        })
        .collect();
    let carrier: Vec<Poly> = column_masks
        .iter()
        .map(|masks| {
            masks.iter().fold(Poly::constant(1, p), |acc, &m| acc.mul(&minors[m as usize], p))
        })
        .collect();
    let weights: Vec<Character> = basis
        .iter()
        .map(|t| {
            let a = t.content(n).iter().map(|&k| k as i64 - twist).collect();
            Character::new(a, lambda.b()).expect("weights share the parity of λ")
        })
        .collect();

    let mut by_content: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, t) in basis.iter().enumerate() {
        by_content.entry(t.content(n)).or_default().push(i);
    }
    let mut blocks = Vec::with_capacity(by_content.len());
    let mut block_index = HashMap::new();
    for (content, members) in by_content {
        let mut monomials: Vec<Mono> = members
            .iter()
            .flat_map(|&i| carrier[i].terms().iter().map(|t| t.0))
            .collect();
        monomials.sort_unstable();
        monomials.dedup();
        let mut mat = MatrixFp::zeros(p, members.len(), monomials.len());
        for (r, &i) in members.iter().enumerate() {
            for &(m, c) in carrier[i].terms() {
                let col = monomials.binary_search(&m).expect("monomial collected above");
                mat.set(r, col, c);
            }
        }
        let solver = SpanSolver::new(&mat).map_err(|e| {
            Error::Dimension(format!("bideterminants of content {content:?} are dependent: {e}"))
        })?;
        block_index.insert(content.clone(), blocks.len());
        blocks.push(WeightBlock { content, members, monomials, solver });
    }

    Ok(DualWeylModule {
        lambda: lambda.clone(),
        p,
        twist,
        shape,
        sim_exp: lambda.similitude_exponent(),
        basis,
        weights,
        carrier,
        minors,
        column_masks,
        blocks,
        block_index,
        monomial_space,
    })
}

fn x_var(n: usize, r: usize, j: usize) -> Mono {
    var(r * n + j)
}

/// det(x[{1..|C|}, C]) for every column mask C (index 0 is the constant 1).
fn minor_polys(n: usize, p: u32) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); 1 << n];
    out[0] = Poly::constant(1, p);
    for k in 1..=n {
        let perms = permutations(k);
        for mask in subsets_of_size(n, k) {
            let cols = mask_elements(mask);
            let terms = perms
                .iter()
                .map(|(sigma, odd)| {
                    let m = (0..k).map(|r| x_var(n, r, cols[sigma[r]])).sum::<Mono>();
                    (m, if *odd { p - 1 } else { 1 % p })
                })
                .collect();
            out[mask as usize] = Poly::from_terms(terms, p);
        }
    }
    out
}

impl DualWeylModule {
    pub fn lambda(&self) -> &Character {
        &self.lambda
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.lambda.rank()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn sim_exp(&self) -> i64 {
        self.sim_exp
    }

    pub fn basis(&self) -> &[Tableau] {
        &self.basis
    }

    pub fn carrier(&self) -> &[Poly] {
        &self.carrier
    }

    pub fn weight_of(&self, i: usize) -> &Character {
        &self.weights[i]
    }

    pub fn weights(&self) -> &[Character] {
        &self.weights
    }

    /// Size of the row-multihomogeneous space the carrier lives in.
    pub fn monomial_space(&self) -> u64 {
        self.monomial_space
    }

    /// Index of the canonical tableau, whose weight is λ.
    pub fn highest_weight_index(&self) -> usize {
        let canon = Tableau::canonical(&self.shape);
        self.basis.iter().position(|t| *t == canon).expect("canonical tableau is semistandard")
    }

    /// Coordinates of a polynomial in the span of the carrier.
    pub fn coordinates(&self, f: &Poly) -> Result<Vec<u32>> {
        let n = self.rank();
        let mut grouped: BTreeMap<usize, Vec<(Mono, u32)>> = BTreeMap::new();
        for &(m, c) in f.terms() {
            let content: Vec<usize> =
                (0..n).map(|j| (0..n).map(|r| exponent(m, r * n + j)).sum()).collect();
            let b = *self.block_index.get(&content).ok_or_else(|| {
                Error::Dimension(format!("monomial of content {content:?} outside the module"))
            })?;
            grouped.entry(b).or_default().push((m, c));
        }
        let mut out = vec![0u32; self.dim()];
        for (b, terms) in grouped {
            let block = &self.blocks[b];
            let mut v = vec![0u32; block.monomials.len()];
            for (m, c) in terms {
                let idx = block.monomials.binary_search(&m).map_err(|_| {
                    Error::Dimension(format!("monomial outside the span in block {:?}", block.content))
                })?;
                v[idx] = c;
            }
            let coeffs = block.solver.solve(&v).ok_or_else(|| {
                Error::Dimension(format!("vector outside the span in block {:?}", block.content))
            })?;
            for (&i, c) in block.members.iter().zip(coeffs) {
                out[i] = c;
            }
        }
        Ok(out)
    }

    /// Matrix of (g, c) ∈ GL_n(F_p) × F_p^× on the tableau basis; column j is
    /// the image of basis vector j.
    pub fn act(&self, g: &MatrixFp, c: u32) -> Result<MatrixFp> {
        let p = self.p;
        let n = self.rank();
        if g.p() != p || g.rows() != n || g.cols() != n {
            return Err(Error::Dimension(format!(
                "expected a {n}×{n} matrix mod {p}, got {}×{} mod {}",
                g.rows(),
                g.cols(),
                g.p()
            )));
        }
        let det = g.det();
        if det == 0 {
            return Err(Error::Singular(p));
        }
        let c = c % p;
        if c == 0 {
            return Err(Error::ZeroScalar(p));
        }
        let scalar = mul(pow_signed(det, -self.twist, p), pow_signed(c, self.sim_exp, p), p);

        // Images of the minors under x ↦ x·g.
        let mut transformed = vec![Poly::zero(); 1 << n];
        transformed[0] = Poly::constant(1, p);
        for k in 1..=n {
            let masks = subsets_of_size(n, k);
            for &mask in &masks {
                let cols = mask_elements(mask);
                let mut acc = Poly::zero();
                for &src in &masks {
                    let coeff = minor_of(g, &mask_elements(src), &cols);
                    if coeff != 0 {
                        acc = acc.add(&self.minors[src as usize].scale(coeff, p), p);
                    }
                }
                transformed[mask as usize] = acc;
            }
        }

        let d = self.dim();
        let mut out = MatrixFp::zeros(p, d, d);
        for (j, masks) in self.column_masks.iter().enumerate() {
            let image = masks
                .iter()
                .fold(Poly::constant(scalar, p), |acc, &m| acc.mul(&transformed[m as usize], p));
            let coords = self.coordinates(&image)?;
            for (i, v) in coords.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    /// Weight χ ↦ coordinate subspace spanned by the basis vectors of weight χ.
    pub fn weight_spaces(&self) -> BTreeMap<Character, SubspaceFp> {
        let mut idx: BTreeMap<Character, Vec<usize>> = BTreeMap::new();
        for (i, w) in self.weights.iter().enumerate() {
            idx.entry(w.clone()).or_default().push(i);
        }
        idx.into_iter()
            .map(|(w, ix)| (w, SubspaceFp::coordinate(self.p, self.dim(), &ix)))
            .collect()
    }

    /// Weight χ ↦ multiplicity.
    pub fn weight_multiplicities(&self) -> BTreeMap<Character, usize> {
        let mut out = BTreeMap::new();
        for w in &self.weights {
            *out.entry(w.clone()).or_insert(0) += 1;
        }
        out
    }

    pub fn summary(&self) -> ModuleSummary {
        ModuleSummary {
            lambda: self.lambda.to_string(),
            p: self.p,
            dim: self.dim(),
            twist: self.twist,
            shape: self.shape.clone(),
            sim_exp: self.sim_exp,
            weights: self
                .weight_multiplicities()
                .into_iter()
                .map(|(w, k)| (w.to_string(), k))
                .collect(),
        }
    }
}

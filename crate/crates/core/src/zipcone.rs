//! Global sections on the ordinary locus: finite-group invariants of the Levi
//! module intersected with its non-positive part.
//!
//! GL_n(F_p) is generated by the elementary matrices I + E_{i,i±1} together
//! with diag(ζ, 1, …, 1) for a primitive root ζ; [`verify_generators`]
//! certifies this by closing the set under multiplication. Invariants are cut
//! out one generator at a time inside the current fixed space, after first
//! restricting to weights fixed by the diagonal torus of GL_n(F_p).

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{pair, Character, RootDatum};
use crate::error::{Error, Result};
use crate::fp_linalg::{check_prime, mul, nullspace, primitive_root, MatrixFp, SubspaceFp};
use crate::weylmod::{build_module_with_budget, DualWeylModule, DEFAULT_MONOMIAL_BUDGET};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InvarianceMode {
    /// Invariance under GL_n(F_p) only.
    #[default]
    #[serde(rename = "GLn_only")]
    GlnOnly,
    /// Invariance under GL_n(F_p) × F_p^×, i.e. additionally (p−1) | sim_exp.
    #[serde(rename = "full_L")]
    FullL,
}

impl fmt::Display for InvarianceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvarianceMode::GlnOnly => "GLn_only",
            InvarianceMode::FullL => "full_L",
        })
    }
}

impl FromStr for InvarianceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "GLn_only" | "gln_only" | "gln" => Ok(Self::GlnOnly),
            "full_L" | "full_l" | "full" => Ok(Self::FullL),
            _ => Err(Error::Parse(format!("unknown mode {s:?} (expected GLn_only or full_L)"))),
        }
    }
}

/// Field names match the JSON and CSV report columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H0Report {
    pub lambda: String,
    pub p: u32,
    pub mode: InvarianceMode,
    pub dim_module: usize,
    pub dim_invariants: usize,
    pub dim_nonpositive: usize,
    pub dim_h0: usize,
    pub witness_d: Option<u32>,
    pub skipped_d: Vec<u32>,
    #[serde(skip)]
    pub generators_checked: String,
}

pub const CSV_HEADER: [&str; 9] = [
    "lambda",
    "p",
    "mode",
    "dim_module",
    "dim_invariants",
    "dim_nonpositive",
    "dim_h0",
    "witness_d",
    "skipped_d",
];

impl H0Report {
    /// One CSV record in the column order of [`CSV_HEADER`].
    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.lambda.clone(),
            self.p.to_string(),
            self.mode.to_string(),
            self.dim_module.to_string(),
            self.dim_invariants.to_string(),
            self.dim_nonpositive.to_string(),
            self.dim_h0.to_string(),
            self.witness_d.map(|d| d.to_string()).unwrap_or_default(),
            self.skipped_d.iter().map(u32::to_string).collect::<Vec<_>>().join(";"),
        ]
    }
}

/// I + E_{i,i+1}, I + E_{i+1,i} for i < n, then diag(ζ, 1, …, 1).
pub fn generating_set(n: usize, p: u32) -> Vec<MatrixFp> {
    let mut gens = Vec::with_capacity(2 * n - 1);
    for i in 0..n.saturating_sub(1) {
        for (r, c) in [(i, i + 1), (i + 1, i)] {
            let mut g = MatrixFp::identity(p, n);
            g.set(r, c, 1);
            gens.push(g);
        }
    }
    let mut d = MatrixFp::identity(p, n);
    d.set(0, 0, primitive_root(p));
    gens.push(d);
    gens
}

pub fn describe_generators(n: usize, p: u32) -> String {
    format!(
        "{} generators of GL_{n}(F_{p}): I+E_(i,i+1), I+E_(i+1,i), diag({},1,...,1)",
        2 * n - 1,
        primitive_root(p)
    )
}

/// Π_{k<n} (p^n − p^k).
pub fn gl_order(n: usize, p: u32) -> u64 {
    let q = (p as u64).pow(n as u32);
    (0..n).map(|k| q - (p as u64).pow(k as u32)).product()
}

/// Closes the generating set under multiplication and compares the orbit
/// size with |GL_n(F_p)|.
pub fn verify_generators(n: usize, p: u32) -> Result<bool> {
    let p = check_prime(p as u64)?;
    if n == 0 || n > 3 || p > 5 {
        return Err(Error::Guard(format!("verify_generators needs 1 ≤ n ≤ 3 and p ≤ 5, got n={n}, p={p}")));
    }
    let gens: Vec<Vec<u8>> = generating_set(n, p).iter().map(flatten).collect();
    let id = flatten(&MatrixFp::identity(p, n));
    let mut seen: HashSet<Vec<u8>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = mul_flat(&x, g, n, p);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(seen.len() as u64 == gl_order(n, p))
}

fn flatten(g: &MatrixFp) -> Vec<u8> {
    (0..g.rows()).flat_map(|r| g.row(r).iter().map(|&x| x as u8)).collect()
}

fn mul_flat(a: &[u8], b: &[u8], n: usize, p: u32) -> Vec<u8> {
    let mut out = vec![0u8; n * n];
    for r in 0..n {
        for c in 0..n {
            let s: u32 = (0..n).map(|k| a[r * n + k] as u32 * b[k * n + c] as u32).sum();
            out[r * n + c] = (s % p) as u8;
        }
    }
    out
}

/// Span of the weight spaces with ⟨χ, α^∨⟩ ≤ 0 for every α ∈ Δ^P.
pub fn nonpositive_part(m: &DualWeylModule) -> SubspaceFp {
    let coroots = RootDatum::new(m.rank()).parabolic_simple_coroots();
    let idx: Vec<usize> = (0..m.dim())
        .filter(|&i| {
            coroots.iter().all(|c| pair(m.weight_of(i), c).expect("same rank") <= 0)
        })
        .collect();
    SubspaceFp::coordinate(m.p(), m.dim(), &idx)
}

/// The vectors of `k` annihilated by the linear map with matrix `a`
/// (acting on column vectors).
pub fn kernel_within(k: &SubspaceFp, a: &MatrixFp) -> SubspaceFp {
    if k.is_zero() {
        return k.clone();
    }
    // Rows of K·Aᵀ are the images of the basis vectors of k.
    let images = k.basis().mul(&a.transpose());
    let coeffs = nullspace(&images.transpose());
    SubspaceFp::span(&coeffs.basis().mul(k.basis()))
}

fn torus_fixed_indices(m: &DualWeylModule) -> Vec<usize> {
    let q = m.p() as i64 - 1;
    (0..m.dim()).filter(|&i| m.weight_of(i).a().iter().all(|x| x.rem_euclid(q) == 0)).collect()
}

pub fn invariants(m: &DualWeylModule, mode: InvarianceMode) -> Result<SubspaceFp> {
    let p = m.p();
    if mode == InvarianceMode::FullL && m.sim_exp().rem_euclid(p as i64 - 1) != 0 {
        return Ok(SubspaceFp::zero(p, m.dim()));
    }
    let mut k = SubspaceFp::coordinate(p, m.dim(), &torus_fixed_indices(m));
    for g in generating_set(m.rank(), p) {
        if k.is_zero() {
            break;
        }
        let a = m.act(&g, 1)?;
        let id = MatrixFp::identity(p, m.dim());
        k = kernel_within(&k, &a.sub(&id));
    }
    Ok(k)
}

/// Automorphic part (all a_i ≤ 0), vanishing part, and the projection onto
/// the vanishing part along the automorphic one.
#[derive(Clone, Debug)]
pub struct AutVanSplit {
    pub aut: SubspaceFp,
    pub van: SubspaceFp,
    pub pr_van: MatrixFp,
}

pub fn aut_van_split(m: &DualWeylModule) -> AutVanSplit {
    let p = m.p();
    let d = m.dim();
    let (aut, van): (Vec<usize>, Vec<usize>) =
        (0..d).partition(|&i| m.weight_of(i).a().iter().all(|&x| x <= 0));
    let mut pr_van = MatrixFp::zeros(p, d, d);
    for &i in &van {
        pr_van.set(i, i, 1);
    }
    AutVanSplit {
        aut: SubspaceFp::coordinate(p, d, &aut),
        van: SubspaceFp::coordinate(p, d, &van),
        pr_van,
    }
}

/// Every subspace computed for one module.
#[derive(Clone, Debug)]
pub struct H0Analysis {
    pub mode: InvarianceMode,
    pub invariants: SubspaceFp,
    pub nonpositive: SubspaceFp,
    pub h0: SubspaceFp,
    pub split: AutVanSplit,
}

pub fn analyze(m: &DualWeylModule, mode: InvarianceMode) -> Result<H0Analysis> {
    let invariants = invariants(m, mode)?;
    let nonpositive = nonpositive_part(m);
    let h0 = intersect_coordinate(&invariants, &nonpositive);
    Ok(H0Analysis { mode, invariants, nonpositive, h0, split: aut_van_split(m) })
}

/// Intersection with a coordinate subspace: the combinations of `k` whose
/// entries vanish off the support of `coord`.
fn intersect_coordinate(k: &SubspaceFp, coord: &SubspaceFp) -> SubspaceFp {
    let d = k.ambient();
    let mut mask = MatrixFp::identity(k.p(), d);
    for &c in coord.pivots() {
        mask.set(c, c, 0);
    }
    kernel_within(k, &mask)
}

impl H0Analysis {
    /// ker(pr_van restricted to the invariants).
    pub fn pr_van_kernel(&self) -> SubspaceFp {
        kernel_within(&self.invariants, &self.split.pr_van)
    }

    /// invariants ∩ V_{≤0} = ker(pr_van|invariants) = invariants ∩ V_aut.
    pub fn kernel_identity_holds(&self) -> bool {
        let ker = self.pr_van_kernel();
        let via_aut = intersect_coordinate(&self.invariants, &self.split.aut);
        self.h0 == ker && ker == via_aut
    }

    pub fn report(&self, m: &DualWeylModule) -> H0Report {
        H0Report {
            lambda: m.lambda().to_string(),
            p: m.p(),
            mode: self.mode,
            dim_module: m.dim(),
            dim_invariants: self.invariants.dim(),
            dim_nonpositive: self.nonpositive.dim(),
            dim_h0: self.h0.dim(),
            witness_d: None,
            skipped_d: Vec::new(),
            generators_checked: describe_generators(m.rank(), m.p()),
        }
    }
}

/// Weights occurring in the support of some vector of `s`.
pub fn support_weights(m: &DualWeylModule, s: &SubspaceFp) -> Vec<Character> {
    let mut out: Vec<Character> = (0..m.dim())
        .filter(|&i| (0..s.dim()).any(|r| s.basis().get(r, i) != 0))
        .map(|i| m.weight_of(i).clone())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Whether each invariant vector's weight support is closed under permuting
/// the a-coordinates. Checked per canonical basis vector.
pub fn invariant_supports_permutation_stable(m: &DualWeylModule, inv: &SubspaceFp) -> bool {
    (0..inv.dim()).all(|r| {
        let support: HashSet<Vec<i64>> = (0..m.dim())
            .filter(|&i| inv.basis().get(r, i) != 0)
            .map(|i| m.weight_of(i).a().to_vec())
            .collect();
        support.iter().all(|a| {
            (0..a.len()).all(|i| {
                (i + 1..a.len()).all(|j| {
                    let mut b = a.clone();
                    b.swap(i, j);
                    support.contains(&b)
                })
            })
        })
    })
}

fn empty_report(lambda: &Character, p: u32, mode: InvarianceMode) -> H0Report {
    H0Report {
        lambda: lambda.to_string(),
        p,
        mode,
        dim_module: 0,
        dim_invariants: 0,
        dim_nonpositive: 0,
        dim_h0: 0,
        witness_d: None,
        skipped_d: Vec::new(),
        generators_checked: describe_generators(lambda.rank(), p),
    }
}

pub fn h0_gzip(lambda: &Character, p: u32, mode: InvarianceMode) -> Result<H0Report> {
    h0_gzip_with_budget(lambda, p, mode, DEFAULT_MONOMIAL_BUDGET)
}

/// Reports dimension 0 for λ that is not I-dominant.
pub fn h0_gzip_with_budget(
    lambda: &Character,
    p: u32,
    mode: InvarianceMode,
    budget: u64,
) -> Result<H0Report> {
    let p = check_prime(p as u64)?;
    if !lambda.is_i_dominant() {
        return Ok(empty_report(lambda, p, mode));
    }
    let m = build_module_with_budget(lambda, p, budget)?;
    Ok(analyze(&m, mode)?.report(&m))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    #[serde(rename = "IN")]
    In { witness: u32 },
    /// Inconclusive: no nonzero section for d ≤ d_max.
    #[serde(rename = "NOT_FOUND_UP_TO")]
    NotFoundUpTo { d_max: u32 },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::In { witness } => write!(f, "IN (witness d={witness})"),
            Verdict::NotFoundUpTo { d_max } => write!(f, "NOT_FOUND_UP_TO({d_max})"),
        }
    }
}

/// Outcome of scanning the multiples d·λ, 1 ≤ d ≤ d_max.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResult {
    pub lambda: Character,
    pub p: u32,
    pub mode: InvarianceMode,
    pub verdict: Verdict,
    pub skipped_d: Vec<u32>,
    /// Reports for the multiples actually computed, ascending in d.
    pub reports: Vec<H0Report>,
    /// Whether the kernel identity held on every module built.
    pub kernel_identity: bool,
    /// |L(F_p)|, an advisory size for witnesses (not a cutoff).
    pub advisory_bound: u64,
}

impl ScanResult {
    pub fn witness(&self) -> Option<u32> {
        match self.verdict {
            Verdict::In { witness } => Some(witness),
            Verdict::NotFoundUpTo { .. } => None,
        }
    }

    /// Summary row for CSV/JSON output.
    pub fn summary_report(&self) -> H0Report {
        let mut r = self
            .reports
            .iter()
            .find(|r| r.dim_h0 > 0)
            .or(self.reports.last())
            .cloned()
            .unwrap_or_else(|| empty_report(&self.lambda, self.p, self.mode));
        r.lambda = self.lambda.to_string();
        r.witness_d = self.witness();
        r.skipped_d = self.skipped_d.clone();
        r
    }
}

pub fn czip_membership_scan(
    lambda: &Character,
    p: u32,
    mode: InvarianceMode,
    d_max: u32,
    budget: u64,
) -> Result<ScanResult> {
    let p = check_prime(p as u64)?;
    if d_max == 0 {
        return Err(Error::OutOfRange("d_max must be at least 1".into()));
    }
    let mut result = ScanResult {
        lambda: lambda.clone(),
        p,
        mode,
        verdict: Verdict::NotFoundUpTo { d_max },
        skipped_d: Vec::new(),
        reports: Vec::new(),
        kernel_identity: true,
        advisory_bound: gl_order(lambda.rank(), p).saturating_mul(p as u64 - 1),
    };
    for d in 1..=d_max {
        let mult = lambda.scale(d as i64);
        if !mult.is_i_dominant() {
            result.reports.push(empty_report(&mult, p, mode));
            continue;
        }
        let m = match build_module_with_budget(&mult, p, budget) {
            Ok(m) => m,
            Err(Error::Budget { .. }) => {
                result.skipped_d.push(d);
                continue;
            }
            Err(e) => return Err(e),
        };
        let analysis = analyze(&m, mode)?;
        result.kernel_identity &= analysis.kernel_identity_holds();
        let mut report = analysis.report(&m);
        if report.dim_h0 > 0 {
            report.witness_d = Some(d);
            result.reports.push(report);
            result.verdict = Verdict::In { witness: d };
            break;
        }
        result.reports.push(report);
    }
    Ok(result)
}

/// How b is chosen for each a in a scan box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BPolicy {
    /// b ∈ {0, 1} with b ≡ Σa (mod 2).
    MinimalParity,
    /// A fixed b; points with the wrong parity are dropped.
    Fixed(i64),
}

impl FromStr for BPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "parity" | "minimal" | "minimal-parity" => Ok(Self::MinimalParity),
            _ => s
                .parse::<i64>()
                .map(Self::Fixed)
                .map_err(|_| Error::Parse(format!("b policy {s:?}: expected 'parity' or an integer"))),
        }
    }
}

/// I-dominant characters with every a_i in [lo, hi], in row-major order
/// (a_1 slowest).
pub fn dominant_box(n: usize, lo: i64, hi: i64, b: BPolicy) -> Vec<Character> {
    let mut out = Vec::new();
    let mut a = vec![lo; n];
    if lo > hi || n == 0 {
        return out;
    }
    loop {
        if a.windows(2).all(|w| w[0] >= w[1]) {
            let ch = match b {
                BPolicy::MinimalParity => Some(Character::with_minimal_parity(a.clone())),
                BPolicy::Fixed(b) => Character::new(a.clone(), b).ok(),
            };
            out.extend(ch);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if a[i] < hi {
                a[i] += 1;
                a[i + 1..].iter_mut().for_each(|x| *x = lo);
                break;
            }
        }
    }
}

/// Runs [`czip_membership_scan`] on each character in parallel; the output
/// order is the input order.
pub fn scan_many(
    lambdas: &[Character],
    p: u32,
    mode: InvarianceMode,
    d_max: u32,
    budget: u64,
) -> Result<Vec<ScanResult>> {
    lambdas
        .par_iter()
        .map(|l| czip_membership_scan(l, p, mode, d_max, budget))
        .collect()
}

/// Scalar by which (g, c) acts on a one-dimensional module of weight λ with
/// λ.a constant: det(g)^{a_1}·c^{sim_exp}.
pub fn scalar_character(lambda: &Character, det: u32, c: u32, p: u32) -> u32 {
    use crate::fp_linalg::pow_signed;
    mul(pow_signed(det, lambda.a()[0], p), pow_signed(c, lambda.similitude_exponent(), p), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp_linalg::pow_signed;
    use crate::weylmod::build_module;

    fn ch(s: &str) -> Character {
        s.parse().unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(gl_order(1, 5), 4);
        assert_eq!(gl_order(2, 2), 6);
        assert_eq!(gl_order(3, 2), 168);
        assert_eq!(gl_order(3, 3), 11232);
        for (n, p) in [(1, 2), (1, 3), (1, 5), (2, 2), (2, 3), (3, 2)] {
            assert!(verify_generators(n, p).unwrap(), "n={n} p={p}");
        }
        assert!(matches!(verify_generators(4, 2), Err(Error::Guard(_))));
        assert!(matches!(verify_generators(2, 7), Err(Error::Guard(_))));
    }

    #[test]
    fn generators_without_the_torus_fail_for_odd_p() {
        // SL_2(F_3) has index 2; the diagonal generator is needed.
        let gens: Vec<Vec<u8>> =
            generating_set(2, 3)[..2].iter().map(flatten).collect();
        let id = flatten(&MatrixFp::identity(3, 2));
        let mut seen: HashSet<Vec<u8>> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = mul_flat(&x, g, 2, 3);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn mode_names_roundtrip() {
        for m in [InvarianceMode::GlnOnly, InvarianceMode::FullL] {
            assert_eq!(m.to_string().parse::<InvarianceMode>().unwrap(), m);
            let json = serde_json::to_string(&m).unwrap();
            assert_eq!(json, format!("\"{m}\""));
        }
    }

    #[test]
    fn nonpositive_examples() {
        let m = build_module(&Character::lambda_hodge(3), 3).unwrap();
        assert_eq!(nonpositive_part(&m).dim(), 3);
        // Sym^2: the monomials free of the last variable
        let m = build_module(&ch("2,0,0,0"), 3).unwrap();
        assert_eq!(nonpositive_part(&m).dim(), 3);
        let m = build_module(&Character::lambda_omega(3).scale(2), 3).unwrap();
        assert_eq!(nonpositive_part(&m).dim(), 1);
        // (1,0,0,1): highest weight line included, weights with a_3 = 1 excluded
        let m = build_module(&ch("1,0,0,1"), 2).unwrap();
        let np = nonpositive_part(&m);
        let hw = m.highest_weight_index();
        assert_eq!(np.dim(), 2);
        let mut e = vec![0; 3];
        e[hw] = 1;
        assert!(np.contains(&e));
    }

    #[test]
    fn invariants_examples() {
        for p in [2, 3, 5] {
            let m = build_module(&Character::zero(3), p).unwrap();
            assert_eq!(invariants(&m, InvarianceMode::GlnOnly).unwrap().dim(), 1);
            let hasse = Character::lambda_omega(3).scale(p as i64 - 1);
            let m = build_module(&hasse, p).unwrap();
            assert_eq!(invariants(&m, InvarianceMode::GlnOnly).unwrap().dim(), 1);
        }
        for p in [3, 5] {
            let m = build_module(&Character::lambda_omega(2), p).unwrap();
            assert_eq!(invariants(&m, InvarianceMode::GlnOnly).unwrap().dim(), 0);
        }
    }

    #[test]
    fn full_l_congruence() {
        // λ_ω^(p−1) has sim_exp = n(p−1), so both modes agree
        let m = build_module(&Character::lambda_omega(2).scale(2), 3).unwrap();
        assert_eq!(invariants(&m, InvarianceMode::FullL).unwrap().dim(), 1);
        // trivial GL part with b = 2: sim_exp = 1, not divisible by 2
        let m = build_module(&ch("0,0,2"), 3).unwrap();
        assert_eq!(invariants(&m, InvarianceMode::GlnOnly).unwrap().dim(), 1);
        assert_eq!(invariants(&m, InvarianceMode::FullL).unwrap().dim(), 0);
    }

    #[test]
    fn invariants_are_fixed_by_random_group_elements() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (lam, p) in [(ch("4,0,0,0"), 2), (ch("0,0,-4,0"), 2), (ch("2,0,0,0"), 3), (ch("0,-2,-2,0"), 3)] {
            let m = build_module(&lam, p).unwrap();
            let inv = invariants(&m, InvarianceMode::GlnOnly).unwrap();
            for _ in 0..5 {
                let g = loop {
                    let data = (0..9).map(|_| rng.gen_range(0..p)).collect();
                    let g = MatrixFp::from_vec(p, 3, 3, data);
                    if g.det() != 0 {
                        break g;
                    }
                };
                let a = m.act(&g, 1).unwrap();
                for r in 0..inv.dim() {
                    let v = inv.basis().row(r);
                    assert_eq!(a.mul_vec(v), v.to_vec());
                }
            }
        }
    }

    #[test]
    fn dickson_invariant_degrees() {
        // Sym^d of the dual standard representation of GL_3(F_2): the first
        // invariant is the Dickson invariant of degree 2^3 − 2^2 = 4.
        for d in 1..=4 {
            let m = build_module(&Character::new(vec![0, 0, -d], d).unwrap(), 2).unwrap();
            let dim = invariants(&m, InvarianceMode::GlnOnly).unwrap().dim();
            assert_eq!(dim, usize::from(d == 4), "d={d}");
        }
    }

    #[test]
    fn h0_examples() {
        for p in [2, 3] {
            let r = h0_gzip(&Character::zero(3), p, InvarianceMode::GlnOnly).unwrap();
            assert!(r.dim_h0 >= 1);
            for n in 1..=3 {
                let hasse = Character::lambda_omega(n).scale(p as i64 - 1);
                for mode in [InvarianceMode::GlnOnly, InvarianceMode::FullL] {
                    assert_eq!(h0_gzip(&hasse, p, mode).unwrap().dim_h0, 1);
                }
            }
        }
        let r = h0_gzip(&ch("1,0,0,1"), 2, InvarianceMode::GlnOnly).unwrap();
        assert_eq!(r.dim_h0, 0);
        assert_eq!(r.dim_module, 3);
        let r = h0_gzip(&ch("0,1,1"), 2, InvarianceMode::GlnOnly).unwrap();
        assert_eq!(r.dim_module, 0);
    }

    #[test]
    fn split_examples() {
        let m = build_module(&Character::lambda_omega(3).scale(2), 5).unwrap();
        assert!(aut_van_split(&m).van.is_zero());
        let m = build_module(&Character::lambda_hodge(3), 5).unwrap();
        assert!(aut_van_split(&m).van.is_zero());
        let m = build_module(&ch("1,0,0,1"), 5).unwrap();
        let s = aut_van_split(&m);
        let mut e = vec![0; 3];
        e[m.highest_weight_index()] = 1;
        assert!(s.van.contains(&e));
        assert_eq!(s.aut.dim() + s.van.dim(), m.dim());
        assert!(s.aut.intersect(&s.van).unwrap().is_zero());
    }

    #[test]
    fn mode_consistency() {
        for p in [3, 5] {
            for lam in dominant_box(2, -3, 1, BPolicy::MinimalParity) {
                let gln = czip_membership_scan(&lam, p, InvarianceMode::GlnOnly, 6, 200_000).unwrap();
                let full = czip_membership_scan(&lam, p, InvarianceMode::FullL, 6, 200_000).unwrap();
                if let Some(wf) = full.witness() {
                    assert!(gln.witness().is_some_and(|wg| wg <= wf), "λ={lam} p={p}");
                }
                if let Some(d) = gln.witness() {
                    let big = lam.scale(d as i64 * (p as i64 - 1));
                    match h0_gzip_with_budget(&big, p, InvarianceMode::FullL, 200_000) {
                        Ok(r) => assert!(r.dim_h0 > 0, "λ={lam} p={p} d={d}"),
                        Err(Error::Budget { .. }) => {}
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_identity_on_small_modules() {
        for lam in dominant_box(3, -2, 2, BPolicy::MinimalParity) {
            for p in [2, 3] {
                let m = build_module(&lam, p).unwrap();
                let an = analyze(&m, InvarianceMode::GlnOnly).unwrap();
                assert!(an.kernel_identity_holds(), "λ={lam} p={p}");
                assert!(invariant_supports_permutation_stable(&m, &an.invariants));
                assert_eq!(an.h0, an.invariants.intersect(&an.nonpositive).unwrap());
            }
        }
    }

    #[test]
    fn scan_examples() {
        let b = DEFAULT_MONOMIAL_BUDGET;
        let r = czip_membership_scan(&Character::lambda_omega(3), 3, InvarianceMode::GlnOnly, 4, b)
            .unwrap();
        assert_eq!(r.verdict, Verdict::In { witness: 2 });
        let r = czip_membership_scan(&Character::zero(2), 5, InvarianceMode::GlnOnly, 3, b).unwrap();
        assert_eq!(r.verdict, Verdict::In { witness: 1 });
        let r = czip_membership_scan(&ch("1,0,0,1"), 2, InvarianceMode::GlnOnly, 4, b).unwrap();
        assert_eq!(r.verdict, Verdict::NotFoundUpTo { d_max: 4 });
        assert!(r.kernel_identity);
        assert_eq!(r.reports.len(), 4);
    }

    #[test]
    fn scan_records_budget_skips() {
        let r = czip_membership_scan(&ch("1,0,0,1"), 2, InvarianceMode::GlnOnly, 3, 20).unwrap();
        // μ = d·(1,0,0): 3, 6, 10 monomials
        assert!(r.skipped_d.is_empty());
        let r = czip_membership_scan(&ch("2,0,0,0"), 2, InvarianceMode::GlnOnly, 3, 20).unwrap();
        assert_eq!(r.skipped_d, vec![3]);
        assert_eq!(r.verdict, Verdict::NotFoundUpTo { d_max: 3 });
    }

    #[test]
    fn box_order() {
        let pts = dominant_box(2, -1, 1, BPolicy::MinimalParity);
        let a: Vec<Vec<i64>> = pts.iter().map(|c| c.a().to_vec()).collect();
        assert_eq!(a, vec![vec![-1, -1], vec![0, -1], vec![0, 0], vec![1, -1], vec![1, 0], vec![1, 1]]);
        assert!(pts.iter().all(|c| c.b() == c.sum_a().rem_euclid(2)));
        let fixed = dominant_box(2, -1, 1, BPolicy::Fixed(0));
        assert!(fixed.iter().all(|c| c.sum_a() % 2 == 0));
        assert_eq!(fixed.len(), 4);
    }

    #[test]
    fn scalar_character_matches_act() {
        let p = 5;
        let lam = Character::lambda_omega(2).scale(3);
        let m = build_module(&lam, p).unwrap();
        let g = MatrixFp::from_rows_i64(p, &[vec![2, 1], vec![1, 4]]);
        let a = m.act(&g, 3).unwrap();
        assert_eq!(a.get(0, 0), scalar_character(&lam, g.det(), 3, p));
        assert_eq!(a.get(0, 0), mul(pow_signed(g.det(), -3, p), pow_signed(3, 6, p), p));
    }
}

//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zipcone::characters::Character;
use zipcone::fp_linalg::{inv, mul, MatrixFp};
use zipcone::hilbert::{embed_split, hzip_cone_check, psi_matrix, HilbertTuple, HilbertWeight, Saturated};
use zipcone::strata::build_poset;
use zipcone::symtrans::{annihilation_check, norm, sym_transform, trace, FiniteAction, SymElement};
use zipcone::weyl::{enumerate_iw, WeylElement};
use zipcone::weylmod::build_module;
use zipcone::zipcone::{
    analyze, czip_membership_scan, generating_set, gl_order, verify_generators, InvarianceMode,
    ScanResult,
};

const LIMIT_WEYL: Duration = Duration::from_secs(1);
const LIMIT_DIMENSIONS: Duration = Duration::from_secs(60);
const LIMIT_GENERATORS: Duration = Duration::from_secs(30);
const LIMIT_VANISHING: Duration = Duration::from_secs(30 * 60);
const LIMIT_HILBERT: Duration = Duration::from_secs(10);
const LIMIT_SYMTRANS: Duration = Duration::from_secs(60);

/// Monomial budget for the vanishing-direction scan.
const VANISHING_BUDGET: u64 = 1_000_000;
/// Multiples d·λ scanned for every violating λ.
const VANISHING_D_ALL: u32 = 4;
/// Multiples scanned when max |a_i| ≤ 1.
const VANISHING_D_SMALL: u32 = 8;
const WITNESS_D_MAX: u32 = 4;
const EMBEDDING_SAMPLES: usize = 100;
const SYMTRANS_INSTANCES: usize = 100;
const SEED: u64 = 20240611;

type Outcome = Result<String, String>;

/// h0 > 0 observations and kernel-identity results shared across criteria.
#[derive(Default)]
struct Ledger {
    sections: Vec<(Character, u32)>,
    kernel_checks: usize,
    kernel_failures: Vec<String>,
}

impl Ledger {
    fn record_scan(&mut self, s: &ScanResult) {
        for r in &s.reports {
            if r.dim_h0 > 0 {
                self.sections.push((r.lambda.parse().expect("report weight"), s.p));
            }
        }
        self.kernel_checks += s.reports.iter().filter(|r| r.dim_module > 0).count();
        if !s.kernel_identity {
            self.kernel_failures.push(format!("{} p={}", s.lambda, s.p));
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

/// Word lengths of all of W by breadth-first search over simple reflections.
fn bfs_lengths(n: usize) -> HashMap<WeylElement, usize> {
    let gens: Vec<WeylElement> = (1..=n).map(|i| WeylElement::simple_reflection(n, i)).collect();
    let mut dist = HashMap::new();
    dist.insert(WeylElement::identity(n), 0);
    let mut queue = VecDeque::from([WeylElement::identity(n)]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for s in &gens {
            let v = w.compose(s);
            if !dist.contains_key(&v) {
                dist.insert(v.clone(), d + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for n in 1..=6 {
        let lengths = bfs_lengths(n);
        ensure(lengths.len() == (1 << n) * (1..=n).product::<usize>(), || {
            format!("n={n}: |W| = {}", lengths.len())
        })?;
        let mut oracle: Vec<&WeylElement> = lengths
            .iter()
            .filter(|(w, &l)| {
                (1..n).all(|i| lengths[&WeylElement::simple_reflection(n, i).compose(w)] > l)
            })
            .map(|(w, _)| w)
            .collect();
        oracle.sort();
        let mut iw = enumerate_iw(n);
        iw.sort();
        ensure(iw.len() == 1 << n, || format!("n={n}: |^I W| = {}", iw.len()))?;
        ensure(oracle.len() == iw.len() && oracle.iter().zip(&iw).all(|(a, b)| *a == b), || {
            format!("n={n}: coset representatives differ from brute force")
        })?;
        for w in &iw {
            ensure(w.length() == lengths[w], || format!("n={n}: length of {w}"))?;
        }
        let z = WeylElement::frame(n);
        ensure(lengths[&z] == n * (n + 1) / 2 && z.length() == n * (n + 1) / 2, || {
            format!("n={n}: ℓ(w_0,I w_0) = {}", lengths[&z])
        })?;
        if n == 3 {
            let mut ls: Vec<usize> = iw.iter().map(|w| lengths[w]).collect();
            ls.sort();
            ensure(ls == [0, 1, 2, 3, 3, 4, 5, 6], || format!("n=3 lengths {ls:?}"))?;
        }
    }
    let t = within(start, LIMIT_WEYL)?;
    Ok(format!("n=1..6 against BFS over W, {t:.2?}"))
}

fn partitions(total: usize, max_part: usize, parts: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    if parts == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(total)).rev() {
        for mut rest in partitions(total - first, first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Counts of semistandard fillings by content, over all n^|μ| fillings.
fn filling_oracle(shape: &[usize], n: usize) -> BTreeMap<Vec<usize>, usize> {
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l]).collect();
    let mut counts = BTreeMap::new();
    let total = n.pow(cells.len() as u32);
    for code in 0..total {
        let mut x = code;
        for &(r, c) in &cells {
            grid[r][c] = x % n + 1;
            x /= n;
        }
        let ok = cells.iter().all(|&(r, c)| {
            (c == 0 || grid[r][c - 1] <= grid[r][c]) && (r == 0 || grid[r - 1][c] < grid[r][c])
        });
        if ok {
            let mut content = vec![0; n];
            for &(r, c) in &cells {
                content[grid[r][c] - 1] += 1;
            }
            *counts.entry(content).or_insert(0) += 1;
        }
    }
    counts
}

/// Π (n + content) / Π hook, in exact integer arithmetic.
fn hook_content_oracle(shape: &[usize], n: usize) -> u128 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for (r, &len) in shape.iter().enumerate() {
        for c in 0..len {
            num *= (n as i64 + c as i64 - r as i64) as u128;
            let arm = len - c - 1;
            let leg = shape[r + 1..].iter().filter(|&&l| l > c).count();
            den *= (arm + leg + 1) as u128;
        }
    }
    assert_eq!(num % den, 0);
    num / den
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for n in 1..=3 {
        for size in 0..=8 {
            for mu in partitions(size, size, n) {
                let mut a: Vec<i64> = mu.iter().map(|&x| x as i64).collect();
                a.resize(n, 0);
                let lam = Character::with_minimal_parity(a);
                let kostka = filling_oracle(&mu, n);
                let ssyt: usize = kostka.values().sum();
                let hook = hook_content_oracle(&mu, n);
                ensure(ssyt as u128 == hook, || format!("oracles disagree at {mu:?}, n={n}"))?;
                for p in [2, 3] {
                    let m = build_module(&lam, p).map_err(|e| e.to_string())?;
                    ensure(m.dim() == ssyt, || {
                        format!("dim {} ≠ {ssyt} at μ={mu:?}, n={n}, p={p}", m.dim())
                    })?;
                    let mults: BTreeMap<Vec<usize>, usize> = m
                        .weight_multiplicities()
                        .into_iter()
                        .map(|(w, k)| (w.a().iter().map(|&x| x as usize).collect(), k))
                        .collect();
                    ensure(mults == kostka, || {
                        format!("weight multiplicities differ at μ={mu:?}, n={n}, p={p}")
                    })?;
                    cases += 1;
                }
            }
        }
    }
    let t = within(start, LIMIT_DIMENSIONS)?;
    Ok(format!("{cases} (μ, n, p) cases, {t:.2?}"))
}

/// |GL_n(F_p)| by enumerating every matrix.
fn brute_force_gl_order(n: usize, p: u32) -> u64 {
    let entries = n * n;
    let total = (p as u64).pow(entries as u32);
    let mut count = 0;
    for code in 0..total {
        let mut x = code;
        let data = (0..entries)
            .map(|_| {
                let v = (x % p as u64) as u32;
                x /= p as u64;
                v
            })
            .collect();
        if MatrixFp::from_vec(p, n, n, data).det() != 0 {
            count += 1;
        }
    }
    count
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    for (n, p) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)] {
        ensure(verify_generators(n, p).map_err(|e| e.to_string())?, || {
            format!("generators fail for n={n}, p={p}")
        })?;
        let brute = brute_force_gl_order(n, p);
        ensure(gl_order(n, p) == brute, || format!("|GL_{n}(F_{p})| = {brute}"))?;
    }
    ensure(brute_force_gl_order(3, 2) == 168 && brute_force_gl_order(3, 3) == 11232, || {
        "GL_3 orders".into()
    })?;
    let t = within(start, LIMIT_GENERATORS)?;
    Ok(format!("6 (n, p) pairs, |GL_3(F_2)|=168, |GL_3(F_3)|=11232, {t:.2?}"))
}

fn exact_h0(lam: &Character, p: u32, mode: InvarianceMode, ledger: &mut Ledger) -> Result<usize, String> {
    let m = build_module(lam, p).map_err(|e| e.to_string())?;
    let an = analyze(&m, mode).map_err(|e| e.to_string())?;
    ledger.kernel_checks += 1;
    let ker = an.pr_van_kernel();
    if !(an.h0 == ker && an.kernel_identity_holds()) {
        ledger.kernel_failures.push(format!("{lam} p={p} {mode}"));
    }
    let h0 = an.h0.dim();
    if h0 > 0 {
        ledger.sections.push((lam.clone(), p));
    }
    Ok(h0)
}

fn criterion_4(ledger: &mut Ledger) -> Outcome {
    let mut cases = 0;
    for n in 1..=3 {
        for p in [2, 3] {
            let lam = Character::lambda_omega(n).scale(p as i64 - 1);
            for mode in [InvarianceMode::GlnOnly, InvarianceMode::FullL] {
                let h0 = exact_h0(&lam, p, mode, ledger)?;
                ensure(h0 == 1, || format!("h0({lam}) = {h0} for p={p}, {mode}"))?;
                cases += 1;
            }
        }
        let lam = Character::lambda_omega(n);
        let h0 = exact_h0(&lam, 3, InvarianceMode::GlnOnly, ledger)?;
        ensure(h0 == 0, || format!("h0({lam}) = {h0} for p=3"))?;
        cases += 1;
    }
    Ok(format!("{cases} exact values"))
}

fn violates_pair(a: &[i64], p: i64) -> bool {
    p * p * a[0] + a[1] + p * a[2] > 0 || p * a[0] + p * p * a[1] + a[2] > 0
}

fn criterion_5(ledger: &mut Ledger) -> Outcome {
    let start = Instant::now();
    let p = 2;
    let mut points = 0;
    let mut modules = 0;
    let mut exceptions = Vec::new();
    let mut max_clean = u32::MAX;
    for a1 in -3..=3i64 {
        for a2 in -3..=a1 {
            for a3 in -3..=a2 {
                let a = vec![a1, a2, a3];
                if !violates_pair(&a, p as i64) {
                    continue;
                }
                let small = a.iter().all(|x| x.abs() <= 1);
                let d_max = if small { VANISHING_D_SMALL } else { VANISHING_D_ALL };
                let lam = Character::with_minimal_parity(a.clone());
                let scan = czip_membership_scan(&lam, p, InvarianceMode::GlnOnly, d_max, VANISHING_BUDGET)
                    .map_err(|e| e.to_string())?;
                ledger.record_scan(&scan);
                points += 1;
                modules += scan.reports.len();
                if let Some(d) = scan.witness() {
                    exceptions.push(format!("{lam} d={d}"));
                }
                let first_skip = scan.skipped_d.first().copied().unwrap_or(d_max + 1);
                max_clean = max_clean.min(first_skip - 1);
            }
        }
    }
    ensure(exceptions.is_empty(), || format!("nonzero sections at {exceptions:?}"))?;
    ensure(max_clean >= 2, || format!("only d ≤ {max_clean} fit the budget everywhere"))?;
    let t = within(start, LIMIT_VANISHING)?;
    Ok(format!(
        "{points} violating weights, {modules} modules, every weight clean up to d={max_clean}, {t:.2?}"
    ))
}

fn criterion_6(ledger: &mut Ledger) -> Outcome {
    let p = 2;
    let q = p as i64 - 1;
    let samples = [
        Character::lambda_omega(3).scale(q),
        Character::lambda_omega(3).scale(2 * q),
        "-2,-2,-2,6".parse::<Character>().unwrap().scale(q),
        Character::lambda_omega(3).scale(3 * q),
    ];
    let mut witnesses = Vec::new();
    for lam in &samples {
        ensure(lam.in_zip3_explicit(p).map_err(|e| e.to_string())?, || format!("{lam} outside cone"))?;
        let scan = czip_membership_scan(lam, p, InvarianceMode::GlnOnly, WITNESS_D_MAX, VANISHING_BUDGET)
            .map_err(|e| e.to_string())?;
        ledger.record_scan(&scan);
        let d = scan.witness().ok_or_else(|| format!("{lam}: {}", scan.verdict))?;
        witnesses.push(format!("{lam}→d={d}"));
    }
    Ok(witnesses.join(", "))
}

fn criterion_7(ledger: &Ledger) -> Outcome {
    let bad: Vec<String> = ledger
        .sections
        .iter()
        .filter(|(lam, p)| !appro_oracle(lam.a(), *p as i64))
        .map(|(lam, p)| format!("{lam} p={p}"))
        .collect();
    ensure(bad.is_empty(), || format!("outside the approximation cone: {bad:?}"))?;
    ensure(!ledger.sections.is_empty(), || "no sections observed".into())?;
    Ok(format!("{} weights with h0 > 0, all inside", ledger.sections.len()))
}

/// Σ_{i≤j} a_i + (1/p) Σ_{i>j} a_i ≤ 0 for every j, scaled by p.
fn appro_oracle(a: &[i64], p: i64) -> bool {
    (1..=a.len()).all(|j| p * a[..j].iter().sum::<i64>() + a[j..].iter().sum::<i64>() <= 0)
}

fn criterion_8(ledger: &Ledger) -> Outcome {
    ensure(ledger.kernel_failures.is_empty(), || format!("fails at {:?}", ledger.kernel_failures))?;
    Ok(format!("{} modules, exact subspace equality", ledger.kernel_checks))
}

/// Whether d·(k, l) is non-positive and trivial on every point of the torus.
fn hilbert_oracle(k: &[i64], l: i64, p: u32, d: i64) -> bool {
    if k.iter().any(|&x| d * x > 0) {
        return false;
    }
    let pw = |base: u32, e: i64| {
        let e = e.rem_euclid(p as i64 - 1) as u32;
        (0..e).fold(1 % p, |acc, _| mul(acc, base, p))
    };
    for c in 1..p {
        for x in 1..p {
            for y in 1..p {
                let v = mul(mul(pw(x, d * k[0]), pw(y, d * k[1]), p), pw(c, d * l), p);
                if v != 1 {
                    return false;
                }
            }
        }
    }
    true
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for p in [2u32, 3] {
        let d_max = 2 * (p - 1);
        for k1 in -3..=3i64 {
            for k2 in -3..=3i64 {
                for l in -2..=2i64 {
                    let v = hzip_cone_check(&HilbertWeight { k: vec![k1, k2], l }, p, d_max)
                        .map_err(|e| e.to_string())?;
                    let oracle_d = (1..=d_max as i64).find(|&d| hilbert_oracle(&[k1, k2], l, p, d));
                    let nonpos = k1 <= 0 && k2 <= 0;
                    ensure((v.saturated == Saturated::In) == nonpos, || {
                        format!("saturated verdict at k=({k1},{k2}), l={l}, p={p}")
                    })?;
                    ensure(oracle_d.is_some() == nonpos, || {
                        format!("brute force disagrees at k=({k1},{k2}), l={l}, p={p}")
                    })?;
                    ensure(v.witness_d.map(i64::from) == oracle_d, || {
                        format!("witness {:?} vs {oracle_d:?} at k=({k1},{k2}), l={l}", v.witness_d)
                    })?;
                    cases += 1;
                }
            }
        }
    }
    let t = within(start, LIMIT_HILBERT)?;
    Ok(format!("{cases} weights, {t:.2?}"))
}

fn random_tuple(rng: &mut ChaCha8Rng, n: usize, p: u32) -> HilbertTuple {
    let det = rng.gen_range(1..p);
    let blocks = (0..n)
        .map(|_| loop {
            let m = MatrixFp::from_vec(p, 2, 2, (0..4).map(|_| rng.gen_range(0..p)).collect());
            let dm = m.det();
            if dm != 0 {
                let s = mul(det, inv(dm, p), p);
                let mut out = m.clone();
                out.set(0, 0, mul(m.get(0, 0), s, p));
                out.set(0, 1, mul(m.get(0, 1), s, p));
                break out;
            }
        })
        .collect();
    HilbertTuple::new(blocks).expect("equal determinants")
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (n, p) in [(2, 3), (3, 2), (3, 5)] {
        let psi = psi_matrix(n, p);
        for i in 0..EMBEDDING_SAMPLES {
            let s = random_tuple(&mut rng, n, p);
            let t = random_tuple(&mut rng, n, p);
            let g = embed_split(&s);
            ensure(g.transpose().mul(&psi).mul(&g) == psi.scale(s.det()), || {
                format!("gᵀΨg ≠ det·Ψ, n={n}, p={p}, sample {i}")
            })?;
            let st = s.mul(&t).map_err(|e| e.to_string())?;
            ensure(embed_split(&st) == g.mul(&embed_split(&t)), || {
                format!("not multiplicative, n={n}, p={p}, sample {i}")
            })?;
        }
    }
    Ok(format!("{EMBEDDING_SAMPLES} pairs per (n, p)"))
}

fn criterion_11() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let lam = Character::lambda_hodge(2);
    let mut instances = 0;
    for (p, order) in [(2u32, 6usize), (3, 48)] {
        let m = build_module(&lam, p).map_err(|e| e.to_string())?;
        let gens: Vec<MatrixFp> = generating_set(2, p)
            .iter()
            .map(|g| m.act(g, 1))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let group = FiniteAction::generated_by(p, m.dim(), &gens).map_err(|e| e.to_string())?;
        ensure(group.order() == order, || format!("image of GL_2(F_{p}) has order {}", group.order()))?;
        for _ in 0..SYMTRANS_INSTANCES {
            let x: Vec<u32> = (0..m.dim()).map(|_| rng.gen_range(0..p)).collect();
            let h = &group.elements()[rng.gen_range(0..order)];
            let hx = h.mul_vec(&x);
            ensure(annihilation_check(&group, &x).map_err(|e| e.to_string())?, || {
                format!("annihilation fails at x={x:?}, p={p}")
            })?;
            for d in 1..=order {
                let s = sym_transform(&group, &x, d).map_err(|e| e.to_string())?;
                let s_hx = sym_transform(&group, &hx, d).map_err(|e| e.to_string())?;
                ensure(s == s_hx && s.act(h) == s, || format!("s^({d}) not invariant at x={x:?}, p={p}"))?;
            }
            let s1 = sym_transform(&group, &x, 1).map_err(|e| e.to_string())?;
            let tr = SymElement::linear(&trace(&group, &x).map_err(|e| e.to_string())?, p);
            ensure(s1 == tr.neg(p), || format!("s^(1) ≠ −trace at x={x:?}"))?;
            let sn = sym_transform(&group, &x, order).map_err(|e| e.to_string())?;
            let nm = norm(&group, &x).map_err(|e| e.to_string())?;
            let signed = if order % 2 == 0 { nm } else { nm.neg(p) };
            ensure(sn == signed, || format!("s^(N) ≠ ±norm at x={x:?}"))?;
            instances += 1;
        }
    }
    let t = within(start, LIMIT_SYMTRANS)?;
    Ok(format!("{instances} instances over N=6 and N=48, {t:.2?}"))
}

fn criterion_12() -> Outcome {
    let p2 = build_poset(2).map_err(|e| e.to_string())?;
    ensure(p2.len() == 4 && p2.is_total(), || "n=2 poset is not a 4-chain".into())?;
    for n in [2usize, 3] {
        let poset = build_poset(n).map_err(|e| e.to_string())?;
        ensure(poset.is_reflexive() && poset.is_antisymmetric() && poset.is_transitive(), || {
            format!("n={n}: closure relation is not a partial order")
        })?;
    }
    let p3 = build_poset(3).map_err(|e| e.to_string())?;
    let n = 3;
    let dim_g = 2 * n * n + n + 1;
    let dim_p = dim_g - n * (n + 1) / 2;
    let top = p3.maximal();
    let bottom = p3.minimal();
    ensure(top.len() == 1 && p3.dim(top[0]) == dim_g && dim_g == 22, || "n=3 top".into())?;
    ensure(bottom.len() == 1 && p3.dim(bottom[0]) == dim_p && dim_p == 16, || "n=3 bottom".into())?;
    Ok("n=2 chain of 4, n=3 dims 22 and 16".into())
}

fn main() {
    let mut ledger = Ledger::default();
    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "Weyl combinatorics", criterion_1()),
        (2, "module dimensions", criterion_2()),
        (3, "generator certification", criterion_3()),
        (4, "Hasse-weight membership", criterion_4(&mut ledger)),
        (5, "n=3 cone, vanishing direction", criterion_5(&mut ledger)),
        (6, "n=3 cone, witness direction", criterion_6(&mut ledger)),
        (7, "approximation-cone containment", criterion_7(&ledger)),
        (8, "kernel identity", criterion_8(&ledger)),
        (9, "Hilbert split cone", criterion_9()),
        (10, "embedding soundness", criterion_10()),
        (11, "symmetric transforms", criterion_11()),
        (12, "strata poset", criterion_12()),
    ];
    let mut failed = 0;
    for (i, name, r) in &results {
        match r {
            Ok(detail) => println!("PASS criterion {i:>2} {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {i:>2} {name}: {why}");
            }
        }
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

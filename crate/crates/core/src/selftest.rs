//! Property suites run by `zipcone selftest`, one per library module.
//!
//! Each suite returns named checks; the report depends only on the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characters::{pair, Character, Coroot, RootDatum};
use crate::error::Result;
use crate::fp_linalg::{nullspace, primitive_root, MatrixFp, SubspaceFp};
use crate::hilbert::{
    embed_split, hzip_cone_check, is_symplectic_similitude, trivial_by_congruence,
    trivial_on_torus, HilbertTuple, HilbertWeight, Saturated,
};
use crate::strata::build_poset;
use crate::symtrans::{annihilation_check, sym_transform, FiniteAction};
use crate::weyl::{all_elements, bruhat_leq, enumerate_iw, preceq, WeylElement};
use crate::weylmod::{build_module, hook_content_count, semistandard_tableaux};
use crate::zipcone::{
    analyze, dominant_box, generating_set, invariant_supports_permutation_stable,
    verify_generators, BPolicy, InvarianceMode,
};

pub const SUITES: [&str; 8] =
    ["weyl", "characters", "fp_linalg", "weylmod", "zipcone", "strata", "symtrans", "hilbert"];

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check { name: name.into(), passed });
    }
}

pub fn run_suite(name: &str, seed: u64) -> Result<Option<SuiteOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Recorder { checks: Vec::new() };
    match name {
        "weyl" => weyl_suite(&mut r, &mut rng)?,
        "characters" => characters_suite(&mut r, &mut rng)?,
        "fp_linalg" => linalg_suite(&mut r, &mut rng)?,
        "weylmod" => weylmod_suite(&mut r, &mut rng)?,
        "zipcone" => zipcone_suite(&mut r)?,
        "strata" => strata_suite(&mut r)?,
        "symtrans" => symtrans_suite(&mut r, &mut rng)?,
        "hilbert" => hilbert_suite(&mut r, &mut rng)?,
        _ => return Ok(None),
    }
    Ok(Some(SuiteOutcome { suite: name.to_string(), checks: r.checks }))
}

fn random_invertible(rng: &mut ChaCha8Rng, p: u32, n: usize) -> MatrixFp {
    loop {
        let g = MatrixFp::from_vec(p, n, n, (0..n * n).map(|_| rng.gen_range(0..p)).collect());
        if g.det() != 0 {
            return g;
        }
    }
}

fn weyl_suite(r: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    for n in 1..=6 {
        let iw = enumerate_iw(n);
        r.check(format!("|^I W| = 2^{n}"), iw.len() == 1 << n);
        r.check(
            format!("length of the longest representative, n={n}"),
            WeylElement::frame(n).length() == n * (n + 1) / 2,
        );
    }
    let mut lengths: Vec<usize> = enumerate_iw(3).iter().map(WeylElement::length).collect();
    lengths.sort();
    r.check("n=3 length multiset", lengths == [0, 1, 2, 3, 3, 4, 5, 6]);
    for n in 2..=3 {
        let iw = enumerate_iw(n);
        let mut partial = true;
        let mut refines = true;
        for x in &iw {
            partial &= preceq(x, x)?;
            for y in &iw {
                let xy = preceq(x, y)?;
                partial &= !(xy && x != y && preceq(y, x)?);
                refines &= !bruhat_leq(x, y)? || xy;
            }
        }
        r.check(format!("closure order is a partial order, n={n}"), partial);
        r.check(format!("closure order contains Bruhat, n={n}"), refines);
    }
    let all = all_elements(4);
    let mut ok = true;
    for _ in 0..50 {
        let w = &all[rng.gen_range(0..all.len())];
        ok &= w.length() == w.inverse().length() && w.reduced_word().len() == w.length();
    }
    r.check("random W(C_4): ℓ(w) = ℓ(w⁻¹) = |reduced word|", ok);
    Ok(())
}

fn characters_suite(r: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    let roots = RootDatum::new(3);
    let ws = all_elements(3);
    let (mut equiv, mut nested, mut parity) = (true, true, true);
    for _ in 0..100 {
        let a: Vec<i64> = (0..3).map(|_| rng.gen_range(-6..=6)).collect();
        let chi = Character::with_minimal_parity(a);
        let w = &ws[rng.gen_range(0..ws.len())];
        let cor: &Coroot = &roots.positive_roots()[rng.gen_range(0..9)].coroot;
        equiv &= pair(&chi.weyl_act(w), &cor.weyl_act(w))? == pair(&chi, cor)?;
        parity &= Character::new(chi.weyl_act(w).a().to_vec(), chi.b()).is_ok();
        for p in [2, 3, 5] {
            if chi.is_i_dominant() && chi.in_zip3_explicit(p)? {
                nested &= chi.in_appro_cone(p);
            }
        }
    }
    r.check("pairing is W-equivariant", equiv);
    r.check("W action preserves parity", parity);
    r.check("explicit n=3 cone inside the approximation cone", nested);
    r.check("dim G = 22, dim P = 16 for n=3", roots.dim_g() == 22 && roots.dim_p() == 16);
    Ok(())
}

fn linalg_suite(r: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    let (mut rn, mut inter, mut inv) = (true, true, true);
    for _ in 0..30 {
        let p = [2u32, 3, 5, 7][rng.gen_range(0..4)];
        let rows = rng.gen_range(1..6);
        let cols = rng.gen_range(1..6);
        let m = MatrixFp::from_vec(p, rows, cols, (0..rows * cols).map(|_| rng.gen_range(0..p)).collect());
        rn &= m.rank() + nullspace(&m).dim() == cols;
        let a = SubspaceFp::span(&m);
        let m2 = MatrixFp::from_vec(p, rows, cols, (0..rows * cols).map(|_| rng.gen_range(0..p)).collect());
        let b = SubspaceFp::span(&m2);
        let i = a.intersect(&b)?;
        let s = a.sum(&b)?;
        inter &= i.is_subspace_of(&a) && i.is_subspace_of(&b) && i.dim() + s.dim() == a.dim() + b.dim();
        let g = random_invertible(rng, p, rows);
        inv &= g.mul(&g.inverse()?) == MatrixFp::identity(p, rows);
    }
    r.check("rank + nullity = columns", rn);
    r.check("dim(A ∩ B) + dim(A + B) = dim A + dim B", inter);
    r.check("g·g⁻¹ = I", inv);
    Ok(())
}

fn weylmod_suite(r: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut dims = true;
    for m1 in 0..=4usize {
        for m2 in 0..=m1 {
            for m3 in 0..=m2 {
                let shape = [m1, m2, m3];
                dims &= hook_content_count(&shape, 3) == semistandard_tableaux(&shape, 3).len() as u128;
            }
        }
    }
    r.check("hook content formula = tableau count, |μ_i| ≤ 4", dims);
    for (lam, p) in [("1,0,1", 2u32), ("2,1,0,1", 3), ("0,-1,-1,0", 2)] {
        let lam: Character = lam.parse()?;
        let m = build_module(&lam, p)?;
        let n = lam.rank();
        let mut hom = true;
        for _ in 0..20 {
            let g = random_invertible(rng, p, n);
            let h = random_invertible(rng, p, n);
            hom &= m.act(&g.mul(&h), 1)? == m.act(&g, 1)?.mul(&m.act(&h, 1)?);
        }
        r.check(format!("homomorphism on 20 random pairs, λ={lam}, p={p}"), hom);
        r.check(
            format!("highest weight has multiplicity one, λ={lam}"),
            m.weight_multiplicities().get(&lam) == Some(&1),
        );
    }
    let lam: Character = "2,1,0,1".parse()?;
    r.check(
        "weights independent of p",
        build_module(&lam, 2)?.weight_multiplicities() == build_module(&lam, 3)?.weight_multiplicities(),
    );
    let p = 5;
    let m = build_module(&lam, p)?;
    let z = primitive_root(p);
    let t = MatrixFp::diag(p, &[z, 1, 1]);
    let a = m.act(&t, 1)?;
    let torus = (0..m.dim()).all(|i| {
        a.get(i, i) == crate::fp_linalg::pow_signed(z, m.weight_of(i).a()[0], p)
    });
    r.check("torus element scales basis by its weight", torus);
    Ok(())
}

fn zipcone_suite(r: &mut Recorder) -> Result<()> {
    for (n, p) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)] {
        r.check(format!("generators give GL_{n}(F_{p})"), verify_generators(n, p)?);
    }
    for p in [2u32, 3] {
        for n in 1..=3 {
            let hasse = Character::lambda_omega(n).scale(p as i64 - 1);
            let rep = crate::zipcone::h0_gzip(&hasse, p, InvarianceMode::GlnOnly)?;
            r.check(format!("Hasse weight has a section, n={n}, p={p}"), rep.dim_h0 == 1);
        }
    }
    let (mut kernel, mut stable, mut contained) = (true, true, true);
    for lam in dominant_box(3, -2, 1, BPolicy::MinimalParity) {
        let m = build_module(&lam, 2)?;
        let an = analyze(&m, InvarianceMode::GlnOnly)?;
        kernel &= an.kernel_identity_holds();
        stable &= invariant_supports_permutation_stable(&m, &an.invariants);
        contained &= an.h0.is_zero() || lam.in_appro_cone(2);
    }
    r.check("kernel identity on the box [-2,1]^3, p=2", kernel);
    r.check("invariant supports are permutation stable", stable);
    r.check("nonzero sections lie in the approximation cone", contained);
    Ok(())
}

fn strata_suite(r: &mut Recorder) -> Result<()> {
    for n in 1..=6 {
        let poset = build_poset(n)?;
        let order = poset.is_reflexive() && poset.is_antisymmetric() && poset.is_transitive();
        r.check(format!("closure order is a partial order, n={n}"), order);
        let top = poset.maximal();
        let bottom = poset.minimal();
        r.check(
            format!("unique top of dim G and bottom of dim P, n={n}"),
            top.len() == 1
                && bottom.len() == 1
                && poset.dim(top[0]) == poset.dim_g()
                && poset.dim(bottom[0]) == poset.dim_p(),
        );
        let half = n * (n + 1) / 2;
        r.check(
            format!("the top covers only codimension-one strata, n={n}"),
            poset.covers().iter().filter(|c| c.1 == top[0]).all(|c| poset.length(c.0) == half - 1),
        );
    }
    r.check("n=2 poset is a chain", build_poset(2)?.is_total());
    Ok(())
}

fn symtrans_suite(r: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    for p in [2u32, 3] {
        let m = build_module(&Character::lambda_hodge(2), p)?;
        let gens: Vec<MatrixFp> =
            generating_set(2, p).iter().map(|g| m.act(g, 1)).collect::<Result<_>>()?;
        let group = FiniteAction::generated_by(p, m.dim(), &gens)?;
        let mut ann = true;
        let mut inv = true;
        for _ in 0..5 {
            let x: Vec<u32> = (0..m.dim()).map(|_| rng.gen_range(0..p)).collect();
            ann &= annihilation_check(&group, &x)?;
            let h = &group.elements()[rng.gen_range(0..group.order())];
            let d = rng.gen_range(1..=group.order());
            let s = sym_transform(&group, &x, d)?;
            inv &= sym_transform(&group, &h.mul_vec(&x), d)? == s && s.act(h) == s;
        }
        r.check(format!("annihilation identity, GL_2(F_{p}) of order {}", group.order()), ann);
        r.check(format!("transforms are invariant, GL_2(F_{p})"), inv);
    }
    Ok(())
}

fn hilbert_suite(r: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    for (n, p) in [(2usize, 3u32), (3, 2), (3, 5)] {
        let mut ok = true;
        for _ in 0..20 {
            let det = rng.gen_range(1..p);
            let tuple = |rng: &mut ChaCha8Rng| -> Result<HilbertTuple> {
                let blocks = (0..n)
                    .map(|_| {
                        let mut g = random_invertible(rng, p, 2);
                        let s = crate::fp_linalg::mul(det, crate::fp_linalg::inv(g.det(), p), p);
                        g.set(0, 0, crate::fp_linalg::mul(g.get(0, 0), s, p));
                        g.set(0, 1, crate::fp_linalg::mul(g.get(0, 1), s, p));
                        g
                    })
                    .collect();
                HilbertTuple::new(blocks)
            };
            let s = tuple(rng)?;
            let t = tuple(rng)?;
            ok &= is_symplectic_similitude(&embed_split(&s), s.det())
                && embed_split(&s.mul(&t)?) == embed_split(&s).mul(&embed_split(&t));
        }
        r.check(format!("embedding is a similitude homomorphism, n={n}, p={p}"), ok);
    }
    for p in [2u32, 3] {
        let mut ok = true;
        for k1 in -3..=3 {
            for k2 in -3..=3 {
                for l in -2..=2 {
                    let w = HilbertWeight { k: vec![k1, k2], l };
                    let v = hzip_cone_check(&w, p, 2 * (p - 1))?;
                    let neg = k1 <= 0 && k2 <= 0;
                    ok &= v.witness_d.is_some() == neg && (v.saturated == Saturated::In) == neg;
                    ok &= trivial_on_torus(&w, p) == trivial_by_congruence(&w, p);
                }
            }
        }
        r.check(format!("saturated Hilbert cone is the negative orthant, p={p}"), ok);
    }
    Ok(())
}

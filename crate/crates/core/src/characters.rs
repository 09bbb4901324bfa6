//! Characters of the diagonal torus of GSp(2n) and the explicit weight cones.
//!
//! A character `(a_1, …, a_n, b)` sends
//! `diag(s_1, …, s_n, c/s_n, …, c/s_1)` to `Π s_i^{a_i} · c^{(b - Σa_i)/2}`,
//! so it is integral exactly when `Σ a_i ≡ b (mod 2)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::WeylElement;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    a: Vec<i64>,
    b: i64,
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.a {
            write!(f, "{x},")?;
        }
        write!(f, "{}", self.b)
    }
}

impl FromStr for Character {
    type Err = Error;

    /// Parses `"a_1,…,a_n,b"`.
    fn from_str(s: &str) -> Result<Self> {
        let vals = s
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        if vals.len() < 2 {
            return Err(Error::Parse(format!("{s:?}: need a_1,…,a_n,b with n ≥ 1")));
        }
        let (a, b) = vals.split_at(vals.len() - 1);
        Character::new(a.to_vec(), b[0])
    }
}

impl Character {
    pub fn new(a: Vec<i64>, b: i64) -> Result<Self> {
        let s: i64 = a.iter().sum();
        if (s - b).rem_euclid(2) != 0 {
            return Err(Error::Parity(format!("a={a:?}, b={b}")));
        }
        Ok(Self { a, b })
    }

    /// Completes `a` with `b = Σa_i mod 2`.
    pub fn with_minimal_parity(a: Vec<i64>) -> Self {
        let b = a.iter().sum::<i64>().rem_euclid(2);
        Self { a, b }
    }

    pub fn zero(n: usize) -> Self {
        Self { a: vec![0; n], b: 0 }
    }

    /// Weight of the Hodge line bundle: `(-1, …, -1, n)`.
    pub fn lambda_omega(n: usize) -> Self {
        Self { a: vec![-1; n], b: n as i64 }
    }

    /// Weight of the Hodge vector bundle: `(0, …, 0, -1, 1)`.
    pub fn lambda_hodge(n: usize) -> Self {
        let mut a = vec![0; n];
        a[n - 1] = -1;
        Self { a, b: 1 }
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn sum_a(&self) -> i64 {
        self.a.iter().sum()
    }

    /// Exponent of the multiplier `c` in the torus formula, `(b - Σa_i)/2`.
    pub fn similitude_exponent(&self) -> i64 {
        (self.b - self.sum_a()) / 2
    }

    pub fn scale(&self, d: i64) -> Self {
        Self { a: self.a.iter().map(|x| x * d).collect(), b: self.b * d }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Ok(Self { a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(), b: self.b + other.b })
    }

    pub fn is_zero(&self) -> bool {
        self.b == 0 && self.a.iter().all(|&x| x == 0)
    }

    pub fn is_i_dominant(&self) -> bool {
        self.a.windows(2).all(|w| w[0] >= w[1])
    }

    /// Weyl action: signed permutation of the `a`-coordinates, `b` fixed.
    pub fn weyl_act(&self, w: &WeylElement) -> Self {
        Self { a: w.act_on_coords(&self.a), b: self.b }
    }

    pub fn in_gs_cone(&self) -> bool {
        gs_cone(self.rank()).contains(self)
    }

    pub fn in_appro_cone(&self, p: u32) -> bool {
        appro_cone(self.rank(), p).contains(self)
    }

    /// The explicit rank-3 cone: I-dominant, `p²a_1+a_2+pa_3 ≤ 0` and
    /// `pa_1+p²a_2+a_3 ≤ 0`.
    pub fn in_zip3_explicit(&self, p: u32) -> Result<bool> {
        Ok(zip3_cone(self.rank(), p)?.contains(self))
    }
}

/// A cocharacter written in the dual coordinates of the `a`-part; pairs with
/// a character as `Σ a_i m_i` (the multiplier coordinate `b` never enters).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coroot(pub Vec<i64>);

impl Coroot {
    pub fn weyl_act(&self, w: &WeylElement) -> Self {
        Coroot(w.act_on_coords(&self.0))
    }
}

pub fn pair(chi: &Character, coroot: &Coroot) -> Result<i64> {
    if chi.rank() != coroot.0.len() {
        return Err(Error::RankMismatch(chi.rank(), coroot.0.len()));
    }
    Ok(chi.a.iter().zip(&coroot.0).map(|(a, m)| a * m).sum())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RootKind {
    /// `e_i - e_j`, i < j
    Levi(usize, usize),
    /// `e_i + e_j`, i < j
    Short(usize, usize),
    /// `2 e_i`
    Long(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoot {
    pub kind: RootKind,
    pub root: Vec<i64>,
    pub coroot: Coroot,
}

/// Root datum of type C_n with the Siegel Levi of type A_{n-1}.
#[derive(Clone, Debug)]
pub struct RootDatum {
    n: usize,
    positive: Vec<PositiveRoot>,
}

impl RootDatum {
    pub fn new(n: usize) -> Self {
        let unit = |i: usize| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v
        };
        let mut positive = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let d: Vec<i64> = unit(i).iter().zip(unit(j)).map(|(x, y)| x - y).collect();
                positive.push(PositiveRoot {
                    kind: RootKind::Levi(i + 1, j + 1),
                    root: d.clone(),
                    coroot: Coroot(d),
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let s: Vec<i64> = unit(i).iter().zip(unit(j)).map(|(x, y)| x + y).collect();
                positive.push(PositiveRoot {
                    kind: RootKind::Short(i + 1, j + 1),
                    root: s.clone(),
                    coroot: Coroot(s),
                });
            }
        }
        for i in 0..n {
            positive.push(PositiveRoot {
                kind: RootKind::Long(i + 1),
                root: unit(i).iter().map(|x| 2 * x).collect(),
                coroot: Coroot(unit(i)),
            });
        }
        Self { n, positive }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive
    }

    pub fn levi_positive_roots(&self) -> impl Iterator<Item = &PositiveRoot> {
        self.positive.iter().filter(|r| matches!(r.kind, RootKind::Levi(..)))
    }

    pub fn unipotent_roots(&self) -> impl Iterator<Item = &PositiveRoot> {
        self.positive.iter().filter(|r| !matches!(r.kind, RootKind::Levi(..)))
    }

    /// `α_i^∨`: `e_i - e_{i+1}` for `i < n`, `e_n` for `i = n`.
    pub fn simple_coroot(&self, i: usize) -> Coroot {
        assert!((1..=self.n).contains(&i));
        let mut v = vec![0i64; self.n];
        v[i - 1] = 1;
        if i < self.n {
            v[i] = -1;
        }
        Coroot(v)
    }

    /// The coroots of `Δ^P = Δ \ I`: only the long simple root.
    pub fn parabolic_simple_coroots(&self) -> Vec<Coroot> {
        vec![self.simple_coroot(self.n)]
    }

    /// `dim G = |Φ| + rank T`, with `rank T = n + 1` for GSp(2n).
    pub fn dim_g(&self) -> usize {
        2 * self.positive.len() + self.n + 1
    }

    /// `dim P = dim G - |Φ⁺ \ Φ_L⁺|`.
    pub fn dim_p(&self) -> usize {
        self.dim_g() - self.unipotent_roots().count()
    }

    /// Griffiths–Schmid condition phrased through the pairing.
    pub fn gs_by_roots(&self, chi: &Character) -> bool {
        self.levi_positive_roots().all(|r| pair(chi, &r.coroot).unwrap() >= 0)
            && self.unipotent_roots().all(|r| pair(chi, &r.coroot).unwrap() <= 0)
    }
}

/// `coeffs · (a_1, …, a_n, b) ≤ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub label: String,
    pub coeffs: Vec<i64>,
}

impl Inequality {
    pub fn holds(&self, chi: &Character) -> bool {
        let lhs: i64 = chi.a.iter().chain(std::iter::once(&chi.b)).zip(&self.coeffs).map(|(x, c)| x * c).sum();
        lhs <= 0
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.coeffs.len() - 1;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let var = if i < n { format!("a{}", i + 1) } else { "b".to_string() };
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            if first {
                write!(f, "{sign}")?;
            } else {
                write!(f, " {sign} ")?;
            }
            if mag == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " <= 0")
    }
}

/// A cone presented by integer inequalities on `(a, b)`.
#[derive(Clone, Debug, Serialize)]
pub struct Cone {
    pub name: String,
    pub rank: usize,
    pub inequalities: Vec<Inequality>,
}

impl Cone {
    pub fn contains(&self, chi: &Character) -> bool {
        chi.rank() == self.rank && self.inequalities.iter().all(|q| q.holds(chi))
    }
}

fn dominance_inequalities(n: usize) -> Vec<Inequality> {
    (0..n.saturating_sub(1))
        .map(|i| {
            let mut c = vec![0; n + 1];
            c[i] = -1;
            c[i + 1] = 1;
            Inequality { label: format!("a{} >= a{}", i + 1, i + 2), coeffs: c }
        })
        .collect()
}

/// `0 ≥ a_1 ≥ … ≥ a_n`.
pub fn gs_cone(n: usize) -> Cone {
    let mut ineqs = Vec::new();
    if n > 0 {
        let mut c = vec![0; n + 1];
        c[0] = 1;
        ineqs.push(Inequality { label: "a1 <= 0".into(), coeffs: c });
    }
    ineqs.extend(dominance_inequalities(n));
    Cone { name: "griffiths-schmid".into(), rank: n, inequalities: ineqs }
}

/// `p Σ_{i≤j} a_i + Σ_{i>j} a_i ≤ 0` for `j = 1..n`.
pub fn appro_cone(n: usize, p: u32) -> Cone {
    let p = p as i64;
    let inequalities = (1..=n)
        .map(|j| {
            let mut c: Vec<i64> = (0..n).map(|i| if i < j { p } else { 1 }).collect();
            c.push(0);
            Inequality { label: format!("j={j}"), coeffs: c }
        })
        .collect();
    Cone { name: "approximation".into(), rank: n, inequalities }
}

pub fn zip3_cone(n: usize, p: u32) -> Result<Cone> {
    if n != 3 {
        return Err(Error::WrongRank { expected: 3, got: n });
    }
    let p = p as i64;
    let mut ineqs = dominance_inequalities(3);
    ineqs.push(Inequality { label: "p^2 a1 + a2 + p a3 <= 0".into(), coeffs: vec![p * p, 1, p, 0] });
    ineqs.push(Inequality { label: "p a1 + p^2 a2 + a3 <= 0".into(), coeffs: vec![p, p * p, 1, 0] });
    Ok(Cone { name: "zip-rank-3".into(), rank: 3, inequalities: ineqs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{all_elements, levi_elements};
    use proptest::prelude::*;

    fn ch(a: &[i64], b: i64) -> Character {
        Character::new(a.to_vec(), b).unwrap()
    }

    #[test]
    fn parity_and_parsing() {
        assert!(Character::new(vec![1, 0, 0], 0).is_err());
        assert!(matches!("1,0,0,0".parse::<Character>(), Err(Error::Parity(_))));
        assert_eq!("-1,-1,-1,3".parse::<Character>().unwrap(), Character::lambda_omega(3));
        assert!("1,x".parse::<Character>().is_err());
        assert!("4".parse::<Character>().is_err());
        let c = Character::lambda_hodge(3);
        assert_eq!(c.to_string().parse::<Character>().unwrap(), c);
    }

    #[test]
    fn pairing_examples() {
        for n in 1..=4 {
            let rd = RootDatum::new(n);
            let lw = Character::lambda_omega(n);
            for i in 1..n {
                assert_eq!(pair(&lw, &rd.simple_coroot(i)).unwrap(), 0);
            }
            assert_eq!(pair(&lw, &rd.simple_coroot(n)).unwrap(), -1);
        }
        let rd = RootDatum::new(3);
        assert_eq!(pair(&ch(&[2, 0, 0], 2), &rd.simple_coroot(1)).unwrap(), 2);
        assert!(pair(&ch(&[2, 0], 2), &rd.simple_coroot(1)).is_err());
    }

    #[test]
    fn root_counts_and_dimensions() {
        for n in 1..=6 {
            let rd = RootDatum::new(n);
            assert_eq!(rd.positive_roots().len(), n * n);
            assert_eq!(rd.levi_positive_roots().count(), n * (n - 1) / 2);
            assert_eq!(rd.dim_g(), 2 * n * n + n + 1);
            assert_eq!(rd.dim_g() - rd.dim_p(), n * (n + 1) / 2);
        }
        assert_eq!(RootDatum::new(3).dim_g(), 22);
        assert_eq!(RootDatum::new(3).dim_p(), 16);
    }

    #[test]
    fn dominance_examples() {
        for n in 1..=4 {
            assert!(Character::lambda_omega(n).is_i_dominant());
            assert!(Character::lambda_hodge(n).is_i_dominant());
        }
        assert!(!ch(&[0, 1, 0], 1).is_i_dominant());
    }

    #[test]
    fn cone_examples() {
        assert!(ch(&[0, -1, -2], 1).in_gs_cone());
        assert!(!ch(&[1, 0, 0], 1).in_gs_cone());
        assert!(Character::zero(3).in_gs_cone());
        for p in [2, 3, 5, 7] {
            assert!(Character::zero(3).in_appro_cone(p));
            assert!(!ch(&[1, 0, 0], 1).in_appro_cone(p));
            for m in 0..5 {
                assert!(Character::lambda_omega(3).scale(m).in_appro_cone(p));
            }
            let hasse = Character::lambda_omega(3).scale(p as i64 - 1);
            assert!(hasse.in_zip3_explicit(p).unwrap());
            assert!(Character::zero(3).in_zip3_explicit(p).unwrap());
        }
        assert!(!ch(&[1, 0, 0], 1).in_zip3_explicit(2).unwrap());
        assert!(ch(&[0, 0], 0).in_zip3_explicit(2).is_err());
    }

    #[test]
    fn inequality_display() {
        let c = zip3_cone(3, 2).unwrap();
        let shown: Vec<String> = c.inequalities.iter().map(|q| q.to_string()).collect();
        assert_eq!(shown[2], "4*a1 + a2 + 2*a3 <= 0");
        assert_eq!(shown[0], "-a1 + a2 <= 0");
    }

    #[test]
    fn pairing_is_weyl_equivariant() {
        for n in 1..=3 {
            let rd = RootDatum::new(n);
            let chars: Vec<Character> = vec![
                Character::lambda_omega(n),
                Character::lambda_hodge(n),
                Character::with_minimal_parity((0..n as i64).map(|i| 3 - 2 * i).collect()),
            ];
            for w in all_elements(n) {
                for chi in &chars {
                    for r in rd.positive_roots() {
                        assert_eq!(
                            pair(&chi.weyl_act(&w), &r.coroot.weyl_act(&w)).unwrap(),
                            pair(chi, &r.coroot).unwrap()
                        );
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn zip3_inside_appro(a1 in -8i64..8, a2 in -8i64..8, a3 in -8i64..8, pi in 0usize..4) {
            let p = [2u32, 3, 5, 7][pi];
            let chi = Character::with_minimal_parity(vec![a1, a2, a3]);
            if chi.in_zip3_explicit(p).unwrap() {
                prop_assert!(chi.in_appro_cone(p));
            }
        }

        #[test]
        fn gs_root_form_agrees(a in proptest::collection::vec(-5i64..5, 1..5)) {
            let chi = Character::with_minimal_parity(a);
            let rd = RootDatum::new(chi.rank());
            prop_assert_eq!(chi.in_gs_cone(), rd.gs_by_roots(&chi));
        }

        #[test]
        fn parity_preserved(a in proptest::collection::vec(-5i64..5, 1..4), d in -4i64..5) {
            let chi = Character::with_minimal_parity(a);
            let scaled = chi.scale(d);
            prop_assert!(Character::new(scaled.a().to_vec(), scaled.b()).is_ok());
            for v in levi_elements(chi.rank()) {
                let moved = chi.weyl_act(&v);
                prop_assert!(Character::new(moved.a().to_vec(), moved.b()).is_ok());
            }
        }
    }
}

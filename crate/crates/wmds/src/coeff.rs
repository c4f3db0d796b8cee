//! The exact coefficient ring: Laurent polynomials in a formal `q` over the
//! rationals, extended by commuting Gauss-sum symbols `g1, ..., g_{n-1}`
//! subject to `g_i * g_{n-i} = 1/q` (and `g_{n/2}^2 = 1/q` for even `n`).
//!
//! `gamma(t)` for `t = 0 mod n` is the scalar `-1` and never appears as a
//! symbol. Products are reduced greedily to a normal form: in each
//! complementary pair `{i, n-i}` at most one symbol carries a positive
//! exponent. The reduction is confluent, so the normal form is unique.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::cyclotomic::{Cyc, CycField};
use crate::error::{Error, Result};
use crate::{rat, Rat};

type GammaExps = Vec<u16>;
type Key = (i64, GammaExps);

/// One exact coefficient: a sum of terms `r * q^k * g1^{e_1} ... g_{n-1}^{e_{n-1}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffElement {
    n: u32,
    terms: BTreeMap<Key, Rat>,
}

impl CoeffElement {
    pub fn zero(n: u32) -> Self {
        CoeffElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: u32) -> Self {
        Self::rational(n, Rat::one())
    }

    pub fn rational(n: u32, r: Rat) -> Self {
        let mut e = Self::zero(n);
        if !r.is_zero() {
            e.terms.insert((0, vec![0; n as usize - 1]), r);
        }
        e
    }

    pub fn integer(n: u32, k: i64) -> Self {
        Self::rational(n, rat(k))
    }

    /// `q^e`.
    pub fn q_pow(n: u32, e: i64) -> Self {
        let mut el = Self::zero(n);
        el.terms.insert((e, vec![0; n as usize - 1]), Rat::one());
        el
    }

    /// `gamma(t)`: `-1` when `t = 0 mod n`, otherwise the symbol `g_{t mod n}`.
    pub fn gamma(n: u32, t: i64) -> Self {
        let t = t.rem_euclid(i64::from(n)) as u32;
        if t == 0 {
            return Self::integer(n, -1);
        }
        let mut exps = vec![0u16; n as usize - 1];
        exps[t as usize - 1] = 1;
        let mut el = Self::zero(n);
        el.terms.insert((0, exps), Rat::one());
        el
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, vec![0; self.n as usize - 1]))
                .is_some_and(|r| r.is_one())
    }

    fn insert(&mut self, key: Key, val: Rat) {
        if val.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rat::zero);
        *entry += val;
        if entry.is_zero() {
            // Need the key back; simplest is to scan once.
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.insert(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CoeffElement {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero(self.n);
        }
        CoeffElement {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * r)).collect(),
        }
    }

    pub fn mul_q_pow(&self, e: i64) -> Self {
        CoeffElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|((q, g), v)| ((q + e, g.clone()), v.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for ((q1, g1), v1) in &self.terms {
            for ((q2, g2), v2) in &other.terms {
                let mut q = q1 + q2;
                let mut g: GammaExps = g1.iter().zip(g2).map(|(a, b)| a + b).collect();
                reduce_gammas(self.n, &mut q, &mut g);
                out.insert((q, g), v1 * v2);
            }
        }
        out
    }

    /// Substitute numeric values for `q` and the symbols.
    pub fn specialize(&self, sp: &Specialization) -> Result<Cyc> {
        if sp.n != self.n {
            return Err(Error::InconsistentSpecialization(format!(
                "element has n = {}, specialization has n = {}",
                self.n, sp.n
            )));
        }
        let f = &sp.field;
        let mut acc = f.zero();
        for ((qe, g), v) in &self.terms {
            let mut term = f.from_rat(v * rat_pow(&sp.q, *qe));
            for (idx, &e) in g.iter().enumerate() {
                if e > 0 {
                    term = f.mul(&term, &f.pow(&sp.gammas[idx], u32::from(e)));
                }
            }
            acc = f.add(&acc, &term);
        }
        Ok(acc)
    }

    /// The coefficient viewed as a pure `q`-Laurent monomial `r * q^e`,
    /// if it is one.
    pub fn as_q_monomial(&self) -> Option<(Rat, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let ((q, g), v) = self.terms.iter().next().unwrap();
        if g.iter().all(|&e| e == 0) {
            Some((v.clone(), *q))
        } else {
            None
        }
    }
}

fn rat_pow(q: &Rat, e: i64) -> Rat {
    let mut acc = Rat::one();
    let neg = e < 0;
    for _ in 0..e.unsigned_abs() {
        acc *= q;
    }
    if neg {
        Rat::one() / acc
    } else {
        acc
    }
}

fn reduce_gammas(n: u32, q: &mut i64, g: &mut GammaExps) {
    let n = n as usize;
    if n <= 1 {
        return;
    }
    let mut i = 1;
    let mut j = n - 1;
    while i < j {
        let c = g[i - 1].min(g[j - 1]);
        g[i - 1] -= c;
        g[j - 1] -= c;
        *q -= i64::from(c);
        i += 1;
        j -= 1;
    }
    if i == j {
        let c = g[i - 1] / 2;
        g[i - 1] %= 2;
        *q -= i64::from(c);
    }
}

impl std::fmt::Display for CoeffElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((q, g), v) in &self.terms {
            let mut parts: Vec<String> = Vec::new();
            match *q {
                0 => {}
                1 => parts.push("q".into()),
                e => parts.push(format!("q^{e}")),
            }
            for (idx, &e) in g.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(format!("g{}", idx + 1)),
                    e => parts.push(format!("g{}^{e}", idx + 1)),
                }
            }
            let mono = parts.join("*");
            let lead = if v.is_one() && !mono.is_empty() {
                mono.clone()
            } else if (-v).is_one() && !mono.is_empty() {
                format!("-{mono}")
            } else if mono.is_empty() {
                format!("{v}")
            } else {
                format!("{v}*{mono}")
            };
            if first {
                write!(f, "{lead}")?;
                first = false;
            } else if lead.starts_with('-') {
                write!(f, " - {}", &lead[1..])?;
            } else {
                write!(f, " + {lead}")?;
            }
        }
        Ok(())
    }
}

/// Numeric values for `q` and each `gamma(i)`, with the pair relation
/// validated at construction.
#[derive(Clone, Debug)]
pub struct Specialization {
    n: u32,
    q: Rat,
    gammas: Vec<Cyc>,
    field: CycField,
}

impl Specialization {
    pub fn new(n: u32, q: Rat, gammas: Vec<Cyc>, field: CycField) -> Result<Self> {
        if gammas.len() != n as usize - 1 {
            return Err(Error::InconsistentSpecialization(format!(
                "expected {} gamma values, got {}",
                n - 1,
                gammas.len()
            )));
        }
        if !q.is_positive() {
            return Err(Error::InconsistentSpecialization("q must be positive".into()));
        }
        let inv_q = f_rat(&field, Rat::one() / &q);
        for i in 1..n {
            let gi = &gammas[i as usize - 1];
            let gni = &gammas[(n - i) as usize - 1];
            if field.mul(gi, gni) != inv_q {
                return Err(Error::InconsistentSpecialization(format!(
                    "gamma({i}) * gamma({}) != 1/q",
                    n - i
                )));
            }
        }
        Ok(Specialization { n, q, gammas, field })
    }

    /// The trivial specialization for n = 1 (no symbols).
    pub fn trivial(q: Rat, field: CycField) -> Self {
        Specialization { n: 1, q, gammas: Vec::new(), field }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    pub fn q_f64(&self) -> f64 {
        crate::cartan::rat_to_f64(&self.q)
    }

    pub fn gamma_value(&self, i: u32) -> &Cyc {
        &self.gammas[i as usize - 1]
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }
}

fn f_rat(field: &CycField, r: Rat) -> Cyc {
    field.from_rat(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_indexing() {
        let g = CoeffElement::gamma(2, 0);
        assert_eq!(g, CoeffElement::integer(2, -1));
        let g = CoeffElement::gamma(2, 3);
        assert_eq!(g, CoeffElement::gamma(2, 1));
        let g = CoeffElement::gamma(4, -1);
        assert_eq!(g, CoeffElement::gamma(4, 3));
    }

    #[test]
    fn pair_reduction() {
        // n = 2: g1 * g1 = 1/q.
        let g1 = CoeffElement::gamma(2, 1);
        assert_eq!(g1.mul(&g1), CoeffElement::q_pow(2, -1));
        // n = 3: g1 * g2 = 1/q, g1 * g1 irreducible.
        let a = CoeffElement::gamma(3, 1);
        let b = CoeffElement::gamma(3, 2);
        assert_eq!(a.mul(&b), CoeffElement::q_pow(3, -1));
        let sq = a.mul(&a);
        assert!(sq.as_q_monomial().is_none());
        // ... but (g1^2) * (g2^2) collapses fully.
        assert_eq!(sq.mul(&b.mul(&b)), CoeffElement::q_pow(3, -2));
        // n = 4: the middle symbol squares to 1/q, the outer pair cancels.
        let g2 = CoeffElement::gamma(4, 2);
        assert_eq!(g2.mul(&g2), CoeffElement::q_pow(4, -1));
        let c = CoeffElement::gamma(4, 1).mul(&CoeffElement::gamma(4, 3));
        assert_eq!(c, CoeffElement::q_pow(4, -1));
    }

    #[test]
    fn display_form() {
        let e = CoeffElement::one(2)
            .add(&CoeffElement::gamma(2, 1).mul(&CoeffElement::q_pow(2, 1)));
        assert_eq!(e.to_string(), "1 + q*g1");
    }

    #[test]
    fn specialize_values() {
        // q = 5, gamma(1) = quadratic Gauss sum / 5 = sqrt(5)/5 in Q(zeta_10)-terms.
        let field = CycField::new(10);
        let legendre = |d: i64| if d == 1 || d == 4 { 1 } else { -1 };
        let mut g = field.zero();
        for d in 1..5i64 {
            g = field.add(&g, &field.scale(&field.zeta(2 * d), &rat(legendre(d))));
        }
        let gamma1 = field.scale(&g, &crate::rat_frac(1, 5));
        let sp = Specialization::new(2, rat(5), vec![gamma1], field.clone()).unwrap();

        // q^2 - q at q = 5 is 20.
        let e = CoeffElement::q_pow(2, 2).sub(&CoeffElement::q_pow(2, 1));
        assert_eq!(e.specialize(&sp).unwrap(), field.from_rat(rat(20)));

        // gamma(1)^2 = 1/5, forced by the relation.
        let e = CoeffElement::gamma(2, 1).mul(&CoeffElement::gamma(2, 1));
        assert_eq!(e.specialize(&sp).unwrap(), field.from_rat(crate::rat_frac(1, 5)));

        // gamma(1) * q = sqrt(5): check against the Gauss sum itself.
        let e = CoeffElement::gamma(2, 1).mul(&CoeffElement::q_pow(2, 1));
        assert_eq!(e.specialize(&sp).unwrap(), g);
        assert!((e.specialize(&sp).unwrap().to_complex().re - 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn inconsistent_specialization_rejected() {
        let field = CycField::new(10);
        let bad = Specialization::new(2, rat(5), vec![field.one()], field);
        assert!(matches!(bad, Err(Error::InconsistentSpecialization(_))));
    }

    #[test]
    fn ring_axioms_randomized() {
        // Deterministic pseudo-random elements; associativity and distributivity.
        let n = 3;
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut rand_el = || {
            let mut e = CoeffElement::zero(n);
            for _ in 0..3 {
                let q = (next() % 7) as i64 - 3;
                let t = (next() % 5) as i64;
                let c = (next() % 9) as i64 - 4;
                let term = CoeffElement::q_pow(n, q)
                    .mul(&CoeffElement::gamma(n, t))
                    .scale(&rat(c));
                e = e.add(&term);
            }
            e
        };
        for _ in 0..40 {
            let (a, b, c) = (rand_el(), rand_el(), rand_el());
            assert_eq!(a.mul(&b.mul(&c)), a.mul(&b).mul(&c));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.mul(&b), b.mul(&a));
        }
    }
}

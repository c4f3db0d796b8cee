//! Function-field arithmetic backend: `F_q0[t]` as the ring of S-integers,
//! monic representatives, n-th power residue symbols, Gauss sums, and the
//! residue-symbol cocycles of twisted multiplicativity.
//!
//! The constraint `q0 = 1 mod 2n` makes Hilbert symbols of coprime monic
//! pairs trivial and the power residue symbol symmetric, which is what lets
//! the global coefficients be assembled exactly. All symbol and Gauss-sum
//! values are exact elements of `Q(zeta_{n p})`.

use std::sync::Mutex;

use crate::cartan::CartanData;
use crate::cyclotomic::{Cyc, CycField};
use crate::error::{Error, Result};

/// Small finite field `F_{p^e}` with exp/log tables. Elements are integers
/// below `p^e` whose base-p digits are polynomial-basis coordinates.
#[derive(Debug)]
pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl FiniteField {
    pub fn new(p: u32, e: u32) -> FiniteField {
        assert!(e >= 1 && p >= 2);
        assert!(is_prime(p), "{p} is not prime");
        let q = p.pow(e);
        let modulus = if e == 1 { Vec::new() } else { find_irreducible(p, e) };
        let mul = |x: u32, y: u32| raw_mul(p, e, &modulus, x, y);
        // Find a primitive element.
        let order = q - 1;
        let prime_factors = prime_divisors(order);
        let mut gen = 0;
        for cand in 2..q {
            let ok = prime_factors
                .iter()
                .all(|&l| raw_pow(cand, (order / l) as u64, &mul) != 1);
            if ok {
                gen = cand;
                break;
            }
        }
        assert!(gen != 0, "no primitive element found");
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..order {
            exp[i as usize] = cur;
            log[cur as usize] = i;
            cur = mul(cur, gen);
        }
        assert_eq!(cur, 1);
        FiniteField { p, e, q, exp, log }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        if self.e == 1 {
            (x + y) % self.p
        } else {
            let mut out = 0;
            let mut mult = 1;
            let (mut a, mut b) = (x, y);
            for _ in 0..self.e {
                out += ((a + b) % self.p) * mult;
                a /= self.p;
                b /= self.p;
                mult *= self.p;
            }
            out
        }
    }

    pub fn neg(&self, x: u32) -> u32 {
        if self.e == 1 {
            (self.p - x) % self.p
        } else {
            let mut out = 0;
            let mut mult = 1;
            let mut a = x;
            for _ in 0..self.e {
                out += ((self.p - a % self.p) % self.p) * mult;
                a /= self.p;
                mult *= self.p;
            }
            out
        }
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        let i = (u64::from(self.log[x as usize]) + u64::from(self.log[y as usize]))
            % u64::from(self.q - 1);
        self.exp[i as usize]
    }

    pub fn inv(&self, x: u32) -> u32 {
        assert!(x != 0);
        let i = (self.q - 1 - self.log[x as usize]) % (self.q - 1);
        self.exp[i as usize]
    }

    pub fn pow(&self, x: u32, k: u64) -> u32 {
        if x == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let i = (u128::from(self.log[x as usize]) * u128::from(k)) % u128::from(self.q - 1);
        self.exp[i as usize]
    }

    /// Discrete log with respect to the fixed primitive element.
    pub fn dlog(&self, x: u32) -> u32 {
        assert!(x != 0);
        self.log[x as usize]
    }

    /// Trace to the prime field, returned as an integer below `p`.
    pub fn trace(&self, x: u32) -> u32 {
        let mut acc = 0;
        let mut cur = x;
        for _ in 0..self.e {
            acc = self.add(acc, cur);
            cur = self.pow(cur, u64::from(self.p));
        }
        debug_assert!(acc < self.p, "trace landed outside the prime field");
        acc
    }
}

fn raw_mul(p: u32, e: u32, modulus: &[u32], x: u32, y: u32) -> u32 {
    if e == 1 {
        return ((u64::from(x) * u64::from(y)) % u64::from(p)) as u32;
    }
    let digits = |mut v: u32| {
        let mut d = vec![0u32; e as usize];
        for slot in d.iter_mut() {
            *slot = v % p;
            v /= p;
        }
        d
    };
    let xd = digits(x);
    let yd = digits(y);
    let mut prod = vec![0u32; 2 * e as usize - 1];
    for (i, &a) in xd.iter().enumerate() {
        for (j, &b) in yd.iter().enumerate() {
            prod[i + j] = (prod[i + j] + a * b) % p;
        }
    }
    // Reduce modulo the monic irreducible (coefficients ascending, deg = e).
    for i in (e as usize..prod.len()).rev() {
        let c = prod[i];
        if c != 0 {
            prod[i] = 0;
            for j in 0..e as usize {
                let sub = (c * modulus[j]) % p;
                prod[i - e as usize + j] = (prod[i - e as usize + j] + p * p - sub) % p;
            }
        }
    }
    let mut out = 0;
    let mut mult = 1;
    for &d in prod.iter().take(e as usize) {
        out += d * mult;
        mult *= p;
    }
    out
}

fn raw_pow(x: u32, mut k: u64, mul: &impl Fn(u32, u32) -> u32) -> u32 {
    let mut base = x;
    let mut acc = 1;
    while k > 0 {
        if k & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        k >>= 1;
    }
    acc
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_divisors(mut m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn find_irreducible(p: u32, e: u32) -> Vec<u32> {
    // Brute-force search: a monic degree-e polynomial with no roots and no
    // factors among lower-degree monic polynomials (degrees here are tiny).
    let count = p.pow(e);
    'cand: for idx in 0..count {
        let mut coeffs = Vec::with_capacity(e as usize + 1);
        let mut v = idx;
        for _ in 0..e {
            coeffs.push(v % p);
            v /= p;
        }
        coeffs.push(1);
        for r in 0..p {
            let mut acc = 0u32;
            for &c in coeffs.iter().rev() {
                acc = (acc * r + c) % p;
            }
            if acc == 0 {
                continue 'cand;
            }
        }
        if e >= 4 {
            for d in 2..=(e / 2) {
                for j in 0..p.pow(d) {
                    let mut div = Vec::with_capacity(d as usize + 1);
                    let mut v = j;
                    for _ in 0..d {
                        div.push(v % p);
                        v /= p;
                    }
                    div.push(1);
                    if poly_divisible_prime(p, &coeffs, &div) {
                        continue 'cand;
                    }
                }
            }
        }
        return coeffs;
    }
    unreachable!("no irreducible polynomial of degree {e} over F_{p}");
}

fn poly_divisible_prime(p: u32, f: &[u32], g: &[u32]) -> bool {
    let mut rem: Vec<u32> = f.to_vec();
    let dg = g.len() - 1;
    while rem.len() >= g.len() {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - 1 - dg;
            for (j, &gc) in g.iter().enumerate() {
                rem[shift + j] = (rem[shift + j] + p * p - (lead * gc) % p) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

/// A polynomial over the base field, coefficients ascending, no trailing
/// zeros (the zero polynomial has an empty coefficient vector).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly(pub Vec<u32>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly(vec![1])
    }

    pub fn constant(c: u32) -> Poly {
        if c == 0 {
            Poly::zero()
        } else {
            Poly(vec![c])
        }
    }

    /// The variable `t`.
    pub fn t() -> Poly {
        Poly(vec![0, 1])
    }

    pub fn from_coeffs(mut coeffs: Vec<u32>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.0.last() == Some(&1)
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let part = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "t".into(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            };
            parts.push(part);
        }
        parts.join("+")
    }
}

/// The arithmetic backend: `F_q0[t]`, its residue symbols and Gauss sums,
/// with exact values in `Q(zeta_{n p})`.
#[derive(Debug)]
pub struct FFRing {
    field: FiniteField,
    n: u32,
    cyc: CycField,
    irreducibles: Mutex<Vec<Vec<Poly>>>,
}

impl FFRing {
    /// `q0 = p^e` must satisfy `q0 = 1 mod 2n`.
    pub fn new(p: u32, e: u32, n: u32) -> Result<FFRing> {
        let field = FiniteField::new(p, e);
        if n == 0 {
            return Err(Error::InvalidInput("n must be positive".into()));
        }
        if (field.q() - 1) % (2 * n) != 0 {
            return Err(Error::InvalidInput(format!(
                "q0 = {} is not 1 mod 2n = {}",
                field.q(),
                2 * n
            )));
        }
        let cyc = CycField::new(n * p);
        Ok(FFRing { field, n, cyc, irreducibles: Mutex::new(vec![Vec::new()]) })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn q0(&self) -> u32 {
        self.field.q()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn cyc_field(&self) -> &CycField {
        &self.cyc
    }

    /// `zeta_n^k` inside `Q(zeta_{n p})`.
    pub fn zeta_n(&self, k: i64) -> Cyc {
        let m = i64::from(self.cyc.order());
        let step = m / i64::from(self.n);
        self.cyc.zeta(k.rem_euclid(i64::from(self.n)) * step)
    }

    fn zeta_p(&self, k: i64) -> Cyc {
        let m = i64::from(self.cyc.order());
        let step = m / i64::from(self.field.p());
        self.cyc.zeta(k.rem_euclid(i64::from(self.field.p())) * step)
    }

    /// |f| = q0^{deg f}.
    pub fn norm(&self, f: &Poly) -> u64 {
        u64::from(self.q0()).pow(f.degree() as u32)
    }

    // ---- polynomial arithmetic ----

    pub fn poly_add(&self, f: &Poly, g: &Poly) -> Poly {
        let len = f.0.len().max(g.0.len());
        let mut out = vec![0u32; len];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = f.0.get(i).copied().unwrap_or(0);
            let b = g.0.get(i).copied().unwrap_or(0);
            *slot = self.field.add(a, b);
        }
        Poly::from_coeffs(out)
    }

    pub fn poly_sub(&self, f: &Poly, g: &Poly) -> Poly {
        let len = f.0.len().max(g.0.len());
        let mut out = vec![0u32; len];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = f.0.get(i).copied().unwrap_or(0);
            let b = g.0.get(i).copied().unwrap_or(0);
            *slot = self.field.sub(a, b);
        }
        Poly::from_coeffs(out)
    }

    pub fn poly_mul(&self, f: &Poly, g: &Poly) -> Poly {
        if f.is_zero() || g.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u32; f.0.len() + g.0.len() - 1];
        for (i, &a) in f.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in g.0.iter().enumerate() {
                out[i + j] = self.field.add(out[i + j], self.field.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn poly_divrem(&self, f: &Poly, g: &Poly) -> (Poly, Poly) {
        assert!(!g.is_zero(), "division by zero polynomial");
        let mut rem = f.0.clone();
        let dg = g.0.len() - 1;
        let lead_inv = self.field.inv(*g.0.last().unwrap());
        let mut quot = vec![0u32; rem.len().saturating_sub(dg)];
        while rem.len() > dg {
            let lead = *rem.last().unwrap();
            if lead != 0 {
                let c = self.field.mul(lead, lead_inv);
                let shift = rem.len() - 1 - dg;
                quot[shift] = c;
                for (j, &gc) in g.0.iter().enumerate() {
                    let s = self.field.mul(c, gc);
                    rem[shift + j] = self.field.sub(rem[shift + j], s);
                }
            }
            rem.pop();
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn poly_rem(&self, f: &Poly, g: &Poly) -> Poly {
        self.poly_divrem(f, g).1
    }

    pub fn poly_gcd(&self, f: &Poly, g: &Poly) -> Poly {
        let mut a = f.clone();
        let mut b = g.clone();
        while !b.is_zero() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.make_monic(&a)
    }

    pub fn make_monic(&self, f: &Poly) -> Poly {
        if f.is_zero() || f.is_monic() {
            return f.clone();
        }
        let inv = self.field.inv(*f.0.last().unwrap());
        Poly(f.0.iter().map(|&c| self.field.mul(c, inv)).collect())
    }

    pub fn poly_powmod(&self, f: &Poly, mut k: u64, modulus: &Poly) -> Poly {
        let mut base = self.poly_rem(f, modulus);
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.poly_rem(&self.poly_mul(&acc, &base), modulus);
            }
            base = self.poly_rem(&self.poly_mul(&base, &base), modulus);
            k >>= 1;
        }
        acc
    }

    /// Formal derivative.
    pub fn poly_derivative(&self, f: &Poly) -> Poly {
        if f.0.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(f.0.len() - 1);
        for (i, &c) in f.0.iter().enumerate().skip(1) {
            let k = (i as u32) % self.field.p();
            out.push(self.field.mul(c, k));
        }
        Poly::from_coeffs(out)
    }

    /// All monic polynomials of the given degree, lexicographic in ascending
    /// coefficients.
    pub fn monic_polys(&self, degree: u32) -> Vec<Poly> {
        let q = self.q0();
        let count = q.pow(degree);
        let mut out = Vec::with_capacity(count as usize);
        for idx in 0..count {
            let mut coeffs = Vec::with_capacity(degree as usize + 1);
            let mut v = idx;
            for _ in 0..degree {
                coeffs.push(v % q);
                v /= q;
            }
            coeffs.push(1);
            out.push(Poly(coeffs));
        }
        out
    }

    /// Monic irreducibles of the given degree, from a cached sieve.
    pub fn irreducibles(&self, degree: u32) -> Vec<Poly> {
        let mut cache = self.irreducibles.lock().unwrap();
        while cache.len() <= degree as usize {
            let d = cache.len() as u32;
            let mut found = Vec::new();
            'cand: for f in self.monic_polys(d) {
                for lower in 1..=(d / 2) {
                    for g in &cache[lower as usize] {
                        if self.poly_rem(&f, g).is_zero() {
                            continue 'cand;
                        }
                    }
                }
                found.push(f);
            }
            cache.push(found);
        }
        cache[degree as usize].clone()
    }

    /// Monic irreducible factors with multiplicities (of the monic part).
    ///
    /// Square-free decomposition, then distinct-degree splitting via
    /// `gcd(f, t^{q^k} - t)`, then equal-degree parts resolved by trial
    /// division against the sieved irreducibles. Deterministic throughout.
    pub fn factor(&self, f: &Poly) -> Vec<(Poly, u32)> {
        assert!(!f.is_zero(), "cannot factor 0");
        let f = self.make_monic(f);
        let mut out: Vec<(Poly, u32)> = Vec::new();
        self.factor_rec(&f, 1, &mut out);
        out.sort();
        out
    }

    fn factor_rec(&self, f: &Poly, outer_mult: u32, out: &mut Vec<(Poly, u32)>) {
        if f.degree() <= 0 {
            return;
        }
        let deriv = self.poly_derivative(f);
        if deriv.is_zero() {
            // f = g(t^p): take p-th roots of coefficients (Frobenius inverse
            // on F_{p^e} is the p^{e-1}-th power).
            let p = self.field.p() as usize;
            let root_exp = u64::from(self.q0() / self.field.p()).max(1);
            let mut g = Vec::new();
            for (i, &c) in f.0.iter().enumerate() {
                if i % p == 0 {
                    g.push(self.field.pow(c, root_exp));
                } else {
                    assert_eq!(c, 0);
                }
            }
            self.factor_rec(&Poly::from_coeffs(g), outer_mult * self.field.p(), out);
            return;
        }
        let gcd = self.poly_gcd(f, &deriv);
        if gcd.degree() > 0 {
            let (squarefree, rem) = self.poly_divrem(f, &gcd);
            debug_assert!(rem.is_zero());
            // Primes of the square-free quotient carry the full multiplicity
            // of f; primes entirely inside gcd but not the quotient are found
            // by recursing on gcd.
            let mut partial = Vec::new();
            self.distinct_degree(&squarefree, &mut partial);
            let mut stripped = f.clone();
            for (prime, _) in partial {
                let mut mult = 0;
                loop {
                    let (q, r) = self.poly_divrem(&stripped, &prime);
                    if !r.is_zero() {
                        break;
                    }
                    stripped = q;
                    mult += 1;
                }
                merge_factor(out, prime, mult * outer_mult);
            }
            self.factor_rec(&stripped, outer_mult, out);
            return;
        }
        let mut partial = Vec::new();
        self.distinct_degree(f, &mut partial);
        for (prime, m) in partial {
            merge_factor(out, prime, m * outer_mult);
        }
    }

    fn distinct_degree(&self, f: &Poly, out: &mut Vec<(Poly, u32)>) {
        // f square-free and monic here.
        let mut rest = f.clone();
        let q = u64::from(self.q0());
        let mut k = 1u32;
        let mut tq = Poly::t();
        while rest.degree() > 0 {
            if i64::from(2 * k) > rest.degree() {
                merge_factor(out, rest.clone(), 1);
                break;
            }
            tq = self.poly_powmod(&tq, q, &rest);
            let diff = self.poly_sub(&tq, &Poly::t());
            let g = self.poly_gcd(&rest, &diff);
            if g.degree() > 0 {
                // Equal-degree part: split by trial division.
                let mut part = g.clone();
                for cand in self.irreducibles(k) {
                    if part.degree() < i64::from(k) {
                        break;
                    }
                    if self.poly_rem(&part, &cand).is_zero() {
                        merge_factor(out, cand.clone(), 1);
                        part = self.poly_divrem(&part, &cand).0;
                    }
                }
                assert!(part.degree() <= 0, "equal-degree split left a remainder");
                rest = self.poly_divrem(&rest, &g).0;
                tq = self.poly_rem(&tq, &rest);
            }
            k += 1;
        }
    }

    // ---- symbols and Gauss sums ----

    /// The exponent `k` with `(f/g) = zeta_n^k`, for coprime `f`, monic `g`.
    pub fn residue_symbol_exponent(&self, f: &Poly, g: &Poly) -> Result<i64> {
        if g.is_zero() || !g.is_monic() {
            return Err(Error::InvalidInput(
                "residue symbol needs a monic denominator".into(),
            ));
        }
        if g.is_one() {
            return Ok(0);
        }
        if f.is_zero() || !self.poly_gcd(f, g).is_one() {
            return Err(Error::NotCoprime);
        }
        let mut acc: i64 = 0;
        for (prime, mult) in self.factor(g) {
            let k = self.symbol_exponent_at_prime(f, &prime)?;
            acc += k * i64::from(mult);
        }
        Ok(acc.rem_euclid(i64::from(self.n)))
    }

    fn symbol_exponent_at_prime(&self, f: &Poly, prime: &Poly) -> Result<i64> {
        let d = prime.degree() as u32;
        let qd = u64::from(self.q0()).pow(d);
        let exponent = (qd - 1) / u64::from(self.n);
        let r = self.poly_powmod(f, exponent, prime);
        if r.degree() > 0 {
            return Err(Error::InvalidInput(
                "residue symbol power is not constant; inconsistent field data".into(),
            ));
        }
        if r.is_zero() {
            return Err(Error::NotCoprime);
        }
        let c = r.0[0];
        // c = g0^t lies in mu_n, so t is a multiple of (q0 - 1)/n.
        let t = u64::from(self.field.dlog(c));
        let step = u64::from(self.q0() - 1) / u64::from(self.n);
        if t % step != 0 {
            return Err(Error::InvalidInput("symbol value outside mu_n".into()));
        }
        Ok((t / step) as i64)
    }

    /// The n-th power residue symbol `(f/g)` as an exact root of unity.
    pub fn residue_symbol(&self, f: &Poly, g: &Poly) -> Result<Cyc> {
        Ok(self.zeta_n(self.residue_symbol_exponent(f, g)?))
    }

    /// The Gauss sum `g(a, c; t) = sum_{d mod c} (d/c)^t psi(a d / c)`.
    /// Terms with `gcd(d, c) != 1` vanish with the symbol.
    pub fn gauss_sum(&self, a: &Poly, c: &Poly, t: i64) -> Cyc {
        assert!(!c.is_zero(), "gauss_sum needs c != 0");
        let c = self.make_monic(c);
        if c.is_one() {
            // Single residue d = 0 with psi(0) = 1 and empty symbol.
            return self.cyc.one();
        }
        let factors = self.factor(&c);
        let deg = c.degree() as u32;
        let mut acc = self.cyc.zero();
        for d in self.residues(deg) {
            if d.is_zero() || !self.poly_gcd(&d, &c).is_one() {
                continue;
            }
            let mut k: i64 = 0;
            for (prime, mult) in &factors {
                k += self
                    .symbol_exponent_at_prime(&d, prime)
                    .expect("coprimality already checked")
                    * i64::from(*mult);
            }
            let ad = self.poly_mul(a, &d);
            let r = self.poly_rem(&ad, &c);
            // Coefficient of t^{-1} in r/c for monic c is the coefficient of
            // t^{deg c - 1} in r.
            let u = r.0.get(deg as usize - 1).copied().unwrap_or(0);
            let tr = i64::from(self.field.trace(u));
            let term = self.cyc.mul(&self.zeta_n(k * t), &self.zeta_p(tr));
            acc = self.cyc.add(&acc, &term);
        }
        acc
    }

    fn residues(&self, degree: u32) -> Vec<Poly> {
        let q = self.q0();
        let count = q.pow(degree);
        let mut out = Vec::with_capacity(count as usize);
        for idx in 0..count {
            let mut coeffs = Vec::with_capacity(degree as usize);
            let mut v = idx;
            for _ in 0..degree {
                coeffs.push(v % q);
                v /= q;
            }
            out.push(Poly::from_coeffs(coeffs));
        }
        out
    }

    /// S-Hilbert symbol of coprime elements. In the monic regime with
    /// `q0 = 1 mod 2n` the reciprocity law degenerates to symmetry and the
    /// symbol is trivial.
    pub fn hilbert_symbol(&self, x: &Poly, y: &Poly) -> Result<Cyc> {
        if x.is_zero() || y.is_zero() {
            return Err(Error::InvalidInput("hilbert symbol of zero".into()));
        }
        if !self.poly_gcd(x, y).is_one() {
            return Err(Error::NotCoprime);
        }
        Ok(self.cyc.one())
    }

    /// `xi_B(c, c')`: the residue-symbol cocycle of twisted multiplicativity.
    pub fn xi_b(&self, data: &CartanData, c: &[Poly], c2: &[Poly]) -> Result<Cyc> {
        let r = data.rank();
        assert!(c.len() == r && c2.len() == r);
        let mut expo: i64 = 0;
        for i in 0..r {
            let bi = data.b_diag(i);
            expo += bi * self.symbol_exponent_or_trivial(&c[i], &c2[i])?;
            expo += bi * self.symbol_exponent_or_trivial(&c2[i], &c[i])?;
            for j in (i + 1)..r {
                let tb = two_bij(data, i, j);
                expo += tb * self.symbol_exponent_or_trivial(&c[i], &c2[j])?;
                expo += tb * self.symbol_exponent_or_trivial(&c2[i], &c[j])?;
            }
        }
        Ok(self.zeta_n(expo))
    }

    /// Exponent form of `xi_B`, for exact accumulation.
    pub fn xi_b_exponent(&self, data: &CartanData, c: &[Poly], c2: &[Poly]) -> Result<i64> {
        let r = data.rank();
        let mut expo: i64 = 0;
        for i in 0..r {
            let bi = data.b_diag(i);
            expo += bi * self.symbol_exponent_or_trivial(&c[i], &c2[i])?;
            expo += bi * self.symbol_exponent_or_trivial(&c2[i], &c[i])?;
            for j in (i + 1)..r {
                let tb = two_bij(data, i, j);
                expo += tb * self.symbol_exponent_or_trivial(&c[i], &c2[j])?;
                expo += tb * self.symbol_exponent_or_trivial(&c2[i], &c[j])?;
            }
        }
        Ok(expo.rem_euclid(i64::from(self.n)))
    }

    /// `[x/y]^{sign B} = prod_i (x_i / y_i)^{sign b_i}`.
    pub fn bracket_b(&self, data: &CartanData, x: &[Poly], y: &[Poly], sign: i64) -> Result<Cyc> {
        Ok(self.zeta_n(self.bracket_b_exponent(data, x, y, sign)?))
    }

    pub fn bracket_b_exponent(
        &self,
        data: &CartanData,
        x: &[Poly],
        y: &[Poly],
        sign: i64,
    ) -> Result<i64> {
        let r = data.rank();
        assert!(x.len() == r && y.len() == r);
        let mut expo: i64 = 0;
        for i in 0..r {
            expo += sign * data.b_diag(i) * self.symbol_exponent_or_trivial(&x[i], &y[i])?;
        }
        Ok(expo.rem_euclid(i64::from(self.n)))
    }

    fn symbol_exponent_or_trivial(&self, f: &Poly, g: &Poly) -> Result<i64> {
        let g = self.make_monic(g);
        if g.is_one() {
            return Ok(0);
        }
        self.residue_symbol_exponent(f, &g)
    }
}

fn two_bij(data: &CartanData, i: usize, j: usize) -> i64 {
    let v = data.b_entry(i, j) * crate::rat(2);
    debug_assert!(v.is_integer());
    v.to_integer().to_string().parse().unwrap()
}

fn merge_factor(out: &mut Vec<(Poly, u32)>, p: Poly, mult: u32) {
    if mult == 0 {
        return;
    }
    for (q, m) in out.iter_mut() {
        if *q == p {
            *m += mult;
            return;
        }
    }
    out.push((p, mult));
}

//! Local coefficients `H`: prime-power values extracted from `N(x; lambda)`
//! and global values assembled by twisted multiplicativity over the
//! function-field backend.
//!
//! The symbolic `N` is computed once per twisting weight and specialized per
//! prime, so one Weyl average serves every prime of every degree.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::action::{self, ActionContext};
use crate::arith::{FFRing, Poly};
use crate::cartan::{CartanData, DominantWeight, LatticeVector};
use crate::coeff::Specialization;
use crate::cyclotomic::Cyc;
use crate::dist::TruncatedDistribution;
use crate::error::{Error, Result};
use crate::rat;

/// Prime-power `H` values plus the assembly caches for global tuples.
pub struct HTable<'a> {
    ring: &'a FFRing,
    data: CartanData,
    cap: i64,
    n_cache: Mutex<HashMap<Vec<i64>, TruncatedDistribution>>,
    value_cache: Mutex<HashMap<(Poly, Vec<i64>, Vec<i64>), Cyc>>,
}

impl<'a> HTable<'a> {
    pub fn new(ring: &'a FFRing, data: CartanData, cap: i64) -> Result<HTable<'a>> {
        if data.n() != ring.n() {
            return Err(Error::InvalidInput(
                "cover degree mismatch between Cartan data and backend".into(),
            ));
        }
        Ok(HTable {
            ring,
            data,
            cap,
            n_cache: Mutex::new(HashMap::new()),
            value_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn ring(&self) -> &FFRing {
        self.ring
    }

    pub fn data(&self) -> &CartanData {
        &self.data
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    /// The symbolic `N(x; lambda)`, computed once per weight.
    pub fn n_symbolic(&self, lambda: &DominantWeight) -> Result<TruncatedDistribution> {
        {
            let cache = self.n_cache.lock().unwrap();
            if let Some(n) = cache.get(&lambda.0) {
                return Ok(n.clone());
            }
        }
        let ctx = ActionContext::new(self.data.clone(), lambda.clone(), self.cap)?;
        let n = action::n_series(&ctx)?;
        self.n_cache.lock().unwrap().insert(lambda.0.clone(), n.clone());
        Ok(n)
    }

    /// The numeric specialization at a prime: `q = |varpi|`,
    /// `gamma(i) = g(1, varpi; i)/q`.
    pub fn specialization_at(&self, prime: &Poly) -> Result<Specialization> {
        let n = self.ring.n();
        let q = rat(self.ring.norm(prime) as i64);
        let mut gammas = Vec::with_capacity(n as usize - 1);
        for i in 1..n {
            let g = self.ring.gauss_sum(&Poly::one(), prime, i64::from(i));
            gammas.push(self.ring.cyc_field().scale(&g, &(rat(1) / &q)));
        }
        Specialization::new(n, q, gammas, self.ring.cyc_field().clone())
    }

    /// `H(varpi_Q^beta; varpi_P^lambda)`: the `x^beta` coefficient of
    /// `N(x; lambda)` specialized at the prime.
    pub fn h_prime_power(
        &self,
        prime: &Poly,
        beta: &LatticeVector,
        lambda: &DominantWeight,
    ) -> Result<Cyc> {
        if beta.depth() > self.cap {
            return Err(Error::CapExceeded { requested: beta.depth(), available: self.cap });
        }
        if !beta.is_nonneg() {
            return Ok(self.ring.cyc_field().zero());
        }
        let key = (prime.clone(), beta.0.clone(), lambda.0.clone());
        {
            let cache = self.value_cache.lock().unwrap();
            if let Some(v) = cache.get(&key) {
                return Ok(v.clone());
            }
        }
        let n = self.n_symbolic(lambda)?;
        let sp = self.specialization_at(prime)?;
        let coeff = n.coeff(beta).expect("cap checked above");
        let value = coeff.specialize(&sp)?;
        self.value_cache.lock().unwrap().insert(key, value.clone());
        Ok(value)
    }

    /// Per-prime data of a tuple: the monic parts factored and regrouped as
    /// prime -> exponent vector.
    fn factor_tuple(&self, tuple: &[Poly]) -> Result<BTreeMap<Poly, Vec<i64>>> {
        let r = self.data.rank();
        let mut out: BTreeMap<Poly, Vec<i64>> = BTreeMap::new();
        for (i, f) in tuple.iter().enumerate() {
            if f.is_zero() {
                return Err(Error::InvalidInput("tuple entries must be nonzero".into()));
            }
            if f.degree() == 0 {
                continue;
            }
            for (prime, mult) in self.ring.factor(f) {
                out.entry(prime).or_insert_with(|| vec![0; r])[i] = i64::from(mult);
            }
        }
        Ok(out)
    }

    /// `H(c; m)` by twisted multiplicativity, primes processed in sorted order.
    pub fn h_global(&self, c: &[Poly], m: &[Poly]) -> Result<Cyc> {
        let primes: Vec<Poly> = self.factor_tuple(c)?.keys().cloned().collect();
        let order: Vec<usize> = (0..primes.len()).collect();
        self.h_global_with_order(c, m, &order)
    }

    /// `H(c; m)` with an explicit prime-processing order; the result must be
    /// independent of it, which the acceptance suite verifies.
    pub fn h_global_with_order(&self, c: &[Poly], m: &[Poly], order: &[usize]) -> Result<Cyc> {
        let r = self.data.rank();
        let field = self.ring.cyc_field();
        let c_blocks = self.factor_tuple(c)?;
        let m_blocks = self.factor_tuple(m)?;
        let primes: Vec<(Poly, Vec<i64>)> = c_blocks.into_iter().collect();
        assert_eq!(order.len(), primes.len(), "order must permute the prime list");

        let mut acc = field.one();
        let mut c_acc: Vec<Poly> = vec![Poly::one(); r];
        for &idx in order {
            let (prime, beta_coords) = &primes[idx];
            let beta = LatticeVector(beta_coords.clone());
            // lambda_varpi from m's factorization; m' = m with the varpi part removed.
            let lambda_coords = m_blocks.get(prime).cloned().unwrap_or_else(|| vec![0; r]);
            let lambda = DominantWeight(lambda_coords.clone());
            let mut m_prime = Vec::with_capacity(r);
            for (i, mi) in m.iter().enumerate() {
                let mut rest = self.ring.make_monic(mi);
                for _ in 0..lambda_coords[i] {
                    let (q, rem) = self.ring.poly_divrem(&rest, prime);
                    debug_assert!(rem.is_zero());
                    rest = q;
                }
                m_prime.push(rest);
            }
            let block_tuple: Vec<Poly> = beta_coords
                .iter()
                .map(|&k| self.poly_pow(prime, k as u32))
                .collect();
            // H(varpi-block; m) = [m'/varpi_Q^beta]^{-B} H(varpi^beta; varpi^lambda).
            let bracket = self.ring.bracket_b(&self.data, &m_prime, &block_tuple, -1)?;
            let local = self.h_prime_power(prime, &beta, &lambda)?;
            let block_value = field.mul(&bracket, &local);
            // Twisted multiplicativity against everything accumulated so far.
            let xi = self.ring.xi_b(&self.data, &c_acc, &block_tuple)?;
            acc = field.mul(&field.mul(&acc, &xi), &block_value);
            for i in 0..r {
                c_acc[i] = self.ring.poly_mul(&c_acc[i], &block_tuple[i]);
            }
        }
        Ok(acc)
    }

    fn poly_pow(&self, f: &Poly, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = self.ring.poly_mul(&acc, f);
        }
        acc
    }

    /// The twisted fiber series `N^{(varpi)}_{beta,i}(x; m)`: positions
    /// `beta + j m(alpha_i) alpha_i` inside `Q_+` up to the cap, with global
    /// `H` values as coefficients.
    pub fn n_twisted(
        &self,
        beta: &LatticeVector,
        i: usize,
        prime: &Poly,
        m: &[Poly],
    ) -> Result<BTreeMap<LatticeVector, Cyc>> {
        let step = i64::from(crate::roots::RootTable::m_simple(&self.data, i));
        let mut out = BTreeMap::new();
        let mut pos = beta.clone();
        // Walk down to the lowest fiber point inside Q_+ first.
        loop {
            let lower = pos.add_simple(i, -step);
            if lower.is_nonneg() && lower.depth() >= 0 {
                pos = lower;
            } else {
                break;
            }
        }
        while pos.depth() <= self.cap {
            if pos.is_nonneg() {
                let tuple: Vec<Poly> = pos
                    .0
                    .iter()
                    .map(|&k| self.poly_pow(prime, k as u32))
                    .collect();
                let value = self.h_global(&tuple, m)?;
                if !value.is_zero() {
                    out.insert(pos.clone(), value);
                }
            }
            pos = pos.add_simple(i, step);
        }
        Ok(out)
    }

    /// The bracket identity `N^{(varpi)}_{beta,i}(x; m) = [m'/varpi_Q^beta]^{-B} N_{beta,i}(x)`.
    pub fn n_twisted_bracket_check(
        &self,
        beta: &LatticeVector,
        i: usize,
        prime: &Poly,
        m: &[Poly],
    ) -> Result<bool> {
        let r = self.data.rank();
        let field = self.ring.cyc_field();
        let twisted = self.n_twisted(beta, i, prime, m)?;
        // lambda and m' at this prime.
        let m_blocks = self.factor_tuple(m)?;
        let lambda_coords = m_blocks.get(prime).cloned().unwrap_or_else(|| vec![0; r]);
        let lambda = DominantWeight(lambda_coords.clone());
        let mut m_prime = Vec::with_capacity(r);
        for (idx, mi) in m.iter().enumerate() {
            let mut rest = self.ring.make_monic(mi);
            for _ in 0..lambda_coords[idx] {
                rest = self.ring.poly_divrem(&rest, prime).0;
            }
            m_prime.push(rest);
        }
        let beta_tuple: Vec<Poly> = beta.0.iter().map(|&k| self.poly_pow(prime, k as u32)).collect();
        let bracket = self.ring.bracket_b(&self.data, &m_prime, &beta_tuple, -1)?;

        let n = self.n_symbolic(&lambda)?;
        let sp = self.specialization_at(prime)?;
        let step = i64::from(crate::roots::RootTable::m_simple(&self.data, i));
        let untwisted = n.fiber(beta, i, step);
        let mut expected: BTreeMap<LatticeVector, Cyc> = BTreeMap::new();
        for (pos, coeff) in untwisted.terms() {
            let v = field.mul(&bracket, &coeff.specialize(&sp)?);
            if !v.is_zero() {
                expected.insert(pos.clone(), v);
            }
        }
        Ok(twisted == expected)
    }

    /// The twisted local functional equation of `f^{(varpi)}_{beta,i}(x; m)`,
    /// verified coefficient-by-coefficient on the exactness window.
    pub fn f_twisted_fe_check(
        &self,
        beta: &LatticeVector,
        i: usize,
        prime: &Poly,
        m: &[Poly],
    ) -> Result<bool> {
        if beta.depth() > self.cap {
            return Err(Error::CapExceeded { requested: beta.depth(), available: self.cap });
        }
        let r = self.data.rank();
        let field = self.ring.cyc_field();
        let q_rat = rat(self.ring.norm(prime) as i64);
        let q_pow = |e: i64| -> Cyc {
            let mut acc = rat(1);
            for _ in 0..e.unsigned_abs() {
                acc *= &q_rat;
            }
            if e < 0 {
                acc = rat(1) / acc;
            }
            field.from_rat(acc)
        };
        let step = i64::from(crate::roots::RootTable::m_simple(&self.data, i));
        // lambda_varpi and m' from m's factorization.
        let m_blocks = self.factor_tuple(m)?;
        let lambda_coords = m_blocks.get(prime).cloned().unwrap_or_else(|| vec![0; r]);
        let lambda = DominantWeight(lambda_coords.clone());
        let mut m_prime = Vec::with_capacity(r);
        for (idx, mi) in m.iter().enumerate() {
            let mut rest = self.ring.make_monic(mi);
            for _ in 0..lambda_coords[idx] {
                rest = self.ring.poly_divrem(&rest, prime).0;
            }
            m_prime.push(rest);
        }
        let mu = self.data.mu(&lambda, beta, i);
        let mu0 = self.data.mu(&lambda, &LatticeVector::zero(r), i);

        let fiber1 = self.n_twisted(beta, i, prime, m)?;
        let numerator: BTreeMap<LatticeVector, Cyc> = if mu.rem_euclid(step) != 0 {
            let dot = self.data.dot_step(&lambda, beta, i);
            let fiber2 = self.n_twisted(&dot, i, prime, m)?;
            let z = (-mu).rem_euclid(step);
            let g = self.ring.gauss_sum(&m_prime[i], prime, -self.data.b_diag(i) * mu);
            // q^{-1} g(m'_i, varpi; -b_i mu) (q x^{alpha_i})^{(-mu)_m}.
            let twist = field.mul(&field.scale(&g, &(rat(1) / &q_rat)), &q_pow(z));
            let mut out = fiber1.clone();
            for (pos, v) in fiber2 {
                let shifted = pos.add_simple(i, z);
                let term = field.neg(&field.mul(&twist, &v));
                merge_cyc(field, &mut out, shifted, term);
            }
            out
        } else {
            fiber1
        };
        // Divide by 1 - q^{m-1} x^{m alpha_i}: multiply by the geometric series.
        let mut f: BTreeMap<LatticeVector, Cyc> = BTreeMap::new();
        for (pos, v) in &numerator {
            let mut cur = pos.clone();
            let mut scale = v.clone();
            while cur.depth() <= self.cap {
                merge_cyc(field, &mut f, cur.clone(), scale.clone());
                cur = cur.add_simple(i, step);
                scale = field.mul(&scale, &q_pow(step - 1));
            }
        }
        if f.is_empty() {
            return Ok(true);
        }
        let e = if mu.rem_euclid(step) != 0 {
            mu.rem_euclid(step) - mu0
        } else {
            step - mu0
        };
        let mut lhs: BTreeMap<LatticeVector, Cyc> = BTreeMap::new();
        let mut rhs: BTreeMap<LatticeVector, Cyc> = BTreeMap::new();
        for (p, v) in &f {
            lhs.insert(self.data.reflect(p, i), field.mul(v, &q_pow(-self.data.pair_h(p, i))));
            rhs.insert(p.add_simple(i, e), field.mul(v, &q_pow(e)));
        }
        let keys: std::collections::BTreeSet<LatticeVector> =
            lhs.keys().chain(rhs.keys()).cloned().collect();
        let mut compared = 0usize;
        for g in keys {
            let known_l = self.data.reflect(&g, i).depth() <= self.cap;
            let known_r = g.depth() - e <= self.cap;
            if !(known_l && known_r) {
                continue;
            }
            compared += 1;
            let zero = field.zero();
            let l = lhs.get(&g).unwrap_or(&zero);
            let r = rhs.get(&g).unwrap_or(&zero);
            if l != r {
                return Ok(false);
            }
        }
        if compared == 0 {
            return Err(Error::CapExceeded { requested: self.cap, available: self.cap });
        }
        Ok(true)
    }
}

fn merge_cyc(
    field: &crate::cyclotomic::CycField,
    map: &mut BTreeMap<LatticeVector, Cyc>,
    key: LatticeVector,
    val: Cyc,
) {
    let entry = map.entry(key.clone()).or_insert_with(|| field.zero());
    *entry = field.add(entry, &val);
    if entry.is_zero() {
        map.remove(&key);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank_one_setup() -> (CartanData, FFRing) {
        let data = CartanData::with_symmetrization(
            vec![vec![2]],
            2,
            vec![rat(2)],
            vec![vec![rat(1)]],
        )
        .unwrap();
        let ring = FFRing::new(5, 1, 2).unwrap();
        (data, ring)
    }

    #[test]
    fn h_prime_power_rank_one() {
        let (data, ring) = rank_one_setup();
        let table = HTable::new(&ring, data, 6).unwrap();
        let lambda = DominantWeight::zero(1);
        let prime = Poly::t();
        // beta = 0 gives 1.
        let v = table.h_prime_power(&prime, &LatticeVector(vec![0]), &lambda).unwrap();
        assert_eq!(v, ring.cyc_field().one());
        // beta = alpha gives the quadratic Gauss sum g(1, t; 1).
        let v = table.h_prime_power(&prime, &LatticeVector(vec![1]), &lambda).unwrap();
        assert_eq!(v, ring.gauss_sum(&Poly::one(), &prime, 1));
        // beta = 2 alpha vanishes.
        let v = table.h_prime_power(&prime, &LatticeVector(vec![2]), &lambda).unwrap();
        assert!(v.is_zero());
        // Beyond the cap: error.
        assert!(matches!(
            table.h_prime_power(&prime, &LatticeVector(vec![9]), &lambda),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn h_global_rank_one_two_primes() {
        let (data, ring) = rank_one_setup();
        let table = HTable::new(&ring, data, 6).unwrap();
        let p1 = Poly::t();
        let p2 = Poly(vec![1, 1]);
        let c = vec![ring.poly_mul(&p1, &p2)];
        let m = vec![Poly::one()];
        let val = table.h_global(&c, &m).unwrap();
        // One application of twisted multiplicativity:
        // xi(p1, p2) g(1,p1;1) g(1,p2;1) with xi = (p1/p2)(p2/p1).
        let field = ring.cyc_field();
        let xi = field.mul(
            &ring.residue_symbol(&p1, &p2).unwrap(),
            &ring.residue_symbol(&p2, &p1).unwrap(),
        );
        let expect = field.mul(
            &xi,
            &field.mul(
                &ring.gauss_sum(&Poly::one(), &p1, 1),
                &ring.gauss_sum(&Poly::one(), &p2, 1),
            ),
        );
        assert_eq!(val, expect);
        // Units give 1.
        assert_eq!(
            table.h_global(&[Poly::one()], &m).unwrap(),
            field.one()
        );
        // Single prime block reduces to the prime-power value.
        assert_eq!(
            table.h_global(std::slice::from_ref(&p1), &m).unwrap(),
            ring.gauss_sum(&Poly::one(), &p1, 1)
        );
    }

    #[test]
    fn twisted_bracket_identity_rank_one() {
        let (data, ring) = rank_one_setup();
        let table = HTable::new(&ring, data, 6).unwrap();
        let prime = Poly::t();
        let other = Poly(vec![1, 1]);
        for m in [vec![Poly::one()], vec![other.clone()]] {
            for beta in [LatticeVector(vec![0]), LatticeVector(vec![1])] {
                assert!(table.n_twisted_bracket_check(&beta, 0, &prime, &m).unwrap());
            }
        }
    }

    #[test]
    fn twisted_fe_rank_one() {
        let (data, ring) = rank_one_setup();
        let table = HTable::new(&ring, data, 8).unwrap();
        let prime = Poly::t();
        let other = Poly(vec![1, 1]);
        for m in [vec![Poly::one()], vec![other.clone()], vec![prime.clone()]] {
            for k in 0..=3i64 {
                let beta = LatticeVector(vec![k]);
                assert!(
                    table.f_twisted_fe_check(&beta, 0, &prime, &m).unwrap(),
                    "twisted FE fails at beta = {k}, m = {}",
                    m[0].display()
                );
            }
        }
    }

    #[test]
    fn m_shift_law() {
        // H(c; m m') = [m'/c]^{-B} H(c; m) for coprime configurations.
        let (data, ring) = rank_one_setup();
        let table = HTable::new(&ring, data.clone(), 6).unwrap();
        let p1 = Poly::t();
        let p2 = Poly(vec![1, 1]);
        let p3 = Poly(vec![2, 1]);
        for c in [vec![p1.clone()], vec![ring.poly_mul(&p1, &p2)]] {
            for m in [vec![Poly::one()], vec![p1.clone()]] {
                let m_prime = vec![p3.clone()];
                let mm: Vec<Poly> = m
                    .iter()
                    .zip(&m_prime)
                    .map(|(a, b)| ring.poly_mul(a, b))
                    .collect();
                let lhs = table.h_global(&c, &mm).unwrap();
                let bracket = ring.bracket_b(&data, &m_prime, &c, -1).unwrap();
                let rhs = ring.cyc_field().mul(&bracket, &table.h_global(&c, &m).unwrap());
                assert_eq!(lhs, rhs, "m-shift law fails");
            }
        }
    }

    #[test]
    fn order_independence_small() {
        let (data, ring) = rank_one_setup();
        let table = HTable::new(&ring, data, 6).unwrap();
        let p1 = Poly::t();
        let p2 = Poly(vec![1, 1]);
        let p3 = Poly(vec![2, 1]);
        let c = vec![ring.poly_mul(&ring.poly_mul(&p1, &p2), &p3)];
        let m = vec![Poly::one()];
        let base = table.h_global_with_order(&c, &m, &[0, 1, 2]).unwrap();
        for order in [[1, 0, 2], [2, 1, 0], [0, 2, 1], [2, 0, 1], [1, 2, 0]] {
            assert_eq!(table.h_global_with_order(&c, &m, &order).unwrap(), base);
        }
    }
}

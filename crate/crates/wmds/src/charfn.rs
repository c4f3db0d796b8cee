//! Independent character oracle: Freudenthal weight multiplicities and the
//! comparison against the n = 1 reduction of the deformed character.
//!
//! Freudenthal is algorithmically independent of the Weyl-averaging pipeline
//! it checks: it never touches the metaplectic action, only the bilinear
//! form and the root multiplicities.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::action::{self, ActionContext};
use crate::cartan::{CartanData, DominantWeight, LatticeVector};
use crate::coeff::CoeffElement;
use crate::error::{Error, Result};
use crate::roots::RootTable;
use crate::{rat, Rat};

/// Weight multiplicities of `V(lambda)`, keyed by the offset
/// `beta = lambda - mu` in `Q_+`.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub lambda: DominantWeight,
    pub cap: i64,
    mults: BTreeMap<LatticeVector, i64>,
}

impl CharacterTable {
    /// Multiplicity of the weight `lambda - beta` (0 when absent).
    pub fn mult(&self, beta: &LatticeVector) -> i64 {
        self.mults.get(beta).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticeVector, &i64)> {
        self.mults.iter()
    }

    pub fn dump_csv(&self) -> String {
        let mut rows: Vec<(&LatticeVector, &i64)> = self.mults.iter().collect();
        rows.sort_by_key(|(b, _)| (b.depth(), (*b).clone()));
        let mut out = String::new();
        for (b, m) in rows {
            let coords: Vec<String> = b.0.iter().map(|k| k.to_string()).collect();
            out.push_str(&format!("{},{},{}\n", coords.join(","), b.depth(), m));
        }
        out
    }
}

/// Weight multiplicities of the irreducible module `V(lambda)` by the
/// Freudenthal recursion, to offsets of depth at most `cap`.
pub fn freudenthal(
    data: &CartanData,
    table: &RootTable,
    lambda: &DominantWeight,
    cap: i64,
) -> Result<CharacterTable> {
    assert!(table.depth() >= cap, "root table too shallow for the requested cap");
    let r = data.rank();
    let mut mults: BTreeMap<LatticeVector, i64> = BTreeMap::new();
    mults.insert(LatticeVector::zero(r), 1);

    let mut layer = vec![LatticeVector::zero(r)];
    for _ in 1..=cap {
        let mut next = std::collections::BTreeSet::new();
        for v in &layer {
            for i in 0..r {
                next.insert(v.add_simple(i, 1));
            }
        }
        layer = next.into_iter().collect();
        for beta in &layer {
            // denominator: (lambda+rho, lambda+rho) - (lambda-beta+rho, ...)
            //            = 2 (lambda+ rho, beta) - (beta, beta).
            let denom = rat(2) * (data.weight_pair(lambda, beta) + data.rho_pair(beta))
                - data.bilinear(beta, beta);
            let mut num = Rat::zero();
            for (alpha, info) in table.iter() {
                let mut k = 1i64;
                loop {
                    let prev = beta.sub(&alpha.scaled(k));
                    if !prev.is_nonneg() {
                        break;
                    }
                    let m_prev = mults.get(&prev).copied().unwrap_or(0);
                    if m_prev != 0 {
                        // (lambda - beta + k alpha, alpha)
                        let pair = data.weight_pair(lambda, alpha) - data.bilinear(beta, alpha)
                            + rat(k) * data.bilinear(alpha, alpha);
                        num += rat(2 * i64::from(info.mult) * m_prev) * pair;
                    }
                    k += 1;
                }
            }
            if denom.is_zero() {
                if !num.is_zero() {
                    return Err(Error::NonIntegerMultiplicity(beta.to_string()));
                }
                continue;
            }
            let m = num / denom;
            if !m.is_integer() {
                return Err(Error::NonIntegerMultiplicity(beta.to_string()));
            }
            let m: i64 = m.to_integer().to_string().parse().unwrap();
            if m < 0 {
                return Err(Error::NonIntegerMultiplicity(beta.to_string()));
            }
            if m > 0 {
                mults.insert(beta.clone(), m);
            }
        }
    }
    Ok(CharacterTable { lambda: lambda.clone(), cap, mults })
}

/// Outcome of the n = 1 comparison: under `q x^{alpha_i} -> z^{-alpha_i}` the
/// deformed character must become the Weyl-Kac character of `V(lambda)`,
/// i.e. the coefficient of `x^beta` in `h` must be `mult * q^{d(beta)}`.
#[derive(Clone, Debug)]
pub struct CompareReport {
    pub ok: bool,
    pub checked: usize,
    pub mismatches: Vec<String>,
}

pub fn compare_n1(ctx: &ActionContext, cap: i64) -> Result<CompareReport> {
    if ctx.data.n() != 1 {
        return Err(Error::InvalidInput("compare_n1 requires n = 1".into()));
    }
    let cap = cap.min(ctx.cap);
    let h = action::h_char(ctx)?;
    let chars = freudenthal(&ctx.data, &ctx.table, &ctx.lambda, cap)?;
    let mut mismatches = Vec::new();
    let mut checked = 0usize;

    // Every position of depth <= cap in Q_+ is compared, in both directions.
    let r = ctx.rank();
    let mut layer = vec![LatticeVector::zero(r)];
    let mut all = layer.clone();
    for _ in 1..=cap {
        let mut next = std::collections::BTreeSet::new();
        for v in &layer {
            for i in 0..r {
                next.insert(v.add_simple(i, 1));
            }
        }
        layer = next.into_iter().collect();
        all.extend(layer.iter().cloned());
    }
    for beta in all {
        checked += 1;
        let coeff = h.coeff(&beta).expect("h computed to cap");
        let mult = chars.mult(&beta);
        let expect = if mult == 0 {
            CoeffElement::zero(1)
        } else {
            CoeffElement::q_pow(1, beta.depth()).scale(&rat(mult))
        };
        if coeff != expect {
            mismatches.push(format!(
                "at {beta}: h gives {coeff}, character gives {mult} * q^{}",
                beta.depth()
            ));
        }
    }
    Ok(CompareReport { ok: mismatches.is_empty(), checked, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CartanData {
        CartanData::new(vec![vec![2, -1], vec![-1, 2]], 1).unwrap()
    }

    #[test]
    fn fundamental_rep_of_a2() {
        let data = a2();
        let table = RootTable::generate(&data, 4);
        let lambda = DominantWeight::fundamental(2, 0);
        let chars = freudenthal(&data, &table, &lambda, 4).unwrap();
        // V(omega_1) is 3-dimensional: weights at offsets 0, alpha_1, alpha_1 + alpha_2.
        assert_eq!(chars.mult(&LatticeVector(vec![0, 0])), 1);
        assert_eq!(chars.mult(&LatticeVector(vec![1, 0])), 1);
        assert_eq!(chars.mult(&LatticeVector(vec![1, 1])), 1);
        let total: i64 = chars.iter().map(|(_, m)| m).sum();
        assert_eq!(total, 3);
    }

    #[test]
    fn adjoint_rep_zero_weight_space() {
        let data = a2();
        let table = RootTable::generate(&data, 4);
        let rho = DominantWeight::rho(2);
        let chars = freudenthal(&data, &table, &rho, 3).unwrap();
        // Adjoint of sl_3: the zero weight (offset alpha_1 + alpha_2 from rho)
        // has multiplicity 2.
        assert_eq!(chars.mult(&LatticeVector(vec![1, 1])), 2);
        assert_eq!(chars.mult(&LatticeVector(vec![1, 0])), 1);
    }

    #[test]
    fn dot_orbit_symmetry() {
        // m_{lambda - beta} = m_{lambda - beta'} for reflected offsets
        // beta' = beta + (mu_i(beta) - 1) alpha_i within the cap.
        let data = a2();
        let table = RootTable::generate(&data, 6);
        for lambda in [DominantWeight::fundamental(2, 0), DominantWeight::rho(2)] {
            let chars = freudenthal(&data, &table, &lambda, 6).unwrap();
            for (beta, m) in chars.iter() {
                for i in 0..2 {
                    let mu = data.mu(&lambda, beta, i);
                    let refl = beta.add_simple(i, mu - 1);
                    if refl.is_nonneg() && refl.depth() <= 6 {
                        assert_eq!(chars.mult(&refl), *m, "orbit symmetry at {beta}, i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn compare_n1_a2() {
        let data = a2();
        for lambda in [
            DominantWeight::zero(2),
            DominantWeight::fundamental(2, 0),
            DominantWeight::rho(2),
        ] {
            let ctx = ActionContext::new(data.clone(), lambda, 5).unwrap();
            let report = compare_n1(&ctx, 5).unwrap();
            assert!(report.ok, "{:?}", report.mismatches);
        }
    }

    #[test]
    fn compare_n1_affine() {
        let data = CartanData::new(vec![vec![2, -2], vec![-2, 2]], 1).unwrap();
        for lambda in [DominantWeight::zero(2), DominantWeight::fundamental(2, 0)] {
            let ctx = ActionContext::new(data.clone(), lambda.clone(), 5).unwrap();
            let report = compare_n1(&ctx, 5).unwrap();
            assert!(report.ok, "lambda = {lambda:?}: {:?}", report.mismatches);
        }
    }

    #[test]
    fn compare_n1_hyperbolic_checks_denominator_identity() {
        // For lambda = 0 and n = 1 the comparison reduces to the Weyl-Kac
        // denominator identity: the alternating Weyl sum (inversion sets)
        // against the root-multiplicity product (Peterson). Two independent
        // computations of the hyperbolic multiplicities must agree.
        let data = CartanData::new(vec![vec![2, -3], vec![-3, 2]], 1).unwrap();
        for lambda in [DominantWeight::zero(2), DominantWeight::fundamental(2, 1)] {
            let ctx = ActionContext::new(data.clone(), lambda.clone(), 5).unwrap();
            let report = compare_n1(&ctx, 5).unwrap();
            assert!(report.ok, "lambda = {lambda:?}: {:?}", report.mismatches);
        }
    }

    #[test]
    fn compare_n1_rank_one_tower() {
        let data = CartanData::new(vec![vec![2]], 1).unwrap();
        for l in 0..=3 {
            let ctx = ActionContext::new(data.clone(), DominantWeight(vec![l]), 6).unwrap();
            let report = compare_n1(&ctx, 6).unwrap();
            assert!(report.ok, "lambda = {l}: {:?}", report.mismatches);
        }
    }
}

//! Root generation with multiplicities, the torsion integers `m(alpha)`,
//! and the sublattice `Q'`.
//!
//! Multiplicities come from the Peterson recursion, memoized over `Q_+` up to
//! the depth cap, with `(rho, alpha_i) = b_i / 2`. Real roots are exactly the
//! generated roots of positive norm and always have multiplicity one.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::cartan::{CartanData, LatticeVector};
use crate::error::{Error, Result};
use crate::{rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInfo {
    pub mult: u32,
    pub is_real: bool,
    pub m_alpha: u32,
}

/// Positive roots of depth at most the cap, with multiplicities and the
/// integers `m(alpha) = n / gcd(n, (alpha, alpha))` (real) or `n` (imaginary).
#[derive(Clone, Debug)]
pub struct RootTable {
    data: CartanData,
    depth: i64,
    positives: BTreeMap<LatticeVector, RootInfo>,
}

impl RootTable {
    /// Generate all positive roots with `d(alpha) <= depth`.
    ///
    /// Panics if the Peterson recursion produces a non-integral or negative
    /// multiplicity, which would mean inconsistent root data.
    pub fn generate(data: &CartanData, depth: i64) -> RootTable {
        assert!(depth >= 1, "depth cap must be at least 1");
        let r = data.rank();
        let mut c: BTreeMap<LatticeVector, Rat> = BTreeMap::new();
        let mut positives = BTreeMap::new();

        let mut layer: Vec<LatticeVector> = vec![LatticeVector::zero(r)];
        for d in 1..=depth {
            layer = extend_layer(&layer, r);
            for beta in &layer {
                let c_beta = if d == 1 {
                    rat(1) // simple roots
                } else {
                    peterson_c(data, beta, &c, &positives)
                };
                if !c_beta.is_zero() {
                    c.insert(beta.clone(), c_beta);
                }
            }
            for beta in &layer {
                let mut mult = c.get(beta).cloned().unwrap_or_else(Rat::zero);
                for k in 2..=d {
                    if beta.0.iter().all(|&x| x % k == 0) {
                        let sub = LatticeVector(beta.0.iter().map(|&x| x / k).collect());
                        if let Some(info) = positives.get(&sub) {
                            let m: &RootInfo = info;
                            mult -= rat(i64::from(m.mult)) / rat(k);
                        }
                    }
                }
                assert!(
                    mult.is_integer() && !mult.is_negative(),
                    "Peterson recursion gave mult {mult} at {beta}"
                );
                let mult_u = mult.to_integer().to_string().parse::<u32>().unwrap();
                if mult_u > 0 {
                    let norm = data.norm(beta);
                    let is_real = norm > 0;
                    let n = data.n();
                    let m_alpha = if is_real {
                        n / gcd_u(n, norm.unsigned_abs() as u32)
                    } else {
                        n
                    };
                    if is_real {
                        assert_eq!(mult_u, 1, "real root {beta} with mult {mult_u}");
                    }
                    positives.insert(beta.clone(), RootInfo { mult: mult_u, is_real, m_alpha });
                }
            }
        }
        RootTable { data: data.clone(), depth, positives }
    }

    pub fn data(&self) -> &CartanData {
        &self.data
    }

    pub fn depth(&self) -> i64 {
        self.depth
    }

    pub fn is_root(&self, beta: &LatticeVector) -> bool {
        self.positives.contains_key(beta)
    }

    pub fn info(&self, beta: &LatticeVector) -> Option<&RootInfo> {
        self.positives.get(beta)
    }

    /// `m(alpha)` for a root in the table.
    pub fn m_of(&self, beta: &LatticeVector) -> Result<u32> {
        self.positives
            .get(beta)
            .map(|i| i.m_alpha)
            .ok_or_else(|| Error::NotARoot(beta.to_string()))
    }

    /// `m(alpha)` for a real root given by coordinates, with no table lookup.
    pub fn m_real(data: &CartanData, beta: &LatticeVector) -> u32 {
        let norm = data.norm(beta);
        debug_assert!(norm > 0, "m_real on a root of norm {norm}");
        let n = data.n();
        n / gcd_u(n, norm.unsigned_abs() as u32)
    }

    /// `m(alpha_i)` for a simple root.
    pub fn m_simple(data: &CartanData, i: usize) -> u32 {
        let n = data.n();
        n / gcd_u(n, data.b_diag(i).unsigned_abs() as u32)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticeVector, &RootInfo)> {
        self.positives.iter()
    }

    /// Roots in depth-increasing (then lexicographic) order.
    pub fn sorted_by_depth(&self) -> Vec<(&LatticeVector, &RootInfo)> {
        let mut v: Vec<_> = self.positives.iter().collect();
        v.sort_by_key(|(b, _)| (b.depth(), (*b).clone()));
        v
    }
}

fn extend_layer(prev: &[LatticeVector], rank: usize) -> Vec<LatticeVector> {
    let mut set = std::collections::BTreeSet::new();
    for v in prev {
        for i in 0..rank {
            set.insert(v.add_simple(i, 1));
        }
    }
    set.into_iter().collect()
}

fn peterson_c(
    data: &CartanData,
    beta: &LatticeVector,
    c: &BTreeMap<LatticeVector, Rat>,
    positives: &BTreeMap<LatticeVector, RootInfo>,
) -> Rat {
    // ((beta, beta) - 2 (rho, beta)) c_beta = sum over ordered splits.
    let denom = data.bilinear(beta, beta) - rat(2) * data.rho_pair(beta);
    let mut rhs = Rat::zero();
    for (b1, c1) in c.range(..beta.clone()) {
        if !b1.le(beta) || b1.is_zero() {
            continue;
        }
        let b2 = beta.sub(b1);
        if b2.is_zero() {
            continue;
        }
        if let Some(c2) = c.get(&b2) {
            rhs += data.bilinear(b1, &b2) * c1 * c2;
        }
    }
    if denom.is_zero() {
        // The denominator vanishes only when beta is not a root (imaginary
        // roots give a strictly negative value, non-simple real roots have
        // coroot height >= 2), so c_beta is the divisor sum alone.
        assert!(rhs.is_zero(), "Peterson consistency failed at {beta}");
        let mut acc = Rat::zero();
        for k in 2..=beta.depth() {
            if beta.0.iter().all(|&x| x % k == 0) {
                let sub = LatticeVector(beta.0.iter().map(|&x| x / k).collect());
                if let Some(info) = positives.get(&sub) {
                    acc += rat(i64::from(info.mult)) / rat(k);
                }
            }
        }
        return acc;
    }
    rhs / denom
}

fn gcd_u(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u(b, a % b)
    }
}

/// The sublattice `Q' = span{ m(alpha_i) alpha_i }`.
#[derive(Clone, Debug)]
pub struct QPrimeLattice {
    pub basis_scales: Vec<u32>,
}

impl QPrimeLattice {
    pub fn new(data: &CartanData) -> Self {
        let basis_scales = (0..data.rank()).map(|i| RootTable::m_simple(data, i)).collect();
        QPrimeLattice { basis_scales }
    }

    pub fn contains(&self, beta: &LatticeVector) -> bool {
        beta.0
            .iter()
            .zip(&self.basis_scales)
            .all(|(&k, &m)| k % i64::from(m) == 0)
    }
}

/// Per-(i, j) verification of parts (1) and (3) of the lattice lemma:
/// `2 m(alpha_i)(alpha_i, alpha_j) / (m(alpha_j)(alpha_j, alpha_j))` is an
/// integer, and the generators of `Q'` pair into `m(alpha_j) Z`.
#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub part1_ok: bool,
    pub part3_ok: bool,
    pub failures: Vec<String>,
}

pub fn lemma_checks(data: &CartanData) -> LemmaReport {
    let r = data.rank();
    let q = QPrimeLattice::new(data);
    let mut failures = Vec::new();
    let mut part1_ok = true;
    let mut part3_ok = true;
    for i in 0..r {
        let mi = i64::from(q.basis_scales[i]);
        for j in 0..r {
            let mj = i64::from(q.basis_scales[j]);
            let num = rat(2 * mi) * data.b_entry(i, j);
            let den = rat(mj * data.b_diag(j));
            let ratio = num / den;
            if !ratio.is_integer() {
                part1_ok = false;
                failures.push(format!("part1 fails at (i,j)=({},{})", i + 1, j + 1));
            }
            // Part 3 on generators: (m_i alpha_i)(h_j) in m_j Z.
            let gen = LatticeVector::simple(r, i).scaled(mi);
            if data.pair_h(&gen, j) % mj != 0 {
                part3_ok = false;
                failures.push(format!("part3 fails at (i,j)=({},{})", i + 1, j + 1));
            }
        }
    }
    LemmaReport { part1_ok, part3_ok, failures }
}

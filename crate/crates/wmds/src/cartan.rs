//! Generalized Cartan matrices, symmetrizations, and lattice bookkeeping.
//!
//! [`CartanData`] fixes a symmetrizable generalized Cartan matrix `A`, a
//! decomposition `A = diag(epsilon) B` with `B` symmetric half-integral, and
//! the degree `n` of the metaplectic cover. Everything downstream (roots,
//! the coefficient ring, the Weyl action) reads its pairings from here.
//!
//! Lattice points `beta = sum k_i alpha_i` are [`LatticeVector`]s; dominant
//! weights `lambda = sum l_i omega_i` are [`DominantWeight`]s; spectral
//! parameters carry only the values `s_i = alpha_i(s)` ([`HPoint`]).

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{rat, Rat};

/// A point of the root lattice `Q`, stored as coefficients over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![0; rank])
    }

    /// The i-th simple root (0-indexed).
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Depth `d(beta) = beta(rho^vee) = k_1 + ... + k_r`.
    pub fn depth(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    /// Componentwise `beta >= 0`, i.e. membership in `Q_+` (including 0).
    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&k| k >= 0)
    }

    /// Partial order on `Q`: `self <= other` iff `other - self` lies in `Q_+`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scaled(&self, c: i64) -> Self {
        LatticeVector(self.0.iter().map(|a| c * a).collect())
    }

    /// Add `c * alpha_i`.
    pub fn add_simple(&self, i: usize, c: i64) -> Self {
        let mut v = self.0.clone();
        v[i] += c;
        LatticeVector(v)
    }
}

impl std::fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// A dominant weight `lambda = sum l_i omega_i` with all `l_i >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DominantWeight(pub Vec<i64>);

impl DominantWeight {
    pub fn zero(rank: usize) -> Self {
        DominantWeight(vec![0; rank])
    }

    /// The i-th fundamental weight (0-indexed).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        DominantWeight(v)
    }

    /// rho = sum of all fundamental weights.
    pub fn rho(rank: usize) -> Self {
        DominantWeight(vec![1; rank])
    }

    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.iter().any(|&l| l < 0) {
            return Err(Error::InvalidInput(
                "dominant weight needs nonnegative coordinates".into(),
            ));
        }
        Ok(DominantWeight(coords))
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

/// A spectral parameter, recorded through the values `s_i = alpha_i(s)` with
/// exact rational real and imaginary parts. The degenerate directions of the
/// full realization are deliberately not represented.
#[derive(Clone, Debug, PartialEq)]
pub struct HPoint {
    pub re: Vec<Rat>,
    pub im: Vec<Rat>,
}

impl HPoint {
    pub fn real(re: Vec<Rat>) -> Self {
        let im = vec![Rat::zero(); re.len()];
        HPoint { re, im }
    }

    pub fn real_from_ints(vals: &[i64]) -> Self {
        HPoint::real(vals.iter().map(|&v| rat(v)).collect())
    }

    pub fn rank(&self) -> usize {
        self.re.len()
    }

    /// The fixed point of every circle action: all `s_i = 1` (this is rho-vee).
    pub fn rho_vee(rank: usize) -> Self {
        HPoint::real(vec![rat(1); rank])
    }

    pub fn re_f64(&self) -> Vec<f64> {
        self.re.iter().map(rat_to_f64).collect()
    }

    pub fn im_f64(&self) -> Vec<f64> {
        self.im.iter().map(rat_to_f64).collect()
    }
}

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Good enough for the magnitudes this crate produces.
    let nf: f64 = n.to_string().parse().unwrap_or(f64::NAN);
    let df: f64 = d.to_string().parse().unwrap_or(f64::NAN);
    nf / df
}

/// JSON wire form of [`CartanData`]: `{"A": [[...]], "n": k}` with optional
/// `"epsilon"` and `"B"` overriding the canonical symmetrization.
#[derive(Serialize, Deserialize)]
pub struct CartanJson {
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    #[serde(rename = "B")]
    pub b: Option<Vec<Vec<String>>>,
}

/// A symmetrizable generalized Cartan matrix together with a fixed
/// decomposition `A = diag(epsilon) B` and the cover degree `n`.
///
/// Immutable after construction; all methods are pure.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanData {
    rank: usize,
    a: Vec<Vec<i64>>,
    epsilon: Vec<Rat>,
    b: Vec<Vec<Rat>>,
    n: u32,
}

impl CartanData {
    /// Build from a generalized Cartan matrix, choosing the canonical
    /// symmetrization (see [`symmetrize`]).
    pub fn new(a: Vec<Vec<i64>>, n: u32) -> Result<Self> {
        let (epsilon, b) = symmetrize(&a)?;
        Self::with_symmetrization(a, n, epsilon, b)
    }

    /// Build from a user-supplied decomposition, validating it against the
    /// paper's constraints.
    pub fn with_symmetrization(
        a: Vec<Vec<i64>>,
        n: u32,
        epsilon: Vec<Rat>,
        b: Vec<Vec<Rat>>,
    ) -> Result<Self> {
        validate_gcm(&a)?;
        let r = a.len();
        if n == 0 {
            return Err(Error::InvalidInput("cover degree n must be positive".into()));
        }
        if epsilon.len() != r || b.len() != r || b.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidInput("dimension mismatch in (epsilon, B)".into()));
        }
        for e in &epsilon {
            if !e.is_positive() {
                return Err(Error::InvalidInput("epsilon entries must be positive".into()));
            }
        }
        let two = rat(2);
        for i in 0..r {
            for j in 0..r {
                if &epsilon[i] * &b[i][j] != rat(a[i][j]) {
                    return Err(Error::InvalidInput("diag(epsilon)*B != A".into()));
                }
                if b[i][j] != b[j][i] {
                    return Err(Error::InvalidInput("B is not symmetric".into()));
                }
                if !(&b[i][j] * &two).is_integer() {
                    return Err(Error::InvalidInput("B is not half-integral".into()));
                }
            }
            if !b[i][i].is_integer() {
                return Err(Error::InvalidInput("diagonal of B is not integral".into()));
            }
        }
        Ok(CartanData { rank: r, a, epsilon, b, n })
    }

    pub fn from_json(json: &CartanJson) -> Result<Self> {
        match (&json.epsilon, &json.b) {
            (Some(eps), Some(b)) => {
                let eps = eps.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?;
                let b = b
                    .iter()
                    .map(|row| row.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Self::with_symmetrization(json.a.clone(), json.n, eps, b)
            }
            (None, None) => Self::new(json.a.clone(), json.n),
            _ => Err(Error::InvalidInput(
                "epsilon and B must be supplied together".into(),
            )),
        }
    }

    pub fn to_json(&self) -> CartanJson {
        CartanJson {
            a: self.a.clone(),
            n: self.n,
            epsilon: Some(self.epsilon.iter().map(|r| r.to_string()).collect()),
            b: Some(
                self.b
                    .iter()
                    .map(|row| row.iter().map(|r| r.to_string()).collect())
                    .collect(),
            ),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn a_matrix(&self) -> &Vec<Vec<i64>> {
        &self.a
    }

    pub fn epsilon(&self) -> &[Rat] {
        &self.epsilon
    }

    pub fn b_entry(&self, i: usize, j: usize) -> &Rat {
        &self.b[i][j]
    }

    /// `b_i = b_ii = (alpha_i, alpha_i)` as an integer.
    pub fn b_diag(&self, i: usize) -> i64 {
        debug_assert!(self.b[i][i].is_integer());
        int_part(&self.b[i][i])
    }

    /// The symmetric bilinear form `(beta, gamma) = sum k_i k'_j b_ij`.
    pub fn bilinear(&self, beta: &LatticeVector, gamma: &LatticeVector) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            if beta.0[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if gamma.0[j] == 0 {
                    continue;
                }
                acc += &self.b[i][j] * rat(beta.0[i] * gamma.0[j]);
            }
        }
        acc
    }

    /// `(beta, beta)` as an integer (always integral on `Q`).
    pub fn norm(&self, beta: &LatticeVector) -> i64 {
        let v = self.bilinear(beta, beta);
        debug_assert!(v.is_integer());
        int_part(&v)
    }

    /// `(rho, beta) = sum k_i b_i / 2`, from `rho(h_i) = 1`.
    pub fn rho_pair(&self, beta: &LatticeVector) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            acc += rat(beta.0[i] * self.b_diag(i)) / rat(2);
        }
        acc
    }

    /// `(lambda, beta)` for a weight given by its coordinates `l_i = lambda(h_i)`.
    pub fn weight_pair(&self, lambda: &DominantWeight, beta: &LatticeVector) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            acc += rat(beta.0[i] * lambda.0[i] * self.b_diag(i)) / rat(2);
        }
        acc
    }

    /// `beta(h_i) = sum_j k_j a_ij`.
    pub fn pair_h(&self, beta: &LatticeVector, i: usize) -> i64 {
        (0..self.rank).map(|j| beta.0[j] * self.a[i][j]).sum()
    }

    /// `mu_i(beta) = (lambda + rho - beta)(h_i) = l_i + 1 - beta(h_i)`.
    pub fn mu(&self, lambda: &DominantWeight, beta: &LatticeVector, i: usize) -> i64 {
        lambda.0[i] + 1 - self.pair_h(beta, i)
    }

    /// Ordinary reflection `sigma_i(beta) = beta - beta(h_i) alpha_i`.
    pub fn reflect(&self, beta: &LatticeVector, i: usize) -> LatticeVector {
        beta.add_simple(i, -self.pair_h(beta, i))
    }

    /// One step of the dot action: `sigma_i . beta = beta + mu_i(beta) alpha_i`.
    pub fn dot_step(&self, lambda: &DominantWeight, beta: &LatticeVector, i: usize) -> LatticeVector {
        beta.add_simple(i, self.mu(lambda, beta, i))
    }

    /// Dot action of a word, generators applied right to left.
    pub fn dot_action(
        &self,
        lambda: &DominantWeight,
        word: &[usize],
        beta: &LatticeVector,
    ) -> LatticeVector {
        let mut cur = beta.clone();
        for &i in word.iter().rev() {
            cur = self.dot_step(lambda, &cur, i);
        }
        cur
    }

    /// One step of the circle action on spectral coordinates:
    /// `s_j -> s_j - a_ij (s_i - 1)`.
    pub fn circle_step(&self, s: &HPoint, i: usize) -> HPoint {
        let shift_re = &s.re[i] - rat(1);
        let shift_im = s.im[i].clone();
        let mut out = s.clone();
        for j in 0..self.rank {
            let aij = rat(self.a[i][j]);
            out.re[j] = &s.re[j] - &aij * &shift_re;
            out.im[j] = &s.im[j] - &aij * &shift_im;
        }
        out
    }

    /// Circle action of a word, generators applied right to left.
    pub fn circle_action(&self, word: &[usize], s: &HPoint) -> HPoint {
        let mut cur = s.clone();
        for &i in word.iter().rev() {
            cur = self.circle_step(&cur, i);
        }
        cur
    }
}

fn int_part(r: &Rat) -> i64 {
    let t = r.to_integer();
    t.to_string().parse().expect("pairing exceeds i64")
}

pub(crate) fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<num_bigint::BigInt> {
        t.trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad rational '{s}'")))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let d = parse_int(den)?;
            if d.is_zero() {
                return Err(Error::InvalidInput(format!("bad rational '{s}'")));
            }
            Ok(Rat::new(parse_int(num)?, d))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

fn validate_gcm(a: &Vec<Vec<i64>>) -> Result<()> {
    let r = a.len();
    if r == 0 {
        return Err(Error::NotCartan("rank zero".into()));
    }
    if a.iter().any(|row| row.len() != r) {
        return Err(Error::NotCartan("matrix not square".into()));
    }
    for i in 0..r {
        if a[i][i] != 2 {
            return Err(Error::NotCartan(format!("a[{i}][{i}] = {} != 2", a[i][i])));
        }
        for j in 0..r {
            if i != j {
                if a[i][j] > 0 {
                    return Err(Error::NotCartan(format!("a[{i}][{j}] > 0")));
                }
                if (a[i][j] == 0) != (a[j][i] == 0) {
                    return Err(Error::NotCartan(format!(
                        "a[{i}][{j}] = 0 but a[{j}][{i}] != 0"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Decompose a generalized Cartan matrix as `A = diag(epsilon) B` with `B`
/// symmetric, half-integral, and integral on the diagonal.
///
/// The decomposition is normalized per indecomposable block: the epsilon
/// ratios (forced by `epsilon_j / epsilon_i = a_ji / a_ij` along edges) are
/// taken as the primitive positive integer vector, then divided by the least
/// positive integer `k` that makes the diagonal of `B` integral. Returns
/// [`Error::NotSymmetrizable`] when a cycle of the Dynkin graph forces
/// inconsistent ratios.
pub fn symmetrize(a: &Vec<Vec<i64>>) -> Result<(Vec<Rat>, Vec<Vec<Rat>>)> {
    validate_gcm(a)?;
    let r = a.len();
    let mut ratio: Vec<Option<Rat>> = vec![None; r];
    for start in 0..r {
        if ratio[start].is_some() {
            continue;
        }
        // BFS over one indecomposable block.
        ratio[start] = Some(rat(1));
        let mut queue = vec![start];
        let mut block = vec![start];
        while let Some(i) = queue.pop() {
            for j in 0..r {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                let forced = ratio[i].as_ref().unwrap() * rat_frac_pair(a[j][i], a[i][j]);
                match &ratio[j] {
                    Some(existing) => {
                        if *existing != forced {
                            return Err(Error::NotSymmetrizable(start));
                        }
                    }
                    None => {
                        ratio[j] = Some(forced);
                        queue.push(j);
                        block.push(j);
                    }
                }
            }
        }
        // Scale the block: primitive integer ratios, then divide by the least
        // k giving an integral diagonal for B.
        let mut denom_lcm = num_bigint::BigInt::from(1);
        for &i in &block {
            denom_lcm = num_integer_lcm(&denom_lcm, ratio[i].as_ref().unwrap().denom());
        }
        let mut numer_gcd = num_bigint::BigInt::zero();
        for &i in &block {
            let scaled = ratio[i].as_ref().unwrap() * Rat::from_integer(denom_lcm.clone());
            numer_gcd = num_integer_gcd(&numer_gcd, &scaled.to_integer());
        }
        let scale = Rat::new(denom_lcm, numer_gcd);
        for &i in &block {
            let v = ratio[i].take().unwrap() * &scale;
            ratio[i] = Some(v);
        }
        // b_ii = 2 / (epsilon_i / k) must be integral: k = lcm_i (eps_i / gcd(eps_i, 2)).
        let mut k = num_bigint::BigInt::from(1);
        for &i in &block {
            let e = ratio[i].as_ref().unwrap().to_integer();
            let g = num_integer_gcd(&e, &num_bigint::BigInt::from(2));
            k = num_integer_lcm(&k, &(e / g));
        }
        let kr = Rat::from_integer(k);
        for &i in &block {
            let v = ratio[i].take().unwrap() / &kr;
            ratio[i] = Some(v);
        }
    }
    let epsilon: Vec<Rat> = ratio.into_iter().map(|x| x.unwrap()).collect();
    let mut b = vec![vec![Rat::zero(); r]; r];
    for i in 0..r {
        for j in 0..r {
            b[i][j] = rat(a[i][j]) / &epsilon[i];
        }
    }
    for i in 0..r {
        if !b[i][i].is_integer() {
            return Err(Error::NotSymmetrizable(i));
        }
        for j in 0..r {
            if b[i][j] != b[j][i] {
                return Err(Error::NotSymmetrizable(i));
            }
            if !(&b[i][j] * rat(2)).is_integer() {
                return Err(Error::NotSymmetrizable(i));
            }
        }
    }
    Ok((epsilon, b))
}

fn rat_frac_pair(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn num_integer_gcd(a: &num_bigint::BigInt, b: &num_bigint::BigInt) -> num_bigint::BigInt {
    use num_traits::Signed as _;
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let t = &a % &b;
        a = b;
        b = t;
    }
    a
}

fn num_integer_lcm(a: &num_bigint::BigInt, b: &num_bigint::BigInt) -> num_bigint::BigInt {
    if a.is_zero() || b.is_zero() {
        return num_bigint::BigInt::zero();
    }
    let g = num_integer_gcd(a, b);
    (a / &g) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CartanData {
        CartanData::new(vec![vec![2, -1], vec![-1, 2]], 1).unwrap()
    }

    fn hyperbolic() -> CartanData {
        CartanData::new(vec![vec![2, -3], vec![-3, 2]], 2).unwrap()
    }

    #[test]
    fn symmetrize_symmetric_input_is_identity() {
        let (eps, b) = symmetrize(&vec![vec![2, -3], vec![-3, 2]]).unwrap();
        assert_eq!(eps, vec![rat(1), rat(1)]);
        assert_eq!(b[0][1], rat(-3));
        assert_eq!(b[1][1], rat(2));

        let (eps, b) = symmetrize(&vec![vec![2, -2], vec![-2, 2]]).unwrap();
        assert_eq!(eps, vec![rat(1), rat(1)]);
        assert_eq!(b[0][1], rat(-2));
    }

    #[test]
    fn symmetrize_b2_type() {
        let (eps, b) = symmetrize(&vec![vec![2, -1], vec![-2, 2]]).unwrap();
        assert_eq!(eps, vec![rat(1), rat(2)]);
        assert_eq!(b[0][0], rat(2));
        assert_eq!(b[0][1], rat(-1));
        assert_eq!(b[1][0], rat(-1));
        assert_eq!(b[1][1], rat(1));
    }

    #[test]
    fn symmetrize_g2_type_matches_standard_normalization() {
        let (eps, b) = symmetrize(&vec![vec![2, -1], vec![-3, 2]]).unwrap();
        assert_eq!(eps, vec![crate::rat_frac(1, 3), rat(1)]);
        assert_eq!(b[0][0], rat(6));
        assert_eq!(b[0][1], rat(-3));
        assert_eq!(b[1][1], rat(2));
    }

    #[test]
    fn symmetrize_rejects_nonsymmetrizable() {
        // A 3-cycle with inconsistent ratios.
        let a = vec![vec![2, -1, -2], vec![-2, 2, -1], vec![-1, -2, 2]];
        assert!(matches!(symmetrize(&a), Err(Error::NotSymmetrizable(_))));
    }

    #[test]
    fn rejects_bad_cartan() {
        assert!(CartanData::new(vec![vec![3]], 1).is_err());
        assert!(CartanData::new(vec![vec![2, 1], vec![-1, 2]], 1).is_err());
        assert!(CartanData::new(vec![vec![2, 0], vec![-1, 2]], 1).is_err());
        assert!(CartanData::new(vec![], 1).is_err());
        assert!(CartanData::new(vec![vec![2]], 0).is_err());
    }

    #[test]
    fn bilinear_values() {
        let d = a2();
        let a1 = LatticeVector::simple(2, 0);
        assert_eq!(d.bilinear(&a1, &a1), rat(2));
        let zero = LatticeVector::zero(2);
        assert_eq!(d.bilinear(&zero, &a1), rat(0));

        let h = hyperbolic();
        let s = LatticeVector(vec![1, 1]);
        assert_eq!(h.bilinear(&s, &s), rat(-2));
    }

    #[test]
    fn mu_values() {
        let d = a2();
        let zero = LatticeVector::zero(2);
        let l0 = DominantWeight::zero(2);
        assert_eq!(d.mu(&l0, &zero, 0), 1);
        assert_eq!(d.mu(&l0, &LatticeVector::simple(2, 0), 0), -1);

        let h = hyperbolic();
        assert_eq!(h.mu(&DominantWeight::zero(2), &LatticeVector::simple(2, 0), 1), 4);
    }

    #[test]
    fn mu_antisymmetry_under_dot() {
        let d = hyperbolic();
        let l = DominantWeight(vec![1, 2]);
        for k1 in -2..3i64 {
            for k2 in -2..3i64 {
                let beta = LatticeVector(vec![k1, k2]);
                for i in 0..2 {
                    let img = d.dot_step(&l, &beta, i);
                    assert_eq!(d.mu(&l, &img, i), -d.mu(&l, &beta, i));
                    // Involution.
                    assert_eq!(d.dot_step(&l, &img, i), beta);
                }
            }
        }
    }

    #[test]
    fn dot_action_examples() {
        // Rank one, lambda = 0: sigma . 0 = alpha.
        let d = CartanData::new(vec![vec![2]], 1).unwrap();
        let img = d.dot_action(&DominantWeight::zero(1), &[0], &LatticeVector::zero(1));
        assert_eq!(img, LatticeVector(vec![1]));

        // A2: sigma_1 . alpha_2 = alpha_2 + 2 alpha_1.
        let d = a2();
        let img = d.dot_action(&DominantWeight::zero(2), &[0], &LatticeVector::simple(2, 1));
        assert_eq!(img, LatticeVector(vec![2, 1]));

        // Empty word is the identity.
        let beta = LatticeVector(vec![3, -1]);
        assert_eq!(d.dot_action(&DominantWeight::zero(2), &[], &beta), beta);
    }

    #[test]
    fn circle_action_paper_orbit() {
        let d = hyperbolic();
        let s = HPoint::real_from_ints(&[2, 2]);
        let p1 = d.circle_action(&[0], &s);
        assert_eq!(p1.re, vec![rat(0), rat(5)]);
        let p2 = d.circle_action(&[0, 1], &s);
        assert_eq!(p2.re, vec![rat(-3), rat(12)]);
        // rho-vee is fixed.
        let ones = HPoint::rho_vee(2);
        assert_eq!(d.circle_action(&[0, 1, 0, 1], &ones).re, ones.re);
    }

    #[test]
    fn circle_action_word_inverse_roundtrip() {
        let d = hyperbolic();
        let s = HPoint {
            re: vec![crate::rat_frac(3, 2), crate::rat_frac(-7, 3)],
            im: vec![rat(1), crate::rat_frac(1, 5)],
        };
        let word = [0usize, 1, 1, 0, 1];
        let rev: Vec<usize> = word.iter().rev().cloned().collect();
        let out = d.circle_action(&rev, &d.circle_action(&word, &s));
        assert_eq!(out, s);
    }

    #[test]
    fn mu_shift_identity() {
        // mu_i(beta + gamma) = mu_i(beta) - gamma(h_i).
        let d = hyperbolic();
        let l = DominantWeight(vec![2, 0]);
        for k1 in -2..3i64 {
            for k2 in -2..3i64 {
                let beta = LatticeVector(vec![k1, k2]);
                let gamma = LatticeVector(vec![k2 + 1, -k1]);
                let sum = beta.add(&gamma);
                for i in 0..2 {
                    assert_eq!(d.mu(&l, &sum, i), d.mu(&l, &beta, i) - d.pair_h(&gamma, i));
                }
            }
        }
    }

    #[test]
    fn json_roundtrip_and_user_symmetrization() {
        let d = CartanData::with_symmetrization(
            vec![vec![2]],
            2,
            vec![rat(2)],
            vec![vec![rat(1)]],
        )
        .unwrap();
        assert_eq!(d.b_diag(0), 1);
        let j = d.to_json();
        let back = CartanData::from_json(&j).unwrap();
        assert_eq!(back, d);

        // Invalid user decomposition is rejected.
        assert!(CartanData::with_symmetrization(
            vec![vec![2]],
            2,
            vec![rat(1)],
            vec![vec![rat(1)]],
        )
        .is_err());
    }
}

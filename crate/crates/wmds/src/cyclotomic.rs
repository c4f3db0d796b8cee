//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! Elements are polynomials in `zeta_N` reduced modulo the `N`-th cyclotomic
//! polynomial, with `BigRational` coordinates, so equality of Gauss-sum
//! identities is decided exactly. A complex-float embedding
//! (`zeta_N -> exp(2 pi i / N)`) is provided for the Z-series numerics.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::Rat;

/// The field `Q(zeta_N)`: the cyclotomic polynomial and reduction tables.
#[derive(Clone, Debug)]
pub struct CycField {
    order: u32,
    degree: usize,
    /// zeta^k in the power basis, for k in 0..2*degree (covers schoolbook products).
    power_table: Vec<Vec<Rat>>,
}

impl CycField {
    pub fn new(order: u32) -> CycField {
        assert!(order >= 1);
        let phi = cyclotomic_polynomial(order);
        let degree = phi.len() - 1;
        // zeta^degree = -(phi[0] + phi[1] zeta + ...), then iterate.
        let mut power_table: Vec<Vec<Rat>> = Vec::with_capacity(2 * degree);
        for k in 0..degree {
            let mut v = vec![Rat::zero(); degree];
            v[k] = Rat::one();
            power_table.push(v);
        }
        for k in degree..(2 * degree).max(degree + 1) {
            let prev = power_table[k - 1].clone();
            let mut v = vec![Rat::zero(); degree];
            // multiply prev by zeta: shift, reduce the overflow via phi.
            let overflow = prev[degree - 1].clone();
            for j in (1..degree).rev() {
                v[j] = prev[j - 1].clone();
            }
            if !overflow.is_zero() {
                for j in 0..degree {
                    v[j] -= &overflow * &phi[j];
                }
            }
            power_table.push(v);
        }
        CycField { order, degree, power_table }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn zero(&self) -> Cyc {
        Cyc { order: self.order, coeffs: vec![Rat::zero(); self.degree] }
    }

    pub fn one(&self) -> Cyc {
        self.from_rat(Rat::one())
    }

    pub fn from_rat(&self, r: Rat) -> Cyc {
        let mut c = self.zero();
        c.coeffs[0] = r;
        c
    }

    /// `zeta_N^k`, exponent taken mod N.
    pub fn zeta(&self, k: i64) -> Cyc {
        let k = k.rem_euclid(i64::from(self.order)) as usize;
        let mut acc = self.zero();
        let basis = self.zeta_power_basis(k);
        acc.coeffs.clone_from_slice(&basis);
        acc
    }

    fn zeta_power_basis(&self, k: usize) -> Vec<Rat> {
        debug_assert!(k < self.order as usize);
        if k < self.power_table.len() {
            return self.power_table[k].clone();
        }
        // k beyond the table (k < N but >= 2*degree): fold step by step.
        let mut cur = self.power_table[self.power_table.len() - 1].clone();
        for _ in self.power_table.len()..=k {
            cur = self.mul_by_zeta(&cur);
        }
        cur
    }

    fn mul_by_zeta(&self, v: &[Rat]) -> Vec<Rat> {
        let d = self.degree;
        let mut out = vec![Rat::zero(); d];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let basis = &self.power_table[j + 1];
            for t in 0..d {
                out[t] += c * &basis[t];
            }
        }
        out
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        debug_assert_eq!(a.order, b.order);
        Cyc {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &Cyc) -> Cyc {
        Cyc { order: a.order, coeffs: a.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, a: &Cyc, r: &Rat) -> Cyc {
        Cyc { order: a.order, coeffs: a.coeffs.iter().map(|x| x * r).collect() }
    }

    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        debug_assert_eq!(a.order, b.order);
        let d = self.degree;
        let mut long = vec![Rat::zero(); 2 * d];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                long[i + j] += x * y;
            }
        }
        let mut out = vec![Rat::zero(); d];
        for (k, c) in long.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let basis = &self.power_table[k];
            for t in 0..d {
                out[t] += &c * &basis[t];
            }
        }
        Cyc { order: a.order, coeffs: out }
    }

    pub fn pow(&self, a: &Cyc, e: u32) -> Cyc {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Complex conjugation, `zeta -> zeta^{-1}`.
    pub fn conj(&self, a: &Cyc) -> Cyc {
        let mut acc = self.zero();
        for (j, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = self.zeta(-(j as i64));
            acc = self.add(&acc, &self.scale(&z, c));
        }
        acc
    }

    /// |a|^2 = a * conj(a); exact, and rational whenever `a` is a Gauss sum
    /// times a rational.
    pub fn norm_squared(&self, a: &Cyc) -> Cyc {
        self.mul(a, &self.conj(a))
    }
}

/// An element of `Q(zeta_N)` in the reduced power basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyc {
    order: u32,
    coeffs: Vec<Rat>,
}

impl Cyc {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn rational_part(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = f64::from(self.order);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / n;
            acc += crate::cartan::rat_to_f64(c) * Complex64::new(theta.cos(), theta.sin());
        }
        acc
    }

    pub fn abs(&self) -> f64 {
        self.to_complex().norm()
    }
}

impl std::fmt::Display for Cyc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use num_traits::Signed;
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match j {
                0 => String::new(),
                1 => "z".to_string(),
                j => format!("z^{j}"),
            };
            let abs = c.abs();
            let body = if mono.is_empty() {
                format!("{abs}")
            } else if abs.is_one() {
                mono
            } else {
                format!("{abs}*{mono}")
            };
            if first {
                if c.is_negative() {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The `N`-th cyclotomic polynomial as monic coefficients (constant first).
pub fn cyclotomic_polynomial(n: u32) -> Vec<Rat> {
    // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    let mut num = vec![Rat::zero(); n as usize + 1];
    num[0] = -Rat::one();
    num[n as usize] = Rat::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    num
}

fn poly_div_exact(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    let mut rem: Vec<Rat> = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![Rat::zero(); nd - dd + 1];
    for k in (0..=(nd - dd)).rev() {
        let c = rem[k + dd].clone() / &den[dd];
        quot[k] = c.clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[k + j] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![rat(-1), rat(1)]);
        assert_eq!(cyclotomic_polynomial(2), vec![rat(1), rat(1)]);
        assert_eq!(cyclotomic_polynomial(4), vec![rat(1), rat(0), rat(1)]);
        assert_eq!(cyclotomic_polynomial(5), vec![rat(1); 5]);
        assert_eq!(cyclotomic_polynomial(6), vec![rat(1), rat(-1), rat(1)]);
        // Phi_10(x) = x^4 - x^3 + x^2 - x + 1.
        assert_eq!(
            cyclotomic_polynomial(10),
            vec![rat(1), rat(-1), rat(1), rat(-1), rat(1)]
        );
    }

    #[test]
    fn zeta_relations() {
        let f = CycField::new(10);
        let z = f.zeta(1);
        // zeta^10 = 1, zeta^5 = -1.
        assert_eq!(f.pow(&z, 10), f.one());
        assert_eq!(f.pow(&z, 5), f.from_rat(rat(-1)));
        // Sum of all 10th roots of unity is 0.
        let mut acc = f.zero();
        for k in 0..10 {
            acc = f.add(&acc, &f.zeta(k));
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn quadratic_gauss_sum_f5() {
        // sum chi(d) zeta_5^d over d = 1..4 squares to 5.
        let f = CycField::new(10);
        let legendre = |d: i64| if d == 1 || d == 4 { 1 } else { -1 };
        let mut g = f.zero();
        for d in 1..5i64 {
            let term = f.scale(&f.zeta(2 * d), &rat(legendre(d)));
            g = f.add(&g, &term);
        }
        assert_eq!(f.mul(&g, &g), f.from_rat(rat(5)));
        assert!((g.to_complex().re - 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(f.norm_squared(&g), f.from_rat(rat(5)));
    }

    #[test]
    fn conjugation_is_involutive() {
        let f = CycField::new(12);
        let a = f.add(&f.zeta(1), &f.scale(&f.zeta(7), &crate::rat_frac(3, 2)));
        assert_eq!(f.conj(&f.conj(&a)), a);
    }
}

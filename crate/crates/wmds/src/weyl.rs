//! Weyl group elements as words, canonical reduced forms, enumeration, and
//! inversion sets.
//!
//! Elements are represented faithfully by their integer matrices on the root
//! lattice `Q`, so nothing here assumes the group is finite. The canonical
//! form of an element is its lexicographically least reduced word, computed
//! greedily from left descents.

use std::collections::HashMap;

use crate::cartan::{CartanData, LatticeVector};
use crate::error::{Error, Result};
use crate::roots::RootTable;

/// An r x r integer matrix acting on root-lattice coordinates.
/// `m[i][j]` is the coefficient of `alpha_i` in the image of `alpha_j`.
pub type QMatrix = Vec<Vec<i64>>;

pub fn identity_matrix(rank: usize) -> QMatrix {
    (0..rank)
        .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Matrix of the simple reflection `sigma_i` on `Q`.
pub fn reflection_matrix(data: &CartanData, i: usize) -> QMatrix {
    let r = data.rank();
    let mut m = identity_matrix(r);
    for j in 0..r {
        m[i][j] -= data.a(i, j);
    }
    m
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let r = a.len();
    let mut out = vec![vec![0i64; r]; r];
    for i in 0..r {
        for k in 0..r {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..r {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn mat_apply(m: &QMatrix, v: &LatticeVector) -> LatticeVector {
    let r = m.len();
    LatticeVector(
        (0..r)
            .map(|i| (0..r).map(|j| m[i][j] * v.0[j]).sum())
            .collect(),
    )
}

/// A word in the simple reflections (letters are 0-indexed generator
/// indices). The word need not be reduced; [`WeylWord::canonical`] computes
/// the lexicographically least reduced word of the underlying element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord(Vec::new())
    }

    pub fn from_letters(letters: Vec<usize>) -> Self {
        WeylWord(letters)
    }

    /// Matrix of the element on `Q` (letters composed left to right as maps).
    pub fn matrix(&self, data: &CartanData) -> QMatrix {
        let mut m = identity_matrix(data.rank());
        for &i in &self.0 {
            m = mat_mul(&m, &reflection_matrix(data, i));
        }
        m
    }

    /// Matrix of the inverse element.
    pub fn inverse_matrix(&self, data: &CartanData) -> QMatrix {
        let mut m = identity_matrix(data.rank());
        for &i in self.0.iter().rev() {
            m = mat_mul(&m, &reflection_matrix(data, i));
        }
        m
    }

    pub fn inverse(&self) -> Self {
        WeylWord(self.0.iter().rev().cloned().collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        WeylWord(v)
    }

    /// Lexicographically least reduced word for the element this word spells.
    pub fn canonical(&self, data: &CartanData) -> WeylWord {
        canonical_from_matrices(data, self.matrix(data), self.inverse_matrix(data))
    }

    pub fn length(&self, data: &CartanData) -> usize {
        self.canonical(data).0.len()
    }

    pub fn sgn(&self, data: &CartanData) -> i64 {
        if self.length(data) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self, data: &CartanData) -> bool {
        self.matrix(data) == identity_matrix(data.rank())
    }

    /// 1-indexed display like `s1*s3*s2`; the identity prints as `e`.
    pub fn display(&self) -> String {
        if self.0.is_empty() {
            return "e".into();
        }
        self.0
            .iter()
            .map(|i| format!("s{}", i + 1))
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Sign of a root image: +1 for positive, -1 for negative.
/// Images of roots under the Weyl group have uniformly signed coordinates.
fn root_sign(v: &LatticeVector) -> i64 {
    let pos = v.0.iter().any(|&k| k > 0);
    let neg = v.0.iter().any(|&k| k < 0);
    debug_assert!(!(pos && neg), "mixed signs in root image {v}");
    if neg {
        -1
    } else {
        1
    }
}

fn column(m: &QMatrix, j: usize) -> LatticeVector {
    LatticeVector(m.iter().map(|row| row[j]).collect())
}

fn canonical_from_matrices(data: &CartanData, mut m: QMatrix, mut m_inv: QMatrix) -> WeylWord {
    let r = data.rank();
    let id = identity_matrix(r);
    let mut letters = Vec::new();
    while m != id {
        // Smallest left descent: least i with w^{-1}(alpha_i) negative.
        let i = (0..r)
            .find(|&i| root_sign(&column(&m_inv, i)) < 0)
            .expect("non-identity element with no descent");
        letters.push(i);
        let s = reflection_matrix(data, i);
        m = mat_mul(&s, &m);
        m_inv = mat_mul(&m_inv, &s);
    }
    WeylWord(letters)
}

/// Every element of `W` with length at most `cap`, as canonical reduced
/// words, in length-increasing order and lexicographic order within a length.
pub fn enumerate_weyl(data: &CartanData, cap: usize) -> Vec<WeylWord> {
    let r = data.rank();
    let refl: Vec<QMatrix> = (0..r).map(|i| reflection_matrix(data, i)).collect();
    let mut seen: HashMap<QMatrix, usize> = HashMap::new();
    let mut out = vec![WeylWord::identity()];
    seen.insert(identity_matrix(r), 0);
    let mut level: Vec<(WeylWord, QMatrix)> =
        vec![(WeylWord::identity(), identity_matrix(r))];
    for len in 1..=cap {
        let mut next = Vec::new();
        for (word, m) in &level {
            for j in 0..r {
                let m2 = mat_mul(m, &refl[j]);
                if seen.contains_key(&m2) {
                    continue;
                }
                seen.insert(m2.clone(), len);
                let mut w2 = word.0.clone();
                w2.push(j);
                next.push((WeylWord(w2), m2));
            }
        }
        out.extend(next.iter().map(|(w, _)| w.clone()));
        level = next;
        if level.is_empty() {
            break;
        }
    }
    out
}

/// Inversion set `Phi(w)` of the element spelled by `word`, via the reduced
/// recursion `Phi(w sigma_i) = sigma_i(Phi(w)) ∪ {alpha_i}`.
///
/// Errors with [`Error::DepthExceeded`] if an inversion leaves the table's
/// depth cap; these feed exact formulas and must not be approximated.
pub fn phi_set(word: &WeylWord, data: &CartanData, table: &RootTable) -> Result<Vec<LatticeVector>> {
    let reduced = word.canonical(data);
    let mut phi: Vec<LatticeVector> = Vec::with_capacity(reduced.0.len());
    for &i in &reduced.0 {
        for v in phi.iter_mut() {
            *v = data.reflect(v, i);
        }
        phi.push(LatticeVector::simple(data.rank(), i));
    }
    for v in &phi {
        debug_assert!(v.is_nonneg(), "inversion {v} not positive");
        if v.depth() > table.depth() {
            return Err(Error::DepthExceeded(table.depth()));
        }
        if !table.is_root(v) {
            return Err(Error::NotARoot(v.to_string()));
        }
    }
    debug_assert_eq!(phi.len(), reduced.0.len());
    Ok(phi)
}

/// Inversion coordinates without consulting a root table. Inversions are
/// always real roots, so `m(alpha)` can be derived from the bilinear form.
pub fn phi_set_unchecked(word: &WeylWord, data: &CartanData) -> Vec<LatticeVector> {
    let reduced = word.canonical(data);
    let mut phi: Vec<LatticeVector> = Vec::with_capacity(reduced.0.len());
    for &i in &reduced.0 {
        for v in phi.iter_mut() {
            *v = data.reflect(v, i);
        }
        phi.push(LatticeVector::simple(data.rank(), i));
    }
    phi
}

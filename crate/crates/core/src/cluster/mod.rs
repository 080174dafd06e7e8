//! Quivers, seeds and cluster mutation.

mod class;
mod iso;
mod seed;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use class::{dynkin_type, has_kronecker, quiver_mutation_ball, quiver_mutation_class, DynkinType, MutationClass};
pub use iso::{canonical_quiver, quiver_isomorphic, MAX_ISO_SIZE};
pub use seed::{cluster_exchange_graph, seed_mutate, ExchangeGraph, FrozenMode, Seed};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("exchange matrix is not square")]
    NotSquare,
    #[error("exchange matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("vertex {0} is frozen")]
    FrozenVertex(usize),
    #[error("vertex {0} out of range")]
    IndexOutOfRange(usize),
    #[error("arrow multiplicity overflow")]
    Overflow,
    #[error("isomorphism search limited to {MAX_ISO_SIZE} vertices, got {0}")]
    SizeLimit(usize),
    #[error("cluster variable is not Laurent (internal error)")]
    InternalNonLaurent,
}

/// Whether a bounded search ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchStatus {
    Complete,
    Exceeded,
}

/// A quiver without loops or two-cycles, stored as its skew-symmetric exchange
/// matrix: `b[i][j] > 0` counts arrows `i → j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quiver {
    b: Vec<Vec<i64>>,
    frozen: BTreeSet<usize>,
}

impl Quiver {
    pub fn new(b: Vec<Vec<i64>>, frozen: impl IntoIterator<Item = usize>) -> Result<Self, QuiverError> {
        let n = b.len();
        if b.iter().any(|r| r.len() != n) {
            return Err(QuiverError::NotSquare);
        }
        for i in 0..n {
            for j in 0..n {
                if b[i][j].checked_neg() != Some(b[j][i]) {
                    return Err(QuiverError::NotSkewSymmetric);
                }
            }
        }
        let frozen: BTreeSet<usize> = frozen.into_iter().collect();
        if let Some(&i) = frozen.iter().find(|&&i| i >= n) {
            return Err(QuiverError::IndexOutOfRange(i));
        }
        Ok(Quiver { b, frozen })
    }

    pub fn from_rows(rows: &[&[i64]], frozen: &[usize]) -> Result<Self, QuiverError> {
        Self::new(rows.iter().map(|r| r.to_vec()).collect(), frozen.iter().copied())
    }

    /// `n` vertices, no arrows, nothing frozen.
    pub fn empty(n: usize) -> Self {
        Quiver { b: vec![vec![0; n]; n], frozen: BTreeSet::new() }
    }

    /// Builds a quiver from arrows `(i, j, multiplicity)` meaning `i → j`.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize, i64)], frozen: &[usize]) -> Result<Self, QuiverError> {
        let mut b = vec![vec![0i64; n]; n];
        for &(i, j, m) in arrows {
            if i >= n || j >= n {
                return Err(QuiverError::IndexOutOfRange(i.max(j)));
            }
            b[i][j] = b[i][j].checked_add(m).ok_or(QuiverError::Overflow)?;
            b[j][i] = b[j][i].checked_sub(m).ok_or(QuiverError::Overflow)?;
        }
        Self::new(b, frozen.iter().copied())
    }

    pub fn size(&self) -> usize {
        self.b.len()
    }

    pub fn b(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn frozen(&self) -> &BTreeSet<usize> {
        &self.frozen
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen.contains(&i)
    }

    pub fn unfrozen(&self) -> Vec<usize> {
        (0..self.size()).filter(|i| !self.is_frozen(*i)).collect()
    }

    /// Full subquiver on the unfrozen vertices, reindexed in order.
    pub fn unfrozen_part(&self) -> Quiver {
        let idx = self.unfrozen();
        Quiver {
            b: idx.iter().map(|&i| idx.iter().map(|&j| self.b[i][j]).collect()).collect(),
            frozen: BTreeSet::new(),
        }
    }

    /// Arrows `(i, j, m)` with `m = b_ij > 0`.
    pub fn arrows(&self) -> Vec<(usize, usize, i64)> {
        let n = self.size();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.b[i][j] > 0)
            .map(|(i, j)| (i, j, self.b[i][j]))
            .collect()
    }

    /// Relabels vertex `perm[p]` as `p`.
    pub fn permute(&self, perm: &[usize]) -> Quiver {
        let mut inv = vec![0; perm.len()];
        for (p, &v) in perm.iter().enumerate() {
            inv[v] = p;
        }
        Quiver {
            b: perm.iter().map(|&i| perm.iter().map(|&j| self.b[i][j]).collect()).collect(),
            frozen: self.frozen.iter().map(|&v| inv[v]).collect(),
        }
    }

    pub fn mutate(&self, k: usize) -> Result<Quiver, QuiverError> {
        quiver_mutate(self, k)
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self.arrows().iter().map(|(i, j, m)| format!("{i}-{m}->{j}")).collect();
        write!(f, "Q{}[{}]", self.size(), arrows.join(" "))?;
        if !self.frozen.is_empty() {
            write!(f, " frozen{:?}", self.frozen)?;
        }
        Ok(())
    }
}

/// Matrix mutation at an unfrozen vertex.
pub fn quiver_mutate(q: &Quiver, k: usize) -> Result<Quiver, QuiverError> {
    let n = q.size();
    if k >= n {
        return Err(QuiverError::IndexOutOfRange(k));
    }
    if q.is_frozen(k) {
        return Err(QuiverError::FrozenVertex(k));
    }
    let mut b = q.b.clone();
    for i in 0..n {
        for j in 0..n {
            b[i][j] = if i == k || j == k {
                -q.b[i][j]
            } else {
                let bik = q.b[i][k];
                let prod = bik.checked_mul(q.b[k][j]).ok_or(QuiverError::Overflow)?;
                q.b[i][j].checked_add(bik.signum() * prod.max(0)).ok_or(QuiverError::Overflow)?
            };
        }
    }
    Ok(Quiver { b, frozen: q.frozen.clone() })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn a2() -> Quiver {
        Quiver::from_rows(&[&[0, 1], &[-1, 0]], &[]).unwrap()
    }

    pub(crate) fn markov() -> Quiver {
        Quiver::from_rows(&[&[0, 3, -3], &[-3, 0, 3], &[3, -3, 0]], &[]).unwrap()
    }

    pub(crate) fn random_quiver(rng: &mut ChaCha8Rng, n: usize, r: i64) -> Quiver {
        let mut b = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let x = rng.gen_range(-r..=r);
                b[i][j] = x;
                b[j][i] = -x;
            }
        }
        let frozen: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.2)).collect();
        Quiver::new(b, frozen).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(Quiver::from_rows(&[&[0, 1], &[1, 0]], &[]), Err(QuiverError::NotSkewSymmetric));
        assert_eq!(Quiver::from_rows(&[&[0, 1]], &[]), Err(QuiverError::NotSquare));
        assert_eq!(Quiver::from_rows(&[&[0]], &[1]), Err(QuiverError::IndexOutOfRange(1)));
        assert_eq!(Quiver::from_arrows(2, &[(0, 1, 1)], &[]).unwrap(), a2());
    }

    #[test]
    fn a2_reverses() {
        let q = quiver_mutate(&a2(), 1).unwrap();
        assert_eq!(q, Quiver::from_rows(&[&[0, -1], &[1, 0]], &[]).unwrap());
    }

    #[test]
    fn frozen_vertex_rejected() {
        let q = Quiver::from_rows(&[&[0, 1], &[-1, 0]], &[1]).unwrap();
        assert_eq!(quiver_mutate(&q, 1), Err(QuiverError::FrozenVertex(1)));
        assert!(quiver_mutate(&q, 0).is_ok());
    }

    #[test]
    fn involution_on_random_quivers() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let n = rng.gen_range(1..7);
            let q = random_quiver(&mut rng, n, 3);
            for k in q.unfrozen() {
                let m = quiver_mutate(&q, k).unwrap();
                assert_eq!(quiver_mutate(&m, k).unwrap(), q);
            }
        }
    }

    #[test]
    fn markov_recursion() {
        // a 3-cycle with multiplicities (3a,3b,3c) mutates to one whose
        // triple (a,b,c') still satisfies a² + b² + c² = 3abc
        let markov_triple = |q: &Quiver| -> Vec<i64> {
            let mut t = vec![q.b(0, 1).abs() / 3, q.b(1, 2).abs() / 3, q.b(2, 0).abs() / 3];
            t.sort();
            t
        };
        let holds = |t: &[i64]| t[0] * t[0] + t[1] * t[1] + t[2] * t[2] == 3 * t[0] * t[1] * t[2];
        let mut q = markov();
        assert!(holds(&markov_triple(&q)));
        let first = quiver_mutate(&q, 0).unwrap();
        let mut mults: Vec<i64> = vec![first.b(0, 1).abs(), first.b(1, 2).abs(), first.b(2, 0).abs()];
        mults.sort();
        assert_eq!(mults, vec![3, 3, 6]);
        for step in 0..6 {
            q = quiver_mutate(&q, step % 3).unwrap();
            let t = markov_triple(&q);
            assert!(holds(&t), "{t:?}");
            // still a 3-cycle: all products b01 b12 b20 of one sign
            assert!(q.b(0, 1) * q.b(1, 2) * q.b(2, 0) != 0);
        }
    }

    #[test]
    fn overflow_is_reported() {
        let q = Quiver::from_rows(&[&[0, i64::MAX / 2, 0], &[-(i64::MAX / 2), 0, 4], &[0, -4, 0]], &[]).unwrap();
        assert_eq!(quiver_mutate(&q, 1), Err(QuiverError::Overflow));
    }
}

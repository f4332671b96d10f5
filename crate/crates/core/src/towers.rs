//! Standard parabolic subgroups of `GL(n)` as compositions of `n`, their
//! Levi data, the covering relation (merging two adjacent blocks), and the
//! enumeration of maximal tower chains up to the full group.
//!
//! A composition `(n1, …, nl)` of `n` stands for the block upper-triangular
//! subgroup with those diagonal block sizes. Coarsening by one adjacent
//! merge removes a single wall, which is the covering relation of the poset
//! of standard parabolics; a tower is a maximal chain of such merges ending
//! at the one-part composition `(n)`. From a composition of length `l`
//! there are exactly `(l-1)!` towers — each order of removing the `l-1`
//! walls gives one chain.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TowerError {
    #[error("composition must have at least one part")]
    Empty,
    #[error("composition parts must be positive")]
    ZeroPart,
    #[error("compositions have different totals: {left} and {right}")]
    TotalMismatch { left: u32, right: u32 },
}

/// An ordered list of positive block sizes; the standard parabolic of
/// `GL(total)` with those diagonal blocks.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", try_from = "Vec<u32>")]
pub struct Composition {
    parts: Vec<u32>,
}

impl From<Composition> for Vec<u32> {
    fn from(c: Composition) -> Self {
        c.parts
    }
}

impl TryFrom<Vec<u32>> for Composition {
    type Error = TowerError;

    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Composition::new(parts)
    }
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self, TowerError> {
        if parts.is_empty() {
            return Err(TowerError::Empty);
        }
        if parts.contains(&0) {
            return Err(TowerError::ZeroPart);
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts, the length `l`. Never zero: construction rejects
    /// empty part lists, so no `is_empty` is provided.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_full_group(&self) -> bool {
        self.parts.len() == 1
    }

    /// Sum of the parts: the `n` of `GL(n)`.
    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of walls, `l - 1`; the corank of the parabolic.
    pub fn corank(&self) -> usize {
        self.parts.len() - 1
    }

    /// The composition with the wall between parts `i` and `i+1` removed.
    ///
    /// # Panics
    ///
    /// Panics if `i + 1` is out of range.
    pub fn merge_at(&self, i: usize) -> Composition {
        assert!(i + 1 < self.parts.len(), "no wall at index {i}");
        let mut parts = Vec::with_capacity(self.parts.len() - 1);
        parts.extend_from_slice(&self.parts[..i]);
        parts.push(self.parts[i] + self.parts[i + 1]);
        parts.extend_from_slice(&self.parts[i + 2..]);
        Composition { parts }
    }

    /// All one-step coarsenings, by ascending merge position.
    pub fn merges(&self) -> Vec<Composition> {
        (0..self.corank()).map(|i| self.merge_at(i)).collect()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Whether `coarser` is obtained from `fine` by merging exactly two
/// adjacent parts (one covering step; strict, so equal compositions do not
/// cover each other).
pub fn covers(fine: &Composition, coarser: &Composition) -> Result<bool, TowerError> {
    if fine.total() != coarser.total() {
        return Err(TowerError::TotalMismatch { left: fine.total(), right: coarser.total() });
    }
    Ok(fine.len() == coarser.len() + 1 && fine.merges().contains(coarser))
}

/// A maximal chain of one-merge coarsenings from a starting composition up
/// to the full group: `chain[0]` is the start, every consecutive pair is a
/// covering step, and the last entry is the one-part composition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tower {
    pub chain: Vec<Composition>,
}

impl Tower {
    /// Number of merge steps, `chain.len() - 1`.
    pub fn steps(&self) -> usize {
        self.chain.len() - 1
    }
}

/// All towers from a composition, in lexicographic order of the sequence
/// of merge positions. A length-`l` composition has `(l-1)!` of them; the
/// full group itself has the single zero-step tower.
pub fn towers(start: &Composition) -> Vec<Tower> {
    let mut out = Vec::new();
    let mut chain = vec![start.clone()];
    descend(&mut chain, &mut out);
    out
}

fn descend(chain: &mut Vec<Composition>, out: &mut Vec<Tower>) {
    let current = chain.last().expect("chain starts nonempty").clone();
    if current.is_full_group() {
        out.push(Tower { chain: chain.clone() });
        return;
    }
    for next in current.merges() {
        chain.push(next);
        descend(chain, out);
        chain.pop();
    }
}

/// Levi decomposition data of the standard parabolic of a composition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviData {
    /// Diagonal block sizes: the Levi factor is `Π GL(n_i)`.
    pub block_dims: Vec<u32>,
    /// Corank `r = l - 1`, the dimension of the character lattice direction.
    pub corank: usize,
    /// Dimension of the nilpotent radical: `Σ_{i<j} n_i n_j`, the strictly
    /// upper block entries.
    pub nilradical_dim: u64,
}

/// Block sizes, corank, and nilpotent-radical dimension of a composition's
/// parabolic.
pub fn levi_data(p: &Composition) -> LeviData {
    let mut nilradical_dim = 0u64;
    for (i, &a) in p.parts().iter().enumerate() {
        for &b in &p.parts()[i + 1..] {
            nilradical_dim += u64::from(a) * u64::from(b);
        }
    }
    LeviData { block_dims: p.parts().to_vec(), corank: p.corank(), nilradical_dim }
}

/// All compositions of `n` in lexicographic part order. There are
/// `2^(n-1)` of them for `n ≥ 1`.
pub fn compositions_of(n: u32) -> Vec<Composition> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn extend(remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if remaining == 0 {
            out.push(Composition { parts: current.clone() });
            return;
        }
        for first in 1..=remaining {
            current.push(first);
            extend(remaining - first, current, out);
            current.pop();
        }
    }
    extend(n, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn construction_validates_parts() {
        assert_eq!(Composition::new(vec![]), Err(TowerError::Empty));
        assert_eq!(Composition::new(vec![1, 0, 2]), Err(TowerError::ZeroPart));
        let c = comp(&[1, 3, 2]);
        assert_eq!(c.total(), 6);
        assert_eq!(c.corank(), 2);
        assert_eq!(c.to_string(), "(1,3,2)");
    }

    #[test]
    fn covering_relation_examples() {
        assert!(covers(&comp(&[1, 1, 2]), &comp(&[2, 2])).unwrap());
        assert!(covers(&comp(&[1, 1, 2]), &comp(&[1, 3])).unwrap());
        assert!(!covers(&comp(&[1, 1, 2]), &comp(&[4])).unwrap());
        assert!(!covers(&comp(&[2, 2]), &comp(&[2, 2])).unwrap());
        // Merging non-adjacent parts is not a covering step.
        assert!(!covers(&comp(&[1, 2, 1]), &comp(&[2, 2])).unwrap());
        assert_eq!(
            covers(&comp(&[1, 1]), &comp(&[3])),
            Err(TowerError::TotalMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn borel_of_gl4_has_six_towers() {
        let found = towers(&comp(&[1, 1, 1, 1]));
        assert_eq!(found.len(), 6);
        for tower in &found {
            assert_eq!(tower.chain.first(), Some(&comp(&[1, 1, 1, 1])));
            assert_eq!(tower.chain.last(), Some(&comp(&[4])));
            assert_eq!(tower.steps(), 3);
            for pair in tower.chain.windows(2) {
                assert!(covers(&pair[0], &pair[1]).unwrap());
            }
        }
        // Lexicographic by merge positions: the first tower always merges
        // at the leftmost wall.
        assert_eq!(found[0].chain[1], comp(&[2, 1, 1]));
        assert_eq!(found[0].chain[2], comp(&[3, 1]));
    }

    #[test]
    fn degenerate_towers() {
        let full = towers(&comp(&[5]));
        assert_eq!(full, vec![Tower { chain: vec![comp(&[5])] }]);
        assert_eq!(full[0].steps(), 0);
        let one_step = towers(&comp(&[2, 3]));
        assert_eq!(one_step, vec![Tower { chain: vec![comp(&[2, 3]), comp(&[5])] }]);
    }

    #[test]
    fn tower_count_is_factorial_of_wall_count() {
        fn factorial(k: usize) -> usize {
            (1..=k).product::<usize>().max(1)
        }
        for n in 1..=6u32 {
            for c in compositions_of(n) {
                assert_eq!(
                    towers(&c).len(),
                    factorial(c.corank()),
                    "composition {c}"
                );
            }
        }
    }

    #[test]
    fn covers_grades_the_composition_poset() {
        for n in 1..=5u32 {
            let all = compositions_of(n);
            assert_eq!(all.len(), 1usize << (n - 1));
            for p in &all {
                for q in &all {
                    let forward = covers(p, q).unwrap();
                    if forward {
                        // Rank n - len drops by exactly one per cover, and
                        // the relation is antisymmetric.
                        assert_eq!(p.len(), q.len() + 1);
                        assert!(!covers(q, p).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn levi_data_examples() {
        let borel = levi_data(&comp(&[1, 1, 1, 1]));
        assert_eq!(borel.corank, 3);
        assert_eq!(borel.nilradical_dim, 6);
        let full = levi_data(&comp(&[4]));
        assert_eq!(full.corank, 0);
        assert_eq!(full.nilradical_dim, 0);
        let half = levi_data(&comp(&[2, 2]));
        assert_eq!(half.corank, 1);
        assert_eq!(half.nilradical_dim, 4);
        assert_eq!(half.block_dims, [2, 2]);
    }

    #[test]
    fn serde_round_trip() {
        let c = comp(&[1, 3, 2]);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, "[1,3,2]");
        let back: Composition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<Composition>("[1,0]").is_err());
        assert!(serde_json::from_str::<Composition>("[]").is_err());
    }
}

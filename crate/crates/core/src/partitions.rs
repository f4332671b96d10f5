//! Integer partitions indexing PBW-type bases.
//!
//! A partition `(k1 >= k2 >= ... >= km)` labels the basis vector obtained by
//! applying lowering operators of those modes in order. The `Ord` instance is
//! the canonical enumeration order used for matrix rows, serialized maps and
//! reports: first by weight, then largest-first lexicographically, so level 3
//! reads `[3], [2,1], [1,1,1]`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Empty partition, labelling the highest-weight vector.
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds from parts in any order; they are sorted nonincreasing.
    /// Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "zero part in partition");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Sum of parts (the level / weight).
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// New partition with `part` inserted, keeping parts nonincreasing.
    pub fn with_part(&self, part: u32) -> Self {
        assert!(part > 0, "zero part in partition");
        let mut parts = self.0.clone();
        let pos = parts.partition_point(|&p| p >= part);
        parts.insert(pos, part);
        Partition(parts)
    }

    /// Multiplicity of `part`.
    pub fn count(&self, part: u32) -> u32 {
        self.0.iter().filter(|&&p| p == part).count() as u32
    }

    /// New partition with one copy of `part` removed, or None if absent.
    pub fn without_part(&self, part: u32) -> Option<Self> {
        let pos = self.0.iter().position(|&p| p == part)?;
        let mut parts = self.0.clone();
        parts.remove(pos);
        Some(Partition(parts))
    }

    /// First (largest) part with the rest, or None when empty.
    pub fn split_first(&self) -> Option<(u32, Partition)> {
        let (&first, rest) = self.0.split_first()?;
        Some((first, Partition(rest.to_vec())))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| {
                // Within a weight, [3] precedes [2,1] precedes [1,1,1]:
                // lexicographic with larger parts first.
                for (a, b) in self.0.iter().zip(&other.0) {
                    match b.cmp(a) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                self.0.len().cmp(&other.0.len())
            })
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        if parts.contains(&0) {
            return Err(serde::de::Error::custom("zero part in partition"));
        }
        Ok(Partition::new(parts))
    }
}

/// All partitions of `n` in canonical order. `partitions_of(0)` is the
/// singleton list holding the empty partition.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(n, n, &mut current, &mut out);
    out
}

fn descend(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        current.push(part);
        descend(remaining - part, part, current, out);
        current.pop();
    }
}

/// Number of partitions of `n`, by direct enumeration. Intended as an
/// independent cross-check for graded dimension formulas in tests.
pub fn partition_count(n: u32) -> u64 {
    partitions_of(n).len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_order_and_counts() {
        let p3: Vec<String> = partitions_of(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(p3, ["[3]", "[2,1]", "[1,1,1]"]);
        let counts: Vec<u64> = (0..=10).map(partition_count).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn ordering_is_weight_then_largest_first() {
        let a = Partition::new(vec![2]);
        let b = Partition::new(vec![1, 1]);
        assert!(a < b);
        assert!(Partition::empty() < a);
        assert!(Partition::new(vec![3]) < Partition::new(vec![2, 1]));
        assert!(Partition::new(vec![2, 1]) < Partition::new(vec![1, 1, 1]));
        assert!(Partition::new(vec![1]) < Partition::new(vec![3]));
    }

    #[test]
    fn insertion_keeps_parts_sorted() {
        let p = Partition::new(vec![3, 1]);
        assert_eq!(p.with_part(2).parts(), &[3, 2, 1]);
        assert_eq!(p.with_part(5).parts(), &[5, 3, 1]);
        assert_eq!(p.without_part(3).unwrap().parts(), &[1]);
        assert!(p.without_part(2).is_none());
    }
}

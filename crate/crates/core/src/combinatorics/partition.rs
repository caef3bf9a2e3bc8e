use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::MultiIndex;
use crate::error::{Error, Result};

/// A set of nonzero, pairwise-disjoint multi-indices summing to `target`.
///
/// Blocks are kept sorted by the position of their least 1-digit.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    target: MultiIndex,
    blocks: Vec<MultiIndex>,
}

impl Partition {
    pub fn new(target: MultiIndex, mut blocks: Vec<MultiIndex>) -> Result<Self> {
        let mut acc = MultiIndex::zero(target.len());
        for b in &blocks {
            if b.len() != target.len() {
                return Err(Error::LengthMismatch {
                    left: b.len(),
                    right: target.len(),
                });
            }
            if b.is_zero() {
                return Err(Error::InvalidBitString(format!(
                    "zero block in partition of {target}"
                )));
            }
            acc = acc.join(b)?;
        }
        if acc != target {
            return Err(Error::InvalidBitString(format!(
                "blocks sum to {acc}, not {target}"
            )));
        }
        blocks.sort_by_key(|b| b.least());
        Ok(Partition { target, blocks })
    }

    /// The size-0 partition of the zero multi-index.
    pub fn empty(len: usize) -> Self {
        Partition {
            target: MultiIndex::zero(len),
            blocks: Vec::new(),
        }
    }

    pub fn target(&self) -> MultiIndex {
        self.target
    }

    pub fn blocks(&self) -> &[MultiIndex] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    /// Largest block order; zero for the empty partition.
    pub fn maxord(&self) -> usize {
        self.blocks.iter().map(MultiIndex::order).max().unwrap_or(0)
    }

    /// Refinement into partitions of `target ⋄ 1`: the new digit either joins
    /// one block or forms a block of its own.
    ///
    /// Element 0 adds the new singleton block `0 ⋄ 1`; element `i ≥ 1` extends
    /// the `i`-th block (1-based, canonical order) by the new digit.
    pub fn refine(&self) -> Vec<Partition> {
        let k = self.target.len();
        let target = self.target.diamond(1);
        let mut out = Vec::with_capacity(self.size() + 1);

        let mut with_new: Vec<MultiIndex> = self.blocks.iter().map(|b| b.diamond(0)).collect();
        // 0⋄1 has the largest least-position, so it stays last in canonical order.
        with_new.push(MultiIndex::zero(k).diamond(1));
        out.push(Partition {
            target,
            blocks: with_new,
        });

        for i in 0..self.size() {
            let blocks = self
                .blocks
                .iter()
                .enumerate()
                .map(|(j, b)| b.diamond(u8::from(i == j)))
                .collect();
            out.push(Partition { target, blocks });
        }
        out
    }

    /// Re-embeds a partition of the all-ones index on `positions.len()` digits.
    pub fn embed(&self, len: usize, positions: &[usize]) -> Partition {
        Partition {
            target: self.target.embed(len, positions),
            blocks: self
                .blocks
                .iter()
                .map(|b| b.embed(len, positions))
                .collect(),
        }
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.target
            .cmp(&other.target)
            .then(self.size().cmp(&other.size()))
            .then_with(|| self.blocks.cmp(&other.blocks))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

/// All partitions of one target, sorted by size and then by blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionTable {
    pub target: MultiIndex,
    pub partitions: Vec<Partition>,
}

impl PartitionTable {
    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Partition> {
        self.partitions.iter()
    }
}

/// Enumerates every partition of `alpha` via restricted growth strings over
/// its support. The zero index has exactly one (empty) partition.
pub fn enumerate_partitions(alpha: MultiIndex) -> PartitionTable {
    let support = alpha.support();
    let n = support.len();
    let mut partitions = Vec::new();
    if n == 0 {
        partitions.push(Partition::empty(alpha.len()));
        return PartitionTable {
            target: alpha,
            partitions,
        };
    }

    // rgs[i] is the block of support[i]; rgs[0] = 0 and rgs[i] <= 1 + max(rgs[..i]).
    let mut rgs = vec![0usize; n];
    let mut maxes = vec![0usize; n];
    loop {
        let blocks_count = maxes[n - 1] + 1;
        let mut bits = vec![0u64; blocks_count];
        for (i, &b) in rgs.iter().enumerate() {
            bits[b] |= 1 << support[i];
        }
        // RGS block numbering already follows least position.
        partitions.push(Partition {
            target: alpha,
            blocks: bits
                .into_iter()
                .map(|b| MultiIndex::from_bits(alpha.len(), b))
                .collect(),
        });

        let mut i = n - 1;
        loop {
            if i == 0 {
                partitions.sort();
                return PartitionTable {
                    target: alpha,
                    partitions,
                };
            }
            if rgs[i] <= maxes[i - 1] {
                rgs[i] += 1;
                maxes[i] = maxes[i - 1].max(rgs[i]);
                for j in i + 1..n {
                    rgs[j] = 0;
                    maxes[j] = maxes[i];
                }
                break;
            }
            i -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn mi(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    fn show(p: &Partition) -> Vec<String> {
        p.blocks().iter().map(|b| b.to_string()).collect()
    }

    #[test]
    fn two_digit_partitions() {
        let t = enumerate_partitions(mi("11"));
        let shown: Vec<Vec<String>> = t.iter().map(show).collect();
        assert_eq!(shown, vec![vec!["11"], vec!["10", "01"]]);
    }

    #[test]
    fn counts_are_bell_numbers() {
        assert_eq!(enumerate_partitions(mi("111")).len(), 5);
        assert_eq!(enumerate_partitions(mi("1111")).len(), 15);
        assert_eq!(enumerate_partitions(mi("11111")).len(), 52);
        assert_eq!(enumerate_partitions(mi("0101101")).len(), 15);
    }

    #[test]
    fn zero_index_has_the_empty_partition() {
        let t = enumerate_partitions(mi("000"));
        assert_eq!(t.len(), 1);
        assert_eq!(t.partitions[0].size(), 0);
        assert_eq!(t.partitions[0].maxord(), 0);
    }

    #[test]
    fn blocks_follow_least_position() {
        let p = Partition::new(mi("111"), vec![mi("010"), mi("101")]).unwrap();
        assert_eq!(show(&p), ["101", "010"]);
    }

    #[test]
    fn new_rejects_overlap_and_wrong_sum() {
        assert!(Partition::new(mi("11"), vec![mi("11"), mi("10")]).is_err());
        assert!(Partition::new(mi("11"), vec![mi("10")]).is_err());
        assert!(Partition::new(mi("11"), vec![mi("11"), mi("00")]).is_err());
    }

    #[test]
    fn maxord_examples() {
        assert_eq!(
            Partition::new(mi("111"), vec![mi("111")]).unwrap().maxord(),
            3
        );
        assert_eq!(
            Partition::new(mi("11"), vec![mi("10"), mi("01")])
                .unwrap()
                .maxord(),
            1
        );
        assert_eq!(
            Partition::new(mi("111"), vec![mi("101"), mi("010")])
                .unwrap()
                .maxord(),
            2
        );
    }

    #[test]
    fn refine_base_case() {
        let xi = Partition::new(mi("1"), vec![mi("1")]).unwrap();
        let r = xi.refine();
        assert_eq!(show(&r[0]), ["10", "01"]);
        assert_eq!(show(&r[1]), ["11"]);
    }

    #[test]
    fn refine_pair_partition() {
        let xi = Partition::new(mi("11"), vec![mi("10"), mi("01")]).unwrap();
        let r = xi.refine();
        assert_eq!(r.len(), 3);
        assert_eq!(show(&r[1]), ["101", "010"]);
        assert_eq!(show(&r[2]), ["100", "011"]);
    }

    #[test]
    fn refine_is_a_bijection_onto_the_extended_table() {
        for n in 1..=6 {
            let alpha = MultiIndex::ones(n);
            let mut seen = HashSet::new();
            let mut count = 0;
            for xi in enumerate_partitions(alpha).iter() {
                for r in xi.refine() {
                    count += 1;
                    assert!(seen.insert(r));
                }
            }
            let next: HashSet<Partition> = enumerate_partitions(alpha.diamond(1))
                .partitions
                .into_iter()
                .collect();
            assert_eq!(count, next.len());
            assert_eq!(seen, next);
        }
    }
}

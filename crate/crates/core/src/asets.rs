//! Index sets attached to each partition of a binary multi-index.
//!
//! For a partition `ξ = {α¹, …, α^r}` of `α`, the family holds one set
//! `A_0` for the base point and one set `A_{α^i}` per block. The exact
//! expansion of `T_α f ū` has one term per partition, with base
//! `Σ_{γ∈A_0} u_γ` and directions `Σ_{γ∈A_{α^i}} u_γ`.
//!
//! Families are built on the all-ones index by extending one digit at a time
//! (starting from the single family of `(1)`), following the partition
//! refinement of [`Partition::refine`]. Other indices are handled by
//! projecting onto the support and re-embedding.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{diamond_set, MultiIndex, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ASetFamily {
    pub partition: Partition,
    /// `A_0`, sorted.
    pub base: Vec<MultiIndex>,
    /// `A_{α^i}` for each block, in block order; each sorted.
    pub blocks: Vec<Vec<MultiIndex>>,
}

impl ASetFamily {
    /// Looks up the set keyed by `beta` (the zero index or one of the blocks).
    pub fn get(&self, beta: MultiIndex) -> Option<&[MultiIndex]> {
        if beta.is_zero() {
            return Some(&self.base);
        }
        self.partition
            .blocks()
            .iter()
            .position(|b| *b == beta)
            .map(|i| self.blocks[i].as_slice())
    }

    /// `(β, A_β)` pairs, base first.
    pub fn entries(&self) -> impl Iterator<Item = (MultiIndex, &[MultiIndex])> {
        let zero = MultiIndex::zero(self.partition.target().len());
        std::iter::once((zero, self.base.as_slice())).chain(
            self.partition
                .blocks()
                .iter()
                .copied()
                .zip(self.blocks.iter().map(Vec::as_slice)),
        )
    }

    fn embed(&self, len: usize, positions: &[usize]) -> ASetFamily {
        let lift = |set: &[MultiIndex]| {
            let mut v: Vec<MultiIndex> = set.iter().map(|g| g.embed(len, positions)).collect();
            v.sort();
            v
        };
        ASetFamily {
            partition: self.partition.embed(len, positions),
            base: lift(&self.base),
            blocks: self.blocks.iter().map(|s| lift(s)).collect(),
        }
    }

    /// The families of `α ⋄ 1` induced by this family of `α`, aligned with
    /// `self.partition.refine()`.
    pub fn refine(&self) -> Vec<ASetFamily> {
        let partitions = self.partition.refine();
        let n = self.partition.size();
        let mut out = Vec::with_capacity(n + 1);

        // New singleton block 0⋄1 takes A_0⋄1; everything else gets ⋄0.
        let mut blocks: Vec<Vec<MultiIndex>> =
            self.blocks.iter().map(|s| diamond_set(s, 0)).collect();
        blocks.push(diamond_set(&self.base, 1));
        out.push(ASetFamily {
            partition: partitions[0].clone(),
            base: sorted(diamond_set(&self.base, 0)),
            blocks: blocks.into_iter().map(sorted).collect(),
        });

        for i in 0..n {
            let blocks = (0..n)
                .map(|j| {
                    let set = &self.blocks[j];
                    match j.cmp(&i) {
                        std::cmp::Ordering::Equal => diamond_set(set, 1),
                        std::cmp::Ordering::Less => diamond_set(set, 0),
                        std::cmp::Ordering::Greater => {
                            let mut s = diamond_set(set, 0);
                            s.extend(diamond_set(set, 1));
                            s
                        }
                    }
                })
                .map(sorted)
                .collect();
            let mut base = diamond_set(&self.base, 0);
            base.extend(diamond_set(&self.base, 1));
            base.extend(diamond_set(&self.blocks[i], 0));
            out.push(ASetFamily {
                partition: partitions[i + 1].clone(),
                base: sorted(base),
                blocks,
            });
        }
        out
    }
}

fn sorted(mut v: Vec<MultiIndex>) -> Vec<MultiIndex> {
    v.sort();
    v
}

/// Families for the all-ones index of length `n`, in refinement order.
fn build_all_ones(n: usize) -> Vec<ASetFamily> {
    if n == 0 {
        return vec![ASetFamily {
            partition: Partition::empty(0),
            base: vec![MultiIndex::zero(0)],
            blocks: Vec::new(),
        }];
    }
    // T_1 f(ū) = Δ_{u_1} f(u_0) fixes the base case.
    let one = MultiIndex::ones(1);
    let mut families = vec![ASetFamily {
        partition: Partition::new(one, vec![one]).expect("valid base partition"),
        base: vec![MultiIndex::zero(1)],
        blocks: vec![vec![one]],
    }];
    for _ in 1..n {
        families = families.iter().flat_map(ASetFamily::refine).collect();
    }
    families
}

/// Builds one family per partition of `alpha`, sorted by partition.
pub fn build_asets(alpha: MultiIndex) -> Vec<ASetFamily> {
    let support = alpha.support();
    let mut families: Vec<ASetFamily> = build_all_ones(support.len())
        .iter()
        .map(|f| f.embed(alpha.len(), &support))
        .collect();
    families.sort_by(|a, b| a.partition.cmp(&b.partition));
    families
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub name: String,
    pub passed: bool,
    /// Offending indices, as `(key β, γ)` pairs.
    pub offenders: Vec<(MultiIndex, MultiIndex)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub partition: Partition,
    pub conditions: Vec<ConditionResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }
}

pub const CONDITION_NAMES: [&str; 5] = [
    "disjoint",
    "contains-key-within-downset",
    "base-extra-bounds",
    "block-extra-bounds",
    "extra-order-exceeds-key",
];

/// Checks the four structural conditions plus the strict order increase
/// `|γ| > |β|` for every `γ ∈ A_β − {β}`.
pub fn validate(fam: &ASetFamily) -> ValidationReport {
    let alpha = fam.partition.target();
    let maxord = fam.partition.maxord();
    let lt = |a: &MultiIndex, b: &MultiIndex| a.lt(b).unwrap_or(false);
    let leq = |a: &MultiIndex, b: &MultiIndex| a.leq(b).unwrap_or(false);
    let entries: Vec<(MultiIndex, &[MultiIndex])> = fam.entries().collect();

    // 1. pairwise disjoint
    let mut seen = BTreeSet::new();
    let mut disjoint = Vec::new();
    for (beta, set) in &entries {
        for g in set.iter() {
            if !seen.insert(*g) {
                disjoint.push((*beta, *g));
            }
        }
    }

    // 2. β ∈ A_β ⊆ [α]
    let mut contains = Vec::new();
    for (beta, set) in &entries {
        if !set.contains(beta) {
            contains.push((*beta, *beta));
        }
        for g in set.iter().filter(|g| !leq(g, &alpha)) {
            contains.push((*beta, *g));
        }
    }

    // 3. base extras: 0 < γ < α, |γ| < maxord
    let (zero, base) = entries[0];
    let base_bad: Vec<_> = base
        .iter()
        .filter(|g| **g != zero)
        .filter(|g| !(lt(&zero, g) && lt(g, &alpha) && g.order() < maxord))
        .map(|g| (zero, *g))
        .collect();

    // 4. block extras: α^i < γ < α, |γ| ≤ maxord
    let mut block_bad = Vec::new();
    for (beta, set) in &entries[1..] {
        for g in set.iter().filter(|g| *g != beta) {
            if !(lt(beta, g) && lt(g, &alpha) && g.order() <= maxord) {
                block_bad.push((*beta, *g));
            }
        }
    }

    // |γ| > |β|
    let mut strict = Vec::new();
    for (beta, set) in &entries {
        for g in set.iter().filter(|g| *g != beta) {
            if g.order() <= beta.order() {
                strict.push((*beta, *g));
            }
        }
    }

    let conditions = [disjoint, contains, base_bad, block_bad, strict]
        .into_iter()
        .zip(CONDITION_NAMES)
        .map(|(offenders, name)| ConditionResult {
            name: name.to_string(),
            passed: offenders.is_empty(),
            offenders,
        })
        .collect();
    ValidationReport {
        partition: fam.partition.clone(),
        conditions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_partitions;

    fn mi(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    fn strs(v: &[MultiIndex]) -> Vec<String> {
        v.iter().map(|m| m.to_string()).collect()
    }

    fn family_for<'a>(fams: &'a [ASetFamily], blocks: &[&str]) -> &'a ASetFamily {
        let blocks: Vec<MultiIndex> = blocks.iter().map(|b| mi(b)).collect();
        let target = fams[0].partition.target();
        let p = Partition::new(target, blocks).unwrap();
        fams.iter().find(|f| f.partition == p).unwrap()
    }

    #[test]
    fn base_case() {
        let fams = build_asets(mi("1"));
        assert_eq!(fams.len(), 1);
        assert_eq!(strs(&fams[0].base), ["0"]);
        assert_eq!(strs(&fams[0].blocks[0]), ["1"]);
    }

    #[test]
    fn two_digit_families() {
        let fams = build_asets(mi("11"));
        let full = family_for(&fams, &["11"]);
        assert_eq!(strs(&full.base), ["00", "10", "01"]);
        assert_eq!(strs(full.get(mi("11")).unwrap()), ["11"]);
        let split = family_for(&fams, &["10", "01"]);
        assert_eq!(strs(&split.base), ["00"]);
        assert_eq!(strs(split.get(mi("10")).unwrap()), ["10"]);
        assert_eq!(strs(split.get(mi("01")).unwrap()), ["01"]);
    }

    #[test]
    fn three_digit_family_with_tail() {
        let fams = build_asets(mi("111"));
        let f = family_for(&fams, &["101", "010"]);
        assert_eq!(strs(&f.base), ["000", "100", "001"]);
        assert_eq!(strs(f.get(mi("101")).unwrap()), ["101"]);
        assert_eq!(strs(f.get(mi("010")).unwrap()), ["010", "011"]);
    }

    #[test]
    fn zero_index() {
        let fams = build_asets(mi("00"));
        assert_eq!(fams.len(), 1);
        assert_eq!(strs(&fams[0].base), ["00"]);
        assert!(fams[0].blocks.is_empty());
        assert!(validate(&fams[0]).passed());
    }

    #[test]
    fn families_cover_every_partition_once() {
        for alpha in ["1", "11", "111", "1011", "11111", "010110"] {
            let alpha = mi(alpha);
            let fams = build_asets(alpha);
            let parts: Vec<Partition> = fams.iter().map(|f| f.partition.clone()).collect();
            assert_eq!(parts, enumerate_partitions(alpha).partitions);
        }
    }

    #[test]
    fn singleton_and_full_partitions() {
        for n in 1..=6 {
            let alpha = MultiIndex::ones(n);
            let fams = build_asets(alpha);
            let singles: Vec<MultiIndex> = (0..n).map(|i| MultiIndex::unit(n, i)).collect();
            let f = fams
                .iter()
                .find(|f| f.partition.blocks() == singles.as_slice())
                .unwrap();
            assert_eq!(f.base, vec![MultiIndex::zero(n)]);
            for (i, s) in f.blocks.iter().enumerate() {
                assert_eq!(s, &vec![singles[i]]);
            }

            let full = fams.iter().find(|f| f.partition.size() == 1).unwrap();
            assert_eq!(full.blocks[0], vec![alpha]);
            let strict: Vec<MultiIndex> = alpha
                .down_set()
                .into_iter()
                .filter(|g| *g != alpha)
                .collect();
            assert_eq!(full.base, strict);
        }
    }

    #[test]
    fn disjointness_containment_and_order_increase_hold_up_to_seven() {
        for n in 0..=7 {
            for f in build_asets(MultiIndex::ones(n)) {
                let r = validate(&f);
                for i in [0, 1, 4] {
                    assert!(r.conditions[i].passed, "{r:?}");
                }
            }
        }
    }

    #[test]
    fn maxord_bounds_hold_below_four_digits() {
        for n in 0..=3 {
            for f in build_asets(MultiIndex::ones(n)) {
                assert!(validate(&f).passed());
            }
        }
    }

    #[test]
    fn maxord_bounds_break_at_four_digits() {
        // The refinement puts A_{α^i}⋄0 into the base of ξ̃_i; at four digits
        // this exceeds the maxord bounds for the partition {1100, 0011}.
        let fams = build_asets(mi("1111"));
        let f = family_for(&fams, &["1100", "0011"]);
        assert_eq!(
            strs(&f.base),
            ["0000", "1000", "0100", "0010", "0001", "1010", "1001", "0110", "0101"]
        );
        assert_eq!(strs(f.get(mi("0011")).unwrap()), ["0011", "1011", "0111"]);
        let r = validate(f);
        assert!(!r.conditions[2].passed);
        assert!(!r.conditions[3].passed);
        assert_eq!(
            r.conditions[3].offenders,
            vec![(mi("0011"), mi("1011")), (mi("0011"), mi("0111"))]
        );
    }

    #[test]
    fn mutations_are_caught() {
        let alpha = mi("111");
        let fams = build_asets(alpha);
        let mut f = family_for(&fams, &["101", "010"]).clone();
        f.base.push(alpha);
        let r = validate(&f);
        assert!(!r.conditions[2].passed);
        assert_eq!(r.conditions[2].offenders, vec![(mi("000"), alpha)]);

        let mut f = family_for(&fams, &["101", "010"]).clone();
        f.blocks[1].push(mi("100"));
        let r = validate(&f);
        assert!(!r.conditions[0].passed);

        let mut f = family_for(&fams, &["101", "010"]).clone();
        f.blocks[0].clear();
        assert!(!validate(&f).conditions[1].passed);
    }
}

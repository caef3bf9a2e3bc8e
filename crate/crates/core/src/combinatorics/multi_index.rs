use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point of the discrete cube `{0,1}^k`.
///
/// Digit `i` (0-based, left to right in the bit-string form) is stored in bit
/// `i` of `bits`, so the dense cuboid index of a multi-index is `bits` itself.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    len: u8,
    bits: u64,
}

pub const MAX_LEN: usize = 64;

impl MultiIndex {
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_LEN, "multi-index length {len} > {MAX_LEN}");
        MultiIndex {
            len: len as u8,
            bits: 0,
        }
    }

    pub fn ones(len: usize) -> Self {
        assert!(len <= MAX_LEN, "multi-index length {len} > {MAX_LEN}");
        MultiIndex {
            len: len as u8,
            bits: low_mask(len),
        }
    }

    /// The multi-index with a single 1-digit at `pos`.
    pub fn unit(len: usize, pos: usize) -> Self {
        assert!(pos < len);
        MultiIndex::from_bits(len, 1 << pos)
    }

    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= MAX_LEN, "multi-index length {len} > {MAX_LEN}");
        assert_eq!(bits & !low_mask(len), 0, "bits outside length {len}");
        MultiIndex {
            len: len as u8,
            bits,
        }
    }

    pub fn from_digits(digits: &[u8]) -> Result<Self> {
        if digits.len() > MAX_LEN {
            return Err(Error::TooLong(digits.len()));
        }
        let mut bits = 0u64;
        for (i, &d) in digits.iter().enumerate() {
            match d {
                0 => {}
                1 => bits |= 1 << i,
                _ => {
                    return Err(Error::InvalidBitString(
                        digits.iter().map(|d| d.to_string()).collect(),
                    ))
                }
            }
        }
        Ok(MultiIndex {
            len: digits.len() as u8,
            bits,
        })
    }

    /// Builds the multi-index of length `len` whose support is `positions`.
    pub fn from_support(len: usize, positions: &[usize]) -> Self {
        let bits = positions.iter().fold(0u64, |acc, &p| {
            assert!(p < len);
            acc | (1 << p)
        });
        MultiIndex::from_bits(len, bits)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Dense index into a length-`2^k` component array.
    pub fn as_index(&self) -> usize {
        self.bits as usize
    }

    pub fn digit(&self, i: usize) -> u8 {
        assert!(i < self.len());
        ((self.bits >> i) & 1) as u8
    }

    pub fn digits(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.digit(i)).collect()
    }

    /// `|α|`, the number of 1-digits.
    pub fn order(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Positions of the 1-digits, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.bits >> i & 1 == 1)
            .collect()
    }

    /// Position of the least 1-digit, if any.
    pub fn least(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    /// Componentwise `≤`.
    pub fn leq(&self, other: &MultiIndex) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.bits & !other.bits == 0)
    }

    /// Strict componentwise `<`.
    pub fn lt(&self, other: &MultiIndex) -> Result<bool> {
        Ok(self.leq(other)? && self.bits != other.bits)
    }

    pub fn disjoint(&self, other: &MultiIndex) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.bits & other.bits == 0)
    }

    /// Componentwise sum of two multi-indices with disjoint supports.
    pub fn join(&self, other: &MultiIndex) -> Result<MultiIndex> {
        if !self.disjoint(other)? {
            return Err(Error::InvalidBitString(format!(
                "{self} + {other} leaves the binary cube"
            )));
        }
        Ok(MultiIndex::from_bits(self.len(), self.bits | other.bits))
    }

    /// `α ⋄ d`: appends the digit `d`.
    pub fn diamond(&self, digit: u8) -> MultiIndex {
        assert!(digit <= 1, "diamond digit must be 0 or 1");
        let len = self.len() + 1;
        MultiIndex::from_bits(len, self.bits | (u64::from(digit) << self.len()))
    }

    /// Every `β ≤ α`, ordered by the canonical multi-index order.
    pub fn down_set(&self) -> Vec<MultiIndex> {
        let mut out = Vec::with_capacity(1 << self.order());
        // Standard submask walk.
        let mut sub = self.bits;
        loop {
            out.push(MultiIndex::from_bits(self.len(), sub));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & self.bits;
        }
        out.sort();
        out
    }

    /// Every multi-index of length `len`, in dense (integer) order.
    pub fn cube(len: usize) -> impl Iterator<Item = MultiIndex> {
        assert!(len < MAX_LEN);
        (0..1u64 << len).map(move |b| MultiIndex::from_bits(len, b))
    }

    /// Re-embeds `self` (a multi-index on `positions.len()` digits) into length
    /// `len`, sending digit `j` to position `positions[j]`.
    pub fn embed(&self, len: usize, positions: &[usize]) -> MultiIndex {
        assert_eq!(self.len(), positions.len());
        let bits = self
            .support()
            .into_iter()
            .fold(0u64, |acc, j| acc | (1 << positions[j]));
        MultiIndex::from_bits(len, bits)
    }

    /// Inverse of [`MultiIndex::embed`]: keeps only the digits at `positions`.
    pub fn project(&self, positions: &[usize]) -> MultiIndex {
        let bits = positions
            .iter()
            .enumerate()
            .fold(0u64, |acc, (j, &p)| acc | (u64::from(self.digit(p)) << j));
        MultiIndex::from_bits(positions.len(), bits)
    }

    fn check_len(&self, other: &MultiIndex) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }
}

/// Lifts `⋄ d` to a set of multi-indices.
pub fn diamond_set(set: &[MultiIndex], digit: u8) -> Vec<MultiIndex> {
    set.iter().map(|m| m.diamond(digit)).collect()
}

fn low_mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// Canonical order: length, then `|α|`, then the support position lists
/// compared lexicographically (so `100 < 010 < 001` and `110 < 101 < 011`).
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then(self.order().cmp(&other.order()))
            .then_with(|| {
                let diff = self.bits ^ other.bits;
                if diff == 0 {
                    Ordering::Equal
                } else {
                    let lowest = diff & diff.wrapping_neg();
                    if self.bits & lowest != 0 {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    }
                }
            })
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.digit(i) == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiIndex({self})")
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidBitString(s.to_string())),
            })
            .collect::<Result<Vec<u8>>>()?;
        MultiIndex::from_digits(&digits)
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MultiIndex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    #[test]
    fn order_counts_ones() {
        assert_eq!(mi("000").order(), 0);
        assert_eq!(mi("11").order(), 2);
        assert_eq!(mi("101").order(), 2);
    }

    #[test]
    fn partial_order() {
        assert!(mi("01").leq(&mi("11")).unwrap());
        assert!(!mi("10").leq(&mi("01")).unwrap());
        assert!(matches!(
            mi("10").leq(&mi("100")),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn down_set_of_all_ones_is_the_cube() {
        let ds: Vec<String> = mi("11").down_set().iter().map(|m| m.to_string()).collect();
        assert_eq!(ds, ["00", "10", "01", "11"]);
        assert_eq!(mi("10110").down_set().len(), 8);
    }

    #[test]
    fn diamond_appends_a_digit() {
        assert_eq!(mi("10").diamond(1), mi("101"));
        assert_eq!(mi("11").diamond(0), mi("110"));
        assert_eq!(diamond_set(&[mi("01")], 1), vec![mi("011")]);
        assert_eq!(mi("").diamond(1), mi("1"));
    }

    #[test]
    fn canonical_order() {
        let mut v = [
            mi("011"),
            mi("001"),
            mi("110"),
            mi("000"),
            mi("100"),
            mi("101"),
            mi("010"),
        ];
        v.sort();
        let s: Vec<String> = v.iter().map(|m| m.to_string()).collect();
        assert_eq!(s, ["000", "100", "010", "001", "110", "101", "011"]);
    }

    #[test]
    fn embed_and_project_are_inverse_on_support() {
        let alpha = mi("01101");
        let support = alpha.support();
        assert_eq!(support, vec![1, 2, 4]);
        let local = mi("101");
        let global = local.embed(5, &support);
        assert_eq!(global, mi("01001"));
        assert_eq!(global.project(&support), local);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("10a".parse::<MultiIndex>().is_err());
        assert_eq!("".parse::<MultiIndex>().unwrap().len(), 0);
    }
}

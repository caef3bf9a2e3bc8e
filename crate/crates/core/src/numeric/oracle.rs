//! Deterministic randomness: seed derivation, a memoized random map, and
//! samplers for points, vectors and cuboids.
//!
//! Every random quantity descends from a single root seed. A child seed is the
//! first eight bytes (little endian) of `SHA-256(parent ‖ label ‖ 0x00 ‖ index)`,
//! so any trial can be replayed from its own seed alone.

use std::collections::HashMap;
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::cuboid::Cuboid;
use crate::map::VectorMap;
use crate::value::{Rational, Value};

pub fn derive_seed(parent: u64, label: &str, index: u64) -> u64 {
    let mut h = Sha256::new();
    h.update(parent.to_le_bytes());
    h.update(label.as_bytes());
    h.update([0u8]);
    h.update(index.to_le_bytes());
    let out = h.finalize();
    u64::from_le_bytes(out[..8].try_into().expect("digest has 32 bytes"))
}

pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random but fixed map `Q^p -> Q^q`.
///
/// Coordinate `j` of the value at `x` is `n/d` with `n ∈ [-100, 100]` and
/// `d ∈ [1, 16]`, both read from `SHA-256(seed ‖ encode(x) ‖ j)`. Values are
/// memoized; the memo is a cache only, since the hash already makes the map a
/// pure function of `(seed, x)`.
pub struct RandomRationalMap {
    seed: u64,
    dim_in: usize,
    dim_out: usize,
    memo: Mutex<HashMap<Value, Value>>,
}

impl RandomRationalMap {
    pub fn new(seed: u64, dim_in: usize, dim_out: usize) -> Self {
        RandomRationalMap {
            seed,
            dim_in,
            dim_out,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of distinct points queried so far.
    pub fn memo_len(&self) -> usize {
        self.memo.lock().expect("memo lock").len()
    }

    fn compute(&self, x: &Value) -> Value {
        let enc = x.encode();
        (0..self.dim_out)
            .map(|j| {
                let mut h = Sha256::new();
                h.update(self.seed.to_le_bytes());
                h.update(enc.as_bytes());
                h.update((j as u64).to_le_bytes());
                let d = h.finalize();
                let a = u64::from_le_bytes(d[..8].try_into().unwrap());
                let b = u64::from_le_bytes(d[8..16].try_into().unwrap());
                let num = (a % 201) as i64 - 100;
                let den = (b % 16) as i64 + 1;
                Rational::new(num.into(), den.into())
            })
            .collect()
    }
}

impl VectorMap for RandomRationalMap {
    fn dim_in(&self) -> usize {
        self.dim_in
    }

    fn dim_out(&self) -> usize {
        self.dim_out
    }

    fn apply(&self, x: &Value) -> Value {
        assert_eq!(x.dim(), self.dim_in, "random map queried off its domain");
        if let Some(v) = self.memo.lock().expect("memo lock").get(x) {
            return v.clone();
        }
        let v = self.compute(x);
        self.memo
            .lock()
            .expect("memo lock")
            .insert(x.clone(), v.clone());
        v
    }
}

/// Integer coordinates in `[-5, 5]`.
pub fn random_int_value(rng: &mut impl Rng, dim: usize) -> Value {
    (0..dim)
        .map(|_| Rational::from_integer(rng.random_range(-5i64..=5).into()))
        .collect()
}

/// Rational coordinates `p/q` with `p ∈ [-5, 5]`, `q ∈ [1, 3]`.
pub fn random_rational_value(rng: &mut impl Rng, dim: usize) -> Value {
    (0..dim)
        .map(|_| {
            Rational::new(
                rng.random_range(-5i64..=5).into(),
                rng.random_range(1i64..=3).into(),
            )
        })
        .collect()
}

pub fn random_cuboid(rng: &mut impl Rng, dim: usize, space: usize) -> Cuboid {
    Cuboid::from_fn(dim, space, |_| random_rational_value(rng, space))
}

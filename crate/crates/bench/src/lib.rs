//! Shared inputs for the benchmarks.

use fdb_core::numeric::oracle::{random_cuboid, random_int_value, rng_from};
use fdb_core::numeric::RandomRationalMap;
use fdb_core::{Cuboid, Value};

/// A random map, a base point and `k` directions on 2-dimensional spaces.
pub fn chain_inputs(
    seed: u64,
    k: usize,
) -> (RandomRationalMap, RandomRationalMap, Value, Vec<Value>) {
    let mut rng = rng_from(seed);
    let x = random_int_value(&mut rng, 2);
    let v = (0..k).map(|_| random_int_value(&mut rng, 2)).collect();
    (
        RandomRationalMap::new(seed ^ 1, 2, 2),
        RandomRationalMap::new(seed ^ 2, 2, 2),
        x,
        v,
    )
}

pub fn cuboid(seed: u64, k: usize) -> Cuboid {
    random_cuboid(&mut rng_from(seed), k, 2)
}

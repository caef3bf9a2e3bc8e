//! Exact expansions of higher-order finite differences of composed maps,
//! together with the brute-force machinery used to check them.

pub mod asets;
pub mod combinatorics;
pub mod cuboid;
pub mod error;
pub mod map;
pub mod numeric;
pub mod symbolic;
pub mod value;

pub use asets::{build_asets, validate, ASetFamily, ValidationReport};
pub use combinatorics::{enumerate_partitions, MultiIndex, Partition, PartitionTable};
pub use cuboid::{Cuboid, PointedDirections};
pub use error::{Error, Result};
pub use map::{Compose, FnMap, VectorMap};
pub use symbolic::{canonicalize, expand_chain, expand_tangent, main_part, Expr, Format};
pub use value::{Rational, Value};

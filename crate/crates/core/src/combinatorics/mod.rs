//! Binary multi-indices and their partitions.

mod multi_index;
mod partition;

pub use multi_index::{diamond_set, MultiIndex, MAX_LEN};
pub use partition::{enumerate_partitions, Partition, PartitionTable};

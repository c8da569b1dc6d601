//! Element-indexed finite groups: closure, orders, classes, centralizers.

mod handle;
mod perm;

pub use handle::{
    close_generators, ClosureProbe, ConjClass, GroupHandle, GroupRule, GroupSummary, DEFAULT_CAP, TABLE_LIMIT,
};
pub use perm::{Perm, PermRule};

//! Queue layouts of finite posets.
//!
//! The crate works on the cover graph (Hasse diagram) of a poset together with
//! a fixed chain decomposition. It provides:
//!
//! * [`poset`]: validation, transitive closure/reduction, width and a
//!   matching-based minimum chain decomposition;
//! * [`extensions`]: the lazy and most-recently-used (MRU) linear extension
//!   strategies and checkers for both;
//! * [`rainbow`]: nesting, maximum rainbows with certificates, and optimal
//!   queue assignment for a fixed vertex order;
//! * [`patterns`]: detectors for the forbidden configurations that bound the
//!   rainbow size of lazy and MRU extensions;
//! * [`constructions`]: the extremal poset families and the width-lifting step;
//! * [`search`]: branch-and-bound queue number computation over all linear
//!   extensions;
//! * [`testkit`]: seeded random posets of bounded width.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

mod bitset;
pub mod constructions;
pub mod extensions;
pub mod patterns;
pub mod poset;
pub mod rainbow;
pub mod search;
pub mod testkit;

pub use bitset::BitSet;
pub use constructions::{ConstructionBundle, ConstructionError, Family};
pub use extensions::{StepReason, StrategyTrace, TieBreak, Verdict};
pub use poset::{ChainDecomposition, LinearExtension, Poset, PosetError};
pub use rainbow::{Edge, QueueLayout, RainbowCertificate};
pub use search::{SearchOptions, SearchResult};

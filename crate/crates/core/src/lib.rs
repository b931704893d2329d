//! Stack-sorting on words.
//!
//! Two extensions of West's stack-sorting map to words with repeated
//! letters: `fast`, which lets equal letters sit on each other in the stack,
//! and `slow`, which does not. The crate computes the maps and their
//! distances, counts preimages through valid hook configurations and rebuilds
//! them as trees, counts sortable words by recurrence, and runs the
//! exhaustive scans used to study exceptional words.
//!
//! ```
//! use stacksort::{sort, SortVariant, Word};
//!
//! let w: Word = "3662451".parse().unwrap();
//! assert_eq!(sort(&w, SortVariant::Slow).to_string(), "3624156");
//! ```

pub mod enumeration;
pub mod error;
pub mod explorer;
pub mod sorters;
pub mod trees;
pub mod vhc;
pub mod word;

pub use enumeration::{count_fast_sortable, count_slow_sortable, fuss_catalan, SortableCounter};
pub use error::{Error, Limits, Result};
pub use sorters::{distance, make_eta, make_rho, sort, SortVariant};
pub use trees::{PlaneTree, TreeClass};
pub use vhc::{brute_preimages, count_preimages, enumerate_vhc, HookConfig, VhcFilter};
pub use word::{ContentVector, Word};

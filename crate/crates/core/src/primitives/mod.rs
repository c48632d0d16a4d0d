//! Succinct building blocks: bitvector, bounded-alphabet sequence, and
//! range argmin/argmax over a discarded source array.
//!
//! All structures are immutable after build and safe to share across
//! threads; positions are 1-based throughout the public API.

mod bitvector;
mod labelseq;
mod rmq;
pub(crate) mod wavelet;

pub use bitvector::BitVector;
pub use labelseq::LabelSequence;
pub use rmq::{ExtremeMode, RangeArgIndex};

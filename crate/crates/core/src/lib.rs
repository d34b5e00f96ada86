//! Pierce expansions of numbers in `[0, 1]` and their error-sum function.
//!
//! Every value is an exact rational. Quantities defined by infinite series are
//! returned as an [`Enclosure`] holding the true value.

pub mod analysis;
pub mod certified;
pub mod cli;
pub mod digits;
pub mod error;
pub mod esum;
pub mod intervals;
pub mod rat;
pub mod seq;

pub use digits::{convergent, digit1, expand, shift, DigitStream, ExtDigit};
pub use error::{Error, Result};
pub use esum::{cylinder_extrema, estar, esum, jumps_at, CylinderExtrema, JumpReport};
pub use intervals::{fundamental_interval, interval_length, locate, partition, FundInterval};
pub use rat::{fmt_rat, parse_rat, Rat};
pub use seq::{enumerate_prefixes, phi, CylinderId, Enclosure, PierceSeq, PrefixBound};

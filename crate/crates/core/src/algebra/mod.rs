//! Exact rational arithmetic, extended valuations, and arithmetic in pure
//! radical number fields with the unique p-adic valuation extension.

pub mod field;
pub mod rational;

pub use field::{int_valuation, rational_valuation, FieldDescriptor, FieldElement};
pub use rational::{format_rational, parse_rational, ExtRational};

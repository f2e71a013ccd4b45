//! Core domain types: the value graph and its coordinate scheme,
//! characteristic vectors, valuations and prices.

mod graph;
mod point;
mod valuation;

pub use graph::{Bundle, ValueGraph, MAX_ITEMS};
pub use point::{char_vector, project, Allocation, GPoint};
pub use valuation::{
    dot, parse_rational, rat, ratio, ExtRational, PriceVector, Rational, Valuation,
};

pub(crate) use point::char_vector_unchecked;

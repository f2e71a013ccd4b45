//! Competitive equilibria for combinatorial auctions with graphical
//! (quadratic) valuations and anonymous graphical prices.
//!
//! Items are the vertices of a value graph; a bundle's value is the sum of
//! its vertex weights and the weights of the edges inside it. The crate
//! decides whether prices on vertices and edges can clear a market, finds
//! revenue-optimal equilibrium prices with an exact rational simplex, and
//! verifies equilibrium claims.
//!
//! ```
//! use quadprice::model::{Valuation, ValueGraph};
//! use quadprice::pricing::{optimal_ce, SolveOptions};
//!
//! let g = ValueGraph::complete(3).unwrap();
//! let vs = vec![
//!     Valuation::from_ints(&[0, 0, 0, 1, 0, 0]),
//!     Valuation::from_ints(&[0, 0, 0, 0, 1, 0]),
//!     Valuation::from_ints(&[0, 0, 0, 0, 0, 1]),
//! ];
//! let res = optimal_ce(&g, &vs, &[1, 1, 1], &SolveOptions::default()).unwrap();
//! assert_eq!(res.revenue().unwrap().to_string(), "1");
//! ```

pub mod assignment;
pub mod cli;
pub mod demand;
pub mod error;
pub mod model;
pub mod polytope;
pub mod pricing;

pub use error::{Error, Result};
pub use polytope::Caps;

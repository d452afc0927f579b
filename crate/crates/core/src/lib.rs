//! Time-budgeted LZ77 parsing.
//!
//! Given a text, a space model and a decode-time model, [`solver::solve`]
//! finds a parsing that decodes within a tick budget `T` (up to an additive
//! `2 t_max`) and whose size is within `s_max` bits of the best parsing that
//! meets the budget. [`codec`] writes the parsing as a `.bcz` container.
//!
//! ```
//! use bczip::cost::{CostModel, SpaceModel, TimeModel};
//! use bczip::{codec, solver};
//!
//! let text = b"abracadabra abracadabra abracadabra";
//! let model = CostModel::new(SpaceModel::ByteOriented, TimeModel::log());
//! let report = solver::solve(text, model, 400).unwrap();
//! assert!(report.t_ticks <= 400 + 2 * report.t_max as u64);
//! let packed = codec::compress_bytes(text, &report.parsing).unwrap();
//! assert_eq!(codec::decompress(&packed).unwrap(), text);
//! ```

pub mod calibrate;
pub mod codec;
pub mod cost;
pub mod index;
pub mod oracle;
pub mod solver;
pub mod tradeoff;

pub use cost::{CostModel, Phrase, SpaceModel, TimeModel};
pub use index::ParseGraph;
pub use solver::{solve, solve_fptas, solve_graph, SolveError, SolveReport};

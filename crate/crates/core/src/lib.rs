//! Edge colorings of complete graphs that give every triangle its own
//! palette of colors.
//!
//! * [`graph`]: vertices, edges, triangles, palettes and colorings of K_n.
//! * [`constructions`]: the modular coloring for odd `n` and its restriction
//!   for even `n`.
//! * [`analysis`]: properness, palette census, capacities and per-color
//!   counts.
//! * [`search`]: exact decision and minimization by backtracking.
//! * [`encoder`]: DIMACS CNF encoding of the decision problem.

pub mod analysis;
pub mod constructions;
pub mod encoder;
pub mod error;
pub mod graph;
pub mod search;

pub use error::{Error, Result};
pub use graph::{Color, EdgeColoring, Palette, PaletteMode, Triangle, Vertex};

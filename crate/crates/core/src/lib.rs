//! Combinatorial toolkit for 1-planar drawings: triangulation augmentation,
//! patch decompositions with exact rational weights, Tutte-Berge deficiency
//! machinery, and generators for the tight extremal families.

pub mod acceptance;
pub mod drawing;
pub mod error;
pub mod generators;
pub mod matching;
pub mod patches;
pub mod random;
pub mod regions;
pub mod saturation;

pub use drawing::{Cell, Cells, Crossing, Dart, Diagnostics, Drawing, Edge, KiteStatus, Node};
pub use error::{Error, Result};

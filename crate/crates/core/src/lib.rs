//! Frequent pattern mining for itemsets, sequences and labelled graphs,
//! constraint-based condensation of the mined patterns, and approximate
//! tile selection over binary matrices.

pub mod condense;
pub mod constraints;
pub mod io;
pub mod mining;
pub mod oracle;
pub mod pattern;
pub mod tiling;

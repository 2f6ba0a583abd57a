//! Combinatorics of the right-angled 120-cell and of chains of 120-cells.
//!
//! The 120-cell is obtained as the dual of the 600-cell, whose simplicial
//! boundary is computed from exact vertex coordinates in `ℚ(φ)`.

mod chain;
mod complex;
mod polytopes;

pub use crate::betti::double_to_singular_locus;
pub use chain::{glue_chain, ChainSpec, GluingRule};
pub use complex::{CellComplex4, FVector};
pub use polytopes::{build_600_cell, hundred_twenty_cell, hypercube, six_hundred_cell_vertices, GoldenPoint};

/// `glue_chain` over 120-cells with the default gluing rule.
pub fn chain_of_120_cells(k: usize) -> crate::Result<CellComplex4> {
    glue_chain(hundred_twenty_cell(), &ChainSpec::new(k)?)
}

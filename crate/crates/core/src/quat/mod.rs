//! The definite quaternion algebra ramified at `q` and infinity, its lattices,
//! orders and left ideals.

mod algebra;
mod lattice;
mod order;

pub use algebra::{hilbert_symbol, Place, Presentation, QuatElement, QuaternionAlgebra};
pub use lattice::{Lattice, LeftIdeal, Order};
pub use order::{
    equivalence_witness, is_equivalent, maximal_order, norm_ideals, normalized_norm_counts, ramified_ideal,
    reduce_ideal, short_vectors, unit_order, units,
};

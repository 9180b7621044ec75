//! The supersingular graph at `q` and the dual graph of the special fibre at `p`.
//!
//! Vertices are left ideal classes of a maximal order of `B_{q,inf}`; edges are
//! unit orbits of norm-`p` ideals at each vertex, oriented from the first copy
//! of the vertex set to the second.

mod brandt;
mod edges;
mod oracle;
mod vertices;

pub use brandt::{edge_brandt, vertex_brandt, BrandtMatrix, Level};
pub use edges::{edge_classes, Edge, EdgeSet};
pub use oracle::ss_oracle;
pub use vertices::{vertex_classes, VertexKind, VertexSet};

/// `floor((q+1)/12)`, less one when `q = 1 mod 12`.
pub fn genus(q: u64) -> u64 {
    let g = (q + 1) / 12;
    if q % 12 == 1 {
        g - 1
    } else {
        g
    }
}

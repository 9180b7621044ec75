//! Class numbers, optimal embeddings, and the Gross and Eisenstein vectors on
//! both graphs.

mod disc;
mod embed;
mod hecke;
mod vectors;

pub use disc::{class_number, discriminants_down_to, QuadDisc};
pub use embed::{optimal_embeddings, EmbeddingCounter};
pub use hecke::{gross_family, GrossFamily};
pub use vectors::{
    apply_wp, apply_wq_edges, apply_wq_vertices, degree_edges, degree_vertices, edge_embedding_table,
    eisenstein_modular, eisenstein_shimura, gross_modular, gross_shimura, in_cycle_space, monodromy_pairing_edges,
    monodromy_pairing_vertices, project_degree_zero, s_star, t_star, vertex_embedding_table, DivisorVector, PathVector,
    RatVector,
};

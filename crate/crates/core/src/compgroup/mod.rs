//! The quotient by `w_q`, its blow-up, component groups and Kirchhoff solves.

mod group;
mod multigraph;
mod report;

pub use group::{
    component_group, cycle_group, element_order_by_potentials, element_order_by_snf, k_law_solve,
    spanning_tree_count, ComponentGroup, PotentialAssignment,
};
pub use multigraph::{blow_up, dual_graph, quotient, quotient_by_wq, GraphEdge, MultiGraph, Node};
pub use report::{degree_check, lemma_general_check, DegreeReport, DegreeRow, ExceptionalTest, LemmaGeneralReport, PairRow};

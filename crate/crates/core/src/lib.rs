pub mod constructs;
pub mod games;
pub mod graphs;
pub mod hypergraph;
pub mod homology;
mod linalg;
pub mod minimodel;
pub mod variants;

//! Embedding dimension of products of graphs, and exact machinery for
//! mod-2 linking of spheres in `(σ⁰₃)^{*n}` and the Van Kampen obstruction.

pub mod complex;
pub mod geometry;
pub mod graph;
pub mod linking;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

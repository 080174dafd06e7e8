//! Exact combinatorial mutation of Fano polytopes and the cluster algebras
//! attached to them.

pub mod lattice;
pub mod polygon;
pub mod laurent;
pub mod mutation;
pub mod cluster;
pub mod bridge;
pub mod highdim;
pub mod io;
pub mod render;
pub mod cli;

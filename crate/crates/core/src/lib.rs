//! Exact classification and construction of static equilibria of weighted
//! convex polyhedra.

pub mod audit;
pub mod cli;
pub mod duality;
pub mod equilibria;
pub mod fixtures;
pub mod generator;
pub mod geometry;
pub mod hull;
pub mod json;
pub mod monostatic;
pub mod polyhedron;
pub mod sampling;
pub mod tipping;
pub mod vertex_links;

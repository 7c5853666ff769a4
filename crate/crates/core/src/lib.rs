//! Exact computation with cluster-algebra seeds and the matroids they induce.

pub mod cluster_matroid;
pub mod enumeration;
pub mod fixtures;
pub mod graph;
pub mod independence;
pub mod matroid;
pub mod poly;
pub mod polygon;
pub mod seed;

//! Exact computation of the connective eccentricity index (CEI) of trees,
//! construction of the extremal tree families for a given degree sequence or
//! branching-vertex count, and exhaustive verification of the extremality
//! statements at small vertex counts.
//!
//! All CEI values are exact rationals; floating point appears only in
//! display rendering.

pub mod constructions;
pub mod degree_seq;
pub mod enumeration;
pub mod rational;
pub mod tree;
pub mod verification;

pub use rational::Cei;
pub use tree::Tree;

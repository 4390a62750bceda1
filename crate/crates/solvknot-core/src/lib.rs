//! Exact-arithmetic verification engine for two families of torsion-free
//! solvable 2-knot groups: a flat (Hantzsche-Wendt) family and a Nil-manifold
//! family.
//!
//! All computations are over exact rationals; claims are certified by
//! explicit algebraic identities rather than numerics.

pub mod affine;
pub mod flat_aut;
pub mod flat_group;
pub mod flat_sub;
pub mod group_table;
pub mod imat;
pub mod invariants;
pub mod lattice;
pub mod nil_aut;
pub mod nil_group;
pub mod qmat;
pub mod rat;
pub mod words;

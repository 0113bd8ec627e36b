//! Instance generators, equivalence trials and manifest-driven batteries.

pub mod gadget;
pub mod gen;
pub mod manifest;
pub mod trial;

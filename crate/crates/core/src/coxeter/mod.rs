//! Finite Weyl groups from Dynkin data: enumeration, Bruhat order and
//! parabolic machinery.

mod diagram;
mod group;

pub use diagram::{DynkinDiagram, Subdiagram};
pub use group::{format_word, ElementId, Parabolic, WeylElement, WeylGroup, DEFAULT_ELEMENT_LIMIT};

//! Kazhdan-Lusztig cells of finite Weyl groups and the cactus-group action
//! on `W` by wall-crossing bijections.

pub mod cactus;
pub mod cells;
pub mod coxeter;
pub mod error;
pub mod export;
pub mod hecke;
pub mod laurent;
pub mod tableaux;

pub use cactus::{Alpha, CactusGenerator, CactusWord, CheckRecord, GroupData, WallCrossingTable};
pub use cells::{CellData, CellKind, CellPartition};
pub use coxeter::{DynkinDiagram, ElementId, Subdiagram, WeylGroup};
pub use hecke::{Basis, HeckeAlgebra, HeckeElement, KlTable};
pub use laurent::LaurentPoly;

//! Central extensions of Zinbiel algebras: exact linear algebra, structure
//! constants, second cohomology, the filiform catalog, and verification of
//! automorphism actions and orbit reductions.

pub mod algebra;
pub mod catalog;
pub mod cocycles;
pub mod extensions;
pub mod invariants;
pub mod linalg;
pub mod ring;
pub mod symbolic;

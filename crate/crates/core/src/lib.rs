pub mod group;
pub mod group_ring;
pub mod int;
pub mod lattice;
pub mod linalg;
pub mod matrix;
pub mod relation_module;
pub mod cohomology;
pub mod construction;
pub mod degeneracy;
pub mod report;
pub mod serial;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/linear-algebra.md")]
    mod linear_algebra {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    mod lattices {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    mod cohomology {}
    #[doc = include_str!("../../../book/src/construction.md")]
    mod construction {}
    #[doc = include_str!("../../../book/src/degeneracy.md")]
    mod degeneracy {}
    #[doc = include_str!("../../../book/src/reports.md")]
    mod reports {}
}

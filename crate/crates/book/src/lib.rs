//! The guide in `book/` with its listings compiled as doctests. One module
//! per chapter, so a failing listing names its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/root_data.md")]
pub mod root_data {}
#[doc = include_str!("../../../book/src/lattice_ring.md")]
pub mod lattice_ring {}
#[doc = include_str!("../../../book/src/characters.md")]
pub mod characters {}
#[doc = include_str!("../../../book/src/hecke.md")]
pub mod hecke {}
#[doc = include_str!("../../../book/src/whittaker.md")]
pub mod whittaker {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}

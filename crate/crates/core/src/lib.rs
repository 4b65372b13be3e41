//! Dimensions and typicality of representations of basic classical Lie
//! superalgebras, with an exhaustive search for typical representations of a
//! given dimension.

pub mod cli;
pub mod enumerate;
pub mod polytools;
pub mod rootdata;
pub mod scalar;
pub mod tables;
pub mod typicality;
pub mod weyldim;

mod linalg;
mod search;

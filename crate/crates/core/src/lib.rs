#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod analysis;
pub mod group;
pub mod matrix;
pub mod multilinear;
pub mod poly;
pub mod scalar;
pub mod similarity;
pub mod subspace;

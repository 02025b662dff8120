#![no_std]
extern crate alloc;

pub mod literal;
pub mod eval;
pub mod jet;
pub mod matrix;
pub mod ring;
pub mod rootsys;
pub mod sl2;
pub mod word;

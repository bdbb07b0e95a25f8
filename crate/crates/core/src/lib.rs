#![no_std]
#![doc = include_str!("../README.md")]

extern crate alloc;

pub mod asymptotics;
pub mod besov;
pub mod eigen;
pub mod exact;
pub mod invariants;
pub mod lie;
pub mod precision;
pub mod tree;
pub mod young;

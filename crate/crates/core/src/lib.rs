//! Exact computations for finite algebras.

pub mod algebra;
pub mod apolarity;
pub mod catalog;
pub mod commuting;
pub mod exactalg;
pub mod ideals;
pub mod poly;
pub mod profile;
pub mod random;
pub mod raydeg;

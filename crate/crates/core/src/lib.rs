//! Limit laws for longest monotone subsequences of random involutions.
//!
//! f64 math comes from `num_traits::Float` (backed by libm). Its imports are
//! marked `allow(unused_imports)` because any dependent that enables
//! num-traits/std makes the inherent f64 methods shadow them.
#![no_std]

extern crate alloc;

pub mod airy;
pub mod circle;
pub mod depoisson;
pub mod error;
pub mod lax;
pub mod montecarlo;
pub mod ode;
pub mod painleve2;
pub mod quad;
pub mod tableaux;

pub use error::{Error, Result};

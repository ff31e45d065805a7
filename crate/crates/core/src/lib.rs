#![no_std]
extern crate alloc;

pub mod caps;
pub mod error;
pub mod hall;
pub mod kan;
pub mod lie;
pub mod linear;
mod magnus;
pub mod matrix;
pub mod nilpotent;
pub mod quotient;
pub mod simplicial;

pub use caps::Caps;
pub use error::{Error, Result};

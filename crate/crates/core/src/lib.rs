#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod atlas;
pub mod cli;
pub mod error;
pub mod gas;
pub mod interaction;
pub mod io;
pub mod kernels;
pub mod riemann;
pub mod roots;
pub mod verify;
pub mod waves;

pub use error::{Error, Result};
pub use gas::{EntropyState, GasConstants, PrimitiveState, ReferenceConstants};

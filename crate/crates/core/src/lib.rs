//! Power control and relay selection for full-duplex amplify-and-forward
//! cognitive relay networks sharing spectrum with a primary user.

pub mod analysis;
pub mod error;
pub mod harness;
pub mod model;
pub mod phase;
pub mod solver;

pub use error::{Error, Result};

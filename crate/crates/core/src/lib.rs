//! Exact arithmetic in the Han–Monsky representation ring and Hilbert–Kunz
//! functions of hypersurfaces in positive characteristic.

pub mod cli;
pub mod config;
pub mod error;
pub mod formulas;
pub mod hk;
pub mod oracle;
pub mod prime;
pub mod rational;
pub mod report;
pub mod ring;
pub mod sigma;
pub mod verify;

pub use error::{Error, Result};
pub use prime::Prime;
pub use rational::Q;
pub use ring::{Basis, GammaElement};

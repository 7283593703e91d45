//! Harness, file formats and command line around [`critical_strip_core`].
//!
//! - [`config`]: suite configuration from TOML
//! - [`checks`]: the registered checks
//! - [`suite`]: the work pool that runs them
//! - [`report`]: check reports, JSON and CSV
//! - [`probe`]: blow-up profiles near zeros
//! - [`io`]: prime tables and CSV tables

pub mod checks;
pub mod config;
pub mod error;
pub mod io;
pub mod probe;
pub mod report;
pub mod suite;

pub use critical_strip_core as core;
pub use error::{HarnessError, Result};

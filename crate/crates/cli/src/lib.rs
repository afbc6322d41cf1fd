//! File formats, run manifests, parallel Monte Carlo and the command
//! implementations behind the `involis` binary.

pub mod args;
pub mod commands;
pub mod fmt;
pub mod grid_csv;
pub mod manifest;
pub mod mc;
pub mod recipes;

/// Environment variable that caps the decimal digits of the arbitrary
/// precision backend.
pub const DIGIT_CAP_ENV: &str = "INVOLIS_DIGIT_CAP";

//! Command-line and loopback-service front ends for `dimerlab`.

pub mod ops;
pub mod server;
pub mod wire;

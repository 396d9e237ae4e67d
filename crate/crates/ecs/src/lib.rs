//! Std companion to `ecs-core`: JSON and LaTeX output, an on-disk cache,
//! floating point oracles and the `ecs` command line.

pub mod assembly;
pub mod cache;
pub mod cli;
pub mod golden;
pub mod json;
pub mod latex;
pub mod oracle;
pub mod selftest;

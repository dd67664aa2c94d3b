//! Command-line front end for the pair-resource library: single-point
//! reports, parameter sweeps, the cos Ω surface, and the verification suite.

pub mod cli;
pub mod config;
pub mod error;
pub mod fig2;
pub mod report;
pub mod selftest;
pub mod svg;
pub mod sweep;

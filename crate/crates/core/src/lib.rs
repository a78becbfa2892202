pub mod arith;
pub mod cli;
pub mod config;
pub mod engine;
pub mod error;
pub mod valuation;
pub mod number_field;
pub mod spectrum;
pub mod uniformize;
pub mod suite;
pub mod wire;

pub mod error;
pub mod graph;
pub mod pauli;
pub mod basis;
pub mod encoder;
pub mod fermion;
pub mod analytics;
pub mod cli;

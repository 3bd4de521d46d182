pub mod catalog;
pub mod classify;
pub mod cli;
pub mod codazzi;
pub mod decomposition;
pub mod error;
pub mod families;
pub mod forms;
pub mod geometry;
pub mod liealg;
pub mod matrix;
pub mod numeric;
pub mod poly;
pub mod scalar;

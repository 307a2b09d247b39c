pub mod acceptance;
pub mod arith;
pub mod context;
pub mod error;
pub mod eval;
pub mod json;
pub mod sample;
pub mod theta;
pub mod tilt;
pub mod tr;
pub mod witt;

pub mod arith;
pub mod catalog;
pub mod engine;
pub mod jets;
pub mod special;
pub mod verify;

pub mod generate;
pub mod rng;
pub mod verify;

pub mod colored;
pub mod diagram;
pub mod invariants;
pub mod moves;
pub mod quadform;
pub mod ring;
pub mod skein;

pub mod cli;
pub mod exact;
pub mod families;
pub mod obstruction;
pub mod ring;
pub mod verlinde;

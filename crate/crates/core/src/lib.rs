pub mod group;
pub mod presentation;
pub mod families;
pub mod graph;
pub mod zagreb;
pub mod predictions;
pub mod cli;

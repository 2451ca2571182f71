pub mod error;
pub mod exactnum;
pub mod lattice;
pub mod monoid;
pub mod fock;
pub mod vertexops;
pub mod linalg;
pub mod zhu;
pub mod modrep;
pub mod config;
pub mod cli;

pub mod casebook;
pub mod cli;
pub mod coverbook;
pub mod delpezzo;
pub mod exactfield;
pub mod invariants;
pub mod linalg;
pub mod matgroup;
pub mod multipoly;
pub mod selftest;

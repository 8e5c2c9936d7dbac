pub mod cli;
pub mod combinatorics;
pub mod export;
pub mod field;
pub mod linalg;
pub mod symrep;
pub mod sergeev;
pub mod verify;

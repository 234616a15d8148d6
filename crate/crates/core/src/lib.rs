pub mod boxes;
pub mod cli;
pub mod cone;
pub mod error;
pub mod fan;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod ns;
pub mod orb;

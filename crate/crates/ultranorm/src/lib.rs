pub mod error;
pub mod linalg;
pub mod scalars;

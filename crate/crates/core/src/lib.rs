pub mod cli;
pub mod context;
pub mod curvature;
pub mod error;
pub mod hypersurface;
pub mod lie;
pub mod linalg;
pub mod models;
pub mod report;
pub mod rng;
pub mod roots;
pub mod structures;
pub mod tolerance;
pub mod verify;

pub use error::{Error, Result};
pub use tolerance::Tolerances;

pub mod cocycle;
pub mod cover;
pub mod cyclofield;
pub mod defect;
pub mod error;
pub mod linalg;
pub mod quasimorphism;
pub mod report;
pub mod symplectic;
pub mod words;

pub use cyclofield::{Cyc, CyclotomicNumber};
pub use error::{Error, Result};

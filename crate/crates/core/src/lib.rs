pub mod algebra;
pub mod divisor;
pub mod eds;
pub mod error;
pub mod families;
pub mod heights;
pub mod weierstrass;

pub use error::{EdsError, Result};

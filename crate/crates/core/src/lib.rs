pub mod audit;
pub mod definable;
pub mod enumerator;
pub mod error;
pub mod field;
pub mod formula;
pub mod interval;
pub mod poly;
pub mod units;

pub use error::{Error, Result};

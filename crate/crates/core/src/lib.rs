//! An executable model of the bicategory of spans of finite sets.

pub mod error;
pub mod finset;
pub mod span;
pub mod composite;
pub mod maps;
pub mod enumerate;
pub mod local;
pub mod report;
pub mod comonad;
pub mod axioms;
pub mod equiv;
pub mod direct_sum;
pub mod cli;
pub use error::{Error, Result};

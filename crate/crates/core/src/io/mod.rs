//! Text formats: the diagram language, JSON interchange and DOT rendering.

pub mod dot;
pub mod dsl;
pub mod json;

pub use dsl::{parse, Document, DslError, Expr, NamedCompound};
pub use json::JsonError;

//! JSON and DOT formats, the threaded search driver, and the reproduction
//! suite used by the `poset-queues` command-line tool.

pub mod document;
pub mod dot;
pub mod parallel;
pub mod verify;

pub use document::{parse_document, serialize_document, DocumentError, PosetDocument, SchemaError};
pub use dot::export_dot;

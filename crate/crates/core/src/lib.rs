//! Spans of finite groupoids, bisets, Mackey functors and Swan K-theory at the level of
//! isomorphism classes.

pub mod error;
pub mod group;
pub mod groupoid;
pub mod biset;
pub mod burnside;
pub mod gset;
pub mod symmon;
pub mod mackey;
pub mod doc;

pub use error::{Error, Result};

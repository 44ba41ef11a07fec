//! Differential characters of Drinfeld modules over a function-field local ring.
//!
//! The crate is organised bottom-up: finite fields and truncated power series
//! ([`field`], [`local`], [`laurent`]), additive polynomials ([`twisted`]),
//! π-typical Witt vectors over pluggable carriers ([`witt`]), jet spaces of a
//! Drinfeld module ([`jet`]) and finally characters, Ext groups and the
//! splitting data ([`characters`]). [`encoding`] holds the text format and
//! [`acceptance`] the shared acceptance runners.

pub mod acceptance;
pub mod certificate;
pub mod characters;
pub mod encoding;
pub mod error;
pub mod field;
pub mod jet;
pub mod laurent;
pub mod local;
pub mod twisted;
pub mod witt;

pub use error::{Error, Result};

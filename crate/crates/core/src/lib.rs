//! Braid groups three ways: as words in the Artin generators, as motions of
//! points in the plane, and through their action on free groups and free
//! quandles. The [`engine`] module ties these together into a virtual braid
//! box whose dowels slide in a T-shaped groove.
//!
//! Conventions shared by every module:
//!
//! - letter `+i` is the crossing where the strand at position `i` passes over
//!   the strand at position `i + 1`;
//! - the viewer sits at `y = -inf`, so the point with smaller `y` is in front
//!   (the over strand);
//! - words are read left to right, which is also increasing time in a motion.

pub mod braid;
pub mod diagram;
pub mod engine;
mod error;
pub mod free_group;
pub mod motion;
pub mod protocol;
pub mod quandle;
pub mod tpage;

pub use braid::{BraidWord, Permutation};
pub use error::{Error, Result};
pub use free_group::{EndoImages, FreeWord};
pub use motion::{CrossingEvent, Keyframe, Motion, Point, ValidationReport};
pub use quandle::QuandleElement;
pub use tpage::TPoint;

//! Unstable modules over the even Steenrod algebra, Lannes's T-functor and
//! the localization map for mod-p Chow rings of classifying spaces.

pub mod chow;
pub mod cli;
pub mod error;
pub mod fp;
pub mod groups;
pub mod lannes;
pub mod localization;
pub mod poly;
pub mod powers;
pub mod unstable;

pub use error::{Error, Result};

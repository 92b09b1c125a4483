//! File formats and command-line plumbing around `qfz-core`.
//!
//! * [`pgm`]: PGM (P2/P5) grayscale images.
//! * [`text`]: plain-text graphs, saliency maps, dendrograms and edge lists.
//! * [`verify`]: the property battery run by `qfz verify`.
//! * [`cli`]: the `qfz` subcommands.

pub mod cli;
pub mod pgm;
pub mod text;
pub mod verify;

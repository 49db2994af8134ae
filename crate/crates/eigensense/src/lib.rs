//! Std companion to `eigensense-core`: JSON table formats, CSV output, an
//! on-disk table cache, multi-threaded trial evaluation and the
//! `eigensense` command-line front-end.

pub mod cache;
pub mod cli;
pub mod csv;
pub mod formats;
pub mod parallel;

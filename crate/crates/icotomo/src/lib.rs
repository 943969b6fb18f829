//! IO, file formats, plotting and the command-line pipeline around the
//! exact tomography core.

#![forbid(unsafe_code)]

pub use icotomo_core as core;

pub mod cli;
pub mod formats;
pub mod pipeline;
pub mod plot;

//! File formats: observation text files, PGM rasters and CSV tables.

pub mod csv;
mod observations;
pub mod raster;

pub use observations::{format_observations, parse_observations};
pub use raster::{encode_pgm, quantize, render_raster, scalar_to_pgm, RasterStyle};

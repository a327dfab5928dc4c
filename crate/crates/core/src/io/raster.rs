//! Grayscale PGM (P5) rendering of belief fields and scalar maps.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::evidence::ValueSet;
use crate::mapping::{
    binary_information_map, conflict_map, entropy_map, information_map, BeliefField,
    ObservationSet, ScalarField, ValueField,
};

/// Gray level used for undetermined cells in plausible-value rasters.
pub const UNDETERMINED_GRAY: u8 = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RasterStyle {
    /// Binary domains only: `(m(v1) - m(v0) + 1) / 2`, observations drawn
    /// in pure black (`v1`) or white (`v0`).
    Belief,
    /// Entropy divided by `ln |S|`.
    Entropy,
    /// Information level; `2 |p(v0) - 1/2|` for binary domains.
    Info,
    /// Mass on the empty set (unnormalized fields).
    Conflict,
}

impl FromStr for RasterStyle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "belief" => Ok(Self::Belief),
            "entropy" => Ok(Self::Entropy),
            "info" => Ok(Self::Info),
            "conflict" => Ok(Self::Conflict),
            _ => Err(Error::InvalidParameter(format!(
                "unknown raster style {s:?}"
            ))),
        }
    }
}

/// `floor(v * 255 + 0.5)`, with `v` clamped to `[0, 1]`.
pub fn quantize(v: f64) -> u8 {
    let v = if v.is_nan() { 0.0 } else { v.clamp(0.0, 1.0) };
    (v * 255.0 + 0.5).floor() as u8
}

/// Binary PGM: `P5`, maxval 255, row-major from the top-left corner.
pub fn encode_pgm(width: usize, height: usize, pixels: &[u8]) -> Vec<u8> {
    assert_eq!(
        pixels.len(),
        width * height,
        "pixel count must match dimensions"
    );
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(pixels);
    out
}

/// Maps `[0, 1]` linearly onto `[0, 255]`.
pub fn scalar_to_pgm(field: &ScalarField) -> Vec<u8> {
    let pixels: Vec<u8> = field.values().iter().map(|&v| quantize(v)).collect();
    encode_pgm(field.width(), field.height(), &pixels)
}

/// Gray levels for the two-value belief rendering.
pub fn belief_pixels(field: &BeliefField, obs: &ObservationSet) -> Result<Vec<u8>> {
    let domain = field.domain();
    if domain.len() != 2 {
        return Err(Error::UnsupportedDomainSize(domain.len()));
    }
    let (v0, v1) = (ValueSet::singleton(0), ValueSet::singleton(1));
    let mut pixels: Vec<u8> = field
        .cells()
        .iter()
        .map(|c| match c.decision_mass() {
            Some(m) => quantize((m.mass(v1) - m.mass(v0) + 1.0) / 2.0),
            None => quantize(0.5),
        })
        .collect();
    for o in obs.range() {
        pixels[o.location.0] = if o.value == v1 { 0 } else { 255 };
    }
    Ok(pixels)
}

/// Per-value rendering of `Bel({v})`, for domains with more than two values.
pub fn value_belief_pixels(field: &BeliefField, value: usize) -> Result<Vec<u8>> {
    let set = field.domain().check(ValueSet::singleton(value))?;
    field
        .cells()
        .iter()
        .map(|c| {
            Ok(match c.decision_mass() {
                Some(m) => quantize(m.belief(set)?),
                None => 0,
            })
        })
        .collect()
}

/// Renders a belief field in the requested style.
pub fn render_raster(
    field: &BeliefField,
    obs: &ObservationSet,
    style: RasterStyle,
) -> Result<Vec<u8>> {
    let grid = field.grid();
    let scalar = match style {
        RasterStyle::Belief => {
            let pixels = belief_pixels(field, obs)?;
            return Ok(encode_pgm(grid.width(), grid.height(), &pixels));
        }
        RasterStyle::Entropy => {
            let max = (field.domain().len() as f64).ln();
            let h = entropy_map(field);
            let scaled = h.values().iter().map(|v| v / max).collect();
            ScalarField::new(h.width(), h.height(), scaled)?
        }
        RasterStyle::Info if field.domain().len() == 2 => binary_information_map(field)?,
        RasterStyle::Info => information_map(field),
        RasterStyle::Conflict => conflict_map(field)?,
    };
    Ok(scalar_to_pgm(&scalar))
}

/// Plausible-value raster: value `i` of `n` is drawn at gray
/// `255 - i * 255 / (n - 1)`, undetermined cells at [`UNDETERMINED_GRAY`].
pub fn plausible_to_pgm(field: &ValueField) -> Vec<u8> {
    let n = field.domain().len();
    let pixels: Vec<u8> = field
        .values()
        .iter()
        .map(|v| match v {
            Some(i) => quantize(1.0 - *i as f64 / (n - 1) as f64),
            None => UNDETERMINED_GRAY,
        })
        .collect();
    encode_pgm(field.width(), field.height(), &pixels)
}

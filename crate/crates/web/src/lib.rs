//! Browser demo: renders belief maps into RGBA buffers for a canvas, inspects
//! single cells and ranks next measurements.
//!
//! The exported functions take the observation text format used by the CLI
//! plus the model parameters, so the page stays stateless.

use wasm_bindgen::prelude::*;

use plausimap::evidence::ValueSet;
use plausimap::io::{quantize, raster};
use plausimap::mapping::{
    binary_information_map, conflict_map, entropy_map, information_map, plausible_map, BeliefField,
    ObservationSet, ScalarField,
};
use plausimap::prelude::*;

/// Model parameters shared by every call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub width: usize,
    pub height: usize,
    pub lambda: f64,
    pub lambda_mu: f64,
    pub interaction: bool,
    pub normalized: bool,
}

struct Scene {
    grid: Grid2d,
    obs: ObservationSet,
    decay: DecayModel,
    interaction: InteractionModel,
    cfg: CombinationConfig,
}

fn scene(obs_text: &str, p: &Params) -> Result<Scene, String> {
    let grid = Grid2d::new(p.width, p.height).map_err(|e| e.to_string())?;
    let obs = plausimap::io::parse_observations(obs_text, &grid).map_err(|e| e.to_string())?;
    let decay = DecayModel::uniform(obs.domain(), p.lambda).map_err(|e| e.to_string())?;
    let interaction = InteractionModel::new(p.lambda_mu).map_err(|e| e.to_string())?;
    let cfg = CombinationConfig::new(
        if p.normalized {
            CombinationMode::Normalized
        } else {
            CombinationMode::Unnormalized
        },
        if p.interaction {
            Discount::Interaction
        } else {
            Discount::Plain
        },
    );
    Ok(Scene {
        grid,
        obs,
        decay,
        interaction,
        cfg,
    })
}

impl Scene {
    fn field(&self) -> Result<BeliefField, String> {
        extrapolate_field(
            &self.grid,
            &self.obs,
            &self.decay,
            &self.interaction,
            self.cfg,
        )
        .map_err(|e| e.to_string())
    }
}

fn gray_to_rgba(pixels: &[u8]) -> Vec<u8> {
    pixels.iter().flat_map(|&g| [g, g, g, 255]).collect()
}

fn scalar_to_rgba(field: &ScalarField) -> Vec<u8> {
    field
        .values()
        .iter()
        .flat_map(|&v| {
            let g = quantize(v);
            [g, g, g, 255]
        })
        .collect()
}

/// Red for the second value, blue for the first, green for conflict. Black
/// means no information; purple means conflicting values.
fn color_rgba(field: &BeliefField, obs: &ObservationSet) -> Vec<u8> {
    let (v0, v1) = (ValueSet::singleton(0), ValueSet::singleton(1));
    let mut out: Vec<u8> = field
        .cells()
        .iter()
        .flat_map(|c| match c.mass() {
            Some(m) => [
                quantize(m.mass(v1)),
                quantize(m.conflict()),
                quantize(m.mass(v0)),
                255,
            ],
            None => [0, 255, 0, 255],
        })
        .collect();
    for o in obs.range() {
        let px = &mut out[o.location.0 * 4..o.location.0 * 4 + 3];
        px.copy_from_slice(if o.value == v1 {
            &[255, 255, 255]
        } else {
            &[0, 0, 0]
        });
    }
    out
}

/// RGBA pixels (row-major, 4 bytes per cell) for one of the styles
/// `belief`, `color`, `entropy`, `info`, `conflict`, `plausible`.
pub fn render_rgba(
    obs_text: &str,
    p: &Params,
    style: &str,
    threshold: f64,
) -> Result<Vec<u8>, String> {
    let s = scene(obs_text, p)?;
    let field = s.field()?;
    let binary = field.domain().len() == 2;
    let rgba = match style {
        "belief" if binary => {
            gray_to_rgba(&raster::belief_pixels(&field, &s.obs).map_err(|e| e.to_string())?)
        }
        "belief" => {
            gray_to_rgba(&raster::value_belief_pixels(&field, 0).map_err(|e| e.to_string())?)
        }
        "color" if binary => color_rgba(&field, &s.obs),
        "entropy" => {
            let max = (field.domain().len() as f64).ln();
            let h = entropy_map(&field);
            let scaled = h.values().iter().map(|v| v / max).collect();
            scalar_to_rgba(
                &ScalarField::new(h.width(), h.height(), scaled).map_err(|e| e.to_string())?,
            )
        }
        "info" if binary => {
            scalar_to_rgba(&binary_information_map(&field).map_err(|e| e.to_string())?)
        }
        "info" => scalar_to_rgba(&information_map(&field)),
        "conflict" => scalar_to_rgba(&conflict_map(&field).map_err(|e| e.to_string())?),
        "plausible" => {
            let values = plausible_map(&field, threshold).map_err(|e| e.to_string())?;
            let pgm = raster::plausible_to_pgm(&values);
            gray_to_rgba(&pgm[pgm.len() - p.width * p.height..])
        }
        other => return Err(format!("unsupported style {other:?}")),
    };
    Ok(rgba)
}

/// Human-readable masses, belief and plausibility at one cell.
pub fn describe_cell(obs_text: &str, p: &Params, x: usize, y: usize) -> Result<String, String> {
    let s = scene(obs_text, p)?;
    let focus = s
        .grid
        .point(x, y)
        .ok_or_else(|| format!("({x}, {y}) is outside the grid"))?;
    let domain = s.obs.domain().clone();
    let m = match combine_at_focus(&s.obs, focus, &s.grid, &s.decay, &s.interaction, s.cfg) {
        Ok(m) => m,
        Err(plausimap::Error::TotalConflict(_)) => {
            return Ok(format!("({x}, {y}): total conflict"))
        }
        Err(e) => return Err(e.to_string()),
    };
    let mut lines = vec![format!("cell ({x}, {y})")];
    for &(set, mass) in m.entries() {
        lines.push(format!("m({}) = {mass:.4}", domain.format_set(set)));
    }
    for (i, label) in domain.labels().iter().enumerate() {
        let v = ValueSet::singleton(i);
        let bel = m.belief(v).map_err(|e| e.to_string())?;
        let pl = m.plausibility(v).map_err(|e| e.to_string())?;
        lines.push(format!("Bel({label}) = {bel:.4}  Pl({label}) = {pl:.4}"));
    }
    if let Ok(n) = m.normalize() {
        if let Ok(prob) = n.pignistic() {
            lines.push(format!("entropy = {:.4} nats", prob.entropy()));
        }
    }
    Ok(lines.join("\n"))
}

/// Top `top` cells by expected entropy loss, as `x,y,loss` lines.
pub fn suggest_csv(
    obs_text: &str,
    p: &Params,
    top: usize,
    stride: usize,
) -> Result<String, String> {
    let s = scene(obs_text, p)?;
    let ranked = suggest_next_measurement(
        &s.grid,
        &s.obs,
        &s.decay,
        &s.interaction,
        s.cfg,
        SuggestOptions { top, stride },
    )
    .map_err(|e| e.to_string())?;
    Ok(plausimap::io::csv::suggestions_csv(&ranked))
}

fn params(
    width: usize,
    height: usize,
    lambda: f64,
    lambda_mu: f64,
    interaction: bool,
    normalized: bool,
) -> Params {
    Params {
        width,
        height,
        lambda,
        lambda_mu,
        interaction,
        normalized,
    }
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn render_field(
    obs_text: &str,
    width: usize,
    height: usize,
    lambda: f64,
    lambda_mu: f64,
    interaction: bool,
    normalized: bool,
    style: &str,
    threshold: f64,
) -> Result<Vec<u8>, JsValue> {
    let p = params(width, height, lambda, lambda_mu, interaction, normalized);
    render_rgba(obs_text, &p, style, threshold).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn inspect_cell(
    obs_text: &str,
    width: usize,
    height: usize,
    lambda: f64,
    lambda_mu: f64,
    interaction: bool,
    normalized: bool,
    x: usize,
    y: usize,
) -> Result<String, JsValue> {
    let p = params(width, height, lambda, lambda_mu, interaction, normalized);
    describe_cell(obs_text, &p, x, y).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn suggest(
    obs_text: &str,
    width: usize,
    height: usize,
    lambda: f64,
    lambda_mu: f64,
    interaction: bool,
    top: usize,
    stride: usize,
) -> Result<String, JsValue> {
    let p = params(width, height, lambda, lambda_mu, interaction, true);
    suggest_csv(obs_text, &p, top, stride).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const OBS: &str = "values: white,black\n2,2,black\n9,9,white\n";

    fn p() -> Params {
        params(12, 12, 3.0, 3.0, true, true)
    }

    #[test]
    fn renders_every_style() {
        for style in ["belief", "color", "entropy", "info", "plausible"] {
            let rgba = render_rgba(OBS, &p(), style, 0.1).unwrap();
            assert_eq!(rgba.len(), 12 * 12 * 4, "{style}");
        }
        let unnorm = Params {
            normalized: false,
            ..p()
        };
        assert_eq!(
            render_rgba(OBS, &unnorm, "conflict", 0.1).unwrap().len(),
            576
        );
        assert!(render_rgba(OBS, &p(), "conflict", 0.1).is_err());
        assert!(render_rgba(OBS, &p(), "sepia", 0.1).is_err());
    }

    #[test]
    fn observation_pixels() {
        let rgba = render_rgba(OBS, &p(), "belief", 0.1).unwrap();
        let at = |x: usize, y: usize| rgba[(y * 12 + x) * 4];
        assert_eq!(at(2, 2), 0);
        assert_eq!(at(9, 9), 255);
        assert!(at(3, 2) > 200);
    }

    #[test]
    fn inspect_and_suggest() {
        let text = describe_cell(OBS, &p(), 2, 2).unwrap();
        assert!(text.contains("m(black) = 1.0000"), "{text}");
        assert!(describe_cell(OBS, &p(), 40, 2).is_err());
        let csv = suggest_csv(OBS, &params(8, 8, 3.0, 3.0, true, true), 3, 1);
        assert!(csv.is_err(), "observation outside the 8x8 grid");
        let csv = suggest_csv(OBS, &p(), 3, 2).unwrap();
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn parse_errors_surface() {
        assert!(render_rgba("2,2,black\n", &p(), "belief", 0.1).is_err());
    }
}

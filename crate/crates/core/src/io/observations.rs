//! Line-oriented observation files.
//!
//! ```text
//! # comment
//! values: white,black
//! 10,12,black
//! 3,4,white
//! ```
//!
//! Each row is `x,y,value[|value...]`. Set-valued rows are allowed as long as
//! they do not cover the whole domain.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::evidence::{ValueDomain, ValueSet};
use crate::mapping::{Grid2d, Observation, ObservationSet};

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

fn parse_coord(field: &str, axis: &str, limit: usize, line: usize) -> Result<usize> {
    let v: i64 = field.trim().parse().map_err(|_| {
        parse_err(
            line,
            format!("invalid {axis} coordinate {:?}", field.trim()),
        )
    })?;
    if v < 0 || v as u64 >= limit as u64 {
        return Err(parse_err(
            line,
            format!("{axis} coordinate {v} outside 0..{limit}"),
        ));
    }
    Ok(v as usize)
}

/// Parses an observation document for a given grid.
pub fn parse_observations(document: &str, grid: &Grid2d) -> Result<ObservationSet> {
    let mut set: Option<ObservationSet> = None;
    for (idx, raw) in document.lines().enumerate() {
        let line = idx + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        if let Some(rest) = text.strip_prefix("values:") {
            if set.is_some() {
                return Err(parse_err(line, "duplicate values header"));
            }
            let labels: Vec<&str> = rest.split(',').map(str::trim).collect();
            let domain = ValueDomain::new(labels).map_err(|e| parse_err(line, e.to_string()))?;
            set = Some(ObservationSet::new(&domain));
            continue;
        }
        let set = set
            .as_mut()
            .ok_or_else(|| parse_err(line, "expected `values:` header before observations"))?;

        let fields: Vec<&str> = text.split(',').collect();
        if fields.len() != 3 {
            return Err(parse_err(
                line,
                format!("expected `x,y,value`, found {} fields", fields.len()),
            ));
        }
        let x = parse_coord(fields[0], "x", grid.width(), line)?;
        let y = parse_coord(fields[1], "y", grid.height(), line)?;
        let domain = set.domain().clone();
        let mut value = ValueSet::EMPTY;
        for label in fields[2].split('|').map(str::trim) {
            if label.is_empty() {
                return Err(parse_err(line, "empty value"));
            }
            let v = domain
                .singleton(label)
                .map_err(|_| Error::UnknownObservationValue {
                    line,
                    value: label.to_owned(),
                })?;
            value = value.union(v);
        }
        if value == domain.full() {
            return Err(parse_err(
                line,
                "trivial observation: the value set covers the whole domain",
            ));
        }
        let location = grid.point(x, y).expect("coordinates checked");
        set.push(Observation::new(location, value))?;
    }
    set.ok_or_else(|| parse_err(document.lines().count().max(1), "missing `values:` header"))
}

/// Writes observations back in the text format accepted by
/// [`parse_observations`].
pub fn format_observations(obs: &ObservationSet, grid: &Grid2d) -> String {
    let domain = obs.domain();
    let mut out = format!("values: {}\n", domain.labels().join(","));
    for o in obs.observations() {
        let (x, y) = grid.coords(o.location);
        let _ = writeln!(out, "{x},{y},{}", domain.format_set(o.value));
    }
    out
}

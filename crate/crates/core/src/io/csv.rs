//! CSV emitters. Header row, UTF-8, `\n` line endings.

use std::fmt::Write as _;

use crate::evidence::{MassAssignment, ValueDomain, ValueSet};
use crate::mapping::{BeliefField, CellBelief, ScalarField, Suggestion, ValueField};

/// Domains up to this size get one column per subset.
pub const FULL_ENUMERATION_LIMIT: usize = 4;

const MICRO: u64 = 1_000_000;

/// Rounds nonnegative masses to multiples of 1e-6 so that they add up to
/// exactly 1 (largest-remainder rounding). Returned in millionths.
pub fn round_masses(masses: &[f64]) -> Vec<u64> {
    let scaled: Vec<f64> = masses.iter().map(|m| m.max(0.0) * MICRO as f64).collect();
    let mut units: Vec<u64> = scaled.iter().map(|s| s.floor() as u64).collect();
    let assigned: u64 = units.iter().sum();
    let mut order: Vec<usize> = (0..masses.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = scaled[a] - scaled[a].floor();
        let rb = scaled[b] - scaled[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    if assigned <= MICRO {
        for &i in order.iter().cycle().take((MICRO - assigned) as usize) {
            units[i] += 1;
        }
    } else {
        let mut excess = assigned - MICRO;
        for &i in order.iter().rev().cycle() {
            if excess == 0 {
                break;
            }
            if units[i] > 0 {
                units[i] -= 1;
                excess -= 1;
            }
        }
    }
    units
}

fn micro(units: u64) -> String {
    format!("{}.{:06}", units / MICRO, units % MICRO)
}

/// Column layout for mass output.
enum Columns {
    /// Every subset, empty set first.
    Full(Vec<ValueSet>),
    /// Empty set, singletons, whole frame, and the remaining mass.
    Compact,
}

fn columns(domain: &ValueDomain) -> Columns {
    if domain.len() <= FULL_ENUMERATION_LIMIT {
        Columns::Full(domain.subsets().collect())
    } else {
        Columns::Compact
    }
}

fn header(domain: &ValueDomain, cols: &Columns) -> String {
    let mut names = vec!["x".to_owned(), "y".to_owned()];
    match cols {
        Columns::Full(sets) => {
            for &s in sets {
                names.push(if s.is_empty() {
                    "m_empty".to_owned()
                } else if s == domain.full() {
                    "m_S".to_owned()
                } else {
                    format!("m_{}", domain.format_set(s))
                });
            }
        }
        Columns::Compact => {
            names.push("m_empty".to_owned());
            names.extend(domain.labels().iter().map(|l| format!("m_{l}")));
            names.push("m_S".to_owned());
            names.push("m_other".to_owned());
        }
    }
    names.join(",")
}

fn row_masses(m: &MassAssignment, cols: &Columns) -> Vec<f64> {
    match cols {
        Columns::Full(sets) => sets.iter().map(|&s| m.mass(s)).collect(),
        Columns::Compact => {
            let d = m.domain();
            let mut row = vec![m.conflict()];
            row.extend((0..d.len()).map(|i| m.mass(ValueSet::singleton(i))));
            row.push(m.mass(d.full()));
            let listed: f64 = row.iter().sum();
            row.push((m.total() - listed).max(0.0));
            row
        }
    }
}

/// Per-cell masses. Totally conflicting cells are written with all their
/// mass on the empty set.
pub fn mass_csv(field: &BeliefField) -> String {
    let domain = field.domain();
    let cols = columns(domain);
    let mut out = header(domain, &cols);
    out.push('\n');
    let conflict = MassAssignment::new(domain, [(ValueSet::EMPTY, 1.0)]).expect("valid");
    for (i, cell) in field.cells().iter().enumerate() {
        let m = match cell {
            CellBelief::Mass(m) => m,
            CellBelief::TotalConflict => &conflict,
        };
        let (x, y) = (i % field.grid().width(), i / field.grid().width());
        let _ = write!(out, "{x},{y}");
        for u in round_masses(&row_masses(m, &cols)) {
            out.push(',');
            out.push_str(&micro(u));
        }
        out.push('\n');
    }
    out
}

/// `x,y,value` for a scalar map.
pub fn scalar_csv(field: &ScalarField) -> String {
    let mut out = String::from("x,y,value\n");
    for y in 0..field.height() {
        for x in 0..field.width() {
            let _ = writeln!(out, "{x},{y},{:.6}", field.get(x, y));
        }
    }
    out
}

/// `x,y,value` with `-` for undetermined cells.
pub fn value_csv(field: &ValueField) -> String {
    let mut out = String::from("x,y,value\n");
    for y in 0..field.height() {
        for x in 0..field.width() {
            let _ = writeln!(out, "{x},{y},{}", field.label(x, y).unwrap_or("-"));
        }
    }
    out
}

/// `x,y,expected_loss`, in the order given.
pub fn suggestions_csv(suggestions: &[Suggestion]) -> String {
    let mut out = String::from("x,y,expected_loss\n");
    for s in suggestions {
        let _ = writeln!(out, "{},{},{:.9}", s.x, s.y, s.expected_loss);
    }
    out
}

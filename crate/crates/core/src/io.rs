//! Plain-text instance files.
//!
//! Point files hold one point per line as `x y`, each field an integer or a
//! reduced fraction `a/b`. Line files hold one canonical line per line as
//! `A B C`, meaning `Ax + By + C = 0`. In both, `#` starts a comment and blank
//! lines are skipped.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::ParseError;
use crate::geometry::{LineKey, LineSet, Point, PointSet};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Points(PointSet),
    Lines(LineSet),
}

impl Instance {
    pub fn len(&self) -> usize {
        match self {
            Instance::Points(s) => s.len(),
            Instance::Lines(l) => l.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Points(_) => "points",
            Instance::Lines(_) => "lines",
        }
    }
}

/// Non-empty records as `(1-based line number, fields)`.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split_once('#').map_or(raw, |(b, _)| b);
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

pub fn parse_points(text: &str) -> Result<PointSet, ParseError> {
    let mut points = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (line, fields) in records(text) {
        let [x, y] = fields[..] else {
            return Err(syntax(
                line,
                format!("expected 2 fields, found {}", fields.len()),
            ));
        };
        let num = |f: &str| {
            f.parse::<Rational>()
                .map_err(|e| syntax(line, e.to_string()))
        };
        let p = Point::new(num(x)?, num(y)?);
        if !seen.insert(p.clone()) {
            return Err(syntax(line, format!("duplicate point {p}")));
        }
        points.push(p);
    }
    Ok(PointSet::new(points).expect("duplicates rejected above"))
}

pub fn parse_lines(text: &str) -> Result<LineSet, ParseError> {
    let mut lines = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (line, fields) in records(text) {
        let [a, b, c] = fields[..] else {
            return Err(syntax(
                line,
                format!("expected 3 fields, found {}", fields.len()),
            ));
        };
        let int = |f: &str| {
            f.parse::<BigInt>()
                .map_err(|_| syntax(line, format!("not an integer: {f:?}")))
        };
        let coeffs = [int(a)?, int(b)?, int(c)?];
        let key = LineKey::new(coeffs[0].clone(), coeffs[1].clone(), coeffs[2].clone())
            .map_err(|e| syntax(line, e.to_string()))?;
        if key.coefficients() != coeffs {
            return Err(syntax(
                line,
                format!("line {a} {b} {c} is not canonical, expected {key}"),
            ));
        }
        if !seen.insert(key.clone()) {
            return Err(syntax(line, format!("duplicate line {key}")));
        }
        lines.push(key);
    }
    Ok(LineSet::new(lines).expect("duplicates rejected above"))
}

/// Infers the kind from the field count of the first record.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    match records(text).next() {
        None => Err(ParseError::UnknownKind),
        Some((_, f)) if f.len() == 3 => parse_lines(text).map(Instance::Lines),
        Some((line, f)) if f.len() != 2 => Err(syntax(
            line,
            format!("expected 2 or 3 fields, found {}", f.len()),
        )),
        Some(_) => parse_points(text).map(Instance::Points),
    }
}

pub fn emit_points(s: &PointSet) -> String {
    let mut out = String::new();
    for p in s {
        let _ = writeln!(out, "{} {}", p.x, p.y);
    }
    out
}

pub fn emit_lines(l: &LineSet) -> String {
    let mut out = String::new();
    for k in l.iter() {
        let _ = writeln!(out, "{k}");
    }
    out
}

pub fn emit_instance(i: &Instance) -> String {
    match i {
        Instance::Points(s) => emit_points(s),
        Instance::Lines(l) => emit_lines(l),
    }
}

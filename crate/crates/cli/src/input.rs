//! Reading polynomials from JSON files or inline coefficient lists.

use std::fmt;
use std::path::Path;

use qzeros::poly::{parse_coefficient_list, PolyJson};
use qzeros::{CoefficientSide, QPolynomial, Quaternion};

#[derive(Debug, Clone, PartialEq)]
pub struct InputError {
    pub location: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.location.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.location, self.message)
        }
    }
}

impl std::error::Error for InputError {}

fn input_error(location: impl Into<String>, message: impl Into<String>) -> InputError {
    InputError {
        location: location.into(),
        message: message.into(),
    }
}

/// A parsed polynomial and any warnings raised while reading it.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub poly: QPolynomial,
    pub warnings: Vec<String>,
}

/// `source` is a path to a JSON file, `-` for standard input, inline JSON,
/// or an inline list `w,x,y,z;w,x,y,z;…` in ascending powers. Inline entries
/// may also be quaternion literals such as `1-2i+k`. `side` overrides the
/// side stored in JSON and defaults inline lists to right.
pub fn parse_poly(source: &str, side: Option<CoefficientSide>) -> Result<Parsed, InputError> {
    let trimmed = source.trim_start();
    if source == "-" {
        let mut text = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut text)
            .map_err(|e| input_error("<stdin>", e.to_string()))?;
        return parse_text(&text, side, "<stdin>");
    }
    if trimmed.starts_with('{') {
        return parse_json(source, side, "<inline>");
    }
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| input_error(source, e.to_string()))?;
        return parse_text(&text, side, source);
    }
    if source.ends_with(".json") {
        return Err(input_error(source, "no such file"));
    }
    parse_inline(source, side.unwrap_or(CoefficientSide::Right))
}

fn parse_text(text: &str, side: Option<CoefficientSide>, origin: &str) -> Result<Parsed, InputError> {
    if text.trim_start().starts_with('{') {
        parse_json(text, side, origin)
    } else {
        parse_inline(text.trim(), side.unwrap_or(CoefficientSide::Right))
            .map_err(|e| input_error(format!("{origin}, {}", e.location), e.message))
    }
}

fn parse_json(text: &str, side: Option<CoefficientSide>, origin: &str) -> Result<Parsed, InputError> {
    let raw: PolyJson = serde_json::from_str(text)
        .map_err(|e| input_error(format!("{origin}, line {}, column {}", e.line(), e.column()), e.to_string()))?;
    let mut warnings = Vec::new();
    let side = match side {
        Some(s) if s != raw.side => {
            warnings.push(format!("--side {s} overrides side \"{}\" from the input", raw.side));
            s
        }
        _ => raw.side,
    };
    finish(raw.coeffs, side, warnings).map_err(|m| input_error(origin, m))
}

fn parse_inline(text: &str, side: CoefficientSide) -> Result<Parsed, InputError> {
    let coeffs = parse_coefficient_list(text).map_err(|e| match e {
        qzeros::Error::Parse { position, message } => input_error(format!("position {}", position + 1), message),
        other => input_error("", other.to_string()),
    })?;
    finish(coeffs, side, Vec::new()).map_err(|m| input_error("", m))
}

fn finish(coeffs: Vec<Quaternion>, side: CoefficientSide, mut warnings: Vec<String>) -> Result<Parsed, String> {
    if let Some(bad) = coeffs.iter().position(|c| !c.to_array().iter().all(|v| v.is_finite())) {
        return Err(format!("coefficient {bad} is not finite"));
    }
    let lead = coeffs.last().copied();
    let poly = QPolynomial::monic_normalize(coeffs, side).map_err(|e| e.to_string())?;
    if let Some(lead) = lead {
        if lead != Quaternion::ONE {
            warnings.push(format!("leading coefficient {lead} is not 1; normalized to {poly}"));
        }
    }
    Ok(Parsed { poly, warnings })
}

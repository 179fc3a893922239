use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::parser::{parse_complex, parse_expression, ParseError};
use crate::ideal::RadicalMode;
use crate::kohn::{KohnCaps, KohnError, ProblemSpec};
use crate::poly::Point;

pub const DEFAULT_PERSISTENCE_RADIUS: &str = "1/10";

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid problem file at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("field `{field}` at line {line}, column {column}: {message}")]
    Expression { field: String, line: usize, column: usize, message: String },
    #[error("invalid problem: {0}")]
    Invalid(#[from] KohnError),
}

/// A coordinate or scalar in a problem file: either a literal string such as
/// `"1/2-i"` or a plain JSON integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Int(i64),
    Text(String),
}

impl Literal {
    fn text(&self) -> String {
        match self {
            Literal::Int(k) => k.to_string(),
            Literal::Text(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsOverride {
    pub max_steps: Option<usize>,
    pub tuple_cap: Option<usize>,
    pub closure_degree: Option<u32>,
    pub closure_rounds: Option<usize>,
    pub gram_size: Option<usize>,
    pub power_cap: Option<u32>,
    pub groebner_work: Option<usize>,
    pub radical_work: Option<usize>,
}

impl CapsOverride {
    pub fn apply(&self, caps: &mut KohnCaps) {
        if let Some(v) = self.max_steps {
            caps.max_steps = v;
        }
        if let Some(v) = self.tuple_cap {
            caps.tuple_cap = v;
        }
        if let Some(v) = self.closure_degree {
            caps.closure.candidate_degree = v;
        }
        if let Some(v) = self.closure_rounds {
            caps.closure.max_rounds = v;
        }
        if let Some(v) = self.gram_size {
            caps.closure.gram_size = v;
        }
        if let Some(v) = self.power_cap {
            caps.closure.power_cap = v;
        }
        if let Some(v) = self.groebner_work {
            caps.closure.groebner_work = v;
        }
        if let Some(v) = self.radical_work {
            caps.closure.radical_work = v;
        }
    }
}

/// The JSON problem file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub q: usize,
    pub r: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_point: Option<Vec<Literal>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sample_points: Vec<Vec<Literal>>,
    #[serde(default)]
    pub caps: CapsOverride,
    #[serde(default)]
    pub radical_mode: RadicalMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub persistence_radius: Option<String>,
}

/// Where `needle` first appears as a JSON string in `src`, as (line, column)
/// of its first character, 1-based.
fn locate(src: &str, needle: &str) -> Option<(usize, usize)> {
    let quoted = serde_json::to_string(needle).ok()?;
    let offset = src.find(&quoted)? + 1;
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Some((line, column))
}

impl ProblemFile {
    pub fn from_json(src: &str) -> Result<Self, InputError> {
        let file: ProblemFile = serde_json::from_str(src).map_err(|e| InputError::Json {
            line: e.line(),
            column: e.column(),
            message: strip_position(&e),
        })?;
        // surface expression errors with positions in the file
        file.to_spec_located(Some(src))?;
        Ok(file)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self, InputError> {
        let src = std::fs::read_to_string(path)
            .map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&src)
    }

    pub fn radius(&self) -> Result<BigRational, InputError> {
        let text = self.persistence_radius.as_deref().unwrap_or(DEFAULT_PERSISTENCE_RADIUS);
        let value = parse_complex(text).map_err(|e| self.expr_error("persistence_radius", text, e, None))?;
        if !value.is_real() || value.re() <= &num_traits::Zero::zero() {
            return Err(self.expr_error(
                "persistence_radius",
                text,
                ParseError { message: "must be a positive rational".into(), column: 1 },
                None,
            ));
        }
        Ok(value.re().clone())
    }

    pub fn to_spec(&self) -> Result<ProblemSpec, InputError> {
        self.to_spec_located(None)
    }

    fn expr_error(&self, field: &str, text: &str, e: ParseError, src: Option<&str>) -> InputError {
        let (line, column) = match src.and_then(|s| locate(s, text)) {
            Some((line, col)) => (line, col + e.column - 1),
            None => (1, e.column),
        };
        InputError::Expression { field: field.to_string(), line, column, message: e.message }
    }

    fn point(&self, field: &str, coords: &[Literal], src: Option<&str>) -> Result<Point, InputError> {
        let values = coords
            .iter()
            .map(|c| {
                let text = c.text();
                parse_complex(&text).map_err(|e| self.expr_error(field, &text, e, src))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Point::new(values))
    }

    fn to_spec_located(&self, src: Option<&str>) -> Result<ProblemSpec, InputError> {
        let r = parse_expression(&self.r, self.n).map_err(|e| self.expr_error("r", &self.r, e, src))?;
        let base_point = match &self.base_point {
            Some(coords) => self.point("base_point", coords, src)?,
            None => Point::origin(self.n),
        };
        let sample_points = self
            .sample_points
            .iter()
            .enumerate()
            .map(|(k, c)| self.point(&format!("sample_points[{k}]"), c, src))
            .collect::<Result<Vec<_>, _>>()?;
        let mut caps = KohnCaps::default();
        self.caps.apply(&mut caps);
        Ok(ProblemSpec::new(self.q, r)
            .with_base_point(base_point)
            .with_samples(sample_points)
            .with_caps(caps)
            .with_mode(self.radical_mode))
    }
}

fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file() {
        let f = ProblemFile::from_json(r#"{"n": 2, "q": 1, "r": "2*Re(z2) + abs2(z1)"}"#).unwrap();
        let spec = f.to_spec().unwrap();
        assert_eq!(spec.base_point, Point::origin(2));
        assert_eq!(spec.radical_mode, RadicalMode::Full);
        assert_eq!(spec.caps, KohnCaps::default());
        assert_eq!(f.radius().unwrap(), BigRational::new(1.into(), 10.into()));
    }

    #[test]
    fn overrides_and_points() {
        let src = r#"{
            "n": 2, "q": 1, "r": "2*Re(z2) + abs2(z1)^2",
            "base_point": [1, "-1/2"],
            "sample_points": [["1", "-1/2"]],
            "caps": {"max_steps": 3, "tuple_cap": 5},
            "radical_mode": "sos-only"
        }"#;
        let spec = ProblemFile::from_json(src).unwrap().to_spec().unwrap();
        assert_eq!(spec.caps.max_steps, 3);
        assert_eq!(spec.caps.tuple_cap, 5);
        assert_eq!(spec.radical_mode, RadicalMode::SosOnly);
        assert_eq!(spec.base_point.to_string(), "(1, -1/2)");
    }

    #[test]
    fn json_errors_have_positions() {
        let err = ProblemFile::from_json("{\n  \"n\": 2,\n  \"q\": }").unwrap_err();
        assert!(matches!(err, InputError::Json { line: 3, .. }), "{err}");
        let err = ProblemFile::from_json(r#"{"n": 2, "q": 1, "r": "z1", "colour": 3}"#).unwrap_err();
        assert!(err.to_string().contains("colour"));
    }

    #[test]
    fn expression_errors_point_into_the_file() {
        let src = "{\n  \"n\": 2, \"q\": 1,\n  \"r\": \"z1 + z3\"\n}";
        match ProblemFile::from_json(src).unwrap_err() {
            InputError::Expression { field, line, column, message } => {
                assert_eq!(field, "r");
                assert_eq!(line, 3);
                // `z3` sits at column 14 of the third line
                assert_eq!(column, 14);
                assert!(message.contains("index exceeds ambient dimension"));
            }
            other => panic!("unexpected {other}"),
        }
    }
}

//! Manifold models: a list of odd generator degrees for an exterior
//! rational cohomology ring, plus the built-in catalog used by the CLI.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};

/// Largest supported number of exterior generators. Exterior subsets are
/// stored as bitmasks.
pub const MAX_GENERATORS: usize = 64;

/// A closed manifold whose rational cohomology is exterior on odd generators
/// of the given degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelSpec {
    name: String,
    generator_degrees: Vec<i64>,
    dimension: i64,
}

#[derive(Deserialize)]
struct RawModel {
    name: String,
    generator_degrees: Vec<i64>,
}

impl ModelSpec {
    pub fn new(name: impl Into<String>, generator_degrees: Vec<i64>) -> Result<Self> {
        let name = name.into();
        if generator_degrees.is_empty() {
            return Err(AlgebraError::InvalidModel(format!(
                "model `{name}` needs at least one generator"
            )));
        }
        if generator_degrees.len() > MAX_GENERATORS {
            return Err(AlgebraError::InvalidModel(format!(
                "model `{name}` has {} generators; at most {MAX_GENERATORS} are supported",
                generator_degrees.len()
            )));
        }
        for (i, &d) in generator_degrees.iter().enumerate() {
            if d < 1 {
                return Err(AlgebraError::InvalidModel(format!(
                    "generator_degrees[{i}] = {d} is not positive; degrees must be odd and >= 1"
                )));
            }
            if d % 2 == 0 {
                return Err(AlgebraError::InvalidModel(format!(
                    "generator_degrees[{i}] = {d} is even; degrees must be odd and >= 1"
                )));
            }
        }
        let dimension = generator_degrees.iter().sum();
        Ok(ModelSpec {
            name,
            generator_degrees,
            dimension,
        })
    }

    /// Parses the JSON model format `{"name": ..., "generator_degrees": [...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawModel = serde_json::from_str(text)
            .map_err(|e| AlgebraError::InvalidModel(format!("malformed model JSON: {e}")))?;
        ModelSpec::new(raw.name, raw.generator_degrees)
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({
            "name": self.name,
            "generator_degrees": self.generator_degrees,
        })
        .to_string()
    }

    /// The odd sphere `S^n`.
    pub fn sphere(n: i64) -> Result<Self> {
        ModelSpec::new(format!("s{n}"), vec![n])
    }

    /// `SU(n)`, rationally exterior on generators of degrees 3, 5, ..., 2n-1.
    pub fn special_unitary(n: i64) -> Result<Self> {
        if n < 2 {
            return Err(AlgebraError::InvalidModel(format!(
                "su{n}: rank must be at least 2"
            )));
        }
        ModelSpec::new(format!("su{n}"), (2..=n).map(|k| 2 * k - 1).collect())
    }

    /// A product of odd spheres with the given degrees.
    pub fn exterior(degrees: &[i64]) -> Result<Self> {
        let label = degrees
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",");
        ModelSpec::new(format!("exterior:{label}"), degrees.to_vec())
    }

    /// Resolves a built-in name (`s3`, `su4`, `exterior:3,5,7`) or, failing
    /// that, a path to a JSON model file.
    pub fn resolve(spec: &str) -> Result<Self> {
        if let Some(model) = Self::builtin(spec)? {
            return Ok(model);
        }
        let path = Path::new(spec);
        if path.exists() {
            let text = std::fs::read_to_string(path).map_err(|e| {
                AlgebraError::InvalidModel(format!("cannot read model file {spec}: {e}"))
            })?;
            return Self::from_json(&text);
        }
        Err(AlgebraError::InvalidModel(format!(
            "unknown model `{spec}` (try `s3`, `su3`, `exterior:3,5` or a JSON file)"
        )))
    }

    fn builtin(spec: &str) -> Result<Option<Self>> {
        if let Some(rest) = spec.strip_prefix("exterior:") {
            let degrees = rest
                .split(',')
                .map(|t| {
                    t.trim().parse::<i64>().map_err(|_| {
                        AlgebraError::InvalidModel(format!(
                            "`{t}` in `{spec}` is not an integer degree"
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            return Self::exterior(&degrees).map(Some);
        }
        if let Some(rest) = spec.strip_prefix("su") {
            if let Ok(n) = rest.parse::<i64>() {
                return Self::special_unitary(n).map(Some);
            }
        }
        if let Some(rest) = spec.strip_prefix('s') {
            if let Ok(n) = rest.parse::<i64>() {
                return Self::sphere(n).map(Some);
            }
        }
        Ok(None)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generator_degrees(&self) -> &[i64] {
        &self.generator_degrees
    }

    /// Number of exterior generators, `r`.
    pub fn rank(&self) -> usize {
        self.generator_degrees.len()
    }

    /// Dimension of the manifold, the sum of the generator degrees.
    pub fn dimension(&self) -> i64 {
        self.dimension
    }

    /// Degree of the `i`-th (zero-based) odd generator.
    pub fn degree_of(&self, i: usize) -> i64 {
        self.generator_degrees[i]
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degrees = self
            .generator_degrees
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        write!(
            f,
            "{} (degrees [{degrees}], dimension {})",
            self.name, self.dimension
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su3_has_degrees_3_and_5() {
        let m = ModelSpec::resolve("su3").unwrap();
        assert_eq!(m.generator_degrees(), &[3, 5]);
        assert_eq!(m.dimension(), 8);
    }

    #[test]
    fn resolve_builtins() {
        assert_eq!(ModelSpec::resolve("s5").unwrap().generator_degrees(), &[5]);
        let m = ModelSpec::resolve("exterior:3,5,7").unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.dimension(), 15);
        assert_eq!(m.name(), "exterior:3,5,7");
    }

    #[test]
    fn json_round_trip() {
        let m = ModelSpec::from_json(r#"{"name":"su3","generator_degrees":[3,5]}"#).unwrap();
        assert_eq!(m, ModelSpec::special_unitary(3).unwrap());
        assert_eq!(ModelSpec::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn rejects_even_degree_naming_entry() {
        let err = ModelSpec::from_json(r#"{"name":"bad","generator_degrees":[3,4]}"#).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("generator_degrees[1] = 4"), "{msg}");
        assert!(msg.contains("even"), "{msg}");
    }

    #[test]
    fn rejects_nonpositive_and_empty() {
        let err = ModelSpec::new("bad", vec![-3]).unwrap_err().to_string();
        assert!(err.contains("generator_degrees[0] = -3"), "{err}");
        assert!(ModelSpec::new("bad", vec![]).is_err());
        assert!(ModelSpec::resolve("s4").is_err());
        assert!(ModelSpec::resolve("su1").is_err());
        assert!(ModelSpec::resolve("nope").is_err());
    }
}

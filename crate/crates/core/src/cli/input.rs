use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;

use crate::polytope::{self, FanoPolytope, InteriorPoint, PolytopeFile};
use crate::potential::{RhoAssignment, RhoFile};

use super::CliError;

/// Deserializes `text`, naming the file, line, column and field path on failure.
pub fn parse_json<T: DeserializeOwned>(file: &str, text: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Parse {
            file: file.to_string(),
            line: inner.line(),
            column: inner.column(),
            field: (path != ".").then_some(path),
            message: inner.to_string(),
        }
    })
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(Path::new(path)).map_err(|e| CliError::Parse {
        file: path.to_string(),
        line: 0,
        column: 0,
        field: None,
        message: e.to_string(),
    })
}

/// `builtin:NAME` or a polytope file.
pub fn load_polytope(source: &str) -> Result<(FanoPolytope, InteriorPoint), CliError> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return polytope::builtin(name).map_err(|e| CliError::Domain(e.to_string()));
    }
    let file: PolytopeFile = parse_json(source, &read(source)?)?;
    Ok(file.into_parts())
}

pub enum RhoSource {
    Trivial,
    Search,
    Given(RhoAssignment),
}

pub fn load_rho(source: &str, n: usize) -> Result<RhoSource, CliError> {
    match source {
        "trivial" => Ok(RhoSource::Trivial),
        "search" => Ok(RhoSource::Search),
        path => {
            let file: RhoFile = parse_json(path, &read(path)?)?;
            let rho = file.into_rho().map_err(|e| CliError::Domain(format!("{path}: {e}")))?;
            if rho.len() != n {
                return Err(CliError::Domain(format!(
                    "{path}: local system has {} values, polytope has dimension {n}",
                    rho.len()
                )));
            }
            Ok(RhoSource::Given(rho))
        }
    }
}

use std::path::Path;

use ebh_core::bounds::Family;
use ebh_core::elliptic::{CurveFile, EllipticCurveQ};
use ebh_core::Error;

use crate::{CliError, CliResult};

pub const E1_JSON: &str = include_str!("../presets/e1.json");
pub const E2_JSON: &str = include_str!("../presets/e2.json");

/// Bundled curve files: e1 is y^2 = x^3 + x - 1, e2 is y^2 = x^3 - x - 2.
pub fn curve_preset(name: &str) -> CliResult<CurveFile> {
    let text = match name.to_ascii_lowercase().as_str() {
        "e1" => E1_JSON,
        "e2" => E2_JSON,
        _ => return Err(Error::Parse(format!("unknown curve preset `{name}`, expected e1 or e2")).into()),
    };
    Ok(CurveFile::from_json(text)?)
}

pub fn family_preset(family: Family) -> CurveFile {
    let name = match family {
        Family::F1 => "e1",
        Family::F2 => "e2",
    };
    curve_preset(name).expect("bundled preset parses")
}

pub fn read_curve_file(path: &Path) -> CliResult<CurveFile> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(CurveFile::from_json(&text)?)
}

/// A curve from a file or preset, if either was given.
pub fn curve_source(file: Option<&Path>, preset: Option<&str>) -> CliResult<Option<CurveFile>> {
    match (file, preset) {
        (Some(p), _) => read_curve_file(p).map(Some),
        (None, Some(name)) => curve_preset(name).map(Some),
        (None, None) => Ok(None),
    }
}

pub fn curve_of(file: &CurveFile) -> CliResult<EllipticCurveQ> {
    Ok(file.curve()?)
}

//! Ring-definition and S-matrix files.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::ring::{validate, BasedRing, ValidationReport};
use crate::verlinde::SMatrix;

/// On-disk ring definition. `dual` is derived when absent.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub unit: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<Vec<usize>>,
    #[serde(rename = "N")]
    pub n: Vec<Vec<Vec<i64>>>,
}

impl RingFile {
    pub fn from_ring(ring: &BasedRing) -> Self {
        RingFile {
            rank: ring.rank(),
            labels: Some(ring.labels().to_vec()),
            unit: ring.unit_set().to_vec(),
            dual: Some(ring.dual().to_vec()),
            n: ring.structure_nested(),
        }
    }

    pub fn into_ring(self) -> Result<BasedRing, CliError> {
        if self.n.len() != self.rank {
            return Err(CliError::Input(format!(
                "rank is {} but N has {} slices",
                self.rank,
                self.n.len()
            )));
        }
        let labels = match self.labels {
            Some(l) if l.len() != self.rank => {
                return Err(CliError::Input(format!(
                    "rank is {} but {} labels were given",
                    self.rank,
                    l.len()
                )))
            }
            Some(l) => l,
            None => (0..self.rank).map(|i| format!("b{i}")).collect(),
        };
        BasedRing::new(labels, self.n, self.unit, self.dual)
            .map_err(|e| CliError::Input(e.to_string()))
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Byte offset of a 1-based line and column.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let before: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    before + column.saturating_sub(1)
}

pub(crate) fn parse_error(path: &Path, text: &str, err: &serde_json::Error) -> CliError {
    CliError::Input(format!(
        "{}: parse error at line {}, column {} (byte offset {}): {err}",
        path.display(),
        err.line(),
        err.column(),
        byte_offset(text, err.line(), err.column())
    ))
}

/// Parses a ring file without checking the ring axioms.
pub fn parse_ring(path: &Path) -> Result<BasedRing, CliError> {
    let text = read(path)?;
    let file: RingFile = serde_json::from_str(&text).map_err(|e| parse_error(path, &text, &e))?;
    file.into_ring()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Parses and fully validates a ring file.
pub fn load_ring(path: &Path) -> Result<BasedRing, CliError> {
    let ring = parse_ring(path)?;
    check_valid(&ring, &validate(&ring), &path.display().to_string())?;
    Ok(ring)
}

/// Parses and fully validates a ring definition held in memory.
pub fn ring_from_json(text: &str) -> Result<BasedRing, CliError> {
    let file: RingFile = serde_json::from_str(text).map_err(|e| {
        CliError::Input(format!(
            "parse error at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    let ring = file.into_ring()?;
    check_valid(&ring, &validate(&ring), "ring")?;
    Ok(ring)
}

pub(crate) fn check_valid(
    ring: &BasedRing,
    report: &ValidationReport,
    name: &str,
) -> Result<(), CliError> {
    if report.passed() {
        return Ok(());
    }
    let labels = ring.labels();
    let details: Vec<String> = report
        .failures()
        .map(|c| {
            let witness: Vec<&str> = c.witnesses[0].iter().map(|&i| labels[i].as_str()).collect();
            format!(
                "{} fails in {} case(s), first witness ({})",
                c.axiom.name(),
                c.failure_count,
                witness.join(", ")
            )
        })
        .collect();
    Err(CliError::Input(format!(
        "{name}: invalid ring: {}",
        details.join("; ")
    )))
}

pub fn load_smatrix(path: &Path, tolerance: Option<f64>) -> Result<SMatrix, CliError> {
    let text = read(path)?;
    // Syntax errors get a location; shape errors come from SMatrix itself.
    if let Err(e) = serde_json::from_str::<serde_json::Value>(&text) {
        return Err(parse_error(path, &text, &e));
    }
    SMatrix::from_json(&text, tolerance)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets() {
        let text = "ab\ncde\nf";
        assert_eq!(byte_offset(text, 1, 1), 0);
        assert_eq!(byte_offset(text, 2, 2), 4);
        assert_eq!(byte_offset(text, 3, 1), 7);
    }

    #[test]
    fn round_trip_ring_file() {
        let ring = crate::families::s3_group_ring();
        let text = serde_json::to_string(&RingFile::from_ring(&ring)).unwrap();
        let back: RingFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_ring().unwrap(), ring);
    }
}

//! The fibration file format.
//!
//! ```toml
//! genus = 1
//! signature = -8       # optional
//! base_points = 9      # optional
//! level = 3            # optional
//! cycles = [[1, 0], [0, 1]]
//! ```
//!
//! Cycles are homology classes in the interleaved basis `(a₁, b₁, …, a_g, b_g)`,
//! listed in the order the Dehn twists compose.

use std::ops::Range;
use std::path::{Path, PathBuf};

use lefschetz_core::FibrationDescription;
use serde::Deserialize;
use toml::Spanned;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    genus: Spanned<usize>,
    cycles: Spanned<Vec<Spanned<Vec<i64>>>>,
    signature: Option<i64>,
    base_points: Option<u64>,
    level: Option<Spanned<u64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FibrationFile {
    pub path: PathBuf,
    pub genus: usize,
    pub cycles: Vec<Vec<i64>>,
    pub signature: Option<i64>,
    pub base_points: Option<u64>,
    pub level: Option<u64>,
    pub fibration: FibrationDescription,
}

/// 1-based line and column of a byte offset.
fn line_column(source: &str, offset: usize) -> (usize, usize) {
    let before = &source[..offset.min(source.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn parse_error(path: &Path, source: &str, span: Option<Range<usize>>, message: impl Into<String>) -> CliError {
    let (line, column) = span.map_or((1, 1), |s| line_column(source, s.start));
    CliError::Parse { path: path.to_path_buf(), line, column, message: message.into() }
}

pub fn parse_fibration(path: &Path, source: &str) -> CliResult<FibrationFile> {
    let raw: RawFile = toml::from_str(source).map_err(|e| parse_error(path, source, e.span(), e.message().trim()))?;
    let genus = *raw.genus.get_ref();
    if genus == 0 {
        return Err(parse_error(path, source, Some(raw.genus.span()), "genus must be at least 1"));
    }
    if let Some(level) = &raw.level {
        if *level.get_ref() < 2 {
            return Err(parse_error(path, source, Some(level.span()), "level must be at least 2"));
        }
    }
    let cycles: Vec<Vec<i64>> = raw.cycles.get_ref().iter().map(|c| c.get_ref().clone()).collect();
    let mut fibration = FibrationDescription::new(genus, cycles.clone()).map_err(|e| {
        let culprit = raw.cycles.get_ref().iter().find(|c| FibrationDescription::new(genus, vec![c.get_ref().clone()]).is_err());
        parse_error(path, source, Some(culprit.map_or(raw.cycles.span(), |c| c.span())), e.to_string())
    })?;
    if let Some(s) = raw.signature {
        fibration = fibration.with_signature(s);
    }
    if let Some(b) = raw.base_points {
        fibration = fibration.with_base_points(b);
    }
    Ok(FibrationFile {
        path: path.to_path_buf(),
        genus,
        cycles,
        signature: raw.signature,
        base_points: raw.base_points,
        level: raw.level.map(Spanned::into_inner),
        fibration,
    })
}

pub fn read_fibration(path: &Path) -> CliResult<FibrationFile> {
    let source = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() })?;
    parse_fibration(path, &source)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> CliResult<FibrationFile> {
        parse_fibration(Path::new("test.toml"), s)
    }

    #[test]
    fn minimal_file() {
        let f = parse("genus = 1\ncycles = [[1, 0], [0, 1]]\n").unwrap();
        assert_eq!(f.genus, 1);
        assert_eq!(f.cycles.len(), 2);
        assert_eq!(f.level, None);
    }

    #[test]
    fn empty_cycle_list_is_allowed() {
        assert!(parse("genus = 2\ncycles = []\n").unwrap().cycles.is_empty());
    }

    #[test]
    fn syntax_errors_carry_a_location() {
        match parse("genus = 1\ncycles = [[1, 0],\n  [0, 1]\nlevel = 3\n") {
            Err(CliError::Parse { line, .. }) => assert!(line >= 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_cycles_point_at_the_cycle() {
        match parse("genus = 1\ncycles = [\n  [1, 0],\n  [2, 4],\n]\n") {
            Err(CliError::Parse { line, column, message, .. }) => {
                assert_eq!((line, column), (4, 3));
                assert!(message.contains("primitive") || message.contains("gcd"), "{message}");
            }
            other => panic!("{other:?}"),
        }
        match parse("genus = 2\ncycles = [[1, 0]]\n") {
            Err(CliError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 11)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_fields_and_bad_types_are_rejected() {
        assert!(matches!(parse("genus = 1\ncycles = []\ncolour = 3\n"), Err(CliError::Parse { .. })));
        assert!(matches!(parse("genus = \"one\"\ncycles = []\n"), Err(CliError::Parse { line: 1, .. })));
        assert!(matches!(parse("genus = 0\ncycles = []\n"), Err(CliError::Parse { line: 1, column: 9, .. })));
        assert!(matches!(parse("genus = 1\ncycles = []\nlevel = 1\n"), Err(CliError::Parse { line: 3, .. })));
    }
}

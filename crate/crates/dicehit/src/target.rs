//! Target specifications and the explicit-list file format.
//!
//! A target file holds one nonnegative integer per line in strictly increasing
//! order. The first line may be `# bound <n>` to declare the largest state the
//! list speaks for; blank lines and other `#` comments are skipped.

use std::fs;
use std::path::Path;

use dicehit_core::walkmodel::{TargetSet, WalkError};

#[derive(Debug, thiserror::Error)]
pub enum TargetError {
    #[error("unknown target `{0}` (expected `squares`, `file:PATH` or `list:A,B,...`)")]
    UnknownSpec(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] WalkError),
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Parses the contents of a target file.
pub fn parse_target_file(text: &str) -> Result<TargetSet, TargetError> {
    let mut bound = None;
    let mut elements = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            if words.next() == Some("bound") {
                if i != 0 {
                    return Err(syntax(i, "`# bound` must be the first line"));
                }
                let value = words.next().ok_or_else(|| syntax(i, "missing bound value"))?;
                bound = Some(value.parse::<u64>().map_err(|e| syntax(i, &format!("bound: {e}")))?);
            }
            continue;
        }
        let v = line
            .parse::<u64>()
            .map_err(|e| syntax(i, &format!("`{line}`: {e}")))?;
        elements.push(v);
    }
    Ok(TargetSet::explicit(elements, bound)?)
}

fn syntax(index: usize, msg: &str) -> TargetError {
    TargetError::Syntax {
        line: index + 1,
        msg: msg.to_string(),
    }
}

pub fn load_target_file(path: &Path) -> Result<TargetSet, TargetError> {
    let text = fs::read_to_string(path).map_err(|source| TargetError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_target_file(&text)
}

/// `squares`, `file:PATH`, or `list:A,B,...`.
pub fn parse_target_spec(spec: &str) -> Result<TargetSet, TargetError> {
    if spec == "squares" {
        return Ok(TargetSet::perfect_squares());
    }
    if let Some(path) = spec.strip_prefix("file:") {
        return load_target_file(Path::new(path));
    }
    if let Some(list) = spec.strip_prefix("list:") {
        let elements = list
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| syntax(0, &e.to_string()))?;
        return Ok(TargetSet::explicit(elements, None)?);
    }
    Err(TargetError::UnknownSpec(spec.to_string()))
}

//! `key = value` text files, shared by CVR schemas and config files.
//!
//! Blank lines and lines starting with `#` are ignored. Keys and values are
//! trimmed; the first `=` splits the line.

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: expected `key = value`, got {text:?}")]
pub struct KeyValueError {
    pub line: usize,
    pub text: String,
}

pub(crate) fn parse(text: &str) -> Result<Vec<(usize, String, String)>, KeyValueError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(KeyValueError { line: i + 1, text: raw.to_string() });
        };
        let key = key.trim();
        if key.is_empty() {
            return Err(KeyValueError { line: i + 1, text: raw.to_string() });
        }
        out.push((i + 1, key.to_string(), value.trim().to_string()));
    }
    Ok(out)
}

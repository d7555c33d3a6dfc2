//! Raw cast-vote-record (CVR) ingestion.
//!
//! A CVR export is a comma-separated table with a header row. Its layout is
//! declared by a schema file of `key = value` lines, never guessed:
//!
//! ```text
//! # one column per rank; cells name the candidate(s) marked at that rank
//! layout = columns
//! id = BallotID
//! rank.Choice 1 = 1
//! rank.Choice 2 = 2
//! rank.Choice 3 = 3
//! # optional
//! writein_prefix = Write-in
//! mark_separator = ;
//! candidates = Begich;Palin;Peltola
//! ```
//!
//! With `layout = marks` every non-id cell holds one `rank:candidate` mark
//! (`1:Begich`) and rows may have different lengths; `rank.*` keys are not
//! used.
//!
//! Parsing never normalizes: overvotes, skips, duplicates and write-ins pass
//! through untouched as [`Mark`]s for [`normalize_ballot`](rcv_audit_core::normalize_ballot).

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::io::Read;

use rcv_audit_core::{Choice, Mark, RawBallotRecord};

use crate::keyvalue;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    Columns,
    Marks,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CvrSchema {
    pub layout: Layout,
    pub id_column: String,
    /// Column name and the rank it records (columns layout only).
    pub rank_columns: Vec<(String, u32)>,
    /// Cells starting with this text are write-ins.
    pub writein_prefix: String,
    /// Separates several candidates marked at one rank in a single cell.
    pub mark_separator: char,
    /// When set, any other (non-write-in) name is an error.
    pub candidates: Option<BTreeSet<String>>,
}

#[derive(Debug, thiserror::Error)]
pub enum CvrError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("row {row}: {message}")]
    Parse { row: u64, message: String },
    #[error("read error: {0}")]
    Io(#[from] std::io::Error),
}

fn schema_err(msg: impl Into<String>) -> CvrError {
    CvrError::Schema(msg.into())
}

impl CvrSchema {
    pub fn parse(text: &str) -> Result<Self, CvrError> {
        let pairs = keyvalue::parse(text).map_err(|e| schema_err(e.to_string()))?;
        let mut layout = Layout::Columns;
        let mut id_column = None;
        let mut rank_columns = Vec::new();
        let mut writein_prefix = "Write-in".to_string();
        let mut mark_separator = ';';
        let mut candidates = None;
        for (line, key, value) in pairs {
            match key.as_str() {
                "layout" => {
                    layout = match value.as_str() {
                        "columns" => Layout::Columns,
                        "marks" => Layout::Marks,
                        other => return Err(schema_err(format!("line {line}: unknown layout {other:?}"))),
                    }
                }
                "id" => id_column = Some(value),
                "writein_prefix" => writein_prefix = value,
                "mark_separator" => {
                    let mut chars = value.chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) if c != ',' => mark_separator = c,
                        _ => {
                            return Err(schema_err(format!(
                                "line {line}: mark_separator must be one character other than ','"
                            )))
                        }
                    }
                }
                "candidates" => {
                    candidates =
                        Some(value.split(';').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect())
                }
                k if k.starts_with("rank.") => {
                    let column = k["rank.".len()..].trim().to_string();
                    let rank: u32 = value
                        .parse()
                        .ok()
                        .filter(|r| *r >= 1)
                        .ok_or_else(|| schema_err(format!("line {line}: rank must be a positive integer")))?;
                    rank_columns.push((column, rank));
                }
                other => return Err(schema_err(format!("line {line}: unknown key {other:?}"))),
            }
        }
        let id_column = id_column.ok_or_else(|| schema_err("missing `id` column"))?;
        if layout == Layout::Columns && rank_columns.is_empty() {
            return Err(schema_err("columns layout needs at least one `rank.<column>` entry"));
        }
        if writein_prefix.is_empty() {
            return Err(schema_err("writein_prefix is empty"));
        }
        Ok(CvrSchema { layout, id_column, rank_columns, writein_prefix, mark_separator, candidates })
    }

    fn choice(&self, text: &str, row: u64) -> Result<Choice, CvrError> {
        if text.starts_with(&self.writein_prefix) {
            return Ok(Choice::WriteIn(text.to_string()));
        }
        if let Some(known) = &self.candidates {
            if !known.contains(text) {
                return Err(CvrError::Parse { row, message: format!("unknown candidate {text:?}") });
            }
        }
        Ok(Choice::Candidate(text.to_string()))
    }
}

/// Reads one [`RawBallotRecord`] per data row, in input order. Row numbers in
/// errors count the header as row 1.
pub fn parse_cvr<R: Read>(input: R, schema: &CvrSchema) -> Result<Vec<RawBallotRecord>, CvrError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(schema.layout == Layout::Marks)
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = reader.headers().map_err(|e| CvrError::Parse { row: 1, message: e.to_string() })?.clone();
    let column = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| schema_err(format!("column {name:?} not found in header")))
    };
    let id_index = column(&schema.id_column)?;
    let mut rank_index: BTreeMap<usize, u32> = BTreeMap::new();
    if schema.layout == Layout::Columns {
        for (name, rank) in &schema.rank_columns {
            rank_index.insert(column(name)?, *rank);
        }
    }

    let mut seen_ids = HashSet::new();
    let mut out = Vec::new();
    for (i, result) in reader.records().enumerate() {
        let row = i as u64 + 2;
        let record = result.map_err(|e| CvrError::Parse { row, message: csv_message(&e) })?;
        let record_id = record.get(id_index).unwrap_or("").to_string();
        if record_id.is_empty() {
            return Err(CvrError::Parse { row, message: "empty record id".into() });
        }
        if !seen_ids.insert(record_id.clone()) {
            return Err(CvrError::Parse { row, message: format!("duplicate record id {record_id:?}") });
        }
        let mut marks = Vec::new();
        match schema.layout {
            Layout::Columns => {
                for (&col, &rank) in &rank_index {
                    let cell = record.get(col).unwrap_or("");
                    for part in cell.split(schema.mark_separator).map(str::trim).filter(|p| !p.is_empty()) {
                        marks.push(Mark { rank, choice: schema.choice(part, row)? });
                    }
                }
                marks.sort_by_key(|m| m.rank);
            }
            Layout::Marks => {
                for (col, cell) in record.iter().enumerate() {
                    if col == id_index || cell.is_empty() {
                        continue;
                    }
                    let (rank, name) = cell.split_once(':').ok_or_else(|| CvrError::Parse {
                        row,
                        message: format!("mark {cell:?} is not `rank:candidate`"),
                    })?;
                    let rank: u32 = rank.trim().parse().ok().filter(|r| *r >= 1).ok_or_else(|| CvrError::Parse {
                        row,
                        message: format!("mark {cell:?} has no positive rank"),
                    })?;
                    let name = name.trim();
                    if name.is_empty() {
                        return Err(CvrError::Parse { row, message: format!("mark {cell:?} names no candidate") });
                    }
                    marks.push(Mark { rank, choice: schema.choice(name, row)? });
                }
            }
        }
        out.push(RawBallotRecord { record_id, marks });
    }
    Ok(out)
}

fn csv_message(e: &csv::Error) -> String {
    match e.kind() {
        csv::ErrorKind::UnequalLengths { expected_len, len, .. } => {
            format!("expected {expected_len} fields, found {len}")
        }
        _ => e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn marks_schema() -> CvrSchema {
        CvrSchema::parse("layout = marks\nid = id\n").unwrap()
    }

    fn columns_schema() -> CvrSchema {
        CvrSchema::parse("id = BallotID\nrank.Choice 1 = 1\nrank.Choice 2 = 2\nrank.Choice 3 = 3\n").unwrap()
    }

    #[test]
    fn marks_layout_rows() {
        let input = "id,m1,m2,m3\nB1, 1:Begich, 2:Palin, 3:Peltola\nB2, 1:Palin\nB3, 1:Begich, 1:Palin\n";
        let recs = parse_cvr(input.as_bytes(), &marks_schema()).unwrap();
        assert_eq!(recs.len(), 3);
        assert_eq!(
            recs[0].marks,
            vec![Mark::candidate(1, "Begich"), Mark::candidate(2, "Palin"), Mark::candidate(3, "Peltola")]
        );
        assert_eq!(recs[1].marks, vec![Mark::candidate(1, "Palin")]);
        assert_eq!(recs[2].marks, vec![Mark::candidate(1, "Begich"), Mark::candidate(1, "Palin")]);
        assert_eq!(recs[2].record_id, "B3");
    }

    #[test]
    fn columns_layout_with_overvote_and_writein() {
        let input = "BallotID,Choice 1,Choice 2,Choice 3\nX,Begich;Palin,,Write-in: Smith\n";
        let recs = parse_cvr(input.as_bytes(), &columns_schema()).unwrap();
        assert_eq!(
            recs[0].marks,
            vec![Mark::candidate(1, "Begich"), Mark::candidate(1, "Palin"), Mark::write_in(3, "Write-in: Smith")]
        );
    }

    #[test]
    fn missing_column_is_schema_error() {
        let input = "BallotID,Choice 1,Choice 2\nX,A,B\n";
        assert!(matches!(parse_cvr(input.as_bytes(), &columns_schema()), Err(CvrError::Schema(_))));
    }

    #[test]
    fn ragged_row_names_row() {
        let input = "BallotID,Choice 1,Choice 2,Choice 3\nX,A,B,C\nY,A\n";
        match parse_cvr(input.as_bytes(), &columns_schema()) {
            Err(CvrError::Parse { row, .. }) => assert_eq!(row, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_mark_and_duplicate_id() {
        let err = parse_cvr("id,m\nB1,Begich\n".as_bytes(), &marks_schema()).unwrap_err();
        assert!(matches!(err, CvrError::Parse { row: 2, .. }));
        let err = parse_cvr("id,m\nB1,0:Begich\n".as_bytes(), &marks_schema()).unwrap_err();
        assert!(matches!(err, CvrError::Parse { row: 2, .. }));
        let err = parse_cvr("id,m\nB1,1:A\nB1,1:B\n".as_bytes(), &marks_schema()).unwrap_err();
        assert!(matches!(err, CvrError::Parse { row: 3, .. }));
    }

    #[test]
    fn declared_candidates_are_enforced() {
        let schema = CvrSchema::parse("layout = marks\nid = id\ncandidates = A;B\n").unwrap();
        assert!(parse_cvr("id,m\nr,1:A\n".as_bytes(), &schema).is_ok());
        assert!(parse_cvr("id,m\nr,1:Write-in\n".as_bytes(), &schema).is_ok());
        let err = parse_cvr("id,m\nr,1:C\n".as_bytes(), &schema).unwrap_err();
        assert!(matches!(err, CvrError::Parse { row: 2, .. }));
    }

    #[test]
    fn schema_errors() {
        assert!(CvrSchema::parse("layout = marks\n").is_err());
        assert!(CvrSchema::parse("id = x\n").is_err());
        assert!(CvrSchema::parse("id = x\nrank.a = 0\n").is_err());
        assert!(CvrSchema::parse("id = x\nlayout = xml\n").is_err());
        assert!(CvrSchema::parse("id = x\nbogus = 1\n").is_err());
    }
}

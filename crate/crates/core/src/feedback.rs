//! Feedback batch files: a header row `student_id,<parameter>...` followed by
//! one row per student whose cells are word labels or codes.
//!
//! Words are stored exactly as read and resolved later, so a bad word only
//! fails its own row. Writing a batch read from a file in canonical form
//! (schema keys in schema order, `\n` line endings) reproduces it byte for
//! byte.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::vocabulary::{ParameterSchema, RawFeedback};

pub const ID_COLUMN: &str = "student_id";

/// Reads a batch; columns after `student_id` may name parameters by
/// canonical name or key, in any order.
pub fn read_feedback(reader: impl Read, schema: &ParameterSchema) -> Result<Vec<RawFeedback>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);
    let header = reader.headers()?.clone();
    if header.get(0).map(str::trim) != Some(ID_COLUMN) {
        return Err(Error::Parse {
            row: 1,
            message: format!("first column must be '{ID_COLUMN}'"),
        });
    }
    // column_of[p] = csv column holding parameter p
    let mut column_of = vec![None; schema.parameters.len()];
    for (col, name) in header.iter().enumerate().skip(1) {
        let pos = schema
            .parameter_position(name.trim())
            .ok_or_else(|| Error::UnknownParameter(name.to_string()))?;
        if column_of[pos].replace(col).is_some() {
            return Err(Error::Parse {
                row: 1,
                message: format!("parameter column '{name}' appears twice"),
            });
        }
    }
    if let Some(missing) = column_of.iter().position(Option::is_none) {
        return Err(Error::MissingParameter(
            schema.parameters[missing].name().to_string(),
        ));
    }

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let row = record.position().map(|p| p.line() as usize).unwrap_or(0);
        if record.len() > header.len() {
            return Err(Error::Parse {
                row,
                message: format!("expected {} fields, found {}", header.len(), record.len()),
            });
        }
        let student_id = record.get(0).unwrap_or("").to_string();
        if student_id.trim().is_empty() {
            return Err(Error::Parse {
                row,
                message: "empty student_id".into(),
            });
        }
        // a short row keeps only its leading words and fails at resolution
        let words = column_of
            .iter()
            .map_while(|col| record.get(col.expect("checked above")).map(str::to_string))
            .collect();
        rows.push(RawFeedback { student_id, words });
    }
    Ok(rows)
}

pub fn read_feedback_str(text: &str, schema: &ParameterSchema) -> Result<Vec<RawFeedback>> {
    read_feedback(text.as_bytes(), schema)
}

pub fn read_feedback_file(
    path: impl AsRef<Path>,
    schema: &ParameterSchema,
) -> Result<Vec<RawFeedback>> {
    read_feedback(std::fs::File::open(path)?, schema)
}

/// Writes a batch with schema keys as column names.
pub fn write_feedback(
    writer: impl Write,
    schema: &ParameterSchema,
    rows: &[RawFeedback],
) -> Result<()> {
    let mut writer = csv::WriterBuilder::new().flexible(true).from_writer(writer);
    let mut header = vec![ID_COLUMN];
    header.extend(schema.parameters.iter().map(|p| p.key()));
    writer.write_record(&header)?;
    for row in rows {
        let mut fields = vec![row.student_id.as_str()];
        fields.extend(row.words.iter().map(String::as_str));
        writer.write_record(&fields)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn feedback_to_string(schema: &ParameterSchema, rows: &[RawFeedback]) -> String {
    let mut buf = Vec::new();
    write_feedback(&mut buf, schema, rows).expect("in-memory write");
    String::from_utf8(buf).expect("fields are utf-8")
}

//! Word codebook: one interval type-2 word model per vocabulary word.
//!
//! The file format is delimited text with the header
//! `parameter,label,code,a,b,c,d,e,f,g,i,h,c_l,c_r,mean`. Columns `a..d` are
//! the upper trapezoid, `e..i` the lower trapezoid and `h` its height. The
//! stored centroid columns are optional and only used for verification. An
//! optional `#scale=min,max` line declares the domain (default `[0, 10]`);
//! any other `#` line is a comment.

use std::fmt;
use std::io::Read;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::it2::{centroid, CentroidInterval, DiscretizationGrid, IntervalFou, TrapezoidIt2};
use crate::vocabulary::{build_default_schema, LinguisticTerm, ParameterSchema};

pub const HEADER: [&str; 15] = [
    "parameter",
    "label",
    "code",
    "a",
    "b",
    "c",
    "d",
    "e",
    "f",
    "g",
    "i",
    "h",
    "c_l",
    "c_r",
    "mean",
];

pub const DEFAULT_SCALE: (f64, f64) = (0.0, 10.0);

/// Largest allowed gap between a stored mean and the midpoint of the stored
/// interval.
pub const MEAN_TOLERANCE: f64 = 0.01;

const SHIPPED: &str = include_str!("../data/codebook.csv");

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StoredCentroid {
    pub c_l: f64,
    pub c_r: f64,
    pub mean: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodebookEntry {
    /// Canonical name of the parameter (or recommendation) set.
    pub parameter: String,
    pub word: LinguisticTerm,
    pub fou: TrapezoidIt2<f64>,
    pub stored_centroid: Option<StoredCentroid>,
}

/// Word models for every word of a schema. Entries are kept in schema order:
/// the input parameters first, then the recommendation set.
#[derive(Debug, Clone, PartialEq)]
pub struct Codebook {
    schema: ParameterSchema,
    scale: (f64, f64),
    /// `entries[set][term]`, sets numbered as in [`Codebook::set_position`].
    entries: Vec<Vec<CodebookEntry>>,
    source: String,
}

impl Codebook {
    /// The bundled codebook for the default schema.
    pub fn shipped() -> Self {
        Self::from_str_with(SHIPPED, &build_default_schema(), "shipped")
            .expect("bundled codebook is valid")
    }

    pub fn load(path: impl AsRef<Path>, schema: &ParameterSchema) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::from_str_with(&text, schema, &path.display().to_string())
    }

    pub fn from_reader(
        mut reader: impl Read,
        schema: &ParameterSchema,
        source: &str,
    ) -> Result<Self> {
        let mut text = String::new();
        reader.read_to_string(&mut text)?;
        Self::from_str_with(&text, schema, source)
    }

    pub fn from_str_with(text: &str, schema: &ParameterSchema, source: &str) -> Result<Self> {
        let (scale, body) = split_directives(text)?;
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(body.as_bytes());

        let header = reader.headers()?.clone();
        let names: Vec<String> = header.iter().map(|h| h.to_ascii_lowercase()).collect();
        if names.len() < 12 || names.len() > HEADER.len() || names[..] != HEADER[..names.len()] {
            return Err(Error::Parse {
                row: 1,
                message: format!(
                    "header must be '{}' (last three columns optional)",
                    HEADER.join(",")
                ),
            });
        }

        let set_count = schema.parameters.len() + 1;
        let mut slots: Vec<Vec<Option<CodebookEntry>>> = (0..set_count)
            .map(|s| vec![None; set_by_position(schema, s).terms().len()])
            .collect();

        for record in reader.records() {
            let record = record?;
            let row = record.position().map(|p| p.line() as usize).unwrap_or(0);
            let (set_pos, entry) = parse_row(&record, row, schema, scale)?;
            let slot = &mut slots[set_pos][entry.word.index];
            if slot.is_some() {
                return Err(Error::Validation {
                    word: describe(&entry),
                    constraint: format!("duplicate entry (row {row})"),
                });
            }
            *slot = Some(entry);
        }

        let mut entries = Vec::with_capacity(set_count);
        for (set_pos, set_slots) in slots.into_iter().enumerate() {
            let set = set_by_position(schema, set_pos);
            let mut complete = Vec::with_capacity(set_slots.len());
            for (term, slot) in set.terms().iter().zip(set_slots) {
                complete.push(slot.ok_or_else(|| Error::Incomplete {
                    parameter: set.name().to_string(),
                    word: term.label.clone(),
                })?);
            }
            entries.push(complete);
        }

        Ok(Codebook {
            schema: schema.clone(),
            scale,
            entries,
            source: source.to_string(),
        })
    }

    pub fn schema(&self) -> &ParameterSchema {
        &self.schema
    }

    pub fn scale(&self) -> (f64, f64) {
        self.scale
    }

    /// Where the codebook was read from.
    pub fn source(&self) -> &str {
        &self.source
    }

    /// Notice for a codebook whose declared domain differs from `[0, 10]`.
    pub fn scale_notice(&self) -> Option<String> {
        (self.scale != DEFAULT_SCALE).then(|| {
            format!(
                "codebook declares scale [{}, {}] instead of [{}, {}]",
                self.scale.0, self.scale.1, DEFAULT_SCALE.0, DEFAULT_SCALE.1
            )
        })
    }

    /// Grid with `count` samples spanning the codebook's scale.
    pub fn grid(&self, count: usize) -> Result<DiscretizationGrid<f64>> {
        DiscretizationGrid::new(self.scale.0, self.scale.1, count)
    }

    /// Position of a set by name or key: parameters `0..n`, recommendation `n`.
    pub fn set_position(&self, name: &str) -> Option<usize> {
        self.schema.parameter_position(name).or_else(|| {
            self.schema
                .recommendation
                .is_named(name)
                .then_some(self.schema.parameters.len())
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = &CodebookEntry> {
        self.entries.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn entry(&self, parameter: &str, word: &str) -> Result<&CodebookEntry> {
        let missing = || Error::Lookup {
            parameter: parameter.to_string(),
            word: word.to_string(),
        };
        let set_pos = self.set_position(parameter).ok_or_else(missing)?;
        self.entries[set_pos]
            .iter()
            .find(|entry| entry.word.matches(word))
            .ok_or_else(missing)
    }

    /// Word model of `word` (label or code) in the named set.
    pub fn lookup(&self, parameter: &str, word: &str) -> Result<&TrapezoidIt2<f64>> {
        self.entry(parameter, word).map(|entry| &entry.fou)
    }

    /// Word model of term `index` of input parameter `parameter`.
    pub fn parameter_fou(&self, parameter: usize, index: usize) -> Option<&TrapezoidIt2<f64>> {
        (parameter < self.schema.parameters.len())
            .then(|| self.entries[parameter].get(index).map(|e| &e.fou))
            .flatten()
    }

    /// Word models of the recommendation set in index order.
    pub fn recommendation_fous(&self) -> Vec<TrapezoidIt2<f64>> {
        self.entries[self.schema.parameters.len()]
            .iter()
            .map(|e| e.fou)
            .collect()
    }

    /// Serializes in the load format; loading the result yields an equal
    /// codebook.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        if self.scale != DEFAULT_SCALE {
            out.push_str(&format!("#scale={},{}\n", self.scale.0, self.scale.1));
        }
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(HEADER).expect("in-memory write");
        for (set_pos, set_entries) in self.entries.iter().enumerate() {
            let key = set_by_position(&self.schema, set_pos).key();
            for entry in set_entries {
                let mut fields = vec![
                    key.to_string(),
                    entry.word.label.clone(),
                    entry.word.code.clone(),
                ];
                fields.extend(entry.fou.to_params().iter().map(f64::to_string));
                match entry.stored_centroid {
                    Some(stored) => {
                        fields.push(stored.c_l.to_string());
                        fields.push(stored.c_r.to_string());
                        fields.push(stored.mean.map(|m| m.to_string()).unwrap_or_default());
                    }
                    None => fields.extend([String::new(), String::new(), String::new()]),
                }
                writer.write_record(&fields).expect("in-memory write");
            }
        }
        let bytes = writer.into_inner().expect("in-memory flush");
        out.push_str(&String::from_utf8(bytes).expect("utf-8 fields"));
        out
    }
}

fn set_by_position(schema: &ParameterSchema, pos: usize) -> &crate::vocabulary::TermSet {
    schema.parameters.get(pos).unwrap_or(&schema.recommendation)
}

fn describe(entry: &CodebookEntry) -> String {
    format!("{} ({})", entry.word.code, entry.parameter)
}

/// Extracts the `#scale` directive and blanks out every `#` line so csv row
/// positions still match file line numbers.
fn split_directives(text: &str) -> Result<((f64, f64), String)> {
    let mut scale = DEFAULT_SCALE;
    let mut body = String::with_capacity(text.len());
    for (n, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if let Some(rest) = trimmed.strip_prefix('#') {
            if let Some(value) = rest.trim().strip_prefix("scale=") {
                scale = parse_scale(value).ok_or_else(|| Error::Parse {
                    row: n + 1,
                    message: format!("bad scale directive '{trimmed}', expected '#scale=min,max'"),
                })?;
            }
        } else {
            body.push_str(line);
        }
        body.push('\n');
    }
    Ok((scale, body))
}

fn parse_scale(value: &str) -> Option<(f64, f64)> {
    let (lo, hi) = value.split_once(',')?;
    let lo: f64 = lo.trim().parse().ok()?;
    let hi: f64 = hi.trim().parse().ok()?;
    (lo.is_finite() && hi.is_finite() && lo < hi).then_some((lo, hi))
}

fn parse_row(
    record: &csv::StringRecord,
    row: usize,
    schema: &ParameterSchema,
    scale: (f64, f64),
) -> Result<(usize, CodebookEntry)> {
    let parse_err = |message: String| Error::Parse { row, message };
    if record.len() < 12 || record.len() > HEADER.len() {
        return Err(parse_err(format!(
            "expected 12 to {} fields, found {}",
            HEADER.len(),
            record.len()
        )));
    }
    let field = |i: usize| record.get(i).unwrap_or("");
    let number = |i: usize| -> Result<f64> {
        field(i).parse::<f64>().map_err(|_| {
            parse_err(format!(
                "column '{}': '{}' is not a number",
                HEADER[i],
                field(i)
            ))
        })
    };
    let optional = |i: usize| -> Result<Option<f64>> {
        if field(i).is_empty() {
            Ok(None)
        } else {
            number(i).map(Some)
        }
    };

    let (parameter, label, code) = (field(0), field(1), field(2));
    let word_name = format!("{code} ({parameter})");
    let orphan = |why: &str| Error::Validation {
        word: word_name.clone(),
        constraint: format!("orphan entry: {why} (row {row})"),
    };
    let set_pos = schema
        .parameter_position(parameter)
        .or_else(|| {
            schema
                .recommendation
                .is_named(parameter)
                .then_some(schema.parameters.len())
        })
        .ok_or_else(|| orphan("parameter not in schema"))?;
    let set = set_by_position(schema, set_pos);
    let term = set
        .resolve(code)
        .ok_or_else(|| orphan("code not in the parameter's term set"))?;
    if !label.is_empty() && set.resolve(label).map(|t| t.index) != Some(term.index) {
        return Err(Error::Validation {
            word: word_name,
            constraint: format!("label '{label}' does not name the same word as code '{code}'"),
        });
    }

    let mut params = [0.0; 9];
    for (k, p) in params.iter_mut().enumerate() {
        *p = number(3 + k)?;
    }
    let invalid = |constraint: String| Error::Validation {
        word: format!("{} ({})", term.code, set.name()),
        constraint,
    };
    let fou = TrapezoidIt2::from_params(params).map_err(|e| match e {
        Error::InvalidFou(msg) => invalid(msg),
        other => other,
    })?;
    let (lo, hi) = fou.support();
    if lo < scale.0 || hi > scale.1 {
        return Err(invalid(format!(
            "support [{lo}, {hi}] outside scale [{}, {}]",
            scale.0, scale.1
        )));
    }

    let stored_centroid = match (optional(12)?, optional(13)?, optional(14)?) {
        (None, None, None) => None,
        (Some(c_l), Some(c_r), mean) => {
            if c_l > c_r {
                return Err(invalid(format!("stored c_l {c_l} exceeds c_r {c_r}")));
            }
            if let Some(mean) = mean {
                let mid = (c_l + c_r) / 2.0;
                if (mean - mid).abs() > MEAN_TOLERANCE + 1e-9 {
                    return Err(invalid(format!(
                        "stored mean {mean} differs from (c_l + c_r)/2 = {mid} by more than {MEAN_TOLERANCE}"
                    )));
                }
            }
            Some(StoredCentroid { c_l, c_r, mean })
        }
        _ => return Err(parse_err("stored centroid needs both c_l and c_r".into())),
    };

    Ok((
        set_pos,
        CodebookEntry {
            parameter: set.name().to_string(),
            word: term.clone(),
            fou,
            stored_centroid,
        },
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryVerification {
    pub parameter: String,
    pub code: String,
    pub computed: Option<CentroidInterval<f64>>,
    pub stored: Option<StoredCentroid>,
    pub delta_l: Option<f64>,
    pub delta_r: Option<f64>,
    pub passed: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tolerance: f64,
    pub grid_count: usize,
    pub entries: Vec<EntryVerification>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &EntryVerification> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn max_deviation(&self) -> f64 {
        self.entries
            .iter()
            .flat_map(|e| [e.delta_l, e.delta_r])
            .flatten()
            .fold(0.0, |acc, d| acc.max(d.abs()))
    }
}

/// Recomputes every entry's centroid on `grid` and compares it with the
/// stored interval. Entries without a stored centroid pass with a note.
pub fn verify_stored_centroids(
    cb: &Codebook,
    grid: &DiscretizationGrid<f64>,
    tolerance: f64,
) -> VerificationReport {
    let all: Vec<&CodebookEntry> = cb.entries().collect();
    let entries = all
        .par_iter()
        .map(|entry| {
            let mut result = EntryVerification {
                parameter: entry.parameter.clone(),
                code: entry.word.code.clone(),
                computed: None,
                stored: entry.stored_centroid,
                delta_l: None,
                delta_r: None,
                passed: false,
                note: None,
            };
            match centroid(&entry.fou.sample(grid)) {
                Err(e) => result.note = Some(e.to_string()),
                Ok(ci) => {
                    result.computed = Some(ci);
                    match entry.stored_centroid {
                        None => {
                            result.passed = true;
                            result.note = Some("no stored centroid".into());
                        }
                        Some(stored) => {
                            let dl = ci.c_l - stored.c_l;
                            let dr = ci.c_r - stored.c_r;
                            result.delta_l = Some(dl);
                            result.delta_r = Some(dr);
                            result.passed = dl.abs() <= tolerance && dr.abs() <= tolerance;
                        }
                    }
                }
            }
            result
        })
        .collect();
    VerificationReport {
        tolerance,
        grid_count: grid.count(),
        entries,
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "centroid verification: N = {}, tolerance = {}",
            self.grid_count, self.tolerance
        )?;
        writeln!(
            f,
            "{:<34} {:<5} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}  status",
            "parameter", "word", "c_l", "c_r", "stored_l", "stored_r", "d_l", "d_r"
        )?;
        let num = |v: Option<f64>| v.map(|x| format!("{x:.4}")).unwrap_or_else(|| "-".into());
        for e in &self.entries {
            write!(
                f,
                "{:<34} {:<5} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}  {}",
                e.parameter,
                e.code,
                num(e.computed.map(|c| c.c_l)),
                num(e.computed.map(|c| c.c_r)),
                num(e.stored.map(|s| s.c_l)),
                num(e.stored.map(|s| s.c_r)),
                num(e.delta_l),
                num(e.delta_r),
                if e.passed { "ok" } else { "FAIL" }
            )?;
            if let Some(note) = &e.note {
                write!(f, " ({note})")?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} of {} entries pass; max |deviation| = {:.4}",
            self.entries.len() - failed,
            self.entries.len(),
            self.max_deviation()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vocabulary::{STRATEGY, TIME_TAKEN};

    fn schema() -> ParameterSchema {
        build_default_schema()
    }

    fn with_row_replaced(code: &str, replacement: &str) -> String {
        SHIPPED
            .lines()
            .map(|line| {
                if line.split(',').nth(2) == Some(code) {
                    replacement.to_string()
                } else {
                    line.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    #[test]
    fn shipped_has_all_words() {
        let cb = Codebook::shipped();
        assert_eq!(cb.len(), 25);
        assert_eq!(cb.scale(), DEFAULT_SCALE);
        assert!(cb.scale_notice().is_none());
    }

    #[test]
    fn lookup_examples() {
        let cb = Codebook::shipped();
        let small = cb.lookup(TIME_TAKEN, "S").unwrap();
        assert_eq!(small.umf, [0.59, 2.00, 3.00, 4.41]);
        assert_eq!(small.lmf, [1.79, 2.50, 2.50, 3.21]);
        assert_eq!(small.height, 0.59);
        let ssvg = cb.lookup(STRATEGY, "SSVG").unwrap();
        assert_eq!(ssvg.umf, [7.16, 9.00, 10.0, 10.0]);
        assert_eq!(ssvg.lmf, [7.82, 9.00, 10.0, 10.0]);
        assert_eq!(ssvg.height, 1.0);
        assert_eq!(cb.lookup("time_taken", "small").unwrap(), small);
        assert!(matches!(
            cb.lookup(TIME_TAKEN, "XX"),
            Err(Error::Lookup { .. })
        ));
        assert!(matches!(cb.lookup("Mood", "S"), Err(Error::Lookup { .. })));
    }

    #[test]
    fn shoulder_words_have_unit_height() {
        let cb = Codebook::shipped();
        let schema = cb.schema().clone();
        for set in schema.parameters.iter().chain([&schema.recommendation]) {
            let g = set.granularity();
            for index in [0, g] {
                let fou = cb.lookup(set.name(), &set.terms()[index].code).unwrap();
                assert_eq!(fou.height, 1.0, "{} {}", set.name(), index);
            }
        }
    }

    #[test]
    fn round_trip() {
        let cb = Codebook::shipped();
        let text = cb.to_csv_string();
        let again = Codebook::from_str_with(&text, &schema(), "shipped").unwrap();
        assert_eq!(again, cb);
        assert_eq!(again.to_csv_string(), text);
    }

    #[test]
    fn scale_directive_round_trips_and_is_flagged() {
        let text = format!("#scale=0,20\n{SHIPPED}");
        let cb = Codebook::from_str_with(&text, &schema(), "scaled").unwrap();
        assert_eq!(cb.scale(), (0.0, 20.0));
        assert!(cb.scale_notice().is_some());
        let again = Codebook::from_str_with(&cb.to_csv_string(), &schema(), "scaled").unwrap();
        assert_eq!(again, cb);
    }

    #[test]
    fn rejects_unordered_umf() {
        let text = with_row_replaced(
            "S",
            "time_taken,Small,S,0.59,2,4.41,3,1.79,2.5,2.5,3.21,0.59,,,",
        );
        let err = Codebook::from_str_with(&text, &schema(), "t").unwrap_err();
        match err {
            Error::Validation { word, constraint } => {
                assert!(word.starts_with("S "), "{word}");
                assert!(constraint.contains("UMF"), "{constraint}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_excess_height() {
        let text = with_row_replaced(
            "S",
            "time_taken,Small,S,0.59,2,3,4.41,1.79,2.5,2.5,3.21,1.5,,,",
        );
        let err = Codebook::from_str_with(&text, &schema(), "t").unwrap_err();
        assert!(err.to_string().contains("height exceeds 1"), "{err}");
    }

    #[test]
    fn reports_missing_word() {
        let text: String = SHIPPED
            .lines()
            .filter(|line| line.split(',').nth(2) != Some("M"))
            .map(|line| format!("{line}\n"))
            .collect();
        let err = Codebook::from_str_with(&text, &schema(), "t").unwrap_err();
        match err {
            Error::Incomplete { parameter, word } => {
                assert_eq!(parameter, TIME_TAKEN);
                assert_eq!(word, "Moderate");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_duplicates_and_orphans() {
        let dup = format!("{SHIPPED}time_taken,Small,S,0.59,2,3,4.41,1.79,2.5,2.5,3.21,0.59,,,\n");
        let err = Codebook::from_str_with(&dup, &schema(), "t").unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
        let orphan = format!("{SHIPPED}mood,Happy,H,0,1,2,3,1,1.5,1.5,2,0.5,,,\n");
        let err = Codebook::from_str_with(&orphan, &schema(), "t").unwrap_err();
        assert!(err.to_string().contains("orphan"), "{err}");
    }

    #[test]
    fn parse_errors_carry_row_numbers() {
        let text = with_row_replaced(
            "M",
            "time_taken,Moderate,M,1.98,oops,5,6.41,4.29,4.59,4.59,5.21,0.42,,,",
        );
        match Codebook::from_str_with(&text, &schema(), "t").unwrap_err() {
            Error::Parse { row, message } => {
                assert_eq!(row, 4);
                assert!(message.contains("'b'"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        let short = with_row_replaced("M", "time_taken,Moderate,M,1.98");
        assert!(matches!(
            Codebook::from_str_with(&short, &schema(), "t"),
            Err(Error::Parse { row: 4, .. })
        ));
        let bad_header = SHIPPED.replacen("parameter", "param", 1);
        assert!(matches!(
            Codebook::from_str_with(&bad_header, &schema(), "t"),
            Err(Error::Parse { row: 1, .. })
        ));
    }

    #[test]
    fn rejects_inconsistent_stored_mean() {
        let text = with_row_replaced(
            "S",
            "time_taken,Small,S,0.59,2,3,4.41,1.79,2.5,2.5,3.21,0.59,1.88,3.12,2.60",
        );
        let err = Codebook::from_str_with(&text, &schema(), "t").unwrap_err();
        assert!(err.to_string().contains("stored mean"), "{err}");
    }

    #[test]
    fn optional_columns_may_be_blank_or_absent() {
        let text = with_row_replaced(
            "S",
            "time_taken,Small,S,0.59,2,3,4.41,1.79,2.5,2.5,3.21,0.59",
        );
        let cb = Codebook::from_str_with(&text, &schema(), "t").unwrap();
        assert!(cb.entry(TIME_TAKEN, "S").unwrap().stored_centroid.is_none());
    }

    #[test]
    fn verification_of_shipped_codebook() {
        let cb = Codebook::shipped();
        let grid = DiscretizationGrid::default();
        let report = verify_stored_centroids(&cb, &grid, 0.05);
        assert!(report.passed(), "{report}");
        let small = report.entries.iter().find(|e| e.code == "S").unwrap();
        let ci = small.computed.unwrap();
        assert!((ci.c_l - 1.88).abs() <= 0.02 && (ci.c_r - 3.12).abs() <= 0.02);
        let strict = verify_stored_centroids(&cb, &grid, 0.0);
        assert!(!strict.passed());
        assert!(report.to_string().contains("25 of 25 entries pass"));
    }
}

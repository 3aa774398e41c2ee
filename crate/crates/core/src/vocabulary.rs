//! Linguistic parameters, their term sets, and the records shared by all
//! evaluation methods.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::TriTuple;
use crate::it2::CentroidInterval;
use crate::two_tuple::TwoTuple;

/// One word of a term set. `index` is the word's position `j` in its set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinguisticTerm {
    pub label: String,
    pub code: String,
    pub index: usize,
}

impl LinguisticTerm {
    /// Case-insensitive match against the label or the code.
    pub fn matches(&self, word: &str) -> bool {
        let word = word.trim();
        self.code.eq_ignore_ascii_case(word) || self.label.eq_ignore_ascii_case(word)
    }
}

/// Ordered vocabulary `s_0 .. s_g` for one parameter (or the recommendation).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSet {
    name: String,
    key: String,
    terms: Vec<LinguisticTerm>,
}

impl TermSet {
    /// Builds a term set from `(label, code)` pairs in index order.
    ///
    /// `key` is the short column name used in batch files.
    pub fn new(name: &str, key: &str, words: &[(&str, &str)]) -> Result<Self> {
        let invalid = |reason: String| Error::TermSet {
            set: name.to_string(),
            reason,
        };
        if words.len() < 2 {
            return Err(invalid(format!(
                "need at least two terms (g >= 1), got {}",
                words.len()
            )));
        }
        let mut seen: HashMap<String, usize> = HashMap::new();
        let mut terms = Vec::with_capacity(words.len());
        for (index, (label, code)) in words.iter().enumerate() {
            let label = label.trim();
            let code = code.trim();
            if label.is_empty() || code.is_empty() {
                return Err(invalid(format!("term {index} has an empty label or code")));
            }
            for spelling in [label, code] {
                let folded = spelling.to_ascii_lowercase();
                match seen.get(&folded) {
                    Some(&other) if other != index => {
                        return Err(invalid(format!(
                            "'{spelling}' names both term {other} and term {index}"
                        )))
                    }
                    Some(_) => {
                        return Err(invalid(format!(
                            "term {index} uses '{spelling}' as both label and code"
                        )))
                    }
                    None => {
                        seen.insert(folded, index);
                    }
                }
            }
            terms.push(LinguisticTerm {
                label: label.to_string(),
                code: code.to_string(),
                index,
            });
        }
        Ok(TermSet {
            name: name.to_string(),
            key: key.to_string(),
            terms,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn terms(&self) -> &[LinguisticTerm] {
        &self.terms
    }

    pub fn term(&self, index: usize) -> Option<&LinguisticTerm> {
        self.terms.get(index)
    }

    /// Highest term index, `g`.
    pub fn granularity(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn resolve(&self, word: &str) -> Option<&LinguisticTerm> {
        self.terms.iter().find(|t| t.matches(word))
    }

    /// Matches the canonical name or the short key, ignoring case.
    pub fn is_named(&self, name: &str) -> bool {
        let name = name.trim();
        self.name.eq_ignore_ascii_case(name) || self.key.eq_ignore_ascii_case(name)
    }
}

/// The input parameters plus the recommendation vocabulary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterSchema {
    pub parameters: Vec<TermSet>,
    pub recommendation: TermSet,
}

pub const TIME_TAKEN: &str = "Time taken to solve the question";
pub const SUBJECT_KNOWLEDGE: &str = "Subject's Knowledge";
pub const LIKING: &str = "Liking towards Subject";
pub const PREPARATION: &str = "Perceived preparation level";
pub const STRATEGY: &str = "Strategy of student";

impl ParameterSchema {
    pub fn new(parameters: Vec<TermSet>, recommendation: TermSet) -> Result<Self> {
        if parameters.is_empty() {
            return Err(Error::domain("schema needs at least one parameter"));
        }
        let mut names: Vec<&TermSet> = Vec::new();
        for set in parameters.iter().chain(std::iter::once(&recommendation)) {
            if names
                .iter()
                .any(|other| other.is_named(set.name()) || other.is_named(set.key()))
            {
                return Err(Error::TermSet {
                    set: set.name().to_string(),
                    reason: "duplicate parameter name or key".into(),
                });
            }
            names.push(set);
        }
        Ok(ParameterSchema {
            parameters,
            recommendation,
        })
    }

    /// Looks up an input parameter or the recommendation set by name or key.
    pub fn term_set(&self, name: &str) -> Option<&TermSet> {
        self.parameters
            .iter()
            .chain(std::iter::once(&self.recommendation))
            .find(|set| set.is_named(name))
    }

    pub fn parameter_position(&self, name: &str) -> Option<usize> {
        self.parameters.iter().position(|set| set.is_named(name))
    }

    /// `Some(g)` when every parameter and the recommendation share one granularity.
    pub fn uniform_granularity(&self) -> Option<usize> {
        let g = self.recommendation.granularity();
        self.parameters
            .iter()
            .all(|p| p.granularity() == g)
            .then_some(g)
    }
}

/// Four student-strategy parameters and the five-word strategy scale.
pub fn build_default_schema() -> ParameterSchema {
    let set = |name, key, words: &[(&str, &str)]| {
        TermSet::new(name, key, words).expect("built-in term set is valid")
    };
    let parameters = vec![
        set(
            TIME_TAKEN,
            "time_taken",
            &[
                ("Very little", "VL"),
                ("Small", "S"),
                ("Moderate", "M"),
                ("Large", "L"),
                ("Very Large", "VLA"),
            ],
        ),
        set(
            SUBJECT_KNOWLEDGE,
            "subject_knowledge",
            &[
                ("Very Limited", "SVL"),
                ("Limited", "SL"),
                ("Moderate", "SM"),
                ("Large", "SLA"),
                ("Very Large", "SVLA"),
            ],
        ),
        set(
            LIKING,
            "liking",
            &[
                ("Very Less", "AVL"),
                ("Less", "AL"),
                ("Moderate", "AM"),
                ("High", "AH"),
                ("Very High", "AVH"),
            ],
        ),
        set(
            PREPARATION,
            "preparation",
            &[
                ("Very Less", "PVL"),
                ("Less", "PL"),
                ("Moderate", "PM"),
                ("High", "PH"),
                ("Very High", "PVH"),
            ],
        ),
    ];
    let recommendation = set(
        STRATEGY,
        "strategy",
        &[
            ("Not Good", "SSNG"),
            ("Below Average", "SSBA"),
            ("Average", "SSA"),
            ("Good", "SSG"),
            ("Very Good", "SSVG"),
        ],
    );
    ParameterSchema::new(parameters, recommendation).expect("built-in schema is valid")
}

/// Feedback words as written by the evaluator, in schema parameter order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFeedback {
    pub student_id: String,
    pub words: Vec<String>,
}

/// Feedback resolved against a schema: one term index per parameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FeedbackRecord {
    pub student_id: String,
    pub choices: Vec<usize>,
}

impl FeedbackRecord {
    pub fn terms<'a>(
        &'a self,
        schema: &'a ParameterSchema,
    ) -> impl Iterator<Item = &'a LinguisticTerm> + 'a {
        schema
            .parameters
            .iter()
            .zip(&self.choices)
            .map(|(set, &index)| &set.terms()[index])
    }
}

/// Resolves a parameter-name → word map. Parameter names may be given as
/// canonical names or keys; words as labels or codes, case-insensitively.
pub fn resolve_feedback(
    schema: &ParameterSchema,
    student_id: &str,
    raw: &HashMap<String, String>,
) -> Result<FeedbackRecord> {
    for name in raw.keys() {
        if schema.parameter_position(name).is_none() {
            return Err(Error::UnknownParameter(name.clone()));
        }
    }
    let mut words = Vec::with_capacity(schema.parameters.len());
    for set in &schema.parameters {
        let word = raw
            .iter()
            .find(|(name, _)| set.is_named(name))
            .map(|(_, word)| word.clone())
            .ok_or_else(|| Error::MissingParameter(set.name().to_string()))?;
        words.push(word);
    }
    resolve_words(schema, student_id, &words)
}

/// Resolves words already in schema parameter order.
pub fn resolve_words(
    schema: &ParameterSchema,
    student_id: &str,
    words: &[String],
) -> Result<FeedbackRecord> {
    if words.len() != schema.parameters.len() {
        return Err(match schema.parameters.get(words.len()) {
            Some(set) => Error::MissingParameter(set.name().to_string()),
            None => Error::domain(format!(
                "expected {} words, got {}",
                schema.parameters.len(),
                words.len()
            )),
        });
    }
    let choices = schema
        .parameters
        .iter()
        .zip(words)
        .map(|(set, word)| {
            set.resolve(word)
                .map(|term| term.index)
                .ok_or_else(|| Error::UnknownWord {
                    parameter: set.name().to_string(),
                    word: word.clone(),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FeedbackRecord {
        student_id: student_id.to_string(),
        choices,
    })
}

impl RawFeedback {
    pub fn resolve(&self, schema: &ParameterSchema) -> Result<FeedbackRecord> {
        resolve_words(schema, &self.student_id, &self.words)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExtensionPrinciple,
    Symbolic,
    TwoTuple,
    Perceptual,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::ExtensionPrinciple,
        Method::Symbolic,
        Method::TwoTuple,
        Method::Perceptual,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::ExtensionPrinciple => "extension_principle",
            Method::Symbolic => "symbolic",
            Method::TwoTuple => "two_tuple",
            Method::Perceptual => "perceptual",
        }
    }

    /// Column heading used in tabular reports.
    pub fn title(self) -> &'static str {
        match self {
            Method::ExtensionPrinciple => "Extension Principle",
            Method::Symbolic => "Symbolic Method",
            Method::TwoTuple => "2-Tuple approach",
            Method::Perceptual => "Perceptual computing",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "extension_principle" | "extension" => Ok(Method::ExtensionPrinciple),
            "symbolic" => Ok(Method::Symbolic),
            "two_tuple" | "2tuple" | "2_tuple" => Ok(Method::TwoTuple),
            "perceptual" | "perc" => Ok(Method::Perceptual),
            other => Err(Error::Config(format!("unknown method '{other}'"))),
        }
    }
}

/// Method-specific numeric part of a recommendation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NumericPayload {
    /// Matched recommendation tri-tuple plus the raw aggregate it was matched from.
    TriTuple {
        matched: TriTuple<f64>,
        aggregate: TriTuple<f64>,
        distance: f64,
    },
    Index {
        index: usize,
    },
    TwoTuple {
        beta: f64,
        tuple: TwoTuple<f64>,
    },
    Centroid {
        mean: f64,
        interval: CentroidInterval<f64>,
        similarities: Vec<f64>,
    },
}

impl NumericPayload {
    /// Totally ordered score used for ranking.
    pub fn score(&self) -> f64 {
        match self {
            NumericPayload::TriTuple { matched, .. } => matched.m,
            NumericPayload::Index { index } => *index as f64,
            NumericPayload::TwoTuple { beta, .. } => *beta,
            NumericPayload::Centroid { mean, .. } => *mean,
        }
    }

    /// Renders the numeric cell as printed in comparison tables. Perceptual
    /// scores use `perceptual_decimals` places, or full precision for `None`.
    pub fn display(&self, perceptual_decimals: Option<usize>) -> String {
        match self {
            NumericPayload::TriTuple { matched, .. } => {
                format!("{{{},{},{}}}", matched.l, matched.m, matched.r)
            }
            NumericPayload::Index { index } => index.to_string(),
            NumericPayload::TwoTuple { beta, .. } => format!("{beta}"),
            NumericPayload::Centroid { mean, .. } => match perceptual_decimals {
                Some(places) => format!("{mean:.places$}"),
                None => format!("{mean}"),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Recommendation {
    pub method: Method,
    pub numeric: NumericPayload,
    pub linguistic: LinguisticTerm,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ss1_raw() -> HashMap<String, String> {
        [
            (TIME_TAKEN, "Small"),
            (SUBJECT_KNOWLEDGE, "Large"),
            (LIKING, "Moderate"),
            (PREPARATION, "Moderate"),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
    }

    #[test]
    fn default_schema_shape() {
        let schema = build_default_schema();
        assert_eq!(schema.parameters.len(), 4);
        for set in &schema.parameters {
            assert_eq!(set.terms().len(), 5);
        }
        assert_eq!(schema.recommendation.terms().len(), 5);
        let s1 = &schema.parameters[0].terms()[1];
        assert_eq!((s1.code.as_str(), s1.index), ("S", 1));
        let ssa = &schema.recommendation.terms()[2];
        assert_eq!((ssa.code.as_str(), ssa.index), ("SSA", 2));
        assert_eq!(schema.uniform_granularity(), Some(4));
    }

    #[test]
    fn default_schema_is_deterministic() {
        assert_eq!(build_default_schema(), build_default_schema());
    }

    #[test]
    fn indices_match_positions() {
        let schema = build_default_schema();
        for set in schema
            .parameters
            .iter()
            .chain(std::iter::once(&schema.recommendation))
        {
            for (pos, term) in set.terms().iter().enumerate() {
                assert_eq!(term.index, pos);
            }
        }
    }

    #[test]
    fn resolves_ss1() {
        let schema = build_default_schema();
        let record = resolve_feedback(&schema, "SS1", &ss1_raw()).unwrap();
        assert_eq!(record.choices, vec![1, 3, 2, 2]);
    }

    #[test]
    fn resolution_is_case_insensitive() {
        let schema = build_default_schema();
        let mut raw = ss1_raw();
        raw.insert(TIME_TAKEN.into(), "small".into());
        raw.insert(LIKING.into(), "am".into());
        let record = resolve_feedback(&schema, "SS1", &raw).unwrap();
        assert_eq!(record.choices, vec![1, 3, 2, 2]);
    }

    #[test]
    fn unknown_word_names_parameter() {
        let schema = build_default_schema();
        let mut raw = ss1_raw();
        raw.insert(TIME_TAKEN.into(), "Tiny".into());
        match resolve_feedback(&schema, "x", &raw) {
            Err(Error::UnknownWord { parameter, word }) => {
                assert_eq!(parameter, TIME_TAKEN);
                assert_eq!(word, "Tiny");
            }
            other => panic!("expected unknown word, got {other:?}"),
        }
    }

    #[test]
    fn missing_parameter_is_schema_error() {
        let schema = build_default_schema();
        let mut raw = ss1_raw();
        raw.remove(PREPARATION);
        assert!(matches!(
            resolve_feedback(&schema, "x", &raw),
            Err(Error::MissingParameter(p)) if p == PREPARATION
        ));
    }

    #[test]
    fn rejects_colliding_spellings() {
        assert!(TermSet::new("t", "t", &[("Low", "L"), ("l", "X")]).is_err());
        assert!(TermSet::new("t", "t", &[("Low", "LOW")]).is_err());
        assert!(TermSet::new("t", "t", &[("Only", "O")]).is_err());
        let two = TermSet::new("t", "t", &[("Low", "L"), ("High", "H")]).unwrap();
        assert_eq!(two.granularity(), 1);
    }

    #[test]
    fn method_names_round_trip() {
        for method in Method::ALL {
            assert_eq!(method.as_str().parse::<Method>().unwrap(), method);
        }
        assert!("bogus".parse::<Method>().is_err());
    }
}

//! Per-student evaluation across the four methods, batch reports, ranking and
//! the uniqueness analysis of a batch.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codebook::Codebook;
use crate::error::{Error, Result};
use crate::extension::{
    aggregate_tri_tuples, linguistic_approximation, uniform_triangular_partition, DistanceWeights,
    TriTuple,
};
use crate::it2::{
    centroid, jaccard, lwa_exact, lwa_parameter_average, DiscretizationGrid, IntervalFou,
    SampledFou, TrapezoidIt2,
};
use crate::symbolic::{sm_aggregate, sort_terms_descending, WeightVector};
use crate::two_tuple::{aggregate_beta, to_two_tuple};
use crate::vocabulary::{
    FeedbackRecord, Method, NumericPayload, ParameterSchema, RawFeedback, Recommendation,
};

/// Decimal places of perceptual scores in reports and uniqueness grouping.
pub const PERCEPTUAL_DECIMALS: usize = 2;

/// How word models are combined before centroid and similarity computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LwaMode {
    /// Alpha-cut weighted average; lower height is the minimum input height.
    #[default]
    Exact,
    /// Parameter-wise average of the nine trapezoid parameters, heights included.
    ParameterAverage,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalOptions {
    pub distance_weights: DistanceWeights<f64>,
    /// Symbolic-method weights in sorted-term order; `None` means equal.
    pub symbolic_weights: Option<Vec<f64>>,
    /// Word-model weights per parameter; `None` means equal.
    pub lwa_weights: Option<Vec<f64>>,
    pub lwa_mode: LwaMode,
    pub grid_count: usize,
    pub alpha_levels: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            distance_weights: DistanceWeights::default(),
            symbolic_weights: None,
            lwa_weights: None,
            lwa_mode: LwaMode::Exact,
            grid_count: DiscretizationGrid::<f64>::DEFAULT_COUNT,
            alpha_levels: 101,
        }
    }
}

/// Evaluates feedback against one schema and, for perceptual computing, one
/// codebook. Holds precomputed term models; cheap to share across threads.
pub struct Evaluator<'a> {
    schema: &'a ParameterSchema,
    codebook: Option<&'a Codebook>,
    options: EvalOptions,
    partitions: Vec<Vec<TriTuple<f64>>>,
    recommendation_partition: Vec<TriTuple<f64>>,
    grid: Option<DiscretizationGrid<f64>>,
    recommendation_samples: Vec<SampledFou<f64>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(
        schema: &'a ParameterSchema,
        codebook: Option<&'a Codebook>,
        options: EvalOptions,
    ) -> Result<Self> {
        let partitions = schema
            .parameters
            .iter()
            .map(|set| uniform_triangular_partition(set.terms().len()))
            .collect::<Result<Vec<_>>>()?;
        let recommendation_partition =
            uniform_triangular_partition(schema.recommendation.terms().len())?;
        if let Some(w) = &options.lwa_weights {
            if w.len() != schema.parameters.len() {
                return Err(Error::Config(format!(
                    "{} word-model weights for {} parameters",
                    w.len(),
                    schema.parameters.len()
                )));
            }
        }
        if let Some(w) = &options.symbolic_weights {
            WeightVector::new(w.clone())?;
        }
        let (grid, recommendation_samples) = match codebook {
            Some(cb) => {
                if cb.schema() != schema {
                    return Err(Error::Config(
                        "codebook was loaded for a different schema".into(),
                    ));
                }
                let grid = cb.grid(options.grid_count)?;
                let samples = cb
                    .recommendation_fous()
                    .iter()
                    .map(|fou| fou.sample(&grid))
                    .collect();
                (Some(grid), samples)
            }
            None => (None, Vec::new()),
        };
        Ok(Evaluator {
            schema,
            codebook,
            options,
            partitions,
            recommendation_partition,
            grid,
            recommendation_samples,
        })
    }

    pub fn schema(&self) -> &ParameterSchema {
        self.schema
    }

    pub fn options(&self) -> &EvalOptions {
        &self.options
    }

    pub fn grid(&self) -> Option<&DiscretizationGrid<f64>> {
        self.grid.as_ref()
    }

    pub fn evaluate_student(&self, fb: &FeedbackRecord, method: Method) -> Result<Recommendation> {
        if fb.choices.len() != self.schema.parameters.len() {
            return Err(Error::domain(format!(
                "record has {} choices for {} parameters",
                fb.choices.len(),
                self.schema.parameters.len()
            )));
        }
        for (set, &choice) in self.schema.parameters.iter().zip(&fb.choices) {
            if choice > set.granularity() {
                return Err(Error::domain(format!(
                    "choice {choice} out of range for '{}'",
                    set.name()
                )));
            }
        }
        let (numeric, index) = match method {
            Method::ExtensionPrinciple => self.extension_principle(fb)?,
            Method::Symbolic => self.symbolic(fb)?,
            Method::TwoTuple => self.two_tuple(fb)?,
            Method::Perceptual => self.perceptual(fb)?,
        };
        Ok(Recommendation {
            method,
            numeric,
            linguistic: self.schema.recommendation.terms()[index].clone(),
        })
    }

    fn extension_principle(&self, fb: &FeedbackRecord) -> Result<(NumericPayload, usize)> {
        let tuples: Vec<_> = self
            .partitions
            .iter()
            .zip(&fb.choices)
            .map(|(partition, &c)| partition[c])
            .collect();
        let aggregate = aggregate_tri_tuples(&tuples)?;
        let (index, distance) = linguistic_approximation(
            &aggregate,
            &self.recommendation_partition,
            &self.options.distance_weights,
        )?;
        let numeric = NumericPayload::TriTuple {
            matched: self.recommendation_partition[index],
            aggregate,
            distance,
        };
        Ok((numeric, index))
    }

    /// Granularity shared by inputs and output, required by the index-based methods.
    fn shared_granularity(&self) -> Result<usize> {
        self.schema.uniform_granularity().ok_or_else(|| {
            Error::Config("index-based methods need every term set to share one granularity".into())
        })
    }

    fn symbolic(&self, fb: &FeedbackRecord) -> Result<(NumericPayload, usize)> {
        let g = self.shared_granularity()?;
        let weights = match &self.options.symbolic_weights {
            Some(w) => WeightVector::new(w.clone())?,
            None => WeightVector::equal(fb.choices.len())?,
        };
        let index = sm_aggregate(&sort_terms_descending(&fb.choices), &weights, g)?;
        Ok((NumericPayload::Index { index }, index))
    }

    fn two_tuple(&self, fb: &FeedbackRecord) -> Result<(NumericPayload, usize)> {
        let g = self.shared_granularity()?;
        let beta: f64 = aggregate_beta(&fb.choices)?;
        let tuple = to_two_tuple(beta, g)?;
        let index = tuple.term_index;
        Ok((NumericPayload::TwoTuple { beta, tuple }, index))
    }

    fn perceptual(&self, fb: &FeedbackRecord) -> Result<(NumericPayload, usize)> {
        let (cb, grid) = match (self.codebook, &self.grid) {
            (Some(cb), Some(grid)) => (cb, grid),
            _ => {
                return Err(Error::Config(
                    "perceptual computing needs a codebook".into(),
                ))
            }
        };
        let fous: Vec<TrapezoidIt2<f64>> = fb
            .choices
            .iter()
            .enumerate()
            .map(|(p, &c)| *cb.parameter_fou(p, c).expect("codebook is complete"))
            .collect();
        let weights = self
            .options
            .lwa_weights
            .clone()
            .unwrap_or_else(|| vec![1.0; fous.len()]);
        let aggregate = match self.options.lwa_mode {
            LwaMode::Exact => lwa_exact(&fous, &weights, self.options.alpha_levels, grid)?,
            LwaMode::ParameterAverage => lwa_parameter_average(&fous, &weights)?.sample(grid),
        };
        let interval = centroid(&aggregate)?;
        let similarities = self
            .recommendation_samples
            .iter()
            .map(|word| jaccard(&aggregate, word))
            .collect::<Result<Vec<f64>>>()?;
        let mut best = 0;
        for (k, &s) in similarities.iter().enumerate() {
            if s > similarities[best] {
                best = k;
            }
        }
        let numeric = NumericPayload::Centroid {
            mean: interval.mean(),
            interval,
            similarities,
        };
        Ok((numeric, best))
    }

    /// Evaluates every row with every method. Rows are processed in parallel;
    /// report order follows input order. Resolution or computation failures
    /// are recorded in the affected cells.
    pub fn evaluate_batch(
        &self,
        rows: &[RawFeedback],
        methods: &[Method],
    ) -> Result<EvaluationReport> {
        if rows.is_empty() {
            return Err(Error::domain("empty feedback batch"));
        }
        let methods = normalize_methods(methods)?;
        if methods.contains(&Method::Perceptual) && self.codebook.is_none() {
            return Err(Error::Config(
                "perceptual computing needs a codebook".into(),
            ));
        }
        let report_rows = rows
            .par_iter()
            .map(|raw| self.evaluate_row(raw, &methods))
            .collect();
        Ok(EvaluationReport {
            metadata: self.metadata(&methods),
            methods,
            rows: report_rows,
        })
    }

    fn evaluate_row(&self, raw: &RawFeedback, methods: &[Method]) -> ReportRow {
        let resolved = raw.resolve(self.schema);
        let cells = methods
            .iter()
            .map(|&method| {
                let outcome = resolved
                    .as_ref()
                    .map_err(|e| e.to_string())
                    .and_then(|fb| self.evaluate_student(fb, method).map_err(|e| e.to_string()));
                match outcome {
                    Ok(rec) => MethodCell {
                        method,
                        recommendation: Some(rec),
                        error: None,
                    },
                    Err(reason) => MethodCell {
                        method,
                        recommendation: None,
                        error: Some(reason),
                    },
                }
            })
            .collect();
        ReportRow {
            student_id: raw.student_id.clone(),
            words: raw.words.clone(),
            choices: resolved.as_ref().ok().map(|fb| fb.choices.clone()),
            error: resolved.err().map(|e| e.to_string()),
            cells,
        }
    }

    fn metadata(&self, methods: &[Method]) -> ReportMetadata {
        ReportMetadata {
            codebook: self.codebook.map(|cb| cb.source().to_string()),
            grid: self.grid.map(|g| GridInfo {
                min: g.min(),
                max: g.max(),
                count: g.count(),
            }),
            parameters: self
                .schema
                .parameters
                .iter()
                .map(|p| p.key().to_string())
                .collect(),
            methods: methods.to_vec(),
            options: self.options.clone(),
        }
    }
}

/// Deduplicates while keeping the canonical method order.
fn normalize_methods(methods: &[Method]) -> Result<Vec<Method>> {
    let selected: Vec<Method> = Method::ALL
        .into_iter()
        .filter(|m| methods.contains(m))
        .collect();
    if selected.is_empty() {
        return Err(Error::Config("no methods selected".into()));
    }
    Ok(selected)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridInfo {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub codebook: Option<String>,
    pub grid: Option<GridInfo>,
    pub parameters: Vec<String>,
    pub methods: Vec<Method>,
    pub options: EvalOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodCell {
    pub method: Method,
    pub recommendation: Option<Recommendation>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub student_id: String,
    pub words: Vec<String>,
    /// Resolved term indices, absent when resolution failed.
    pub choices: Option<Vec<usize>>,
    pub error: Option<String>,
    pub cells: Vec<MethodCell>,
}

impl ReportRow {
    pub fn cell(&self, method: Method) -> Option<&MethodCell> {
        self.cells.iter().find(|c| c.method == method)
    }

    pub fn recommendation(&self, method: Method) -> Option<&Recommendation> {
        self.cell(method).and_then(|c| c.recommendation.as_ref())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub metadata: ReportMetadata,
    pub methods: Vec<Method>,
    pub rows: Vec<ReportRow>,
}

impl EvaluationReport {
    pub fn row(&self, student_id: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.student_id == student_id)
    }

    pub fn failed_rows(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows
            .iter()
            .filter(|r| r.cells.iter().any(|c| c.recommendation.is_none()))
    }
}

/// Orders ids numerically when both parse as integers, else as text.
pub fn compare_student_ids(a: &str, b: &str) -> Ordering {
    match (a.trim().parse::<i64>(), b.trim().parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        _ => a.cmp(b),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankEntry {
    pub rank: usize,
    pub student_id: String,
    pub score: f64,
    pub linguistic: String,
}

/// Students with a result for `method`, best score first; equal scores are
/// ordered by student id (numerically where possible). Perceptual scores
/// are compared at full precision.
pub fn rank_students(report: &EvaluationReport, method: Method) -> Result<Vec<RankEntry>> {
    if !report.methods.contains(&method) {
        return Err(Error::domain(format!(
            "method '{method}' is not in the report"
        )));
    }
    let mut scored: Vec<(&str, f64, &str)> = report
        .rows
        .iter()
        .filter_map(|row| {
            row.recommendation(method).map(|rec| {
                (
                    row.student_id.as_str(),
                    rec.numeric.score(),
                    rec.linguistic.code.as_str(),
                )
            })
        })
        .collect();
    scored.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(Ordering::Equal)
            .then_with(|| compare_student_ids(a.0, b.0))
    });
    Ok(scored
        .into_iter()
        .enumerate()
        .map(|(i, (id, score, word))| RankEntry {
            rank: i + 1,
            student_id: id.to_string(),
            score,
            linguistic: word.to_string(),
        })
        .collect())
}

/// Students sharing one recommendation cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DuplicateGroup {
    pub numeric: String,
    pub linguistic: String,
    /// Every student with this cell, in report order.
    pub students: Vec<String>,
    /// Full-precision scores of `students`, same order.
    pub scores: Vec<f64>,
    /// Number of different feedback vectors among `students`.
    pub distinct_feedback: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodUniqueness {
    pub method: Method,
    pub evaluated: usize,
    /// Cells shared by students with at least two different feedback vectors.
    pub groups: Vec<DuplicateGroup>,
}

impl MethodUniqueness {
    pub fn duplicate_group_count(&self) -> usize {
        self.groups.len()
    }

    pub fn group_sizes(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.students.len()).collect()
    }

    /// Students whose cell no student with different feedback shares.
    pub fn unique_students(&self) -> usize {
        self.evaluated - self.groups.iter().map(|g| g.students.len()).sum::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniquenessSummary {
    /// Precision of perceptual scores used for comparison; `None` is full precision.
    pub perceptual_decimals: Option<usize>,
    pub methods: Vec<MethodUniqueness>,
}

impl UniquenessSummary {
    pub fn method(&self, method: Method) -> Option<&MethodUniqueness> {
        self.methods.iter().find(|m| m.method == method)
    }
}

/// Uniqueness at the reported precision (perceptual scores at two decimals).
pub fn uniqueness_report(report: &EvaluationReport) -> UniquenessSummary {
    uniqueness_report_at(report, Some(PERCEPTUAL_DECIMALS))
}

/// Groups students whose (numeric, linguistic) cell is identical although
/// their feedback differs. Numeric cells are compared as rendered in reports;
/// perceptual scores use `perceptual_decimals` places. A group lists every
/// student with that cell, including repeats of the same feedback. Batches of
/// fewer than two evaluated students give empty groups.
pub fn uniqueness_report_at(
    report: &EvaluationReport,
    perceptual_decimals: Option<usize>,
) -> UniquenessSummary {
    let methods = report
        .methods
        .iter()
        .map(|&method| {
            let mut buckets: BTreeMap<(String, String), Vec<&ReportRow>> = BTreeMap::new();
            let mut order: Vec<(String, String)> = Vec::new();
            let mut evaluated = 0;
            for row in &report.rows {
                if let Some(rec) = row.recommendation(method) {
                    evaluated += 1;
                    let key = (
                        rec.numeric.display(perceptual_decimals),
                        rec.linguistic.code.clone(),
                    );
                    let bucket = buckets.entry(key.clone()).or_default();
                    if bucket.is_empty() {
                        order.push(key);
                    }
                    bucket.push(row);
                }
            }
            let groups = order
                .into_iter()
                .filter_map(|key| {
                    let rows = &buckets[&key];
                    let mut vectors: Vec<&Vec<usize>> =
                        rows.iter().filter_map(|r| r.choices.as_ref()).collect();
                    vectors.sort();
                    vectors.dedup();
                    (vectors.len() >= 2).then(|| DuplicateGroup {
                        numeric: key.0.clone(),
                        linguistic: key.1.clone(),
                        students: rows.iter().map(|r| r.student_id.clone()).collect(),
                        scores: rows
                            .iter()
                            .filter_map(|r| r.recommendation(method))
                            .map(|rec| rec.numeric.score())
                            .collect(),
                        distinct_feedback: vectors.len(),
                    })
                })
                .collect();
            MethodUniqueness {
                method,
                evaluated,
                groups,
            }
        })
        .collect();
    UniquenessSummary {
        perceptual_decimals,
        methods,
    }
}

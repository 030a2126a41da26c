//! Multi-label evaluation metrics.
//!
//! Predictions are compared against ground truth in three ways:
//! example-based metrics average a per-instance score, label-based metrics
//! work from per-label confusion counts (macro and micro averaged), and
//! ranking metrics use per-label scores.
//!
//! Degenerate ratios are closed as follows: precision with no predicted
//! positives is 0, recall with no actual positives is 0, an F-measure whose
//! precision and recall are both 0 is 0, and example-based accuracy with an
//! empty union is 1. Rankings sort labels by descending score, breaking ties
//! by ascending label index. Coverage is 0-based.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::EvalError;
use crate::labelset::Labelset;
use crate::math::{f_measure, ratio_or_zero};

/// Ground truth paired with predicted bipartitions and/or label scores.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionSet {
    num_labels: usize,
    truth: Vec<Labelset>,
    bipartition: Option<Vec<Labelset>>,
    /// Row-major `n x k`.
    scores: Option<Vec<f64>>,
}

impl PredictionSet {
    pub fn new(
        truth: Vec<Labelset>,
        bipartition: Option<Vec<Labelset>>,
        scores: Option<Vec<Vec<f64>>>,
    ) -> Result<Self, EvalError> {
        let n = truth.len();
        if n == 0 {
            return Err(EvalError::NoInstances);
        }
        let k = truth[0].width();
        if k == 0 {
            return Err(EvalError::NoLabels);
        }
        if bipartition.is_none() && scores.is_none() {
            return Err(EvalError::NothingToEvaluate);
        }
        let shape = |what: &'static str, rows: usize, cols: usize| EvalError::Shape {
            what,
            found: format!("{rows}x{cols}"),
            expected: format!("{n}x{k}"),
        };
        for t in &truth {
            if t.width() != k {
                return Err(shape("truth", n, t.width()));
            }
        }
        if let Some(pred) = &bipartition {
            if pred.len() != n {
                return Err(shape("bipartition", pred.len(), k));
            }
            if let Some(p) = pred.iter().find(|p| p.width() != k) {
                return Err(shape("bipartition", n, p.width()));
            }
        }
        let scores = match scores {
            Some(rows) => {
                if rows.len() != n {
                    return Err(shape("scores", rows.len(), k));
                }
                let mut flat = Vec::with_capacity(n * k);
                for (row, values) in rows.into_iter().enumerate() {
                    if values.len() != k {
                        return Err(shape("scores", n, values.len()));
                    }
                    if let Some(label) = values.iter().position(|v| !v.is_finite()) {
                        return Err(EvalError::NonFiniteScore { row, label });
                    }
                    flat.extend(values);
                }
                Some(flat)
            }
            None => None,
        };
        Ok(PredictionSet {
            num_labels: k,
            truth,
            bipartition,
            scores,
        })
    }

    pub fn num_instances(&self) -> usize {
        self.truth.len()
    }

    pub fn num_labels(&self) -> usize {
        self.num_labels
    }

    pub fn truth(&self) -> &[Labelset] {
        &self.truth
    }

    pub fn bipartition(&self) -> Option<&[Labelset]> {
        self.bipartition.as_deref()
    }

    pub fn scores(&self, instance: usize) -> Option<&[f64]> {
        let k = self.num_labels;
        self.scores.as_ref().map(|s| &s[instance * k..(instance + 1) * k])
    }

    fn pairs(&self) -> Result<impl Iterator<Item = (&Labelset, &Labelset)>, EvalError> {
        let pred = self.bipartition.as_ref().ok_or(EvalError::MissingBipartition)?;
        Ok(self.truth.iter().zip(pred))
    }
}

/// Binary confusion counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConfusionCounts {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[cfg_attr(feature = "serde", serde(rename = "fn"))]
    pub fn_: usize,
}

impl ConfusionCounts {
    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }

    pub fn precision(&self) -> f64 {
        ratio_or_zero(self.tp, self.tp + self.fp)
    }

    pub fn recall(&self) -> f64 {
        ratio_or_zero(self.tp, self.tp + self.fn_)
    }

    pub fn f_measure(&self) -> f64 {
        f_measure(self.precision(), self.recall())
    }
}

impl core::ops::Add for ConfusionCounts {
    type Output = ConfusionCounts;

    fn add(self, rhs: Self) -> Self {
        ConfusionCounts {
            tp: self.tp + rhs.tp,
            fp: self.fp + rhs.fp,
            tn: self.tn + rhs.tn,
            fn_: self.fn_ + rhs.fn_,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExampleBased {
    pub hamming_loss: f64,
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub subset_accuracy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LabelBased {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
}

/// Ranking metrics. A metric is `None` when no instance qualifies for it:
/// instances with an empty truth are skipped by all four, and instances whose
/// truth holds every label are also skipped by ranking loss.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RankingMetrics {
    pub one_error: Option<f64>,
    pub ranking_loss: Option<f64>,
    pub coverage: Option<f64>,
    pub average_precision: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EvaluationReport {
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub example_based: Option<ExampleBased>,
    #[cfg_attr(feature = "serde", serde(rename = "macro", skip_serializing_if = "Option::is_none"))]
    pub macro_averaged: Option<LabelBased>,
    #[cfg_attr(feature = "serde", serde(rename = "micro", skip_serializing_if = "Option::is_none"))]
    pub micro_averaged: Option<LabelBased>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub ranking: Option<RankingMetrics>,
}

/// Mean fraction of mismatched label bits.
pub fn hamming_loss(p: &PredictionSet) -> Result<f64, EvalError> {
    let mismatches: usize = p
        .pairs()?
        .map(|(truth, pred)| truth.symmetric_difference_len(pred))
        .sum();
    Ok(mismatches as f64 / (p.num_instances() * p.num_labels) as f64)
}

pub fn example_based(p: &PredictionSet) -> Result<ExampleBased, EvalError> {
    let n = p.num_instances() as f64;
    let (mut accuracy, mut precision, mut recall, mut f, mut subset) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (truth, pred) in p.pairs()? {
        let both = truth.intersection_len(pred);
        let union = truth.union_len(pred);
        let prec = ratio_or_zero(both, pred.len());
        let rec = ratio_or_zero(both, truth.len());
        accuracy += if union == 0 { 1.0 } else { both as f64 / union as f64 };
        precision += prec;
        recall += rec;
        f += f_measure(prec, rec);
        if truth == pred {
            subset += 1.0;
        }
    }
    Ok(ExampleBased {
        hamming_loss: hamming_loss(p)?,
        accuracy: accuracy / n,
        precision: precision / n,
        recall: recall / n,
        f_measure: f / n,
        subset_accuracy: subset / n,
    })
}

/// Confusion counts of every label, in label order.
pub fn label_confusion(p: &PredictionSet) -> Result<Vec<ConfusionCounts>, EvalError> {
    let mut counts = alloc::vec![ConfusionCounts::default(); p.num_labels];
    for (truth, pred) in p.pairs()? {
        for (l, c) in counts.iter_mut().enumerate() {
            match (truth.contains(l), pred.contains(l)) {
                (true, true) => c.tp += 1,
                (false, true) => c.fp += 1,
                (false, false) => c.tn += 1,
                (true, false) => c.fn_ += 1,
            }
        }
    }
    Ok(counts)
}

/// Macro and micro averaged precision, recall and F-measure.
pub fn label_based(p: &PredictionSet) -> Result<(LabelBased, LabelBased), EvalError> {
    let counts = label_confusion(p)?;
    let k = counts.len() as f64;
    let macro_averaged = LabelBased {
        precision: counts.iter().map(ConfusionCounts::precision).sum::<f64>() / k,
        recall: counts.iter().map(ConfusionCounts::recall).sum::<f64>() / k,
        f_measure: counts.iter().map(ConfusionCounts::f_measure).sum::<f64>() / k,
    };
    let pooled = counts.iter().fold(ConfusionCounts::default(), |acc, &c| acc + c);
    let micro_averaged = LabelBased {
        precision: pooled.precision(),
        recall: pooled.recall(),
        f_measure: pooled.f_measure(),
    };
    Ok((macro_averaged, micro_averaged))
}

/// 1-based rank of every label: descending score, ties by ascending label index.
pub fn label_ranks(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    let mut ranks = alloc::vec![0; scores.len()];
    for (position, &label) in order.iter().enumerate() {
        ranks[label] = position + 1;
    }
    ranks
}

pub fn ranking_metrics(p: &PredictionSet) -> Result<RankingMetrics, EvalError> {
    if p.scores.is_none() {
        return Err(EvalError::MissingScores);
    }
    let k = p.num_labels;
    let mut one_error = Average::default();
    let mut ranking_loss = Average::default();
    let mut coverage = Average::default();
    let mut average_precision = Average::default();

    for (i, truth) in p.truth.iter().enumerate() {
        let relevant = truth.len();
        if relevant == 0 {
            continue;
        }
        let ranks = label_ranks(p.scores(i).unwrap_or_default());
        let top = ranks.iter().position(|&r| r == 1).unwrap_or(0);
        one_error.push(if truth.contains(top) { 0.0 } else { 1.0 });

        let deepest = truth.iter().map(|l| ranks[l]).max().unwrap_or(1);
        coverage.push((deepest - 1) as f64);

        let precision_sum: f64 = truth
            .iter()
            .map(|l| {
                let above = truth.iter().filter(|&m| ranks[m] <= ranks[l]).count();
                above as f64 / ranks[l] as f64
            })
            .sum();
        average_precision.push(precision_sum / relevant as f64);

        if relevant < k {
            let misordered = truth
                .iter()
                .map(|t| (0..k).filter(|&f| !truth.contains(f) && ranks[f] < ranks[t]).count())
                .sum::<usize>();
            ranking_loss.push(misordered as f64 / (relevant * (k - relevant)) as f64);
        }
    }

    Ok(RankingMetrics {
        one_error: one_error.mean(),
        ranking_loss: ranking_loss.mean(),
        coverage: coverage.mean(),
        average_precision: average_precision.mean(),
    })
}

#[derive(Default)]
struct Average {
    sum: f64,
    count: usize,
}

impl Average {
    fn push(&mut self, v: f64) {
        self.sum += v;
        self.count += 1;
    }

    fn mean(&self) -> Option<f64> {
        (self.count > 0).then(|| self.sum / self.count as f64)
    }
}

/// Every metric family the prediction set supports.
pub fn evaluate(p: &PredictionSet) -> EvaluationReport {
    let bipartite = p.bipartition.is_some();
    let (macro_averaged, micro_averaged) = match bipartite {
        true => label_based(p).ok().unzip(),
        false => (None, None),
    };
    EvaluationReport {
        example_based: example_based(p).ok(),
        macro_averaged,
        micro_averaged,
        ranking: ranking_metrics(p).ok(),
    }
}

impl core::fmt::Display for EvaluationReport {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let mut line = |name: &str, value: Option<f64>| -> core::fmt::Result {
            match value {
                Some(v) => writeln!(f, "{name:<28}{v:.6}"),
                None => writeln!(f, "{name:<28}n/a"),
            }
        };
        if let Some(e) = &self.example_based {
            line("hamming_loss", Some(e.hamming_loss))?;
            line("accuracy", Some(e.accuracy))?;
            line("precision", Some(e.precision))?;
            line("recall", Some(e.recall))?;
            line("f_measure", Some(e.f_measure))?;
            line("subset_accuracy", Some(e.subset_accuracy))?;
        }
        for (prefix, block) in [("macro", &self.macro_averaged), ("micro", &self.micro_averaged)] {
            if let Some(b) = block {
                line(&join(prefix, "precision"), Some(b.precision))?;
                line(&join(prefix, "recall"), Some(b.recall))?;
                line(&join(prefix, "f_measure"), Some(b.f_measure))?;
            }
        }
        if let Some(r) = &self.ranking {
            line("one_error", r.one_error)?;
            line("ranking_loss", r.ranking_loss)?;
            line("coverage", r.coverage)?;
            line("average_precision", r.average_precision)?;
        }
        Ok(())
    }
}

fn join(prefix: &str, name: &str) -> String {
    format!("{prefix}_{name}")
}

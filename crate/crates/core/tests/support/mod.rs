//! Definition-level reference computations and random fixture generators.
//!
//! Everything here works on plain `Vec<Vec<bool>>` label matrices and
//! recomputes each quantity straight from its textbook definition, without
//! calling into the library's metric code.
#![allow(dead_code)]

use mltk_core::{AttributeMeta, DatasetParts, Labelset, MlDataset, Value};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type Bits = Vec<Vec<bool>>;

/// Random dataset with `n` rows, `f` numeric features and `k` labels.
/// Label probabilities are skewed so that some labels are rare.
pub fn random_dataset(seed: u64, n: usize, f: usize, k: usize) -> (MlDataset, Bits) {
    let mut rng = StdRng::seed_from_u64(seed);
    let probs: Vec<f64> = (0..k).map(|j| 0.7 / (j as f64 + 1.0) + 0.05).collect();
    let bits: Bits = (0..n)
        .map(|_| probs.iter().map(|&p| rng.gen_bool(p)).collect())
        .collect();
    let values = (0..n * f)
        .map(|_| {
            if rng.gen_bool(0.3) {
                Value::Numeric(0.0)
            } else {
                Value::Numeric(rng.gen_range(-5.0..5.0))
            }
        })
        .collect();
    let ds = MlDataset::new(DatasetParts {
        name: format!("random{seed}"),
        features: (0..f).map(|j| AttributeMeta::numeric(format!("x{j}"))).collect(),
        label_names: (0..k).map(|j| format!("y{j}")).collect(),
        values,
        labels: bits.iter().map(|b| Labelset::from_bits(b)).collect(),
        ..Default::default()
    })
    .expect("valid random dataset");
    (ds, bits)
}

/// The thirteen measures, computed from definitions.
#[derive(Debug, Clone)]
pub struct OracleMeasures {
    pub num_attributes: usize,
    pub num_inputs: usize,
    pub num_labels: usize,
    pub num_instances: usize,
    pub num_labelsets: usize,
    pub num_single_labelsets: usize,
    pub max_frequency: usize,
    pub cardinality: f64,
    pub density: f64,
    pub mean_ir: Option<f64>,
    pub scumble: f64,
    pub scumble_cv: f64,
    pub tcs: f64,
    pub scumble_per_instance: Vec<f64>,
    pub irlbl: Vec<Option<f64>>,
}

pub fn oracle_measures(bits: &Bits, f: usize) -> OracleMeasures {
    let n = bits.len();
    let k = bits[0].len();

    // distinct labelsets by linear search
    let mut distinct: Vec<(Vec<bool>, usize)> = Vec::new();
    for row in bits {
        match distinct.iter_mut().find(|(key, _)| key == row) {
            Some((_, c)) => *c += 1,
            None => distinct.push((row.clone(), 1)),
        }
    }

    let mut relevant = 0usize;
    for row in bits {
        for &b in row {
            if b {
                relevant += 1;
            }
        }
    }
    let cardinality = relevant as f64 / n as f64;

    let count = |j: usize| bits.iter().filter(|row| row[j]).count();
    let max_count = (0..k).map(count).max().unwrap();
    let irlbl: Vec<Option<f64>> = (0..k)
        .map(|j| {
            let c = count(j);
            if c == 0 {
                None
            } else {
                Some(max_count as f64 / c as f64)
            }
        })
        .collect();
    let defined: Vec<f64> = irlbl.iter().flatten().copied().collect();
    let mean_ir = if defined.is_empty() {
        None
    } else {
        Some(defined.iter().sum::<f64>() / defined.len() as f64)
    };

    let per_instance: Vec<f64> = bits
        .iter()
        .map(|row| {
            let active: Vec<f64> = (0..k).filter(|&j| row[j]).map(|j| irlbl[j].unwrap()).collect();
            if active.is_empty() {
                return 0.0;
            }
            let product: f64 = active.iter().product();
            let geometric = product.powf(1.0 / active.len() as f64);
            let arithmetic = active.iter().sum::<f64>() / active.len() as f64;
            1.0 - geometric / arithmetic
        })
        .collect();
    let scumble = per_instance.iter().sum::<f64>() / n as f64;
    let scumble_cv = if scumble == 0.0 {
        0.0
    } else {
        let var = per_instance.iter().map(|s| (s - scumble).powi(2)).sum::<f64>() / n as f64;
        var.sqrt() / scumble
    };

    OracleMeasures {
        num_attributes: f + k,
        num_inputs: f,
        num_labels: k,
        num_instances: n,
        num_labelsets: distinct.len(),
        num_single_labelsets: distinct.iter().filter(|(_, c)| *c == 1).count(),
        max_frequency: distinct.iter().map(|(_, c)| *c).max().unwrap(),
        cardinality,
        density: cardinality / k as f64,
        mean_ir,
        scumble,
        scumble_cv,
        tcs: ((f * k * distinct.len()) as f64).ln(),
        scumble_per_instance: per_instance,
        irlbl,
    }
}

/// Random truth, bipartition and score matrices.
pub fn random_predictions(seed: u64, n: usize, k: usize) -> (Bits, Bits, Vec<Vec<f64>>) {
    let mut rng = StdRng::seed_from_u64(seed);
    let truth: Bits = (0..n).map(|_| (0..k).map(|_| rng.gen_bool(0.4)).collect()).collect();
    let pred: Bits = (0..n).map(|_| (0..k).map(|_| rng.gen_bool(0.4)).collect()).collect();
    // coarse scores so that ties occur
    let scores = (0..n)
        .map(|_| (0..k).map(|_| rng.gen_range(0..5) as f64 / 4.0).collect())
        .collect();
    (truth, pred, scores)
}

pub fn to_sets(bits: &Bits) -> Vec<Labelset> {
    bits.iter().map(|b| Labelset::from_bits(b)).collect()
}

#[derive(Debug, Clone, Default)]
pub struct OracleEval {
    pub hamming_loss: f64,
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub subset_accuracy: f64,
    pub macro_p: f64,
    pub macro_r: f64,
    pub macro_f: f64,
    pub micro_p: f64,
    pub micro_r: f64,
    pub micro_f: f64,
}

fn div0(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        0.0
    } else {
        a / b
    }
}

fn harmonic(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

pub fn oracle_bipartition(truth: &Bits, pred: &Bits) -> OracleEval {
    let n = truth.len();
    let k = truth[0].len();
    let mut o = OracleEval::default();
    for (t, p) in truth.iter().zip(pred) {
        let mut inter = 0.0;
        let mut uni = 0.0;
        let mut diff = 0.0;
        let mut t_size = 0.0;
        let mut p_size = 0.0;
        for j in 0..k {
            if t[j] && p[j] {
                inter += 1.0;
            }
            if t[j] || p[j] {
                uni += 1.0;
            }
            if t[j] != p[j] {
                diff += 1.0;
            }
            if t[j] {
                t_size += 1.0;
            }
            if p[j] {
                p_size += 1.0;
            }
        }
        o.hamming_loss += diff / k as f64;
        o.accuracy += if uni == 0.0 { 1.0 } else { inter / uni };
        let prec = div0(inter, p_size);
        let rec = div0(inter, t_size);
        o.precision += prec;
        o.recall += rec;
        o.f_measure += harmonic(prec, rec);
        if t == p {
            o.subset_accuracy += 1.0;
        }
    }
    let nf = n as f64;
    o.hamming_loss /= nf;
    o.accuracy /= nf;
    o.precision /= nf;
    o.recall /= nf;
    o.f_measure /= nf;
    o.subset_accuracy /= nf;

    let (mut tp_all, mut fp_all, mut fn_all) = (0.0, 0.0, 0.0);
    for j in 0..k {
        let tp = (0..n).filter(|&i| truth[i][j] && pred[i][j]).count() as f64;
        let fp = (0..n).filter(|&i| !truth[i][j] && pred[i][j]).count() as f64;
        let fneg = (0..n).filter(|&i| truth[i][j] && !pred[i][j]).count() as f64;
        let p = div0(tp, tp + fp);
        let r = div0(tp, tp + fneg);
        o.macro_p += p / k as f64;
        o.macro_r += r / k as f64;
        o.macro_f += harmonic(p, r) / k as f64;
        tp_all += tp;
        fp_all += fp;
        fn_all += fneg;
    }
    o.micro_p = div0(tp_all, tp_all + fp_all);
    o.micro_r = div0(tp_all, tp_all + fn_all);
    o.micro_f = harmonic(o.micro_p, o.micro_r);
    o
}

/// `true` when label `a` is ranked above label `b` (higher score, ties to lower index).
fn above(scores: &[f64], a: usize, b: usize) -> bool {
    scores[a] > scores[b] || (scores[a] == scores[b] && a < b)
}

fn rank(scores: &[f64], l: usize) -> usize {
    1 + (0..scores.len()).filter(|&m| m != l && above(scores, m, l)).count()
}

#[derive(Debug, Clone, Default)]
pub struct OracleRanking {
    pub one_error: Option<f64>,
    pub ranking_loss: Option<f64>,
    pub coverage: Option<f64>,
    pub average_precision: Option<f64>,
}

pub fn oracle_ranking(truth: &Bits, scores: &[Vec<f64>]) -> OracleRanking {
    let k = truth[0].len();
    let mut acc = [(0.0, 0usize); 4];
    for (t, s) in truth.iter().zip(scores) {
        let relevant: Vec<usize> = (0..k).filter(|&j| t[j]).collect();
        let irrelevant: Vec<usize> = (0..k).filter(|&j| !t[j]).collect();
        if relevant.is_empty() {
            continue;
        }
        let top = (0..k).find(|&j| rank(s, j) == 1).unwrap();
        acc[0].0 += if t[top] { 0.0 } else { 1.0 };
        acc[0].1 += 1;

        if !irrelevant.is_empty() {
            let mut bad = 0;
            for &a in &relevant {
                for &b in &irrelevant {
                    if above(s, b, a) {
                        bad += 1;
                    }
                }
            }
            acc[1].0 += bad as f64 / (relevant.len() * irrelevant.len()) as f64;
            acc[1].1 += 1;
        }

        let deepest = relevant.iter().map(|&l| rank(s, l)).max().unwrap();
        acc[2].0 += (deepest - 1) as f64;
        acc[2].1 += 1;

        let mut ap = 0.0;
        for &l in &relevant {
            let rl = rank(s, l);
            let hits = relevant.iter().filter(|&&m| rank(s, m) <= rl).count();
            ap += hits as f64 / rl as f64;
        }
        acc[3].0 += ap / relevant.len() as f64;
        acc[3].1 += 1;
    }
    let mean = |(sum, c): (f64, usize)| if c == 0 { None } else { Some(sum / c as f64) };
    OracleRanking {
        one_error: mean(acc[0]),
        ranking_loss: mean(acc[1]),
        coverage: mean(acc[2]),
        average_precision: mean(acc[3]),
    }
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

pub fn close_opt(a: Option<f64>, b: Option<f64>, tol: f64) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => close(a, b, tol),
        (None, None) => true,
        _ => false,
    }
}

/// Shape of the `seed`-th random characterization case: n <= 20, f <= 8, 2 <= k <= 5.
pub fn case_shape(seed: u64) -> (usize, usize, usize) {
    let mut rng = StdRng::seed_from_u64(seed ^ 0x5eed);
    (rng.gen_range(1..=20), rng.gen_range(1..=8), rng.gen_range(2..=5))
}

/// Compare every measure of the library against the oracle for one seed.
pub fn check_measures(seed: u64, tol: f64) -> Result<(), String> {
    let (n, f, k) = case_shape(seed);
    let (ds, bits) = random_dataset(seed, n, f, k);
    let got = mltk_core::measure_bundle(&ds);
    let want = oracle_measures(&bits, f);
    let ctx = |what: &str| format!("seed {seed} (n={n}, f={f}, k={k}): {what}");

    let counts = [
        ("num_attributes", got.num_attributes, want.num_attributes),
        ("num_inputs", got.num_inputs, want.num_inputs),
        ("num_labels", got.num_labels, want.num_labels),
        ("num_instances", got.num_instances, want.num_instances),
        ("num_labelsets", got.num_labelsets, want.num_labelsets),
        (
            "num_single_labelsets",
            got.num_single_labelsets,
            want.num_single_labelsets,
        ),
        ("max_frequency", got.max_frequency, want.max_frequency),
    ];
    for (what, g, w) in counts {
        if g != w {
            return Err(ctx(&format!("{what} {g} != {w}")));
        }
    }
    let reals = [
        ("cardinality", got.cardinality, want.cardinality),
        ("density", got.density, want.density),
        ("scumble", got.scumble, want.scumble),
        ("scumble_cv", got.scumble_cv, want.scumble_cv),
        ("tcs", got.tcs, want.tcs),
    ];
    for (what, g, w) in reals {
        if !close(g, w, tol) {
            return Err(ctx(&format!("{what} {g} != {w}")));
        }
    }
    if !close_opt(got.mean_ir, want.mean_ir, tol) {
        return Err(ctx(&format!("mean_ir {:?} != {:?}", got.mean_ir, want.mean_ir)));
    }
    for (j, stats) in mltk_core::label_stats(&ds).iter().enumerate() {
        if !close_opt(stats.irlbl, want.irlbl[j], tol) {
            return Err(ctx(&format!("irlbl[{j}] {:?} != {:?}", stats.irlbl, want.irlbl[j])));
        }
    }
    let per_instance = mltk_core::measures::scumble(&ds).per_instance.values;
    for (i, (g, w)) in per_instance.iter().zip(&want.scumble_per_instance).enumerate() {
        if !close(*g, *w, tol) {
            return Err(ctx(&format!("scumble of instance {i} {g} != {w}")));
        }
    }
    Ok(())
}

/// Shape of the `seed`-th random evaluation case: n <= 8, k <= 4.
pub fn eval_shape(seed: u64) -> (usize, usize) {
    let mut rng = StdRng::seed_from_u64(seed ^ 0xe7a1);
    (rng.gen_range(1..=8), rng.gen_range(1..=4))
}

/// Compare every evaluation metric against the oracles for one seed, and
/// check the Hamming loss bounds and rank invariance.
pub fn check_evaluation(seed: u64, tol: f64) -> Result<(), String> {
    use mltk_core::eval;

    let (n, k) = eval_shape(seed);
    let (truth, pred, scores) = random_predictions(seed, n, k);
    let ctx = |what: &str| format!("seed {seed} (n={n}, k={k}): {what}");
    let set = mltk_core::PredictionSet::new(to_sets(&truth), Some(to_sets(&pred)), Some(scores.clone()))
        .map_err(|e| ctx(&e.to_string()))?;
    let report = mltk_core::evaluate(&set);
    let want = oracle_bipartition(&truth, &pred);

    let ex = report
        .example_based
        .ok_or_else(|| ctx("missing example-based metrics"))?;
    let ma = report.macro_averaged.ok_or_else(|| ctx("missing macro metrics"))?;
    let mi = report.micro_averaged.ok_or_else(|| ctx("missing micro metrics"))?;
    let pairs = [
        ("hamming_loss", ex.hamming_loss, want.hamming_loss),
        ("accuracy", ex.accuracy, want.accuracy),
        ("precision", ex.precision, want.precision),
        ("recall", ex.recall, want.recall),
        ("f_measure", ex.f_measure, want.f_measure),
        ("subset_accuracy", ex.subset_accuracy, want.subset_accuracy),
        ("macro precision", ma.precision, want.macro_p),
        ("macro recall", ma.recall, want.macro_r),
        ("macro f", ma.f_measure, want.macro_f),
        ("micro precision", mi.precision, want.micro_p),
        ("micro recall", mi.recall, want.micro_r),
        ("micro f", mi.f_measure, want.micro_f),
    ];
    for (what, g, w) in pairs {
        if !close(g, w, tol) {
            return Err(ctx(&format!("{what} {g} != {w}")));
        }
    }
    if !(0.0..=1.0).contains(&ex.hamming_loss) {
        return Err(ctx(&format!("hamming loss {} out of [0, 1]", ex.hamming_loss)));
    }
    let bit_accuracy = truth
        .iter()
        .zip(&pred)
        .flat_map(|(t, p)| t.iter().zip(p).map(|(a, b)| (a == b) as usize))
        .sum::<usize>() as f64
        / (n * k) as f64;
    if !close(ex.hamming_loss + bit_accuracy, 1.0, tol) {
        return Err(ctx("hamming loss and bit accuracy do not sum to 1"));
    }

    let ranking = report.ranking.ok_or_else(|| ctx("missing ranking metrics"))?;
    let want = oracle_ranking(&truth, &scores);
    let pairs = [
        ("one_error", ranking.one_error, want.one_error),
        ("ranking_loss", ranking.ranking_loss, want.ranking_loss),
        ("coverage", ranking.coverage, want.coverage),
        ("average_precision", ranking.average_precision, want.average_precision),
    ];
    for (what, g, w) in pairs {
        if !close_opt(g, w, tol) {
            return Err(ctx(&format!("{what} {g:?} != {w:?}")));
        }
    }

    // a strictly increasing transform of the scores leaves every ranking metric unchanged
    let warped: Vec<Vec<f64>> = scores
        .iter()
        .map(|row| row.iter().map(|s| (3.0 * s).exp() - 7.0).collect())
        .collect();
    let warped_set =
        mltk_core::PredictionSet::new(to_sets(&truth), None, Some(warped)).map_err(|e| ctx(&e.to_string()))?;
    let again = eval::ranking_metrics(&warped_set).map_err(|e| ctx(&e.to_string()))?;
    if again != ranking {
        return Err(ctx("ranking metrics changed under a monotone score transform"));
    }
    for row in &scores {
        let ranks = eval::label_ranks(row);
        let mut sorted = ranks.clone();
        sorted.sort_unstable();
        if sorted != (1..=k).collect::<Vec<_>>() {
            return Err(ctx(&format!("ranks {ranks:?} are not a permutation of 1..={k}")));
        }
    }
    Ok(())
}

pub fn schemes() -> [mltk_core::Scheme; 3] {
    use mltk_core::Scheme;
    [
        Scheme::Holdout(60.0),
        Scheme::KFolds(5),
        Scheme::Ratios(vec![35.0, 25.0, 40.0]),
    ]
}

/// Disjointness, coverage, size balance and reproducibility of every
/// strategy and scheme on the `seed`-th random dataset.
pub fn check_partition_invariants(seed: u64) -> Result<(), String> {
    use mltk_core::{partition, PartitionSpec, Parts, Scheme, Strategy};

    let mut rng = StdRng::seed_from_u64(seed ^ 0x9a27);
    let n = rng.gen_range(5..=60);
    let k = rng.gen_range(2..=6);
    let (ds, _) = random_dataset(seed, n, 2, k);
    let targets = |scheme: &Scheme| -> Vec<f64> {
        match scheme {
            Scheme::Holdout(p) => vec![n as f64 * p / 100.0, n as f64 * (100.0 - p) / 100.0],
            Scheme::KFolds(f) => vec![n as f64 / *f as f64; *f],
            Scheme::Ratios(r) => r.iter().map(|r| n as f64 * r / 100.0).collect(),
        }
    };

    for strategy in Strategy::ALL {
        for scheme in schemes() {
            let ctx = |what: &str| format!("seed {seed} (n={n}, k={k}) {strategy} {scheme}: {what}");
            let spec = PartitionSpec::new(strategy, scheme.clone()).with_seed(seed);
            let set = partition(&ds, &spec).map_err(|e| ctx(&e.to_string()))?;
            if partition(&ds, &spec).map_err(|e| ctx(&e.to_string()))? != set {
                return Err(ctx("re-run differs"));
            }

            let disjoint: Vec<&[usize]> = match &set.parts {
                Parts::Ratios(parts) => parts.iter().map(Vec::as_slice).collect(),
                Parts::Folds(folds) => {
                    for fold in folds {
                        let mut both: Vec<usize> = fold.train.iter().chain(&fold.test).copied().collect();
                        both.sort_unstable();
                        if both != (0..n).collect::<Vec<_>>() {
                            return Err(ctx("a fold's train and test do not partition the instances"));
                        }
                    }
                    match scheme {
                        Scheme::Holdout(_) => vec![folds[0].train.as_slice(), folds[0].test.as_slice()],
                        _ => folds.iter().map(|f| f.test.as_slice()).collect(),
                    }
                }
            };
            let mut seen = vec![0usize; n];
            for group in &disjoint {
                if group.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(ctx("index list not strictly ascending"));
                }
                for &i in group.iter() {
                    if i >= n {
                        return Err(ctx(&format!("index {i} out of range")));
                    }
                    seen[i] += 1;
                }
            }
            if seen.iter().any(|&c| c != 1) {
                return Err(ctx("parts are not a disjoint cover"));
            }
            for (group, exact) in disjoint.iter().zip(targets(&scheme)) {
                if (group.len() as f64 - exact).abs() >= 1.0 {
                    return Err(ctx(&format!("part of size {} for exact share {exact}", group.len())));
                }
            }
            if let Scheme::KFolds(_) = scheme {
                let sizes: Vec<usize> = disjoint.iter().map(|g| g.len()).collect();
                if sizes.iter().max().unwrap() - sizes.iter().min().unwrap() > 1 {
                    return Err(ctx(&format!("fold sizes {sizes:?} differ by more than one")));
                }
            }
        }
    }
    Ok(())
}

/// Dataset with strongly skewed label frequencies and correlated labels.
pub fn skewed_dataset(seed: u64, n: usize, k: usize) -> MlDataset {
    let mut rng = StdRng::seed_from_u64(seed);
    let bits: Bits = (0..n)
        .map(|_| {
            let mut row = vec![false; k];
            for j in 0..k {
                let base = 0.5 / (1.0 + j as f64).powf(1.5);
                let boost = if j > 0 && row[j - 1] { 0.25 } else { 0.0 };
                row[j] = rng.gen_bool((base + boost).min(0.95));
            }
            row
        })
        .collect();
    MlDataset::new(DatasetParts {
        name: format!("skewed{seed}"),
        features: vec![AttributeMeta::numeric("x")],
        label_names: (0..k).map(|j| format!("y{j}")).collect(),
        values: (0..n).map(|i| Value::Numeric(i as f64)).collect(),
        labels: to_sets(&bits),
        ..Default::default()
    })
    .expect("valid skewed dataset")
}

/// Mean label proportion deviation per strategy over the fixed corpus:
/// 30 skewed datasets of 200 instances and 6 labels, each split by 5 folds
/// and by a 60/40 hold-out.
pub fn stratification_quality() -> [(mltk_core::Strategy, f64); 3] {
    use mltk_core::partition::label_proportion_deviation;
    use mltk_core::{partition, PartitionSpec, Scheme, Strategy};

    let corpus: Vec<MlDataset> = (0..30).map(|s| skewed_dataset(1000 + s, 200, 6)).collect();
    Strategy::ALL.map(|strategy| {
        let mut total = 0.0;
        let mut runs = 0;
        for ds in &corpus {
            for scheme in [Scheme::KFolds(5), Scheme::Holdout(60.0)] {
                let set = partition(ds, &PartitionSpec::new(strategy, scheme)).expect("partition");
                total += label_proportion_deviation(ds, &set.groups());
                runs += 1;
            }
        }
        (strategy, total / runs as f64)
    })
}

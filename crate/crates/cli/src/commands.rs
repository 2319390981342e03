use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sslda::simlab::{run_experiment, sparsity_sweep, ExperimentSpec, MethodSummary};
use sslda::{
    evaluate, fit, fit_cv, Class, DiscriminantModel, FitOptions, Flavor, FoldAssignment,
    MetricsReport,
};

use crate::data::{read_dataset, write_predictions, CsvOptions};
use crate::failure::{input, numerical, Failure};
use crate::report::{pct, ratio, RunReport};

/// Share of failed replications above which a run exits with status 3.
const MAX_FAILURE_FRACTION: f64 = 0.10;

pub fn load_spec(path: &Path) -> Result<ExperimentSpec, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let is_toml = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("toml"));
    let spec: ExperimentSpec = if is_toml {
        toml::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))?
    } else {
        serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))?
    };
    spec.validate()
        .map_err(|e| input(format!("{}: {e}", path.display())))?;
    Ok(spec)
}

fn ensure_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| input(format!("{}: {e}", dir.display())))
}

fn spec_value(spec: &ExperimentSpec) -> Option<serde_json::Value> {
    serde_json::to_value(spec).ok()
}

fn sd_cell(sd: Option<f64>) -> String {
    sd.map(pct).unwrap_or_default()
}

fn check_failures(summaries: &[MethodSummary]) -> Result<(), Failure> {
    for s in summaries {
        let total = s.completed + s.failed;
        if total > 0 && s.failed as f64 / total as f64 > MAX_FAILURE_FRACTION {
            return Err(numerical(format!(
                "{} failed in {} of {total} replications",
                s.method, s.failed
            )));
        }
    }
    Ok(())
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
    let io = |e: csv::Error| input(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row).map_err(io)?;
    }
    w.flush()
        .map_err(|e| input(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct SimulateResults {
    bayes_error_pct: f64,
    summaries: Vec<MethodSummary>,
    replications: Vec<sslda::simlab::ReplicationResult>,
}

pub fn simulate(spec_path: &Path, out: &Path, seed: Option<u64>) -> Result<(), Failure> {
    let started = Instant::now();
    let mut spec = load_spec(spec_path)?;
    if let Some(seed) = seed {
        spec.base_seed = seed;
    }
    ensure_dir(out)?;
    let outcome = run_experiment(&spec)?;

    let rows: Vec<Vec<String>> = outcome
        .summaries
        .iter()
        .map(|s| {
            vec![
                spec.law.label().to_string(),
                spec.cov.label().to_string(),
                spec.p.to_string(),
                s.method.to_string(),
                pct(s.mean_error_pct),
                sd_cell(s.sd_pct),
                spec.reps.to_string(),
            ]
        })
        .collect();
    write_csv(
        &out.join("results.csv"),
        &[
            "distribution",
            "model",
            "p",
            "method",
            "mean_error_pct",
            "sd_pct",
            "reps",
        ],
        &rows,
    )?;
    let results = SimulateResults {
        bayes_error_pct: 100.0 * outcome.bayes_error,
        summaries: outcome.summaries.clone(),
        replications: outcome.replications.clone(),
    };
    RunReport::new(started, Some(spec.base_seed), spec_value(&spec), results)
        .write(&out.join("results.json"))?;

    println!("bayes error {}%", pct(100.0 * outcome.bayes_error));
    for s in &outcome.summaries {
        println!(
            "{:<10} {}% ({})",
            s.method.to_string(),
            pct(s.mean_error_pct),
            sd_cell(s.sd_pct)
        );
    }
    check_failures(&outcome.summaries)
}

pub fn parse_s0_list(text: &str) -> Result<Vec<usize>, Failure> {
    let items: Vec<&str> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if items.is_empty() {
        return Err(input("the s0 list is empty"));
    }
    items
        .iter()
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| input(format!("s0 list: {s:?} is not a non-negative integer")))
        })
        .collect()
}

pub fn sweep(spec_path: &Path, s0: &str, out: &Path, seed: Option<u64>) -> Result<(), Failure> {
    let started = Instant::now();
    let values = parse_s0_list(s0)?;
    let mut spec = load_spec(spec_path)?;
    if let Some(seed) = seed {
        spec.base_seed = seed;
    }
    for &v in &values {
        if v == 0 || v > spec.p {
            return Err(input(format!("s0 = {v} must lie in 1..={}", spec.p)));
        }
    }
    ensure_dir(out)?;
    let rows = sparsity_sweep(&spec, &values)?;
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                spec.law.label().to_string(),
                spec.cov.label().to_string(),
                spec.p.to_string(),
                r.s0.to_string(),
                r.method.to_string(),
                pct(r.mean_error_pct),
                sd_cell(r.sd_pct),
                spec.reps.to_string(),
                pct(r.bayes_error_pct),
            ]
        })
        .collect();
    write_csv(
        &out.join("curve.csv"),
        &[
            "distribution",
            "model",
            "p",
            "s0",
            "method",
            "mean_error_pct",
            "sd_pct",
            "reps",
            "bayes_error_pct",
        ],
        &cells,
    )?;
    RunReport::new(started, Some(spec.base_seed), spec_value(&spec), &rows)
        .write(&out.join("sweep.json"))?;
    for r in &rows {
        println!(
            "s0={:<4} {:<10} {}% ({})",
            r.s0,
            r.method.to_string(),
            pct(r.mean_error_pct),
            sd_cell(r.sd_pct)
        );
    }
    let summaries: Vec<MethodSummary> = rows
        .iter()
        .map(|r| MethodSummary {
            method: r.method,
            mean_error_pct: r.mean_error_pct,
            sd_pct: r.sd_pct,
            completed: r.completed,
            failed: r.failed,
        })
        .collect();
    check_failures(&summaries)
}

pub enum Tuning {
    Fixed(f64),
    CrossValidated {
        folds: usize,
        grid_size: usize,
        seed: u64,
    },
}

pub fn fit_command(
    data: &Path,
    flavor: Flavor,
    tuning: Tuning,
    ridge: Option<f64>,
    out: &Path,
    csv: CsvOptions,
) -> Result<(), Failure> {
    let dataset = read_dataset(data, csv)?;
    let (s1, s2) = dataset.class_samples()?;
    let opts = FitOptions {
        ridge,
        ..FitOptions::default()
    };
    let model = match tuning {
        Tuning::Fixed(lambda) => fit(&s1, &s2, lambda, flavor, &opts)?,
        Tuning::CrossValidated {
            folds,
            grid_size,
            seed,
        } => fit_cv(&s1, &s2, flavor, folds, grid_size, seed, &opts)?.0,
    };
    let text = serde_json::to_string_pretty(&model)
        .map_err(|e| input(format!("serialising model: {e}")))?;
    fs::write(out, text + "\n").map_err(|e| input(format!("{}: {e}", out.display())))?;
    println!(
        "flavor={} lambda={} support={}",
        model.flavor,
        model.lambda,
        model.support_size()
    );
    let selected: Vec<String> = (0..model.p())
        .filter(|&j| model.gamma[j] != 0.0)
        .map(|j| match &dataset.column_names {
            Some(names) => names[j].clone(),
            None => format!("column{}", j + 1),
        })
        .collect();
    println!("selected={}", selected.join(","));
    Ok(())
}

pub fn load_model(path: &Path) -> Result<DiscriminantModel, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

pub fn print_metrics(m: &MetricsReport) {
    println!("specificity {}", ratio(m.specificity));
    println!("sensitivity {}", ratio(m.sensitivity));
    println!("precision   {}", ratio(m.precision));
    println!("accuracy    {}", ratio(m.accuracy));
    println!("misclassification_rate {}", ratio(m.misclassification_rate));
}

pub fn predict_command(
    model_path: &Path,
    data: &Path,
    out: &Path,
    report: Option<&PathBuf>,
    csv: CsvOptions,
) -> Result<(), Failure> {
    let started = Instant::now();
    let model = load_model(model_path)?;
    let dataset = read_dataset(data, csv)?;
    if dataset.p() != model.p() {
        return Err(input(format!(
            "{} has {} feature columns but the model expects {}",
            data.display(),
            dataset.p(),
            model.p()
        )));
    }
    let x = dataset.features.data();
    let predicted = model.predict_rows(x);
    let scores: Vec<f64> = (0..dataset.n())
        .map(|i| model.score(&dataset.features.row(i)))
        .collect();
    write_predictions(out, &predicted, &scores)?;
    println!("predicted {} rows", predicted.len());

    let metrics = match &dataset.labels {
        Some(truth) => {
            let m = evaluate(&predicted, truth)?;
            print_metrics(&m);
            Some(m)
        }
        None => None,
    };
    if let Some(path) = report {
        RunReport::new(started, None, None, &metrics).write(path)?;
    }
    Ok(())
}

/// Mean and sample standard deviation over the defined values.
fn mean_sd(values: impl Iterator<Item = f64>) -> (f64, Option<f64>, usize) {
    let v: Vec<f64> = values.filter(|x| !x.is_nan()).collect();
    if v.is_empty() {
        return (f64::NAN, None, 0);
    }
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    let sd = (v.len() >= 2)
        .then(|| (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (v.len() - 1) as f64).sqrt());
    (mean, sd, v.len())
}

#[derive(Serialize)]
pub struct HoldoutSplit {
    pub split: usize,
    pub seed: u64,
    pub lambda: f64,
    pub support: usize,
    pub metrics: MetricsReport,
}

#[derive(Serialize)]
pub struct MetricSummary {
    pub metric: &'static str,
    pub mean: f64,
    pub sd: Option<f64>,
    pub defined_splits: usize,
}

#[derive(Serialize)]
struct HoldoutResults<'a> {
    flavor: Flavor,
    splits: usize,
    summary: &'a [MetricSummary],
    per_split: &'a [HoldoutSplit],
}

#[derive(Serialize)]
pub struct HoldoutArgs {
    pub flavor: Flavor,
    pub splits: usize,
    pub folds: usize,
    pub grid_size: usize,
    pub seed: u64,
}

/// Repeated stratified 50/50 splits: fit with cross-validation on one half,
/// score on the other. Split `i` uses seed `seed + i` for both the split and
/// the folds.
pub fn holdout(
    data: &Path,
    args: &HoldoutArgs,
    out: &Path,
    csv: CsvOptions,
) -> Result<(), Failure> {
    let started = Instant::now();
    if args.splits == 0 {
        return Err(input("--splits must be positive"));
    }
    let dataset = read_dataset(data, csv)?;
    let (rows1, rows2) = dataset.class_rows()?;
    for (code, rows) in [(1, &rows1), (2, &rows2)] {
        if rows.len() < 4 {
            return Err(input(format!(
                "class {code} has {} row(s); a 50/50 split needs at least 4",
                rows.len()
            )));
        }
    }
    ensure_dir(out)?;

    let mut per_split = Vec::with_capacity(args.splits);
    for split in 0..args.splits {
        let seed = args.seed.wrapping_add(split as u64);
        let halves = FoldAssignment::stratified(rows1.len(), rows2.len(), 2, seed)?;
        let pick = |rows: &[usize], idx: &[usize]| idx.iter().map(|&i| rows[i]).collect::<Vec<_>>();
        let train1 = dataset
            .features
            .select_rows(&pick(&rows1, &halves.class1_folds[1]));
        let train2 = dataset
            .features
            .select_rows(&pick(&rows2, &halves.class2_folds[1]));
        let test1 = pick(&rows1, &halves.class1_folds[0]);
        let test2 = pick(&rows2, &halves.class2_folds[0]);

        let (model, _) = fit_cv(
            &train1,
            &train2,
            args.flavor,
            args.folds,
            args.grid_size,
            seed,
            &FitOptions::default(),
        )?;
        let test: Vec<usize> = test1.iter().chain(&test2).copied().collect();
        let predicted = model.predict_rows(dataset.features.select_rows(&test).data());
        let truth: Vec<Class> = test1
            .iter()
            .map(|_| Class::First)
            .chain(test2.iter().map(|_| Class::Second))
            .collect();
        let metrics = evaluate(&predicted, &truth)?;
        per_split.push(HoldoutSplit {
            split,
            seed,
            lambda: model.lambda,
            support: model.support_size(),
            metrics,
        });
    }

    type Getter = fn(&MetricsReport) -> f64;
    let metrics: [(&'static str, Getter); 4] = [
        ("specificity", |m| m.specificity),
        ("sensitivity", |m| m.sensitivity),
        ("precision", |m| m.precision),
        ("accuracy", |m| m.accuracy),
    ];
    let summary: Vec<MetricSummary> = metrics
        .iter()
        .map(|(name, get)| {
            let (mean, sd, defined_splits) = mean_sd(per_split.iter().map(|s| get(&s.metrics)));
            MetricSummary {
                metric: name,
                mean,
                sd,
                defined_splits,
            }
        })
        .collect();

    let rows: Vec<Vec<String>> = summary
        .iter()
        .map(|s| {
            vec![
                s.metric.to_string(),
                ratio(s.mean),
                s.sd.map(ratio).unwrap_or_default(),
            ]
        })
        .collect();
    write_csv(&out.join("holdout.csv"), &["metric", "mean", "sd"], &rows)?;
    let results = HoldoutResults {
        flavor: args.flavor,
        splits: args.splits,
        summary: &summary,
        per_split: &per_split,
    };
    RunReport::new(
        started,
        Some(args.seed),
        serde_json::to_value(args).ok(),
        &results,
    )
    .write(&out.join("holdout.json"))?;
    for s in &summary {
        println!(
            "{:<11} {} ({})",
            s.metric,
            ratio(s.mean),
            s.sd.map(ratio).unwrap_or_default()
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summary(completed: usize, failed: usize) -> MethodSummary {
        MethodSummary {
            method: Flavor::Sslda,
            mean_error_pct: 1.0,
            sd_pct: None,
            completed,
            failed,
        }
    }

    #[test]
    fn failure_threshold_is_ten_percent() {
        assert!(check_failures(&[summary(9, 1)]).is_ok());
        let err = check_failures(&[summary(20, 0), summary(17, 3)]).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn s0_lists() {
        assert_eq!(parse_s0_list("5, 10,20").unwrap(), vec![5, 10, 20]);
        assert!(parse_s0_list("").is_err());
        assert!(parse_s0_list(" , ").is_err());
        assert!(parse_s0_list("3,x").is_err());
    }

    #[test]
    fn mean_sd_skips_undefined_values() {
        let (mean, sd, n) = mean_sd([1.0, f64::NAN, 3.0].into_iter());
        assert_eq!((mean, n), (2.0, 2));
        assert_eq!(sd, Some(2.0f64.sqrt()));
        assert!(mean_sd(std::iter::empty()).0.is_nan());
    }
}

//! CSV ingestion: comma-separated, optional header, numeric cells, class
//! labels 1/2 in a column named `label` or in the last column.

use std::path::Path;

use sslda::{Class, Sample};

use crate::failure::{input, Failure};

#[derive(Debug, Clone, Copy, Default)]
pub struct CsvOptions {
    pub no_header: bool,
    pub label_last: bool,
}

#[derive(Debug, Clone)]
pub struct LabeledDataset {
    pub features: Sample,
    pub labels: Option<Vec<Class>>,
    pub column_names: Option<Vec<String>>,
}

impl LabeledDataset {
    pub fn n(&self) -> usize {
        self.features.n()
    }

    pub fn p(&self) -> usize {
        self.features.p()
    }

    pub fn labels(&self) -> Result<&[Class], Failure> {
        self.labels
            .as_deref()
            .ok_or_else(|| input("no label column: name one `label` or pass --label-last"))
    }

    /// Row indices of each class, in file order.
    pub fn class_rows(&self) -> Result<(Vec<usize>, Vec<usize>), Failure> {
        let labels = self.labels()?;
        let pick = |c: Class| {
            labels
                .iter()
                .enumerate()
                .filter(|(_, l)| **l == c)
                .map(|(i, _)| i)
                .collect::<Vec<_>>()
        };
        Ok((pick(Class::First), pick(Class::Second)))
    }

    /// The two class samples; each class needs at least two rows.
    pub fn class_samples(&self) -> Result<(Sample, Sample), Failure> {
        let (rows1, rows2) = self.class_rows()?;
        for (code, rows) in [(1, &rows1), (2, &rows2)] {
            if rows.len() < 2 {
                return Err(input(format!(
                    "class {code} has {} row(s); fitting needs at least 2 per class",
                    rows.len()
                )));
            }
        }
        Ok((
            self.features.select_rows(&rows1),
            self.features.select_rows(&rows2),
        ))
    }
}

pub fn read_dataset(path: &Path, opts: CsvOptions) -> Result<LabeledDataset, Failure> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(!opts.no_header)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| input(format!("{}: {e}", path.display())))?;

    let header: Option<Vec<String>> = if opts.no_header {
        None
    } else {
        let h = reader
            .headers()
            .map_err(|e| input(format!("{}: {e}", path.display())))?;
        Some(h.iter().map(str::to_owned).collect())
    };

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut labels: Vec<Class> = Vec::new();
    let mut label_col: Option<usize> = None;
    let mut width: Option<usize> = None;
    for record in reader.records() {
        let record = record.map_err(|e| input(format!("{}: {e}", path.display())))?;
        let line = record.position().map_or(0, |p| p.line());
        let w = *width.get_or_insert(record.len());
        if record.len() != w {
            return Err(input(format!(
                "{}: row {line} has {} columns, expected {w}",
                path.display(),
                record.len()
            )));
        }
        if label_col.is_none() && rows.is_empty() {
            label_col = label_column(header.as_deref(), w, opts)?;
        }
        let mut row = Vec::with_capacity(w);
        for (c, cell) in record.iter().enumerate() {
            if Some(c) == label_col {
                labels.push(parse_label(cell).ok_or_else(|| {
                    input(format!(
                        "{}: row {line}, column {}: label must be 1 or 2, got {cell:?}",
                        path.display(),
                        c + 1
                    ))
                })?);
                continue;
            }
            let v: f64 = cell
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| {
                    input(format!(
                        "{}: row {line}, column {}: expected a finite number, got {cell:?}",
                        path.display(),
                        c + 1
                    ))
                })?;
            row.push(v);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(input(format!("{}: no data rows", path.display())));
    }
    if rows[0].is_empty() {
        return Err(input(format!("{}: no feature columns", path.display())));
    }
    let features =
        Sample::from_rows(&rows).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let column_names = header.map(|h| {
        h.into_iter()
            .enumerate()
            .filter(|(c, _)| Some(*c) != label_col)
            .map(|(_, name)| name)
            .collect()
    });
    Ok(LabeledDataset {
        features,
        labels: label_col.map(|_| labels),
        column_names,
    })
}

fn label_column(
    header: Option<&[String]>,
    width: usize,
    opts: CsvOptions,
) -> Result<Option<usize>, Failure> {
    if opts.label_last {
        return Ok(Some(width - 1));
    }
    let Some(header) = header else {
        return Ok(None);
    };
    let named: Vec<usize> = header
        .iter()
        .enumerate()
        .filter(|(_, h)| h.as_str() == "label")
        .map(|(i, _)| i)
        .collect();
    match named.as_slice() {
        [] => Ok(None),
        [c] => Ok(Some(*c)),
        _ => Err(input("more than one column is named `label`")),
    }
}

fn parse_label(cell: &str) -> Option<Class> {
    let v: f64 = cell.parse().ok()?;
    if v.fract() != 0.0 {
        return None;
    }
    Class::try_from(v as i64).ok()
}

/// One line per row: index (from 1), predicted class code and score.
pub fn write_predictions(path: &Path, predicted: &[Class], scores: &[f64]) -> Result<(), Failure> {
    let mut w =
        csv::Writer::from_path(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let io = |e: csv::Error| input(format!("{}: {e}", path.display()));
    w.write_record(["row", "predicted", "score"]).map_err(io)?;
    for (i, (c, s)) in predicted.iter().zip(scores).enumerate() {
        w.write_record([(i + 1).to_string(), c.code().to_string(), s.to_string()])
            .map_err(io)?;
    }
    w.flush()
        .map_err(|e| input(format!("{}: {e}", path.display())))?;
    Ok(())
}

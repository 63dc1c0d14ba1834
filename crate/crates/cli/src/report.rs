//! Convergence report: rows of operator values and differences, serialized as
//! CSV (`x,D_n1,...,D_nk,diff_n1,...,diff_nk[,ref]`) or JSON
//! (`{config, rows: [{x, values: {n: v}, diffs: {n: d}}], reference?}`).
//!
//! Floats are rendered in shortest round-trip decimal form, so output is
//! byte-identical across runs and CSV parses back to bit-equal values.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::config::ConfigEcho;

/// One grid row: `values[j]` and `diffs[j]` correspond to `n_values[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub x: f64,
    pub values: Vec<f64>,
    pub diffs: Vec<f64>,
}

/// Summary metrics attached to a run (not part of the serialized schema;
/// printed in the run summary and used by tests).
#[derive(Debug, Clone, PartialEq)]
pub struct ReportSummary {
    /// `max_x |diff_n(x)|` per n.
    pub max_abs_diff: Vec<f64>,
    /// `max_x |value_n(x) - value_{n_last}(x)|` per n (last entry is 0).
    pub gap_to_last: Vec<f64>,
}

impl ReportSummary {
    /// Strict decrease of `max_abs_diff` along the n sequence.
    pub fn max_diff_strictly_decreasing(&self) -> bool {
        self.max_abs_diff.windows(2).all(|w| w[0] > w[1])
    }

    /// Strict decrease of the gap to the terminal curve (excluding the
    /// terminal entry itself).
    pub fn gap_strictly_decreasing(&self) -> bool {
        let inner = &self.gap_to_last[..self.gap_to_last.len() - 1];
        inner.windows(2).all(|w| w[0] > w[1])
    }
}

/// Per-n polynomial coefficients next to the reference coefficients
/// (limit runs only).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientTable {
    /// `(n, [a0, a1, a2])` rows.
    pub per_n: Vec<(u32, Vec<f64>)>,
    pub reference: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub config: ConfigEcho,
    pub n_values: Vec<u32>,
    pub rows: Vec<ReportRow>,
    pub reference: Option<Vec<f64>>,
    pub coefficients: Option<CoefficientTable>,
    pub summary: ReportSummary,
}

impl ConvergenceReport {
    pub(crate) fn assemble(
        config: ConfigEcho,
        n_values: Vec<u32>,
        rows: Vec<ReportRow>,
        reference: Option<Vec<f64>>,
        coefficients: Option<CoefficientTable>,
    ) -> Self {
        let k = n_values.len();
        debug_assert!(rows.windows(2).all(|w| w[0].x < w[1].x), "rows sorted by x");
        let mut max_abs_diff = vec![0.0f64; k];
        let mut gap_to_last = vec![0.0f64; k];
        for row in &rows {
            let last = row.values[k - 1];
            for j in 0..k {
                max_abs_diff[j] = max_abs_diff[j].max(row.diffs[j].abs());
                gap_to_last[j] = gap_to_last[j].max((row.values[j] - last).abs());
            }
        }
        Self {
            config,
            n_values,
            rows,
            reference,
            coefficients,
            summary: ReportSummary {
                max_abs_diff,
                gap_to_last,
            },
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x");
        for n in &self.n_values {
            out.push_str(&format!(",D_{n}"));
        }
        for n in &self.n_values {
            out.push_str(&format!(",diff_{n}"));
        }
        if self.reference.is_some() {
            out.push_str(",ref");
        }
        out.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(&format!("{}", row.x));
            for v in &row.values {
                out.push_str(&format!(",{v}"));
            }
            for d in &row.diffs {
                out.push_str(&format!(",{d}"));
            }
            if let Some(reference) = &self.reference {
                out.push_str(&format!(",{}", reference[i]));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct JsonRow {
            x: f64,
            values: BTreeMap<u32, f64>,
            diffs: BTreeMap<u32, f64>,
        }
        #[derive(Serialize)]
        struct JsonReport<'a> {
            config: &'a ConfigEcho,
            rows: Vec<JsonRow>,
            #[serde(skip_serializing_if = "Option::is_none")]
            reference: &'a Option<Vec<f64>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            coefficients: &'a Option<CoefficientTable>,
        }
        let rows = self
            .rows
            .iter()
            .map(|row| JsonRow {
                x: row.x,
                values: self
                    .n_values
                    .iter()
                    .copied()
                    .zip(row.values.iter().copied())
                    .collect(),
                diffs: self
                    .n_values
                    .iter()
                    .copied()
                    .zip(row.diffs.iter().copied())
                    .collect(),
            })
            .collect();
        let report = JsonReport {
            config: &self.config,
            rows,
            reference: &self.reference,
            coefficients: &self.coefficients,
        };
        let mut s = serde_json::to_string_pretty(&report).expect("report serialization");
        s.push('\n');
        s
    }

    /// Human-oriented run summary (stdout companion to the dataset).
    pub fn summary_text(&self) -> String {
        let mut out = String::new();
        for (j, n) in self.n_values.iter().enumerate() {
            out.push_str(&format!(
                "n={n}: max|diff| = {:.6e}, max gap to n={} curve = {:.6e}\n",
                self.summary.max_abs_diff[j],
                self.n_values[self.n_values.len() - 1],
                self.summary.gap_to_last[j],
            ));
        }
        if !self.summary.max_diff_strictly_decreasing() {
            out.push_str(
                "note: max|diff| is not strictly decreasing along the n sequence \
                 (the operator converges to its limit curve, not to f, for fixed p, q)\n",
            );
        }
        if let Some(coeffs) = &self.coefficients {
            out.push_str("coefficients (per n, ascending degree):\n");
            for (n, c) in &coeffs.per_n {
                let rendered: Vec<String> = c.iter().map(|v| format!("{v}")).collect();
                out.push_str(&format!("  n={n}: [{}]\n", rendered.join(", ")));
            }
            let rendered: Vec<String> = coeffs.reference.iter().map(|v| format!("{v}")).collect();
            out.push_str(&format!("  reference: [{}]\n", rendered.join(", ")));
        }
        out
    }
}

/// Tabular content parsed back from CSV: everything the CSV schema carries.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedCsv {
    pub n_values: Vec<u32>,
    pub rows: Vec<ReportRow>,
    pub reference: Option<Vec<f64>>,
}

/// Parses a report CSV produced by [`ConvergenceReport::to_csv`].
pub fn parse_csv(text: &str) -> Result<ParsedCsv, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty CSV")?;
    let columns: Vec<&str> = header.split(',').collect();
    if columns.first() != Some(&"x") {
        return Err(format!("expected leading x column, got {header:?}"));
    }
    let mut n_values = Vec::new();
    let mut idx = 1;
    while idx < columns.len() {
        if let Some(n) = columns[idx].strip_prefix("D_") {
            n_values.push(n.parse::<u32>().map_err(|e| e.to_string())?);
            idx += 1;
        } else {
            break;
        }
    }
    let k = n_values.len();
    if k == 0 {
        return Err("no D_<n> columns".into());
    }
    for (j, n) in n_values.iter().enumerate() {
        let want = format!("diff_{n}");
        if columns.get(idx + j) != Some(&want.as_str()) {
            return Err(format!(
                "expected column {want}, got {:?}",
                columns.get(idx + j)
            ));
        }
    }
    let has_ref = columns.get(idx + k) == Some(&"ref");
    let expected_cols = 1 + 2 * k + usize::from(has_ref);
    if columns.len() != expected_cols {
        return Err(format!(
            "expected {expected_cols} columns, header has {}",
            columns.len()
        ));
    }
    let mut rows = Vec::new();
    let mut reference = if has_ref { Some(Vec::new()) } else { None };
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != expected_cols {
            return Err(format!(
                "row has {} fields, expected {expected_cols}",
                fields.len()
            ));
        }
        let parse = |s: &str| s.parse::<f64>().map_err(|e| format!("{e}: {s:?}"));
        let x = parse(fields[0])?;
        let values = fields[1..1 + k]
            .iter()
            .map(|s| parse(s))
            .collect::<Result<_, _>>()?;
        let diffs = fields[1 + k..1 + 2 * k]
            .iter()
            .map(|s| parse(s))
            .collect::<Result<_, _>>()?;
        if let Some(r) = reference.as_mut() {
            r.push(parse(fields[1 + 2 * k])?);
        }
        rows.push(ReportRow { x, values, diffs });
    }
    Ok(ParsedCsv {
        n_values,
        rows,
        reference,
    })
}

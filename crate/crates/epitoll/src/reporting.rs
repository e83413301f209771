//! Presentation of tables: reported bin labels, integer rounding, text and
//! CSV rendering.
//!
//! Rounding to whole people happens here and nowhere else. Row and column
//! totals are rounded from the unrounded sums, never summed from rounded
//! cells, so printed totals match the underlying arithmetic.

use crate::agebin::{BinnedCountTable, BySex, Partition};
use crate::projection::{ComparisonTable, DeathTable, Summary};
use crate::sum::Accumulator;

/// Output encodings for rendered tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    /// Aligned columns with thousands separators.
    Text,
    /// `label,male,female,total` rows, bare integers, LF line endings.
    Csv,
}

/// Round half away from zero; the only cell-rounding rule in the crate.
pub fn round_half_away(value: f64) -> i64 {
    value.round() as i64
}

/// Reported labels: shift added back onto adjusted bounds, except the first
/// bin whose reported range always starts at 0. Open stays open.
pub fn relabel_bins(partition: &Partition, shift: u32) -> Vec<String> {
    partition
        .bins()
        .iter()
        .enumerate()
        .map(|(i, bin)| {
            let lower = if i == 0 { 0 } else { bin.lower + shift };
            match bin.upper {
                Some(u) => format!("{}-{}", lower, u + shift),
                None => format!("{}+", lower),
            }
        })
        .collect()
}

fn group_thousands(n: i64) -> String {
    let digits = n.abs().to_string();
    let mut grouped = String::new();
    for (i, ch) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            grouped.push(',');
        }
        grouped.push(ch);
    }
    if n < 0 {
        format!("-{grouped}")
    } else {
        grouped
    }
}

/// One table held in presentation form: labels, unrounded cells, totals.
struct TableView {
    labels: Vec<String>,
    rows: Vec<BySex<f64>>,
}

impl TableView {
    fn totals(&self) -> BySex<f64> {
        let mut male = Accumulator::new();
        let mut female = Accumulator::new();
        for row in &self.rows {
            male.add(row.male);
            female.add(row.female);
        }
        BySex::new(male.total(), female.total())
    }

    fn render(&self, format: RenderFormat) -> String {
        let totals = self.totals();
        match format {
            RenderFormat::Csv => {
                let mut out = String::from("label,male,female,total\n");
                for (label, row) in self.labels.iter().zip(&self.rows) {
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        label,
                        round_half_away(row.male),
                        round_half_away(row.female),
                        round_half_away(row.total()),
                    ));
                }
                out.push_str(&format!(
                    "Total,{},{},{}\n",
                    round_half_away(totals.male),
                    round_half_away(totals.female),
                    round_half_away(totals.total()),
                ));
                out
            }
            RenderFormat::Text => {
                let mut cells: Vec<Vec<String>> = self
                    .labels
                    .iter()
                    .zip(&self.rows)
                    .map(|(label, row)| {
                        vec![
                            label.clone(),
                            group_thousands(round_half_away(row.male)),
                            group_thousands(round_half_away(row.female)),
                            group_thousands(round_half_away(row.total())),
                        ]
                    })
                    .collect();
                cells.push(vec![
                    "Total".to_string(),
                    group_thousands(round_half_away(totals.male)),
                    group_thousands(round_half_away(totals.female)),
                    group_thousands(round_half_away(totals.total())),
                ]);
                render_aligned(&["Age", "Male", "Female", "Total"], &cells)
            }
        }
    }
}

/// Left-align the first column, right-align the rest, two-space gutters.
fn render_aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = format!("{:<w$}", header[0], w = widths[0]);
    for (h, w) in header[1..].iter().zip(&widths[1..]) {
        line.push_str(&format!("  {h:>w$}"));
    }
    out.push_str(line.trim_end());
    out.push('\n');
    for row in rows {
        let mut line = format!("{:<w$}", row[0], w = widths[0]);
        for (cell, w) in row[1..].iter().zip(&widths[1..]) {
            line.push_str(&format!("  {cell:>w$}"));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Render expected deaths under the scenario's reported (re-shifted) labels.
pub fn render_death_table(dt: &DeathTable, format: RenderFormat) -> String {
    TableView {
        labels: relabel_bins(dt.partition(), dt.scenario().shift_years),
        rows: dt.cells().to_vec(),
    }
    .render(format)
}

/// Render population counts under the partition's own labels.
pub fn render_count_table(table: &BinnedCountTable, format: RenderFormat) -> String {
    TableView {
        labels: table.partition().labels(),
        rows: table.counts().to_vec(),
    }
    .render(format)
}

/// Render a scenario comparison: one column per scenario, a Total row, and a
/// Ratio row relative to the first scenario.
pub fn render_comparison(ct: &ComparisonTable, format: RenderFormat) -> String {
    let n = ct.scenario_names.len();
    let mut rows: Vec<Vec<String>> = Vec::new();
    for (b, label) in ct.labels.iter().enumerate() {
        let mut row = vec![label.clone()];
        for s in 0..n {
            row.push(render_count(ct.per_bin[s][b], format));
        }
        rows.push(row);
    }
    let mut total_row = vec!["Total".to_string()];
    let mut ratio_row = vec!["Ratio".to_string()];
    for s in 0..n {
        total_row.push(render_count(ct.totals[s], format));
        ratio_row.push(format!("{:.4}", ct.ratios[s]));
    }
    rows.push(total_row);
    rows.push(ratio_row);

    match format {
        RenderFormat::Csv => {
            let mut out = String::from("label");
            for name in &ct.scenario_names {
                out.push(',');
                out.push_str(name);
            }
            out.push('\n');
            for row in &rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        RenderFormat::Text => {
            let mut header = vec!["Age"];
            header.extend(ct.scenario_names.iter().map(String::as_str));
            render_aligned(&header, &rows)
        }
    }
}

fn render_count(value: f64, format: RenderFormat) -> String {
    match format {
        RenderFormat::Csv => round_half_away(value).to_string(),
        RenderFormat::Text => group_thousands(round_half_away(value)),
    }
}

/// Plain-line summary block; shares printed to six decimals.
pub fn render_summary(summary: &Summary) -> String {
    let mut out = format!(
        "total deaths: {}\nmale share: {:.6}\n",
        round_half_away(summary.total_deaths),
        summary.male_share,
    );
    for (threshold, share) in &summary.share_at_or_above {
        out.push_str(&format!("share at age >= {threshold}: {share:.6}\n"));
    }
    out
}

//! Grid reports over sharing strategies and dev-based strategy selection.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::strategy::{Mode, SharingStrategy};

/// One strategy's per-language dev scores.
#[derive(Debug, Clone, PartialEq)]
pub struct GridRow {
    pub strategy: SharingStrategy,
    pub per_language: Vec<f64>,
    pub average: f64,
}

/// Ranked grid: all strategy rows sorted by average LAS (full precision),
/// with the monolingual baseline and the per-language best.
#[derive(Debug, Clone)]
pub struct GridReport {
    pub languages: Vec<String>,
    pub mono: Vec<f64>,
    pub rows: Vec<GridRow>,
    pub language_best: Vec<f64>,
    /// Strategies whose runs failed, kept out of the ranking.
    pub missing: Vec<SharingStrategy>,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Assemble and rank a grid. `rows` holds per-strategy, per-language LAS in
/// the order of `languages`.
pub fn grid_report(
    languages: &[String],
    mono: Vec<f64>,
    rows: Vec<(SharingStrategy, Vec<f64>)>,
    missing: Vec<SharingStrategy>,
) -> Result<GridReport> {
    if mono.len() != languages.len() {
        return Err(Error::Eval("mono row width mismatch".into()));
    }
    let mut grid_rows = Vec::with_capacity(rows.len());
    for (strategy, per_language) in rows {
        if per_language.len() != languages.len() {
            return Err(Error::Eval(format!(
                "row {strategy} has {} cells for {} languages",
                per_language.len(),
                languages.len()
            )));
        }
        let average = mean(&per_language);
        grid_rows.push(GridRow {
            strategy,
            per_language,
            average,
        });
    }
    grid_rows.sort_by(|a, b| {
        b.average
            .partial_cmp(&a.average)
            .unwrap()
            .then_with(|| a.strategy.cmp(&b.strategy))
    });
    let language_best: Vec<f64> = (0..languages.len())
        .map(|i| {
            grid_rows
                .iter()
                .map(|r| r.per_language[i])
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let report = GridReport {
        languages: languages.to_vec(),
        mono,
        rows: grid_rows,
        language_best,
        missing,
    };
    report.check()?;
    Ok(report)
}

impl GridReport {
    /// Per-language best must dominate every strategy row.
    fn check(&self) -> Result<()> {
        for row in &self.rows {
            for (i, v) in row.per_language.iter().enumerate() {
                if *v > self.language_best[i] + 1e-9 {
                    return Err(Error::Eval(format!(
                        "language-best violated for {} at {}",
                        self.languages[i], row.strategy
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn best(&self) -> Option<&GridRow> {
        self.rows.first()
    }

    pub fn worst(&self) -> Option<&GridRow> {
        self.rows.last()
    }

    pub fn mono_average(&self) -> f64 {
        mean(&self.mono)
    }

    pub fn language_best_average(&self) -> f64 {
        mean(&self.language_best)
    }

    /// Aligned plain-text table in ✗/✓/ID notation, ranked by average.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{:<14}", "C/W/S");
        for l in &self.languages {
            let _ = write!(out, "{l:>8}");
        }
        let _ = writeln!(out, "{:>8}", "avg");
        let mut line = |name: &str, values: &[f64], avg: f64| {
            let _ = write!(out, "{name:<14}");
            for v in values {
                let _ = write!(out, "{v:>8.1}");
            }
            let _ = writeln!(out, "{avg:>8.1}");
        };
        line("mono", &self.mono, mean(&self.mono));
        line("lang-best", &self.language_best, mean(&self.language_best));
        for row in &self.rows {
            line(&row.strategy.notation(), &row.per_language, row.average);
        }
        for m in &self.missing {
            let _ = writeln!(out, "{:<14}(missing)", m.notation());
        }
        out
    }

    /// CSV with ASCII strategy notation.
    pub fn render_csv(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "strategy");
        for l in &self.languages {
            let _ = write!(out, ",{l}");
        }
        let _ = writeln!(out, ",average");
        let mut line = |name: &str, values: &[f64], avg: f64| {
            let _ = write!(out, "{name}");
            for v in values {
                let _ = write!(out, ",{v:.4}");
            }
            let _ = writeln!(out, ",{avg:.4}");
        };
        line("mono", &self.mono, mean(&self.mono));
        line("lang-best", &self.language_best, mean(&self.language_best));
        for row in &self.rows {
            line(&row.strategy.to_string(), &row.per_language, row.average);
        }
        out
    }
}

/// Pick the best (W, C) cell of a 9-cell dev sweep with S fixed to hard.
/// Ties prefer less sharing (separate, then soft, then hard), W before C.
pub fn select_strategy(cells: &BTreeMap<(Mode, Mode), f64>) -> Result<(Mode, Mode)> {
    for w in Mode::ALL {
        for c in Mode::ALL {
            if !cells.contains_key(&(w, c)) {
                return Err(Error::config(format!(
                    "missing dev cell W={}, C={}",
                    w.ascii(),
                    c.ascii()
                )));
            }
        }
    }
    let mut best: Option<((Mode, Mode), f64)> = None;
    for w in Mode::ALL {
        for c in Mode::ALL {
            let las = cells[&(w, c)];
            let better = match &best {
                None => true,
                Some((cur, cur_las)) => {
                    las > *cur_las + 1e-12
                        || ((las - cur_las).abs() <= 1e-12
                            && (w.sharing_priority(), c.sharing_priority())
                                < (cur.0.sharing_priority(), cur.1.sharing_priority()))
                }
            };
            if better {
                best = Some(((w, c), las));
            }
        }
    }
    Ok(best.unwrap().0)
}

/// Per-language outcome of the tuned-sharing pipeline.
#[derive(Debug, Clone)]
pub struct OursRow {
    pub language: String,
    pub word_mode: Mode,
    pub char_mode: Mode,
    pub ours_las: f64,
    pub mono_las: f64,
    pub p_value: Option<f64>,
}

impl OursRow {
    pub fn delta(&self) -> f64 {
        self.ours_las - self.mono_las
    }
}

/// Report with the Table-style columns W, C, Ours, Mono, δ.
#[derive(Debug, Clone, Default)]
pub struct OursReport {
    pub rows: Vec<OursRow>,
}

impl OursReport {
    pub fn average_delta(&self) -> f64 {
        mean(&self.rows.iter().map(|r| r.delta()).collect::<Vec<_>>())
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<6}{:>4}{:>4}{:>8}{:>8}{:>8}{:>10}",
            "lang", "W", "C", "Ours", "Mono", "δ", "p"
        );
        for r in &self.rows {
            let p = r
                .p_value
                .map(|p| format!("{p:.4}"))
                .unwrap_or_else(|| "-".into());
            let _ = writeln!(
                out,
                "{:<6}{:>4}{:>4}{:>8.1}{:>8.1}{:>8.1}{:>10}",
                r.language,
                r.word_mode.glyph(),
                r.char_mode.glyph(),
                r.ours_las,
                r.mono_las,
                r.delta(),
                p
            );
        }
        if !self.rows.is_empty() {
            let ours = mean(&self.rows.iter().map(|r| r.ours_las).collect::<Vec<_>>());
            let mono = mean(&self.rows.iter().map(|r| r.mono_las).collect::<Vec<_>>());
            let _ = writeln!(
                out,
                "{:<6}{:>4}{:>4}{:>8.1}{:>8.1}{:>8.1}{:>10}",
                "av.",
                "",
                "",
                ours,
                mono,
                self.average_delta(),
                ""
            );
        }
        out
    }
}

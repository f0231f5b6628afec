//! Published evaluation grids used as report-format fixtures.
//!
//! Each grid lists per-language dev LAS for all 27 sharing strategies over
//! five language pairs, plus the monolingual baseline row, exactly as
//! published (1-decimal precision; the trailing value is the published row
//! average, kept as a parse-alignment check). `TEST_TABLE` carries the
//! published test-set comparison of the tuned model against the baseline.

use crate::strategy::{Mode, SharingStrategy};

/// (C, W, S, per-language LAS, published average).
pub type FixtureRow = (Mode, Mode, Mode, [f64; 10], f64);

/// A published grid: language order, mono baseline row and strategy rows.
#[derive(Debug, Clone, Copy)]
pub struct PublishedGrid {
    pub languages: [&'static str; 10],
    pub mono: [f64; 10],
    pub mono_published_average: f64,
    pub rows: &'static [FixtureRow; 27],
}

impl PublishedGrid {
    pub fn strategy_rows(&self) -> Vec<(SharingStrategy, Vec<f64>)> {
        self.rows
            .iter()
            .map(|(c, w, s, vals, _)| (SharingStrategy::new(*c, *w, *s), vals.to_vec()))
            .collect()
    }

    pub fn language_names(&self) -> Vec<String> {
        self.languages.iter().map(|s| s.to_string()).collect()
    }
}

const RELATED_ROWS: [FixtureRow; 27] = [
    (
        Mode::Separate,
        Mode::Hard,
        Mode::Soft,
        [76.3, 80.3, 84.2, 84.5, 72.1, 72.5, 78.8, 81.4, 77.6, 82.8],
        79.1,
    ),
    (
        Mode::Separate,
        Mode::Hard,
        Mode::Hard,
        [76.4, 80.4, 84.1, 84.4, 71.9, 72.0, 78.7, 81.5, 78.0, 82.8],
        79.0,
    ),
    (
        Mode::Separate,
        Mode::Soft,
        Mode::Soft,
        [76.2, 80.1, 84.2, 84.8, 71.8, 72.4, 78.6, 81.6, 77.4, 82.9],
        79.0,
    ),
    (
        Mode::Separate,
        Mode::Soft,
        Mode::Hard,
        [76.4, 80.4, 84.2, 84.3, 72.2, 72.3, 78.3, 81.6, 77.4, 82.8],
        79.0,
    ),
    (
        Mode::Separate,
        Mode::Separate,
        Mode::Soft,
        [76.5, 80.6, 84.1, 84.3, 71.8, 72.0, 78.5, 81.5, 77.7, 82.9],
        79.0,
    ),
    (
        Mode::Hard,
        Mode::Soft,
        Mode::Hard,
        [76.2, 79.8, 84.4, 84.7, 72.4, 71.5, 79.2, 81.6, 76.9, 82.8],
        78.9,
    ),
    (
        Mode::Soft,
        Mode::Separate,
        Mode::Hard,
        [76.3, 80.2, 84.0, 84.4, 72.8, 71.7, 78.6, 82.1, 77.2, 82.3],
        78.9,
    ),
    (
        Mode::Separate,
        Mode::Separate,
        Mode::Hard,
        [76.6, 80.3, 84.0, 83.7, 71.5, 72.9, 78.3, 81.5, 77.4, 82.8],
        78.9,
    ),
    (
        Mode::Soft,
        Mode::Soft,
        Mode::Soft,
        [76.3, 79.9, 84.1, 84.4, 72.1, 71.3, 79.6, 81.4, 77.1, 82.5],
        78.9,
    ),
    (
        Mode::Hard,
        Mode::Soft,
        Mode::Soft,
        [76.2, 80.1, 84.3, 84.5, 72.5, 71.8, 78.7, 81.1, 76.7, 82.6],
        78.8,
    ),
    (
        Mode::Soft,
        Mode::Separate,
        Mode::Separate,
        [76.6, 80.3, 84.1, 84.3, 71.8, 71.7, 78.3, 81.5, 77.2, 82.5],
        78.8,
    ),
    (
        Mode::Soft,
        Mode::Separate,
        Mode::Soft,
        [76.2, 79.9, 84.1, 84.3, 71.9, 72.0, 78.5, 81.7, 77.2, 82.3],
        78.8,
    ),
    (
        Mode::Separate,
        Mode::Separate,
        Mode::Separate,
        [76.6, 80.3, 84.0, 84.2, 71.2, 72.1, 78.0, 81.6, 77.3, 82.6],
        78.8,
    ),
    (
        Mode::Hard,
        Mode::Separate,
        Mode::Hard,
        [76.1, 80.1, 84.0, 84.1, 72.1, 72.0, 78.2, 81.8, 76.8, 82.6],
        78.8,
    ),
    (
        Mode::Hard,
        Mode::Separate,
        Mode::Soft,
        [76.5, 80.0, 84.0, 84.4, 71.9, 71.7, 78.5, 81.7, 76.7, 82.3],
        78.8,
    ),
    (
        Mode::Hard,
        Mode::Hard,
        Mode::Soft,
        [76.6, 80.1, 84.0, 84.6, 72.1, 71.0, 78.3, 81.0, 76.9, 82.8],
        78.7,
    ),
    (
        Mode::Soft,
        Mode::Soft,
        Mode::Hard,
        [76.1, 80.1, 84.1, 84.6, 72.1, 71.2, 78.0, 81.4, 77.0, 82.7],
        78.7,
    ),
    (
        Mode::Hard,
        Mode::Separate,
        Mode::Separate,
        [76.4, 80.3, 84.3, 84.0, 72.3, 71.0, 78.3, 81.3, 77.0, 82.3],
        78.7,
    ),
    (
        Mode::Hard,
        Mode::Hard,
        Mode::Hard,
        [76.2, 80.1, 84.0, 84.2, 72.1, 71.4, 78.7, 81.1, 77.0, 82.5],
        78.7,
    ),
    (
        Mode::Separate,
        Mode::Soft,
        Mode::Separate,
        [76.6, 80.1, 84.1, 84.3, 71.7, 71.6, 77.6, 81.0, 77.0, 82.6],
        78.7,
    ),
    (
        Mode::Soft,
        Mode::Hard,
        Mode::Hard,
        [76.2, 79.9, 83.8, 84.5, 72.4, 70.3, 78.1, 81.0, 77.2, 82.6],
        78.6,
    ),
    (
        Mode::Separate,
        Mode::Hard,
        Mode::Separate,
        [76.3, 79.9, 83.9, 84.4, 72.4, 71.3, 77.4, 80.7, 76.9, 82.5],
        78.6,
    ),
    (
        Mode::Soft,
        Mode::Hard,
        Mode::Soft,
        [76.0, 80.0, 83.8, 84.3, 71.7, 70.9, 78.3, 81.0, 76.9, 82.5],
        78.5,
    ),
    (
        Mode::Hard,
        Mode::Hard,
        Mode::Separate,
        [76.1, 79.7, 83.8, 84.5, 71.9, 70.4, 77.8, 81.1, 76.5, 82.3],
        78.4,
    ),
    (
        Mode::Hard,
        Mode::Soft,
        Mode::Separate,
        [76.0, 79.3, 84.1, 84.4, 71.5, 71.3, 77.7, 80.6, 76.7, 82.5],
        78.4,
    ),
    (
        Mode::Soft,
        Mode::Hard,
        Mode::Separate,
        [76.1, 79.9, 83.9, 84.4, 71.1, 70.6, 77.8, 80.9, 77.0, 82.0],
        78.4,
    ),
    (
        Mode::Soft,
        Mode::Soft,
        Mode::Separate,
        [75.9, 79.5, 84.1, 84.4, 72.1, 70.5, 77.4, 80.6, 77.0, 82.2],
        78.4,
    ),
];

/// Dev grid over the five related pairs.
pub const RELATED_GRID: PublishedGrid = PublishedGrid {
    languages: ["ar", "he", "es", "it", "et", "fi", "nl", "no", "hr", "ru"],
    mono: [76.3, 80.2, 83.7, 83.3, 70.4, 70.8, 77.3, 80.8, 76.8, 82.3],
    mono_published_average: 78.2,
    rows: &RELATED_ROWS,
};

const UNRELATED_ROWS: [FixtureRow; 27] = [
    (
        Mode::Separate,
        Mode::Separate,
        Mode::Hard,
        [80.3, 81.5, 71.9, 77.6, 82.7, 84.0, 83.8, 72.5, 78.7, 76.4],
        78.9,
    ),
    (
        Mode::Separate,
        Mode::Separate,
        Mode::Separate,
        [80.3, 81.7, 71.9, 77.7, 82.5, 84.0, 84.2, 71.8, 78.5, 76.5],
        78.9,
    ),
    (
        Mode::Separate,
        Mode::Soft,
        Mode::Soft,
        [80.3, 81.1, 72.1, 77.7, 82.7, 84.2, 84.2, 72.4, 77.9, 76.0],
        78.9,
    ),
    (
        Mode::Separate,
        Mode::Separate,
        Mode::Soft,
        [79.7, 81.5, 72.2, 77.1, 82.7, 83.8, 84.0, 72.3, 78.6, 76.5],
        78.8,
    ),
    (
        Mode::Soft,
        Mode::Separate,
        Mode::Soft,
        [80.3, 81.6, 71.8, 77.5, 82.6, 84.1, 83.8, 71.8, 78.3, 76.2],
        78.8,
    ),
    (
        Mode::Soft,
        Mode::Separate,
        Mode::Separate,
        [80.0, 81.6, 71.5, 77.2, 82.7, 83.9, 84.0, 71.1, 79.0, 76.4],
        78.7,
    ),
    (
        Mode::Hard,
        Mode::Separate,
        Mode::Soft,
        [80.3, 81.5, 71.5, 77.5, 82.7, 83.7, 83.9, 71.6, 77.9, 76.7],
        78.7,
    ),
    (
        Mode::Soft,
        Mode::Separate,
        Mode::Hard,
        [80.4, 81.4, 71.6, 77.3, 82.6, 83.9, 84.1, 71.9, 77.7, 76.4],
        78.7,
    ),
    (
        Mode::Separate,
        Mode::Hard,
        Mode::Soft,
        [80.5, 81.2, 72.2, 77.0, 82.5, 84.0, 83.8, 71.5, 78.3, 76.1],
        78.7,
    ),
    (
        Mode::Separate,
        Mode::Soft,
        Mode::Hard,
        [80.6, 81.1, 71.9, 77.1, 82.7, 84.2, 84.0, 71.9, 77.1, 76.2],
        78.7,
    ),
    (
        Mode::Hard,
        Mode::Separate,
        Mode::Hard,
        [80.3, 81.1, 71.3, 77.0, 82.6, 84.0, 84.2, 71.8, 77.8, 76.3],
        78.6,
    ),
    (
        Mode::Separate,
        Mode::Hard,
        Mode::Hard,
        [80.6, 81.1, 71.6, 76.8, 82.5, 83.7, 83.9, 71.4, 78.1, 76.3],
        78.6,
    ),
    (
        Mode::Hard,
        Mode::Separate,
        Mode::Separate,
        [80.1, 80.9, 71.4, 76.8, 82.9, 83.9, 84.3, 70.9, 78.0, 76.5],
        78.6,
    ),
    (
        Mode::Separate,
        Mode::Soft,
        Mode::Separate,
        [80.3, 81.3, 71.2, 77.4, 81.9, 84.2, 83.9, 70.7, 77.6, 75.8],
        78.4,
    ),
    (
        Mode::Separate,
        Mode::Hard,
        Mode::Separate,
        [79.6, 80.9, 71.9, 76.9, 82.2, 83.7, 83.8, 70.9, 77.0, 76.4],
        78.3,
    ),
    (
        Mode::Soft,
        Mode::Hard,
        Mode::Soft,
        [80.3, 81.0, 70.5, 76.5, 82.3, 83.7, 83.6, 71.4, 77.8, 76.1],
        78.3,
    ),
    (
        Mode::Soft,
        Mode::Hard,
        Mode::Hard,
        [80.1, 80.8, 70.4, 77.0, 82.2, 83.8, 83.8, 71.0, 77.6, 76.2],
        78.3,
    ),
    (
        Mode::Hard,
        Mode::Hard,
        Mode::Hard,
        [80.5, 80.9, 69.8, 76.6, 82.3, 83.7, 84.0, 70.6, 77.4, 76.2],
        78.2,
    ),
    (
        Mode::Hard,
        Mode::Soft,
        Mode::Soft,
        [80.3, 80.7, 70.2, 76.1, 82.1, 83.8, 83.8, 70.8, 77.6, 76.2],
        78.2,
    ),
    (
        Mode::Hard,
        Mode::Hard,
        Mode::Soft,
        [79.8, 80.9, 71.0, 76.2, 82.1, 83.7, 83.6, 70.9, 77.3, 76.0],
        78.2,
    ),
    (
        Mode::Soft,
        Mode::Soft,
        Mode::Hard,
        [80.0, 80.8, 69.8, 76.2, 82.2, 83.8, 84.3, 70.7, 77.2, 76.2],
        78.1,
    ),
    (
        Mode::Soft,
        Mode::Soft,
        Mode::Soft,
        [79.8, 80.5, 70.1, 76.6, 82.1, 83.9, 83.8, 70.6, 77.2, 76.3],
        78.1,
    ),
    (
        Mode::Hard,
        Mode::Soft,
        Mode::Hard,
        [80.3, 81.1, 70.2, 76.1, 82.2, 84.1, 83.7, 70.3, 76.9, 76.0],
        78.1,
    ),
    (
        Mode::Hard,
        Mode::Hard,
        Mode::Separate,
        [80.4, 80.3, 70.1, 76.6, 82.0, 83.7, 83.2, 69.3, 76.7, 76.2],
        77.8,
    ),
    (
        Mode::Hard,
        Mode::Soft,
        Mode::Separate,
        [79.6, 80.6, 69.4, 76.7, 81.7, 83.8, 83.4, 69.2, 77.6, 76.2],
        77.8,
    ),
    (
        Mode::Soft,
        Mode::Hard,
        Mode::Separate,
        [79.6, 80.1, 69.9, 76.6, 81.8, 83.5, 82.9, 69.2, 77.6, 76.3],
        77.7,
    ),
    (
        Mode::Soft,
        Mode::Soft,
        Mode::Separate,
        [79.8, 80.6, 69.2, 76.7, 81.4, 83.8, 83.2, 69.4, 76.6, 76.0],
        77.7,
    ),
];

/// Dev grid over the five unrelated pairs.
pub const UNRELATED_GRID: PublishedGrid = PublishedGrid {
    languages: ["he", "no", "fi", "hr", "ru", "es", "it", "et", "nl", "ar"],
    mono: [80.2, 80.8, 70.8, 76.8, 82.3, 83.7, 83.3, 70.4, 77.3, 76.3],
    mono_published_average: 78.2,
    rows: &UNRELATED_ROWS,
};

/// Published test-set rows: (language, W, C, tuned LAS, mono LAS, δ).
pub const TEST_TABLE: [(&str, Mode, Mode, f64, f64, f64); 10] = [
    ("ar", Mode::Separate, Mode::Separate, 77.2, 77.1, 0.1),
    ("es", Mode::Soft, Mode::Hard, 84.3, 83.8, 0.5),
    ("et", Mode::Separate, Mode::Soft, 71.4, 70.5, 0.8),
    ("fi", Mode::Separate, Mode::Separate, 71.6, 71.6, 0.1),
    ("he", Mode::Hard, Mode::Separate, 80.0, 79.8, 0.3),
    ("hr", Mode::Hard, Mode::Separate, 77.9, 78.0, -0.1),
    ("it", Mode::Soft, Mode::Hard, 85.0, 84.0, 1.0),
    ("nl", Mode::Soft, Mode::Hard, 75.5, 74.1, 1.4),
    ("no", Mode::Separate, Mode::Soft, 81.1, 80.1, 1.0),
    ("ru", Mode::Hard, Mode::Separate, 83.5, 82.7, 0.8),
];

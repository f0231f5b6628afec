//! Parameter-sharing strategies over the three component sets.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// How one component's parameters are shared across the two languages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    /// One parameter set per language (✗).
    Separate,
    /// A single parameter set for both languages (✓).
    Hard,
    /// A single parameter set plus a language embedding concatenated at the
    /// component input (ID).
    Soft,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Separate, Mode::Hard, Mode::Soft];

    pub fn ascii(self) -> &'static str {
        match self {
            Mode::Separate => "x",
            Mode::Hard => "h",
            Mode::Soft => "id",
        }
    }

    /// Display glyph used in reports.
    pub fn glyph(self) -> &'static str {
        match self {
            Mode::Separate => "✗",
            Mode::Hard => "✓",
            Mode::Soft => "ID",
        }
    }

    pub fn is_shared(self) -> bool {
        !matches!(self, Mode::Separate)
    }

    /// Tie-break priority: less sharing wins (Separate, then Soft, then Hard).
    pub fn sharing_priority(self) -> u8 {
        match self {
            Mode::Separate => 0,
            Mode::Soft => 1,
            Mode::Hard => 2,
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "x" | "✗" | "sep" | "separate" => Ok(Mode::Separate),
            "h" | "✓" | "hard" => Ok(Mode::Hard),
            "id" | "ID" | "soft" => Ok(Mode::Soft),
            other => Err(Error::config(format!("unknown sharing mode {other:?}"))),
        }
    }
}

/// A triple of [`Mode`]s for the character (C), word (W) and state/MLP (S)
/// parameter sets. There are exactly 3³ = 27 distinct strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SharingStrategy {
    pub char: Mode,
    pub word: Mode,
    pub state: Mode,
}

impl SharingStrategy {
    pub fn new(char_mode: Mode, word_mode: Mode, state_mode: Mode) -> Self {
        SharingStrategy {
            char: char_mode,
            word: word_mode,
            state: state_mode,
        }
    }

    /// Fully separate components; also the canonical monolingual shape.
    pub fn separate() -> Self {
        SharingStrategy::new(Mode::Separate, Mode::Separate, Mode::Separate)
    }

    /// All 27 strategies, in a fixed enumeration order (C outermost).
    pub fn all() -> Vec<SharingStrategy> {
        let mut out = Vec::with_capacity(27);
        for c in Mode::ALL {
            for w in Mode::ALL {
                for s in Mode::ALL {
                    out.push(SharingStrategy::new(c, w, s));
                }
            }
        }
        out
    }

    /// Report notation, e.g. `✗/✓/ID` for C/W/S.
    pub fn notation(&self) -> String {
        format!(
            "{}/{}/{}",
            self.char.glyph(),
            self.word.glyph(),
            self.state.glyph()
        )
    }
}

impl fmt::Display for SharingStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "C={},W={},S={}",
            self.char.ascii(),
            self.word.ascii(),
            self.state.ascii()
        )
    }
}

impl FromStr for SharingStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut char_mode = None;
        let mut word_mode = None;
        let mut state_mode = None;
        for part in s.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::config(format!("bad strategy component {part:?}")))?;
            let mode: Mode = value.trim().parse()?;
            match key.trim() {
                "C" | "c" => char_mode = Some(mode),
                "W" | "w" => word_mode = Some(mode),
                "S" | "s" => state_mode = Some(mode),
                other => return Err(Error::config(format!("unknown component {other:?}"))),
            }
        }
        match (char_mode, word_mode, state_mode) {
            (Some(c), Some(w), Some(s)) => Ok(SharingStrategy::new(c, w, s)),
            _ => Err(Error::config(format!(
                "strategy {s:?} must name all of C, W and S"
            ))),
        }
    }
}

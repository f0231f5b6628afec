//! CoNLL-U reading and writing.
//!
//! Ten tab-separated columns, `#` comments, blank-line sentence breaks.
//! Only ID, FORM, HEAD and DEPREL are consumed; the remaining columns are
//! carried through verbatim. Multiword-token ranges (`a-b`) and empty nodes
//! (`a.b`) are kept for round-trip output but skipped as syntactic words.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// One syntactic word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// 1-based position within the sentence.
    pub index: usize,
    pub form: String,
    /// Gold or predicted head; 0 is the root. `None` for unannotated input.
    pub head: Option<usize>,
    /// Dependency relation paired with `head`.
    pub label: Option<String>,
    pub lemma: String,
    pub upos: String,
    pub xpos: String,
    pub feats: String,
    pub deps: String,
    pub misc: String,
}

impl Token {
    pub fn new(index: usize, form: &str, head: usize, label: &str) -> Self {
        Token {
            index,
            form: form.to_string(),
            head: Some(head),
            label: Some(label.to_string()),
            lemma: "_".into(),
            upos: "_".into(),
            xpos: "_".into(),
            feats: "_".into(),
            deps: "_".into(),
            misc: "_".into(),
        }
    }
}

/// A sentence with its provenance language and verbatim extra lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub language: String,
    pub comments: Vec<String>,
    pub tokens: Vec<Token>,
    /// Multiword-token and empty-node lines, anchored before the token at
    /// the stored 0-based position (`tokens.len()` = after the last token).
    extras: Vec<(usize, String)>,
}

impl Sentence {
    pub fn new(language: &str, tokens: Vec<Token>) -> Self {
        Sentence {
            language: language.to_string(),
            comments: Vec::new(),
            tokens,
            extras: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Head indices as a dense vector; slot 0 is unused.
    pub fn heads(&self) -> Result<Vec<usize>> {
        let mut heads = vec![0usize; self.tokens.len() + 1];
        for t in &self.tokens {
            heads[t.index] = t
                .head
                .ok_or_else(|| Error::usage(format!("token {} has no head", t.index)))?;
        }
        Ok(heads)
    }

    /// True when some pair of arcs crosses.
    pub fn is_non_projective(&self) -> bool {
        let arcs: Vec<(usize, usize)> = self
            .tokens
            .iter()
            .filter_map(|t| t.head.map(|h| (h.min(t.index), h.max(t.index))))
            .collect();
        for (i, &(a1, b1)) in arcs.iter().enumerate() {
            for &(a2, b2) in &arcs[i + 1..] {
                if (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1) {
                    return true;
                }
            }
        }
        false
    }
}

fn is_extra_id(id: &str) -> bool {
    id.contains('-') || id.contains('.')
}

struct SentenceBuilder {
    comments: Vec<String>,
    tokens: Vec<Token>,
    extras: Vec<(usize, String)>,
    first_line: usize,
}

impl SentenceBuilder {
    fn new(first_line: usize) -> Self {
        SentenceBuilder {
            comments: Vec::new(),
            tokens: Vec::new(),
            extras: Vec::new(),
            first_line,
        }
    }

    fn is_blank(&self) -> bool {
        self.comments.is_empty() && self.tokens.is_empty() && self.extras.is_empty()
    }

    fn finish(self, language: &str, line: usize, require_heads: bool) -> Result<Sentence> {
        let sentence = Sentence {
            language: language.to_string(),
            comments: self.comments,
            tokens: self.tokens,
            extras: self.extras,
        };
        validate(&sentence, self.first_line, line, require_heads)?;
        Ok(sentence)
    }
}

fn validate(
    sentence: &Sentence,
    first_line: usize,
    line: usize,
    require_heads: bool,
) -> Result<()> {
    let n = sentence.tokens.len();
    for (i, t) in sentence.tokens.iter().enumerate() {
        if t.index != i + 1 {
            return Err(Error::format(
                line,
                format!(
                    "token ids not contiguous: expected {}, found {}",
                    i + 1,
                    t.index
                ),
            ));
        }
        if let Some(h) = t.head {
            if h > n {
                return Err(Error::format(
                    line,
                    format!("head {h} out of range for sentence of length {n}"),
                ));
            }
            if h == t.index {
                return Err(Error::format(
                    line,
                    format!("token {} heads itself", t.index),
                ));
            }
        } else if require_heads {
            return Err(Error::format(
                line,
                format!("token {} is missing a head", t.index),
            ));
        }
    }
    if require_heads && n > 0 {
        // every node must reach 0 without revisiting (single tree, acyclic)
        for start in 1..=n {
            let mut seen = vec![false; n + 1];
            let mut cur = start;
            loop {
                if cur == 0 {
                    break;
                }
                if seen[cur] {
                    return Err(Error::format(
                        first_line,
                        format!("head cycle involving token {start} in sentence starting here"),
                    ));
                }
                seen[cur] = true;
                cur = sentence.tokens[cur - 1].head.unwrap();
            }
        }
    }
    Ok(())
}

fn parse_token_line(line_no: usize, line: &str, require_heads: bool) -> Result<Token> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 10 {
        return Err(Error::format(
            line_no,
            format!("expected 10 columns, found {}", cols.len()),
        ));
    }
    let index: usize = cols[0]
        .parse()
        .map_err(|_| Error::format(line_no, format!("invalid token id {:?}", cols[0])))?;
    let head = match cols[6] {
        "_" if !require_heads => None,
        h => Some(
            h.parse::<usize>()
                .map_err(|_| Error::format(line_no, format!("non-integer head {:?}", h)))?,
        ),
    };
    let label = match cols[7] {
        "_" if head.is_none() => None,
        l => Some(l.to_string()),
    };
    Ok(Token {
        index,
        form: cols[1].to_string(),
        head,
        label,
        lemma: cols[2].to_string(),
        upos: cols[3].to_string(),
        xpos: cols[4].to_string(),
        feats: cols[5].to_string(),
        deps: cols[8].to_string(),
        misc: cols[9].to_string(),
    })
}

fn parse_impl(text: &str, language: &str, require_heads: bool) -> Result<Vec<Sentence>> {
    let mut sentences = Vec::new();
    let mut builder = SentenceBuilder::new(1);
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_end_matches('\r');
        if line.is_empty() {
            if !builder.is_blank() {
                sentences.push(builder.finish(language, line_no, require_heads)?);
            }
            builder = SentenceBuilder::new(line_no + 1);
            continue;
        }
        if line.starts_with('#') {
            builder.comments.push(line.to_string());
            continue;
        }
        let id = line.split('\t').next().unwrap_or("");
        if is_extra_id(id) {
            builder
                .extras
                .push((builder.tokens.len(), line.to_string()));
            continue;
        }
        builder
            .tokens
            .push(parse_token_line(line_no, line, require_heads)?);
    }
    if !builder.is_blank() {
        let line_no = text.lines().count();
        sentences.push(builder.finish(language, line_no, require_heads)?);
    }
    Ok(sentences)
}

/// Parse a gold treebank: every token must carry a valid head and the heads
/// must form a single tree rooted at 0.
pub fn parse_conllu(text: &str, language: &str) -> Result<Vec<Sentence>> {
    parse_impl(text, language, true)
}

/// Parse input for prediction: heads and labels may be `_`.
pub fn parse_conllu_lenient(text: &str, language: &str) -> Result<Vec<Sentence>> {
    parse_impl(text, language, false)
}

/// Serialize sentences; each sentence block ends with one blank line.
pub fn serialize(sentences: &[Sentence]) -> String {
    let mut out = String::new();
    for s in sentences {
        for c in &s.comments {
            out.push_str(c);
            out.push('\n');
        }
        let mut extra_iter = s.extras.iter().peekable();
        for (i, t) in s.tokens.iter().enumerate() {
            while let Some(&&(anchor, ref line)) = extra_iter.peek() {
                if anchor <= i {
                    out.push_str(line);
                    out.push('\n');
                    extra_iter.next();
                } else {
                    break;
                }
            }
            let head = t.head.map(|h| h.to_string()).unwrap_or_else(|| "_".into());
            let label = t.label.clone().unwrap_or_else(|| "_".into());
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                t.index, t.form, t.lemma, t.upos, t.xpos, t.feats, head, label, t.deps, t.misc
            );
        }
        for (_, line) in extra_iter {
            out.push_str(line);
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

/// Corpus size as (sentences, syntactic words).
pub fn treebank_stats(sentences: &[Sentence]) -> (usize, usize) {
    let tokens = sentences.iter().map(|s| s.tokens.len()).sum();
    (sentences.len(), tokens)
}

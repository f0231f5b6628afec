//! Vocabularies with sharing-aware scoping.

use std::collections::HashMap;
use std::io::{Read, Write};

use crate::autodiff::{read_str, read_u32, read_u64, write_str, write_u32, write_u64};
use crate::conllu::Sentence;
use crate::error::{Error, Result};
use crate::strategy::{Mode, SharingStrategy};

pub const UNK_ID: u32 = 0;
pub const PAD_ID: u32 = 1;

/// Dense string→id map with occurrence counts.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Vocab {
    items: Vec<String>,
    index: HashMap<String, u32>,
    counts: Vec<u64>,
}

impl Vocab {
    pub fn new() -> Self {
        Self::default()
    }

    /// Vocab with UNK and PAD at the reserved slots 0 and 1.
    pub fn with_reserved() -> Self {
        let mut v = Vocab::new();
        v.add("<UNK>");
        v.add("<PAD>");
        v
    }

    pub fn add(&mut self, item: &str) -> u32 {
        if let Some(&id) = self.index.get(item) {
            self.counts[id as usize] += 1;
            return id;
        }
        let id = self.items.len() as u32;
        self.items.push(item.to_string());
        self.index.insert(item.to_string(), id);
        self.counts.push(1);
        id
    }

    pub fn get(&self, item: &str) -> Option<u32> {
        self.index.get(item).copied()
    }

    pub fn get_or_unk(&self, item: &str) -> u32 {
        self.get(item).unwrap_or(UNK_ID)
    }

    pub fn name(&self, id: u32) -> &str {
        &self.items[id as usize]
    }

    pub fn count(&self, id: u32) -> u64 {
        self.counts[id as usize]
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    fn write<W: Write>(&self, w: &mut W) -> Result<()> {
        write_u32(w, self.items.len() as u32)?;
        for (item, count) in self.items.iter().zip(&self.counts) {
            write_str(w, item)?;
            write_u64(w, *count)?;
        }
        Ok(())
    }

    fn read<R: Read>(r: &mut R) -> Result<Vocab> {
        let n = read_u32(r)? as usize;
        let mut v = Vocab::new();
        for _ in 0..n {
            let item = read_str(r)?;
            let count = read_u64(r)?;
            let id = v.items.len() as u32;
            v.index.insert(item.clone(), id);
            v.items.push(item);
            v.counts.push(count);
        }
        Ok(v)
    }
}

/// One table for both languages, or one per language.
#[derive(Debug, Clone, PartialEq)]
pub enum Scoped {
    Shared(Vocab),
    PerLanguage(Vec<Vocab>),
}

impl Scoped {
    pub fn for_language(&self, lang: usize) -> &Vocab {
        match self {
            Scoped::Shared(v) => v,
            Scoped::PerLanguage(vs) => &vs[lang],
        }
    }

    pub fn is_shared(&self) -> bool {
        matches!(self, Scoped::Shared(_))
    }
}

/// All lookup tables for a model, built under one sharing strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct Lexicon {
    pub languages: Vec<String>,
    pub words: Scoped,
    pub chars: Scoped,
    /// Dependency relations; always the union over languages.
    pub labels: Vocab,
    pub strategy: SharingStrategy,
}

fn build_scoped<F>(corpora: &[(&str, &[Sentence])], mode: Mode, mut add: F) -> Scoped
where
    F: FnMut(&mut Vocab, &Sentence),
{
    if mode.is_shared() {
        let mut v = Vocab::with_reserved();
        for (_, sentences) in corpora {
            for s in *sentences {
                add(&mut v, s);
            }
        }
        Scoped::Shared(v)
    } else {
        let mut per = Vec::with_capacity(corpora.len());
        for (_, sentences) in corpora {
            let mut v = Vocab::with_reserved();
            for s in *sentences {
                add(&mut v, s);
            }
            per.push(v);
        }
        Scoped::PerLanguage(per)
    }
}

/// Build the lexicon for `corpora` under `strategy`. Word and character maps
/// are shared exactly when the corresponding component is shared; the label
/// map is always the union.
pub fn build_lexicon(
    corpora: &[(&str, &[Sentence])],
    strategy: SharingStrategy,
) -> Result<Lexicon> {
    if corpora.is_empty() {
        return Err(Error::usage("build_lexicon needs at least one language"));
    }
    let languages: Vec<String> = corpora.iter().map(|(l, _)| l.to_string()).collect();
    let words = build_scoped(corpora, strategy.word, |v, s| {
        for t in &s.tokens {
            v.add(&t.form);
        }
    });
    let chars = build_scoped(corpora, strategy.char, |v, s| {
        for t in &s.tokens {
            for ch in t.form.chars() {
                v.add(&ch.to_string());
            }
        }
    });
    let mut labels = Vocab::new();
    for (_, sentences) in corpora {
        for s in *sentences {
            for t in &s.tokens {
                if let Some(l) = &t.label {
                    labels.add(l);
                }
            }
        }
    }
    Ok(Lexicon {
        languages,
        words,
        chars,
        labels,
        strategy,
    })
}

impl Lexicon {
    pub fn lang_id(&self, code: &str) -> Result<usize> {
        self.languages
            .iter()
            .position(|l| l == code)
            .ok_or_else(|| Error::config(format!("unknown language {code:?}")))
    }

    pub fn word_id(&self, lang: usize, form: &str) -> u32 {
        self.words.for_language(lang).get_or_unk(form)
    }

    pub fn word_freq(&self, lang: usize, id: u32) -> u64 {
        if id == UNK_ID || id == PAD_ID {
            return 0;
        }
        self.words.for_language(lang).count(id)
    }

    pub fn char_ids(&self, lang: usize, form: &str) -> Vec<u32> {
        let vocab = self.chars.for_language(lang);
        form.chars()
            .map(|c| vocab.get_or_unk(&c.to_string()))
            .collect()
    }

    pub fn label_id(&self, label: &str) -> Option<u32> {
        self.labels.get(label)
    }

    pub fn label_name(&self, id: u32) -> &str {
        self.labels.name(id)
    }

    pub fn num_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn write<W: Write>(&self, w: &mut W) -> Result<()> {
        write_str(w, &self.strategy.to_string())?;
        write_u32(w, self.languages.len() as u32)?;
        for l in &self.languages {
            write_str(w, l)?;
        }
        for scoped in [&self.words, &self.chars] {
            match scoped {
                Scoped::Shared(v) => {
                    write_u32(w, 0)?;
                    v.write(w)?;
                }
                Scoped::PerLanguage(vs) => {
                    write_u32(w, 1)?;
                    write_u32(w, vs.len() as u32)?;
                    for v in vs {
                        v.write(w)?;
                    }
                }
            }
        }
        self.labels.write(w)?;
        Ok(())
    }

    pub fn read<R: Read>(r: &mut R) -> Result<Lexicon> {
        let strategy: SharingStrategy = read_str(r)?.parse()?;
        let nlang = read_u32(r)? as usize;
        let mut languages = Vec::with_capacity(nlang);
        for _ in 0..nlang {
            languages.push(read_str(r)?);
        }
        let mut scopes = Vec::with_capacity(2);
        for _ in 0..2 {
            let tag = read_u32(r)?;
            scopes.push(match tag {
                0 => Scoped::Shared(Vocab::read(r)?),
                1 => {
                    let n = read_u32(r)? as usize;
                    let mut vs = Vec::with_capacity(n);
                    for _ in 0..n {
                        vs.push(Vocab::read(r)?);
                    }
                    Scoped::PerLanguage(vs)
                }
                other => return Err(Error::usage(format!("bad scope tag {other}"))),
            });
        }
        let chars = scopes.pop().unwrap();
        let words = scopes.pop().unwrap();
        let labels = Vocab::read(r)?;
        Ok(Lexicon {
            languages,
            words,
            chars,
            labels,
            strategy,
        })
    }

    /// FNV-1a hash of the serialized tables; checkpoints validate this.
    pub fn hash(&self) -> u64 {
        let mut bytes = Vec::new();
        self.write(&mut bytes).expect("in-memory write");
        let mut h: u64 = 0xcbf29ce484222325;
        for b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        h
    }
}

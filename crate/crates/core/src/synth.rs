//! Synthetic treebank generation for self-contained experiments.
//!
//! Sentences come from a small dependency grammar (determiner/adjective/
//! noun phrases around a verb, optional adverb and a verb particle). Two
//! "related" languages are realized from shared stems with per-language
//! suffixes, so character sharing has signal to exploit. A configurable
//! share of sentences places the particle after the object while attaching
//! it to the subject noun, creating crossing arcs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::conllu::{Sentence, Token};

const NOUN_STEMS: [&str; 12] = [
    "kat", "hund", "fisk", "barn", "hus", "bil", "bok", "stol", "mur", "sol", "vind", "sten",
];
const VERB_STEMS: [&str; 8] = ["ser", "jag", "gav", "tok", "fant", "bar", "slo", "holdt"];
const ADJ_STEMS: [&str; 6] = ["stor", "liten", "rod", "gra", "varm", "kald"];
const DET_STEMS: [&str; 2] = ["den", "en"];
const ADV_STEMS: [&str; 4] = ["fort", "sent", "ofte", "na"];
const PRT_STEM: &str = "til";

/// Description of one synthetic corpus.
#[derive(Debug, Clone)]
pub struct CorpusSpec {
    pub language: String,
    /// Suffix appended to every stem; related languages use different
    /// suffixes over the same stems.
    pub suffix: String,
    pub sentences: usize,
    pub seed: u64,
    /// Fraction of sentences with a crossing particle arc.
    pub nonprojective_ratio: f64,
}

impl CorpusSpec {
    pub fn new(language: &str, suffix: &str, sentences: usize, seed: u64) -> Self {
        CorpusSpec {
            language: language.to_string(),
            suffix: suffix.to_string(),
            sentences,
            seed,
            nonprojective_ratio: 0.0,
        }
    }

    pub fn with_nonprojective(mut self, ratio: f64) -> Self {
        self.nonprojective_ratio = ratio;
        self
    }
}

struct Draft {
    form: String,
    head_slot: isize,
    label: &'static str,
}

/// Generate the corpus described by `spec`, deterministically in its seed.
pub fn synthetic_corpus(spec: &CorpusSpec) -> Vec<Sentence> {
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.sentences);
    for _ in 0..spec.sentences {
        out.push(generate_sentence(spec, &mut rng));
    }
    out
}

fn generate_sentence(spec: &CorpusSpec, rng: &mut ChaCha20Rng) -> Sentence {
    let word = |rng: &mut ChaCha20Rng, stems: &[&str]| -> String {
        let stem = stems[rng.random_range(0..stems.len())];
        format!("{stem}{}", spec.suffix)
    };
    // noun phrase: (det) (adj) noun; returns drafts and the noun offset
    let noun_phrase =
        |rng: &mut ChaCha20Rng, drafts: &mut Vec<Draft>, label: &'static str| -> usize {
            let det = rng.random_range(0..10) < 7;
            let adj = rng.random_range(0..10) < 4;
            let start = drafts.len();
            if det {
                drafts.push(Draft {
                    form: word(rng, &DET_STEMS),
                    head_slot: 0,
                    label: "det",
                });
            }
            if adj {
                drafts.push(Draft {
                    form: word(rng, &ADJ_STEMS),
                    head_slot: 0,
                    label: "amod",
                });
            }
            let noun_at = drafts.len();
            drafts.push(Draft {
                form: word(rng, &NOUN_STEMS),
                head_slot: -1,
                label,
            });
            for d in &mut drafts[start..noun_at] {
                d.head_slot = noun_at as isize;
            }
            noun_at
        };

    let mut drafts: Vec<Draft> = Vec::new();
    let subj = noun_phrase(rng, &mut drafts, "nsubj");
    let verb_at = drafts.len();
    drafts.push(Draft {
        form: word(rng, &VERB_STEMS),
        head_slot: -2,
        label: "root",
    });
    let with_object = rng.random_range(0..10) < 8;
    if with_object {
        noun_phrase(rng, &mut drafts, "obj");
    }
    if rng.random_range(0..10) < 3 {
        drafts.push(Draft {
            form: word(rng, &ADV_STEMS),
            head_slot: verb_at as isize,
            label: "advmod",
        });
    }
    let crossing = with_object && rng.random::<f64>() < spec.nonprojective_ratio;
    if crossing {
        // particle after the object, attached to the subject noun: its arc
        // crosses the root and object arcs
        drafts.push(Draft {
            form: format!("{PRT_STEM}{}", spec.suffix),
            head_slot: subj as isize,
            label: "prt",
        });
    }

    let tokens = drafts
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let head = match d.head_slot {
                -2 => 0,
                -1 => verb_at + 1,
                slot => slot as usize + 1,
            };
            Token::new(i + 1, &d.form, head, d.label)
        })
        .collect();
    Sentence::new(&spec.language, tokens)
}

//! The three parameter sets (character BiLSTM, word BiLSTM, MLP scorer)
//! wired according to a sharing strategy.

mod checkpoint;
mod encode;
mod score;

pub use checkpoint::{load_model, save_model};
pub use encode::EncodedSentence;
pub use score::ActionScores;

pub(crate) use encode::ParamLeaves;

pub(crate) fn encode_cache() -> ParamLeaves {
    ParamLeaves::default()
}

use crate::autodiff::{Graph, Initializer, ParamId, ParamStore, Tensor};
use crate::error::{Error, Result};
use crate::lexicon::Lexicon;
use crate::strategy::{Mode, SharingStrategy};

/// Network and feature dimensions. The soft-sharing language embedding adds
/// `d_lang` to the input width of each soft-shared site.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelDims {
    pub word_emb: usize,
    pub char_emb: usize,
    /// Char-LSTM hidden size per direction (one layer).
    pub char_hidden: usize,
    /// Word-LSTM hidden size per direction (two layers).
    pub word_hidden: usize,
    pub lang_emb: usize,
    pub mlp_hidden: usize,
    /// Stack items in the feature function.
    pub stack_feats: usize,
    /// Buffer items in the feature function.
    pub buffer_feats: usize,
    /// Interpolation weight between the unlabeled and labeled MLP heads.
    pub lambda: f64,
}

impl Default for ModelDims {
    fn default() -> Self {
        ModelDims {
            word_emb: 100,
            char_emb: 24,
            char_hidden: 50,
            word_hidden: 125,
            lang_emb: 12,
            mlp_hidden: 100,
            stack_feats: 3,
            buffer_feats: 1,
            lambda: 0.5,
        }
    }
}

impl ModelDims {
    /// Small dimensions for tests and finite-difference checks.
    pub fn tiny() -> Self {
        ModelDims {
            word_emb: 6,
            char_emb: 4,
            char_hidden: 3,
            word_hidden: 4,
            lang_emb: 2,
            mlp_hidden: 8,
            stack_feats: 3,
            buffer_feats: 1,
            lambda: 0.5,
        }
    }

    /// Reduced dimensions for desk-scale training runs.
    pub fn reduced() -> Self {
        ModelDims {
            word_emb: 32,
            char_emb: 12,
            char_hidden: 16,
            word_hidden: 32,
            lang_emb: 8,
            mlp_hidden: 32,
            stack_feats: 3,
            buffer_feats: 1,
            lambda: 0.5,
        }
    }

    pub fn char_input(&self, strategy: &SharingStrategy) -> usize {
        self.char_emb + soft_extra(strategy.char, self.lang_emb)
    }

    pub fn word_input(&self, strategy: &SharingStrategy) -> usize {
        self.word_emb + 2 * self.char_hidden + soft_extra(strategy.word, self.lang_emb)
    }

    pub fn token_vec(&self) -> usize {
        2 * self.word_hidden
    }

    pub fn feature_width(&self, strategy: &SharingStrategy) -> usize {
        (self.stack_feats + self.buffer_feats) * self.token_vec()
            + soft_extra(strategy.state, self.lang_emb)
    }
}

fn soft_extra(mode: Mode, d_lang: usize) -> usize {
    if mode == Mode::Soft {
        d_lang
    } else {
        0
    }
}

/// A parser model: strategy-scoped parameters plus the lexicon they were
/// built over.
#[derive(Debug, Clone)]
pub struct Model {
    pub store: ParamStore,
    pub strategy: SharingStrategy,
    pub dims: ModelDims,
    pub lexicon: Lexicon,
}

fn scopes(mode: Mode, languages: &[String]) -> Vec<String> {
    if mode.is_shared() {
        vec!["shared".to_string()]
    } else {
        languages.to_vec()
    }
}

fn add_lstm(
    store: &mut ParamStore,
    init: &mut Initializer,
    prefix: &str,
    hidden: usize,
    input: usize,
) -> Result<()> {
    for dir in ["fwd", "bwd"] {
        for gate in ["w_i", "w_f", "w_o", "w_g"] {
            store.add(
                format!("{prefix}/{dir}/{gate}"),
                vec![hidden, input + hidden],
                init.glorot(hidden, input + hidden),
            )?;
        }
        for (gate, bias) in [("b_i", 0.0), ("b_f", 1.0), ("b_o", 0.0), ("b_g", 0.0)] {
            store.add(
                format!("{prefix}/{dir}/{gate}"),
                vec![hidden],
                init.constant(hidden, bias),
            )?;
        }
    }
    Ok(())
}

fn add_mlp(
    store: &mut ParamStore,
    init: &mut Initializer,
    prefix: &str,
    input: usize,
    hidden: usize,
    output: usize,
) -> Result<()> {
    store.add(
        format!("{prefix}/w1"),
        vec![hidden, input],
        init.glorot(hidden, input),
    )?;
    store.add(format!("{prefix}/b1"), vec![hidden], init.zeros(hidden))?;
    store.add(
        format!("{prefix}/w2"),
        vec![output, hidden],
        init.glorot(output, hidden),
    )?;
    store.add(format!("{prefix}/b2"), vec![output], init.zeros(output))?;
    Ok(())
}

/// Build a model for `strategy` over `lexicon`. Parameter scopes follow the
/// strategy exactly: one `shared` scope for hard/soft components, one scope
/// per language otherwise; language-embedding tables exist only at soft
/// sites. Initialization is deterministic in `seed`.
pub fn build_model(
    strategy: SharingStrategy,
    lexicon: Lexicon,
    dims: ModelDims,
    seed: u64,
) -> Result<Model> {
    if lexicon.strategy != strategy {
        return Err(Error::config(format!(
            "lexicon built for {} cannot back a {} model",
            lexicon.strategy, strategy
        )));
    }
    let languages = &lexicon.languages;
    let n_langs = languages.len();
    let mut store = ParamStore::new();
    let mut init = Initializer::new(seed);

    // C: character embeddings + one-layer char BiLSTM
    for scope in scopes(strategy.char, languages) {
        let vocab = match &lexicon.chars {
            crate::lexicon::Scoped::Shared(v) => v,
            crate::lexicon::Scoped::PerLanguage(vs) => &vs[lexicon.lang_id(&scope).unwrap_or(0)],
        };
        store.add(
            format!("c/emb/{scope}"),
            vec![vocab.len(), dims.char_emb],
            init.glorot(vocab.len(), dims.char_emb),
        )?;
        add_lstm(
            &mut store,
            &mut init,
            &format!("c/lstm/{scope}"),
            dims.char_hidden,
            dims.char_input(&strategy),
        )?;
    }
    if strategy.char == Mode::Soft {
        store.add(
            "c/lang",
            vec![n_langs, dims.lang_emb],
            init.glorot(n_langs, dims.lang_emb),
        )?;
    }

    // W: word embeddings + two-layer word BiLSTM + root/pad vectors
    for scope in scopes(strategy.word, languages) {
        let vocab = match &lexicon.words {
            crate::lexicon::Scoped::Shared(v) => v,
            crate::lexicon::Scoped::PerLanguage(vs) => &vs[lexicon.lang_id(&scope).unwrap_or(0)],
        };
        store.add(
            format!("w/emb/{scope}"),
            vec![vocab.len(), dims.word_emb],
            init.glorot(vocab.len(), dims.word_emb),
        )?;
        add_lstm(
            &mut store,
            &mut init,
            &format!("w/lstm/{scope}/l0"),
            dims.word_hidden,
            dims.word_input(&strategy),
        )?;
        add_lstm(
            &mut store,
            &mut init,
            &format!("w/lstm/{scope}/l1"),
            dims.word_hidden,
            2 * dims.word_hidden,
        )?;
        store.add(
            format!("w/root/{scope}"),
            vec![dims.token_vec()],
            init.vector(dims.token_vec()),
        )?;
        store.add(
            format!("w/pad/{scope}"),
            vec![dims.token_vec()],
            init.vector(dims.token_vec()),
        )?;
    }
    if strategy.word == Mode::Soft {
        store.add(
            "w/lang",
            vec![n_langs, dims.lang_emb],
            init.glorot(n_langs, dims.lang_emb),
        )?;
    }

    // S: the two interpolated MLP heads
    let phi = dims.feature_width(&strategy);
    let n_labels = lexicon.num_labels();
    for scope in scopes(strategy.state, languages) {
        add_mlp(
            &mut store,
            &mut init,
            &format!("s/mlp/{scope}/u"),
            phi,
            dims.mlp_hidden,
            4,
        )?;
        add_mlp(
            &mut store,
            &mut init,
            &format!("s/mlp/{scope}/v"),
            phi,
            dims.mlp_hidden,
            2 + 2 * n_labels,
        )?;
    }
    if strategy.state == Mode::Soft {
        store.add(
            "s/lang",
            vec![n_langs, dims.lang_emb],
            init.glorot(n_langs, dims.lang_emb),
        )?;
    }

    Ok(Model {
        store,
        strategy,
        dims,
        lexicon,
    })
}

impl Model {
    /// Scope string serving `lang` for a component in `mode`.
    pub fn scope(&self, mode: Mode, lang: usize) -> &str {
        if mode.is_shared() {
            "shared"
        } else {
            &self.lexicon.languages[lang]
        }
    }

    pub(crate) fn pid(&self, name: &str) -> Result<ParamId> {
        self.store
            .id(name)
            .ok_or_else(|| Error::usage(format!("unknown parameter {name}")))
    }

    /// Number of stored values whose name starts with `prefix`.
    pub fn param_count(&self, prefix: &str) -> usize {
        self.store
            .iter()
            .filter(|(_, p)| p.name.starts_with(prefix))
            .map(|(_, p)| p.len())
            .sum()
    }

    pub fn total_params(&self) -> usize {
        self.store.total_values()
    }

    /// Language-embedding row for a soft site, as a graph leaf.
    pub(crate) fn lang_row(&self, g: &mut Graph, table: &str, lang: usize) -> Result<Tensor> {
        let id = self.pid(table)?;
        g.param_row(&self.store, id, lang)
    }
}

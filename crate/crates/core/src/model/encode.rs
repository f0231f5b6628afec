//! Character and sentence encoders.

use std::collections::HashMap;

use crate::autodiff::{
    bilstm_encode, bilstm_final, BiLstmLayer, Graph, LstmWeights, ParamId, Tensor,
};
use crate::error::{Error, Result};
use crate::strategy::Mode;
use crate::transition::ROOT;

use super::Model;

/// Word-BiLSTM outputs for one sentence plus the learned root and padding
/// vectors, all living on one graph.
#[derive(Debug)]
pub struct EncodedSentence {
    tokens: Vec<Tensor>,
    root: Tensor,
    pad: Tensor,
    pub language: usize,
}

impl EncodedSentence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Vector for a node id (0 = root).
    pub fn vector(&self, node: usize) -> Tensor {
        if node == ROOT {
            self.root
        } else {
            self.tokens[node - 1]
        }
    }

    pub fn pad(&self) -> Tensor {
        self.pad
    }

    pub fn token_vectors(&self) -> &[Tensor] {
        &self.tokens
    }
}

/// Per-graph cache so each parameter becomes a leaf at most once.
#[derive(Default)]
pub(crate) struct ParamLeaves {
    map: HashMap<ParamId, Tensor>,
}

impl ParamLeaves {
    pub(crate) fn get(&mut self, g: &mut Graph, model: &Model, id: ParamId) -> Tensor {
        *self
            .map
            .entry(id)
            .or_insert_with(|| g.param(&model.store, id))
    }
}

pub(crate) fn lstm_weights(
    leaves: &mut ParamLeaves,
    g: &mut Graph,
    model: &Model,
    prefix: &str,
    dir: &str,
) -> Result<LstmWeights> {
    let mut fetch = |gate: &str| -> Result<Tensor> {
        let id = model.pid(&format!("{prefix}/{dir}/{gate}"))?;
        Ok(leaves.get(g, model, id))
    };
    Ok(LstmWeights {
        w_input: fetch("w_i")?,
        b_input: fetch("b_i")?,
        w_forget: fetch("w_f")?,
        b_forget: fetch("b_f")?,
        w_output: fetch("w_o")?,
        b_output: fetch("b_o")?,
        w_cell: fetch("w_g")?,
        b_cell: fetch("b_g")?,
    })
}

fn bilstm_layer(
    leaves: &mut ParamLeaves,
    g: &mut Graph,
    model: &Model,
    prefix: &str,
    hidden: usize,
) -> Result<BiLstmLayer> {
    Ok(BiLstmLayer {
        forward: lstm_weights(leaves, g, model, prefix, "fwd")?,
        backward: lstm_weights(leaves, g, model, prefix, "bwd")?,
        hidden,
    })
}

impl Model {
    /// Word and character ids for a form, with UNK fallback.
    pub fn token_ids(&self, lang: usize, form: &str) -> (u32, Vec<u32>) {
        (
            self.lexicon.word_id(lang, form),
            self.lexicon.char_ids(lang, form),
        )
    }

    /// ch(w): final states of the character BiLSTM over the form.
    pub fn char_encode(&self, g: &mut Graph, lang: usize, form: &str) -> Result<Tensor> {
        if form.is_empty() {
            return Err(Error::usage("char_encode of an empty form"));
        }
        let chars = self.lexicon.char_ids(lang, form);
        let mut leaves = ParamLeaves::default();
        self.char_encode_ids(&mut leaves, g, lang, &chars)
    }

    pub(crate) fn char_encode_ids(
        &self,
        leaves: &mut ParamLeaves,
        g: &mut Graph,
        lang: usize,
        chars: &[u32],
    ) -> Result<Tensor> {
        if chars.is_empty() {
            return Err(Error::usage("char_encode of an empty form"));
        }
        let scope = self.scope(self.strategy.char, lang).to_string();
        let emb = self.pid(&format!("c/emb/{scope}"))?;
        let lang_row = if self.strategy.char == Mode::Soft {
            Some(self.lang_row(g, "c/lang", lang)?)
        } else {
            None
        };
        let mut inputs = Vec::with_capacity(chars.len());
        for &c in chars {
            let e = g.param_row(&self.store, emb, c as usize)?;
            let x = match lang_row {
                Some(l) => g.concat(&[e, l])?,
                None => e,
            };
            inputs.push(x);
        }
        let layer = bilstm_layer(
            leaves,
            g,
            self,
            &format!("c/lstm/{scope}"),
            self.dims.char_hidden,
        )?;
        bilstm_final(g, &inputs, &layer)
    }

    /// Encode a sentence given per-token (word id, char ids) pairs. The word
    /// ids may differ from the lexicon lookup (training applies word
    /// dropout); character ids are always the form's characters.
    pub fn sentence_encode_ids(
        &self,
        g: &mut Graph,
        lang: usize,
        tokens: &[(u32, Vec<u32>)],
    ) -> Result<EncodedSentence> {
        let mut leaves = ParamLeaves::default();
        self.sentence_encode_cached(&mut leaves, g, lang, tokens)
    }

    pub(crate) fn sentence_encode_cached(
        &self,
        leaves: &mut ParamLeaves,
        g: &mut Graph,
        lang: usize,
        tokens: &[(u32, Vec<u32>)],
    ) -> Result<EncodedSentence> {
        if tokens.is_empty() {
            return Err(Error::usage("cannot encode an empty sentence"));
        }
        let w_scope = self.scope(self.strategy.word, lang).to_string();
        let w_emb = self.pid(&format!("w/emb/{w_scope}"))?;
        let w_lang = if self.strategy.word == Mode::Soft {
            Some(self.lang_row(g, "w/lang", lang)?)
        } else {
            None
        };
        let mut xs = Vec::with_capacity(tokens.len());
        for (word, chars) in tokens {
            let e_w = g.param_row(&self.store, w_emb, *word as usize)?;
            let ch = self.char_encode_ids(leaves, g, lang, chars)?;
            let x = match w_lang {
                Some(l) => g.concat(&[e_w, ch, l])?,
                None => g.concat(&[e_w, ch])?,
            };
            xs.push(x);
        }
        let layers = [
            bilstm_layer(
                leaves,
                g,
                self,
                &format!("w/lstm/{w_scope}/l0"),
                self.dims.word_hidden,
            )?,
            bilstm_layer(
                leaves,
                g,
                self,
                &format!("w/lstm/{w_scope}/l1"),
                self.dims.word_hidden,
            )?,
        ];
        let vs = bilstm_encode(g, &xs, &layers)?;
        let root_id = self.pid(&format!("w/root/{w_scope}"))?;
        let pad_id = self.pid(&format!("w/pad/{w_scope}"))?;
        let root = leaves.get(g, self, root_id);
        let pad = leaves.get(g, self, pad_id);
        Ok(EncodedSentence {
            tokens: vs,
            root,
            pad,
            language: lang,
        })
    }

    /// Encode a sentence of forms with plain lexicon lookups.
    pub fn sentence_encode(
        &self,
        g: &mut Graph,
        lang: usize,
        forms: &[&str],
    ) -> Result<EncodedSentence> {
        let tokens: Vec<(u32, Vec<u32>)> = forms.iter().map(|f| self.token_ids(lang, f)).collect();
        self.sentence_encode_ids(g, lang, &tokens)
    }
}

//! Feature extraction and interpolated transition scoring.

use crate::autodiff::{Graph, Tensor};
use crate::error::{Error, Result};
use crate::strategy::Mode;
use crate::transition::{Configuration, Transition};

use super::encode::{EncodedSentence, ParamLeaves};
use super::Model;

/// Output of the two MLP heads for one configuration. Scores are read as
/// λ·u + (1−λ)·v over the matching entries; `node` materializes one scored
/// action on the graph for loss construction.
#[derive(Debug, Clone, Copy)]
pub struct ActionScores {
    u: Tensor,
    v: Tensor,
    lambda: f64,
    num_labels: usize,
}

const U_SHIFT: usize = 0;
const U_SWAP: usize = 1;
const U_LEFT: usize = 2;
const U_RIGHT: usize = 3;

impl ActionScores {
    fn u_index(&self, t: Transition) -> usize {
        match t {
            Transition::Shift => U_SHIFT,
            Transition::Swap => U_SWAP,
            Transition::LeftArc(_) => U_LEFT,
            Transition::RightArc(_) => U_RIGHT,
        }
    }

    fn v_index(&self, t: Transition) -> usize {
        match t {
            Transition::Shift => 0,
            Transition::Swap => 1,
            Transition::LeftArc(l) => 2 + l as usize,
            Transition::RightArc(l) => 2 + self.num_labels + l as usize,
        }
    }

    /// Interpolated score of one action.
    pub fn value(&self, g: &Graph, t: Transition) -> f64 {
        let u = g.values(self.u)[self.u_index(t)];
        let v = g.values(self.v)[self.v_index(t)];
        self.lambda * u + (1.0 - self.lambda) * v
    }

    /// Graph node holding the interpolated score of one action.
    pub fn node(&self, g: &mut Graph, t: Transition) -> Result<Tensor> {
        let u = g.pick(self.u, self.u_index(t))?;
        let v = g.pick(self.v, self.v_index(t))?;
        let su = g.scale(u, self.lambda);
        let sv = g.scale(v, 1.0 - self.lambda);
        g.add(su, sv)
    }

    pub fn num_labels(&self) -> usize {
        self.num_labels
    }

    /// All scored actions (shift, swap, and each labeled arc).
    pub fn dense(&self, g: &Graph) -> Vec<(Transition, f64)> {
        let mut out = Vec::with_capacity(2 + 2 * self.num_labels);
        out.push((Transition::Shift, self.value(g, Transition::Shift)));
        out.push((Transition::Swap, self.value(g, Transition::Swap)));
        for l in 0..self.num_labels as u32 {
            out.push((
                Transition::LeftArc(l),
                self.value(g, Transition::LeftArc(l)),
            ));
        }
        for l in 0..self.num_labels as u32 {
            out.push((
                Transition::RightArc(l),
                self.value(g, Transition::RightArc(l)),
            ));
        }
        out
    }
}

impl Model {
    /// φ: concatenated token vectors for the deepest-to-top stack slots and
    /// the first buffer slots, padded where absent; soft state sharing
    /// appends the language embedding.
    pub fn extract_features(
        &self,
        g: &mut Graph,
        enc: &EncodedSentence,
        config: &Configuration,
        lang: usize,
    ) -> Result<Tensor> {
        if enc.language != lang {
            return Err(Error::usage(
                "encoded sentence does not belong to the scoring language",
            ));
        }
        if config.sentence_len() != enc.len() {
            return Err(Error::usage(format!(
                "configuration over {} tokens but encoding has {}",
                config.sentence_len(),
                enc.len()
            )));
        }
        let mut parts = Vec::with_capacity(self.dims.stack_feats + self.dims.buffer_feats + 1);
        for depth in (0..self.dims.stack_feats).rev() {
            parts.push(match config.stack_at(depth) {
                Some(node) => enc.vector(node),
                None => enc.pad(),
            });
        }
        for pos in 0..self.dims.buffer_feats {
            parts.push(match config.buffer_at(pos) {
                Some(node) => enc.vector(node),
                None => enc.pad(),
            });
        }
        if self.strategy.state == Mode::Soft {
            parts.push(self.lang_row(g, "s/lang", lang)?);
        }
        g.concat(&parts)
    }

    /// Run both MLP heads over φ.
    pub fn score(&self, g: &mut Graph, phi: Tensor, lang: usize) -> Result<ActionScores> {
        let mut leaves = ParamLeaves::default();
        self.score_cached(&mut leaves, g, phi, lang)
    }

    pub(crate) fn score_cached(
        &self,
        leaves: &mut ParamLeaves,
        g: &mut Graph,
        phi: Tensor,
        lang: usize,
    ) -> Result<ActionScores> {
        let expected = self.dims.feature_width(&self.strategy);
        if g.shape(phi) != [expected] {
            return Err(Error::Dimension {
                op: "score",
                lhs: g.shape(phi).to_vec(),
                rhs: vec![expected],
            });
        }
        let scope = self.scope(self.strategy.state, lang).to_string();
        let mut head = |g: &mut Graph, name: &str| -> Result<Tensor> {
            let w1 = leaves.get(g, self, self.pid(&format!("s/mlp/{scope}/{name}/w1"))?);
            let b1 = leaves.get(g, self, self.pid(&format!("s/mlp/{scope}/{name}/b1"))?);
            let w2 = leaves.get(g, self, self.pid(&format!("s/mlp/{scope}/{name}/w2"))?);
            let b2 = leaves.get(g, self, self.pid(&format!("s/mlp/{scope}/{name}/b2"))?);
            let hidden = g.affine(w1, phi, b1)?;
            let act = g.tanh(hidden);
            g.affine(w2, act, b2)
        };
        let u = head(g, "u")?;
        let v = head(g, "v")?;
        Ok(ActionScores {
            u,
            v,
            lambda: self.dims.lambda,
            num_labels: self.lexicon.num_labels(),
        })
    }

    /// Features and scores for one configuration in one call.
    pub fn score_config(
        &self,
        g: &mut Graph,
        enc: &EncodedSentence,
        config: &Configuration,
        lang: usize,
    ) -> Result<ActionScores> {
        let phi = self.extract_features(g, enc, config, lang)?;
        self.score(g, phi, lang)
    }

    pub(crate) fn score_config_cached(
        &self,
        leaves: &mut ParamLeaves,
        g: &mut Graph,
        enc: &EncodedSentence,
        config: &Configuration,
        lang: usize,
    ) -> Result<ActionScores> {
        let phi = self.extract_features(g, enc, config, lang)?;
        self.score_cached(leaves, g, phi, lang)
    }
}

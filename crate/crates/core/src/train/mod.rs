//! Oracle-supervised training with exploration, and greedy decoding.

mod loss;
mod report;

pub use loss::hinge_loss;
pub use report::{EpochRecord, TrainReport};

use std::path::{Path, PathBuf};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::autodiff::{Graph, Optimizer, Tensor};
use crate::conllu::Sentence;
use crate::corpus::sample_training;
use crate::error::{Error, Result};
use crate::eval::score_run;
use crate::lexicon::{build_lexicon, UNK_ID};
use crate::model::{build_model, save_model, Model, ModelDims};
use crate::strategy::SharingStrategy;
use crate::transition::{
    dynamic_cost, oracle_next, projective_order, Configuration, GoldTree, ProjectiveOrder,
    Transition, TransitionKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimizerChoice {
    Sgd,
    Adam,
}

/// Knobs for one training job.
#[derive(Debug, Clone)]
pub struct TrainConfig {
    pub strategy: SharingStrategy,
    pub languages: Vec<String>,
    /// Training sentences sampled per language.
    pub sample_size: usize,
    pub epochs: usize,
    pub seed: u64,
    /// Word-dropout α: a word of frequency f becomes UNK with probability
    /// α/(α+f).
    pub word_dropout: f64,
    /// First epoch (1-based) with error exploration.
    pub explore_from_epoch: usize,
    pub explore_prob: f64,
    pub margin: f64,
    pub optimizer: OptimizerChoice,
    pub learning_rate: f64,
    pub dims: ModelDims,
    /// Stop early once mean dev LAS reaches this value.
    pub stop_at_dev_las: Option<f64>,
}

impl TrainConfig {
    pub fn new(strategy: SharingStrategy, languages: Vec<String>) -> Self {
        TrainConfig {
            strategy,
            languages,
            sample_size: 5000,
            epochs: 30,
            seed: 1,
            word_dropout: 0.25,
            explore_from_epoch: 2,
            explore_prob: 0.1,
            margin: 1.0,
            optimizer: OptimizerChoice::Adam,
            learning_rate: 1e-3,
            dims: ModelDims::default(),
            stop_at_dev_las: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.languages.is_empty() || self.languages.len() > 2 {
            return Err(Error::config(format!(
                "training takes 1 or 2 languages, got {}",
                self.languages.len()
            )));
        }
        if self.sample_size == 0 {
            return Err(Error::config("sample size must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.explore_prob) {
            return Err(Error::config("exploration probability outside [0, 1]"));
        }
        if self.margin <= 0.0 {
            return Err(Error::config("margin must be positive"));
        }
        Ok(())
    }
}

/// Train and dev sections for one language.
#[derive(Debug, Clone)]
pub struct LanguageData {
    pub code: String,
    pub train: Vec<Sentence>,
    pub dev: Vec<Sentence>,
}

/// A trained model plus its per-epoch record.
#[derive(Debug)]
pub struct TrainOutcome {
    pub model: Model,
    pub report: TrainReport,
}

/// Every legal action with labels attached to arc transitions.
fn labeled_legal(config: &Configuration, num_labels: usize) -> Result<Vec<Transition>> {
    let mut out = Vec::new();
    for kind in config.legal_transitions()? {
        match kind {
            TransitionKind::Shift => out.push(Transition::Shift),
            TransitionKind::Swap => out.push(Transition::Swap),
            TransitionKind::LeftArc => out.extend((0..num_labels as u32).map(Transition::LeftArc)),
            TransitionKind::RightArc => {
                out.extend((0..num_labels as u32).map(Transition::RightArc))
            }
        }
    }
    Ok(out)
}

/// One supervised pass over a sentence: accumulates hinge losses along the
/// walked trajectory and backpropagates them. Returns (loss, steps).
#[allow(clippy::too_many_arguments)]
pub fn train_sentence(
    model: &mut Model,
    lang: usize,
    tokens: &[(u32, Vec<u32>)],
    gold: &GoldTree,
    order: &ProjectiveOrder,
    explore_prob: f64,
    margin: f64,
    rng: &mut ChaCha20Rng,
) -> Result<(f64, usize)> {
    let mut g = Graph::new();
    let mut leaves = crate::model::encode_cache();
    let enc = model.sentence_encode_cached(&mut leaves, &mut g, lang, tokens)?;
    let mut config = Configuration::initial(tokens.len())?;
    let num_labels = model.lexicon.num_labels();
    let mut total_loss = 0.0;
    let mut loss_node: Option<Tensor> = None;
    let mut steps = 0usize;
    while !config.is_terminal() {
        let scores = model.score_config_cached(&mut leaves, &mut g, &enc, &config, lang)?;
        let legal = labeled_legal(&config, num_labels)?;
        let zero_cost = oracle_next(&config, gold, order)?;
        let dense: Vec<(Transition, f64)> =
            legal.iter().map(|&t| (t, scores.value(&g, t))).collect();
        let (correct, wrong, step_loss) = loss::hinge_parts(&dense, &zero_cost, margin)?;
        if step_loss > 0.0 {
            let wrong = wrong.expect("positive loss implies a wrong action");
            let c_node = scores.node(&mut g, correct)?;
            let w_node = scores.node(&mut g, wrong)?;
            let m_node = g.scalar(margin);
            let gap = g.sub(c_node, w_node)?;
            let violation = g.sub(m_node, gap)?;
            let step_node = g.relu(violation);
            loss_node = Some(match loss_node {
                Some(acc) => g.add(acc, step_node)?,
                None => step_node,
            });
            total_loss += step_loss;
        }
        let next = if zero_cost == [Transition::Swap] {
            // the static decision always takes precedence
            Transition::Swap
        } else if explore_prob > 0.0 && rng.random::<f64>() < explore_prob {
            dense
                .iter()
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .map(|&(t, _)| t)
                .unwrap()
        } else {
            correct
        };
        config = config.apply(next)?;
        steps += 1;
    }
    if let Some(node) = loss_node {
        g.backward(node, &mut model.store)?;
    }
    Ok((total_loss, steps))
}

/// Greedy decode: repeatedly apply the highest-scoring legal action. The
/// result is structurally a tree; this is checked before returning.
pub fn parse(model: &Model, sentence: &Sentence, lang: usize) -> Result<Sentence> {
    let tokens: Vec<(u32, Vec<u32>)> = sentence
        .tokens
        .iter()
        .map(|t| model.token_ids(lang, &t.form))
        .collect();
    let mut g = Graph::new();
    let mut leaves = crate::model::encode_cache();
    let enc = model.sentence_encode_cached(&mut leaves, &mut g, lang, &tokens)?;
    let mut config = Configuration::initial(tokens.len())?;
    let num_labels = model.lexicon.num_labels();
    while !config.is_terminal() {
        let scores = model.score_config_cached(&mut leaves, &mut g, &enc, &config, lang)?;
        let legal = labeled_legal(&config, num_labels)?;
        let best = legal
            .iter()
            .map(|&t| (t, scores.value(&g, t)))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .map(|(t, _)| t)
            .ok_or_else(|| Error::Oracle("no legal action while decoding".into()))?;
        config = config.apply(best)?;
    }
    let mut out = sentence.clone();
    for t in &mut out.tokens {
        let (head, label) = config
            .head_of(t.index)
            .ok_or_else(|| Error::Oracle(format!("token {} left unattached", t.index)))?;
        t.head = Some(head);
        t.label = Some(model.lexicon.label_name(label).to_string());
    }
    validate_tree(&out)?;
    Ok(out)
}

fn validate_tree(sentence: &Sentence) -> Result<()> {
    let n = sentence.len();
    for start in 1..=n {
        let mut hops = 0usize;
        let mut cur = start;
        while cur != 0 {
            cur = sentence.tokens[cur - 1]
                .head
                .ok_or_else(|| Error::Oracle("decoded token without head".into()))?;
            hops += 1;
            if hops > n {
                return Err(Error::Oracle("decoded structure is cyclic".into()));
            }
        }
    }
    Ok(())
}

fn derived_seed(base: u64, stream: u64) -> u64 {
    base.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(stream)
}

/// Train a model on 1 (monolingual baseline) or 2 languages. Each epoch
/// shuffles the mixed sampled training stream, applies word dropout, walks
/// every sentence with the static-dynamic oracle (exploration from epoch
/// `explore_from_epoch`), evaluates dev LAS per language and keeps the
/// checkpoint of the best mean dev LAS (earliest epoch wins ties).
pub fn train(
    config: &TrainConfig,
    data: &[LanguageData],
    checkpoint: Option<&Path>,
) -> Result<TrainOutcome> {
    config.validate()?;
    if data.len() != config.languages.len() {
        return Err(Error::config(format!(
            "config names {} languages but data covers {}",
            config.languages.len(),
            data.len()
        )));
    }
    for (d, code) in data.iter().zip(&config.languages) {
        if &d.code != code {
            return Err(Error::config(format!(
                "language order mismatch: {} vs {}",
                d.code, code
            )));
        }
        if d.dev.is_empty() {
            return Err(Error::config(format!("no dev data for {}", d.code)));
        }
        if d.train.is_empty() {
            return Err(Error::config(format!("no training data for {}", d.code)));
        }
    }

    let sampled: Vec<Vec<Sentence>> = data
        .iter()
        .enumerate()
        .map(|(i, d)| {
            sample_training(
                &d.train,
                config.sample_size,
                derived_seed(config.seed, i as u64),
            )
        })
        .collect();
    let corpora: Vec<(&str, &[Sentence])> = data
        .iter()
        .zip(&sampled)
        .map(|(d, s)| (d.code.as_str(), s.as_slice()))
        .collect();
    let lexicon = build_lexicon(&corpora, config.strategy)?;
    let mut model = build_model(config.strategy, lexicon, config.dims, config.seed)?;

    // precompute ids, gold trees and projective orders
    struct Prepared {
        lang: usize,
        tokens: Vec<(u32, Vec<u32>)>,
        gold: GoldTree,
        order: ProjectiveOrder,
    }
    let mut prepared = Vec::new();
    for (lang, sentences) in sampled.iter().enumerate() {
        for s in sentences {
            let tokens: Vec<(u32, Vec<u32>)> = s
                .tokens
                .iter()
                .map(|t| model.token_ids(lang, &t.form))
                .collect();
            let gold = GoldTree::from_sentence(s, |l| {
                model
                    .lexicon
                    .label_id(l)
                    .expect("label seen during lexicon build")
            })?;
            let order = projective_order(&gold);
            prepared.push(Prepared {
                lang,
                tokens,
                gold,
                order,
            });
        }
    }

    let mut optimizer = match config.optimizer {
        OptimizerChoice::Sgd => Optimizer::sgd(config.learning_rate),
        OptimizerChoice::Adam => Optimizer::adam(config.learning_rate),
    };
    let mut rng = ChaCha20Rng::seed_from_u64(derived_seed(config.seed, 0xfeed));

    let mut report = TrainReport::new(config.languages.clone());
    let mut best: Option<(f64, usize, crate::autodiff::ParamStore)> = None;

    for epoch in 1..=config.epochs {
        let explore = epoch >= config.explore_from_epoch;
        let mut order_ix: Vec<usize> = (0..prepared.len()).collect();
        for i in (1..order_ix.len()).rev() {
            let j = rng.random_range(0..=i);
            order_ix.swap(i, j);
        }
        let mut epoch_loss = 0.0;
        for &ix in &order_ix {
            let p = &prepared[ix];
            let mut tokens = p.tokens.clone();
            if config.word_dropout > 0.0 {
                for (word, _) in &mut tokens {
                    if *word != UNK_ID {
                        let f = model.lexicon.word_freq(p.lang, *word) as f64;
                        let p_drop = config.word_dropout / (config.word_dropout + f);
                        if rng.random::<f64>() < p_drop {
                            *word = UNK_ID;
                        }
                    }
                }
            }
            let explore_prob = if explore { config.explore_prob } else { 0.0 };
            let (loss, _steps) = train_sentence(
                &mut model,
                p.lang,
                &tokens,
                &p.gold,
                &p.order,
                explore_prob,
                config.margin,
                &mut rng,
            )?;
            epoch_loss += loss;
            if model.store.any_grad() {
                optimizer.step(&mut model.store)?;
            }
        }

        let mut dev_las = Vec::with_capacity(data.len());
        for (lang, d) in data.iter().enumerate() {
            let parsed: Result<Vec<Sentence>> =
                d.dev.iter().map(|s| parse(&model, s, lang)).collect();
            let run = score_run(&d.dev, &parsed?, &d.code, "train")?;
            dev_las.push(run.las());
        }
        let mean_las = dev_las.iter().sum::<f64>() / dev_las.len() as f64;
        report.epochs.push(EpochRecord {
            epoch,
            loss: epoch_loss,
            dev_las: dev_las.clone(),
        });
        let improved = match &best {
            None => true,
            Some((b, _, _)) => mean_las > *b,
        };
        if improved {
            best = Some((mean_las, epoch, model.store.clone()));
        }
        if let Some(stop) = config.stop_at_dev_las {
            if mean_las >= stop {
                break;
            }
        }
    }

    let (_, best_epoch, best_store) = best.expect("at least one epoch ran");
    model.store = best_store;
    model.store.clear_grads();
    report.best_epoch = best_epoch;
    if let Some(path) = checkpoint {
        save_model(path, &model)?;
        report.checkpoint = Some(PathBuf::from(path));
    }
    Ok(TrainOutcome { model, report })
}

/// Sum of dynamic costs along a decode — used by tests to confirm that
/// oracle-following trajectories stay on zero cost.
pub fn trajectory_cost(
    gold: &GoldTree,
    order: &ProjectiveOrder,
    transitions: &[Transition],
) -> Result<usize> {
    let mut config = Configuration::initial(gold.len())?;
    let mut cost = 0usize;
    for &t in transitions {
        cost += dynamic_cost(&config, t.kind(), gold, order)?;
        config = config.apply(t)?;
    }
    Ok(cost)
}

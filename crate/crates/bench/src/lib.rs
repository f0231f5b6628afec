//! Shared setup for the criterion benchmarks.

use crossparse::conllu::Sentence;
use crossparse::lexicon::build_lexicon;
use crossparse::model::{build_model, Model, ModelDims};
use crossparse::strategy::SharingStrategy;
use crossparse::synth::{synthetic_corpus, CorpusSpec};
use crossparse::train::{train, LanguageData, TrainConfig};

pub fn bilingual_corpora(n: usize) -> (Vec<Sentence>, Vec<Sentence>) {
    let a = synthetic_corpus(&CorpusSpec::new("aa", "a", n, 21).with_nonprojective(0.1));
    let b = synthetic_corpus(&CorpusSpec::new("bb", "o", n, 22).with_nonprojective(0.1));
    (a, b)
}

/// A small trained model for decode benchmarks.
pub fn trained_model(strategy: SharingStrategy, n: usize) -> (Model, Vec<Sentence>) {
    let (a, b) = bilingual_corpora(n);
    let mut config = TrainConfig::new(strategy, vec!["aa".into(), "bb".into()]);
    config.dims = ModelDims::reduced();
    config.epochs = 2;
    config.sample_size = n;
    let data = vec![
        LanguageData {
            code: "aa".into(),
            train: a.clone(),
            dev: a[..4].to_vec(),
        },
        LanguageData {
            code: "bb".into(),
            train: b.clone(),
            dev: b[..4].to_vec(),
        },
    ];
    let outcome = train(&config, &data, None).expect("benchmark model trains");
    (outcome.model, a)
}

/// An untrained model over the corpora, for forward-pass benchmarks.
pub fn fresh_model(strategy: SharingStrategy, n: usize) -> (Model, Vec<Sentence>) {
    let (a, b) = bilingual_corpora(n);
    let lexicon = build_lexicon(&[("aa", &a), ("bb", &b)], strategy).expect("lexicon");
    let model = build_model(strategy, lexicon, ModelDims::reduced(), 7).expect("model");
    (model, a)
}

//! Subcommand implementations.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};

use crossparse::conllu::{parse_conllu, parse_conllu_lenient, serialize, treebank_stats, Sentence};
use crossparse::eval::{
    grid_report, randomization_test, score_run, select_strategy, OursReport, OursRow, ScoredRun,
};
use crossparse::lexicon::Vocab;
use crossparse::model::load_model;
use crossparse::strategy::{Mode, SharingStrategy};
use crossparse::train::{train, LanguageData, TrainConfig, TrainOutcome};
use crossparse::transition::{oracle_trace, GoldTree};

use crate::config::{ExperimentConfig, RunKind};
use crate::jobs::run_parallel;

fn read_treebank(path: &Path, language: &str) -> Result<Vec<Sentence>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(parse_conllu(&text, language)?)
}

fn load_language_data(config: &ExperimentConfig) -> Result<Vec<LanguageData>> {
    config
        .languages
        .iter()
        .map(|l| {
            Ok(LanguageData {
                code: l.clone(),
                train: read_treebank(&config.train_paths[l], l)?,
                dev: read_treebank(&config.dev_paths[l], l)?,
            })
        })
        .collect()
}

fn train_config(
    config: &ExperimentConfig,
    strategy: SharingStrategy,
    languages: Vec<String>,
    seed: u64,
) -> TrainConfig {
    let mut tc = TrainConfig::new(strategy, languages);
    tc.sample_size = config.sample_size;
    tc.epochs = config.epochs;
    tc.seed = seed;
    tc.word_dropout = config.word_dropout;
    tc.explore_from_epoch = config.explore_from_epoch;
    tc.explore_prob = config.explore_prob;
    tc.margin = config.margin;
    tc.optimizer = config.optimizer;
    tc.learning_rate = config.learning_rate;
    tc.dims = config.dims;
    tc.stop_at_dev_las = config.stop_at_dev_las;
    tc
}

fn write_out(dir: &Path, name: &str, content: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, content)?;
    Ok(path)
}

/// Dev LAS per language at the best epoch.
fn best_dev_las(outcome: &TrainOutcome) -> Vec<f64> {
    outcome
        .report
        .best_record()
        .map(|e| e.dev_las.clone())
        .unwrap_or_default()
}

/// `train`: one training job (the monolingual baseline when a single
/// language is configured).
pub fn cmd_train(config: &ExperimentConfig) -> Result<()> {
    let strategy = match (&config.run, config.languages.len()) {
        (_, 1) => SharingStrategy::separate(),
        (RunKind::Single(s), _) => *s,
        _ => {
            return Err(crossparse::Error::config(
                "train needs a concrete strategy (use grid/ours subcommands otherwise)",
            )
            .into())
        }
    };
    let data = load_language_data(config)?;
    let tc = train_config(config, strategy, config.languages.clone(), config.seed);
    fs::create_dir_all(&config.out_dir)?;
    let ckpt = config.out_dir.join("model.ckpt");
    let outcome = train(&tc, &data, Some(&ckpt))?;
    write_out(
        &config.out_dir,
        "train-report.txt",
        &outcome.report.to_text(),
    )?;
    write_out(&config.out_dir, "manifest.txt", &config.manifest("train")?)?;
    let las = best_dev_las(&outcome);
    println!(
        "trained {} on {}: best epoch {} dev LAS {}",
        strategy,
        config.languages.join("+"),
        outcome.report.best_epoch,
        las.iter()
            .zip(&config.languages)
            .map(|(v, l)| format!("{l}={v:.2}"))
            .collect::<Vec<_>>()
            .join(" ")
    );
    println!("checkpoint: {}", ckpt.display());
    Ok(())
}

/// `parse`: annotate a file with predicted heads and relations.
pub fn cmd_parse(
    model_path: &Path,
    input: &Path,
    language: &str,
    output: Option<&Path>,
) -> Result<()> {
    let model = load_model(model_path)?;
    let lang = model.lexicon.lang_id(language)?;
    let text =
        fs::read_to_string(input).with_context(|| format!("cannot read {}", input.display()))?;
    let sentences = parse_conllu_lenient(&text, language)?;
    let parsed: Result<Vec<Sentence>, crossparse::Error> = sentences
        .iter()
        .map(|s| crossparse::train::parse(&model, s, lang))
        .collect();
    let out = serialize(&parsed?);
    match output {
        Some(p) => fs::write(p, out)?,
        None => print!("{out}"),
    }
    Ok(())
}

/// `eval`: attachment scores, optionally with a significance test against a
/// baseline system.
pub fn cmd_eval(
    gold_path: &Path,
    system_path: &Path,
    baseline_path: Option<&Path>,
    shuffles: usize,
    seed: u64,
) -> Result<()> {
    let gold = read_treebank(gold_path, "gold")?;
    let read_system = |p: &Path| -> Result<Vec<Sentence>> {
        let text = fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
        Ok(parse_conllu(&text, "sys")?)
    };
    let system = read_system(system_path)?;
    let run = score_run(&gold, &system, "gold", "system")?;
    println!("system: UAS {:.2} LAS {:.2}", run.uas(), run.las());
    if let Some(base) = baseline_path {
        let baseline = read_system(base)?;
        let base_run = score_run(&gold, &baseline, "gold", "baseline")?;
        println!(
            "baseline: UAS {:.2} LAS {:.2}",
            base_run.uas(),
            base_run.las()
        );
        let p = randomization_test(&run, &base_run, shuffles, seed)?;
        println!(
            "delta LAS {:+.2}  p = {:.4} ({} shuffles)",
            run.las() - base_run.las(),
            p,
            shuffles
        );
    }
    Ok(())
}

/// `stats`: sentence and token counts per treebank.
pub fn cmd_stats(paths: &[PathBuf]) -> Result<()> {
    for path in paths {
        let sentences = read_treebank(path, "xx")?;
        let (n_sent, n_tok) = treebank_stats(&sentences);
        println!("{}\t{}\t{}", path.display(), n_sent, n_tok);
    }
    Ok(())
}

/// `oracle-trace`: step-by-step oracle derivations for gold sentences.
pub fn cmd_oracle_trace(input: &Path, sentence: Option<usize>) -> Result<()> {
    let sentences = read_treebank(input, "xx")?;
    let selected: Vec<(usize, &Sentence)> = match sentence {
        Some(k) => {
            let s = sentences
                .get(k.saturating_sub(1))
                .ok_or_else(|| anyhow!("sentence {k} out of range (1..={})", sentences.len()))?;
            vec![(k, s)]
        }
        None => sentences
            .iter()
            .enumerate()
            .map(|(i, s)| (i + 1, s))
            .collect(),
    };
    for (k, s) in selected {
        let mut labels = Vocab::new();
        let gold = GoldTree::from_sentence(s, |l| labels.add(l))?;
        println!("# sentence {k}");
        print!("{}", oracle_trace(&gold, |id| labels.name(id).to_string())?);
    }
    Ok(())
}

enum GridJob {
    Cell(SharingStrategy),
    Mono(usize),
}

/// `grid`: train all 27 strategies plus the two monolingual baselines and
/// emit the ranked report.
pub fn cmd_grid(config: &ExperimentConfig) -> Result<()> {
    let data = load_language_data(config)?;
    let mut jobs: Vec<GridJob> = SharingStrategy::all()
        .into_iter()
        .map(GridJob::Cell)
        .collect();
    jobs.push(GridJob::Mono(0));
    jobs.push(GridJob::Mono(1));
    eprintln!("grid: {} jobs over {} workers", jobs.len(), config.jobs);
    let results = run_parallel(jobs, config.jobs, |job| match job {
        GridJob::Cell(strategy) => {
            let tc = train_config(config, strategy, config.languages.clone(), config.seed);
            (
                Some(strategy),
                0usize,
                train(&tc, &data, None).map(|o| best_dev_las(&o)),
            )
        }
        GridJob::Mono(ix) => {
            let tc = train_config(
                config,
                SharingStrategy::separate(),
                vec![config.languages[ix].clone()],
                config.seed,
            );
            (
                None,
                ix,
                train(&tc, &data[ix..=ix], None).map(|o| best_dev_las(&o)),
            )
        }
    });

    let mut rows = Vec::new();
    let mut missing = Vec::new();
    let mut mono = vec![0.0; 2];
    for (strategy, ix, outcome) in results {
        match (strategy, outcome) {
            (Some(s), Ok(las)) => rows.push((s, las)),
            (Some(s), Err(e)) => {
                eprintln!("cell {s} failed: {e}");
                missing.push(s);
            }
            (None, Ok(las)) => mono[ix] = las[0],
            (None, Err(e)) => return Err(e.into()),
        }
    }
    let report = grid_report(&config.languages, mono, rows, missing)?;
    let text = report.render_text();
    write_out(&config.out_dir, "grid.txt", &text)?;
    write_out(&config.out_dir, "grid.csv", &report.render_csv())?;
    write_out(&config.out_dir, "manifest.txt", &config.manifest("grid")?)?;
    print!("{text}");
    Ok(())
}

/// `ours`: 9-cell (W, C) sweep with a shared MLP, dev-based selection per
/// target language, test evaluation against the monolingual baseline with a
/// randomization test.
pub fn cmd_ours(config: &ExperimentConfig) -> Result<()> {
    let data = load_language_data(config)?;
    let cells: Vec<SharingStrategy> = {
        let mut v = Vec::new();
        for w in Mode::ALL {
            for c in Mode::ALL {
                v.push(SharingStrategy::new(c, w, Mode::Hard));
            }
        }
        v
    };
    enum OursJob {
        Cell(SharingStrategy),
        Mono(usize),
    }
    let mut jobs: Vec<OursJob> = cells.iter().copied().map(OursJob::Cell).collect();
    for target in &config.targets {
        let ix = config.languages.iter().position(|l| l == target).unwrap();
        jobs.push(OursJob::Mono(ix));
    }
    eprintln!("ours: {} jobs over {} workers", jobs.len(), config.jobs);
    let results = run_parallel(jobs, config.jobs, |job| match job {
        OursJob::Cell(strategy) => {
            let tc = train_config(config, strategy, config.languages.clone(), config.seed);
            ("cell", strategy, 0usize, train(&tc, &data, None))
        }
        OursJob::Mono(ix) => {
            let tc = train_config(
                config,
                SharingStrategy::separate(),
                vec![config.languages[ix].clone()],
                config.seed,
            );
            (
                "mono",
                SharingStrategy::separate(),
                ix,
                train(&tc, &data[ix..=ix], None),
            )
        }
    });

    let mut cell_outcomes: Vec<(SharingStrategy, TrainOutcome)> = Vec::new();
    let mut mono_outcomes: BTreeMap<usize, TrainOutcome> = BTreeMap::new();
    for (kind, strategy, ix, outcome) in results {
        let outcome = outcome.map_err(|e| anyhow!("{kind} {strategy} failed: {e}"))?;
        if kind == "cell" {
            cell_outcomes.push((strategy, outcome));
        } else {
            mono_outcomes.insert(ix, outcome);
        }
    }

    let mut report = OursReport::default();
    for target in &config.targets {
        let li = config.languages.iter().position(|l| l == target).unwrap();
        let mut dev_cells: BTreeMap<(Mode, Mode), f64> = BTreeMap::new();
        for (strategy, outcome) in &cell_outcomes {
            dev_cells.insert((strategy.word, strategy.char), best_dev_las(outcome)[li]);
        }
        let (w, c) = select_strategy(&dev_cells)?;
        let chosen = SharingStrategy::new(c, w, Mode::Hard);
        let (_, chosen_outcome) = cell_outcomes
            .iter()
            .find(|(s, _)| *s == chosen)
            .expect("selected cell was trained");
        let test = read_treebank(&config.test_paths[target], target)?;
        let ours_run = score_test(
            &chosen_outcome.model,
            &test,
            target,
            li,
            &chosen.to_string(),
        )?;
        let mono_outcome = &mono_outcomes[&li];
        let mono_run = score_test(&mono_outcome.model, &test, target, 0, "mono")?;
        let p = randomization_test(&ours_run, &mono_run, config.shuffles, config.seed)?;
        report.rows.push(OursRow {
            language: target.clone(),
            word_mode: w,
            char_mode: c,
            ours_las: ours_run.las(),
            mono_las: mono_run.las(),
            p_value: Some(p),
        });
    }
    let text = report.render_text();
    write_out(&config.out_dir, "ours.txt", &text)?;
    write_out(&config.out_dir, "manifest.txt", &config.manifest("ours")?)?;
    print!("{text}");
    Ok(())
}

fn score_test(
    model: &crossparse::model::Model,
    test: &[Sentence],
    language: &str,
    lang_ix: usize,
    system: &str,
) -> Result<ScoredRun> {
    let parsed: Result<Vec<Sentence>, crossparse::Error> = test
        .iter()
        .map(|s| crossparse::train::parse(model, s, lang_ix))
        .collect();
    Ok(score_run(test, &parsed?, language, system)?)
}

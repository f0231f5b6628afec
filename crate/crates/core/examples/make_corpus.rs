//! Write synthetic bilingual treebanks for trying out the CLI:
//!
//! ```bash
//! cargo run -p crossparse --example make_corpus -- /tmp/demo
//! ```
//!
//! produces `{train,dev,test}_{aa,bb}.conllu` plus a ready `exp.conf`.

use std::fs;
use std::path::PathBuf;

use crossparse::conllu::serialize;
use crossparse::synth::{synthetic_corpus, CorpusSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "demo-data".to_string()),
    );
    fs::create_dir_all(&dir)?;
    let splits = [("train", 400usize, 0u64), ("dev", 100, 1), ("test", 100, 2)];
    for (lang, suffix, base) in [("aa", "a", 100u64), ("bb", "o", 200)] {
        for (split, n, off) in splits {
            let corpus = synthetic_corpus(
                &CorpusSpec::new(lang, suffix, n, base + off).with_nonprojective(0.08),
            );
            fs::write(dir.join(format!("{split}_{lang}.conllu")), serialize(&corpus))?;
        }
    }
    let conf = format!(
        "languages = aa,bb\n\
         strategy = C=x,W=h,S=id\n\
         seed = 1\n\
         epochs = 4\n\
         sample_size = 400\n\
         dims = reduced\n\
         out_dir = {0}/runs\n\
         train.aa = {0}/train_aa.conllu\n\
         dev.aa = {0}/dev_aa.conllu\n\
         test.aa = {0}/test_aa.conllu\n\
         train.bb = {0}/train_bb.conllu\n\
         dev.bb = {0}/dev_bb.conllu\n\
         test.bb = {0}/test_bb.conllu\n",
        dir.display()
    );
    fs::write(dir.join("exp.conf"), conf)?;
    println!("wrote treebanks and exp.conf under {}", dir.display());
    Ok(())
}

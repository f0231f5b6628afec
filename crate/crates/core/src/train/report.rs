//! Line-oriented training record, one epoch per line.

use std::path::PathBuf;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct EpochRecord {
    pub epoch: usize,
    pub loss: f64,
    /// Dev LAS per language, in the configured language order.
    pub dev_las: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrainReport {
    pub languages: Vec<String>,
    pub epochs: Vec<EpochRecord>,
    /// 1-based; argmax of mean dev LAS, earliest on ties.
    pub best_epoch: usize,
    pub checkpoint: Option<PathBuf>,
}

impl TrainReport {
    pub fn new(languages: Vec<String>) -> Self {
        TrainReport {
            languages,
            epochs: Vec::new(),
            best_epoch: 0,
            checkpoint: None,
        }
    }

    pub fn best_record(&self) -> Option<&EpochRecord> {
        self.epochs.iter().find(|e| e.epoch == self.best_epoch)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("languages");
        for l in &self.languages {
            out.push('\t');
            out.push_str(l);
        }
        out.push('\n');
        for e in &self.epochs {
            out.push_str(&format!("epoch\t{}\tloss\t{:.6}\tdev-las", e.epoch, e.loss));
            for las in &e.dev_las {
                out.push_str(&format!("\t{las:.4}"));
            }
            out.push('\n');
        }
        out.push_str(&format!("best-epoch\t{}\n", self.best_epoch));
        if let Some(p) = &self.checkpoint {
            out.push_str(&format!("checkpoint\t{}\n", p.display()));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<TrainReport> {
        let mut report = TrainReport::default();
        for (i, line) in text.lines().enumerate() {
            let fields: Vec<&str> = line.split('\t').collect();
            let bad = |msg: &str| Error::format(i + 1, msg.to_string());
            match fields[0] {
                "languages" => {
                    report.languages = fields[1..].iter().map(|s| s.to_string()).collect();
                }
                "epoch" => {
                    if fields.len() < 5 || fields[2] != "loss" || fields[4] != "dev-las" {
                        return Err(bad("malformed epoch record"));
                    }
                    let epoch = fields[1].parse().map_err(|_| bad("bad epoch number"))?;
                    let loss = fields[3].parse().map_err(|_| bad("bad loss"))?;
                    let dev_las = fields[5..]
                        .iter()
                        .map(|f| f.parse().map_err(|_| bad("bad dev las")))
                        .collect::<Result<Vec<f64>>>()?;
                    report.epochs.push(EpochRecord {
                        epoch,
                        loss,
                        dev_las,
                    });
                }
                "best-epoch" => {
                    report.best_epoch = fields[1].parse().map_err(|_| bad("bad best epoch"))?;
                }
                "checkpoint" => {
                    report.checkpoint = Some(PathBuf::from(fields[1]));
                }
                "" => {}
                other => {
                    return Err(bad(&format!("unknown record {other:?}")));
                }
            }
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_roundtrips_through_text() {
        let mut r = TrainReport::new(vec!["aa".into(), "bb".into()]);
        r.epochs.push(EpochRecord {
            epoch: 1,
            loss: 12.5,
            dev_las: vec![55.0, 52.25],
        });
        r.epochs.push(EpochRecord {
            epoch: 2,
            loss: 7.25,
            dev_las: vec![60.5, 58.0],
        });
        r.best_epoch = 2;
        r.checkpoint = Some(PathBuf::from("runs/model.ckpt"));
        let text = r.to_text();
        let back = TrainReport::from_text(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.best_record().unwrap().epoch, 2);
    }
}

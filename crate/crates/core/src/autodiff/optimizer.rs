//! SGD and Adam over a parameter store.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::params::{ParamId, ParamStore};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OptimizerKind {
    Sgd,
    Adam { beta1: f64, beta2: f64, eps: f64 },
}

#[derive(Debug, Clone)]
pub struct Optimizer {
    pub kind: OptimizerKind,
    pub learning_rate: f64,
    step: u64,
    first_moment: BTreeMap<ParamId, Vec<f64>>,
    second_moment: BTreeMap<ParamId, Vec<f64>>,
}

impl Optimizer {
    pub fn sgd(learning_rate: f64) -> Self {
        Optimizer {
            kind: OptimizerKind::Sgd,
            learning_rate,
            step: 0,
            first_moment: BTreeMap::new(),
            second_moment: BTreeMap::new(),
        }
    }

    /// Adam with β₁ = 0.9, β₂ = 0.999, ε = 1e-8.
    pub fn adam(learning_rate: f64) -> Self {
        Optimizer {
            kind: OptimizerKind::Adam {
                beta1: 0.9,
                beta2: 0.999,
                eps: 1e-8,
            },
            learning_rate,
            step: 0,
            first_moment: BTreeMap::new(),
            second_moment: BTreeMap::new(),
        }
    }

    pub fn steps_taken(&self) -> u64 {
        self.step
    }

    /// Apply one update from the accumulated gradients, then clear them.
    /// Parameters without a materialized gradient are left untouched.
    pub fn step(&mut self, store: &mut ParamStore) -> Result<()> {
        if !store.any_grad() {
            return Err(Error::usage("optimizer step with no accumulated gradients"));
        }
        self.step += 1;
        let touched: Vec<ParamId> = store
            .iter()
            .filter(|(_, p)| p.grad.is_some())
            .map(|(id, _)| id)
            .collect();
        match self.kind {
            OptimizerKind::Sgd => {
                for id in touched {
                    let lr = self.learning_rate;
                    let grad = store.grad(id).unwrap().to_vec();
                    for (v, g) in store.values_mut(id).iter_mut().zip(&grad) {
                        *v -= lr * g;
                    }
                }
            }
            OptimizerKind::Adam { beta1, beta2, eps } => {
                let t = self.step as i32;
                let bc1 = 1.0 - beta1.powi(t);
                let bc2 = 1.0 - beta2.powi(t);
                for id in touched {
                    let grad = store.grad(id).unwrap().to_vec();
                    let n = grad.len();
                    let m = self.first_moment.entry(id).or_insert_with(|| vec![0.0; n]);
                    for (mi, gi) in m.iter_mut().zip(&grad) {
                        *mi = beta1 * *mi + (1.0 - beta1) * gi;
                    }
                    let m = m.clone();
                    let v = self.second_moment.entry(id).or_insert_with(|| vec![0.0; n]);
                    for (vi, gi) in v.iter_mut().zip(&grad) {
                        *vi = beta2 * *vi + (1.0 - beta2) * gi * gi;
                    }
                    let v = v.clone();
                    let lr = self.learning_rate;
                    for ((p, mi), vi) in store.values_mut(id).iter_mut().zip(&m).zip(&v) {
                        let m_hat = mi / bc1;
                        let v_hat = vi / bc2;
                        *p -= lr * m_hat / (v_hat.sqrt() + eps);
                    }
                }
            }
        }
        store.clear_grads();
        Ok(())
    }
}

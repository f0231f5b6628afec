//! Minimal reverse-mode automatic differentiation.
//!
//! Enough tensor machinery for character/word BiLSTMs and MLP scoring: a
//! single-use tape ([`Graph`]), named parameter storage ([`ParamStore`]),
//! seeded initialization, SGD/Adam, and a binary checkpoint format. All
//! computation is f64; checkpoints store 32-bit values.

mod checkpoint;
mod graph;
mod init;
mod lstm;
mod optimizer;
mod params;

pub use checkpoint::{read_params, write_params};
pub(crate) use checkpoint::{read_str, read_u32, read_u64, write_str, write_u32, write_u64};
pub use graph::{Graph, Tensor};
pub use init::Initializer;
pub use lstm::{bilstm_encode, bilstm_final, lstm_step, BiLstmLayer, LstmState, LstmWeights};
pub use optimizer::{Optimizer, OptimizerKind};
pub use params::{Param, ParamId, ParamStore};

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    /// Relative-error gradient check helper shared by tests: passes when
    /// |a−b| ≤ tol·max(|a|,|b|) + 1e-8.
    pub(crate) fn grad_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()) + 1e-8
    }

    /// Central finite differences of `f` w.r.t. every value of every
    /// parameter, compared against the accumulated gradients in `store`.
    pub(crate) fn check_gradients<F>(store: &mut ParamStore, mut f: F, tol: f64)
    where
        F: FnMut(&ParamStore) -> f64,
    {
        let eps = 1e-5;
        let ids: Vec<ParamId> = store.iter().map(|(id, _)| id).collect();
        for id in ids {
            let n = store.get(id).values.len();
            let name = store.get(id).name.clone();
            for j in 0..n {
                let orig = store.values(id)[j];
                store.values_mut(id)[j] = orig + eps;
                let up = f(store);
                store.values_mut(id)[j] = orig - eps;
                let down = f(store);
                store.values_mut(id)[j] = orig;
                let fd = (up - down) / (2.0 * eps);
                let ad = store.grad(id).map(|g| g[j]).unwrap_or(0.0);
                assert!(
                    grad_close(ad, fd, tol),
                    "gradient mismatch for {name}[{j}]: ad={ad} fd={fd}"
                );
            }
        }
    }

    #[test]
    fn affine_identity() {
        let mut g = Graph::new();
        let mut store = ParamStore::new();
        let w = store
            .add("w", vec![2, 2], vec![1.0, 0.0, 0.0, 1.0])
            .unwrap();
        let w = g.param(&store, w);
        let x = g.input(vec![3.0, -1.0]);
        let b = g.input(vec![0.0, 0.0]);
        let y = g.affine(w, x, b).unwrap();
        assert_eq!(g.values(y), &[3.0, -1.0]);
    }

    #[test]
    fn affine_zero_matrix() {
        let mut g = Graph::new();
        let mut store = ParamStore::new();
        let w = store.add("w", vec![2, 2], vec![0.0; 4]).unwrap();
        let w = g.param(&store, w);
        let x = g.input(vec![7.5, 2.25]);
        let b = g.input(vec![5.0, 5.0]);
        let y = g.affine(w, x, b).unwrap();
        assert_eq!(g.values(y), &[5.0, 5.0]);
    }

    #[test]
    fn affine_matches_triple_loop() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let (m, k) = (4, 3);
        let wv: Vec<f64> = (0..m * k).map(|_| rng.random_range(-1.0..1.0)).collect();
        let xv: Vec<f64> = (0..k).map(|_| rng.random_range(-1.0..1.0)).collect();
        let bv: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
        // independent naive oracle
        let mut expect = vec![0.0; m];
        for i in 0..m {
            expect[i] = bv[i];
            for j in 0..k {
                expect[i] += wv[i * k + j] * xv[j];
            }
        }
        let mut store = ParamStore::new();
        let w = store.add("w", vec![m, k], wv).unwrap();
        let mut g = Graph::new();
        let w = g.param(&store, w);
        let x = g.input(xv);
        let b = g.input(bv);
        let y = g.affine(w, x, b).unwrap();
        for (a, e) in g.values(y).iter().zip(&expect) {
            assert!((a - e).abs() < 1e-12);
        }
    }

    #[test]
    fn affine_shape_mismatch_errors() {
        let mut store = ParamStore::new();
        let w = store.add("w", vec![2, 3], vec![0.0; 6]).unwrap();
        let mut g = Graph::new();
        let w = g.param(&store, w);
        let x = g.input(vec![1.0, 2.0]); // wrong width
        let b = g.input(vec![0.0, 0.0]);
        let err = g.affine(w, x, b).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("[2, 3]") && msg.contains("[2]"), "{msg}");
    }

    #[test]
    fn concat_basics() {
        let mut g = Graph::new();
        let a = g.input(vec![1.0, 2.0]);
        let single = g.concat(&[a]).unwrap();
        assert_eq!(g.values(single), &[1.0, 2.0]);
        let b = g.input(vec![3.0]);
        let joined = g.concat(&[b, a]).unwrap();
        assert_eq!(g.values(joined), &[3.0, 1.0, 2.0]);
        assert!(g.concat(&[]).is_err());
    }

    #[test]
    fn concat_gradient_is_ones_under_sum() {
        let mut store = ParamStore::new();
        let a = store.add("a", vec![2], vec![0.5, -0.25]).unwrap();
        let b = store.add("b", vec![3], vec![1.0, 2.0, 3.0]).unwrap();
        let mut g = Graph::new();
        let ta = g.param(&store, a);
        let tb = g.param(&store, b);
        let joined = g.concat(&[ta, tb]).unwrap();
        let loss = g.sum(joined);
        g.backward(loss, &mut store).unwrap();
        assert_eq!(store.grad(a).unwrap(), &[1.0, 1.0]);
        assert_eq!(store.grad(b).unwrap(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn backward_square_sum() {
        let mut store = ParamStore::new();
        let x = store.add("x", vec![2], vec![1.0, -2.0]).unwrap();
        let mut g = Graph::new();
        let tx = g.param(&store, x);
        let sq = g.mul(tx, tx).unwrap();
        let loss = g.sum(sq);
        g.backward(loss, &mut store).unwrap();
        assert_eq!(store.grad(x).unwrap(), &[2.0, -4.0]);
    }

    #[test]
    fn constants_get_no_gradient_slot() {
        let mut g = Graph::new();
        let x = g.input(vec![1.0, 2.0]);
        let y = g.sum(x);
        assert!(!g.requires_grad(x));
        assert!(g.grad(x).is_none());
        let mut store = ParamStore::new();
        // loss independent of parameters: backward is a no-op
        g.backward(y, &mut store).unwrap();
        assert!(!store.any_grad());
    }

    #[test]
    fn backward_requires_scalar() {
        let mut store = ParamStore::new();
        let x = store.add("x", vec![2], vec![1.0, 2.0]).unwrap();
        let mut g = Graph::new();
        let tx = g.param(&store, x);
        let err = g.backward(tx, &mut store).unwrap_err();
        assert!(err.to_string().contains("scalar"));
    }

    #[test]
    fn shared_node_gradients_accumulate() {
        // diamond: loss = sum(x ⊙ x) + sum(x), x used three times
        let mut store = ParamStore::new();
        let x = store.add("x", vec![2], vec![3.0, -1.0]).unwrap();
        let mut g = Graph::new();
        let tx = g.param(&store, x);
        let sq = g.mul(tx, tx).unwrap();
        let s1 = g.sum(sq);
        let s2 = g.sum(tx);
        let loss = g.add(s1, s2).unwrap();
        g.backward(loss, &mut store).unwrap();
        assert_eq!(store.grad(x).unwrap(), &[7.0, -1.0]);
    }

    #[test]
    fn lstm_step_zero_weights() {
        let (d, e) = (3, 2);
        let mut store = ParamStore::new();
        let zeros_m = vec![0.0; d * (e + d)];
        let w_i = store.add("w_i", vec![d, e + d], zeros_m.clone()).unwrap();
        let w_f = store.add("w_f", vec![d, e + d], zeros_m.clone()).unwrap();
        let w_o = store.add("w_o", vec![d, e + d], zeros_m.clone()).unwrap();
        let w_g = store.add("w_g", vec![d, e + d], zeros_m).unwrap();
        let b = |s: &mut ParamStore, n: &str| s.add(n, vec![d], vec![0.0; d]).unwrap();
        let b_i = b(&mut store, "b_i");
        let b_f = b(&mut store, "b_f");
        let b_o = b(&mut store, "b_o");
        let b_g = b(&mut store, "b_g");

        let mut g = Graph::new();
        let w = LstmWeights {
            w_input: g.param(&store, w_i),
            b_input: g.param(&store, b_i),
            w_forget: g.param(&store, w_f),
            b_forget: g.param(&store, b_f),
            w_output: g.param(&store, w_o),
            b_output: g.param(&store, b_o),
            w_cell: g.param(&store, w_g),
            b_cell: g.param(&store, b_g),
        };
        let c0 = vec![0.8, -0.4, 0.2];
        let state = LstmState {
            h: g.input(vec![0.1, 0.2, 0.3]),
            c: g.input(c0.clone()),
        };
        let x = g.input(vec![0.5, -0.5]);
        let next = lstm_step(&mut g, state, x, &w).unwrap();
        for (i, cv) in g.values(next.c).iter().enumerate() {
            assert!((cv - 0.5 * c0[i]).abs() < 1e-12);
        }
        for (i, hv) in g.values(next.h).iter().enumerate() {
            assert!((hv - 0.5 * (0.5 * c0[i]).tanh()).abs() < 1e-12);
        }

        // zero initial state → h' = 0, c' = 0
        let mut g2 = Graph::new();
        let w = LstmWeights {
            w_input: g2.param(&store, w_i),
            b_input: g2.param(&store, b_i),
            w_forget: g2.param(&store, w_f),
            b_forget: g2.param(&store, b_f),
            w_output: g2.param(&store, w_o),
            b_output: g2.param(&store, b_o),
            w_cell: g2.param(&store, w_g),
            b_cell: g2.param(&store, b_g),
        };
        let state = LstmState::zeros(&mut g2, d);
        let x = g2.input(vec![0.5, -0.5]);
        let next = lstm_step(&mut g2, state, x, &w).unwrap();
        assert!(g2.values(next.h).iter().all(|v| *v == 0.0));
        assert!(g2.values(next.c).iter().all(|v| *v == 0.0));
    }

    fn random_lstm_store(seed: u64, d: usize, e: usize) -> ParamStore {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let mut store = ParamStore::new();
        for n in ["w_i", "w_f", "w_o", "w_g"] {
            let vals: Vec<f64> = (0..d * (e + d))
                .map(|_| rng.random_range(-0.5..0.5))
                .collect();
            store.add(n, vec![d, e + d], vals).unwrap();
        }
        for n in ["b_i", "b_f", "b_o", "b_g"] {
            let vals: Vec<f64> = (0..d).map(|_| rng.random_range(-0.5..0.5)).collect();
            store.add(n, vec![d], vals).unwrap();
        }
        store
    }

    fn lstm_weights_on(g: &mut Graph, store: &ParamStore) -> LstmWeights {
        LstmWeights {
            w_input: g.param(store, store.id("w_i").unwrap()),
            b_input: g.param(store, store.id("b_i").unwrap()),
            w_forget: g.param(store, store.id("w_f").unwrap()),
            b_forget: g.param(store, store.id("b_f").unwrap()),
            w_output: g.param(store, store.id("w_o").unwrap()),
            b_output: g.param(store, store.id("b_o").unwrap()),
            w_cell: g.param(store, store.id("w_g").unwrap()),
            b_cell: g.param(store, store.id("b_g").unwrap()),
        }
    }

    #[test]
    fn lstm_step_gradients_match_finite_differences() {
        let (d, e) = (3, 2);
        let mut store = random_lstm_store(11, d, e);
        let xs = [vec![0.3, -0.7], vec![-0.2, 0.9]];
        let run = |store: &ParamStore| -> f64 {
            let mut g = Graph::new();
            let w = lstm_weights_on(&mut g, store);
            let mut state = LstmState::zeros(&mut g, d);
            for x in &xs {
                let xi = g.input(x.clone());
                state = lstm_step(&mut g, state, xi, &w).unwrap();
            }
            let joined = g.concat(&[state.h, state.c]).unwrap();
            let sq = g.mul(joined, joined).unwrap();
            let loss = g.sum(sq);
            g.value(loss)
        };
        // populate gradients
        let mut g = Graph::new();
        let w = lstm_weights_on(&mut g, &store);
        let mut state = LstmState::zeros(&mut g, d);
        for x in &xs {
            let xi = g.input(x.clone());
            state = lstm_step(&mut g, state, xi, &w).unwrap();
        }
        let joined = g.concat(&[state.h, state.c]).unwrap();
        let sq = g.mul(joined, joined).unwrap();
        let loss = g.sum(sq);
        g.backward(loss, &mut store).unwrap();
        check_gradients(&mut store, run, 1e-4);
    }

    #[test]
    fn bilstm_length_one_collapses_to_two_steps() {
        let (d, e) = (2, 2);
        let store = random_lstm_store(13, d, e);
        let mut g = Graph::new();
        let w = lstm_weights_on(&mut g, &store);
        let layer = BiLstmLayer {
            forward: w,
            backward: w,
            hidden: d,
        };
        let x = g.input(vec![0.4, -0.3]);
        let out = bilstm_encode(&mut g, &[x], &[layer]).unwrap();
        assert_eq!(out.len(), 1);
        // direct computation
        let zero = LstmState::zeros(&mut g, d);
        let fwd = lstm_step(&mut g, zero, x, &w).unwrap();
        let zero = LstmState::zeros(&mut g, d);
        let bwd = lstm_step(&mut g, zero, x, &w).unwrap();
        let expect = g.concat(&[fwd.h, bwd.h]).unwrap();
        assert_eq!(g.values(out[0]), g.values(expect));
    }

    #[test]
    fn bilstm_palindrome_with_tied_directions_is_reverse_symmetric() {
        let (d, e) = (3, 2);
        let store = random_lstm_store(17, d, e);
        let mut g = Graph::new();
        let w = lstm_weights_on(&mut g, &store);
        let layer = BiLstmLayer {
            forward: w,
            backward: w,
            hidden: d,
        };
        let vals = [vec![0.2, -0.6], vec![0.9, 0.1], vec![0.2, -0.6]];
        let xs: Vec<Tensor> = vals.iter().map(|v| g.input(v.clone())).collect();
        let out = bilstm_encode(&mut g, &xs, &[layer]).unwrap();
        // palindromic input + tied weights: output i reversed equals output
        // n-1-i with forward/backward halves swapped
        let n = out.len();
        for i in 0..n {
            let a = g.values(out[i]);
            let b = g.values(out[n - 1 - i]);
            let (af, ab) = a.split_at(d);
            let (bf, bb) = b.split_at(d);
            for (x, y) in af.iter().zip(bb) {
                assert!((x - y).abs() < 1e-12);
            }
            for (x, y) in ab.iter().zip(bf) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bilstm_last_input_perturbs_first_output() {
        let (d, e) = (3, 2);
        let store = random_lstm_store(19, d, e);
        let encode = |last: f64| -> Vec<f64> {
            let mut g = Graph::new();
            let w = lstm_weights_on(&mut g, &store);
            let layer = BiLstmLayer {
                forward: w,
                backward: w,
                hidden: d,
            };
            let xs = vec![
                g.input(vec![0.2, -0.6]),
                g.input(vec![0.9, 0.1]),
                g.input(vec![last, 0.5]),
            ];
            let out = bilstm_encode(&mut g, &xs, &[layer]).unwrap();
            g.values(out[0]).to_vec()
        };
        let a = encode(0.3);
        let b = encode(0.8);
        let diff: f64 = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).sum();
        assert!(diff > 1e-6, "backward direction must propagate context");
    }

    #[test]
    fn bilstm_empty_sequence_errors() {
        let mut g = Graph::new();
        let err = bilstm_encode(&mut g, &[], &[]).unwrap_err();
        assert!(err.to_string().contains("empty"));
    }

    #[test]
    fn sgd_step() {
        let mut store = ParamStore::new();
        let p = store.add("p", vec![1], vec![1.0]).unwrap();
        store.accumulate_grad(p, 0, &[2.0]);
        let mut opt = Optimizer::sgd(0.1);
        opt.step(&mut store).unwrap();
        assert!((store.values(p)[0] - 0.8).abs() < 1e-12);
        assert!(store.grad(p).is_none(), "gradients cleared after step");
    }

    #[test]
    fn zero_gradient_leaves_parameter_unchanged() {
        let mut store = ParamStore::new();
        let p = store.add("p", vec![2], vec![1.0, -1.0]).unwrap();
        store.accumulate_grad(p, 0, &[0.0, 0.0]);
        let mut opt = Optimizer::sgd(0.5);
        opt.step(&mut store).unwrap();
        assert_eq!(store.values(p), &[1.0, -1.0]);
    }

    #[test]
    fn optimizer_without_gradients_errors() {
        let mut store = ParamStore::new();
        store.add("p", vec![1], vec![1.0]).unwrap();
        let mut opt = Optimizer::sgd(0.1);
        assert!(opt.step(&mut store).is_err());
    }

    #[test]
    fn adam_first_step_magnitude_is_learning_rate() {
        // closed form at t=1: Δ = lr·g/(|g| + ε) ≈ lr·sign(g)
        for &g0 in &[0.001, 0.5, 40.0] {
            let mut store = ParamStore::new();
            let p = store.add("p", vec![1], vec![2.0]).unwrap();
            store.accumulate_grad(p, 0, &[g0]);
            let mut opt = Optimizer::adam(1e-3);
            opt.step(&mut store).unwrap();
            let delta = 2.0 - store.values(p)[0];
            let expect = 1e-3 * g0 / (g0 + 1e-8);
            assert!(
                (delta - expect).abs() < 1e-12,
                "g={g0}: delta={delta} expect={expect}"
            );
            assert!((delta - 1e-3).abs() < 1e-5);
        }
    }

    #[test]
    fn checkpoint_roundtrip_is_byte_stable() {
        let mut rng = ChaCha20Rng::seed_from_u64(23);
        let mut store = ParamStore::new();
        store
            .add(
                "b/mat",
                vec![3, 2],
                (0..6).map(|_| rng.random_range(-1.0..1.0)).collect(),
            )
            .unwrap();
        store
            .add(
                "a/vec",
                vec![4],
                (0..4).map(|_| rng.random_range(-1.0..1.0)).collect(),
            )
            .unwrap();
        let mut bytes = Vec::new();
        write_params(&mut bytes, &store).unwrap();
        let loaded = read_params(&mut bytes.as_slice()).unwrap();
        assert_eq!(loaded.len(), store.len());
        // loaded values are the f32-widened originals, bit-identical
        for (_, p) in loaded.iter() {
            let orig = store.get(store.id(&p.name).unwrap());
            assert_eq!(p.shape, orig.shape);
            for (lv, ov) in p.values.iter().zip(&orig.values) {
                assert_eq!(*lv, (*ov as f32) as f64);
            }
        }
        let mut again = Vec::new();
        write_params(&mut again, &loaded).unwrap();
        assert_eq!(bytes, again, "save∘load∘save is byte-identical");
    }

    #[test]
    fn forward_and_gradients_are_deterministic() {
        let build = || {
            let mut store = random_lstm_store(29, 3, 2);
            let mut g = Graph::new();
            let w = lstm_weights_on(&mut g, &store);
            let zero = LstmState::zeros(&mut g, 3);
            let x = g.input(vec![0.4, 0.2]);
            let s = lstm_step(&mut g, zero, x, &w).unwrap();
            let sq = g.mul(s.h, s.h).unwrap();
            let loss = g.sum(sq);
            g.backward(loss, &mut store).unwrap();
            let grads: Vec<Vec<f64>> = store
                .iter()
                .map(|(_, p)| p.grad.clone().unwrap_or_default())
                .collect();
            (g.value(loss), grads)
        };
        let (l1, g1) = build();
        let (l2, g2) = build();
        assert_eq!(l1.to_bits(), l2.to_bits());
        assert_eq!(g1, g2);
    }
}

//! Property tests for the format, oracle and linear-op invariants.

use proptest::prelude::*;

use crossparse::autodiff::{Graph, ParamStore};
use crossparse::conllu::{parse_conllu, serialize, Sentence, Token};
use crossparse::corpus::sample_training;
use crossparse::transition::{run_static, GoldTree};

/// Head assignments forming a tree rooted at 0: node i attaches to a random
/// earlier node of a random permutation, which reaches every tree shape.
fn arb_tree(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max_n)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(any::<u64>(), n),
                proptest::collection::vec(any::<u64>(), n),
            )
        })
        .prop_map(|(n, perm_keys, head_keys)| {
            let mut order: Vec<usize> = (1..=n).collect();
            order.sort_by_key(|&i| perm_keys[i - 1]);
            let mut heads = vec![0usize; n + 1];
            for (pos, &node) in order.iter().enumerate() {
                heads[node] = if pos == 0 {
                    0
                } else {
                    order[(head_keys[node - 1] % pos as u64) as usize]
                };
            }
            heads
        })
}

fn form_strategy() -> impl Strategy<Value = String> {
    proptest::string::string_regex("[a-zßàñ丁]{1,6}").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conllu_roundtrip_is_identity(
        heads in arb_tree(8),
        forms in proptest::collection::vec(form_strategy(), 8),
        comment in proptest::string::string_regex("[ -~]{0,20}").unwrap(),
    ) {
        let n = heads.len() - 1;
        let tokens: Vec<Token> = (1..=n)
            .map(|i| Token::new(i, &forms[i - 1], heads[i], "dep"))
            .collect();
        let mut sentence = Sentence::new("xx", tokens);
        sentence.comments.push(format!("# {comment}"));
        let text = serialize(&[sentence.clone()]);
        let parsed = parse_conllu(&text, "xx").unwrap();
        prop_assert_eq!(&parsed[..], &[sentence.clone()][..]);
        // serializing again is byte-identical
        prop_assert_eq!(serialize(&parsed), text);
    }

    #[test]
    fn static_oracle_reconstructs_any_tree(heads in arb_tree(8)) {
        let n = heads.len() - 1;
        let labels: Vec<u32> = (0..=n as u32).collect();
        let gold = GoldTree::new(heads.clone(), labels.clone());
        let (seq, config) = run_static(&gold).unwrap();
        prop_assert!(seq.len() <= n * (n + 1) / 2 + 2 * n);
        for d in 1..=n {
            let (h, l) = config.head_of(d).unwrap();
            prop_assert_eq!(h, heads[d]);
            prop_assert_eq!(l, labels[d]);
        }
    }

    #[test]
    fn sampling_is_reproducible_and_ordered(
        n in 1usize..40,
        k in 1usize..40,
        seed in any::<u64>(),
    ) {
        let corpus: Vec<Sentence> = (0..n)
            .map(|i| Sentence::new("xx", vec![Token::new(1, &format!("w{i}"), 0, "root")]))
            .collect();
        let a = sample_training(&corpus, k, seed);
        let b = sample_training(&corpus, k, seed);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.len(), k.min(n));
        let mut positions: Vec<usize> = a
            .iter()
            .map(|s| corpus.iter().position(|o| o == s).unwrap())
            .collect();
        let sorted = {
            let mut p = positions.clone();
            p.sort_unstable();
            p
        };
        prop_assert_eq!(&positions, &sorted);
        positions.dedup();
        prop_assert_eq!(positions.len(), a.len(), "sampling without replacement");
    }

    #[test]
    fn affine_backward_is_the_transpose_action(
        m in 1usize..5,
        k in 1usize..5,
        values in proptest::collection::vec(-2.0..2.0f64, 64),
    ) {
        // d(u · (Wx + b))/dx = Wᵀu
        let mut at = values.iter().copied().cycle();
        let wv: Vec<f64> = (&mut at).take(m * k).collect();
        let xv: Vec<f64> = (&mut at).take(k).collect();
        let uv: Vec<f64> = (&mut at).take(m).collect();

        let mut store = ParamStore::new();
        let x = store.add("x", vec![k], xv.clone()).unwrap();
        let w = store.add("w", vec![m, k], wv.clone()).unwrap();
        let mut g = Graph::new();
        let wt = g.param(&store, w);
        let xt = g.param(&store, x);
        let bt = g.input(vec![0.0; m]);
        let y = g.affine(wt, xt, bt).unwrap();
        let ut = g.input(uv.clone());
        let dot = g.mul(y, ut).unwrap();
        let loss = g.sum(dot);
        g.backward(loss, &mut store).unwrap();
        let gx = store.grad(x).unwrap();
        for j in 0..k {
            let expect: f64 = (0..m).map(|i| wv[i * k + j] * uv[i]).sum();
            prop_assert!((gx[j] - expect).abs() < 1e-9);
        }
    }
}

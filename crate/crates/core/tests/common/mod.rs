//! Shared helpers for the integration suites: exhaustive oracles and
//! statistics utilities kept independent of the library internals they
//! check.

// each integration binary pulls in a different subset
#![allow(dead_code)]

use std::collections::HashMap;

use crossparse::transition::{Configuration, GoldTree, Transition, TransitionKind};

/// All head assignments over `n` tokens that form a single tree rooted at 0.
pub fn enumerate_trees(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut heads = vec![0usize; n + 1];
    fn rec(i: usize, n: usize, heads: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i > n {
            // connected & acyclic: every node reaches 0
            for start in 1..=n {
                let mut cur = start;
                let mut hops = 0;
                while cur != 0 {
                    cur = heads[cur];
                    hops += 1;
                    if hops > n {
                        return;
                    }
                }
            }
            out.push(heads.clone());
            return;
        }
        for h in 0..=n {
            if h != i {
                heads[i] = h;
                rec(i + 1, n, heads, out);
            }
        }
    }
    rec(1, n, &mut heads, &mut out);
    out
}

/// True when no arc crosses another (single root arcs included).
pub fn is_projective(heads: &[usize]) -> bool {
    let n = heads.len() - 1;
    let arcs: Vec<(usize, usize)> = (1..=n)
        .map(|d| (heads[d].min(d), heads[d].max(d)))
        .collect();
    for (i, &(a1, b1)) in arcs.iter().enumerate() {
        for &(a2, b2) in &arcs[i + 1..] {
            if (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1) {
                return false;
            }
        }
    }
    true
}

type ConfigKey = (Vec<usize>, Vec<usize>, Vec<Option<usize>>);

fn key_of(c: &Configuration) -> ConfigKey {
    let heads = (0..=c.sentence_len())
        .map(|d| c.head_of(d).map(|(h, _)| h))
        .collect();
    (c.stack().to_vec(), c.buffer().collect(), heads)
}

const ARC_HYBRID_KINDS: [TransitionKind; 3] = [
    TransitionKind::Shift,
    TransitionKind::LeftArc,
    TransitionKind::RightArc,
];

fn transition_of(kind: TransitionKind) -> Transition {
    match kind {
        TransitionKind::Shift => Transition::Shift,
        TransitionKind::Swap => Transition::Swap,
        TransitionKind::LeftArc => Transition::LeftArc(0),
        TransitionKind::RightArc => Transition::RightArc(0),
    }
}

/// Exhaustive minimal gold-arc loss from `config` over swap-free
/// completions, memoized.
pub fn min_loss(
    config: &Configuration,
    gold: &GoldTree,
    memo: &mut HashMap<ConfigKey, usize>,
) -> usize {
    if config.is_terminal() {
        let mut loss = 0;
        for d in 1..=gold.len() {
            let assigned = config.head_of(d).map(|(h, _)| h);
            if assigned != Some(gold.head(d)) {
                loss += 1;
            }
        }
        return loss;
    }
    let key = key_of(config);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut best = usize::MAX;
    for kind in ARC_HYBRID_KINDS {
        if config.is_legal(kind) {
            let next = config.apply(transition_of(kind)).unwrap();
            best = best.min(min_loss(&next, gold, memo));
        }
    }
    memo.insert(key, best);
    best
}

/// Every configuration reachable from the initial one through swap-free
/// transitions.
pub fn reachable_configs(n: usize) -> Vec<Configuration> {
    let mut seen: HashMap<ConfigKey, ()> = HashMap::new();
    let mut queue = vec![Configuration::initial(n).unwrap()];
    let mut out = Vec::new();
    while let Some(c) = queue.pop() {
        let key = key_of(&c);
        if seen.insert(key, ()).is_some() {
            continue;
        }
        if !c.is_terminal() {
            for kind in ARC_HYBRID_KINDS {
                if c.is_legal(kind) {
                    queue.push(c.apply(transition_of(kind)).unwrap());
                }
            }
        }
        out.push(c);
    }
    out
}

/// Kolmogorov–Smirnov distance of a sample against Uniform(0, 1).
pub fn ks_against_uniform(sample: &mut [f64]) -> f64 {
    sample.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sample.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sample.iter().enumerate() {
        let lo = i as f64 / n;
        let hi = (i + 1) as f64 / n;
        d = d.max((x - lo).abs()).max((hi - x).abs());
    }
    d
}

/// Run `f` over `jobs` on `workers` threads, keeping result order.
pub fn pooled<J, R, F>(jobs: Vec<J>, workers: usize, f: F) -> Vec<R>
where
    J: Send,
    R: Send,
    F: Fn(J) -> R + Sync,
{
    use std::collections::VecDeque;
    use std::sync::Mutex;
    let n = jobs.len();
    let queue: Mutex<VecDeque<(usize, J)>> = Mutex::new(jobs.into_iter().enumerate().collect());
    let results: Mutex<Vec<Option<R>>> = Mutex::new((0..n).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers.max(1).min(n.max(1)) {
            scope.spawn(|| loop {
                let job = queue.lock().unwrap().pop_front();
                match job {
                    None => break,
                    Some((i, j)) => {
                        let r = f(j);
                        results.lock().unwrap()[i] = Some(r);
                    }
                }
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.unwrap())
        .collect()
}

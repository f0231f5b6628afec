//! Tiny fixed-pool job runner for grid cells.

use std::collections::VecDeque;
use std::sync::Mutex;

/// Run `f` over `jobs` on up to `workers` threads; results keep job order.
pub fn run_parallel<J, R, F>(jobs: Vec<J>, workers: usize, f: F) -> Vec<R>
where
    J: Send,
    R: Send,
    F: Fn(J) -> R + Sync,
{
    let queue: Mutex<VecDeque<(usize, J)>> = Mutex::new(jobs.into_iter().enumerate().collect());
    let n = {
        let q = queue.lock().unwrap();
        q.len()
    };
    let results: Mutex<Vec<Option<R>>> = Mutex::new((0..n).map(|_| None).collect());
    let workers = workers.max(1).min(n.max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
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
        .map(|r| r.expect("every job ran"))
        .collect()
}

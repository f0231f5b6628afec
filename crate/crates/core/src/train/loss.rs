//! Margin loss over legal transitions.

use crate::error::{Error, Result};
use crate::transition::Transition;

/// Highest-scoring member of `set` among `scores`, by value then by
/// enumeration order (first wins ties).
fn argmax(
    scores: &[(Transition, f64)],
    mut keep: impl FnMut(Transition) -> bool,
) -> Option<(Transition, f64)> {
    let mut best: Option<(Transition, f64)> = None;
    for &(t, v) in scores {
        if !keep(t) {
            continue;
        }
        match best {
            Some((_, bv)) if v <= bv => {}
            _ => best = Some((t, v)),
        }
    }
    best
}

/// Selection backing the hinge: (best zero-cost action, best positive-cost
/// action if any, loss value).
pub(crate) fn hinge_parts(
    scores: &[(Transition, f64)],
    zero_cost: &[Transition],
    margin: f64,
) -> Result<(Transition, Option<Transition>, f64)> {
    let in_zero = |t: Transition| zero_cost.contains(&t);
    let correct = argmax(scores, in_zero)
        .ok_or_else(|| Error::Oracle("empty zero-cost set among legal actions".to_string()))?;
    let wrong = argmax(scores, |t| !in_zero(t));
    match wrong {
        None => Ok((correct.0, None, 0.0)),
        Some((wt, wv)) => {
            let loss = (margin - correct.1 + wv).max(0.0);
            Ok((correct.0, Some(wt), loss))
        }
    }
}

/// max(0, m − best zero-cost score + best positive-cost score); 0 when no
/// positive-cost action is legal.
pub fn hinge_loss(
    scores: &[(Transition, f64)],
    zero_cost: &[Transition],
    margin: f64,
) -> Result<f64> {
    hinge_parts(scores, zero_cost, margin).map(|(_, _, loss)| loss)
}

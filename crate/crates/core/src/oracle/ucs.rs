use std::cmp::Reverse;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};
use std::hash::Hash;
use std::ops::Add;

use num_traits::Zero;

use super::OracleError;
use crate::engine::{Cost, Weight};

/// Default cap on distinct working strings explored.
pub const DEFAULT_STATE_BUDGET: usize = 10_000_000;

/// Unit-cost uniform-cost search from `source` to `target`.
pub fn ucs_distance<T: Ord + Hash + Clone>(source: &[T], target: &[T], budget: usize) -> Result<Cost, OracleError> {
    search(source, target, 1u64, 1u64, budget)
}

/// Uniform-cost search where insertions cost `c_ins` and swaps cost `c_swap`.
pub fn ucs_weighted_distance<T: Ord + Hash + Clone>(
    source: &[T],
    target: &[T],
    c_ins: Weight,
    c_swap: Weight,
    budget: usize,
) -> Result<Cost<Weight>, OracleError> {
    search(source, target, c_ins, c_swap, budget)
}

fn tally<T: Ord + Clone>(s: &[T]) -> Vec<(T, usize)> {
    let mut sorted = s.to_vec();
    sorted.sort();
    let mut out: Vec<(T, usize)> = Vec::new();
    for x in sorted {
        match out.last_mut() {
            Some((y, n)) if *y == x => *n += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

fn search<T, W>(source: &[T], target: &[T], c_ins: W, c_swap: W, budget: usize) -> Result<Cost<W>, OracleError>
where
    T: Ord + Hash + Clone,
    W: Copy + Ord + Zero + Add<Output = W>,
{
    let limits = tally(target);
    let limit_of = |x: &T| {
        limits
            .binary_search_by(|(y, _)| y.cmp(x))
            .map_or(0, |idx| limits[idx].1)
    };
    // Without deletions, a symbol in excess can never be removed.
    if tally(source).iter().any(|(x, n)| *n > limit_of(x)) {
        return Ok(Cost::Unreachable);
    }

    let mut best: HashMap<Vec<T>, W> = HashMap::new();
    let mut queue = BinaryHeap::new();
    best.insert(source.to_vec(), W::zero());
    queue.push(Reverse((W::zero(), source.to_vec())));

    while let Some(Reverse((cost, word))) = queue.pop() {
        if best.get(&word).is_some_and(|&b| b < cost) {
            continue;
        }
        if word == target {
            return Ok(Cost::Finite(cost));
        }

        let mut next = Vec::new();
        let counts = tally(&word);
        for (symbol, limit) in &limits {
            let have = counts
                .binary_search_by(|(y, _)| y.cmp(symbol))
                .map_or(0, |idx| counts[idx].1);
            if have < *limit {
                for pos in 0..=word.len() {
                    let mut w = word.clone();
                    w.insert(pos, symbol.clone());
                    next.push((cost + c_ins, w));
                }
            }
        }
        for pos in 1..word.len() {
            if word[pos - 1] != word[pos] {
                let mut w = word.clone();
                w.swap(pos - 1, pos);
                next.push((cost + c_swap, w));
            }
        }

        for (c, w) in next {
            match best.entry(w) {
                Entry::Occupied(mut e) => {
                    if c < *e.get() {
                        e.insert(c);
                        queue.push(Reverse((c, e.key().clone())));
                    }
                }
                Entry::Vacant(e) => {
                    queue.push(Reverse((c, e.key().clone())));
                    e.insert(c);
                }
            }
            if best.len() > budget {
                return Err(OracleError::InstanceTooLarge {
                    budget: budget as u64,
                    unit: "search states",
                });
            }
        }
    }
    Ok(Cost::Unreachable)
}

use std::collections::HashMap;
use std::hash::Hash;

use super::OracleError;
use crate::engine::Cost;

/// Default cap on the number of matchings enumerated.
pub const DEFAULT_COMBINATION_BUDGET: u64 = 1_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All increasing `k`-subsets of `items`.
fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, pick: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pick.len() == k {
            out.push(pick.clone());
            return;
        }
        let need = k - pick.len();
        for idx in start..=items.len() - need {
            pick.push(items[idx]);
            rec(items, k, idx + 1, pick, out);
            pick.pop();
        }
    }
    rec(items, k, 0, &mut pick, &mut out);
    out
}

fn crossings(image: &[usize]) -> u64 {
    let mut total = 0;
    for a in 0..image.len() {
        for b in a + 1..image.len() {
            if image[a] > image[b] {
                total += 1;
            }
        }
    }
    total
}

/// `(m - n)` plus the minimum number of crossings over all injective,
/// symbol-preserving matchings of `source` positions into `target` positions.
///
/// Within one symbol the matching is taken order-preserving; only the choice
/// of which target occurrences are matched is enumerated.
pub fn matching_distance<T: Eq + Hash + Clone>(source: &[T], target: &[T], budget: u64) -> Result<Cost, OracleError> {
    let mut source_pos: HashMap<&T, Vec<usize>> = HashMap::new();
    for (p, x) in source.iter().enumerate() {
        source_pos.entry(x).or_default().push(p);
    }
    let mut target_pos: HashMap<&T, Vec<usize>> = HashMap::new();
    for (p, x) in target.iter().enumerate() {
        target_pos.entry(x).or_default().push(p);
    }

    let mut groups = Vec::new();
    let mut combinations: u128 = 1;
    for (symbol, from) in &source_pos {
        let Some(to) = target_pos.get(symbol) else {
            return Ok(Cost::Unreachable);
        };
        if from.len() > to.len() {
            return Ok(Cost::Unreachable);
        }
        combinations = combinations.saturating_mul(binomial(to.len(), from.len()));
        if combinations > budget as u128 {
            return Err(OracleError::InstanceTooLarge {
                budget,
                unit: "matchings",
            });
        }
        groups.push((from.clone(), to.clone()));
    }

    let choices: Vec<Vec<Vec<usize>>> = groups.iter().map(|(from, to)| subsets(to, from.len())).collect();
    let mut image = vec![0usize; source.len()];
    let mut odometer = vec![0usize; groups.len()];
    let mut best = u64::MAX;
    loop {
        for (g, (from, _)) in groups.iter().enumerate() {
            for (&p, &q) in from.iter().zip(&choices[g][odometer[g]]) {
                image[p] = q;
            }
        }
        best = best.min(crossings(&image));

        // Advance the odometer; stop after the last combination.
        let mut g = 0;
        loop {
            if g == groups.len() {
                let inserts = (target.len() - source.len()) as u64;
                return Ok(Cost::Finite(inserts + best));
            }
            odometer[g] += 1;
            if odometer[g] < choices[g].len() {
                break;
            }
            odometer[g] = 0;
            g += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matching(s: &str, l: &str) -> Cost {
        let (s, l): (Vec<char>, Vec<char>) = (s.chars().collect(), l.chars().collect());
        matching_distance(&s, &l, DEFAULT_COMBINATION_BUDGET).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(matching("ba", "ab"), Cost::Finite(1));
        assert_eq!(matching("ab", "ab"), Cost::Finite(0));
        assert_eq!(matching("ba", "aab"), Cost::Finite(2));
        assert_eq!(matching("", "abc"), Cost::Finite(3));
        assert_eq!(matching("", ""), Cost::Finite(0));
        assert_eq!(matching("aa", "a"), Cost::Unreachable);
        assert_eq!(matching("x", "abc"), Cost::Unreachable);
    }

    #[test]
    fn equal_lengths_count_inversions() {
        // A permutation of distinct symbols: crossings are its inversions.
        assert_eq!(matching("dcba", "abcd"), Cost::Finite(6));
        assert_eq!(matching("bca", "abc"), Cost::Finite(2));
    }

    #[test]
    fn subsets_and_binomials() {
        assert_eq!(subsets(&[1, 2, 3], 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(&[4, 5], 0), vec![Vec::<usize>::new()]);
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(5, 0), 1);
    }

    #[test]
    fn budget_exceeded() {
        let s: Vec<char> = "aaaaaa".chars().collect();
        let l: Vec<char> = "a".repeat(30).chars().collect();
        assert!(matches!(
            matching_distance(&s, &l, 1000),
            Err(OracleError::InstanceTooLarge { .. })
        ));
    }
}

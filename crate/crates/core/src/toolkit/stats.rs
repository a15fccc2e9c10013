use serde::Serialize;

use crate::alphabet::IndexedString;

/// Difficulty measures of one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceStats {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    /// `n_a` per code.
    pub source_counts: Vec<usize>,
    /// `m_a` per code.
    pub target_counts: Vec<usize>,
    /// `g_a = min(n_a, m_a - n_a)` per code (0 where `n_a > m_a`).
    pub imbalance: Vec<usize>,
    pub g: usize,
    /// Codes contributing a `(g_a + 1)` factor to the table bound.
    pub sigma_plus: Vec<u32>,
    pub s: usize,
    /// Upper bound on memo entries; 0 when no table is kept (`s = 0`).
    pub predicted_state_bound: u64,
    pub feasible: bool,
}

impl InstanceStats {
    /// `1 + sum_a (m_a - g_a)`: the number of values the `k` coordinate can take.
    pub fn k_range(&self) -> u64 {
        1 + self
            .target_counts
            .iter()
            .zip(&self.imbalance)
            .map(|(&m, &g)| (m - g) as u64)
            .sum::<u64>()
    }

    /// `prod over sigma_plus of (g_a + 1)`.
    pub fn imbalance_product(&self) -> u64 {
        self.sigma_plus
            .iter()
            .map(|&c| self.imbalance[c as usize - 1] as u64 + 1)
            .fold(1u64, u64::saturating_mul)
    }
}

pub fn instance_stats(source: &IndexedString, target: &IndexedString) -> InstanceStats {
    let source_counts = source.counts();
    let target_counts = target.counts();
    let d = source_counts.len();
    let imbalance: Vec<usize> = source_counts
        .iter()
        .zip(&target_counts)
        .map(|(&n, &m)| n.min(m.saturating_sub(n)))
        .collect();
    let g = imbalance.iter().copied().max().unwrap_or(0);
    let s = imbalance.iter().filter(|&&x| x > 0).count();
    let feasible = source_counts.iter().zip(&target_counts).all(|(n, m)| n <= m);

    let sigma_plus: Vec<u32> = if s < d {
        (0..d).filter(|&a| imbalance[a] > 0).map(|a| a as u32 + 1).collect()
    } else {
        // Every symbol is imbalanced: drop one symbol of least imbalance.
        let dropped = (0..d).min_by_key(|&a| (imbalance[a], a));
        (0..d).filter(|&a| Some(a) != dropped).map(|a| a as u32 + 1).collect()
    };

    let mut stats = InstanceStats {
        n: source.len(),
        m: target.len(),
        d,
        source_counts,
        target_counts,
        imbalance,
        g,
        sigma_plus,
        s,
        predicted_state_bound: 0,
        feasible,
    };
    if s > 0 {
        let rows = if s == d { d as u64 } else { 1 };
        stats.predicted_state_bound = rows
            .saturating_mul(stats.n as u64 + 1)
            .saturating_mul(stats.k_range())
            .saturating_mul(stats.imbalance_product());
    }
    stats
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Instance;

    fn stats(s: &str, l: &str) -> InstanceStats {
        Instance::from_strs(s, l).unwrap().stats()
    }

    #[test]
    fn identical_strings_have_no_imbalance() {
        let st = stats("ab", "ab");
        assert_eq!(st.g, 0);
        assert_eq!(st.s, 0);
        assert!(st.feasible);
        assert_eq!(st.predicted_state_bound, 0);
    }

    #[test]
    fn empty_source() {
        let st = stats("", "abc");
        assert_eq!(st.imbalance, vec![0, 0, 0]);
        assert!(st.feasible);
    }

    #[test]
    fn mixed_imbalances() {
        // Recount from the raw strings independently of the index.
        let (s, l) = ("aab", "aaabab");
        let count = |x: &str, ch| x.chars().filter(|&c| c == ch).count();
        let st = stats(s, l);
        for (code, ch) in [(1, 'a'), (2, 'b')] {
            let (n, m) = (count(s, ch), count(l, ch));
            assert_eq!(st.source_counts[code - 1], n);
            assert_eq!(st.target_counts[code - 1], m);
            assert_eq!(st.imbalance[code - 1], n.min(m - n));
        }
        assert_eq!(st.imbalance, vec![2, 1]);
        assert_eq!(st.g, 2);
        assert_eq!(st.s, 2);
        // All symbols imbalanced: sigma_plus drops the least one (b).
        assert_eq!(st.sigma_plus, vec![1]);
        // d (n+1) (1 + (4-2) + (2-1)) (2+1)
        assert_eq!(st.predicted_state_bound, 2 * 4 * 4 * 3);
    }

    #[test]
    fn partial_imbalance_bound_has_no_row_factor() {
        // a: n=1,m=3 -> g=1; b: n=1,m=1 -> g=0
        let st = stats("ab", "aaab");
        assert_eq!(st.s, 1);
        assert_eq!(st.sigma_plus, vec![1]);
        // (n+1) (1 + (3-1) + (1-0)) (1+1)
        assert_eq!(st.predicted_state_bound, 3 * 4 * 2);
    }

    #[test]
    fn infeasible_flagged() {
        let st = stats("aa", "a");
        assert!(!st.feasible);
        assert_eq!(st.imbalance, vec![0]);
    }
}

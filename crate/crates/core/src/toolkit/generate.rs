//! Seeded synthetic instances with controlled imbalance profiles.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ToolkitError;

/// Length of the source blocks shuffled after sampling.
const SHUFFLE_BLOCK: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(into = "String")]
pub enum Profile {
    /// Each symbol either absent from the source or equally frequent in both.
    ZeroG,
    /// Source is a uniform random sub-multiset of the target.
    BalancedG,
    /// Source counts chosen to maximize the total imbalance.
    MaxG,
    /// Exact per-symbol imbalance targets.
    Custom(Vec<usize>),
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::ZeroG => f.write_str("zero-g"),
            Profile::BalancedG => f.write_str("balanced-g"),
            Profile::MaxG => f.write_str("max-g"),
            Profile::Custom(g) => {
                let parts: Vec<String> = g.iter().map(ToString::to_string).collect();
                write!(f, "custom:{}", parts.join(","))
            }
        }
    }
}

impl From<Profile> for String {
    fn from(p: Profile) -> String {
        p.to_string()
    }
}

impl FromStr for Profile {
    type Err = ToolkitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zero-g" => Ok(Profile::ZeroG),
            "balanced-g" => Ok(Profile::BalancedG),
            "max-g" => Ok(Profile::MaxG),
            _ => {
                let list = s
                    .strip_prefix("custom:")
                    .ok_or_else(|| ToolkitError::UnknownProfile(s.to_string()))?;
                list.split(',')
                    .map(|x| x.trim().parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map(Profile::Custom)
                    .map_err(|_| ToolkitError::UnknownProfile(s.to_string()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorSpec {
    pub d: usize,
    pub n: usize,
    pub m: usize,
    pub profile: Profile,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(d: usize, n: usize, m: usize, profile: Profile, seed: u64) -> Self {
        GeneratorSpec { d, n, m, profile, seed }
    }
}

/// The raw symbol used for the `k`-th generated symbol (0-based).
pub fn symbol_for(k: usize) -> char {
    match k {
        0..=25 => (b'a' + k as u8) as char,
        26..=51 => (b'A' + (k - 26) as u8) as char,
        _ => char::from_u32(0x4E00 + k as u32).expect("CJK block holds generated symbols"),
    }
}

/// Generates a feasible `(source, target)` pair for `spec`.
pub fn generate_instance(spec: &GeneratorSpec) -> Result<(Vec<char>, Vec<char>), ToolkitError> {
    let GeneratorSpec { d, n, m, .. } = *spec;
    if d == 0 {
        return Err(ToolkitError::InfeasibleProfile("alphabet size must be at least 1".into()));
    }
    if n > m {
        return Err(ToolkitError::InfeasibleProfile(format!("source length {n} exceeds target length {m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let (source_counts, target_counts) = match &spec.profile {
        Profile::ZeroG => exact_imbalance(&vec![0; d], n, m, &mut rng)?,
        Profile::Custom(targets) => {
            if targets.len() != d {
                return Err(ToolkitError::InfeasibleProfile(format!(
                    "{} imbalance targets for an alphabet of {d}",
                    targets.len()
                )));
            }
            exact_imbalance(targets, n, m, &mut rng)?
        }
        Profile::MaxG => {
            let target_counts = multinomial(m, d, &mut rng);
            let source_counts = max_imbalance(&target_counts, n, &mut rng);
            (source_counts, target_counts)
        }
        Profile::BalancedG => {
            let target_counts = multinomial(m, d, &mut rng);
            let mut pool: Vec<usize> = (0..d).flat_map(|a| std::iter::repeat_n(a, target_counts[a])).collect();
            pool.shuffle(&mut rng);
            let mut source_counts = vec![0; d];
            for &a in &pool[..n] {
                source_counts[a] += 1;
            }
            (source_counts, target_counts)
        }
    };

    let mut target: Vec<usize> = (0..d)
        .flat_map(|a| std::iter::repeat_n(a, target_counts[a]))
        .collect();
    target.shuffle(&mut rng);

    // Keep a random n_a of the target's occurrences of each symbol, in order,
    // then shuffle short blocks so the swap branch has work to do.
    let mut keep = vec![false; m];
    for a in 0..d {
        let mut positions: Vec<usize> = (0..m).filter(|&p| target[p] == a).collect();
        positions.shuffle(&mut rng);
        for &p in &positions[..source_counts[a]] {
            keep[p] = true;
        }
    }
    let mut source: Vec<usize> = (0..m).filter(|&p| keep[p]).map(|p| target[p]).collect();
    for block in source.chunks_mut(SHUFFLE_BLOCK) {
        block.shuffle(&mut rng);
    }

    Ok((
        source.into_iter().map(symbol_for).collect(),
        target.into_iter().map(symbol_for).collect(),
    ))
}

fn multinomial(total: usize, d: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut counts = vec![0; d];
    for _ in 0..total {
        counts[rng.gen_range(0..d)] += 1;
    }
    counts
}

/// Greedy allocation of `n` source symbols maximizing `sum_a min(n_a, m_a - n_a)`.
/// The objective is separable and concave in each `n_a`, so taking the best
/// marginal gain each step is optimal.
fn max_imbalance(target_counts: &[usize], n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let d = target_counts.len();
    let gain = |a: usize, have: usize| -> i64 {
        let m = target_counts[a];
        let before = have.min(m - have) as i64;
        let after = (have + 1).min(m - have - 1) as i64;
        after - before
    };
    let mut counts = vec![0; d];
    for _ in 0..n {
        let open: Vec<usize> = (0..d).filter(|&a| counts[a] < target_counts[a]).collect();
        let best = open.iter().map(|&a| gain(a, counts[a])).max().expect("n <= m leaves room");
        let ties: Vec<usize> = open.into_iter().filter(|&a| gain(a, counts[a]) == best).collect();
        counts[*ties.choose(rng).expect("non-empty")] += 1;
    }
    counts
}

/// Per-symbol counts realizing `g_a = targets[a]` exactly.
///
/// Every symbol starts with `n_a = m_a - n_a = g_a`; the remaining source
/// symbols go to one random group of symbols and the remaining insertions to
/// the complementary group, which leaves each minimum at `g_a`.
fn exact_imbalance(
    targets: &[usize],
    n: usize,
    m: usize,
    rng: &mut impl Rng,
) -> Result<(Vec<usize>, Vec<usize>), ToolkitError> {
    let d = targets.len();
    let base: usize = targets.iter().sum();
    if base > n || base > m - n {
        return Err(ToolkitError::InfeasibleProfile(format!(
            "imbalance total {base} exceeds min(n, m - n) = {}",
            n.min(m - n)
        )));
    }
    let (extra_source, extra_insert) = (n - base, m - n - base);
    let mut symbols: Vec<usize> = (0..d).collect();
    symbols.shuffle(rng);
    let split = match (extra_source > 0, extra_insert > 0) {
        (true, true) if d < 2 => {
            return Err(ToolkitError::InfeasibleProfile(
                "one symbol cannot absorb both extra source symbols and extra insertions".into(),
            ))
        }
        (true, true) => rng.gen_range(1..d),
        (true, false) => d,
        (false, _) => 0,
    };

    let mut source_counts = targets.to_vec();
    let mut insert_counts = targets.to_vec();
    let (to_source, to_insert) = symbols.split_at(split);
    for (k, extra) in multinomial(extra_source, to_source.len().max(1), rng).into_iter().enumerate() {
        if extra > 0 {
            source_counts[to_source[k]] += extra;
        }
    }
    for (k, extra) in multinomial(extra_insert, to_insert.len().max(1), rng).into_iter().enumerate() {
        if extra > 0 {
            insert_counts[to_insert[k]] += extra;
        }
    }
    let target_counts = source_counts.iter().zip(&insert_counts).map(|(a, b)| a + b).collect();
    Ok((source_counts, target_counts))
}

mod common;

use std::time::Instant;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swapins::oracle::{matching_distance, ucs_distance, ucs_weighted_distance, DEFAULT_COMBINATION_BUDGET, DEFAULT_STATE_BUDGET};
use swapins::toolkit::{check_pair, generate_instance, GeneratorSpec, Profile};
use swapins::{verify_script, Cost, Engine, Instance};

use common::{feasible_pair, letters, mixed_pair, report, swaps_are_monotone, text};

fn all_strings(alphabet: &[char], max_len: usize) -> Vec<Vec<char>> {
    let mut out = vec![Vec::new()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for w in start..end {
            for &ch in alphabet {
                let mut next = out[w].clone();
                next.push(ch);
                out.push(next);
            }
        }
        start = end;
    }
    out
}

fn three_way(source: &[char], target: &[char]) -> Result<Cost, String> {
    let engine = Instance::new(source, target).unwrap().distance().distance;
    let ucs = ucs_distance(source, target, DEFAULT_STATE_BUDGET).map_err(|e| e.to_string())?;
    let matching = matching_distance(source, target, DEFAULT_COMBINATION_BUDGET).map_err(|e| e.to_string())?;
    if engine == ucs && ucs == matching {
        Ok(engine)
    } else {
        Err(format!(
            "{:?} -> {:?}: engine={engine} ucs={ucs} matching={matching}",
            text(source),
            text(target)
        ))
    }
}

#[test]
fn criterion_1_exhaustive_binary_oracle_equivalence() {
    let start = Instant::now();
    let sources = all_strings(&['a', 'b'], 4);
    let targets = all_strings(&['a', 'b'], 6);
    assert_eq!((sources.len(), targets.len()), (31, 127));
    let mut failures = Vec::new();
    let mut unreachable = 0;
    for s in &sources {
        for l in &targets {
            match three_way(s, l) {
                Ok(Cost::Unreachable) => unreachable += 1,
                Ok(_) => {}
                Err(e) => failures.push(e),
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = failures.is_empty() && elapsed < 60.0;
    report(
        1,
        ok,
        &format!("{} pairs, {unreachable} unreachable, {} mismatches, {elapsed:.2}s", 31 * 127, failures.len()),
    );
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_2_random_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = Vec::new();
    for _ in 0..500 {
        let (s, l) = mixed_pair(&mut rng, 3, 6, 8);
        if let Err(e) = three_way(&s, &l) {
            failures.push(e);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = failures.is_empty() && elapsed < 60.0;
    report(2, ok, &format!("500 instances, {} mismatches, {elapsed:.2}s", failures.len()));
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_3_script_soundness() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = Vec::new();
    for _ in 0..1000 {
        let d = rng.gen_range(1..=5);
        let m = rng.gen_range(0..=40);
        let n = rng.gen_range(0..=30.min(m));
        let (s, l) = feasible_pair(&mut rng, d, n, m);
        let instance = Instance::new(&s, &l).unwrap();
        let (result, script) = instance.distance_with_script().unwrap();
        let distance = result.distance.finite().unwrap();
        let verdict = verify_script(&s, &l, &script);
        let label = format!("{:?} -> {:?}", text(&s), text(&l));
        if !verdict.valid {
            failures.push(format!("{label}: {:?}", verdict.failure));
        } else if verdict.cost as u64 != distance {
            failures.push(format!("{label}: script cost {} != {distance}", verdict.cost));
        } else if verdict.insert_count != m - n {
            failures.push(format!("{label}: {} insertions", verdict.insert_count));
        } else if let Err(e) = swaps_are_monotone(&s, &script) {
            failures.push(format!("{label}: {e}"));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = failures.is_empty() && elapsed < 120.0;
    report(3, ok, &format!("1000 instances, {} failures, {elapsed:.2}s", failures.len()));
    assert!(ok, "{:?}", &failures[..failures.len().min(5)]);
}

fn median_distance_time(instance: &Instance, repeats: usize) -> (f64, usize, Cost) {
    let mut times = Vec::new();
    let mut last = (0, Cost::Unreachable);
    for _ in 0..repeats {
        let mut engine = Engine::new(&instance.source, &instance.target);
        let start = Instant::now();
        let distance = engine.distance();
        times.push(start.elapsed().as_secs_f64());
        last = (engine.memo_entries(), distance);
    }
    times.sort_by(f64::total_cmp);
    (times[repeats / 2], last.0, last.1)
}

#[test]
fn criterion_4_swap_only_fast_path() {
    let d = 4;
    let mut rows = Vec::new();
    let mut ok = true;
    for (k, n) in [1_000usize, 10_000, 100_000].into_iter().enumerate() {
        let spec = GeneratorSpec::new(d, n, n, Profile::ZeroG, 40 + k as u64);
        let (s, l) = generate_instance(&spec).unwrap();
        let instance = Instance::new(&s, &l).unwrap();
        let (time, memo, distance) = median_distance_time(&instance, 7);
        ok &= memo <= d && distance.is_finite() && distance != Cost::Finite(0);
        rows.push((n, time, memo));
    }
    ok &= rows[2].1 < 1.0;
    let ratios: Vec<f64> = rows.windows(2).map(|w| w[1].1 / w[0].1).collect();
    ok &= ratios.iter().all(|r| (1.5..=15.0).contains(r));
    let detail = rows
        .iter()
        .map(|(n, t, memo)| format!("n={n}: {:.3}ms memo={memo}", t * 1e3))
        .collect::<Vec<_>>()
        .join(", ");
    report(4, ok, &format!("{detail}; ratios {ratios:.2?}"));
    assert!(ok);
}

/// `d (n+1) (1 + sum (m_a - g_a)) prod_{sigma_plus} (g_a + 1)`, from raw counts.
fn table_bound(s: &[char], l: &[char], d: usize) -> u64 {
    let alphabet = letters(d);
    let count = |x: &[char], ch: char| x.iter().filter(|&&c| c == ch).count() as u64;
    let g: Vec<u64> = alphabet
        .iter()
        .map(|&ch| {
            let (n, m) = (count(s, ch), count(l, ch));
            n.min(m.saturating_sub(n))
        })
        .collect();
    let k_range = 1 + alphabet.iter().zip(&g).map(|(&ch, &g)| count(l, ch) - g).sum::<u64>();
    let mut positive: Vec<u64> = g.iter().copied().filter(|&x| x > 0).collect();
    if positive.len() == d {
        positive.sort_unstable();
        positive.remove(0);
    }
    let product: u64 = positive.iter().map(|&x| x + 1).product();
    d as u64 * (s.len() as u64 + 1) * k_range * product
}

#[test]
fn criterion_5_memo_bound() {
    let profiles = [
        Profile::ZeroG,
        Profile::BalancedG,
        Profile::MaxG,
        Profile::Custom(vec![1, 2]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut violations, mut tested, mut max_ratio) = (Vec::new(), 0, 0.0f64);
    while tested < 200 {
        let profile = profiles[tested % profiles.len()].clone();
        let d = if matches!(profile, Profile::Custom(_)) { 2 } else { rng.gen_range(1..=4) };
        let n = rng.gen_range(4..=20);
        let m = n + rng.gen_range(0..=12);
        let spec = GeneratorSpec::new(d, n, m, profile, rng.gen());
        let Ok((s, l)) = generate_instance(&spec) else { continue };
        tested += 1;
        let memo = Instance::new(&s, &l).unwrap().distance().memo_entries as u64;
        let bound = table_bound(&s, &l, d);
        max_ratio = max_ratio.max(memo as f64 / bound as f64);
        if memo > bound {
            violations.push(format!("{:?} -> {:?}: {memo} > {bound}", text(&s), text(&l)));
        }
    }
    let ok = violations.is_empty();
    report(5, ok, &format!("200 instances, {} violations, max memo/bound {max_ratio:.3}", violations.len()));
    assert!(ok, "{violations:?}");
}

#[test]
fn criterion_6_adaptivity() {
    let memo_average = |profile: Profile| {
        let total: usize = (0..50)
            .map(|seed| {
                let spec = GeneratorSpec::new(3, 20, 30, profile.clone(), seed);
                let (s, l) = generate_instance(&spec).unwrap();
                Instance::new(&s, &l).unwrap().distance().memo_entries
            })
            .sum();
        total as f64 / 50.0
    };
    let zero = memo_average(Profile::ZeroG);
    let max = memo_average(Profile::MaxG);
    let ok = max > 0.0 && zero * 10.0 <= max;
    report(6, ok, &format!("mean memo zero-g {zero:.1}, max-g {max:.1}"));
    assert!(ok);
}

#[test]
fn criterion_7_weighted_consistency() {
    let weights = [(1u64, 1u64), (2, 3), (5, 1)];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    for _ in 0..200 {
        let (s, l) = mixed_pair(&mut rng, 3, 5, 7);
        let instance = Instance::new(&s, &l).unwrap();
        for &(ci, cs) in &weights {
            let (ci, cs) = (Ratio::from_integer(ci), Ratio::from_integer(cs));
            let engine = instance.weighted_distance(ci, cs);
            let oracle = ucs_weighted_distance(&s, &l, ci, cs, DEFAULT_STATE_BUDGET).unwrap();
            if engine != oracle {
                failures.push(format!("{:?} -> {:?} ({ci},{cs}): {engine} vs {oracle}", text(&s), text(&l)));
            }
        }
    }
    let ok = failures.is_empty();
    report(7, ok, &format!("200 instances x 3 weightings, {} mismatches", failures.len()));
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_8_swap_delete_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    for _ in 0..200 {
        let (s, l) = mixed_pair(&mut rng, 3, 8, 10);
        let instance = Instance::new(&s, &l).unwrap();
        let forward = instance.distance().distance;
        let (backward, script) = instance.swap_delete_distance();
        let label = format!("{:?} -> {:?}", text(&s), text(&l));
        if backward.distance != forward {
            failures.push(format!("{label}: {} vs {forward}", backward.distance));
            continue;
        }
        if let (Cost::Finite(d), Some(script)) = (forward, script) {
            let verdict = verify_script(&l, &s, &script);
            if !verdict.valid || verdict.cost as u64 != d || verdict.delete_count != l.len() - s.len() {
                failures.push(format!("{label}: bad delete script {verdict:?}"));
            }
        }
    }
    let ok = failures.is_empty();
    report(8, ok, &format!("200 instances, {} mismatches", failures.len()));
    assert!(ok, "{failures:?}");
}

#[test]
fn toolkit_selftest_agrees_with_direct_checks() {
    assert!(check_pair(&['b', 'a'], &['a', 'a', 'b']).is_ok());
    assert_eq!(three_way(&['b', 'a'], &['a', 'a', 'b']), Ok(Cost::Finite(2)));
}

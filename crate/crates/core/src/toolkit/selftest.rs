use crate::engine::{distance_with_script, Cost};
use crate::oracle::{matching_distance, ucs_distance, DEFAULT_COMBINATION_BUDGET, DEFAULT_STATE_BUDGET};
use crate::script::verify_script;
use crate::toolkit::symbol_for;
use crate::Instance;

#[derive(Debug, Clone, Default)]
pub struct SelftestReport {
    pub instances: usize,
    pub failures: Vec<String>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn all_strings(alphabet: &[char], max_len: usize) -> Vec<Vec<char>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<char>| {
                alphabet.iter().map(move |&ch| {
                    let mut next = w.clone();
                    next.push(ch);
                    next
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Checks one pair against both oracles and, when feasible, checks its script.
pub fn check_pair(source: &[char], target: &[char]) -> Result<(), String> {
    let show = |s: &[char]| s.iter().collect::<String>();
    let label = format!("{:?} -> {:?}", show(source), show(target));
    let instance = Instance::new(source, target).map_err(|e| format!("{label}: {e}"))?;
    let engine = instance.distance().distance;
    let ucs = ucs_distance(source, target, DEFAULT_STATE_BUDGET).map_err(|e| format!("{label}: {e}"))?;
    let matching = matching_distance(source, target, DEFAULT_COMBINATION_BUDGET).map_err(|e| format!("{label}: {e}"))?;
    if engine != ucs || engine != matching {
        return Err(format!("{label}: engine={engine} ucs={ucs} matching={matching}"));
    }
    if let Cost::Finite(d) = engine {
        let result = distance_with_script(&instance.source, &instance.target).map_err(|e| format!("{label}: {e}"))?;
        let script = result.script.expect("script requested").to_raw(&instance.alphabet);
        let verdict = verify_script(source, target, &script);
        if !verdict.valid || verdict.cost as u64 != d || verdict.insert_count != target.len() - source.len() {
            return Err(format!("{label}: bad script {verdict:?}"));
        }
    }
    Ok(())
}

/// Every pair over a `alphabet`-letter alphabet with `|S| <= max_n`, `|L| <= max_m`.
pub fn exhaustive_selftest(max_n: usize, max_m: usize, alphabet: usize) -> SelftestReport {
    let letters: Vec<char> = (0..alphabet).map(symbol_for).collect();
    let sources = all_strings(&letters, max_n);
    let targets = all_strings(&letters, max_m);
    let mut report = SelftestReport::default();
    for s in &sources {
        for l in &targets {
            report.instances += 1;
            if let Err(e) = check_pair(s, l) {
                report.failures.push(e);
            }
        }
    }
    report
}

//! Swap-insert string correction distance.
//!
//! The distance from `S` (length `n`) to `L` (length `m >= n`) is the least
//! number of single-symbol insertions and adjacent swaps turning `S` into `L`.
//! It is NP-hard in the alphabet size, but the memoized engine here runs in
//! time governed by the per-symbol imbalance `g_a = min(n_a, m_a - n_a)`:
//! linear when every `g_a` is zero, and polynomial for a fixed alphabet.
//!
//! ```
//! use swapins::{Cost, Instance};
//!
//! let inst = Instance::from_strs("ba", "aab").unwrap();
//! assert_eq!(inst.distance().distance, Cost::Finite(2));
//! ```

pub mod alphabet;
pub mod engine;
pub mod oracle;
pub mod script;
pub mod toolkit;

pub use alphabet::{AlphabetError, AlphabetMap, Code, IndexedString};
pub use engine::{
    distance, distance_with_script, feasible, swap_delete_distance, weighted_distance, Cost, Engine, EngineError,
    EngineResult, Weight,
};
pub use script::{apply_script, verify_script, EditOp, Script, ScriptError, Verdict};
pub use toolkit::{instance_stats, InstanceStats};

/// A source/target pair indexed over their shared alphabet.
#[derive(Debug, Clone)]
pub struct Instance {
    pub alphabet: AlphabetMap,
    pub source: IndexedString,
    pub target: IndexedString,
}

impl Instance {
    pub fn new(source: &[char], target: &[char]) -> Result<Self, AlphabetError> {
        let alphabet = AlphabetMap::build(source, target)?;
        Ok(Instance {
            source: IndexedString::index(source, &alphabet)?,
            target: IndexedString::index(target, &alphabet)?,
            alphabet,
        })
    }

    /// Unicode scalar values are the symbols.
    pub fn from_strs(source: &str, target: &str) -> Result<Self, AlphabetError> {
        let s: Vec<char> = source.chars().collect();
        let l: Vec<char> = target.chars().collect();
        Self::new(&s, &l)
    }

    /// Bytes are the symbols; byte `b` is carried as the char `U+00bb`.
    pub fn from_bytes(source: &[u8], target: &[u8]) -> Result<Self, AlphabetError> {
        let s: Vec<char> = source.iter().map(|&b| char::from(b)).collect();
        let l: Vec<char> = target.iter().map(|&b| char::from(b)).collect();
        Self::new(&s, &l)
    }

    pub fn source_raw(&self) -> Vec<char> {
        self.alphabet.decode(self.source.symbols())
    }

    pub fn target_raw(&self) -> Vec<char> {
        self.alphabet.decode(self.target.symbols())
    }

    pub fn distance(&self) -> EngineResult {
        distance(&self.source, &self.target)
    }

    /// Distance plus an optimal script over raw symbols.
    pub fn distance_with_script(&self) -> Result<(EngineResult, Script<char>), EngineError> {
        let result = distance_with_script(&self.source, &self.target)?;
        let script = result.script.as_ref().expect("script requested").to_raw(&self.alphabet);
        Ok((result, script))
    }

    pub fn weighted_distance(&self, c_ins: Weight, c_swap: Weight) -> Cost<Weight> {
        weighted_distance(&self.source, &self.target, c_ins, c_swap)
    }

    /// Swap-delete distance from this instance's target back to its source.
    pub fn swap_delete_distance(&self) -> (EngineResult, Option<Script<char>>) {
        let result = swap_delete_distance(&self.target, &self.source);
        let script = result.script.as_ref().map(|s| s.to_raw(&self.alphabet));
        (result, script)
    }

    pub fn stats(&self) -> InstanceStats {
        instance_stats(&self.source, &self.target)
    }
}

//! Correction scripts and their replay.
//!
//! Positions are 1-based indices into the working string at the moment the
//! operation is applied. `Swap(p)` exchanges positions `p` and `p + 1`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::alphabet::{AlphabetMap, Code};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum EditOp<T = char> {
    #[serde(rename = "ins")]
    Insert { position: usize, symbol: T },
    #[serde(rename = "del")]
    Delete { position: usize, symbol: T },
    Swap { position: usize },
}

impl<T> EditOp<T> {
    pub fn position(&self) -> usize {
        match *self {
            EditOp::Insert { position, .. } | EditOp::Delete { position, .. } | EditOp::Swap { position } => {
                position
            }
        }
    }

    pub fn map_symbol<U>(self, f: impl FnOnce(T) -> U) -> EditOp<U> {
        match self {
            EditOp::Insert { position, symbol } => EditOp::Insert {
                position,
                symbol: f(symbol),
            },
            EditOp::Delete { position, symbol } => EditOp::Delete {
                position,
                symbol: f(symbol),
            },
            EditOp::Swap { position } => EditOp::Swap { position },
        }
    }
}

impl<T: fmt::Display> fmt::Display for EditOp<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EditOp::Insert { position, symbol } => write!(f, "ins {position} {symbol}"),
            EditOp::Delete { position, symbol } => write!(f, "del {position} {symbol}"),
            EditOp::Swap { position } => write!(f, "swap {position}"),
        }
    }
}

/// An ordered list of edit operations; the unweighted cost is its length.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct Script<T = char> {
    pub ops: Vec<EditOp<T>>,
}

impl<T> Script<T> {
    pub fn new(ops: Vec<EditOp<T>>) -> Self {
        Script { ops }
    }

    pub fn total_cost(&self) -> usize {
        self.ops.len()
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn insert_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, EditOp::Insert { .. }))
            .count()
    }

    pub fn delete_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, EditOp::Delete { .. }))
            .count()
    }

    pub fn swap_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, EditOp::Swap { .. }))
            .count()
    }
}

impl Script<Code> {
    /// Replaces dense codes with the raw symbols they stand for.
    pub fn to_raw(&self, map: &AlphabetMap) -> Script<char> {
        Script::new(
            self.ops
                .iter()
                .map(|op| op.map_symbol(|c| map.raw_of(c).expect("code from this alphabet")))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("operation {index} has position {position} outside the working string of length {len}")]
    InvalidPosition { index: usize, position: usize, len: usize },
    #[error("operation {index} swaps two equal symbols at position {position}")]
    EqualSymbolSwap { index: usize, position: usize },
    #[error("operation {index} deletes a symbol other than the one it names")]
    DeleteMismatch { index: usize },
}

/// Applies `script` to `source` and returns the resulting string.
pub fn apply_script<T: Clone + PartialEq>(source: &[T], script: &Script<T>) -> Result<Vec<T>, ScriptError> {
    let mut work = source.to_vec();
    for (index, op) in script.ops.iter().enumerate() {
        match op {
            EditOp::Insert { position, symbol } => {
                if *position == 0 || *position > work.len() + 1 {
                    return Err(ScriptError::InvalidPosition {
                        index,
                        position: *position,
                        len: work.len(),
                    });
                }
                work.insert(position - 1, symbol.clone());
            }
            EditOp::Delete { position, symbol } => {
                if *position == 0 || *position > work.len() {
                    return Err(ScriptError::InvalidPosition {
                        index,
                        position: *position,
                        len: work.len(),
                    });
                }
                if work[position - 1] != *symbol {
                    return Err(ScriptError::DeleteMismatch { index });
                }
                work.remove(position - 1);
            }
            EditOp::Swap { position } => {
                if *position == 0 || *position >= work.len() {
                    return Err(ScriptError::InvalidPosition {
                        index,
                        position: *position,
                        len: work.len(),
                    });
                }
                if work[position - 1] == work[*position] {
                    return Err(ScriptError::EqualSymbolSwap {
                        index,
                        position: *position,
                    });
                }
                work.swap(position - 1, *position);
            }
        }
    }
    Ok(work)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub valid: bool,
    pub cost: usize,
    pub insert_count: usize,
    pub delete_count: usize,
    pub swap_count: usize,
    /// Why the script was rejected, when it was.
    pub failure: Option<String>,
}

/// Checks that `script` turns `source` into `target`.
pub fn verify_script<T: Clone + PartialEq>(source: &[T], target: &[T], script: &Script<T>) -> Verdict {
    let failure = match apply_script(source, script) {
        Ok(result) if result == target => None,
        Ok(_) => Some("script result differs from the target".to_string()),
        Err(e) => Some(e.to_string()),
    };
    Verdict {
        valid: failure.is_none(),
        cost: script.total_cost(),
        insert_count: script.insert_count(),
        delete_count: script.delete_count(),
        swap_count: script.swap_count(),
        failure,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chars(s: &str) -> Vec<char> {
        s.chars().collect()
    }

    fn ins(position: usize, symbol: char) -> EditOp {
        EditOp::Insert { position, symbol }
    }

    fn swap(position: usize) -> EditOp {
        EditOp::Swap { position }
    }

    #[test]
    fn apply_examples() {
        let out = apply_script(&chars("ba"), &Script::new(vec![swap(1)])).unwrap();
        assert_eq!(out, chars("ab"));

        let out = apply_script(&chars(""), &Script::new(vec![ins(1, 'a'), ins(2, 'b')])).unwrap();
        assert_eq!(out, chars("ab"));

        let out = apply_script(&chars("ba"), &Script::new(vec![swap(1), ins(1, 'a')])).unwrap();
        assert_eq!(out, chars("aab"));
    }

    #[test]
    fn apply_rejects_bad_positions() {
        let err = apply_script(&chars("ab"), &Script::new(vec![ins(4, 'a')])).unwrap_err();
        assert_eq!(
            err,
            ScriptError::InvalidPosition {
                index: 0,
                position: 4,
                len: 2
            }
        );
        let err = apply_script(&chars("ab"), &Script::new(vec![swap(1), swap(2)])).unwrap_err();
        assert!(matches!(err, ScriptError::InvalidPosition { index: 1, .. }));
        assert!(apply_script(&chars("ab"), &Script::new(vec![swap(0)])).is_err());
    }

    #[test]
    fn apply_rejects_equal_symbol_swap() {
        let err = apply_script(&chars("aab"), &Script::new(vec![swap(1)])).unwrap_err();
        assert_eq!(err, ScriptError::EqualSymbolSwap { index: 0, position: 1 });
    }

    #[test]
    fn delete_must_name_the_symbol() {
        let del = |position, symbol| EditOp::Delete { position, symbol };
        assert_eq!(apply_script(&chars("abc"), &Script::new(vec![del(2, 'b')])).unwrap(), chars("ac"));
        assert_eq!(
            apply_script(&chars("abc"), &Script::new(vec![del(2, 'c')])),
            Err(ScriptError::DeleteMismatch { index: 0 })
        );
    }

    #[test]
    fn verify_examples() {
        let v = verify_script(&chars("ba"), &chars("ab"), &Script::new(vec![swap(1)]));
        assert!(v.valid);
        assert_eq!(v.cost, 1);
        assert_eq!(v.swap_count, 1);

        let v = verify_script(&chars("ba"), &chars("ab"), &Script::new(vec![]));
        assert!(!v.valid);

        // Valid but not minimal: cost 2 against a distance of 0.
        let v = verify_script(&chars("ab"), &chars("ab"), &Script::new(vec![swap(1), swap(1)]));
        assert!(v.valid);
        assert_eq!(v.cost, 2);
    }

    #[test]
    fn verify_flags_equal_symbol_swap() {
        let v = verify_script(&chars("aa"), &chars("aa"), &Script::new(vec![swap(1)]));
        assert!(!v.valid);
        assert!(v.failure.unwrap().contains("equal symbols"));
    }

    #[test]
    fn display_format() {
        assert_eq!(ins(3, 'x').to_string(), "ins 3 x");
        assert_eq!(swap(2).to_string(), "swap 2");
    }
}

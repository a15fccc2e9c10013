//! Recursion states `(i, j, c)` and their compressed memo keys.
//!
//! A state is identified by source position `i`, target position `j` and a
//! counter vector `c`, where `c[a]` is the number of upcoming occurrences of
//! symbol `a` in `S[i..]` that were already moved left by swaps and must be
//! skipped. The memo key replaces `(j, c)` with `(p, k, r)`:
//!
//! * `t[a] = rank(L, j-1, a) - rank(S, i-1, a) - c[a]` is the number of
//!   insertions of `a` on the path so far;
//! * `x[a]` is `c[a]` when `n[a] <= m[a] - n[a]` and `t[a]` otherwise, so
//!   `x[a]` never exceeds `g[a] = min(n[a], m[a] - n[a])`;
//! * `r` lists `x` for the tracked symbols and `k = (j - i) - sum(r)`.
//!
//! When every symbol has `g > 0`, one symbol `p` with `c[p] = 0` is dropped
//! from `r` and stored instead. Otherwise only the `s` symbols with `g > 0`
//! are tracked, because the others have `x = 0` in every reachable state.

use smallvec::SmallVec;
use thiserror::Error;

use crate::alphabet::{Code, IndexedString};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KeyError {
    #[error("no zero counter in state, cannot pick the dropped coordinate")]
    NoZeroCounter,
    #[error("key has {found} compressed coordinates, expected {expected}")]
    WrongArity { expected: usize, found: usize },
    #[error("key dropped-symbol field does not match the layout")]
    BadDroppedSymbol,
    #[error("source position {0} out of range")]
    SourceOutOfRange(usize),
    #[error("decoded target position {0} out of range")]
    TargetOutOfRange(usize),
    #[error("coordinate for symbol {symbol} is {value}, bound is {bound}")]
    CoordinateOutOfRange { symbol: Code, value: u32, bound: usize },
    #[error("key decodes to inconsistent counters for symbol {0}")]
    Inconsistent(Code),
}

/// Counts of skipped ("ignored") source symbols, one slot per code.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CounterVector(Vec<u32>);

impl CounterVector {
    pub fn zeros(d: usize) -> Self {
        CounterVector(vec![0; d])
    }

    pub fn from_vec(counts: Vec<u32>) -> Self {
        CounterVector(counts)
    }

    #[inline]
    pub fn get(&self, code: Code) -> u32 {
        self.0[code.slot()]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn has_zero(&self) -> bool {
        self.0.contains(&0)
    }

    pub(crate) fn with_incremented(&self, code: Code) -> Self {
        let mut next = self.clone();
        next.0[code.slot()] += 1;
        next
    }

    pub(crate) fn with_decremented(&self, code: Code) -> Self {
        let mut next = self.clone();
        next.0[code.slot()] -= 1;
        next
    }
}

/// A point `(i, j, c)` of the recursion. Positions are 1-based; `i` ranges
/// over `1..=n+1` and `j` over `1..=m+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct State {
    pub i: usize,
    pub j: usize,
    pub counters: CounterVector,
}

impl State {
    pub fn new(i: usize, j: usize, counters: CounterVector) -> Self {
        State { i, j, counters }
    }

    pub fn initial(d: usize) -> Self {
        State::new(1, 1, CounterVector::zeros(d))
    }
}

/// Compressed memo key `(p, i, k, r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateKey {
    /// Symbol whose coordinate is dropped; present only when all symbols are tracked.
    pub p: Option<Code>,
    pub i: u32,
    pub k: u32,
    pub r: SmallVec<[u32; 8]>,
}

/// Per-instance symbol statistics that fix the key layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyLayout {
    source_counts: Vec<usize>,
    target_counts: Vec<usize>,
    imbalance: Vec<usize>,
    order: Vec<Code>,
    tracked: usize,
    x_is_counter: Vec<bool>,
}

impl KeyLayout {
    pub fn new(source: &IndexedString, target: &IndexedString) -> Self {
        let source_counts = source.counts();
        let target_counts = target.counts();
        let imbalance: Vec<usize> = source_counts
            .iter()
            .zip(&target_counts)
            .map(|(&n, &m)| n.min(m.saturating_sub(n)))
            .collect();
        let x_is_counter = source_counts
            .iter()
            .zip(&target_counts)
            .map(|(&n, &m)| n <= m.saturating_sub(n))
            .collect();

        let mut order: Vec<Code> = (0..imbalance.len()).map(Code::from_slot).collect();
        order.sort_by_key(|c| (imbalance[c.slot()] == 0, imbalance[c.slot()], *c));
        let tracked = imbalance.iter().filter(|&&g| g > 0).count();

        KeyLayout {
            source_counts,
            target_counts,
            imbalance,
            order,
            tracked,
            x_is_counter,
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.order.len()
    }

    /// Number `s` of symbols with positive imbalance.
    pub fn tracked(&self) -> usize {
        self.tracked
    }

    /// True when `s = d > 0`, i.e. the key carries the dropped symbol `p`.
    pub fn is_full(&self) -> bool {
        self.tracked > 0 && self.tracked == self.order.len()
    }

    /// Codes sorted with positive imbalances first, ascending, then the zeros.
    pub fn symbol_order(&self) -> &[Code] {
        &self.order
    }

    pub fn imbalance(&self, code: Code) -> usize {
        self.imbalance[code.slot()]
    }

    pub fn arity(&self) -> usize {
        if self.is_full() {
            self.tracked - 1
        } else {
            self.tracked
        }
    }
}

/// Encodes and decodes states of one instance.
#[derive(Debug, Clone, Copy)]
pub struct KeyCodec<'a> {
    pub(crate) source: &'a IndexedString,
    pub(crate) target: &'a IndexedString,
    pub(crate) layout: &'a KeyLayout,
}

impl<'a> KeyCodec<'a> {
    pub fn new(source: &'a IndexedString, target: &'a IndexedString, layout: &'a KeyLayout) -> Self {
        KeyCodec {
            source,
            target,
            layout,
        }
    }

    /// `c[a] + t[a]` at `(i, j)`.
    #[inline]
    fn consumed(&self, i: usize, j: usize, code: Code) -> i64 {
        self.target.prefix_count(j - 1, code) as i64 - self.source.prefix_count(i - 1, code) as i64
    }

    #[inline]
    fn coordinate(&self, state: &State, code: Code) -> Result<u32, KeyError> {
        let c = state.counters.get(code);
        if self.layout.x_is_counter[code.slot()] {
            return Ok(c);
        }
        let t = self.consumed(state.i, state.j, code) - c as i64;
        u32::try_from(t).map_err(|_| KeyError::Inconsistent(code))
    }

    pub fn encode(&self, state: &State) -> Result<StateKey, KeyError> {
        let layout = self.layout;
        let mut r = SmallVec::new();
        let p = if layout.is_full() {
            let p = *layout
                .order
                .iter()
                .find(|&&c| state.counters.get(c) == 0)
                .ok_or(KeyError::NoZeroCounter)?;
            for &c in layout.order.iter().filter(|&&c| c != p) {
                r.push(self.coordinate(state, c)?);
            }
            Some(p)
        } else {
            for &c in &layout.order[..layout.tracked] {
                r.push(self.coordinate(state, c)?);
            }
            None
        };
        let tracked_sum: i64 = r.iter().map(|&x| x as i64).sum();
        let k = state.j as i64 - state.i as i64 - tracked_sum;
        let k = u32::try_from(k).map_err(|_| KeyError::Inconsistent(Code::from_slot(0)))?;
        Ok(StateKey {
            p,
            i: state.i as u32,
            k,
            r,
        })
    }

    pub fn decode(&self, key: &StateKey) -> Result<State, KeyError> {
        let layout = self.layout;
        let d = layout.alphabet_size();
        let (n, m) = (self.source.len(), self.target.len());

        let tracked: Vec<Code> = match (layout.is_full(), key.p) {
            (true, Some(p)) if p.slot() < d => layout.order.iter().copied().filter(|&c| c != p).collect(),
            (false, None) => layout.order[..layout.tracked].to_vec(),
            _ => return Err(KeyError::BadDroppedSymbol),
        };
        if key.r.len() != tracked.len() {
            return Err(KeyError::WrongArity {
                expected: tracked.len(),
                found: key.r.len(),
            });
        }

        let i = key.i as usize;
        if i == 0 || i > n + 1 {
            return Err(KeyError::SourceOutOfRange(i));
        }
        let mut x = vec![0u32; d];
        for (&code, &value) in tracked.iter().zip(&key.r) {
            let bound = layout.imbalance[code.slot()];
            if value as usize > bound {
                return Err(KeyError::CoordinateOutOfRange {
                    symbol: code,
                    value,
                    bound,
                });
            }
            x[code.slot()] = value;
        }

        let j = i as u64 + key.k as u64 + key.r.iter().map(|&x| x as u64).sum::<u64>();
        if j > m as u64 + 1 {
            return Err(KeyError::TargetOutOfRange(j as usize));
        }
        let j = j as usize;

        let mut counters = vec![0u32; d];
        for slot in 0..d {
            let code = Code::from_slot(slot);
            let consumed = self.consumed(i, j, code);
            let c = if key.p == Some(code) {
                0
            } else if layout.x_is_counter[slot] {
                x[slot] as i64
            } else {
                consumed - x[slot] as i64
            };
            let t = consumed - c;
            let n_a = layout.source_counts[slot] as i64;
            let spare = layout.target_counts[slot] as i64 - n_a;
            if c < 0 || c > n_a || t < 0 || t > spare {
                return Err(KeyError::Inconsistent(code));
            }
            counters[slot] = c as u32;
        }

        if let Some(p) = key.p {
            // p must be the first zero counter in layout order.
            for &code in &layout.order {
                let c = counters[code.slot()];
                if code == p {
                    if c != 0 {
                        return Err(KeyError::Inconsistent(p));
                    }
                    break;
                }
                if c == 0 {
                    return Err(KeyError::BadDroppedSymbol);
                }
            }
        }

        Ok(State::new(i, j, CounterVector(counters)))
    }
}

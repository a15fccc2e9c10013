//! Memoized evaluation of the swap-insert correction distance.
//!
//! The source is scanned left to right against the target. At each state
//! `(i, j, c)` the engine either skips a source symbol already moved left
//! (`c[S[i]] > 0`), matches `S[i] = L[j]`, or branches between inserting
//! `L[j]` and moving the next unskipped occurrence of `L[j]` leftwards with
//! adjacent swaps. Memo keys use the compressed encoding from [`state`], and
//! no memo is kept at all when every symbol has zero imbalance, because the
//! recursion then never branches.

mod cost;
pub mod state;

use std::collections::HashMap;

use thiserror::Error;

pub use cost::{Cost, Weight};
pub use state::{CounterVector, KeyCodec, KeyError, KeyLayout, State, StateKey};

use crate::alphabet::{Code, IndexedString};
use crate::script::{EditOp, Script};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("no correction script exists: the distance is unreachable")]
    ScriptUnavailable,
}

/// Outcome of one distance computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineResult {
    pub distance: Cost,
    /// Distinct states stored in the memo.
    pub memo_entries: usize,
    pub script: Option<Script<Code>>,
    /// Symbol order used by the memo key layout.
    pub symbol_order: Vec<Code>,
}

/// True iff every symbol occurs at most as often in `source` as in `target`.
pub fn feasible(source: &IndexedString, target: &IndexedString) -> bool {
    assert_eq!(
        source.alphabet_size(),
        target.alphabet_size(),
        "source and target must be indexed over the same alphabet"
    );
    source
        .counts()
        .iter()
        .zip(target.counts())
        .all(|(&n, m)| n <= m)
}

/// Computes the distance from `source` to `target`, without a script.
pub fn distance(source: &IndexedString, target: &IndexedString) -> EngineResult {
    let mut engine = Engine::new(source, target);
    let distance = engine.distance();
    engine.result(distance, None)
}

/// Computes the distance and one optimal correction script.
pub fn distance_with_script(source: &IndexedString, target: &IndexedString) -> Result<EngineResult, EngineError> {
    let mut engine = Engine::new(source, target);
    let distance = engine.distance();
    let script = engine.script()?;
    Ok(engine.result(distance, Some(script)))
}

/// Distance where each insertion costs `c_ins` and each swap `c_swap`.
///
/// Every correction uses exactly `m - n` insertions, so an unweighted optimum
/// is also a weighted optimum and the weighted value follows in closed form.
pub fn weighted_distance(source: &IndexedString, target: &IndexedString, c_ins: Weight, c_swap: Weight) -> Cost<Weight> {
    let inserts = (target.len() - source.len().min(target.len())) as u64;
    distance(source, target).distance.map(|total| {
        c_ins * Weight::from_integer(inserts) + c_swap * Weight::from_integer(total - inserts)
    })
}

/// Swap-delete distance from `longer` to `shorter`.
///
/// Computed as the swap-insert distance from `shorter` to `longer`; the
/// script is that script replayed backwards, with insertions turned into
/// deletions at the same positions.
pub fn swap_delete_distance(longer: &IndexedString, shorter: &IndexedString) -> EngineResult {
    let mut engine = Engine::new(shorter, longer);
    let distance = engine.distance();
    let script = engine.script().ok().map(|forward| {
        Script::new(
            forward
                .ops
                .into_iter()
                .rev()
                .map(|op| match op {
                    EditOp::Insert { position, symbol } => EditOp::Delete { position, symbol },
                    other => other,
                })
                .collect(),
        )
    });
    engine.result(distance, script)
}

/// One step of the recursion from a given state.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Move {
    /// A base case with its value.
    Done(Cost),
    /// `S[i]` was moved left earlier: skip it at no cost.
    Skip(State),
    /// `S[i] = L[j]`.
    Match(State),
    /// `S[i] != L[j]`: insert `L[j]` (cost 1), or move the next available
    /// `L[j]` from `S` leftwards (cost = number of swaps).
    Branch {
        insert: Option<State>,
        swap: Option<(u64, State)>,
    },
}

enum Phase {
    Fresh,
    Tail,
    AwaitInsert { swap: Option<(u64, State)> },
    AwaitSwap { best: Cost, cost: u64 },
}

struct Frame {
    state: State,
    key: Option<StateKey>,
    phase: Phase,
}

impl Frame {
    fn fresh(state: State) -> Self {
        Frame {
            state,
            key: None,
            phase: Phase::Fresh,
        }
    }
}

/// A single computation context. Owns its memo; not shared between threads.
pub struct Engine<'a> {
    source: &'a IndexedString,
    target: &'a IndexedString,
    layout: KeyLayout,
    memo: HashMap<StateKey, Cost>,
    use_memo: bool,
    expansions: usize,
    trace: Option<Vec<State>>,
}

impl<'a> Engine<'a> {
    pub fn new(source: &'a IndexedString, target: &'a IndexedString) -> Self {
        assert_eq!(
            source.alphabet_size(),
            target.alphabet_size(),
            "source and target must be indexed over the same alphabet"
        );
        let layout = KeyLayout::new(source, target);
        let use_memo = layout.tracked() > 0;
        Engine {
            source,
            target,
            layout,
            memo: HashMap::new(),
            use_memo,
            expansions: 0,
            trace: None,
        }
    }

    pub fn layout(&self) -> &KeyLayout {
        &self.layout
    }

    pub fn codec(&self) -> KeyCodec<'_> {
        KeyCodec::new(self.source, self.target, &self.layout)
    }

    pub fn memo_entries(&self) -> usize {
        self.memo.len()
    }

    /// Iterates over the memoized keys and their values.
    pub fn memo(&self) -> impl Iterator<Item = (&StateKey, &Cost)> {
        self.memo.iter()
    }

    /// Number of states expanded so far (memo hits excluded).
    pub fn expansions(&self) -> usize {
        self.expansions
    }

    /// Starts recording every expanded state.
    pub fn record_states(&mut self) {
        self.trace.get_or_insert_with(Vec::new);
    }

    pub fn recorded_states(&self) -> &[State] {
        self.trace.as_deref().unwrap_or(&[])
    }

    pub fn is_feasible(&self) -> bool {
        feasible(self.source, self.target)
    }

    /// `DIST(1, 1, 0)`, after an O(d) global feasibility check.
    pub fn distance(&mut self) -> Cost {
        if !self.is_feasible() {
            return Cost::Unreachable;
        }
        let root = State::initial(self.layout.alphabet_size());
        let value = self.evaluate(&root, false);
        if let Cost::Finite(v) = value {
            let (n, m) = (self.source.len() as u64, self.target.len() as u64);
            debug_assert!(v <= n * m + m);
        }
        value
    }

    /// Value of an arbitrary state `(i, j, c)`.
    ///
    /// Keys of states not reachable from `(1, 1, 0)` may collide, so here each
    /// key is checked to decode back to its state before it touches the memo.
    pub fn evaluate_state(&mut self, root: &State) -> Cost {
        self.evaluate(root, true)
    }

    fn evaluate(&mut self, root: &State, check_keys: bool) -> Cost {
        let mut stack = vec![Frame::fresh(root.clone())];
        let mut ret = Cost::Unreachable;

        while let Some(mut frame) = stack.pop() {
            let child = match std::mem::replace(&mut frame.phase, Phase::Fresh) {
                Phase::Fresh => {
                    if self.use_memo {
                        let codec = self.codec();
                        let key = codec
                            .encode(&frame.state)
                            .ok()
                            .filter(|key| !check_keys || codec.decode(key).as_ref() == Ok(&frame.state));
                        if let Some(key) = key {
                            if let Some(&value) = self.memo.get(&key) {
                                ret = value;
                                continue;
                            }
                            frame.key = Some(key);
                        }
                    }
                    self.expansions += 1;
                    if let Some(trace) = self.trace.as_mut() {
                        trace.push(frame.state.clone());
                    }
                    match self.next_move(&frame.state) {
                        Move::Done(value) => {
                            ret = self.finish(frame, value);
                            continue;
                        }
                        Move::Skip(next) | Move::Match(next) => {
                            frame.phase = Phase::Tail;
                            next
                        }
                        Move::Branch { insert: Some(ins), swap } => {
                            frame.phase = Phase::AwaitInsert { swap };
                            ins
                        }
                        Move::Branch {
                            insert: None,
                            swap: Some((cost, next)),
                        } => {
                            frame.phase = Phase::AwaitSwap {
                                best: Cost::Unreachable,
                                cost,
                            };
                            next
                        }
                        Move::Branch { insert: None, swap: None } => {
                            ret = self.finish(frame, Cost::Unreachable);
                            continue;
                        }
                    }
                }
                Phase::Tail => {
                    ret = self.finish(frame, ret);
                    continue;
                }
                Phase::AwaitInsert { swap } => {
                    let best = ret.plus(1);
                    match swap {
                        Some((cost, next)) => {
                            frame.phase = Phase::AwaitSwap { best, cost };
                            next
                        }
                        None => {
                            ret = self.finish(frame, best);
                            continue;
                        }
                    }
                }
                Phase::AwaitSwap { best, cost } => {
                    ret = self.finish(frame, best.min(ret.plus(cost)));
                    continue;
                }
            };
            stack.push(frame);
            stack.push(Frame::fresh(child));
        }
        ret
    }

    fn finish(&mut self, frame: Frame, value: Cost) -> Cost {
        if let Some(key) = frame.key {
            self.memo.insert(key, value);
        }
        value
    }

    fn next_move(&self, state: &State) -> Move {
        let (src, tgt) = (self.source, self.target);
        let (n, m) = (src.len(), tgt.len());
        let (i, j, c) = (state.i, state.j, &state.counters);

        if i == n + 1 {
            return Move::Done(if c.is_zero() {
                Cost::Finite((m + 1 - j) as u64)
            } else {
                Cost::Unreachable
            });
        }
        if j == m + 1 {
            return Move::Done(if c.total() == (n + 1 - i) as u64 {
                Cost::Finite(0)
            } else {
                Cost::Unreachable
            });
        }

        let alpha = src.at(i);
        let beta = tgt.at(j);
        if c.get(alpha) > 0 {
            return Move::Skip(State::new(i + 1, j, c.with_decremented(alpha)));
        }
        if alpha == beta {
            return Move::Match(State::new(i + 1, j + 1, c.clone()));
        }

        // Insertion keeps the child feasible only if L[j+1..] still holds
        // enough betas for the unskipped ones in S[i..].
        let insert = (c.get(beta) == 0 && src.suffix_count(i, beta) < tgt.suffix_count(j, beta))
            .then(|| State::new(i, j + 1, c.clone()));

        let occurrence = src.prefix_count(i, beta) + c.get(beta) as usize + 1;
        let swap = src.nth_position(occurrence, beta).map(|r| {
            let skipped: usize = (0..c.as_slice().len())
                .map(Code::from_slot)
                .map(|theta| {
                    let between = src.prefix_count(r, theta) - src.prefix_count(i - 1, theta);
                    (c.get(theta) as usize).min(between)
                })
                .sum();
            let swaps = (r - i - skipped) as u64;
            (swaps, State::new(i, j + 1, c.with_incremented(beta)))
        });

        Move::Branch { insert, swap }
    }

    /// Reconstructs one optimal script by walking the memoized recursion.
    ///
    /// Ties between inserting and swapping are broken towards inserting.
    pub fn script(&mut self) -> Result<Script<Code>, EngineError> {
        if !self.distance().is_finite() {
            return Err(EngineError::ScriptUnavailable);
        }
        let (n, m) = (self.source.len(), self.target.len());
        let mut ops = Vec::new();
        let mut state = State::initial(self.layout.alphabet_size());

        loop {
            if state.i == n + 1 {
                ops.extend((state.j..=m).map(|j| EditOp::Insert {
                    position: j,
                    symbol: self.target.at(j),
                }));
                break;
            }
            if state.j == m + 1 {
                break;
            }
            match self.next_move(&state) {
                Move::Skip(next) | Move::Match(next) => state = next,
                Move::Branch { insert, swap } => {
                    let take_insert = match (&insert, &swap) {
                        (Some(ins), Some((cost, next))) => {
                            self.evaluate(ins, false).plus(1) <= self.evaluate(next, false).plus(*cost)
                        }
                        (Some(_), None) => true,
                        (None, Some(_)) => false,
                        (None, None) => unreachable!("finite state without a move"),
                    };
                    let j = state.j;
                    if take_insert {
                        ops.push(EditOp::Insert {
                            position: j,
                            symbol: self.target.at(j),
                        });
                        state = insert.expect("insert branch chosen");
                    } else {
                        let (cost, next) = swap.expect("swap branch chosen");
                        // The moved symbol sits `cost` places right of slot j.
                        let from = j + cost as usize;
                        ops.extend((j..from).rev().map(|position| EditOp::Swap { position }));
                        state = next;
                    }
                }
                Move::Done(_) => unreachable!("base cases handled above"),
            }
        }
        Ok(Script::new(ops))
    }

    fn result(&self, distance: Cost, script: Option<Script<Code>>) -> EngineResult {
        EngineResult {
            distance,
            memo_entries: self.memo.len(),
            script,
            symbol_order: self.layout.symbol_order().to_vec(),
        }
    }
}

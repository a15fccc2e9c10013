//! Dense alphabet codes and constant-time rank/select over indexed strings.
//!
//! Raw symbols are mapped to codes in `1..=d`. Positions are 1-based
//! everywhere: `rank(i, a)` counts occurrences of `a` in `X[1..i]`, and
//! `select(k, a)` is the position of the k-th occurrence of `a`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Largest number of distinct symbols an [`AlphabetMap`] accepts.
pub const MAX_ALPHABET: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("symbol {0:?} has no code in the alphabet")]
    UnknownSymbol(char),
    #[error("alphabet has {0} distinct symbols, the limit is {MAX_ALPHABET}")]
    TooLarge(usize),
    #[error("position {position} out of range 0..={len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("code {code} out of range 1..={size}")]
    CodeOutOfRange { code: u32, size: usize },
}

/// A dense symbol code in `1..=d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Code(u32);

impl Code {
    pub fn new(code: u32) -> Self {
        assert!(code >= 1, "codes are 1-based");
        Code(code)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Zero-based slot for per-symbol arrays.
    #[inline]
    pub fn slot(self) -> usize {
        self.0 as usize - 1
    }

    #[inline]
    pub(crate) fn from_slot(slot: usize) -> Self {
        Code(slot as u32 + 1)
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Bijection between the raw symbols of an instance and dense codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphabetMap {
    raw: Vec<char>,
    codes: HashMap<char, Code>,
}

impl AlphabetMap {
    /// Builds the map for a source/target pair.
    ///
    /// Codes are assigned in first-occurrence order scanning the target
    /// first and then the source, so the same pair always gets the same codes.
    pub fn build(source: &[char], target: &[char]) -> Result<Self, AlphabetError> {
        let mut raw = Vec::new();
        let mut codes = HashMap::new();
        for &ch in target.iter().chain(source) {
            codes.entry(ch).or_insert_with(|| {
                raw.push(ch);
                Code(raw.len() as u32)
            });
        }
        if raw.len() > MAX_ALPHABET {
            return Err(AlphabetError::TooLarge(raw.len()));
        }
        Ok(AlphabetMap { raw, codes })
    }

    /// Alphabet size `d`.
    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    pub fn code_of(&self, ch: char) -> Option<Code> {
        self.codes.get(&ch).copied()
    }

    pub fn raw_of(&self, code: Code) -> Option<char> {
        self.raw.get(code.slot()).copied()
    }

    /// Raw symbols in code order.
    pub fn symbols(&self) -> &[char] {
        &self.raw
    }

    pub fn codes(&self) -> impl Iterator<Item = Code> {
        (0..self.raw.len()).map(Code::from_slot)
    }

    pub fn encode(&self, raw: &[char]) -> Result<Vec<Code>, AlphabetError> {
        raw.iter()
            .map(|&ch| self.code_of(ch).ok_or(AlphabetError::UnknownSymbol(ch)))
            .collect()
    }

    pub fn decode(&self, codes: &[Code]) -> Vec<char> {
        codes.iter().map(|&c| self.raw[c.slot()]).collect()
    }
}

/// A coded string with full prefix-count and occurrence tables.
///
/// The rank table is a dense `d x (len + 1)` array, row per code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedString {
    symbols: Vec<Code>,
    alphabet_size: usize,
    rank_table: Vec<u32>,
    select_table: Vec<Vec<u32>>,
}

impl IndexedString {
    pub fn index(raw: &[char], map: &AlphabetMap) -> Result<Self, AlphabetError> {
        Ok(Self::from_codes(map.encode(raw)?, map.len()))
    }

    /// Indexes an already-coded string. Every code must lie in `1..=alphabet_size`.
    pub fn from_codes(symbols: Vec<Code>, alphabet_size: usize) -> Self {
        let width = symbols.len() + 1;
        let mut rank_table = vec![0u32; alphabet_size * width];
        let mut select_table = vec![Vec::new(); alphabet_size];
        for (offset, &code) in symbols.iter().enumerate() {
            assert!(code.slot() < alphabet_size, "code {code} outside alphabet");
            select_table[code.slot()].push(offset as u32 + 1);
        }
        for (slot, row) in rank_table.chunks_mut(width.max(1)).enumerate() {
            let mut running = 0;
            for (pos, &code) in symbols.iter().enumerate() {
                if code.slot() == slot {
                    running += 1;
                }
                row[pos + 1] = running;
            }
        }
        IndexedString {
            symbols,
            alphabet_size,
            rank_table,
            select_table,
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn symbols(&self) -> &[Code] {
        &self.symbols
    }

    /// Symbol at 1-based position `p`.
    #[inline]
    pub fn at(&self, p: usize) -> Code {
        self.symbols[p - 1]
    }

    /// `(rows, columns)` of the rank table.
    pub fn rank_table_dims(&self) -> (usize, usize) {
        (self.alphabet_size, self.symbols.len() + 1)
    }

    /// Number of occurrences of `code` in the whole string (`n_a` / `m_a`).
    pub fn occurrences(&self, code: Code) -> usize {
        self.select_table[code.slot()].len()
    }

    /// Occurrence counts for every code, in code order.
    pub fn counts(&self) -> Vec<usize> {
        self.select_table.iter().map(Vec::len).collect()
    }

    pub fn rank(&self, i: usize, code: Code) -> Result<usize, AlphabetError> {
        self.check_code(code)?;
        if i > self.len() {
            return Err(AlphabetError::PositionOutOfRange {
                position: i,
                len: self.len(),
            });
        }
        Ok(self.prefix_count(i, code))
    }

    /// Position of the `k`-th occurrence of `code`, or `None` when there are
    /// fewer than `k` occurrences (or `k == 0`).
    pub fn select(&self, k: usize, code: Code) -> Result<Option<usize>, AlphabetError> {
        self.check_code(code)?;
        Ok(self.nth_position(k, code))
    }

    /// Occurrences of `code` in the suffix `X[i..]`, for `1 <= i <= len + 1`.
    pub fn count(&self, i: usize, code: Code) -> Result<usize, AlphabetError> {
        self.check_code(code)?;
        if i == 0 || i > self.len() + 1 {
            return Err(AlphabetError::PositionOutOfRange {
                position: i,
                len: self.len() + 1,
            });
        }
        Ok(self.suffix_count(i, code))
    }

    fn check_code(&self, code: Code) -> Result<(), AlphabetError> {
        if code.slot() >= self.alphabet_size {
            return Err(AlphabetError::CodeOutOfRange {
                code: code.get(),
                size: self.alphabet_size,
            });
        }
        Ok(())
    }

    // Unchecked variants for the engine's inner loop.

    #[inline]
    pub(crate) fn prefix_count(&self, i: usize, code: Code) -> usize {
        self.rank_table[code.slot() * (self.symbols.len() + 1) + i] as usize
    }

    #[inline]
    pub(crate) fn suffix_count(&self, i: usize, code: Code) -> usize {
        self.occurrences(code) - self.prefix_count(i - 1, code)
    }

    #[inline]
    pub(crate) fn nth_position(&self, k: usize, code: Code) -> Option<usize> {
        if k == 0 {
            return None;
        }
        self.select_table[code.slot()]
            .get(k - 1)
            .map(|&p| p as usize)
    }
}

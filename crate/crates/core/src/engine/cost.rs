use std::fmt;
use std::ops::Add;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

/// Non-negative rational weight for the weighted distance.
pub type Weight = Ratio<u64>;

/// A distance value, or `Unreachable` when no correction exists.
///
/// `Finite` orders below `Unreachable`, so `min` picks any finite value over
/// `Unreachable` and addition saturates at `Unreachable`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cost<T = u64> {
    Finite(T),
    Unreachable,
}

impl<T> Cost<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, Cost::Finite(_))
    }

    pub fn finite(self) -> Option<T> {
        match self {
            Cost::Finite(v) => Some(v),
            Cost::Unreachable => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Cost<U> {
        match self {
            Cost::Finite(v) => Cost::Finite(f(v)),
            Cost::Unreachable => Cost::Unreachable,
        }
    }
}

impl<T: Add<Output = T>> Cost<T> {
    /// Adds a finite amount; `Unreachable` stays `Unreachable`.
    pub fn plus(self, amount: T) -> Self {
        self.map(|v| v + amount)
    }
}

impl<T: Add<Output = T>> Add for Cost<T> {
    type Output = Cost<T>;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a + b),
            _ => Cost::Unreachable,
        }
    }
}

impl<T> From<Option<T>> for Cost<T> {
    fn from(value: Option<T>) -> Self {
        value.map_or(Cost::Unreachable, Cost::Finite)
    }
}

impl<T: fmt::Display> fmt::Display for Cost<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(v) => v.fmt(f),
            Cost::Unreachable => f.write_str("unreachable"),
        }
    }
}

// Serialized as the number itself, or null.
impl<T: Serialize> Serialize for Cost<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Cost::Finite(v) => v.serialize(serializer),
            Cost::Unreachable => serializer.serialize_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unreachable_absorbs_addition() {
        assert_eq!(Cost::Finite(2u64) + Cost::Finite(3), Cost::Finite(5));
        assert_eq!(Cost::Finite(2u64) + Cost::Unreachable, Cost::Unreachable);
        assert_eq!(Cost::<u64>::Unreachable.plus(7), Cost::Unreachable);
    }

    #[test]
    fn min_prefers_finite() {
        assert_eq!(Cost::Unreachable.min(Cost::Finite(9u64)), Cost::Finite(9));
        assert_eq!(Cost::Finite(4u64).min(Cost::Finite(9)), Cost::Finite(4));
        assert_eq!(Cost::<u64>::Unreachable.min(Cost::Unreachable), Cost::Unreachable);
    }

    #[test]
    fn serializes_as_number_or_null() {
        assert_eq!(serde_json::to_string(&Cost::Finite(3u64)).unwrap(), "3");
        assert_eq!(serde_json::to_string(&Cost::<u64>::Unreachable).unwrap(), "null");
    }
}

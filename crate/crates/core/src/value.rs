use std::fmt;

use serde::Serialize;

/// An exact integer, or closed bounds when a search ran out of budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Exact(u64),
    Interval { lo: u64, hi: u64 },
}

impl Value {
    pub fn from_bounds(lo: u64, hi: u64) -> Self {
        debug_assert!(lo <= hi);
        if lo == hi {
            Value::Exact(lo)
        } else {
            Value::Interval { lo, hi }
        }
    }

    pub fn lo(&self) -> u64 {
        match *self {
            Value::Exact(v) => v,
            Value::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> u64 {
        match *self {
            Value::Exact(v) => v,
            Value::Interval { hi, .. } => hi,
        }
    }

    pub fn exact(&self) -> Option<u64> {
        match *self {
            Value::Exact(v) => Some(v),
            Value::Interval { .. } => None,
        }
    }

    pub fn overlaps(&self, other: &Value) -> bool {
        self.lo() <= other.hi() && other.lo() <= self.hi()
    }

    /// `a - self` for every point of `self`.
    pub fn subtracted_from(&self, a: u64) -> Value {
        Value::from_bounds(a - self.hi(), a - self.lo())
    }

    pub fn scaled(&self, factor: u64) -> Value {
        Value::from_bounds(self.lo() * factor, self.hi() * factor)
    }

    pub fn max_with(&self, floor: u64) -> Value {
        Value::from_bounds(self.lo().max(floor), self.hi().max(floor))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(v) => write!(f, "{v}"),
            Value::Interval { lo, hi } => write!(f, "[{lo},{hi}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_overlap() {
        let v = Value::from_bounds(6, 8);
        assert_eq!(v.subtracted_from(560), Value::Interval { lo: 552, hi: 554 });
        assert_eq!(Value::from_bounds(4, 4), Value::Exact(4));
        assert!(v.overlaps(&Value::Exact(7)));
        assert!(!v.overlaps(&Value::Exact(9)));
        assert_eq!(Value::Exact(9).scaled(2).subtracted_from(42), Value::Exact(24));
        assert_eq!(Value::Exact(24).max_with(21), Value::Exact(24));
        assert_eq!(v.to_string(), "[6,8]");
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"lo":6,"hi":8}"#);
        assert_eq!(serde_json::to_string(&Value::Exact(3)).unwrap(), "3");
    }
}

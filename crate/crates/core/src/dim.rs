//! Certified dimension values and three-valued truth.

use std::fmt;
use std::ops::Add;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

/// A dimension that is either known exactly or certified to lie in a closed
/// integer interval.
///
/// `Exact(n)` and `Interval(n, n)` are the same value: the representation is
/// always the pair of bounds, and exactness is `lo == hi`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DimValue {
    lo: u32,
    hi: u32,
}

impl DimValue {
    pub const ZERO: DimValue = DimValue { lo: 0, hi: 0 };

    pub const fn exact(n: u32) -> Self {
        DimValue { lo: n, hi: n }
    }

    /// Returns `None` when `lo > hi`.
    pub fn interval(lo: u32, hi: u32) -> Option<Self> {
        (lo <= hi).then_some(DimValue { lo, hi })
    }

    pub fn lo(self) -> u32 {
        self.lo
    }

    pub fn hi(self) -> u32 {
        self.hi
    }

    pub fn is_exact(self) -> bool {
        self.lo == self.hi
    }

    pub fn as_exact(self) -> Option<u32> {
        self.is_exact().then_some(self.lo)
    }

    pub fn contains(self, n: u32) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn max(self, other: Self) -> Self {
        DimValue {
            lo: self.lo.max(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn min(self, other: Self) -> Self {
        DimValue {
            lo: self.lo.min(other.lo),
            hi: self.hi.min(other.hi),
        }
    }

    /// Intersection of the two certified ranges, `None` if they are disjoint.
    pub fn intersect(self, other: Self) -> Option<Self> {
        DimValue::interval(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    /// `self <= other` on both bounds.
    pub fn le_boundwise(self, other: Self) -> bool {
        self.lo <= other.lo && self.hi <= other.hi
    }

    /// Two certified ranges can describe the same true value.
    pub fn compatible(self, other: Self) -> bool {
        self.intersect(other).is_some()
    }

    pub fn raise_lo(self, lo: u32) -> Option<Self> {
        DimValue::interval(self.lo.max(lo), self.hi)
    }
}

impl From<u32> for DimValue {
    fn from(n: u32) -> Self {
        DimValue::exact(n)
    }
}

impl Add for DimValue {
    type Output = DimValue;

    fn add(self, rhs: DimValue) -> DimValue {
        DimValue {
            lo: self.lo.saturating_add(rhs.lo),
            hi: self.hi.saturating_add(rhs.hi),
        }
    }
}

impl Add<u32> for DimValue {
    type Output = DimValue;

    fn add(self, rhs: u32) -> DimValue {
        self + DimValue::exact(rhs)
    }
}

impl fmt::Display for DimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Serialized as `{"exact": n}` or `{"interval": [lo, hi]}`.
impl Serialize for DimValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(1))?;
        match self.as_exact() {
            Some(n) => map.serialize_entry("exact", &n)?,
            None => map.serialize_entry("interval", &[self.lo, self.hi])?,
        }
        map.end()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

impl TriState {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TriState::Yes
        } else {
            TriState::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == TriState::Yes
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriState::Yes => "yes",
            TriState::No => "no",
            TriState::Unknown => "unknown",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dim_value() -> impl Strategy<Value = DimValue> {
        (0u32..50, 0u32..50).prop_map(|(a, b)| DimValue::interval(a.min(b), a.max(b)).unwrap())
    }

    #[test]
    fn exact_is_degenerate_interval() {
        assert_eq!(DimValue::exact(3), DimValue::interval(3, 3).unwrap());
        assert_eq!(DimValue::interval(3, 3).unwrap().as_exact(), Some(3));
        assert!(DimValue::interval(4, 3).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(DimValue::exact(4).to_string(), "4");
        assert_eq!(DimValue::interval(2, 5).unwrap().to_string(), "[2, 5]");
    }

    #[test]
    fn json_shape() {
        let e = serde_json::to_string(&DimValue::exact(4)).unwrap();
        assert_eq!(e, r#"{"exact":4}"#);
        let i = serde_json::to_string(&DimValue::interval(1, 6).unwrap()).unwrap();
        assert_eq!(i, r#"{"interval":[1,6]}"#);
    }

    proptest! {
        #[test]
        fn exact_addition(a in 0u32..1000, b in 0u32..1000) {
            prop_assert_eq!(DimValue::exact(a) + DimValue::exact(b), DimValue::exact(a + b));
        }

        #[test]
        fn arithmetic_keeps_bounds_ordered(x in dim_value(), y in dim_value()) {
            for v in [x + y, x.max(y), x.min(y)] {
                prop_assert!(v.lo() <= v.hi());
            }
            prop_assert_eq!((x + y).lo(), x.lo() + y.lo());
            prop_assert_eq!((x + y).hi(), x.hi() + y.hi());
        }

        #[test]
        fn max_min_contain_pointwise(x in dim_value(), y in dim_value(), i in 0u32..50, j in 0u32..50) {
            if x.contains(i) && y.contains(j) {
                prop_assert!(x.max(y).contains(i.max(j)));
                prop_assert!(x.min(y).contains(i.min(j)));
                prop_assert!((x + y).contains(i + j));
            }
        }
    }
}

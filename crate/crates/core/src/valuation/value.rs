use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

/// Element of `ℤ^k` under the lexicographic order, or `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Wire", try_from = "Wire")]
pub enum ValueVector {
    Finite(Vec<i64>),
    Infinity,
}

impl ValueVector {
    pub fn zero(rank: usize) -> Self {
        ValueVector::Finite(vec![0; rank])
    }

    pub fn rank1(v: Option<i64>) -> Self {
        v.map_or(ValueVector::Infinity, |v| ValueVector::Finite(vec![v]))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ValueVector::Infinity)
    }

    pub fn coords(&self) -> Option<&[i64]> {
        match self {
            ValueVector::Finite(c) => Some(c),
            ValueVector::Infinity => None,
        }
    }

    /// Sign of the vector in the lexicographic order; `∞` is positive.
    pub fn signum(&self) -> Ordering {
        match self {
            ValueVector::Infinity => Ordering::Greater,
            ValueVector::Finite(c) => c.iter().map(|x| x.cmp(&0)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal),
        }
    }

    pub fn neg(&self) -> Option<Self> {
        self.coords().map(|c| ValueVector::Finite(c.iter().map(|x| -x).collect()))
    }

    /// Concatenation of coordinates; `∞` when either part is `∞`.
    pub fn concat(&self, other: &ValueVector) -> Self {
        match (self, other) {
            (ValueVector::Finite(a), ValueVector::Finite(b)) => ValueVector::Finite(a.iter().chain(b).copied().collect()),
            _ => ValueVector::Infinity,
        }
    }
}

impl Ord for ValueVector {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ValueVector::Infinity, ValueVector::Infinity) => Ordering::Equal,
            (ValueVector::Infinity, _) => Ordering::Greater,
            (_, ValueVector::Infinity) => Ordering::Less,
            (ValueVector::Finite(a), ValueVector::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for ValueVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &ValueVector {
    type Output = ValueVector;

    fn add(self, rhs: &ValueVector) -> ValueVector {
        match (self, rhs) {
            (ValueVector::Finite(a), ValueVector::Finite(b)) => {
                assert_eq!(a.len(), b.len(), "value vectors of different rank");
                ValueVector::Finite(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => ValueVector::Infinity,
        }
    }
}

impl fmt::Display for ValueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueVector::Infinity => write!(f, "∞"),
            ValueVector::Finite(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    v: WireValue,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireValue {
    Coords(Vec<i64>),
    Symbol(String),
}

impl From<ValueVector> for Wire {
    fn from(v: ValueVector) -> Self {
        Wire {
            v: match v {
                ValueVector::Finite(c) => WireValue::Coords(c),
                ValueVector::Infinity => WireValue::Symbol("inf".into()),
            },
        }
    }
}

impl TryFrom<Wire> for ValueVector {
    type Error = String;

    fn try_from(w: Wire) -> Result<Self, String> {
        match w.v {
            WireValue::Coords(c) => Ok(ValueVector::Finite(c)),
            WireValue::Symbol(s) if s == "inf" => Ok(ValueVector::Infinity),
            WireValue::Symbol(s) => Err(format!("unknown value symbol {s:?}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> ValueVector {
        ValueVector::Finite(c.to_vec())
    }

    #[test]
    fn lex_order_and_infinity() {
        for n in [-1000, 0, 1000] {
            for m in [-1000, 0, 1000] {
                assert!(v(&[0, n]) < v(&[1, m]));
            }
        }
        assert!(ValueVector::Infinity > v(&[i64::MAX, i64::MAX]));
        assert_eq!(&v(&[1, 2]) + &ValueVector::Infinity, ValueVector::Infinity);
        assert_eq!(&v(&[1, 2]) + &v(&[0, -2]), v(&[1, 0]));
        assert_eq!(v(&[0, -3]).signum(), Ordering::Less);
    }

    #[test]
    fn json_shape() {
        assert_eq!(serde_json::to_string(&v(&[1, -1])).unwrap(), r#"{"v":[1,-1]}"#);
        assert_eq!(serde_json::to_string(&ValueVector::Infinity).unwrap(), r#"{"v":"inf"}"#);
        let back: ValueVector = serde_json::from_str(r#"{"v":"inf"}"#).unwrap();
        assert_eq!(back, ValueVector::Infinity);
        assert!(serde_json::from_str::<ValueVector>(r#"{"v":"nan"}"#).is_err());
    }
}

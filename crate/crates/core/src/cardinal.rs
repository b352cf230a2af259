//! Symbolic cardinal values and the two comparison models.
//!
//! Values are finite naturals, alephs with natural index, or powers
//! `2^{ℵ_i}`. The default model identifies `2^{ℵ_i}` with `ℵ_{i+1}`, which
//! makes the order total; the strict model only commits to what is provable
//! outright, and comparisons involving distinct power cardinals or an aleph
//! above the base of a power come back as errors instead of guesses.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CardinalValue {
    Finite(u64),
    Aleph(u32),
    /// `2^{ℵ_index}`.
    PowerOfAleph(u32),
}

impl CardinalValue {
    pub fn is_infinite(self) -> bool {
        !matches!(self, CardinalValue::Finite(_))
    }
}

impl fmt::Display for CardinalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardinalValue::Finite(n) => write!(f, "{n}"),
            CardinalValue::Aleph(i) => write!(f, "aleph{i}"),
            CardinalValue::PowerOfAleph(i) => write!(f, "2^aleph{i}"),
        }
    }
}

impl FromStr for CardinalValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<CardinalValue> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix("2^aleph") {
            let i = rest
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("cardinal {t:?}: {e}")))?;
            return Ok(CardinalValue::PowerOfAleph(i));
        }
        if let Some(rest) = t.strip_prefix("aleph") {
            let i = rest
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("cardinal {t:?}: {e}")))?;
            return Ok(CardinalValue::Aleph(i));
        }
        let n = t
            .parse::<u64>()
            .map_err(|e| Error::Parse(format!("cardinal {t:?}: {e}")))?;
        Ok(CardinalValue::Finite(n))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CardinalModel {
    /// `2^{ℵ_i} = ℵ_{i+1}`: total order.
    #[default]
    Gch,
    /// Only provable comparisons; others error.
    Strict,
}

impl FromStr for CardinalModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<CardinalModel> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gch" => Ok(CardinalModel::Gch),
            "strict" => Ok(CardinalModel::Strict),
            other => Err(Error::Parse(format!("unknown cardinal model {other:?}"))),
        }
    }
}

impl CardinalModel {
    /// Canonical representative under the model: GCH rewrites `2^{ℵ_i}` to
    /// `ℵ_{i+1}`; the strict model keeps values as written.
    pub fn canonical(self, a: CardinalValue) -> CardinalValue {
        match (self, a) {
            (CardinalModel::Gch, CardinalValue::PowerOfAleph(i)) => CardinalValue::Aleph(i + 1),
            _ => a,
        }
    }

    pub fn cmp(self, a: CardinalValue, b: CardinalValue) -> Result<Ordering> {
        use CardinalValue::*;
        let (a, b) = (self.canonical(a), self.canonical(b));
        match (a, b) {
            (Finite(x), Finite(y)) => Ok(x.cmp(&y)),
            (Finite(_), _) => Ok(Ordering::Less),
            (_, Finite(_)) => Ok(Ordering::Greater),
            (Aleph(i), Aleph(j)) => Ok(i.cmp(&j)),
            (PowerOfAleph(i), PowerOfAleph(j)) if i == j => Ok(Ordering::Equal),
            // Strict model only: Cantor gives ℵ_j ≤ ℵ_i < 2^{ℵ_i}; everything
            // else about distinct power cardinals is undecided.
            (Aleph(j), PowerOfAleph(i)) if j <= i => Ok(Ordering::Less),
            (PowerOfAleph(i), Aleph(j)) if j <= i => Ok(Ordering::Greater),
            _ => Err(Error::IncomparableCardinals),
        }
    }

    pub fn eq(self, a: CardinalValue, b: CardinalValue) -> bool {
        matches!(self.cmp(a, b), Ok(Ordering::Equal))
    }

    pub fn leq(self, a: CardinalValue, b: CardinalValue) -> Result<bool> {
        Ok(self.cmp(a, b)? != Ordering::Greater)
    }

    pub fn max(self, a: CardinalValue, b: CardinalValue) -> Result<CardinalValue> {
        Ok(match self.cmp(a, b)? {
            Ordering::Less => self.canonical(b),
            _ => self.canonical(a),
        })
    }

    pub fn min(self, a: CardinalValue, b: CardinalValue) -> Result<CardinalValue> {
        Ok(match self.cmp(a, b)? {
            Ordering::Greater => self.canonical(b),
            _ => self.canonical(a),
        })
    }

    /// Finite times finite multiplies; anything infinite absorbs to the max.
    pub fn mul(self, a: CardinalValue, b: CardinalValue) -> Result<CardinalValue> {
        use CardinalValue::*;
        match (a, b) {
            (Finite(x), Finite(y)) => x
                .checked_mul(y)
                .map(Finite)
                .ok_or(Error::CardinalOverflow),
            _ => self.max(a, b),
        }
    }

    pub fn exp2(self, a: CardinalValue) -> Result<CardinalValue> {
        use CardinalValue::*;
        match a {
            Finite(n) => {
                if n >= 64 {
                    return Err(Error::CardinalOverflow);
                }
                Ok(Finite(1u64 << n))
            }
            Aleph(i) => Ok(self.canonical(PowerOfAleph(i))),
            PowerOfAleph(i) => match self {
                CardinalModel::Gch => Ok(PowerOfAleph(i + 1)),
                CardinalModel::Strict => Err(Error::CardinalOverflow),
            },
        }
    }
}

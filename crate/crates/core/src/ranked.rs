//! Ranked indicators: an indicator paired with a non-increasing sequence of
//! infinite cardinals, the parameter space that classifies ideals of the
//! torsion ideal for unbounded groups. Realized here purely symbolically.
//!
//! The rank sequence is stored as its finitely many leading values; the last
//! value repeats forever. The order used throughout is the ideal-containment
//! order: `x ≤ y` iff y's indicator precedes x's and x's ranks are pointwise
//! at most y's. The pointwise orientation is also exposed, since the two
//! disagree about which end is the top.
//!
//! Truncations follow the partial-sum reading: the j-th truncation carries
//! ranks `(m_0, ..., m_j)` and then the minimum `ℵ_0` forever, which makes
//! the truncation chain genuinely increasing in the ideal order with the
//! original ranked indicator as its exact supremum.

use std::fmt;
use std::str::FromStr;

use crate::cardinal::{CardinalModel, CardinalValue};
use crate::error::{Error, Result};
use crate::indicator::Indicator;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedIndicator {
    indicator: Indicator,
    /// Non-increasing, all infinite; the last entry extends forever.
    ranks: Vec<CardinalValue>,
}

impl fmt::Display for RankedIndicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ranks: Vec<String> = self.ranks.iter().map(|c| c.to_string()).collect();
        write!(f, "({} | {})", self.indicator, ranks.join(", "))
    }
}

impl RankedIndicator {
    pub fn new(
        indicator: Indicator,
        ranks: Vec<CardinalValue>,
        model: CardinalModel,
    ) -> Result<RankedIndicator> {
        if ranks.is_empty() {
            return Err(Error::InvalidRanked("rank sequence is empty".into()));
        }
        for r in &ranks {
            if !r.is_infinite() {
                return Err(Error::InvalidRanked(format!("rank {r} is finite")));
            }
        }
        for w in ranks.windows(2) {
            if !model.leq(w[1], w[0])? {
                return Err(Error::InvalidRanked(format!(
                    "ranks must be non-increasing: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(RankedIndicator { indicator, ranks }.normalized(model))
    }

    pub fn indicator(&self) -> &Indicator {
        &self.indicator
    }

    pub fn ranks(&self) -> &[CardinalValue] {
        &self.ranks
    }

    /// The rank at any position, reading the tail as the last stored value.
    pub fn rank_at(&self, i: usize) -> CardinalValue {
        *self.ranks.get(i).unwrap_or(self.ranks.last().expect("nonempty"))
    }

    /// Canonical form under a model: canonical cardinals, ranks capped at
    /// `ℵ_0` beyond the indicator length (positions past the length cannot
    /// influence the ideal the pair denotes, since the defining sum of
    /// truncation slices stabilizes there), trailing repetitions of the last
    /// value trimmed.
    fn normalized(self, model: CardinalModel) -> RankedIndicator {
        let len = self.indicator.len();
        let mut ranks: Vec<CardinalValue> = (0..len)
            .map(|i| model.canonical(self.rank_at(i)))
            .collect();
        ranks.push(CardinalValue::Aleph(0));
        while ranks.len() > 1 {
            let n = ranks.len();
            if ranks[n - 1] == ranks[n - 2] {
                ranks.pop();
            } else {
                break;
            }
        }
        RankedIndicator {
            indicator: self.indicator,
            ranks,
        }
    }
}

fn rank_len(x: &RankedIndicator, y: &RankedIndicator) -> usize {
    x.ranks.len().max(y.ranks.len())
}

/// Ideal-containment order: `x ≤ y` iff `y.indicator ⪯ x.indicator` and
/// `x.ranks ≤ y.ranks` pointwise.
pub fn leq(x: &RankedIndicator, y: &RankedIndicator, model: CardinalModel) -> Result<bool> {
    if !y.indicator.precedes(&x.indicator) {
        return Ok(false);
    }
    for i in 0..rank_len(x, y) {
        if !model.leq(x.rank_at(i), y.rank_at(i))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The pointwise orientation: both components compared the same way. Under
/// it the roles of top and bottom swap relative to the ideal order.
pub fn pointwise_leq(
    x: &RankedIndicator,
    y: &RankedIndicator,
    model: CardinalModel,
) -> Result<bool> {
    if !x.indicator.precedes(&y.indicator) {
        return Ok(false);
    }
    for i in 0..rank_len(x, y) {
        if !model.leq(x.rank_at(i), y.rank_at(i))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Meet in the ideal order: join of indicators, pointwise minimum of ranks.
pub fn meet(
    x: &RankedIndicator,
    y: &RankedIndicator,
    model: CardinalModel,
) -> Result<RankedIndicator> {
    let indicator = x.indicator.join(&y.indicator);
    let ranks: Result<Vec<CardinalValue>> = (0..rank_len(x, y))
        .map(|i| model.min(x.rank_at(i), y.rank_at(i)))
        .collect();
    RankedIndicator::new(indicator, ranks?, model)
}

/// Join in the ideal order: meet of indicators, pointwise maximum of ranks.
pub fn join(
    x: &RankedIndicator,
    y: &RankedIndicator,
    model: CardinalModel,
) -> Result<RankedIndicator> {
    let indicator = x.indicator.meet(&y.indicator);
    let ranks: Result<Vec<CardinalValue>> = (0..rank_len(x, y))
        .map(|i| model.max(x.rank_at(i), y.rank_at(i)))
        .collect();
    RankedIndicator::new(indicator, ranks?, model)
}

/// The truncation chain `(σ^{(j)}, (m_0..m_j, ℵ_0, ℵ_0, ...))`, increasing
/// in the ideal order, whose join recovers the input exactly. Returned up to
/// the point where both components have stabilized.
pub fn truncations(x: &RankedIndicator, model: CardinalModel) -> Vec<RankedIndicator> {
    let last = x.indicator.len().max(1);
    (0..last)
        .map(|j| {
            let mut ranks: Vec<CardinalValue> =
                (0..=j).map(|i| x.rank_at(i)).collect();
            ranks.push(CardinalValue::Aleph(0));
            RankedIndicator::new(x.indicator.truncate(j), ranks, model)
                .expect("truncated ranks stay valid")
        })
        .collect()
}

impl RankedIndicator {
    /// Parses `((0,2,inf) | aleph0, aleph0)`.
    pub fn parse(s: &str, model: CardinalModel) -> Result<RankedIndicator> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("ranked indicator must be parenthesized: {s}")))?;
        let bar = inner
            .find('|')
            .ok_or_else(|| Error::Parse(format!("ranked indicator needs '|': {s}")))?;
        let indicator = inner[..bar].trim().parse::<Indicator>()?;
        let ranks: Result<Vec<CardinalValue>> = inner[bar + 1..]
            .split(',')
            .map(|p| p.parse::<CardinalValue>())
            .collect();
        RankedIndicator::new(indicator, ranks?, model)
    }
}

impl FromStr for RankedIndicator {
    type Err = Error;

    fn from_str(s: &str) -> Result<RankedIndicator> {
        RankedIndicator::parse(s, CardinalModel::Gch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use CardinalValue::*;

    const M: CardinalModel = CardinalModel::Gch;

    fn ranked(entries: &[u32], ranks: &[CardinalValue]) -> RankedIndicator {
        RankedIndicator::new(
            Indicator::new(entries.to_vec()).unwrap(),
            ranks.to_vec(),
            M,
        )
        .unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(RankedIndicator::new(
            Indicator::zero(),
            vec![Finite(3)],
            M
        )
        .is_err());
        assert!(RankedIndicator::new(
            Indicator::zero(),
            vec![Aleph(0), Aleph(1)],
            M
        )
        .is_err());
        assert!(RankedIndicator::new(Indicator::zero(), vec![], M).is_err());
        // Normalization rewrites powers under GCH, caps ranks past the
        // indicator length at aleph0, and trims repeated tails.
        let x = ranked(&[0], &[Aleph(1), Aleph(0), Aleph(0)]);
        assert_eq!(x.ranks(), &[Aleph(1), Aleph(0)]);
        let y = ranked(&[0], &[PowerOfAleph(0), Aleph(1)]);
        assert_eq!(y.ranks(), &[Aleph(1), Aleph(0)]);
        let z = ranked(&[0, 1], &[Aleph(2)]);
        assert_eq!(z.ranks(), &[Aleph(2), Aleph(2), Aleph(0)]);
    }

    #[test]
    fn leq_examples() {
        let x = ranked(&[1, 2], &[Aleph(0)]);
        let y = ranked(&[0, 1], &[Aleph(1)]);
        assert!(leq(&x, &y, M).unwrap());
        assert!(leq(&x, &x, M).unwrap());
        let a = ranked(&[0], &[Aleph(0)]);
        let b = ranked(&[1], &[Aleph(0)]);
        assert!(!leq(&a, &b, M).unwrap());
        assert!(leq(&b, &a, M).unwrap());
        // Pointwise orientation flips the indicator side.
        assert!(pointwise_leq(&a, &b, M).unwrap());
        assert!(!pointwise_leq(&b, &a, M).unwrap());
    }

    #[test]
    fn meet_join_examples() {
        let x = ranked(&[0], &[Aleph(1)]);
        let y = ranked(&[1], &[Aleph(0)]);
        assert_eq!(meet(&x, &y, M).unwrap(), ranked(&[1], &[Aleph(0)]));
        assert_eq!(join(&x, &y, M).unwrap(), ranked(&[0], &[Aleph(1)]));
        assert_eq!(join(&x, &x, M).unwrap(), x);
        // The minimum indicator with the top rank tier is the top of the
        // ideal order.
        let top = ranked(&[0, 1, 2], &[Aleph(3)]);
        for z in [&x, &y] {
            assert_eq!(&meet(z, &top, M).unwrap(), z);
            assert_eq!(join(z, &top, M).unwrap(), top);
        }
    }

    #[test]
    fn truncation_chain() {
        let x = ranked(&[0, 1, 2], &[Aleph(2), Aleph(1)]);
        let chain = truncations(&x, M);
        assert_eq!(chain.len(), 3);
        for w in chain.windows(2) {
            assert!(leq(&w[0], &w[1], M).unwrap());
        }
        for t in &chain {
            assert!(leq(t, &x, M).unwrap());
        }
        // Folding the join over the chain recovers x exactly.
        let mut acc = chain[0].clone();
        for t in &chain[1..] {
            acc = join(&acc, t, M).unwrap();
        }
        assert_eq!(acc, x);
    }

    #[test]
    fn text_roundtrip() {
        let x = ranked(&[0, 2], &[Aleph(1), Aleph(0)]);
        let s = x.to_string();
        assert_eq!(s, "((0,2,inf) | aleph1, aleph0)");
        assert_eq!(s.parse::<RankedIndicator>().unwrap(), x);
        assert!("((0,2,inf))".parse::<RankedIndicator>().is_err());
        // Finite ranks rejected at parse time too.
        assert!("((0,inf) | 5)".parse::<RankedIndicator>().is_err());
    }
}

//! Two-sided ideals of the endomorphism ring: closure, exhaustive
//! enumeration, indicator ideals, rank filtrations and classification.
//!
//! Ideals are held as explicit element sets (sorted ring indices), so every
//! lattice and Galois predicate is exact set algebra. Enumeration works at
//! the span level first: the principal ideal of f is the additive span of
//! the elementary-left-times-f-times-elementary-right products, closed under
//! further elementary multiplication, and every ideal is a sum of principal
//! ideals, so closing the distinct principal spans under pairwise union
//! reaches the whole ideal lattice before anything is materialized.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::cardinal::CardinalValue;
use crate::endo::{EndoRing, Endomorphism};
use crate::error::{Error, Result};
use crate::indicator::Indicator;
use crate::invariant;
use crate::span::ModSpan;

/// A two-sided ideal, as its full element set plus the small additive
/// generating set its span settled on.
#[derive(Clone)]
pub struct Ideal {
    ring: EndoRing,
    /// Sorted ring indices of all members.
    members: Vec<u64>,
    /// Digit vectors of a generating set (the canonical span rows).
    generator_digits: Vec<Vec<u64>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal(size {})", self.members.len())
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.members == other.members
    }
}

impl Eq for Ideal {}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ideal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.members.cmp(&other.members))
    }
}

fn ideal_span(ring: &EndoRing, gens: &[Endomorphism]) -> ModSpan {
    let mut span = ModSpan::new(ring.group().p(), ring.digit_moduli().to_vec());
    let elementary = ring.additive_generators();
    let mut queue: Vec<Endomorphism> = Vec::new();
    for g in gens {
        if span.insert(&ring.digits_of(g)) {
            queue.push(g.clone());
        }
    }
    while let Some(f) = queue.pop() {
        for r in &elementary {
            for product in [r.compose(&f), f.compose(r)] {
                let product = product.expect("same ring");
                if span.insert(&ring.digits_of(&product)) {
                    queue.push(product);
                }
            }
        }
    }
    span
}

fn materialize(ring: &EndoRing, span: &ModSpan) -> Ideal {
    let mut members: Vec<u64> = span
        .members()
        .into_iter()
        .map(|digits| {
            let mut index = 0u64;
            let mut stride = 1u64;
            for (d, m) in digits.iter().zip(ring.digit_moduli()) {
                index += d * stride;
                stride *= m;
            }
            index
        })
        .collect();
    members.sort_unstable();
    Ideal {
        ring: ring.clone(),
        members,
        generator_digits: span.rows().to_vec(),
    }
}

impl Ideal {
    /// Least two-sided ideal containing the generators: fixpoint under
    /// addition and elementary multiplication on both sides.
    pub fn from_generators(ring: &EndoRing, gens: &[Endomorphism]) -> Result<Ideal> {
        for g in gens {
            if g.group() != ring.group() {
                return Err(Error::GroupMismatch);
            }
        }
        let span = ideal_span(ring, gens);
        Ok(materialize(ring, &span))
    }

    pub fn zero(ring: &EndoRing) -> Ideal {
        Ideal::from_generators(ring, &[]).expect("no generators")
    }

    pub fn full(ring: &EndoRing) -> Ideal {
        Ideal::from_generators(ring, &[Endomorphism::identity(ring.group())])
            .expect("identity lives in the ring")
    }

    pub fn ring(&self) -> &EndoRing {
        &self.ring
    }

    pub fn size(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn member_indices(&self) -> &[u64] {
        &self.members
    }

    pub fn contains_index(&self, index: u64) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    pub fn contains(&self, f: &Endomorphism) -> bool {
        self.contains_index(self.ring.index_of(f))
    }

    pub fn iter(&self) -> impl Iterator<Item = Endomorphism> + '_ {
        self.members.iter().map(move |&i| self.ring.endo_at(i))
    }

    /// A small additive generating set (the canonical span rows).
    pub fn generators(&self) -> Vec<Endomorphism> {
        self.generator_digits
            .iter()
            .map(|d| self.ring.endo_from_digits(d))
            .collect()
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        let mut i = 0;
        for &x in &self.members {
            while i < other.members.len() && other.members[i] < x {
                i += 1;
            }
            if i == other.members.len() || other.members[i] != x {
                return false;
            }
        }
        true
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::GroupMismatch);
        }
        // A sum of ideals is already an ideal, so the additive span of the
        // union suffices.
        let mut span = ModSpan::new(self.ring.group().p(), self.ring.digit_moduli().to_vec());
        for digits in self.generator_digits.iter().chain(&other.generator_digits) {
            span.insert(digits);
        }
        Ok(materialize(&self.ring, &span))
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::GroupMismatch);
        }
        let mut common: Vec<u64> = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    common.push(self.members[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        let mut span = ModSpan::new(self.ring.group().p(), self.ring.digit_moduli().to_vec());
        for &index in &common {
            if span.size() as usize == common.len() {
                break;
            }
            let digits = self.ring.digits_at(index);
            if !span.contains(&digits) {
                span.insert(&digits);
            }
        }
        let out = materialize(&self.ring, &span);
        debug_assert_eq!(out.members, common);
        Ok(out)
    }

    /// Ideal-invariant check through the additive generating set of the
    /// ring; equivalent to quantifying over every ring element.
    pub fn verify_invariants(&self) -> bool {
        if !self.contains(&Endomorphism::zero(self.ring.group())) {
            return false;
        }
        let elementary = self.ring.additive_generators();
        for f in self.iter() {
            if !self.contains(&f.negate()) {
                return false;
            }
            for r in &elementary {
                if !self.contains(&r.compose(&f).expect("same ring"))
                    || !self.contains(&f.compose(r).expect("same ring"))
                {
                    return false;
                }
            }
        }
        // Additive closure: the span of the members is no bigger.
        let mut span = ModSpan::new(self.ring.group().p(), self.ring.digit_moduli().to_vec());
        for &i in &self.members {
            span.insert(&self.ring.digits_at(i));
        }
        span.size() == self.size()
    }

    /// The literal definition, quantified over every element of the ring on
    /// both sides. Quadratic; test oracle for `verify_invariants`.
    pub fn verify_invariants_brute(&self) -> bool {
        for f in self.iter() {
            for g in self.iter() {
                if !self.contains(&f.add(&g).expect("same ring")) {
                    return false;
                }
            }
            for e in self.ring.iter() {
                if !self.contains(&e.compose(&f).expect("same ring"))
                    || !self.contains(&f.compose(&e).expect("same ring"))
                {
                    return false;
                }
            }
        }
        self.contains(&Endomorphism::zero(self.ring.group()))
    }
}

/// Every ideal of the ring: distinct principal spans, closed under pairwise
/// span union to a fixpoint, then materialized and sorted deterministically.
pub fn enumerate_ideals(ring: &EndoRing) -> Vec<Ideal> {
    let mut spans: Vec<ModSpan> = Vec::new();
    let mut seen: BTreeMap<Vec<u64>, ()> = BTreeMap::new();
    let full_span = ideal_span(ring, &[Endomorphism::identity(ring.group())]);
    let group_order = ring.group().order();
    for index in 0..ring.size() {
        let f = ring.endo_at(index);
        // A surjective endomorphism of a finite group is invertible, so its
        // principal ideal is the whole ring.
        let span = if f.image_order() == group_order {
            full_span.clone()
        } else {
            ideal_span(ring, &[f])
        };
        if seen.insert(span.key(), ()).is_none() {
            spans.push(span);
        }
    }
    // Pairwise sums to fixpoint: every ideal is a finite sum of principal
    // ideals, so binary unions reach the whole lattice.
    let mut frontier: Vec<ModSpan> = spans.clone();
    while !frontier.is_empty() {
        let mut fresh: Vec<ModSpan> = Vec::new();
        for new_span in &frontier {
            for old_span in &spans {
                let merged = new_span.merged(old_span);
                if seen.insert(merged.key(), ()).is_none() {
                    fresh.push(merged);
                }
            }
        }
        spans.extend(fresh.iter().cloned());
        frontier = fresh;
    }
    let mut ideals: Vec<Ideal> = spans.iter().map(|s| materialize(ring, s)).collect();
    ideals.sort();
    debug_assert!(ideals.iter().all(Ideal::verify_invariants));
    ideals
}

/// The indicator ideal `t(σ) = {f : σ ⪯ ind(f)}`, by exhaustive scan.
pub fn indicator_ideal(ring: &EndoRing, sigma: &Indicator) -> Ideal {
    let mut members: Vec<u64> = Vec::new();
    let mut span = ModSpan::new(ring.group().p(), ring.digit_moduli().to_vec());
    for index in 0..ring.size() {
        let digits = ring.digits_at(index);
        if ring.digit_indicator_dominates(&digits, sigma) {
            members.push(index);
            if !span.contains(&digits) {
                span.insert(&digits);
            }
        }
    }
    let ideal = Ideal {
        ring: ring.clone(),
        members,
        generator_digits: span.rows().to_vec(),
    };
    debug_assert!(ideal.verify_invariants());
    ideal
}

/// The rank-filtered slice `{f ∈ t(σ^{(j)}) : rank(Gf) < bound}` together
/// with whether it came out additively closed. Any infinite bound imposes no
/// constraint on a finite group; finite bounds generally break additive
/// closure, which is exactly why they are excluded from the theory.
pub struct RankFiltered {
    pub ideal_of_truncation: Ideal,
    pub members: Vec<u64>,
    pub additively_closed: bool,
}

pub fn rank_filtered(
    ring: &EndoRing,
    sigma: &Indicator,
    j: usize,
    bound: CardinalValue,
) -> RankFiltered {
    let truncated = sigma.truncate(j);
    let ideal = indicator_ideal(ring, &truncated);
    let members: Vec<u64> = match bound {
        CardinalValue::Finite(b) => ideal
            .member_indices()
            .iter()
            .copied()
            .filter(|&i| (ring.endo_at(i).image_rank() as u64) < b)
            .collect(),
        _ => ideal.member_indices().to_vec(),
    };
    let mut span = ModSpan::new(ring.group().p(), ring.digit_moduli().to_vec());
    for &i in &members {
        let digits = ring.digits_at(i);
        if !span.contains(&digits) {
            span.insert(&digits);
        }
    }
    let additively_closed = span.size() as usize == members.len();
    RankFiltered {
        ideal_of_truncation: ideal,
        members,
        additively_closed,
    }
}

/// The finite-shadow label of an ideal: the canonical indicator of its image
/// subgroup, plus the maximal image rank within each truncation slice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct IdealLabel {
    pub indicator: Indicator,
    pub rank_profile: Vec<u32>,
}

impl fmt::Display for IdealLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ranks: Vec<String> = self.rank_profile.iter().map(|r| r.to_string()).collect();
        write!(f, "{} | r=({})", self.indicator, ranks.join(","))
    }
}

pub fn classify_ideal(ideal: &Ideal) -> IdealLabel {
    let ring = ideal.ring();
    let image = crate::galois::image(ideal);
    let indicator = invariant::min_height_indicator(&image);
    let mut rank_profile = Vec::with_capacity(indicator.len());
    for j in 0..indicator.len() {
        let truncated = indicator.truncate(j);
        let max_rank = ideal
            .member_indices()
            .iter()
            .filter(|&&i| ring.digit_indicator_dominates(&ring.digits_at(i), &truncated))
            .map(|&i| ring.endo_at(i).image_rank())
            .max()
            .unwrap_or(0);
        rank_profile.push(max_rank);
    }
    IdealLabel {
        indicator,
        rank_profile,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Group, GroupSpec, Limits};

    fn ring(p: u64, blocks: &[(u32, u32)]) -> EndoRing {
        let g = Group::new(GroupSpec::new(p, blocks), &Limits::default()).unwrap();
        EndoRing::new(&g, &Limits::default()).unwrap()
    }

    fn z2z8_ring() -> EndoRing {
        ring(2, &[(1, 1), (3, 1)])
    }

    fn ind(entries: &[u32]) -> Indicator {
        Indicator::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn closure_examples() {
        let r = z2z8_ring();
        assert_eq!(Ideal::full(&r).size(), 64);
        assert_eq!(Ideal::zero(&r).size(), 1);
        // The elementary map g1 ↦ (0,4), g2 ↦ 0 generates a 4-element ideal.
        let g = r.group().clone();
        let f = Endomorphism::new(
            &g,
            vec![g.element(&[0, 4]).unwrap(), g.zero()],
        )
        .unwrap();
        let i = Ideal::from_generators(&r, &[f]).unwrap();
        assert_eq!(i.size(), 4);
        assert!(i.verify_invariants());
        assert!(i.verify_invariants_brute());
    }

    #[test]
    fn invariant_checks_agree() {
        let r = z2z8_ring();
        for ideal in enumerate_ideals(&r) {
            assert_eq!(ideal.verify_invariants(), ideal.verify_invariants_brute());
        }
        // A non-ideal set must fail: take the full members minus one
        // non-zero element.
        let mut broken = Ideal::full(&r);
        broken.members.remove(5);
        assert!(!broken.verify_invariants());
        assert!(!broken.verify_invariants_brute());
    }

    #[test]
    fn matrix_ring_over_zp2_has_three_ideals() {
        for p in [2u64, 3] {
            let r = ring(p, &[(2, 2)]);
            let ideals = enumerate_ideals(&r);
            assert_eq!(ideals.len(), 3);
            // 0 < pE < E.
            assert_eq!(ideals[0].size(), 1);
            assert_eq!(ideals[1].size(), p.pow(4));
            assert_eq!(ideals[2].size(), r.size());
            let p_e: Vec<u64> = {
                let mut v: Vec<u64> = (0..r.size())
                    .map(|i| r.index_of(&r.endo_at(i).mul_p()))
                    .collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            assert_eq!(ideals[1].member_indices(), &p_e[..]);
        }
    }

    #[test]
    fn two_ideals_for_zp() {
        let r = ring(5, &[(1, 1)]);
        assert_eq!(enumerate_ideals(&r).len(), 2);
    }

    #[test]
    fn lattice_closure_under_sum_and_intersection() {
        let r = z2z8_ring();
        let ideals = enumerate_ideals(&r);
        for a in &ideals {
            for b in &ideals {
                let s = a.sum(b).unwrap();
                let i = a.intersection(b).unwrap();
                assert!(ideals.contains(&s));
                assert!(ideals.contains(&i));
                assert!(a.is_subset_of(&s));
                assert!(i.is_subset_of(a));
            }
        }
    }

    #[test]
    fn indicator_ideal_examples() {
        let r = z2z8_ring();
        assert_eq!(indicator_ideal(&r, &ind(&[0, 1, 2])).size(), 64);
        assert_eq!(indicator_ideal(&r, &Indicator::zero()).size(), 1);
        let t = indicator_ideal(&r, &ind(&[1, 2]));
        // Scan-derived: multiples of 2 on the g2 ↦ g2 digit only.
        assert_eq!(t.size(), 4);
        for f in t.iter() {
            assert!(ind(&[1, 2]).precedes(&f.indicator()));
        }
    }

    #[test]
    fn indicator_ideal_order_anticorrespondence() {
        let r = z2z8_ring();
        let sigmas = crate::indicator::enumerate_admissible(r.group());
        for s in &sigmas {
            for t in &sigmas {
                let is_ = indicator_ideal(&r, s);
                let it = indicator_ideal(&r, t);
                assert_eq!(s.precedes(t), it.is_subset_of(&is_));
            }
        }
    }

    #[test]
    fn rank_filter_examples() {
        // Infinite bound: no constraint on a finite group.
        let r = z2z8_ring();
        let sigma = ind(&[0, 1, 2]);
        let rf = rank_filtered(&r, &sigma, 1, CardinalValue::Aleph(0));
        assert_eq!(
            rf.members,
            rf.ideal_of_truncation.member_indices().to_vec()
        );
        assert!(rf.additively_closed);

        // Finite bound 2 on Z/p ⊕ Z/p: rank <= 1 maps are not closed under
        // addition (two rank-1 idempotents sum to the identity).
        let r2 = ring(3, &[(1, 2)]);
        let min = Indicator::minimum_for(r2.group());
        let rf2 = rank_filtered(&r2, &min, 0, CardinalValue::Finite(2));
        assert!(!rf2.additively_closed);

        // Bound 1 keeps only the zero map.
        let rf3 = rank_filtered(&r2, &min, 0, CardinalValue::Finite(1));
        assert_eq!(rf3.members, vec![0]);
        assert!(rf3.additively_closed);
    }

    #[test]
    fn classification_examples() {
        let r = z2z8_ring();
        let full = Ideal::full(&r);
        let label = classify_ideal(&full);
        assert_eq!(label.indicator, ind(&[0, 1, 2]));
        assert_eq!(label.rank_profile, vec![2, 2, 2]);

        let zero = Ideal::zero(&r);
        let label0 = classify_ideal(&zero);
        assert_eq!(label0.indicator, Indicator::zero());
        assert!(label0.rank_profile.is_empty());

        let t = indicator_ideal(&r, &ind(&[1, 2]));
        assert_eq!(classify_ideal(&t).indicator, ind(&[1, 2]));
    }

    #[test]
    fn labels_respect_containment() {
        // Containment of ideals implies label order: the bigger ideal has a
        // preceding indicator and a pointwise larger rank profile on the
        // comparable prefix.
        for (p, blocks) in [(2u64, vec![(1u32, 1u32), (3, 1)]), (2, vec![(1, 2), (2, 1)])] {
            let r = ring(p, &blocks);
            let ideals = enumerate_ideals(&r);
            let labels: Vec<IdealLabel> = ideals.iter().map(classify_ideal).collect();
            for (i, a) in ideals.iter().enumerate() {
                for (j, b) in ideals.iter().enumerate() {
                    if !a.is_subset_of(b) {
                        continue;
                    }
                    assert!(labels[j].indicator.precedes(&labels[i].indicator));
                    for (ra, rb) in labels[i]
                        .rank_profile
                        .iter()
                        .zip(&labels[j].rank_profile)
                    {
                        assert!(ra <= rb);
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let r = z2z8_ring();
        let a: Vec<Vec<u64>> = enumerate_ideals(&r)
            .iter()
            .map(|i| i.member_indices().to_vec())
            .collect();
        let b: Vec<Vec<u64>> = enumerate_ideals(&r)
            .iter()
            .map(|i| i.member_indices().to_vec())
            .collect();
        assert_eq!(a, b);
    }
}

//! Indicator subgroups, fully invariant subgroups, and the correspondence
//! between them.
//!
//! `indicator_subgroup` cuts out `G(σ) = {a : σ ⪯ ind(a)}` by exhaustive
//! membership test; `min_height_indicator` recovers the position-wise
//! minimal heights of a subgroup. On groups of order at most
//! [`EXHAUSTIVE_SUBGROUP_LIMIT`] the fully invariant subgroups are found by
//! enumerating the entire subgroup lattice and filtering; above that they
//! are built as indicator subgroups and re-verified, at the price that
//! completeness then rests on the correspondence itself rather than on
//! exhaustion.

use std::collections::{BTreeMap, BTreeSet};

use crate::endo::EndoRing;
use crate::error::Result;
use crate::group::{Element, Group, Height, Limits, Subgroup};
use crate::indicator::{self, Indicator};
use crate::span::ModSpan;

/// Order bound under which the whole subgroup lattice is enumerated.
pub const EXHAUSTIVE_SUBGROUP_LIMIT: u64 = 256;

/// `G(σ)`: all elements whose indicator dominates σ. σ need not be
/// admissible.
pub fn indicator_subgroup(group: &Group, sigma: &Indicator) -> Subgroup {
    let members: BTreeSet<Element> = group
        .elements()
        .filter(|a| sigma.precedes(&a.indicator()))
        .collect();
    Subgroup::from_members(group, members)
}

/// The indicator whose i-th entry is the minimum of `height(p^i a)` over the
/// subgroup, stopping at the first position where that minimum is infinite.
/// The zero subgroup yields `(inf)`.
pub fn min_height_indicator(subgroup: &Subgroup) -> Indicator {
    let mut entries = Vec::new();
    let mut current: Vec<Element> = subgroup.iter().cloned().collect();
    loop {
        let min = current
            .iter()
            .map(|a| a.height())
            .min()
            .unwrap_or(Height::Infinite);
        match min {
            Height::Finite(h) => entries.push(h),
            Height::Infinite => break,
        }
        current = current.iter().map(|a| a.mul_p()).collect();
    }
    Indicator::new(entries).expect("minimal heights strictly increase")
}

/// Hf ≤ H for every endomorphism f. Because every endomorphism is an
/// integer combination of the per-generator-pair elementary maps and H is a
/// subgroup, it is enough to check those elementary images.
pub fn is_fully_invariant(subgroup: &Subgroup) -> bool {
    let group = subgroup.group();
    let k = group.coord_count();
    let p = group.p();
    for a in subgroup.iter() {
        for src in 0..k {
            if a.coords()[src] == 0 {
                continue;
            }
            for dst in 0..k {
                // Elementary map: generator src ↦ p^{max(0, e_dst - e_src)}
                // times generator dst, everything else to zero.
                let delta = group
                    .coord_exponent(dst)
                    .saturating_sub(group.coord_exponent(src));
                let mut coords = vec![0u64; k];
                coords[dst] = crate::group::mul_mod(
                    a.coords()[src] % group.coord_modulus(dst),
                    p.pow(delta) % group.coord_modulus(dst),
                    group.coord_modulus(dst),
                );
                let image = group.element(&coords).expect("coords sized");
                if !subgroup.contains(&image) {
                    return false;
                }
            }
        }
    }
    true
}

/// The smallest fully invariant subgroup containing an element: its span,
/// closed under the elementary maps (additivity extends the closure to every
/// endomorphism).
pub fn invariant_hull(a: &Element) -> Subgroup {
    let group = a.group().clone();
    let k = group.coord_count();
    let p = group.p();
    let moduli: Vec<u64> = (0..k).map(|j| group.coord_modulus(j)).collect();
    let mut span = ModSpan::new(p, moduli);
    let mut queue: Vec<Vec<u64>> = Vec::new();
    if span.insert(a.coords()) {
        queue.push(a.coords().to_vec());
    }
    while let Some(x) = queue.pop() {
        for (src, &coeff) in x.iter().enumerate() {
            if coeff == 0 {
                continue;
            }
            for dst in 0..k {
                let delta = group
                    .coord_exponent(dst)
                    .saturating_sub(group.coord_exponent(src));
                let m = group.coord_modulus(dst);
                let mut y = vec![0u64; k];
                y[dst] = crate::group::mul_mod(coeff % m, p.pow(delta) % m, m);
                if !span.contains(&y) {
                    span.insert(&y);
                    queue.push(y);
                }
            }
        }
    }
    let members: BTreeSet<Element> = span
        .members()
        .into_iter()
        .map(|coords| group.element(&coords).expect("coords sized"))
        .collect();
    let hull = Subgroup::from_members(&group, members);
    debug_assert!(is_fully_invariant(&hull));
    hull
}

/// The largest fully invariant subgroup contained in the given subgroup:
/// exactly the elements whose invariant hull stays inside it.
pub fn invariant_core(subgroup: &Subgroup) -> Subgroup {
    if is_fully_invariant(subgroup) {
        return subgroup.clone();
    }
    let members: BTreeSet<Element> = subgroup
        .iter()
        .filter(|a| invariant_hull(a).is_subgroup_of(subgroup))
        .cloned()
        .collect();
    let core = Subgroup::from_members(subgroup.group(), members);
    debug_assert!(is_fully_invariant(&core));
    core
}

/// The literal definition, quantified over every endomorphism of the ring.
/// Exponential in spirit and kept as the oracle the fast check is tested
/// against.
pub fn is_fully_invariant_brute(subgroup: &Subgroup, ring: &EndoRing) -> bool {
    for f in ring.iter() {
        for a in subgroup.iter() {
            if !subgroup.contains(&f.apply(a).expect("same group")) {
                return false;
            }
        }
    }
    true
}

/// Every subgroup of the group, by breadth-first closure over canonical
/// spans. Exponential in general; intended for orders up to a few hundred.
pub fn enumerate_all_subgroups(group: &Group) -> Vec<Subgroup> {
    let moduli: Vec<u64> = (0..group.coord_count())
        .map(|k| group.coord_modulus(k))
        .collect();
    let elements: Vec<Vec<u64>> = group.elements().map(|a| a.coords().to_vec()).collect();
    let zero_span = ModSpan::new(group.p(), moduli.clone());
    let mut seen: BTreeMap<Vec<u64>, ModSpan> = BTreeMap::new();
    seen.insert(zero_span.key(), zero_span.clone());
    let mut work = vec![zero_span];
    while let Some(span) = work.pop() {
        for x in &elements {
            if span.contains(x) {
                continue;
            }
            let mut bigger = span.clone();
            bigger.insert(x);
            if let std::collections::btree_map::Entry::Vacant(entry) = seen.entry(bigger.key()) {
                entry.insert(bigger.clone());
                work.push(bigger);
            }
        }
    }
    let mut subgroups: Vec<Subgroup> = seen
        .into_values()
        .map(|span| {
            let members: BTreeSet<Element> = span
                .members()
                .into_iter()
                .map(|coords| group.element(&coords).expect("coords sized"))
                .collect();
            Subgroup::from_members(group, members)
        })
        .collect();
    subgroups.sort();
    subgroups
}

/// The fully invariant subgroups, with a flag recording whether they were
/// obtained by exhausting the whole subgroup lattice.
#[derive(Debug, Clone)]
pub struct FullyInvariantEnumeration {
    pub subgroups: Vec<Subgroup>,
    pub exhaustive: bool,
}

pub fn enumerate_fully_invariant(
    group: &Group,
    _limits: &Limits,
) -> Result<FullyInvariantEnumeration> {
    if group.order() <= EXHAUSTIVE_SUBGROUP_LIMIT {
        let subgroups = enumerate_all_subgroups(group)
            .into_iter()
            .filter(is_fully_invariant_ref)
            .collect();
        return Ok(FullyInvariantEnumeration {
            subgroups,
            exhaustive: true,
        });
    }
    let mut set: BTreeSet<Subgroup> = BTreeSet::new();
    for sigma in indicator::enumerate_admissible(group) {
        let h = indicator_subgroup(group, &sigma);
        debug_assert!(is_fully_invariant(&h));
        set.insert(h);
    }
    Ok(FullyInvariantEnumeration {
        subgroups: set.into_iter().collect(),
        exhaustive: false,
    })
}

fn is_fully_invariant_ref(subgroup: &Subgroup) -> bool {
    is_fully_invariant(subgroup)
}

//! Finite Σ-cyclic abelian p-groups in their standard presentation.
//!
//! A group is described by a prime `p` and a list of blocks `(n_i, m_i)` with
//! strictly increasing exponents; it is the direct sum of `m_i` copies of
//! `Z/p^{n_i}` over all blocks. Elements are coordinate vectors, one residue
//! per cyclic summand copy, and every operation here is exact integer
//! arithmetic. Heights, exponents, element indicators, Ulm invariants and the
//! subgroups `p^n G[p^i]` are all computed at desk scale, with brute-force
//! enumerations kept alongside the closed forms they certify.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indicator::Indicator;

/// Default cap on the group order for exhaustive element enumeration.
pub const DEFAULT_MAX_GROUP_ORDER: u64 = 4096;
/// Default cap on the endomorphism count for exhaustive ring enumeration.
pub const DEFAULT_MAX_ENDO_COUNT: u64 = 65536;

/// Enumeration caps shared by all exhaustive operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_group_order: u64,
    pub max_endo_count: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: DEFAULT_MAX_GROUP_ORDER,
            max_endo_count: DEFAULT_MAX_ENDO_COUNT,
        }
    }
}

/// One homocyclic block of the standard presentation: `mult` copies of
/// `Z/p^exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Block {
    #[serde(rename = "exp")]
    pub exponent: u32,
    #[serde(rename = "mult")]
    pub multiplicity: u32,
}

/// Raw description of a finite Σ-cyclic p-group, as read from JSON.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    pub p: u64,
    pub blocks: Vec<Block>,
}

impl GroupSpec {
    pub fn new(p: u64, blocks: &[(u32, u32)]) -> GroupSpec {
        GroupSpec {
            p,
            blocks: blocks
                .iter()
                .map(|&(exponent, multiplicity)| Block {
                    exponent,
                    multiplicity,
                })
                .collect(),
        }
    }

    /// Short human-readable name, e.g. `Z/2 + Z/8`.
    pub fn name(&self) -> String {
        let mut parts = Vec::new();
        for b in &self.blocks {
            let q = pow_u128(self.p, b.exponent);
            for _ in 0..b.multiplicity {
                parts.push(format!("Z/{q}"));
            }
        }
        parts.join(" + ")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_u128(p: u64, e: u32) -> u128 {
    (p as u128).pow(e)
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// p-adic valuation of a nonzero residue.
pub(crate) fn valuation(p: u64, mut x: u64) -> u32 {
    debug_assert!(x != 0);
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

struct GroupInner {
    spec: GroupSpec,
    /// Exponent of the cyclic summand each coordinate lives in.
    coord_exp: Vec<u32>,
    /// `p^coord_exp`, the modulus of each coordinate.
    coord_mod: Vec<u64>,
    order: u64,
    exponent: u32,
}

/// A validated finite Σ-cyclic p-group. Cheap to clone; all values are
/// immutable after construction and safe to share between threads.
#[derive(Clone)]
pub struct Group {
    inner: Arc<GroupInner>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({})", self.name())
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }
}

impl Eq for Group {}

impl PartialOrd for Group {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Group {
    fn cmp(&self, other: &Self) -> Ordering {
        self.inner.spec.cmp(&other.inner.spec)
    }
}

impl Group {
    /// Validates a raw spec against the group-order cap.
    pub fn new(spec: GroupSpec, limits: &Limits) -> Result<Group> {
        if spec.blocks.is_empty() {
            return Err(Error::EmptySpec);
        }
        if !is_prime(spec.p) {
            return Err(Error::NotPrime(spec.p));
        }
        for b in &spec.blocks {
            if b.exponent == 0 || b.multiplicity == 0 {
                return Err(Error::ZeroBlockParameter);
            }
        }
        for w in spec.blocks.windows(2) {
            if w[0].exponent >= w[1].exponent {
                return Err(Error::ExponentsNotIncreasing);
            }
        }
        let mut order: u128 = 1;
        let mut coord_exp = Vec::new();
        let mut coord_mod = Vec::new();
        for b in &spec.blocks {
            let q = pow_u128(spec.p, b.exponent);
            for _ in 0..b.multiplicity {
                order = order.saturating_mul(q);
                if order > limits.max_group_order as u128 {
                    return Err(Error::GroupOrderCap {
                        order,
                        cap: limits.max_group_order,
                    });
                }
                coord_exp.push(b.exponent);
                coord_mod.push(q as u64);
            }
        }
        let exponent = spec.blocks.last().map(|b| b.exponent).unwrap_or(0);
        Ok(Group {
            inner: Arc::new(GroupInner {
                spec,
                coord_exp,
                coord_mod,
                order: order as u64,
                exponent,
            }),
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.inner.spec
    }

    pub fn name(&self) -> String {
        self.inner.spec.name()
    }

    pub fn p(&self) -> u64 {
        self.inner.spec.p
    }

    pub fn order(&self) -> u64 {
        self.inner.order
    }

    /// exp(G): the largest block exponent.
    pub fn exponent(&self) -> u32 {
        self.inner.exponent
    }

    /// Number of cyclic summand copies, i.e. the rank of the group.
    pub fn coord_count(&self) -> usize {
        self.inner.coord_exp.len()
    }

    pub fn rank(&self) -> u32 {
        self.coord_count() as u32
    }

    pub fn coord_exponent(&self, k: usize) -> u32 {
        self.inner.coord_exp[k]
    }

    pub fn coord_modulus(&self, k: usize) -> u64 {
        self.inner.coord_mod[k]
    }

    pub fn zero(&self) -> Element {
        Element {
            group: self.clone(),
            coords: vec![0; self.coord_count()],
        }
    }

    /// The k-th presentation generator: 1 in coordinate k, 0 elsewhere.
    pub fn generator(&self, k: usize) -> Element {
        let mut coords = vec![0; self.coord_count()];
        coords[k] = 1;
        Element {
            group: self.clone(),
            coords,
        }
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.coord_count()).map(|k| self.generator(k)).collect()
    }

    /// Builds an element from raw coordinates, reducing each modulo its
    /// coordinate modulus.
    pub fn element(&self, coords: &[u64]) -> Result<Element> {
        if coords.len() != self.coord_count() {
            return Err(Error::Parse(format!(
                "expected {} coordinates, got {}",
                self.coord_count(),
                coords.len()
            )));
        }
        let reduced = coords
            .iter()
            .zip(&self.inner.coord_mod)
            .map(|(&c, &m)| c % m)
            .collect();
        Ok(Element {
            group: self.clone(),
            coords: reduced,
        })
    }

    /// All elements in the deterministic mixed-radix order (coordinate 0
    /// fastest).
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.inner.order).map(move |i| self.element_at(i))
    }

    pub fn element_at(&self, mut index: u64) -> Element {
        let coords = self
            .inner
            .coord_mod
            .iter()
            .map(|&m| {
                let c = index % m;
                index /= m;
                c
            })
            .collect();
        Element {
            group: self.clone(),
            coords,
        }
    }

    pub fn index_of(&self, a: &Element) -> u64 {
        debug_assert!(a.group == *self);
        let mut index = 0u64;
        let mut stride = 1u64;
        for (c, m) in a.coords.iter().zip(&self.inner.coord_mod) {
            index += c * stride;
            stride *= m;
        }
        index
    }

    /// Closed-form Ulm invariants: `u[κ]` for `κ < exp(G)`; the invariant at
    /// position `n_i - 1` is the multiplicity `m_i` and every other position
    /// is zero.
    pub fn ulm_invariants(&self) -> Vec<u64> {
        let mut u = vec![0u64; self.exponent() as usize];
        for b in &self.inner.spec.blocks {
            u[(b.exponent - 1) as usize] = b.multiplicity as u64;
        }
        u
    }

    /// Ulm invariants by exhaustive socle-filtration dimension count:
    /// `u[κ] = dim p^κ G[p] - dim p^{κ+1} G[p]` over the p-element field.
    pub fn ulm_invariants_brute(&self) -> Vec<u64> {
        let e = self.exponent() as usize;
        let mut dims = Vec::with_capacity(e + 1);
        for kappa in 0..=e {
            let count = self.pn_socle(kappa as u32, 1).order();
            dims.push(log_p(self.p(), count));
        }
        (0..e).map(|k| (dims[k] - dims[k + 1]) as u64).collect()
    }

    /// The subgroup `p^n G[p^i]`, i.e. the `p^i`-torsion of `p^n G`, by
    /// direct enumeration: every `p^n x` over `x ∈ G`, filtered by
    /// `p^i · p^n x = 0`.
    pub fn pn_socle(&self, n: u32, i: u32) -> Subgroup {
        let pn = self.scalar_for_power(n);
        let mut members = BTreeSet::new();
        for x in self.elements() {
            let a = x.scalar_mul_unsigned(pn);
            if a.scalar_mul_unsigned(self.scalar_for_power(i)).is_zero() {
                members.insert(a);
            }
        }
        Subgroup {
            group: self.clone(),
            members,
        }
    }

    /// The same subgroup from the per-summand closed form
    /// `p^{max(n, e-i)} Z/p^e` across coordinates.
    pub fn pn_socle_closed_form(&self, n: u32, i: u32) -> Subgroup {
        let k = self.coord_count();
        let mut gens = Vec::new();
        for j in 0..k {
            let e = self.coord_exponent(j);
            let shift = n.max(e.saturating_sub(i)).min(e);
            let mut coords = vec![0u64; k];
            coords[j] = pow_u128(self.p(), shift) as u64 % self.coord_modulus(j);
            if coords[j] != 0 {
                gens.push(Element {
                    group: self.clone(),
                    coords,
                });
            }
        }
        Subgroup::generated(self, &gens)
    }

    fn scalar_for_power(&self, n: u32) -> u64 {
        // p^n capped so it annihilates every coordinate once n >= exp(G).
        if n >= self.exponent() {
            0
        } else {
            pow_u128(self.p(), n) as u64
        }
    }
}

pub(crate) fn log_p(p: u64, mut n: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        debug_assert!(n.is_multiple_of(p));
        n /= p;
        k += 1;
    }
    k
}

/// Height of an element: the number of times it divides by p, with a
/// dedicated infinity for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Height {
    Finite(u32),
    Infinite,
}

impl Height {
    pub fn finite(self) -> Option<u32> {
        match self {
            Height::Finite(v) => Some(v),
            Height::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Height::Infinite
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(v) => write!(f, "{v}"),
            Height::Infinite => f.write_str("inf"),
        }
    }
}

/// An element of a [`Group`], one residue per cyclic summand copy. Elements
/// remember which group they belong to; mixing groups is an error, never a
/// coercion.
#[derive(Clone)]
pub struct Element {
    group: Group,
    coords: Vec<u64>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.coords == other.coords
    }
}

impl Eq for Element {}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.group
            .cmp(&other.group)
            .then_with(|| self.coords.cmp(&other.coords))
    }
}

impl Element {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Element) -> Element {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(&self.group.inner.coord_mod)
            .map(|((&a, &b), &m)| (a + b) % m)
            .collect();
        Element {
            group: self.group.clone(),
            coords,
        }
    }

    pub fn neg(&self) -> Element {
        let coords = self
            .coords
            .iter()
            .zip(&self.group.inner.coord_mod)
            .map(|(&a, &m)| (m - a) % m)
            .collect();
        Element {
            group: self.group.clone(),
            coords,
        }
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.try_add(&other.neg())
    }

    /// `k · a` for a possibly negative integer scalar.
    pub fn scalar_mul(&self, k: i64) -> Element {
        let coords = self
            .coords
            .iter()
            .zip(&self.group.inner.coord_mod)
            .map(|(&a, &m)| {
                let k_mod = k.rem_euclid(m as i64) as u64;
                mul_mod(k_mod, a, m)
            })
            .collect();
        Element {
            group: self.group.clone(),
            coords,
        }
    }

    pub(crate) fn scalar_mul_unsigned(&self, k: u64) -> Element {
        let coords = self
            .coords
            .iter()
            .zip(&self.group.inner.coord_mod)
            .map(|(&a, &m)| mul_mod(k % m, a, m))
            .collect();
        Element {
            group: self.group.clone(),
            coords,
        }
    }

    pub fn mul_p(&self) -> Element {
        self.scalar_mul_unsigned(self.group.p())
    }

    /// exp(a): the least k with `p^k a = 0`; zero for the zero element.
    pub fn exponent(&self) -> u32 {
        let p = self.group.p();
        self.coords
            .iter()
            .zip(&self.group.inner.coord_exp)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, &e)| e - valuation(p, c))
            .max()
            .unwrap_or(0)
    }

    /// height(a): the largest k with `a ∈ p^k G`; infinite exactly for zero.
    pub fn height(&self) -> Height {
        let p = self.group.p();
        self.coords
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| valuation(p, c))
            .min()
            .map_or(Height::Infinite, Height::Finite)
    }

    /// The indicator of the element: heights of `a, pa, p^2 a, ...` up to its
    /// exponent, implicitly followed by infinity. The zero element yields the
    /// zero indicator `(inf)`.
    pub fn indicator(&self) -> Indicator {
        let mut entries = Vec::new();
        let mut x = self.clone();
        while let Height::Finite(h) = x.height() {
            entries.push(h);
            x = x.mul_p();
        }
        Indicator::new(entries).expect("element heights strictly increase")
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupSpec> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("group spec: {e}")))
    }
}

/// Parses an element in the textual form `(c1,...,ck)` against a group.
pub fn parse_element(group: &Group, s: &str) -> Result<Element> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("element must be parenthesized: {s}")))?;
    let coords: Result<Vec<u64>> = inner
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("coordinate {part:?}: {e}")))
        })
        .collect();
    group.element(&coords?)
}

/// A subgroup held as its full element set, with generators derived on
/// demand. Desk scale only: the whole point is that every lattice predicate
/// becomes exact set algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    group: Group,
    members: BTreeSet<Element>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {})", self.order())
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.group.cmp(&other.group).then_with(|| {
            self.members
                .len()
                .cmp(&other.members.len())
                .then_with(|| self.members.cmp(&other.members))
        })
    }
}

impl Subgroup {
    pub fn zero(group: &Group) -> Subgroup {
        let mut members = BTreeSet::new();
        members.insert(group.zero());
        Subgroup {
            group: group.clone(),
            members,
        }
    }

    pub fn full(group: &Group) -> Subgroup {
        Subgroup {
            group: group.clone(),
            members: group.elements().collect(),
        }
    }

    pub(crate) fn from_members(group: &Group, members: BTreeSet<Element>) -> Subgroup {
        debug_assert!(members.contains(&group.zero()));
        Subgroup {
            group: group.clone(),
            members,
        }
    }

    /// Smallest subgroup containing the generators; fixpoint closure under
    /// addition of generators starting from zero.
    pub fn generated(group: &Group, gens: &[Element]) -> Subgroup {
        debug_assert!(gens.iter().all(|g| g.group() == group));
        let mut members = BTreeSet::new();
        members.insert(group.zero());
        let mut work = vec![group.zero()];
        while let Some(x) = work.pop() {
            for g in gens {
                let y = x.add_unchecked(g);
                if members.insert(y.clone()) {
                    work.push(y);
                }
            }
        }
        Subgroup {
            group: group.clone(),
            members,
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn contains(&self, a: &Element) -> bool {
        self.members.contains(a)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Element> {
        self.members.iter()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group == other.group && self.members.is_subset(&other.members)
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let mut gens = self.generators();
        gens.extend(other.generators());
        Ok(Subgroup::generated(&self.group, &gens))
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(Subgroup {
            group: self.group.clone(),
            members: self.members.intersection(&other.members).cloned().collect(),
        })
    }

    /// The image `{p·h : h ∈ H}`.
    pub fn mul_p(&self) -> Subgroup {
        Subgroup {
            group: self.group.clone(),
            members: self.members.iter().map(|a| a.mul_p()).collect(),
        }
    }

    /// Minimal generator count: the dimension of `H/pH`.
    pub fn rank(&self) -> u32 {
        log_p(self.group.p(), self.order() / self.mul_p().order())
    }

    pub fn max_exponent(&self) -> u32 {
        self.members.iter().map(|a| a.exponent()).max().unwrap_or(0)
    }

    pub fn min_height(&self) -> Height {
        self.members
            .iter()
            .map(|a| a.height())
            .min()
            .unwrap_or(Height::Infinite)
    }

    /// A minimal generating list, derived greedily by maximal order with
    /// deterministic tie-breaking.
    pub fn generators(&self) -> Vec<Element> {
        let mut gens: Vec<Element> = Vec::new();
        let mut span = Subgroup::zero(&self.group);
        while span.order() < self.order() {
            let next = self
                .members
                .iter()
                .filter(|a| !span.contains(a))
                .max_by(|a, b| {
                    a.exponent()
                        .cmp(&b.exponent())
                        .then_with(|| b.cmp(a))
                })
                .expect("span is proper")
                .clone();
            gens.push(next);
            span = Subgroup::generated(&self.group, &gens);
        }
        debug_assert_eq!(gens.len() as u32, self.rank());
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2z8() -> Group {
        Group::new(GroupSpec::new(2, &[(1, 1), (3, 1)]), &Limits::default()).unwrap()
    }

    fn el(g: &Group, coords: &[u64]) -> Element {
        g.element(coords).unwrap()
    }

    #[test]
    fn validate_spec_accepts_and_sizes() {
        let g = z2z8();
        assert_eq!(g.order(), 16);
        assert_eq!(g.exponent(), 3);
        assert_eq!(g.rank(), 2);
    }

    #[test]
    fn validate_spec_rejects_non_prime() {
        let err = Group::new(GroupSpec::new(4, &[(1, 1)]), &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::NotPrime(4)));
    }

    #[test]
    fn validate_spec_rejects_non_increasing_exponents() {
        let err =
            Group::new(GroupSpec::new(2, &[(3, 1), (1, 1)]), &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::ExponentsNotIncreasing));
    }

    #[test]
    fn validate_spec_rejects_zero_multiplicity() {
        let err = Group::new(GroupSpec::new(2, &[(1, 0)]), &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::ZeroBlockParameter));
    }

    #[test]
    fn validate_spec_rejects_the_trivial_group() {
        let err = Group::new(GroupSpec::new(2, &[]), &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::EmptySpec));
    }

    #[test]
    fn validate_spec_enforces_cap() {
        let limits = Limits {
            max_group_order: 8,
            ..Limits::default()
        };
        let err = Group::new(GroupSpec::new(2, &[(4, 1)]), &limits).unwrap_err();
        assert!(matches!(err, Error::GroupOrderCap { .. }));
    }

    #[test]
    fn addition_and_scalars() {
        let g = z2z8();
        assert_eq!(
            el(&g, &[1, 2]).try_add(&el(&g, &[1, 6])).unwrap(),
            el(&g, &[0, 0])
        );
        assert_eq!(el(&g, &[1, 1]).scalar_mul(2), el(&g, &[0, 2]));
        for a in g.elements() {
            assert!(a.scalar_mul(0).is_zero());
        }
    }

    #[test]
    fn cross_group_addition_is_an_error() {
        let g = z2z8();
        let h = Group::new(GroupSpec::new(2, &[(1, 1), (3, 1)]), &Limits::default()).unwrap();
        // Equal specs are the same group.
        assert!(el(&g, &[1, 0]).try_add(&el(&h, &[1, 0])).is_ok());
        let other = Group::new(GroupSpec::new(2, &[(2, 1)]), &Limits::default()).unwrap();
        assert!(matches!(
            el(&g, &[1, 0]).try_add(&other.element(&[1]).unwrap()),
            Err(Error::GroupMismatch)
        ));
    }

    /// Oracle: exponent by repeated multiplication by p.
    fn exponent_oracle(a: &Element) -> u32 {
        let mut x = a.clone();
        let mut k = 0;
        while !x.is_zero() {
            x = x.mul_p();
            k += 1;
        }
        k
    }

    #[test]
    fn exponent_matches_repeated_doubling_oracle() {
        let g = z2z8();
        assert_eq!(el(&g, &[0, 0]).exponent(), 0);
        assert_eq!(el(&g, &[1, 2]).exponent(), 2);
        assert_eq!(el(&g, &[1, 1]).exponent(), 3);
        for a in g.elements() {
            assert_eq!(a.exponent(), exponent_oracle(&a));
        }
    }

    /// Oracle: height by membership scan of the sets p^k G.
    fn height_oracle(g: &Group, a: &Element) -> Height {
        if a.is_zero() {
            return Height::Infinite;
        }
        let mut best = 0;
        for k in 0..=g.exponent() {
            let pk_g: BTreeSet<Element> = g
                .elements()
                .map(|x| x.scalar_mul_unsigned(g.p().pow(k)))
                .collect();
            if pk_g.contains(a) {
                best = k;
            }
        }
        Height::Finite(best)
    }

    #[test]
    fn height_matches_membership_oracle() {
        let g = z2z8();
        assert_eq!(el(&g, &[0, 4]).height(), Height::Finite(2));
        assert_eq!(el(&g, &[1, 4]).height(), Height::Finite(0));
        assert_eq!(el(&g, &[0, 0]).height(), Height::Infinite);
        for a in g.elements() {
            assert_eq!(a.height(), height_oracle(&g, &a));
        }
    }

    #[test]
    fn element_indicators() {
        let g = z2z8();
        assert_eq!(el(&g, &[0, 2]).indicator().to_string(), "(1,2,inf)");
        assert_eq!(el(&g, &[1, 1]).indicator().to_string(), "(0,1,2,inf)");
        assert_eq!(el(&g, &[0, 0]).indicator().to_string(), "(inf)");
    }

    #[test]
    fn height_and_indicator_invariants() {
        let g = z2z8();
        for a in g.elements() {
            if a.is_zero() {
                continue;
            }
            let h = a.height().finite().unwrap();
            assert!(h < g.exponent());
            match a.mul_p().height() {
                Height::Finite(h2) => assert!(h2 > h),
                Height::Infinite => {}
            }
            let ind = a.indicator();
            for w in ind.entries().windows(2) {
                assert!(w[0] < w[1]);
            }
        }
    }

    #[test]
    fn ulm_invariants_closed_and_brute_agree() {
        let limits = Limits::default();
        let g = z2z8();
        assert_eq!(g.ulm_invariants(), vec![1, 0, 1]);
        assert_eq!(g.ulm_invariants_brute(), vec![1, 0, 1]);

        let g2 = Group::new(GroupSpec::new(3, &[(2, 2)]), &limits).unwrap();
        assert_eq!(g2.ulm_invariants(), vec![0, 2]);
        assert_eq!(g2.ulm_invariants_brute(), vec![0, 2]);

        let g3 = Group::new(GroupSpec::new(5, &[(1, 1)]), &limits).unwrap();
        assert_eq!(g3.ulm_invariants(), vec![1]);
        assert_eq!(g3.ulm_invariants_brute(), vec![1]);
    }

    #[test]
    fn pn_socle_examples_and_cross_check() {
        let g = z2z8();
        let s = g.pn_socle(2, 1);
        let expected: BTreeSet<Element> = [el(&g, &[0, 0]), el(&g, &[0, 4])].into_iter().collect();
        assert_eq!(s.members, expected);
        assert_eq!(g.pn_socle(0, 3), Subgroup::full(&g));
        assert_eq!(g.pn_socle(3, 1), Subgroup::zero(&g));
        for n in 0..=4 {
            for i in 0..=4 {
                assert_eq!(g.pn_socle(n, i), g.pn_socle_closed_form(n, i));
            }
        }
    }

    #[test]
    fn pn_socle_monotonicity() {
        let g = z2z8();
        for n in 0..=3 {
            for i in 0..=3 {
                let s = g.pn_socle(n, i);
                assert!(g.pn_socle(n + 1, i).is_subgroup_of(&s));
                assert!(s.is_subgroup_of(&g.pn_socle(n, i + 1)));
            }
        }
        assert_eq!(g.pn_socle(0, g.exponent()), Subgroup::full(&g));
    }

    #[test]
    fn generated_subgroup_examples() {
        let g = z2z8();
        let h = Subgroup::generated(&g, &[el(&g, &[0, 2])]);
        assert_eq!(h.order(), 4);
        assert!(h.contains(&el(&g, &[0, 6])));
        assert_eq!(Subgroup::generated(&g, &[]).order(), 1);
        assert_eq!(
            Subgroup::generated(&g, &[el(&g, &[1, 0]), el(&g, &[0, 1])]),
            Subgroup::full(&g)
        );
    }

    #[test]
    fn subgroup_generators_are_minimal() {
        let g = z2z8();
        let full = Subgroup::full(&g);
        let gens = full.generators();
        assert_eq!(gens.len(), 2);
        assert_eq!(Subgroup::generated(&g, &gens), full);
        let h = g.pn_socle(0, 1); // the socle, rank 2
        assert_eq!(h.generators().len(), 2);
        assert_eq!(Subgroup::zero(&g).generators().len(), 0);
    }

    #[test]
    fn ulm_counts_summands() {
        // The number of cyclic summands of exponent e equals u_{e-1}.
        let g = Group::new(GroupSpec::new(2, &[(1, 2), (2, 1)]), &Limits::default()).unwrap();
        let u = g.ulm_invariants();
        assert_eq!(u[0], 2);
        assert_eq!(u[1], 1);
        assert_eq!(u, g.ulm_invariants_brute());
    }

    #[test]
    fn element_text_roundtrip() {
        let g = z2z8();
        for a in g.elements() {
            let s = a.to_string();
            assert_eq!(parse_element(&g, &s).unwrap(), a);
        }
        assert!(parse_element(&g, "(1)").is_err());
        assert!(parse_element(&g, "1,2").is_err());
    }
}

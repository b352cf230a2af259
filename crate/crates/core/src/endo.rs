//! The endomorphism ring of a finite Σ-cyclic p-group.
//!
//! An endomorphism is stored by its images on the presentation generators;
//! well-definedness is a single order check per generator and composition is
//! evaluation. For every generator pair `(src, dst)` the homomorphism group
//! between the corresponding cyclic summands is cyclic of order
//! `p^{min(n_src, e_dst)}`, generated by `g_src ↦ p^{max(0, e_dst - n_src)}
//! g_dst`. Writing an endomorphism in these per-pair coordinates ("digits")
//! identifies the additive group of the ring with a direct sum of cyclic
//! p-groups, which gives a perfect index for exhaustive enumeration and
//! closed forms for heights and exponents. Since the group is bounded, every
//! endomorphism has finite additive order and the torsion ideal is the whole
//! ring.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::cardinal::CardinalValue;
use crate::error::{Error, Result};
use crate::group::{log_p, valuation, Element, Group, Height, Limits, Subgroup};
use crate::indicator::Indicator;

/// An endomorphism, given by the image of each presentation generator.
#[derive(Clone)]
pub struct Endomorphism {
    group: Group,
    images: Vec<Element>,
}

impl fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl PartialEq for Endomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.images == other.images
    }
}

impl Eq for Endomorphism {}

impl PartialOrd for Endomorphism {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Endomorphism {
    fn cmp(&self, other: &Self) -> Ordering {
        self.group
            .cmp(&other.group)
            .then_with(|| self.images.cmp(&other.images))
    }
}

impl Endomorphism {
    /// Validates one image per generator, each of order at most its
    /// generator's order.
    pub fn new(group: &Group, images: Vec<Element>) -> Result<Endomorphism> {
        if images.len() != group.coord_count() {
            return Err(Error::ImageCountMismatch {
                expected: group.coord_count(),
                got: images.len(),
            });
        }
        for (k, img) in images.iter().enumerate() {
            if img.group() != group {
                return Err(Error::GroupMismatch);
            }
            if img.exponent() > group.coord_exponent(k) {
                return Err(Error::ImageOrderViolation { index: k });
            }
        }
        Ok(Endomorphism {
            group: group.clone(),
            images,
        })
    }

    fn new_unchecked(group: &Group, images: Vec<Element>) -> Endomorphism {
        debug_assert!(images
            .iter()
            .enumerate()
            .all(|(k, img)| img.exponent() <= group.coord_exponent(k)));
        Endomorphism {
            group: group.clone(),
            images,
        }
    }

    pub fn zero(group: &Group) -> Endomorphism {
        Endomorphism {
            group: group.clone(),
            images: vec![group.zero(); group.coord_count()],
        }
    }

    pub fn identity(group: &Group) -> Endomorphism {
        Endomorphism {
            group: group.clone(),
            images: group.generators(),
        }
    }

    /// The elementary map `g_src ↦ p^{max(0, e_dst - n_src)} g_dst`; these
    /// k² maps generate the ring additively.
    pub fn elementary(group: &Group, src: usize, dst: usize) -> Endomorphism {
        let delta = group
            .coord_exponent(dst)
            .saturating_sub(group.coord_exponent(src));
        let mut images = vec![group.zero(); group.coord_count()];
        images[src] = group
            .generator(dst)
            .scalar_mul_unsigned(group.p().pow(delta));
        Endomorphism::new_unchecked(group, images)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|e| e.is_zero())
    }

    /// Linear extension from the generator images (functions act on the
    /// right: this is `a ↦ af`).
    pub fn apply(&self, a: &Element) -> Result<Element> {
        if a.group() != &self.group {
            return Err(Error::GroupMismatch);
        }
        let mut out = self.group.zero();
        for (k, img) in self.images.iter().enumerate() {
            out = out.add_unchecked(&img.scalar_mul_unsigned(a.coords()[k]));
        }
        Ok(out)
    }

    pub fn add(&self, other: &Endomorphism) -> Result<Endomorphism> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.add_unchecked(b))
            .collect();
        Ok(Endomorphism::new_unchecked(&self.group, images))
    }

    pub fn negate(&self) -> Endomorphism {
        Endomorphism::new_unchecked(
            &self.group,
            self.images.iter().map(|e| e.neg()).collect(),
        )
    }

    pub fn scalar_mul(&self, k: i64) -> Endomorphism {
        Endomorphism::new_unchecked(
            &self.group,
            self.images.iter().map(|e| e.scalar_mul(k)).collect(),
        )
    }

    pub fn mul_p(&self) -> Endomorphism {
        Endomorphism::new_unchecked(
            &self.group,
            self.images.iter().map(|e| e.mul_p()).collect(),
        )
    }

    /// `f then g`, the ring product under right action.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let images = self
            .images
            .iter()
            .map(|img| other.apply(img).expect("same group"))
            .collect();
        Ok(Endomorphism::new_unchecked(&self.group, images))
    }

    /// The image subgroup Gf, generated by the generator images.
    pub fn image(&self) -> Subgroup {
        Subgroup::generated(&self.group, &self.images)
    }

    fn image_span(&self, scaled_by_p: bool) -> crate::span::ModSpan {
        let moduli: Vec<u64> = (0..self.group.coord_count())
            .map(|k| self.group.coord_modulus(k))
            .collect();
        let mut span = crate::span::ModSpan::new(self.group.p(), moduli);
        for img in &self.images {
            if scaled_by_p {
                span.insert(img.mul_p().coords());
            } else {
                span.insert(img.coords());
            }
        }
        span
    }

    /// |Gf| without materializing the image.
    pub fn image_order(&self) -> u64 {
        self.image_span(false).size()
    }

    /// rank(Gf): the minimal generator count of the image, i.e. the
    /// dimension of Gf/pGf.
    pub fn image_rank(&self) -> u32 {
        log_p(
            self.group.p(),
            self.image_span(false).size() / self.image_span(true).size(),
        )
    }

    /// Least k with `p^k f = 0`: the maximal exponent among the images.
    pub fn exponent(&self) -> u32 {
        self.images.iter().map(|e| e.exponent()).max().unwrap_or(0)
    }

    /// Height of f in the additive group of the ring: the largest n for
    /// which `f = p^n h` is solvable generator-wise. Per generator pair the
    /// condition reads off a p-adic valuation shifted by the pair's delta;
    /// infinite exactly for the zero map.
    pub fn height(&self) -> Height {
        let p = self.group.p();
        let mut min: Option<u32> = None;
        for (src, img) in self.images.iter().enumerate() {
            let n_src = self.group.coord_exponent(src);
            for (dst, &c) in img.coords().iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let delta = self.group.coord_exponent(dst).saturating_sub(n_src);
                let v = valuation(p, c) - delta;
                min = Some(min.map_or(v, |m| m.min(v)));
            }
        }
        min.map_or(Height::Infinite, Height::Finite)
    }

    /// Heights of `f, pf, p^2 f, ...` up to the exponent of f.
    pub fn indicator(&self) -> Indicator {
        let mut entries = Vec::new();
        let mut f = self.clone();
        while let Height::Finite(h) = f.height() {
            entries.push(h);
            f = f.mul_p();
        }
        Indicator::new(entries).expect("endomorphism heights strictly increase")
    }

    /// Read-only matrix view: entry `(src, dst)` is the coefficient of
    /// generator dst in the image of generator src.
    pub fn matrix(&self) -> Vec<Vec<u64>> {
        self.images.iter().map(|img| img.coords().to_vec()).collect()
    }

    pub fn matrix_string(&self) -> String {
        let rows: Vec<String> = self
            .matrix()
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

/// Parses an endomorphism in the textual form `[(c,...),(c,...)]`.
pub fn parse_endomorphism(group: &Group, s: &str) -> Result<Endomorphism> {
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("endomorphism must be bracketed: {s}")))?;
    let mut images = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                images.push(crate::group::parse_element(group, &inner[start..i])?);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !inner[start..].trim().is_empty() {
        images.push(crate::group::parse_element(group, &inner[start..])?);
    }
    Endomorphism::new(group, images)
}

/// The fully enumerable endomorphism ring: a perfect mixed-radix index over
/// the per-generator-pair digits. Construction refuses when the ring size
/// exceeds the cap; the handle itself stays small either way.
#[derive(Clone)]
pub struct EndoRing {
    group: Group,
    /// Per digit position `src * k + dst`: shift `p^delta` applied to the
    /// destination generator, and the digit modulus `p^{min(n_src, e_dst)}`.
    deltas: Vec<u32>,
    digit_mods: Vec<u64>,
    digit_exps: Vec<u32>,
    size: u64,
}

impl fmt::Debug for EndoRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EndoRing(|E| = {}, G = {})", self.size, self.group.name())
    }
}

impl PartialEq for EndoRing {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
    }
}

impl Eq for EndoRing {}

impl EndoRing {
    pub fn new(group: &Group, limits: &Limits) -> Result<EndoRing> {
        let count = Self::count(group);
        if count > limits.max_endo_count as u128 {
            return Err(Error::EndoCountCap {
                count,
                cap: limits.max_endo_count,
            });
        }
        let k = group.coord_count();
        let mut deltas = Vec::with_capacity(k * k);
        let mut digit_mods = Vec::with_capacity(k * k);
        let mut digit_exps = Vec::with_capacity(k * k);
        for src in 0..k {
            for dst in 0..k {
                let n_src = group.coord_exponent(src);
                let e_dst = group.coord_exponent(dst);
                deltas.push(e_dst.saturating_sub(n_src));
                let exp = n_src.min(e_dst);
                digit_exps.push(exp);
                digit_mods.push(group.p().pow(exp));
            }
        }
        Ok(EndoRing {
            group: group.clone(),
            deltas,
            digit_mods,
            digit_exps,
            size: count as u64,
        })
    }

    /// `|E| = Π_k |G[p^{n_k}]|` without building anything.
    pub fn count(group: &Group) -> u128 {
        let k = group.coord_count();
        let mut count: u128 = 1;
        for src in 0..k {
            for dst in 0..k {
                let exp = group
                    .coord_exponent(src)
                    .min(group.coord_exponent(dst));
                count = count.saturating_mul(group.p().pow(exp) as u128);
            }
        }
        count
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn digit_count(&self) -> usize {
        self.digit_mods.len()
    }

    pub fn digit_moduli(&self) -> &[u64] {
        &self.digit_mods
    }

    pub(crate) fn digit_exps(&self) -> &[u32] {
        &self.digit_exps
    }

    /// The k² elementary maps, an additive generating set of the ring.
    pub fn additive_generators(&self) -> Vec<Endomorphism> {
        let k = self.group.coord_count();
        let mut gens = Vec::with_capacity(k * k);
        for src in 0..k {
            for dst in 0..k {
                gens.push(Endomorphism::elementary(&self.group, src, dst));
            }
        }
        gens
    }

    pub fn digits_of(&self, f: &Endomorphism) -> Vec<u64> {
        let k = self.group.coord_count();
        let p = self.group.p();
        let mut digits = Vec::with_capacity(k * k);
        for src in 0..k {
            for dst in 0..k {
                let t = src * k + dst;
                let c = f.images()[src].coords()[dst];
                digits.push(c / p.pow(self.deltas[t]));
            }
        }
        digits
    }

    pub fn endo_from_digits(&self, digits: &[u64]) -> Endomorphism {
        let k = self.group.coord_count();
        let p = self.group.p();
        let images = (0..k)
            .map(|src| {
                let coords: Vec<u64> = (0..k)
                    .map(|dst| {
                        let t = src * k + dst;
                        let m = self.group.coord_modulus(dst);
                        crate::group::mul_mod(
                            digits[t] % m,
                            p.pow(self.deltas[t]) % m,
                            m,
                        )
                    })
                    .collect();
                self.group.element(&coords).expect("coords sized")
            })
            .collect();
        Endomorphism::new_unchecked(&self.group, images)
    }

    pub fn index_of(&self, f: &Endomorphism) -> u64 {
        let digits = self.digits_of(f);
        let mut index = 0u64;
        let mut stride = 1u64;
        for (d, m) in digits.iter().zip(&self.digit_mods) {
            index += d * stride;
            stride *= m;
        }
        index
    }

    pub fn digits_at(&self, mut index: u64) -> Vec<u64> {
        self.digit_mods
            .iter()
            .map(|&m| {
                let d = index % m;
                index /= m;
                d
            })
            .collect()
    }

    pub fn endo_at(&self, index: u64) -> Endomorphism {
        self.endo_from_digits(&self.digits_at(index))
    }

    /// Every endomorphism in the deterministic index order.
    pub fn iter(&self) -> impl Iterator<Item = Endomorphism> + '_ {
        (0..self.size).map(move |i| self.endo_at(i))
    }

    /// Height of the endomorphism with the given digits: minimal valuation
    /// over the nonzero digits.
    pub(crate) fn digit_height(&self, digits: &[u64]) -> Height {
        let p = self.group.p();
        digits
            .iter()
            .filter(|&&d| d != 0)
            .map(|&d| valuation(p, d))
            .min()
            .map_or(Height::Infinite, Height::Finite)
    }

    pub(crate) fn digit_exponent(&self, digits: &[u64]) -> u32 {
        let p = self.group.p();
        digits
            .iter()
            .zip(&self.digit_exps)
            .filter(|(&d, _)| d != 0)
            .map(|(&d, &e)| e - valuation(p, d))
            .max()
            .unwrap_or(0)
    }

    /// Whether the indicator of the digit vector dominates σ, without
    /// materializing the endomorphism.
    pub(crate) fn digit_indicator_dominates(&self, digits: &[u64], sigma: &Indicator) -> bool {
        let exp = self.digit_exponent(digits);
        if exp as usize > sigma.len() {
            return false;
        }
        let p = self.group.p();
        let vals: Vec<(u32, u32)> = digits
            .iter()
            .zip(&self.digit_exps)
            .filter(|(&d, _)| d != 0)
            .map(|(&d, &e)| (valuation(p, d), e))
            .collect();
        for i in 0..exp {
            let h = vals
                .iter()
                .filter(|&&(v, e)| v + i < e)
                .map(|&(v, _)| v + i)
                .min();
            match (h, sigma.entry(i as usize)) {
                (Some(h), Some(s)) => {
                    if h < s {
                        return false;
                    }
                }
                (Some(_), None) => unreachable!("i < exp <= len"),
                (None, _) => {}
            }
        }
        true
    }
}

/// Ulm invariants of the additive group of the ring, by exhaustive
/// socle-filtration dimension count over all endomorphisms.
pub fn endo_ring_ulm_invariants(ring: &EndoRing) -> Vec<u64> {
    let p = ring.group().p();
    let e = ring.group().exponent() as usize;
    // Histogram of heights over the socle of (E, +).
    let mut by_height = vec![0u64; e + 1];
    for index in 0..ring.size() {
        let digits = ring.digits_at(index);
        let in_socle = digits
            .iter()
            .zip(ring.digit_exps())
            .all(|(&d, &de)| d == 0 || valuation(p, d) + 1 >= de);
        if !in_socle {
            continue;
        }
        match ring.digit_height(&digits) {
            Height::Finite(h) => by_height[h as usize] += 1,
            Height::Infinite => {}
        }
    }
    let mut dims = vec![0u32; e + 1];
    let mut cumulative = 1u64; // the zero map
    for kappa in (0..=e).rev() {
        cumulative += by_height.get(kappa).copied().unwrap_or(0);
        dims[kappa] = log_p(p, cumulative);
    }
    (0..e)
        .map(|k| (dims[k] - *dims.get(k + 1).unwrap_or(&0)) as u64)
        .collect()
}

/// The exponent → multiplicity table of the additive decomposition of the
/// ring, read off the brute-force Ulm invariants.
pub fn actual_basic_multiplicities(ring: &EndoRing) -> BTreeMap<u32, u64> {
    endo_ring_ulm_invariants(ring)
        .iter()
        .enumerate()
        .filter(|(_, &u)| u != 0)
        .map(|(k, &u)| (k as u32 + 1, u))
        .collect()
}

/// The textbook prediction for those multiplicities: for each block i,
/// `k_i = m_i × μ_i` with `μ_i` the rank of the quotient by all earlier
/// blocks (and `2^{m_i} × μ_i` were the multiplicity infinite, which cannot
/// happen at desk scale). Kept verbatim and deliberately separate from the
/// brute-force count; whether they agree is a reported claim, never an
/// assertion.
pub fn predicted_basic_multiplicities(group: &Group) -> BTreeMap<u32, CardinalValue> {
    let blocks = &group.spec().blocks;
    let mut out = BTreeMap::new();
    for (i, b) in blocks.iter().enumerate() {
        let mu: u64 = blocks[i..].iter().map(|b| b.multiplicity as u64).sum();
        let k = CardinalValue::Finite(b.multiplicity as u64 * mu);
        out.insert(b.exponent, k);
    }
    out
}

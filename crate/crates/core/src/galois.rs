//! The image Galois connection between fully invariant subgroups and ideals.
//!
//! `image` sends an ideal to the subgroup generated by all member images;
//! `preimage` sends a subgroup to the ideal of endomorphisms mapping into
//! it. The adjunction `image(I) ≤ H ⟺ I ⊆ preimage(H)` holds outright, as
//! do its formal consequences; whether the sharper identities claimed for
//! unbounded groups survive at desk scale is left to the claims harness.
//!
//! `preimage` accepts any subgroup, invariant or not. For a non-invariant H
//! the literal set `{f : Gf ≤ H}` is not right-closed, so the preimage is
//! taken through the fully invariant core of H — the largest ideal inside
//! that set, and still the exact right adjoint of `image`.

use crate::endo::EndoRing;
use crate::error::Result;
use crate::group::Subgroup;
use crate::ideal::{indicator_ideal, Ideal};
use crate::indicator::Indicator;
use crate::invariant;

/// The subgroup generated by the images of every member of the ideal. Since
/// images add under addition of maps, the span of the generating set's
/// images already covers it.
pub fn image(ideal: &Ideal) -> Subgroup {
    let mut gens = Vec::new();
    for f in ideal.generators() {
        gens.extend(f.images().iter().cloned());
    }
    let subgroup = Subgroup::generated(ideal.ring().group(), &gens);
    debug_assert!(invariant::is_fully_invariant(&subgroup));
    subgroup
}

/// The ideal of all endomorphisms whose image lands inside the subgroup,
/// taken through its fully invariant core when the subgroup is not itself
/// invariant.
pub fn preimage(ring: &EndoRing, subgroup: &Subgroup) -> Ideal {
    let core = invariant::invariant_core(subgroup);
    let mut gens = Vec::new();
    for f in ring.iter() {
        if f.images().iter().all(|img| core.contains(img)) {
            gens.push(f);
        }
    }
    let ideal = Ideal::from_generators(ring, &gens).expect("same ring");
    debug_assert_eq!(ideal.size() as usize, gens.len());
    ideal
}

pub fn is_closed_subgroup(ring: &EndoRing, subgroup: &Subgroup) -> bool {
    image(&preimage(ring, subgroup)) == *subgroup
}

pub fn is_closed_ideal(ideal: &Ideal) -> bool {
    preimage(ideal.ring(), &image(ideal)) == *ideal
}

/// The label of an ideal's equivalence class (ideals sharing an image): the
/// minimal-height indicator of that image.
pub fn class_label(ideal: &Ideal) -> Indicator {
    invariant::min_height_indicator(&image(ideal))
}

/// The maximal ideal of the class labelled by an indicator: the preimage of
/// the indicator subgroup, i.e. the round-trip closure. On unbounded groups
/// this coincides with the indicator ideal; whether it still does here is
/// claim territory, so the closure is what this returns.
pub fn class_maximum(ring: &EndoRing, label: &Indicator) -> Ideal {
    preimage(ring, &invariant::indicator_subgroup(ring.group(), label))
}

/// The indicator ideal of the same label, for comparison against
/// [`class_maximum`].
pub fn class_indicator_ideal(ring: &EndoRing, label: &Indicator) -> Ideal {
    indicator_ideal(ring, label)
}

/// All four adjunction consequences for one subgroup/ideal pair, used by the
/// acceptance suite and claims harness.
pub fn adjunction_holds(ring: &EndoRing, ideal: &Ideal, subgroup: &Subgroup) -> Result<bool> {
    let im = image(ideal);
    let pre = preimage(ring, subgroup);
    Ok(im.is_subgroup_of(subgroup) == ideal.is_subset_of(&pre))
}

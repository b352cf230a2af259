//! The default verification corpus: small groups chosen so that every
//! exhaustive check stays cheap while still exercising the interesting
//! shapes (single blocks, repeated blocks, and a zero interior Ulm invariant
//! to make gap admissibility bite).

use crate::error::Result;
use crate::group::{Group, GroupSpec, Limits};

pub fn corpus_specs() -> Vec<GroupSpec> {
    vec![
        GroupSpec::new(2, &[(1, 1)]),         // Z/2
        GroupSpec::new(3, &[(1, 1)]),         // Z/3
        GroupSpec::new(2, &[(2, 1)]),         // Z/4
        GroupSpec::new(2, &[(1, 1), (2, 1)]), // Z/2 + Z/4
        GroupSpec::new(2, &[(1, 1), (3, 1)]), // Z/2 + Z/8, u_1 = 0
        GroupSpec::new(2, &[(2, 1), (3, 1)]), // Z/4 + Z/8
        GroupSpec::new(2, &[(1, 2), (2, 1)]), // Z/2 + Z/2 + Z/4
        GroupSpec::new(3, &[(2, 1), (3, 1)]), // Z/9 + Z/27
        GroupSpec::new(2, &[(2, 2)]),         // Z/4 + Z/4
        GroupSpec::new(3, &[(2, 2)]),         // Z/9 + Z/9
    ]
}

pub fn corpus(limits: &Limits) -> Result<Vec<Group>> {
    corpus_specs()
        .into_iter()
        .map(|spec| Group::new(spec, limits))
        .collect()
}

use rayon::prelude::*;
use serde::Serialize;

use super::AutGroup;
use crate::error::{Error, Result};

/// `{alpha in A : k^alpha = k^-1 for all k in target}`, optionally
/// restricted to `alpha^2 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InverterSet {
    /// Elements of the parent group that must be inverted.
    pub target: Vec<u32>,
    pub size: usize,
    /// Orders of the members, in member order.
    pub member_orders: Vec<u64>,
    #[serde(skip)]
    pub members: Vec<u32>,
    #[serde(skip)]
    pub involutions_only: bool,
}

impl InverterSet {
    fn new(a: &AutGroup, target: Vec<u32>, members: Vec<u32>, involutions_only: bool) -> Self {
        let member_orders = members.iter().map(|&m| a.group().order_of(m)).collect();
        InverterSet {
            target,
            size: members.len(),
            member_orders,
            members,
            involutions_only,
        }
    }

    pub fn contains(&self, alpha: u32) -> bool {
        self.members.binary_search(&alpha).is_ok()
    }

    /// Whether the two sets share a member.
    pub fn meets(&self, other: &InverterSet) -> bool {
        self.members.iter().any(|&m| other.contains(m))
    }
}

fn scan(a: &AutGroup, test: impl Fn(u32) -> bool + Sync) -> Vec<u32> {
    (0..a.order() as u32)
        .into_par_iter()
        .filter(|&alpha| test(alpha))
        .collect()
}

/// `C_A(x)`, ascending.
pub fn centralizer_in_aut(a: &AutGroup, x: u32) -> Vec<u32> {
    scan(a, |alpha| a.apply(alpha, x) == x)
}

/// All automorphisms inverting `x`, ascending.
pub fn inverters(a: &AutGroup, x: u32, involutions_only: bool) -> InverterSet {
    let xinv = a.parent().inv(x);
    let members = scan(a, |alpha| {
        a.apply(alpha, x) == xinv && (!involutions_only || a.group().mul(alpha, alpha) == 0)
    });
    InverterSet::new(a, vec![x], members, involutions_only)
}

/// `Delta_K` for a subgroup `K` given by its elements. For cyclic `K` only
/// a generator is tested.
pub fn subgroup_inverters(a: &AutGroup, k: &[u32], involutions_only: bool) -> Result<InverterSet> {
    let s = a.parent();
    if k.is_empty() || !s.is_subgroup(k) {
        return Err(Error::NotClosed);
    }
    let generator = k.iter().copied().find(|&x| s.order_of(x) as usize == k.len());
    let tested: Vec<u32> = match generator {
        Some(g) => vec![g],
        None => k.to_vec(),
    };
    let inv: Vec<u32> = tested.iter().map(|&x| s.inv(x)).collect();
    let members = scan(a, |alpha| {
        tested.iter().zip(&inv).all(|(&x, &xi)| a.apply(alpha, x) == xi)
            && (!involutions_only || a.group().mul(alpha, alpha) == 0)
    });
    let mut target = k.to_vec();
    target.sort_unstable();
    Ok(InverterSet::new(a, target, members, involutions_only))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgrp::aut_constructed;
    use crate::families::{build_group, GroupSpec};

    #[test]
    fn identity_is_inverted_by_everything() {
        let g = build_group(GroupSpec::alt(5), 1000).unwrap();
        let a = aut_constructed(&g, 1000).unwrap();
        assert_eq!(inverters(&a, 0, false).size, 120);
    }

    #[test]
    fn inverters_of_an_involution_form_its_centralizer() {
        let g = build_group(GroupSpec::psl(2, 7), 1000).unwrap();
        let a = aut_constructed(&g, 1000).unwrap();
        let s = &g.handle;
        let t = (1..s.order() as u32).find(|&x| s.order_of(x) == 2).unwrap();
        assert_eq!(inverters(&a, t, false).members, centralizer_in_aut(&a, t));
    }

    #[test]
    fn cyclic_shortcut_matches_definition() {
        let g = build_group(GroupSpec::psl(2, 7), 1000).unwrap();
        let a = aut_constructed(&g, 1000).unwrap();
        let s = &g.handle;
        let x = (1..s.order() as u32).find(|&x| s.order_of(x) == 7).unwrap();
        let k = s.subgroup_generated(&[x]);
        let fast = subgroup_inverters(&a, &k, true).unwrap();
        let slow: Vec<u32> = (0..a.order() as u32)
            .filter(|&al| a.group().mul(al, al) == 0)
            .filter(|&al| k.iter().all(|&y| a.apply(al, y) == s.inv(y)))
            .collect();
        assert_eq!(fast.members, slow);
        assert!(subgroup_inverters(&a, &[0, x], true).is_err());
    }
}

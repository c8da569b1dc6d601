//! Symmetric generating pairs, the proportion δ of symmetric pairs, and
//! the census of orientably regular hypermaps.
//!
//! All of these work on orbits of the automorphism group `A` on generating
//! pairs. Pairs are processed with the first entry an `A`-orbit
//! representative `r` and the second entry least in its `C_A(r)`-orbit.

mod engine;
mod sample;

use std::collections::HashMap;
use std::time::Instant;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::autgrp::{inverters, AutGroup};
use crate::error::{Error, Result};
use engine::{classes_for, first_asymmetric, type_triple, AutOrbits, PairClass, RepInfo};

pub use sample::{delta_sample, wilson_interval, SampleInfo};

/// Default largest group order for exact δ.
pub const DELTA_CAP: usize = 7000;
/// Default largest group order for a census.
pub const CENSUS_CAP: usize = 7000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GenPair {
    pub x: u32,
    pub y: u32,
}

fn check_generates(a: &AutGroup, x: u32, y: u32) -> Result<()> {
    if a.parent().generates(x, y) {
        Ok(())
    } else {
        Err(Error::NotGenerating)
    }
}

/// An automorphism inverting both `x` and `y`, for a generating pair.
pub fn is_symmetric_pair(a: &AutGroup, x: u32, y: u32) -> Result<Option<u32>> {
    check_generates(a, x, y)?;
    Ok(is_symmetric_pair_relaxed(a, x, y))
}

/// Like [`is_symmetric_pair`] but for arbitrary pairs.
pub fn is_symmetric_pair_relaxed(a: &AutGroup, x: u32, y: u32) -> Option<u32> {
    let yinv = a.parent().inv(y);
    inverters(a, x, false)
        .members
        .into_iter()
        .find(|&al| a.apply(al, y) == yinv)
}

/// Checks that `witness` inverts `x` and `y`, that its square centralizes
/// both, and that it has order exactly 2.
pub fn check_inverter_is_involution(a: &AutGroup, x: u32, y: u32, witness: u32) -> Result<()> {
    let s = a.parent();
    if a.apply(witness, x) != s.inv(x) || a.apply(witness, y) != s.inv(y) {
        return Err(Error::defect("witness does not invert the pair"));
    }
    let sq = a.group().mul(witness, witness);
    if a.apply(sq, x) != x || a.apply(sq, y) != y {
        return Err(Error::defect(
            "square of the witness does not centralize the pair",
        ));
    }
    match a.group().order_of(witness) {
        2 => Ok(()),
        order => Err(Error::InverterNotInvolution {
            order: order as usize,
        }),
    }
}

fn ratio_string<S: Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaReport {
    pub group: String,
    pub order: usize,
    pub aut_order: usize,
    pub n_generating_pairs: u64,
    pub n_symmetric_pairs: u64,
    #[serde(serialize_with = "ratio_string")]
    pub delta: Ratio<u64>,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample: Option<SampleInfo>,
}

struct PairOrbits {
    orbits: AutOrbits,
    infos: Vec<RepInfo>,
    mins: Vec<Vec<u32>>,
    classes: Vec<PairClass>,
}

fn pair_orbits(a: &AutGroup) -> PairOrbits {
    let orbits = AutOrbits::new(a);
    let prepared: Vec<(RepInfo, Vec<u32>, Vec<(u32, usize)>)> = orbits
        .reps
        .par_iter()
        .map(|&r| {
            let info = RepInfo::new(a, &orbits, r);
            let (min, reps) = info.orbit_min(a);
            (info, min, reps)
        })
        .collect();
    let mut infos = Vec::new();
    let mut mins = Vec::new();
    let mut classes = Vec::new();
    for (info, min, reps) in prepared {
        classes.extend(classes_for(a, &info, &reps));
        infos.push(info);
        mins.push(min);
    }
    PairOrbits {
        orbits,
        infos,
        mins,
        classes,
    }
}

/// Exact δ: the proportion of generating pairs that are symmetric.
pub fn delta_statistic(name: &str, a: &AutGroup, cap: usize) -> Result<DeltaReport> {
    let n = a.parent().order();
    if n > cap {
        return Err(Error::cap(format!("exact delta for {name} of order {n}"), cap));
    }
    let po = pair_orbits(a);
    let total: u64 = po.classes.iter().map(|c| c.weight).sum();
    let symmetric: u64 = po
        .classes
        .iter()
        .filter(|c| c.witness.is_some())
        .map(|c| c.weight)
        .sum();
    if total == 0 {
        return Err(Error::NotGenerating);
    }
    Ok(DeltaReport {
        group: name.to_string(),
        order: n,
        aut_order: a.order(),
        n_generating_pairs: total,
        n_symmetric_pairs: symmetric,
        delta: Ratio::new(symmetric, total),
        exact: true,
        sample: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Exhaustive,
    WitnessFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    StronglySymmetric,
    NotStronglySymmetric { witness: GenPair },
}

impl Verdict {
    pub fn is_strongly_symmetric(&self) -> bool {
        matches!(self, Verdict::StronglySymmetric)
    }
}

/// Decides whether every generating pair is symmetric.
///
/// `Exhaustive` runs over all orbits of generating pairs, first entries by
/// decreasing orbit size. `WitnessFirst` first tries pairs of elements of
/// equal order, largest order first, and falls back to the exhaustive scan.
pub fn is_strongly_symmetric(a: &AutGroup, strategy: Strategy, cap: usize) -> Result<Verdict> {
    let s = a.parent();
    let orbits = AutOrbits::new(a);
    if strategy == Strategy::WitnessFirst {
        let mut reps = orbits.reps.clone();
        let orders: Vec<u64> = s.element_orders();
        reps.sort_by_key(|&r| (std::cmp::Reverse(orders[r as usize]), r));
        for &r in &reps {
            if r == 0 {
                continue;
            }
            let info = RepInfo::new(a, &orbits, r);
            let candidates: Vec<(u32, usize)> = (0..s.order() as u32)
                .filter(|&y| orders[y as usize] == orders[r as usize])
                .map(|y| (y, 1))
                .collect();
            if let Some(y) = first_asymmetric(a, &info, &candidates) {
                return Ok(Verdict::NotStronglySymmetric {
                    witness: GenPair { x: r, y },
                });
            }
        }
    }
    if s.order() > cap {
        return Err(Error::cap("exhaustive strong-symmetry scan", cap));
    }
    let mut reps = orbits.reps.clone();
    reps.sort_by_key(|&r| (std::cmp::Reverse(orbits.orbit_len[r as usize]), r));
    for r in reps {
        let info = RepInfo::new(a, &orbits, r);
        let (_, min_reps) = info.orbit_min(a);
        if let Some(y) = first_asymmetric(a, &info, &min_reps) {
            return Ok(Verdict::NotStronglySymmetric {
                witness: GenPair { x: r, y },
            });
        }
    }
    Ok(Verdict::StronglySymmetric)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypermapClass {
    pub rep: [u32; 2],
    #[serde(rename = "type")]
    pub type_triple: [u64; 3],
    pub reflexible: bool,
    pub mirror: [u32; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub group: String,
    pub order: usize,
    pub aut_order: usize,
    pub n_generating_pairs: u64,
    pub n_orbits: usize,
    pub n_reflexible: usize,
    pub n_chiral: usize,
    pub classes: Vec<HypermapClass>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl CensusReport {
    pub fn delta(&self) -> Ratio<u64> {
        Ratio::new(self.n_reflexible as u64, self.n_orbits as u64)
    }
}

/// All orientably regular hypermaps with monodromy group `S`, as orbits of
/// `A` on generating pairs.
///
/// Checks on the way that `A` acts freely on generating pairs, that the
/// two reflexibility tests (an inverting automorphism, and the mirror pair
/// lying in the same orbit) agree, and that mirroring pairs up the chiral
/// classes.
pub fn hypermap_census(name: &str, a: &AutGroup, cap: usize) -> Result<CensusReport> {
    let start = Instant::now();
    let s = a.parent();
    if s.order() > cap {
        return Err(Error::cap(
            format!("census of {name} of order {}", s.order()),
            cap,
        ));
    }
    let po = pair_orbits(a);
    let slot: HashMap<u32, usize> = po.infos.iter().enumerate().map(|(i, f)| (f.r, i)).collect();
    let mut classes = Vec::with_capacity(po.classes.len());
    let mut total = 0u64;
    for c in &po.classes {
        if c.weight != a.order() as u64 {
            return Err(Error::defect(format!(
                "orbit of ({}, {}) has {} pairs, not {}",
                c.x,
                c.y,
                c.weight,
                a.order()
            )));
        }
        total += c.weight;
        let xi = s.inv(c.x);
        let r2 = po.orbits.rep_of[xi as usize];
        let v = a.apply_inv(po.orbits.trans[xi as usize], s.inv(c.y));
        let mirror = [r2, po.mins[slot[&r2]][v as usize]];
        let reflexible = mirror == [c.x, c.y];
        if reflexible != c.witness.is_some() {
            return Err(Error::defect(format!(
                "reflexibility tests disagree on ({}, {})",
                c.x, c.y
            )));
        }
        classes.push(HypermapClass {
            rep: [c.x, c.y],
            type_triple: type_triple(s, c.x, c.y),
            reflexible,
            mirror,
        });
    }
    let index: HashMap<[u32; 2], usize> = classes.iter().enumerate().map(|(i, c)| (c.rep, i)).collect();
    for c in classes.iter().filter(|c| !c.reflexible) {
        let back = index.get(&c.mirror).map(|&i| classes[i].mirror);
        if back != Some(c.rep) {
            return Err(Error::defect(format!(
                "mirror of {:?} is not an involution",
                c.rep
            )));
        }
    }
    let n_reflexible = classes.iter().filter(|c| c.reflexible).count();
    let n_chiral = classes.len() - n_reflexible;
    if n_chiral % 2 != 0 {
        return Err(Error::defect("odd number of chiral classes"));
    }
    Ok(CensusReport {
        group: name.to_string(),
        order: s.order(),
        aut_order: a.order(),
        n_generating_pairs: total,
        n_orbits: classes.len(),
        n_reflexible,
        n_chiral,
        classes,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgrp::{aut_bruteforce, aut_constructed};
    use crate::families::{build_group, GroupSpec};
    use crate::permgrp::{close_generators, Perm, PermRule};
    use std::sync::Arc;

    #[test]
    fn alt5_delta_is_one() {
        let g = build_group(GroupSpec::alt(5), 1000).unwrap();
        let a = aut_constructed(&g, 1000).unwrap();
        let d = delta_statistic("Alt(5)", &a, DELTA_CAP).unwrap();
        assert_eq!(d.n_generating_pairs, 2280);
        assert_eq!(d.delta, Ratio::from_integer(1));
        assert_eq!(serde_json::to_value(&d).unwrap()["delta"], "1/1");
    }

    #[test]
    fn psl27_census_is_reflexible() {
        let g = build_group(GroupSpec::psl(2, 7), 1000).unwrap();
        let a = aut_constructed(&g, 1000).unwrap();
        let c = hypermap_census("PSL(2,7)", &a, CENSUS_CAP).unwrap();
        assert_eq!(c.n_chiral, 0);
        assert_eq!(c.n_orbits as u64 * 336, c.n_generating_pairs);
    }

    #[test]
    fn witnesses_in_psl27_are_involutions() {
        let g = build_group(GroupSpec::psl(2, 7), 1000).unwrap();
        let a = aut_constructed(&g, 1000).unwrap();
        let s = &g.handle;
        let x = (0..168).find(|&x| s.order_of(x) == 2).unwrap();
        let y = (0..168)
            .find(|&y| s.order_of(y) == 3 && s.generates(x, y))
            .unwrap();
        let w = is_symmetric_pair(&a, x, y).unwrap().expect("symmetric");
        check_inverter_is_involution(&a, x, y, w).unwrap();
    }

    #[test]
    fn non_generating_pair_is_rejected() {
        let g = build_group(GroupSpec::alt(5), 1000).unwrap();
        let a = aut_constructed(&g, 1000).unwrap();
        assert!(matches!(is_symmetric_pair(&a, 0, 1), Err(Error::NotGenerating)));
        assert!(is_symmetric_pair_relaxed(&a, 0, 0).is_some());
    }

    #[test]
    fn dihedral_control_has_identity_witness() {
        let gens = vec![
            Perm::parse_cycles(4, "(1,3)").unwrap().images().to_vec(),
            Perm::parse_cycles(4, "(1,2)(3,4)").unwrap().images().to_vec(),
        ];
        let d8 = Arc::new(close_generators(Arc::new(PermRule::new(4)), &gens, 100).unwrap());
        assert_eq!(d8.order(), 8);
        let a = aut_bruteforce(&d8).unwrap();
        let (x, y) = (d8.gens()[0], d8.gens()[1]);
        let err = check_inverter_is_involution(&a, x, y, 0).unwrap_err();
        assert!(matches!(err, Error::InverterNotInvolution { order: 1 }));
    }
}

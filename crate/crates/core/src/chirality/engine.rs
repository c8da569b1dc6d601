use std::collections::VecDeque;

use rayon::prelude::*;

use crate::autgrp::{centralizer_in_aut, AutGroup};
use crate::permgrp::{ClosureProbe, GroupHandle};

/// Orbits of `A` on the parent group, with a transversal.
pub(crate) struct AutOrbits {
    /// Least element of the orbit of each element.
    pub rep_of: Vec<u32>,
    /// `trans[s]` is an automorphism mapping `rep_of[s]` to `s`.
    pub trans: Vec<u32>,
    /// Orbit representatives, ascending.
    pub reps: Vec<u32>,
    pub orbit_len: Vec<usize>,
}

impl AutOrbits {
    pub fn new(a: &AutGroup) -> Self {
        let s = a.parent();
        let n = s.order();
        let ngens = a.group().gens().len();
        let mut rep_of = vec![u32::MAX; n];
        let mut trans = vec![0u32; n];
        let mut reps = Vec::new();
        let mut orbit_len = vec![0usize; n];
        for start in 0..n as u32 {
            if rep_of[start as usize] != u32::MAX {
                continue;
            }
            rep_of[start as usize] = start;
            reps.push(start);
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for j in 0..ngens {
                    let v = a.gen_map(j)[u as usize];
                    if rep_of[v as usize] == u32::MAX {
                        rep_of[v as usize] = start;
                        trans[v as usize] = a.group().mul_gen(trans[u as usize], j);
                        members.push(v);
                        queue.push_back(v);
                    }
                }
            }
            orbit_len[start as usize] = members.len();
        }
        AutOrbits {
            rep_of,
            trans,
            reps,
            orbit_len,
        }
    }
}

/// Data attached to one orbit representative `r`.
pub(crate) struct RepInfo {
    pub r: u32,
    pub orbit_len: usize,
    /// `C_A(r)`, ascending.
    pub cent: Vec<u32>,
    /// Automorphisms inverting `r`, ascending.
    pub inv: Vec<u32>,
}

impl RepInfo {
    pub fn new(a: &AutGroup, orbits: &AutOrbits, r: u32) -> Self {
        let s = a.parent();
        let cent = centralizer_in_aut(a, r);
        let rinv = s.inv(r);
        let inv = if orbits.rep_of[rinv as usize] == r {
            let tau = orbits.trans[rinv as usize];
            let mut v: Vec<u32> = cent.iter().map(|&c| a.group().mul(c, tau)).collect();
            v.sort_unstable();
            v
        } else {
            Vec::new()
        };
        RepInfo {
            r,
            orbit_len: orbits.orbit_len[r as usize],
            cent,
            inv,
        }
    }

    /// Least element of the `C_A(r)`-orbit of each element, together with
    /// the orbit sizes of the representatives.
    pub fn orbit_min(&self, a: &AutGroup) -> (Vec<u32>, Vec<(u32, usize)>) {
        let n = a.parent().order();
        let mut min = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for y in 0..n as u32 {
            if min[y as usize] != u32::MAX {
                continue;
            }
            let mut size = 0;
            for &c in &self.cent {
                let z = a.apply(c, y);
                if min[z as usize] == u32::MAX {
                    min[z as usize] = y;
                    size += 1;
                }
            }
            reps.push((y, size));
        }
        (min, reps)
    }

    /// An automorphism inverting both `r` and `y`.
    pub fn witness(&self, a: &AutGroup, y: u32) -> Option<u32> {
        let yinv = a.parent().inv(y);
        self.inv.iter().copied().find(|&al| a.apply(al, y) == yinv)
    }
}

/// A generating pair `(r, y)` with `r` an orbit representative and `y` least
/// in its `C_A(r)`-orbit: one orbit of `A` on generating pairs.
#[derive(Clone, Debug)]
pub(crate) struct PairClass {
    pub x: u32,
    pub y: u32,
    /// Number of generating pairs in the orbit.
    pub weight: u64,
    pub witness: Option<u32>,
}

/// Orbits of `A` on generating pairs whose first entry lies in the orbit of `info.r`.
pub(crate) fn classes_for(a: &AutGroup, info: &RepInfo, min_reps: &[(u32, usize)]) -> Vec<PairClass> {
    let s = a.parent();
    min_reps
        .par_iter()
        .map_init(
            || ClosureProbe::new(s.order()),
            |probe, &(y, size)| {
                probe.generates(s, &[info.r, y]).then(|| PairClass {
                    x: info.r,
                    y,
                    weight: (info.orbit_len * size) as u64,
                    witness: info.witness(a, y),
                })
            },
        )
        .flatten()
        .collect()
}

/// First non-symmetric generating pair with first entry `info.r`, scanning
/// orbit representatives in index order.
pub(crate) fn first_asymmetric(a: &AutGroup, info: &RepInfo, min_reps: &[(u32, usize)]) -> Option<u32> {
    let s = a.parent();
    min_reps
        .par_iter()
        .map_init(
            || ClosureProbe::new(s.order()),
            |probe, &(y, _)| (info.witness(a, y).is_none() && probe.generates(s, &[info.r, y])).then_some(y),
        )
        .find_first(|o| o.is_some())
        .flatten()
}

pub(crate) fn type_triple(s: &GroupHandle, x: u32, y: u32) -> [u64; 3] {
    [s.order_of(x), s.order_of(y), s.order_of(s.mul(x, y))]
}

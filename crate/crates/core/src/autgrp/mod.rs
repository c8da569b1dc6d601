//! Automorphism groups of enumerated groups.
//!
//! An automorphism is stored as the tuple of images of the parent's
//! generators. The automorphism group is itself enumerated as a
//! [`GroupHandle`] over these tuples; applying an element folds its
//! generator word over precomputed maps for the generators.

mod brute;
mod constructed;
mod inverters;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::permgrp::{close_generators, ClosureProbe, GroupHandle, GroupRule};

pub use brute::{aut_bruteforce, BRUTE_FORCE_LIMIT};
pub use constructed::{aut_constructed, cross_check, expected_aut_order};
pub use inverters::{centralizer_in_aut, inverters, subgroup_inverters, InverterSet};

/// Provenance of an automorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AutTag {
    Inner,
    Diagonal,
    Field,
    Graph,
    Outer,
    Composite,
}

/// Full image array of the automorphism with generator images `imgs`, or
/// `None` if the images do not extend to an automorphism.
///
/// The map is built along the breadth-first tree of `s` and then checked on
/// every edge of the Cayley graph, together with injectivity.
pub fn build_map(s: &GroupHandle, imgs: &[u32]) -> Option<Vec<u32>> {
    let n = s.order();
    if imgs.len() != s.gens().len() || imgs.iter().any(|&i| i as usize >= n) {
        return None;
    }
    let mut map = vec![0u32; n];
    let mut hit = vec![false; n];
    hit[0] = true;
    for i in 1..n as u32 {
        let (p, l) = s.tree_edge(i);
        let v = s.mul(map[p as usize], imgs[l as usize]);
        if hit[v as usize] {
            return None;
        }
        hit[v as usize] = true;
        map[i as usize] = v;
    }
    for e in 0..n as u32 {
        for (j, &img) in imgs.iter().enumerate() {
            let t = s.mul_gen(e, j);
            if map[t as usize] != s.mul(map[e as usize], img) {
                return None;
            }
        }
    }
    Some(map)
}

fn encode(imgs: &[u32]) -> Vec<u8> {
    imgs.iter().flat_map(|i| i.to_le_bytes()).collect()
}

fn decode(key: &[u8]) -> Vec<u32> {
    key.chunks_exact(4)
        .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect()
}

/// Composition of automorphisms on image-tuple keys: `a` first, then `b`.
struct ImageRule {
    s: Arc<GroupHandle>,
    known: HashMap<Vec<u8>, Arc<Vec<u32>>>,
}

impl GroupRule for ImageRule {
    fn key_len(&self) -> usize {
        4 * self.s.gens().len()
    }

    fn identity(&self) -> Vec<u8> {
        encode(self.s.gens())
    }

    fn mul(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        let a = decode(a);
        let imgs: Vec<u32> = match self.known.get(b) {
            Some(map) => a.iter().map(|&x| map[x as usize]).collect(),
            None => {
                let b = decode(b);
                a.iter().map(|&x| self.s.eval_word(self.s.word(x), &b)).collect()
            }
        };
        out.copy_from_slice(&encode(&imgs));
    }
}

/// Where an [`AutGroup`] came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AutSource {
    Constructed,
    BruteForce,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutSummary {
    pub order: usize,
    pub inner: usize,
    pub outer: usize,
}

/// An automorphism group `A` of a parent group `S`.
pub struct AutGroup {
    parent: Arc<GroupHandle>,
    group: GroupHandle,
    gen_maps: Vec<Arc<Vec<u32>>>,
    gen_inv_maps: Vec<Vec<u32>>,
    gen_tags: Vec<AutTag>,
    source: AutSource,
    tags: OnceLock<Vec<AutTag>>,
    inner_count: OnceLock<usize>,
}

impl fmt::Debug for AutGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AutGroup")
            .field("order", &self.order())
            .field("parent_order", &self.parent.order())
            .field("source", &self.source)
            .finish()
    }
}

impl AutGroup {
    /// Closes the automorphisms given by generator images. Every tuple is
    /// validated with [`build_map`].
    pub(crate) fn from_generators(
        parent: Arc<GroupHandle>,
        gens: Vec<(Vec<u32>, AutTag)>,
        source: AutSource,
        cap: usize,
    ) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        seen.insert(parent.gens().to_vec());
        let mut keys = Vec::new();
        let mut maps = Vec::new();
        let mut gen_tags = Vec::new();
        for (imgs, tag) in gens {
            if !seen.insert(imgs.clone()) {
                continue;
            }
            let map = build_map(&parent, &imgs).ok_or(Error::NotAnAutomorphism)?;
            keys.push(encode(&imgs));
            maps.push(Arc::new(map));
            gen_tags.push(tag);
        }
        if keys.is_empty() {
            keys.push(encode(parent.gens()));
            maps.push(Arc::new((0..parent.order() as u32).collect()));
            gen_tags.push(AutTag::Inner);
        }
        let rule = ImageRule {
            s: parent.clone(),
            known: keys.iter().cloned().zip(maps.iter().cloned()).collect(),
        };
        let group = close_generators(Arc::new(rule), &keys, cap)?;
        Ok(Self::assemble(parent, group, maps, gen_tags, source))
    }

    fn assemble(
        parent: Arc<GroupHandle>,
        group: GroupHandle,
        gen_maps: Vec<Arc<Vec<u32>>>,
        gen_tags: Vec<AutTag>,
        source: AutSource,
    ) -> Self {
        let gen_inv_maps = gen_maps
            .iter()
            .map(|m| {
                let mut inv = vec![0u32; m.len()];
                for (i, &v) in m.iter().enumerate() {
                    inv[v as usize] = i as u32;
                }
                inv
            })
            .collect();
        AutGroup {
            parent,
            group,
            gen_maps,
            gen_inv_maps,
            gen_tags,
            source,
            tags: OnceLock::new(),
            inner_count: OnceLock::new(),
        }
    }

    pub fn parent(&self) -> &Arc<GroupHandle> {
        &self.parent
    }

    /// The automorphism group as an enumerated group.
    pub fn group(&self) -> &GroupHandle {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn source(&self) -> AutSource {
        self.source
    }

    pub fn gen_tags(&self) -> &[AutTag] {
        &self.gen_tags
    }

    /// Images of the parent's generators under `alpha`.
    pub fn images(&self, alpha: u32) -> Vec<u32> {
        decode(self.group.key(alpha))
    }

    pub fn index_of_images(&self, imgs: &[u32]) -> Option<u32> {
        self.group.index_of(&encode(imgs))
    }

    /// `s^alpha`.
    #[inline]
    pub fn apply(&self, alpha: u32, s: u32) -> u32 {
        self.group
            .word(alpha)
            .iter()
            .fold(s, |x, &l| self.gen_maps[l as usize][x as usize])
    }

    /// `s^(alpha^-1)`.
    #[inline]
    pub fn apply_inv(&self, alpha: u32, s: u32) -> u32 {
        self.group
            .word(alpha)
            .iter()
            .rev()
            .fold(s, |x, &l| self.gen_inv_maps[l as usize][x as usize])
    }

    /// Maps of the generators of the automorphism group.
    pub fn gen_map(&self, j: usize) -> &[u32] {
        &self.gen_maps[j]
    }

    /// Full image array of `alpha` on the parent.
    pub fn full_map(&self, alpha: u32) -> Vec<u32> {
        let s = &self.parent;
        let imgs = self.images(alpha);
        let mut map = vec![0u32; s.order()];
        for i in 1..s.order() as u32 {
            let (p, l) = s.tree_edge(i);
            map[i as usize] = s.mul(map[p as usize], imgs[l as usize]);
        }
        map
    }

    /// The inner automorphism `s -> g^-1 s g`.
    pub fn inner(&self, g: u32) -> Option<u32> {
        let imgs: Vec<u32> = self
            .parent
            .gens()
            .iter()
            .map(|&s| self.parent.conj(s, g))
            .collect();
        self.index_of_images(&imgs)
    }

    fn inner_generators(&self) -> Vec<u32> {
        self.parent
            .gens()
            .iter()
            .map(|&g| self.inner(g).expect("inner automorphisms lie in A"))
            .collect()
    }

    /// Number of inner automorphisms, `|S : Z(S)|`.
    pub fn inner_count(&self) -> usize {
        *self.inner_count.get_or_init(|| {
            let gens = self.inner_generators();
            ClosureProbe::new(self.order())
                .closure(&self.group, &gens, None)
                .len()
        })
    }

    pub fn summary(&self) -> AutSummary {
        let inner = self.inner_count();
        AutSummary {
            order: self.order(),
            inner,
            outer: self.order() / inner,
        }
    }

    /// Provenance of `alpha`: the first of inner, diagonal, field, graph and
    /// outer whose subgroup `<Inn, generators of that kind>` contains it.
    pub fn tag(&self, alpha: u32) -> AutTag {
        self.tags.get_or_init(|| self.compute_tags())[alpha as usize]
    }

    fn compute_tags(&self) -> Vec<AutTag> {
        let n = self.order();
        let inner = self.inner_generators();
        let mut tags = vec![AutTag::Composite; n];
        let mut probe = ClosureProbe::new(n);
        let kinds = [
            AutTag::Inner,
            AutTag::Diagonal,
            AutTag::Field,
            AutTag::Graph,
            AutTag::Outer,
        ];
        for kind in kinds.into_iter().rev() {
            let mut gens = inner.clone();
            gens.extend(
                self.gen_tags
                    .iter()
                    .enumerate()
                    .filter(|&(_, &t)| t == kind && kind != AutTag::Inner)
                    .map(|(j, _)| self.group.gens()[j]),
            );
            if kind != AutTag::Inner && gens.len() == inner.len() {
                continue;
            }
            for a in probe.closure(&self.group, &gens, None) {
                tags[a as usize] = kind;
            }
        }
        tags
    }

    /// Sorted image tuples of all elements.
    pub fn image_tuples(&self) -> Vec<Vec<u32>> {
        let mut v: Vec<Vec<u32>> = (0..self.order() as u32).map(|a| self.images(a)).collect();
        v.sort_unstable();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::{Perm, PermRule};

    fn sym3() -> Arc<GroupHandle> {
        let gens = vec![
            Perm::parse_cycles(3, "(1,2)").unwrap().images().to_vec(),
            Perm::parse_cycles(3, "(1,2,3)").unwrap().images().to_vec(),
        ];
        Arc::new(close_generators(Arc::new(PermRule::new(3)), &gens, 100).unwrap())
    }

    #[test]
    fn build_map_accepts_identity_and_rejects_swap_of_orders() {
        let s = sym3();
        let id = build_map(&s, s.gens()).unwrap();
        assert_eq!(id, (0..6).collect::<Vec<u32>>());
        // An involution cannot map to a 3-cycle.
        let g = s.gens();
        assert!(build_map(&s, &[g[1], g[0]]).is_none());
    }

    #[test]
    fn apply_and_apply_inv_are_inverse() {
        let s = sym3();
        let a = aut_bruteforce(&s).unwrap();
        assert_eq!(a.order(), 6);
        for alpha in 0..6 {
            for x in 0..6 {
                assert_eq!(a.apply_inv(alpha, a.apply(alpha, x)), x);
                assert_eq!(a.full_map(alpha)[x as usize], a.apply(alpha, x));
            }
        }
    }
}

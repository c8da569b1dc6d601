use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;

use super::{build_map, AutGroup, AutSource, AutTag};
use crate::error::{Error, Result};
use crate::permgrp::GroupHandle;

/// Largest parent order accepted by [`aut_bruteforce`].
pub const BRUTE_FORCE_LIMIT: usize = 5000;

/// All automorphisms of a 2-generated group by exhaustive search over
/// generator images.
///
/// Images `(a, b)` of the generators `(x, y)` must match their orders and
/// class sizes and satisfy `order(ab) = order(xy)`; each surviving pair is
/// validated with [`build_map`].
pub fn aut_bruteforce(s: &Arc<GroupHandle>) -> Result<AutGroup> {
    if s.order() > BRUTE_FORCE_LIMIT {
        return Err(Error::cap("brute-force automorphism search", BRUTE_FORCE_LIMIT));
    }
    let [x, y] = *s.gens() else {
        return Err(Error::InvalidArgument(
            "brute-force automorphism search needs exactly two generators".into(),
        ));
    };
    let orders = s.element_orders();
    let mut class_size = vec![0usize; s.order()];
    for c in s.conjugacy_classes() {
        for &m in &c.members {
            class_size[m as usize] = c.members.len();
        }
    }
    let like = |t: u32| -> Vec<u32> {
        (0..s.order() as u32)
            .filter(|&c| {
                orders[c as usize] == orders[t as usize] && class_size[c as usize] == class_size[t as usize]
            })
            .collect()
    };
    let (xs, ys) = (like(x), like(y));
    let target = orders[s.mul(x, y) as usize];
    let orders = &orders;

    let found: Vec<(Vec<u32>, Vec<u32>)> = xs
        .par_iter()
        .flat_map_iter(|&a| {
            ys.iter()
                .filter(move |&&b| orders[s.mul(a, b) as usize] == target)
                .filter_map(move |&b| build_map(s, &[a, b]).map(|m| (vec![a, b], m)))
                .collect::<Vec<_>>()
        })
        .collect();

    // Greedy generating set: add each automorphism not yet reached.
    let all: HashSet<&Vec<u32>> = found.iter().map(|(t, _)| t).collect();
    let mut gens: Vec<(Vec<u32>, AutTag)> = Vec::new();
    let mut current = AutGroup::from_generators(s.clone(), Vec::new(), AutSource::BruteForce, all.len())?;
    for (t, _) in &found {
        if current.index_of_images(t).is_some() {
            continue;
        }
        gens.push((t.clone(), AutTag::Outer));
        current = AutGroup::from_generators(s.clone(), gens.clone(), AutSource::BruteForce, all.len())
            .map_err(|_| Error::NotClosed)?;
    }
    if current.order() != all.len() || current.image_tuples().iter().any(|t| !all.contains(t)) {
        return Err(Error::defect("brute-force automorphisms are not closed"));
    }
    Ok(current)
}

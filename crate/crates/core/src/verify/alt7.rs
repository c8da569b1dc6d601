use std::collections::BTreeSet;
use std::sync::Arc;

use serde_json::json;

use super::ClaimResult;
use crate::autgrp::{aut_constructed, inverters};
use crate::chirality::is_symmetric_pair;
use crate::error::{Error, Result};
use crate::families::build_alt;
use crate::permgrp::{close_generators, Perm, PermRule};

/// The published involutions inverting `(1,2,3,4,5,6,7)`. One entry repeats
/// a point and is not a permutation; see [`ALT7_DELTA1_TYPO`].
pub const ALT7_DELTA1_PRINTED: [&str; 7] = [
    "(2,7)(3,6)(2,4)",
    "(1,7)(2,6)(3,5)",
    "(1,6)(2,5)(3,4)",
    "(1,5)(2,4)(6,7)",
    "(1,4)(2,3)(5,7)",
    "(1,3)(4,7)(5,6)",
    "(1,2)(3,7)(4,6)",
];

/// The malformed published entry and the involution it stands for.
pub const ALT7_DELTA1_TYPO: (&str, &str) = ("(2,7)(3,6)(2,4)", "(2,7)(3,6)(4,5)");

/// The published involutions inverting `(1,2,3,4,6,7,5)`.
pub const ALT7_DELTA2_PRINTED: [&str; 7] = [
    "(2,5)(3,7)(4,6)",
    "(1,5)(2,7)(3,6)",
    "(1,7)(2,6)(3,4)",
    "(1,6)(2,4)(5,7)",
    "(1,4)(2,3)(5,6)",
    "(1,3)(4,5)(6,7)",
    "(1,2)(3,5)(4,7)",
];

fn sym7() -> Result<Vec<Perm>> {
    let gens = [
        Perm::parse_cycles(7, "(1,2)")?.images().to_vec(),
        Perm::parse_cycles(7, "(1,2,3,4,5,6,7)")?.images().to_vec(),
    ];
    let h = close_generators(Arc::new(PermRule::new(7)), &gens, 5040)?;
    (0..h.order() as u32)
        .map(|i| Perm::new(h.key(i).to_vec()))
        .collect()
}

/// Involutions of Sym(7) conjugating `s` to its inverse, straight from the
/// definition.
fn involution_inverters(sym: &[Perm], s: &Perm) -> BTreeSet<Perm> {
    let sinv = s.inverse();
    let id = Perm::identity(7);
    sym.iter()
        .filter(|p| s.conjugate_by(p) == sinv && p.compose(p) == id)
        .cloned()
        .collect()
}

fn strings(set: &BTreeSet<Perm>) -> Vec<String> {
    set.iter().map(|p| p.to_string()).collect()
}

fn parse_set(list: &[&str]) -> BTreeSet<Perm> {
    list.iter()
        .filter_map(|c| Perm::parse_cycles(7, c).ok())
        .collect()
}

/// Claims about the chiral pair `(1,2,3,4,5,6,7)`, `(1,2,3,4,6,7,5)` of Alt(7).
pub fn verify_alt7() -> Result<Vec<ClaimResult>> {
    let g = build_alt(7, 5040)?;
    let s = g.handle.clone();
    let [x, y] = [s.gens()[0], s.gens()[1]];
    let s1 = g
        .perm(x)
        .ok_or_else(|| Error::defect("Alt(7) is not a permutation group"))?;
    let s2 = g
        .perm(y)
        .ok_or_else(|| Error::defect("Alt(7) is not a permutation group"))?;
    let params = json!({ "s1": s1.to_string(), "s2": s2.to_string() });
    let mut out = vec![ClaimResult::equal(
        "alt7.generation",
        params.clone(),
        2520,
        s.order(),
    )];

    let a = aut_constructed(&g, 10_000)?;
    out.push(ClaimResult::equal(
        "alt7.aut_order",
        params.clone(),
        5040,
        a.order(),
    ));

    // Every permutation of Sym(7) induces a distinct automorphism.
    let sym = sym7()?;
    let mut induced = BTreeSet::new();
    for p in &sym {
        let imgs: Vec<u32> = [&s1, &s2]
            .iter()
            .map(|t| {
                s.index_of(t.conjugate_by(p).images())
                    .ok_or(Error::NotAnAutomorphism)
            })
            .collect::<Result<_>>()?;
        if let Some(alpha) = a.index_of_images(&imgs) {
            induced.insert(alpha);
        }
    }
    out.push(ClaimResult::equal(
        "alt7.aut_is_sym7",
        params.clone(),
        5040,
        induced.len(),
    ));

    let d1 = involution_inverters(&sym, &s1);
    let d2 = involution_inverters(&sym, &s2);
    out.push(ClaimResult::equal(
        "alt7.delta1_size",
        params.clone(),
        7,
        d1.len(),
    ));
    out.push(ClaimResult::equal(
        "alt7.delta2_size",
        params.clone(),
        7,
        d2.len(),
    ));

    // The involution inverters counted inside Aut(S) agree.
    let in_aut = (inverters(&a, x, true).size, inverters(&a, y, true).size);
    out.push(ClaimResult::equal(
        "alt7.delta_sizes_in_aut",
        params.clone(),
        (7, 7),
        in_aut,
    ));

    let printed1 = parse_set(&ALT7_DELTA1_PRINTED);
    let extra: Vec<String> = d1.difference(&printed1).map(|p| p.to_string()).collect();
    let pass1 = printed1.is_subset(&d1) && printed1.len() == 6 && extra == [ALT7_DELTA1_TYPO.1];
    out.push(
        ClaimResult::new(
            "alt7.delta1_matches_printed",
            params.clone(),
            json!(ALT7_DELTA1_PRINTED),
            json!(strings(&d1)),
            pass1,
        )
        .with_witness(json!({
            "malformed_entry": ALT7_DELTA1_TYPO.0,
            "missing_from_print": extra,
        })),
    );
    let printed2 = parse_set(&ALT7_DELTA2_PRINTED);
    out.push(ClaimResult::new(
        "alt7.delta2_matches_printed",
        params.clone(),
        json!(ALT7_DELTA2_PRINTED),
        json!(strings(&d2)),
        printed2 == d2,
    ));

    let common: Vec<String> = d1.intersection(&d2).map(|p| p.to_string()).collect();
    out.push(ClaimResult::equal(
        "alt7.delta_disjoint",
        params.clone(),
        0,
        common.len(),
    ));

    let witness = is_symmetric_pair(&a, x, y)?;
    out.push(ClaimResult::equal(
        "alt7.pair_not_symmetric",
        params,
        None,
        witness,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_typo_is_not_a_permutation() {
        assert!(Perm::parse_cycles(7, ALT7_DELTA1_TYPO.0).is_err());
        assert_eq!(parse_set(&ALT7_DELTA1_PRINTED).len(), 6);
        assert_eq!(parse_set(&ALT7_DELTA2_PRINTED).len(), 7);
    }
}

//! PSL(3,q) and PSU(3,q): Singer subgroups, their involutory inverters and
//! the conjugates of the graph (resp. field) involution.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::ClaimResult;
use crate::autgrp::{aut_constructed, expected_aut_order, subgroup_inverters, AutGroup};
use crate::chirality::{is_strongly_symmetric, is_symmetric_pair, Strategy, Verdict};
use crate::error::{Error, Result};
use crate::families::{build_group, BuiltGroup, GroupSpec, Realization};
use crate::gf::{gcd, FieldSpec, Gf};
use crate::matgrp::{
    build_matrix_group, canonicalize, classical_order, inverse_raw, transpose_raw, ClassicalKind,
};
use crate::permgrp::DEFAULT_CAP;

/// Cap used for PSU(3,5), whose automorphism group has 756000 elements.
pub const LONG_CAP: usize = 1_000_000;

/// One of the two rank-3 families with its distinguished involution `tau`:
/// inverse-transpose for PSL, the map `x -> x^q` for PSU.
struct Case {
    g: BuiltGroup,
    a: AutGroup,
    q: u64,
    unitary: bool,
    field: Arc<Gf>,
    tau: u32,
    /// Order of the Singer subgroups.
    m: u64,
}

impl Case {
    fn build(unitary: bool, q: u64, cap: usize) -> Result<Case> {
        if q < 3 {
            return Err(Error::InvalidArgument(format!(
                "q = {q} is not covered; q > 2 is needed"
            )));
        }
        let spec = if unitary {
            GroupSpec::psu(3, q)
        } else {
            GroupSpec::psl(3, q)
        };
        let g = build_group(spec, cap)?;
        let a = aut_constructed(&g, cap)?;
        let field = match &g.realization {
            Realization::Matrix { field, .. } => field.clone(),
            Realization::Perm { .. } => return Err(Error::defect("expected a matrix group")),
        };
        let s = &g.handle;
        let mut case = Case {
            a,
            q,
            unitary,
            field,
            tau: 0,
            m: 0,
            g: g.clone(),
        };
        let imgs = s
            .gens()
            .iter()
            .map(|&x| s.index_of(&case.tau_key(s.key(x))))
            .collect::<Option<Vec<u32>>>()
            .ok_or(Error::NotAnAutomorphism)?;
        case.tau = case.a.index_of_images(&imgs).ok_or(Error::NotAnAutomorphism)?;
        let d = gcd(3, if unitary { q + 1 } else { q - 1 });
        case.m = if unitary { q * q - q + 1 } else { q * q + q + 1 } / d;
        Ok(case)
    }

    fn prefix(&self) -> &'static str {
        if self.unitary {
            "psu3"
        } else {
            "psl3"
        }
    }

    fn params(&self) -> Value {
        json!({ "q": self.q })
    }

    /// `tau` on a 3x3 key, scalar-canonical.
    fn tau_key(&self, key: &[u8]) -> Vec<u8> {
        let f = self.field.as_ref();
        let mut out = if self.unitary {
            let k = f.k() / 2;
            key.iter().map(|&c| f.frob(c, k)).collect()
        } else {
            transpose_raw(3, &inverse_raw(f, 3, key).expect("invertible"))
        };
        canonicalize(f, &mut out);
        out
    }

    /// `q^2 + q + 1`, resp. `q^2 - q + 1`.
    fn delta_target(&self) -> u64 {
        let q = self.q;
        if self.unitary {
            q * q - q + 1
        } else {
            q * q + q + 1
        }
    }

    /// `|InnDiag : C(tau)| = (q^3 -+ 1) q^2`.
    fn inndiag_index(&self) -> u64 {
        let q = self.q;
        if self.unitary {
            (q * q * q + 1) * q * q
        } else {
            (q * q * q - 1) * q * q
        }
    }
}

/// The Singer subgroups as one S-class, with a conjugating element and a
/// generator for each.
struct SingerClass {
    /// Generator of the first subgroup found by element-order search.
    h: u32,
    subgroups: Vec<Vec<u32>>,
    trans: Vec<u32>,
    /// Number of cyclic subgroups of the right order, counted from element orders.
    n_cyclic: usize,
}

fn totient(mut m: u64) -> u64 {
    let mut out = m;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

fn singer_class(case: &Case) -> Result<SingerClass> {
    let s = &case.g.handle;
    let orders = s.element_orders();
    let with_order = orders.iter().filter(|&&o| o == case.m).count();
    let h = orders
        .iter()
        .position(|&o| o == case.m)
        .ok_or_else(|| Error::defect("no element of Singer order"))? as u32;
    let cyclic = |x: u32| -> Vec<u32> {
        let mut v: Vec<u32> = (0..case.m).map(|e| s.pow(x, e)).collect();
        v.sort_unstable();
        v
    };
    let first = cyclic(h);
    let mut seen: HashMap<Vec<u32>, usize> = HashMap::from([(first.clone(), 0)]);
    let mut subgroups = vec![first];
    let mut trans = vec![0u32];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for &c in s.gens() {
            let mut k: Vec<u32> = subgroups[i].iter().map(|&x| s.conj(x, c)).collect();
            k.sort_unstable();
            if !seen.contains_key(&k) {
                seen.insert(k.clone(), subgroups.len());
                trans.push(s.mul(trans[i], c));
                subgroups.push(k);
                queue.push_back(subgroups.len() - 1);
            }
        }
    }
    Ok(SingerClass {
        h,
        subgroups,
        trans,
        n_cyclic: with_order / totient(case.m) as usize,
    })
}

/// `Delta_K` for every Singer subgroup, obtained from `Delta_H` by
/// conjugating with the inner automorphism carrying `H` to `K`. Each member
/// is checked against a generator of `K`.
fn all_deltas(case: &Case, sc: &SingerClass, delta_h: &[u32]) -> Result<Vec<Vec<u32>>> {
    let (s, a) = (&case.g.handle, &case.a);
    sc.trans
        .par_iter()
        .map(|&t| {
            let sigma = a
                .inner(t)
                .ok_or_else(|| Error::defect("inner automorphism not in A"))?;
            let k = s.conj(sc.h, t);
            let kinv = s.inv(k);
            let mut v: Vec<u32> = delta_h.iter().map(|&al| a.group().conj(al, sigma)).collect();
            if v.iter()
                .any(|&al| a.apply(al, k) != kinv || a.group().mul(al, al) != 0)
            {
                return Err(Error::defect("conjugated inverter does not invert K"));
            }
            v.sort_unstable();
            Ok(v)
        })
        .collect()
}

fn meets(a: &[u32], b: &[u32]) -> bool {
    a.iter().any(|x| b.binary_search(x).is_ok())
}

/// Conjugacy class of `y` in A, ascending.
fn aut_class(a: &AutGroup, x: u32) -> Vec<u32> {
    let g = a.group();
    let mut seen = std::collections::HashSet::from([x]);
    let mut queue = VecDeque::from([x]);
    while let Some(y) = queue.pop_front() {
        for &c in g.gens() {
            let z = g.conj(y, c);
            if seen.insert(z) {
                queue.push_back(z);
            }
        }
    }
    let mut v: Vec<u32> = seen.into_iter().collect();
    v.sort_unstable();
    v
}

/// Sizes of the A-classes of the given elements, one entry per distinct
/// class met.
fn involution_classes(a: &AutGroup, members: &[u32]) -> Vec<(usize, usize)> {
    let mut classes: Vec<Vec<u32>> = Vec::new();
    let mut met: Vec<usize> = Vec::new();
    for &m in members {
        match classes.iter().position(|c| c.binary_search(&m).is_ok()) {
            Some(i) => met[i] += 1,
            None => {
                classes.push(aut_class(a, m));
                met.push(1);
            }
        }
    }
    classes.iter().map(Vec::len).zip(met).collect()
}

/// Number of elements of InnDiag (PGL(3,q) or PGU(3,q)) commuting with `tau`.
fn inndiag_centralizer(case: &Case, cap: usize) -> Result<usize> {
    let kind = if case.unitary {
        ClassicalKind::PGU
    } else {
        ClassicalKind::PGL
    };
    let g = build_matrix_group(kind, 3, &FieldSpec::of_order(case.q)?, cap)?;
    let h = g.handle();
    Ok((0..h.order() as u32)
        .into_par_iter()
        .filter(|&i| case.tau_key(h.key(i)) == h.key(i))
        .count())
}

/// A non-symmetric generating pair `(h, y)` with `y` generating a Singer
/// subgroup `K` such that `Delta_H` and `Delta_K` are disjoint. Falls back to
/// the general search if no such `K` yields a generating pair.
fn find_witness(case: &Case, sc: &SingerClass, deltas: &[Vec<u32>]) -> Result<(u32, u32, &'static str)> {
    let (s, a) = (&case.g.handle, &case.a);
    for (k, d) in sc.subgroups.iter().zip(deltas) {
        if meets(&deltas[0], d) {
            continue;
        }
        for &y in k {
            if s.order_of(y) == case.m && s.generates(sc.h, y) && is_symmetric_pair(a, sc.h, y)?.is_none() {
                return Ok((sc.h, y, "singer"));
            }
        }
    }
    match is_strongly_symmetric(a, Strategy::WitnessFirst, usize::MAX)? {
        Verdict::NotStronglySymmetric { witness } => Ok((witness.x, witness.y, "search")),
        Verdict::StronglySymmetric => Err(Error::defect("group turned out strongly symmetric")),
    }
}

fn rank3_claims(unitary: bool, q: u64, cap: usize) -> Result<Vec<ClaimResult>> {
    let case = Case::build(unitary, q, cap)?;
    let (s, a) = (&case.g.handle, &case.a);
    let (pre, params) = (case.prefix(), case.params());
    let id = |name: &str| format!("{pre}.{name}");
    let kind = if unitary {
        ClassicalKind::PSU
    } else {
        ClassicalKind::PSL
    };
    let mut out = vec![
        ClaimResult::equal(
            &id("order"),
            params.clone(),
            classical_order(kind, 3, q),
            Some(s.order() as u128),
        ),
        ClaimResult::equal(
            &id("aut_order"),
            params.clone(),
            expected_aut_order(&case.g),
            Some(a.order() as u128),
        ),
    ];

    let sc = singer_class(&case)?;
    out.push(
        ClaimResult::equal(
            &id("singer_single_class"),
            params.clone(),
            sc.n_cyclic,
            sc.subgroups.len(),
        )
        .with_witness(json!({ "singer_order": case.m, "h": case.g.describe(sc.h) })),
    );

    let dh = subgroup_inverters(a, &sc.subgroups[0], true)?;
    let cent_h = crate::autgrp::centralizer_in_aut(a, sc.h);
    let mut tags: BTreeMap<String, usize> = BTreeMap::new();
    for &c in &cent_h {
        *tags.entry(format!("{:?}", a.tag(c)).to_lowercase()).or_default() += 1;
    }
    out.push(
        ClaimResult::equal(
            &id("delta_h"),
            params.clone(),
            case.delta_target(),
            dh.size as u64,
        )
        .with_witness(json!({
            "centralizer_of_h_in_aut": cent_h.len(),
            "centralizer_tags": tags,
        })),
    );

    let c_inn = inndiag_centralizer(&case, cap)?;
    out.push(ClaimResult::equal(
        &id("inndiag_centralizer"),
        params.clone(),
        q * (q * q - 1),
        c_inn as u64,
    ));
    let sp2 = build_matrix_group(ClassicalKind::SP2, 2, &FieldSpec::of_order(q)?, cap)?;
    out.push(ClaimResult::equal(
        &id("inndiag_centralizer_is_sp2"),
        params.clone(),
        sp2.handle().order(),
        c_inn,
    ));

    let om2 = aut_class(a, case.tau);
    let c_tau = a.group().centralizer(case.tau).len();
    out.push(ClaimResult::equal(
        &id("omega2_orbit_stabilizer"),
        params.clone(),
        a.order() / c_tau,
        om2.len(),
    ));
    out.push(ClaimResult::new(
        &id("omega2_lower_bound"),
        params.clone(),
        json!({ "at_least": case.inndiag_index() }),
        json!(om2.len()),
        om2.len() as u64 >= case.inndiag_index(),
    ));
    out.push(ClaimResult::greater(
        &id("inequality"),
        params.clone(),
        case.delta_target().pow(2),
        case.inndiag_index(),
    ));
    out.push(ClaimResult::greater(
        &id("omega2_exceeds_delta_h_squared"),
        params.clone(),
        (dh.size as u64).pow(2),
        om2.len() as u64,
    ));

    let deltas = all_deltas(&case, &sc, &dh.members)?;
    let (x, y, route) = find_witness(&case, &sc, &deltas)?;
    let generates = s.generates(x, y);
    let symmetric = crate::chirality::is_symmetric_pair_relaxed(a, x, y).is_some();
    out.push(
        ClaimResult::new(
            &id("non_symmetric_pair"),
            params,
            json!({ "generates": true, "symmetric": false }),
            json!({ "generates": generates, "symmetric": symmetric }),
            generates && !symmetric,
        )
        .with_witness(json!({
            "x": x,
            "y": y,
            "x_matrix": case.g.describe(x),
            "y_matrix": case.g.describe(y),
            "route": route,
        })),
    );
    Ok(out)
}

/// Claims for PSL(3,q): Singer subgroups, `|Delta_H|`, the centralizer of
/// inverse-transpose in PGL(3,q), the index bound and a non-symmetric pair.
pub fn verify_psl3(q: u64) -> Result<Vec<ClaimResult>> {
    rank3_claims(false, q, DEFAULT_CAP)
}

/// As [`verify_psl3`] for PSU(3,q) with the field involution `x -> x^q`.
/// q = 5 needs [`LONG_CAP`].
pub fn verify_psu3(q: u64) -> Result<Vec<ClaimResult>> {
    rank3_claims(true, q, if q <= 3 { DEFAULT_CAP } else { LONG_CAP })
}

/// Double counting on the incidence between Singer subgroups `K` and the
/// conjugates `y` of inverse-transpose, `y ~ K` iff `y` lies in `Delta_K`.
pub fn double_count_check(q: u64) -> Result<Vec<ClaimResult>> {
    let case = Case::build(false, q, DEFAULT_CAP)?;
    let (s, a) = (&case.g.handle, &case.a);
    let params = case.params();
    let sc = singer_class(&case)?;
    let dh = subgroup_inverters(a, &sc.subgroups[0], true)?;
    let deltas = all_deltas(&case, &sc, &dh.members)?;
    let om2 = aut_class(a, case.tau);
    let gens: Vec<u32> = sc.trans.iter().map(|&t| s.conj(sc.h, t)).collect();
    let mut out = Vec::new();

    // Delta_K by conjugation against a direct scan, for a spread of K.
    let picks: Vec<usize> = (0..5).map(|i| i * sc.subgroups.len() / 5).collect();
    let direct_ok = picks.iter().try_fold(true, |ok, &i| -> Result<bool> {
        let direct = subgroup_inverters(a, &sc.subgroups[i], true)?;
        Ok(ok && direct.members == deltas[i])
    })?;
    out.push(ClaimResult::equal(
        "dc.delta_k_by_conjugation",
        params.clone(),
        true,
        direct_ok,
    ));

    // Edges counted from the Singer side via the Delta_K lists.
    let mut from_k: HashMap<u32, u64> = om2.iter().map(|&y| (y, 0)).collect();
    for d in &deltas {
        for y in d {
            if let Some(c) = from_k.get_mut(y) {
                *c += 1;
            }
        }
    }
    // And from the involution side, straight from the definition.
    let from_y: Vec<u64> = om2
        .par_iter()
        .map(|&y| gens.iter().filter(|&&k| a.apply(y, k) == s.inv(k)).count() as u64)
        .collect();
    let edges_k: u64 = from_k.values().sum();
    let edges_y: u64 = from_y.iter().sum();
    out.push(ClaimResult::equal(
        "dc.edges_two_ways",
        params.clone(),
        edges_k,
        edges_y,
    ));
    let agree = om2.iter().zip(&from_y).all(|(y, &c)| from_k[y] == c);
    out.push(ClaimResult::equal(
        "dc.incidence_agrees",
        params.clone(),
        true,
        agree,
    ));
    let mut values = from_y.clone();
    values.sort_unstable();
    values.dedup();
    out.push(
        ClaimResult::equal("dc.delta_y_constant", params.clone(), 1, values.len())
            .with_witness(json!({ "delta_y_values": values })),
    );
    let dy = values[0];

    let n1 = sc.subgroups.len() as u64;
    let dh_classes = involution_classes(a, &dh.members);
    let n2 = om2.len() as u64;
    out.push(
        ClaimResult::equal("dc.eq1", params.clone(), n1 * dh.size as u64, n2 * dy).with_witness(json!({
            "omega1": n1,
            "delta_h": dh.size,
            "omega2": n2,
            "delta_y": dy,
            "delta_h_in_omega2": dh.members.iter().filter(|m| om2.binary_search(m).is_ok()).count(),
            "delta_h_classes": dh_classes,
        })),
    );

    // The incidence only sees the members of Delta_H conjugate to tau.
    let dh_in_om2 = dh.members.iter().filter(|m| om2.binary_search(m).is_ok()).count() as u64;
    out.push(ClaimResult::equal(
        "dc.eq1_within_omega2",
        params.clone(),
        n1 * dh_in_om2,
        n2 * dy,
    ));

    let omega_h = deltas.iter().filter(|d| meets(&deltas[0], d)).count() as u64;
    let bound = dy * dh.size as u64;
    out.push(ClaimResult::new(
        "dc.eq2",
        params.clone(),
        json!({ "at_most": bound }),
        json!(omega_h),
        omega_h <= bound,
    ));
    out.push(ClaimResult::greater(
        "dc.disjoint_k_exists",
        params,
        0,
        n1 - omega_h,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totients() {
        assert_eq!(totient(13), 12);
        assert_eq!(totient(21), 12);
        assert_eq!(totient(7), 6);
        assert_eq!(totient(1), 1);
    }
}

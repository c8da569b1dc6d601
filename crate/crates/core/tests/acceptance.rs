//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Two criteria contain parts that do not hold as stated. Those print FAIL
//! with the measured values; the run itself only fails if a measurement
//! drifts from the value pinned here, or if any other criterion fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;

use hyperchiral::autgrp::{aut_bruteforce, aut_constructed, cross_check, AutGroup};
use hyperchiral::chirality::{delta_statistic, hypermap_census, is_symmetric_pair_relaxed, CensusReport};
use hyperchiral::families::{build_group, GroupSpec};
use hyperchiral::gf::FieldSpec;
use hyperchiral::matgrp::verify_singer_lemma;
use hyperchiral::verify::{
    double_count_check, verify_alt7, verify_macbeath, verify_psl3, verify_psu3, ClaimResult, MACBEATH_QS,
};
use num_rational::Ratio;

/// `|Delta_H|` for PSL(3,4) as measured (21 expected).
const KNOWN_DELTA_H_Q4: u64 = 28;
/// Singer lemma over GF(4): solutions and counterexamples as measured
/// (63 and 0 expected).
const KNOWN_LEMMA_Q4: (u64, usize) = (126, 63);

const MIN: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    /// The failure is a pinned discrepancy, not a regression.
    known: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            known: false,
            detail: detail.into(),
        }
    }
}

fn claim<'a>(claims: &'a [ClaimResult], id: &str) -> &'a ClaimResult {
    claims
        .iter()
        .find(|c| c.claim_id == id)
        .unwrap_or_else(|| panic!("missing claim {id}"))
}

fn all_pass(claims: &[ClaimResult]) -> Result<(), String> {
    let failed: Vec<String> = claims
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{} {}", c.claim_id, c.params))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(failed.join(", "))
    }
}

fn aut(spec: GroupSpec) -> AutGroup {
    aut_constructed(&build_group(spec, 100_000).unwrap(), 1_000_000).unwrap()
}

fn alt7_deltas() -> Outcome {
    let claims = verify_alt7().unwrap();
    let d1 = claim(&claims, "alt7.delta1_size");
    let d2 = claim(&claims, "alt7.delta2_size");
    match all_pass(&claims) {
        Ok(()) => Outcome::new(
            true,
            format!(
                "|D1| = {}, |D2| = {}, disjoint, D2 equals the printed list, D1 equals it with (2,7)(3,6)(4,5) for the malformed entry",
                d1.computed, d2.computed
            ),
        ),
        Err(e) => Outcome::new(false, format!("failed: {e}")),
    }
}

fn eq3() -> Outcome {
    let c3 = verify_psl3(3).unwrap();
    let c4 = verify_psl3(4).unwrap();
    let d3 = claim(&c3, "psl3.delta_h");
    let d4 = claim(&c4, "psl3.delta_h");
    let pinned = d4.computed == KNOWN_DELTA_H_Q4;
    let mut out = Outcome::new(
        d3.pass && d4.pass,
        format!(
            "q=3: |D_H| = {} (expected 13); q=4: |D_H| = {} (expected 21). Over GF(4) the Frobenius map composed with \
             inverse-transpose and a suitable PGL element also inverts H, giving 7 involutions outside the dihedral \
             group <g, iota>; C_A(h) has order 42, not 21",
            d3.computed, d4.computed
        ),
    );
    out.known = d3.pass && pinned;
    out
}

fn centralizers() -> Outcome {
    let l = verify_psl3(3).unwrap();
    let u = verify_psu3(3).unwrap();
    let ids = [
        (&l, "psl3.inndiag_centralizer"),
        (&l, "psl3.inndiag_centralizer_is_sp2"),
        (&u, "psu3.inndiag_centralizer"),
        (&u, "psu3.inndiag_centralizer_is_sp2"),
    ];
    let pass = ids
        .iter()
        .all(|(c, id)| claim(c, id).pass && claim(c, id).computed == 24);
    Outcome::new(
        pass,
        format!(
            "|C_PGL(3,3)(iota)| = {}, |Sp(2,3)| = {}, |C_PGU(3,3)(phi)| = {}",
            claim(&l, ids[0].1).computed,
            claim(&l, ids[1].1).expected,
            claim(&u, ids[2].1).computed
        ),
    )
}

fn double_count() -> Outcome {
    let c3 = double_count_check(3).unwrap();
    let c4 = double_count_check(4).unwrap();
    let q4_general = [
        "dc.delta_y_constant",
        "dc.edges_two_ways",
        "dc.eq2",
        "dc.disjoint_k_exists",
        "dc.eq1_within_omega2",
    ];
    let pass = all_pass(&c3).is_ok() && q4_general.iter().all(|id| claim(&c4, id).pass);
    let eq1 = claim(&c3, "dc.eq1");
    let w = eq1.witness.as_ref().unwrap();
    Outcome::new(
        pass,
        format!(
        "q=3: |O1| = {}, |D_H| = {}, |O2| = {}, delta_y = {} on all of O2, omega_H = {} <= {}, {} disjoint K",
        w["omega1"], w["delta_h"], w["omega2"], w["delta_y"],
        claim(&c3, "dc.eq2").computed, claim(&c3, "dc.eq2").expected["at_most"],
        claim(&c3, "dc.disjoint_k_exists").computed
    ),
    )
}

fn macbeath() -> Outcome {
    let claims = verify_macbeath(&MACBEATH_QS).unwrap();
    match all_pass(&claims) {
        Ok(()) => Outcome::new(
            true,
            format!("PSL(2,q) strongly symmetric for q in {MACBEATH_QS:?}"),
        ),
        Err(e) => Outcome::new(false, e),
    }
}

fn negative_direction() -> Outcome {
    let mut found = vec![];
    let mut pass = claim(&verify_alt7().unwrap(), "alt7.pair_not_symmetric").pass;
    found.push("Alt(7)".to_string());
    for (name, claims, id) in [
        ("PSL(3,3)", verify_psl3(3).unwrap(), "psl3.non_symmetric_pair"),
        ("PSL(3,4)", verify_psl3(4).unwrap(), "psl3.non_symmetric_pair"),
        ("PSU(3,3)", verify_psu3(3).unwrap(), "psu3.non_symmetric_pair"),
        ("PSU(3,5)", verify_psu3(5).unwrap(), "psu3.non_symmetric_pair"),
    ] {
        let c = claim(&claims, id);
        pass &= c.pass;
        let w = c.witness.as_ref().unwrap();
        found.push(format!("{name} (#{}, #{})", w["x"], w["y"]));
    }
    Outcome::new(
        pass,
        format!("generating, non-symmetric pairs for {}", found.join(", ")),
    )
}

fn lemma() -> Outcome {
    let mut parts = vec![];
    let mut ok_small = true;
    for q in [2u64, 3] {
        let r = verify_singer_lemma(3, &FieldSpec::of_order(q).unwrap()).unwrap();
        ok_small &= r.holds() && r.solutions == q.pow(3) - 1;
        parts.push(format!("q={q}: {} solutions, all in <g>", r.solutions));
    }
    let spec4 = FieldSpec::of_order(4).unwrap();
    let r4 = verify_singer_lemma(3, &spec4).unwrap();
    // Every extra solution is Frobenius-semilinear with z of order 3 and eps = 1.
    let shape = r4
        .counterexamples
        .iter()
        .all(|c| c.frob == 1 && c.epsilon == 1 && spec4.element_order(&c.z).unwrap() == 3);
    parts.push(format!(
        "q=4: {} solutions (expected 63), {} outside <g>, each with field exponent 1, eps = 1 and z of order 3: \
         on GF(64) = GF(4)^3 the map v -> v^8 is semilinear with the Frobenius of GF(4) and sends x to x^8 = x^7 x, \
         where x^7 is a nontrivial scalar",
        r4.solutions,
        r4.counterexamples.len()
    ));
    let mut out = Outcome::new(ok_small && r4.holds(), parts.join("; "));
    out.known = ok_small && shape && (r4.solutions, r4.counterexamples.len()) == KNOWN_LEMMA_Q4;
    out
}

fn census_of(spec: GroupSpec) -> (AutGroup, CensusReport) {
    let a = aut(spec);
    let r = hypermap_census(&spec.to_string(), &a, 10_000).unwrap();
    (a, r)
}

fn census_invariants(censuses: &[(AutGroup, CensusReport)]) -> Outcome {
    let mut pass = true;
    let mut parts = vec![];
    for (a, r) in censuses {
        let free = r.n_orbits as u64 * a.order() as u64 == r.n_generating_pairs;
        let even = r.n_chiral % 2 == 0;
        let reps: HashSet<[u32; 2]> = r.classes.iter().map(|c| c.rep).collect();
        let by_rep: std::collections::HashMap<[u32; 2], [u32; 2]> =
            r.classes.iter().map(|c| (c.rep, c.mirror)).collect();
        let pairing = r
            .classes
            .iter()
            .filter(|c| !c.reflexible)
            .all(|c| c.mirror != c.rep && reps.contains(&c.mirror) && by_rep[&c.mirror] == c.rep);
        let agree = r.classes.iter().all(|c| {
            (c.mirror == c.rep) == c.reflexible
                && is_symmetric_pair_relaxed(a, c.rep[0], c.rep[1]).is_some() == c.reflexible
        });
        pass &= free && even && pairing && agree;
        parts.push(format!(
            "{}: {} orbits x {} = {} pairs, {} chiral",
            r.group,
            r.n_orbits,
            a.order(),
            r.n_generating_pairs,
            r.n_chiral
        ));
    }
    Outcome::new(pass, parts.join("; "))
}

/// Naive count over all ordered pairs of Alt(5); symmetric means conjugated to
/// the inverses by one element of Sym(5).
fn naive_alt5() -> (u64, u64) {
    type P = [u8; 5];
    let comp = |a: &P, b: &P| -> P { std::array::from_fn(|i| b[a[i] as usize]) };
    let inv = |a: &P| -> P {
        let mut o = [0u8; 5];
        a.iter().enumerate().for_each(|(i, &x)| o[x as usize] = i as u8);
        o
    };
    let sym: Vec<P> = (0..5u8).permutations(5).map(|p| p.try_into().unwrap()).collect();
    let even = |a: &P| (0..5).tuple_combinations().filter(|&(i, j)| a[i] > a[j]).count() % 2 == 0;
    let alt: Vec<P> = sym.iter().copied().filter(|p| even(p)).collect();
    let (mut gen, mut symm) = (0, 0);
    for (x, y) in alt.iter().cartesian_product(&alt) {
        let mut seen: HashSet<P> = HashSet::from([[0, 1, 2, 3, 4]]);
        let mut stack = vec![[0u8, 1, 2, 3, 4]];
        while let Some(g) = stack.pop() {
            for h in [comp(&g, x), comp(&g, y)] {
                if seen.insert(h) {
                    stack.push(h);
                }
            }
        }
        if seen.len() != 60 {
            continue;
        }
        gen += 1;
        let (xi, yi) = (inv(x), inv(y));
        if sym
            .iter()
            .any(|p| comp(&comp(&inv(p), x), p) == xi && comp(&comp(&inv(p), y), p) == yi)
        {
            symm += 1;
        }
    }
    (gen, symm)
}

fn delta_checks(censuses: &[(AutGroup, CensusReport)]) -> Outcome {
    let t = Instant::now();
    let naive = naive_alt5();
    let oracle_time = t.elapsed();
    let a5 = &censuses[0].0;
    let d5 = delta_statistic("Alt(5)", a5, 10_000).unwrap();
    let mut pass = naive == (2280, 2280)
        && (d5.n_generating_pairs, d5.n_symmetric_pairs) == naive
        && d5.delta == Ratio::from_integer(1)
        && oracle_time < Duration::from_secs(1);
    let mut alt7 = Ratio::from_integer(1);
    for (a, r) in censuses {
        let exact = delta_statistic(&r.group, a, 10_000).unwrap();
        pass &= exact.delta == r.delta() && exact.n_generating_pairs == r.n_generating_pairs;
        if r.group == "Alt(7)" {
            alt7 = r.delta();
        }
    }
    pass &= alt7 < Ratio::from_integer(1);
    Outcome::new(pass, format!(
        "delta(Alt(5)) = {} over {} pairs, naive oracle {:?} in {:.0?}; delta(Alt(7)) = {}/{}; delta = reflexible/orbits on every census",
        d5.delta, d5.n_generating_pairs, naive, oracle_time, alt7.numer(), alt7.denom()
    ))
}

fn aut_oracles() -> Outcome {
    let mut pass = true;
    let mut parts = vec![];
    for spec in [
        GroupSpec::alt(5),
        GroupSpec::psl(2, 7),
        GroupSpec::psl(2, 8),
        GroupSpec::alt(6),
        GroupSpec::psl(2, 9),
    ] {
        let g = build_group(spec, 10_000).unwrap();
        let c = aut_constructed(&g, 100_000).unwrap();
        let b = aut_bruteforce(&g.handle).unwrap();
        match cross_check(&c, &b) {
            Ok(n) => parts.push(format!("{spec}: {n}")),
            Err(e) => {
                pass = false;
                parts.push(format!("{spec}: {e}"));
            }
        }
    }
    Outcome::new(pass, format!("identical automorphism sets, {}", parts.join(", ")))
}

fn main() -> ExitCode {
    let mut regressions = 0;
    let mut report = |n: u32, budget: Duration, run: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let o = run();
        let elapsed = t.elapsed();
        let in_time = elapsed <= budget;
        let status = if o.pass && in_time { "PASS" } else { "FAIL" };
        println!(
            "criterion {n:>2}: {status}  [{elapsed:.1?}, budget {budget:.0?}]  {}",
            o.detail
        );
        if !in_time || (!o.pass && !o.known) {
            regressions += 1;
        }
    };
    report(1, Duration::from_secs(10), &alt7_deltas);
    report(2, 5 * MIN, &eq3);
    report(3, 5 * MIN, &centralizers);
    report(4, 10 * MIN, &double_count);
    report(5, 15 * MIN, &macbeath);
    report(6, 30 * MIN, &negative_direction);
    report(7, 10 * MIN, &lemma);
    let t = Instant::now();
    let censuses: Vec<(AutGroup, CensusReport)> = [
        GroupSpec::alt(5),
        GroupSpec::psl(2, 7),
        GroupSpec::alt(6),
        GroupSpec::alt(7),
    ]
    .into_iter()
    .map(census_of)
    .collect();
    let census_time = t.elapsed();
    report(8, 30 * MIN - census_time, &|| census_invariants(&censuses));
    report(9, 10 * MIN, &|| delta_checks(&censuses));
    report(10, 10 * MIN, &aut_oracles);
    if regressions == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{regressions} criteria regressed");
        ExitCode::FAILURE
    }
}

use std::collections::HashSet;

use super::{AutGroup, AutSource, AutTag};
use crate::error::{Error, Result};
use crate::families::{BuiltGroup, Family, Realization};
use crate::gf::{gcd, prime_power};
use crate::matgrp::{canonicalize, inverse_raw, mul_into, transpose_raw, ClassicalKind};
use crate::permgrp::Perm;

/// Images of the adjacent transpositions `(i, i+1)` of Sym(6) under an
/// outer automorphism.
const SYM6_OUTER: [&str; 5] = [
    "(1,2)(3,4)(5,6)",
    "(1,3)(2,5)(4,6)",
    "(1,2)(3,6)(4,5)",
    "(1,3)(2,4)(5,6)",
    "(1,2)(3,5)(4,6)",
];

/// Order of `Aut(S)` for the simple families.
pub fn expected_aut_order(g: &BuiltGroup) -> Option<u128> {
    let order = g.order() as u128;
    let spec = g.spec;
    match spec.family {
        Family::Alt => match spec.n {
            6 => Some(1440),
            n if n >= 5 => Some(2 * order),
            _ => None,
        },
        Family::Classical(ClassicalKind::PSL) => {
            let (_, k) = prime_power(spec.q)?;
            let d = gcd(spec.n as u64, spec.q - 1) as u128;
            let graph = if spec.n >= 3 { 2 } else { 1 };
            Some(order * d * k as u128 * graph)
        }
        Family::Classical(ClassicalKind::PSU) => {
            let (_, k) = prime_power(spec.q)?;
            let d = gcd(spec.n as u64, spec.q + 1) as u128;
            Some(order * d * 2 * k as u128)
        }
        _ => None,
    }
}

/// `Aut(S)` for Alt(n), PSL(n,q) and PSU(n,q), generated by inner
/// automorphisms together with
///
/// * Alt(n): conjugation by Sym(n), plus the exceptional automorphism of Sym(6);
/// * PSL(n,q): a diagonal automorphism, the Frobenius map, and inverse-transpose for n >= 3;
/// * PSU(n,q): a diagonal unitary automorphism and the Frobenius map of GF(q^2).
pub fn aut_constructed(g: &BuiltGroup, cap: usize) -> Result<AutGroup> {
    let s = &g.handle;
    let gen_keys: Vec<Vec<u8>> = s.gens().iter().map(|&x| s.key(x).to_vec()).collect();
    let lookup = |key: &[u8]| -> Result<u32> { s.index_of(key).ok_or(Error::NotAnAutomorphism) };
    let mut gens: Vec<(Vec<u32>, AutTag)> = s
        .gens()
        .iter()
        .map(|&c| (s.gens().iter().map(|&x| s.conj(x, c)).collect(), AutTag::Inner))
        .collect();
    let mut push = |tag: AutTag, f: &dyn Fn(&[u8]) -> Vec<u8>| -> Result<()> {
        let imgs = gen_keys
            .iter()
            .map(|k| lookup(&f(k)))
            .collect::<Result<Vec<u32>>>()?;
        gens.push((imgs, tag));
        Ok(())
    };

    match (&g.realization, g.spec.family) {
        (Realization::Perm { degree }, Family::Alt) => {
            let n = *degree;
            let conj_by =
                |p: Perm| move |k: &[u8]| Perm::new(k.to_vec()).unwrap().conjugate_by(&p).images().to_vec();
            push(AutTag::Outer, &conj_by(Perm::parse_cycles(n, "(1,2)")?))?;
            let long: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            push(
                AutTag::Outer,
                &conj_by(Perm::parse_cycles(n, &format!("({})", long.join(",")))?),
            )?;
            if n == 6 {
                let images: Vec<Perm> = SYM6_OUTER
                    .iter()
                    .map(|c| Perm::parse_cycles(6, c))
                    .collect::<Result<_>>()?;
                push(AutTag::Outer, &|k: &[u8]| {
                    Perm::new(k.to_vec())
                        .unwrap()
                        .adjacent_transposition_word()
                        .iter()
                        .fold(Perm::identity(6), |acc, &i| acc.compose(&images[i]))
                        .images()
                        .to_vec()
                })?;
            }
        }
        (Realization::Matrix { kind, n, q, field }, Family::Classical(fk)) if fk == *kind => {
            let (n, f) = (*n, field.as_ref());
            let conj_by = |m: Vec<u8>| {
                let minv = inverse_raw(f, n, &m).expect("invertible");
                move |k: &[u8]| {
                    let mut t = vec![0u8; n * n];
                    let mut out = vec![0u8; n * n];
                    mul_into(f, n, &minv, k, &mut t);
                    mul_into(f, n, &t, &m, &mut out);
                    canonicalize(f, &mut out);
                    out
                }
            };
            let frob = |k: &[u8]| {
                let mut out: Vec<u8> = k.iter().map(|&c| f.frob(c, 1)).collect();
                canonicalize(f, &mut out);
                out
            };
            let mut diag = vec![0u8; n * n];
            for i in 0..n {
                diag[i * n + i] = 1;
            }
            match kind {
                ClassicalKind::PSL => {
                    diag[0] = f.primitive();
                    push(AutTag::Diagonal, &conj_by(diag))?;
                    if f.k() > 1 {
                        push(AutTag::Field, &frob)?;
                    }
                    if n >= 3 {
                        push(AutTag::Graph, &|k: &[u8]| {
                            let mut out = transpose_raw(n, &inverse_raw(f, n, k).expect("invertible"));
                            canonicalize(f, &mut out);
                            out
                        })?;
                    }
                }
                ClassicalKind::PSU => {
                    // An element of order q+1 in GF(q^2) has norm 1.
                    diag[0] = f.pow(f.primitive(), *q - 1);
                    push(AutTag::Diagonal, &conj_by(diag))?;
                    push(AutTag::Field, &frob)?;
                }
                _ => return Err(Error::UnsupportedGroup(g.name())),
            }
        }
        _ => return Err(Error::UnsupportedGroup(g.name())),
    }
    let aut = AutGroup::from_generators(s.clone(), gens, AutSource::Constructed, cap)?;
    if let Some(expected) = expected_aut_order(g) {
        if aut.order() as u128 != expected {
            return Err(Error::defect(format!(
                "Aut({}) has {} elements, expected {expected}",
                g.name(),
                aut.order()
            )));
        }
    }
    Ok(aut)
}

/// Checks that two automorphism groups of the same parent consist of the
/// same maps. Returns the common order.
pub fn cross_check(a: &AutGroup, b: &AutGroup) -> Result<usize> {
    if !std::sync::Arc::ptr_eq(a.parent(), b.parent()) && a.parent().order() != b.parent().order() {
        return Err(Error::defect("automorphism groups of different parents"));
    }
    let maps = |x: &AutGroup| -> HashSet<Vec<u32>> { (0..x.order() as u32).map(|i| x.full_map(i)).collect() };
    let (ma, mb) = (maps(a), maps(b));
    if ma.len() != a.order() || mb.len() != b.order() {
        return Err(Error::defect("automorphism group contains repeated maps"));
    }
    if ma != mb {
        return Err(Error::defect(format!(
            "automorphism sets differ: {} vs {} maps, {} in common",
            ma.len(),
            mb.len(),
            ma.intersection(&mb).count()
        )));
    }
    Ok(ma.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_group, GroupSpec};

    #[test]
    fn constructed_orders() {
        for (spec, order) in [
            (GroupSpec::alt(5), 120),
            (GroupSpec::alt(6), 1440),
            (GroupSpec::psl(2, 7), 336),
            (GroupSpec::psl(2, 8), 1512),
            (GroupSpec::psl(2, 9), 1440),
            (GroupSpec::psl(3, 2), 336),
            (GroupSpec::psu(3, 3), 12096),
        ] {
            let g = build_group(spec, 100_000).unwrap();
            let a = aut_constructed(&g, 100_000).unwrap();
            assert_eq!(a.order(), order, "{spec}");
            assert_eq!(a.summary().inner, g.order(), "{spec}");
        }
    }

    #[test]
    fn tags_of_psl33() {
        let g = build_group(GroupSpec::psl(3, 3), 100_000).unwrap();
        let a = aut_constructed(&g, 100_000).unwrap();
        let inner = (0..a.order() as u32)
            .filter(|&x| a.tag(x) == AutTag::Inner)
            .count();
        let graph = (0..a.order() as u32)
            .filter(|&x| a.tag(x) == AutTag::Graph)
            .count();
        assert_eq!(inner, 5616);
        assert_eq!(graph, 5616);
    }
}

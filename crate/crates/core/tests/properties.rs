use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use hyperchiral::autgrp::{aut_constructed, AutGroup};
use hyperchiral::chirality::{check_inverter_is_involution, is_symmetric_pair_relaxed};
use hyperchiral::families::{build_group, GroupSpec};
use hyperchiral::gf::{FieldSpec, Gf};
use hyperchiral::matgrp::{build_matrix_group, singer_cycle, ClassicalKind, Mat, MatrixGroup, ProjMat};
use hyperchiral::permgrp::GroupHandle;

const QS: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27];

fn field(q: u64) -> Arc<Gf> {
    Arc::new(Gf::of_order(q).unwrap())
}

fn aut(spec: GroupSpec) -> AutGroup {
    aut_constructed(&build_group(spec, 100_000).unwrap(), 1_000_000).unwrap()
}

fn alt6() -> &'static AutGroup {
    static A: OnceLock<AutGroup> = OnceLock::new();
    A.get_or_init(|| aut(GroupSpec::alt(6)))
}

fn psl28() -> &'static AutGroup {
    static A: OnceLock<AutGroup> = OnceLock::new();
    A.get_or_init(|| aut(GroupSpec::psl(2, 8)))
}

fn psl33() -> &'static AutGroup {
    static A: OnceLock<AutGroup> = OnceLock::new();
    A.get_or_init(|| aut(GroupSpec::psl(3, 3)))
}

fn sl(q: u64) -> MatrixGroup {
    build_matrix_group(ClassicalKind::SL, 3, &FieldSpec::of_order(q).unwrap(), 100_000).unwrap()
}

fn matrix(f: &Arc<Gf>, n: usize, seed: &[u8]) -> Mat {
    let q = f.q() as u8;
    let entries = seed.iter().take(n * n).map(|&c| c % q).collect();
    Mat::from_entries(f.clone(), n, entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(qi in 0..QS.len(), a in any::<u8>(), b in any::<u8>(), c in any::<u8>()) {
        let f = field(QS[qi]);
        let q = f.q() as u8;
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            prop_assert_eq!(f.pow(a, f.q() as u64 - 1), 1);
        }
        // The Frobenius map is a ring homomorphism.
        for i in 0..f.k() {
            prop_assert_eq!(f.frob(f.add(a, b), i), f.add(f.frob(a, i), f.frob(b, i)));
            prop_assert_eq!(f.frob(f.mul(a, b), i), f.mul(f.frob(a, i), f.frob(b, i)));
        }
    }

    #[test]
    fn tables_agree_with_polynomial_arithmetic(qi in 0..QS.len(), a in any::<u8>(), b in any::<u8>(), e in 0u64..1000) {
        let f = field(QS[qi]);
        let s = f.spec();
        let q = f.q() as u8;
        let (a, b) = (a % q, b % q);
        let (x, y) = (f.element(a), f.element(b));
        prop_assert_eq!(f.code(&x), a);
        prop_assert_eq!(f.add(a, b), f.code(&s.add(&x, &y)));
        prop_assert_eq!(f.mul(a, b), f.code(&s.mul(&x, &y)));
        prop_assert_eq!(f.pow(a, e), f.code(&s.pow(&x, e)));
        prop_assert_eq!(f.inv(a), s.inv(&x).ok().map(|z| f.code(&z)));
        for i in 0..f.k() {
            prop_assert_eq!(f.frob(a, i), f.code(&s.frobenius(&x, i).unwrap()));
        }
    }

    #[test]
    fn projective_canonical_form(qi in 0..6usize, seed in prop::collection::vec(any::<u8>(), 9), c in 1u8..=255) {
        let f = field(QS[qi]);
        let m = matrix(&f, 3, &seed);
        let c = 1 + c % (f.q() as u8 - 1);
        let p = ProjMat::new(m.clone());
        let scaled = ProjMat::new(m.scale(c));
        prop_assert_eq!(p.key(), scaled.key());
        if let Some(&first) = p.key().iter().find(|&&x| x != 0) {
            prop_assert_eq!(first, 1);
        }
    }

    #[test]
    fn cayley_hamilton(qi in 0..QS.len(), n in 1usize..=4, seed in prop::collection::vec(any::<u8>(), 16)) {
        let f = field(QS[qi]);
        let m = matrix(&f, n, &seed);
        let chi = m.char_poly();
        prop_assert_eq!(chi.degree(), Some(n));
        prop_assert!(chi.is_monic());
        prop_assert!(m.eval_poly(&chi).entries().iter().all(|&x| x == 0));
    }

    #[test]
    fn lagrange(x in 0u32..360, y in 0u32..360) {
        let s = alt6().parent();
        let n = s.order();
        prop_assert_eq!(n % s.order_of(x) as usize, 0);
        prop_assert_eq!(n % s.subgroup_generated(&[x, y]).len(), 0);
    }

    #[test]
    fn inverse_transpose_is_an_automorphism(q in 2u64..=3, i in any::<u32>(), j in any::<u32>()) {
        static GROUPS: OnceLock<Vec<MatrixGroup>> = OnceLock::new();
        let groups = GROUPS.get_or_init(|| vec![sl(2), sl(3)]);
        let g = &groups[q as usize - 2];
        let n = g.handle().order() as u32;
        let (x, y) = (g.mat(i % n), g.mat(j % n));
        let iota = |m: &Mat| m.inverse_transpose().unwrap();
        prop_assert_eq!(iota(&x.mul(&y)), iota(&x).mul(&iota(&y)));
        prop_assert!(g.index_of(&iota(&x)).is_some());
    }

    #[test]
    fn automorphisms_respect_products(alpha in any::<u32>(), s in any::<u32>(), t in any::<u32>()) {
        let a = psl33();
        let p = a.parent();
        let (alpha, s, t) = (alpha % a.order() as u32, s % p.order() as u32, t % p.order() as u32);
        prop_assert_eq!(a.apply(alpha, p.mul(s, t)), p.mul(a.apply(alpha, s), a.apply(alpha, t)));
        prop_assert_eq!(a.apply_inv(alpha, a.apply(alpha, s)), s);
    }

    #[test]
    fn symmetry_is_aut_invariant(alpha in any::<u32>(), x in any::<u32>(), y in any::<u32>()) {
        let a = psl28();
        let s: &GroupHandle = a.parent();
        let (alpha, x, y) = (alpha % a.order() as u32, x % s.order() as u32, y % s.order() as u32);
        let before = is_symmetric_pair_relaxed(a, x, y).is_some();
        let after = is_symmetric_pair_relaxed(a, a.apply(alpha, x), a.apply(alpha, y)).is_some();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn witnesses_are_involutions(x in 0u32..360, y in 0u32..360) {
        let a = alt6();
        if a.parent().generates(x, y) {
            let w = is_symmetric_pair_relaxed(a, x, y);
            prop_assert!(w.is_some());
            prop_assert!(check_inverter_is_involution(a, x, y, w.unwrap()).is_ok());
        }
    }
}

#[test]
fn classes_partition_the_group() {
    for spec in [GroupSpec::alt(6), GroupSpec::psl(2, 8), GroupSpec::psu(3, 3)] {
        let g = build_group(spec, 100_000).unwrap();
        let s = &g.handle;
        let classes = s.conjugacy_classes();
        let mut seen = vec![false; s.order()];
        for c in &classes {
            assert_eq!(s.order() % c.members.len(), 0, "{spec}");
            for &m in &c.members {
                assert!(!seen[m as usize]);
                seen[m as usize] = true;
                assert_eq!(s.order_of(m), c.element_order);
            }
        }
        assert!(seen.into_iter().all(|b| b));
    }
}

#[test]
fn singer_cycles_act_regularly() {
    for (n, q) in [(3, 2), (3, 3), (3, 4), (2, 5), (4, 2), (2, 9)] {
        let spec = FieldSpec::of_order(q).unwrap();
        let sd = singer_cycle(n, &spec).unwrap();
        let f = sd.g.field().clone();
        // The orbit of e_1 under <g> is every nonzero vector.
        let mut v = vec![0u8; n];
        v[0] = 1;
        let mut seen = std::collections::HashSet::new();
        for _ in 0..sd.ord_g {
            assert!(seen.insert(v.clone()), "({n},{q})");
            let mut w = vec![0u8; n];
            for (i, &vi) in v.iter().enumerate() {
                for (j, wj) in w.iter_mut().enumerate() {
                    *wj = f.add(*wj, f.mul(vi, sd.g.get(i, j)));
                }
            }
            v = w;
        }
        assert_eq!(seen.len() as u64, q.pow(n as u32) - 1);
        assert_eq!(v[0], 1);
        assert!(v[1..].iter().all(|&x| x == 0));
        // Its characteristic polynomial is the primitive polynomial it came from.
        assert_eq!(sd.g.char_poly(), sd.poly);
        assert!(f.is_primitive_poly(&sd.poly));
    }
}

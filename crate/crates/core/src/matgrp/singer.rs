use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{gcd, FieldElement, FieldSpec, Gf, Polynomial};
use crate::matgrp::mat::{det_raw, mul_into, Mat};

/// A Singer cycle `g` of GL(n,q) and its power `x = g^gcd(n, q-1)`.
#[derive(Clone, Debug)]
pub struct SingerData {
    pub poly: Polynomial,
    pub g: Mat,
    pub x: Mat,
    pub ord_g: u64,
    pub ord_x: u64,
}

/// Companion matrix of the least primitive polynomial of degree `n` over GF(q).
pub fn singer_cycle(n: usize, spec: &FieldSpec) -> Result<SingerData> {
    let field = Arc::new(Gf::new(spec.clone())?);
    singer_cycle_over(n, &field)
}

pub fn singer_cycle_over(n: usize, field: &Arc<Gf>) -> Result<SingerData> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be >= 1".into()));
    }
    let q = field.q() as u64;
    let poly = field.least_primitive_poly(n)?;
    let g = Mat::companion(field.clone(), &poly)?;
    let ord_g = q.pow(n as u32) - 1;
    let d = gcd(n as u64, q - 1);
    let x = g.pow(d);
    Ok(SingerData {
        poly,
        g,
        x,
        ord_g,
        ord_x: ord_g / d,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub a: Mat,
    pub frob: u32,
    pub z: FieldElement,
    pub epsilon: i8,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub n: usize,
    pub q: u64,
    pub solutions: u64,
    pub all_in_singer: bool,
    pub counterexamples: Vec<Counterexample>,
}

impl LemmaReport {
    /// The lemma holds and the solution set is exactly the Singer group.
    pub fn holds(&self) -> bool {
        let expected = self.q.pow(self.n as u32) - 1;
        self.all_in_singer && self.counterexamples.is_empty() && self.solutions == expected
    }
}

/// Largest `|GL(n,q)| * k` the brute force accepts by default.
pub const LEMMA_CAP: u64 = 5_000_000;

/// Scans every `a = (A, i)` in the semilinear group and solves
/// `A^-1 sigma^i(x) A = z x^eps` for a scalar `z` and `eps = +-1`.
///
/// Every solution should have `z = 1`, `eps = 1`, `i = 0` and `A` a power
/// of `g`; anything else is reported as a counterexample.
pub fn verify_singer_lemma(n: usize, spec: &FieldSpec) -> Result<LemmaReport> {
    verify_singer_lemma_capped(n, spec, LEMMA_CAP)
}

pub fn verify_singer_lemma_capped(n: usize, spec: &FieldSpec, cap: u64) -> Result<LemmaReport> {
    if n < 3 {
        return Err(Error::InvalidArgument("the lemma needs n >= 3".into()));
    }
    let field = Arc::new(Gf::new(spec.clone())?);
    let q = field.q() as u64;
    let k = field.k();
    let total = (q as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    if total.saturating_mul(k as u128) > cap as u128 {
        return Err(Error::cap(
            format!("semilinear scan over GF({q})^{n}x{n}"),
            cap as usize,
        ));
    }
    let total = total as u64;
    let singer = singer_cycle_over(n, &field)?;
    let powers: HashSet<Vec<u8>> = {
        let mut set = HashSet::new();
        let mut y = Mat::identity(field.clone(), n);
        for _ in 0..singer.ord_g {
            set.insert(y.entries().to_vec());
            y = y.mul(&singer.g);
        }
        set
    };
    let x = singer.x.entries().to_vec();
    let x_inv = singer.x.inv()?.entries().to_vec();
    let x_frob: Vec<Vec<u8>> = (0..k).map(|i| singer.x.frobenius(i).entries().to_vec()).collect();

    let nn = n * n;
    let chunk = q.pow(2).min(total);
    let found: Vec<(Vec<u8>, u32, u8, i8)> = (0..total.div_ceil(chunk))
        .into_par_iter()
        .flat_map_iter(|c| {
            let f = &*field;
            let mut a = vec![0u8; nn];
            let mut lhs = vec![0u8; nn];
            let mut rhs = vec![0u8; nn];
            let mut out = Vec::new();
            for idx in c * chunk..((c + 1) * chunk).min(total) {
                let mut r = idx;
                for e in a.iter_mut() {
                    *e = (r % q) as u8;
                    r /= q;
                }
                let mut invertible = None;
                for (i, xf) in x_frob.iter().enumerate() {
                    mul_into(f, n, xf, &a, &mut lhs);
                    for (eps, xe) in [(1i8, &x), (-1i8, &x_inv)] {
                        mul_into(f, n, &a, xe, &mut rhs);
                        let Some(z) = scalar_ratio(f, &lhs, &rhs) else {
                            continue;
                        };
                        if *invertible.get_or_insert_with(|| det_raw(f, n, &a) != 0) {
                            out.push((a.clone(), i as u32, z, eps));
                        }
                    }
                }
            }
            out
        })
        .collect();

    let mut solutions = 0;
    let mut all_in_singer = true;
    let mut counterexamples = Vec::new();
    for (a, frob, z, epsilon) in found {
        solutions += 1;
        let in_singer = frob == 0 && z == 1 && epsilon == 1 && powers.contains(&a);
        if !in_singer {
            all_in_singer = false;
            counterexamples.push(Counterexample {
                a: Mat::from_entries(field.clone(), n, a)?,
                frob,
                z: field.element(z),
                epsilon,
            });
        }
    }
    Ok(LemmaReport {
        n,
        q,
        solutions,
        all_in_singer,
        counterexamples,
    })
}

/// The nonzero scalar `z` with `lhs = z * rhs`, if any.
fn scalar_ratio(f: &Gf, lhs: &[u8], rhs: &[u8]) -> Option<u8> {
    let pos = rhs.iter().position(|&c| c != 0)?;
    let z = f.mul(lhs[pos], f.inv(rhs[pos])?);
    if z == 0 {
        return None;
    }
    lhs.iter().zip(rhs).all(|(&l, &r)| l == f.mul(z, r)).then_some(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singer_orders() {
        for (q, ord_g, ord_x) in [(2, 7, 7), (3, 26, 26), (4, 63, 21)] {
            let s = singer_cycle(3, &FieldSpec::of_order(q).unwrap()).unwrap();
            assert_eq!(s.g.order(), Some(ord_g));
            assert_eq!(s.x.order(), Some(ord_x));
            assert_eq!(s.ord_x, ord_x);
        }
    }

    #[test]
    fn lemma_holds_over_gf2() {
        let r = verify_singer_lemma(3, &FieldSpec::of_order(2).unwrap()).unwrap();
        assert_eq!(r.solutions, 7);
        assert!(r.holds());
    }

    #[test]
    fn lemma_needs_dimension_three() {
        assert!(verify_singer_lemma(2, &FieldSpec::of_order(3).unwrap()).is_err());
    }
}

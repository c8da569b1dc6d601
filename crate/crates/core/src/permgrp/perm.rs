use std::fmt;

use crate::error::{Error, Result};
use crate::permgrp::GroupRule;

/// Permutation of `0..degree` stored as its image array.
///
/// Products act on the right: `(a * b)(i) = b(a(i))`, so `a` is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x as usize >= n || seen[x as usize] {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation")));
            }
            seen[x as usize] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u8).collect(),
        }
    }

    /// Parses 1-based cycle notation such as `(1,2,3)(4,5)`.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse permutation {s:?}"));
        let mut images: Vec<u8> = (0..degree as u8).collect();
        let mut seen = vec![false; degree];
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Perm { images });
        }
        for chunk in s.split(')') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let body = chunk.strip_prefix('(').ok_or_else(bad)?;
            let pts: Vec<usize> = body
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            for &p in &pts {
                if p == 0 || p > degree || seen[p - 1] {
                    return Err(bad());
                }
                seen[p - 1] = true;
            }
            for (i, &p) in pts.iter().enumerate() {
                images[p - 1] = (pts[(i + 1) % pts.len()] - 1) as u8;
            }
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        Perm {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm { images: inv }
    }

    /// `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().compose(self).compose(g)
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        let mut transpositions = 0;
        for start in 0..self.images.len() {
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize;
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        transpositions % 2 == 0
    }

    /// Word in the adjacent transpositions `(i, i+1)` (0-based `i`) whose
    /// product, applied left to right, equals `self`.
    pub fn adjacent_transposition_word(&self) -> Vec<usize> {
        // Sorting the image array by adjacent swaps s_1, ..., s_m gives
        // s_m ... s_1 * self = id, hence self = s_1 ... s_m.
        let mut arr: Vec<u8> = self.images.clone();
        let mut swaps = Vec::new();
        let n = arr.len();
        for pass in 0..n {
            for i in 0..n.saturating_sub(1 + pass) {
                if arr[i] > arr[i + 1] {
                    arr.swap(i, i + 1);
                    swaps.push(i);
                }
            }
        }
        swaps
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut any = false;
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, ",")?;
                }
                first = false;
                write!(f, "{}", i + 1)?;
                i = self.images[i] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Composition rule for permutations of a fixed degree; keys are image arrays.
#[derive(Clone, Debug)]
pub struct PermRule {
    degree: usize,
}

impl PermRule {
    pub fn new(degree: usize) -> Self {
        PermRule { degree }
    }
}

impl GroupRule for PermRule {
    fn key_len(&self) -> usize {
        self.degree
    }

    fn identity(&self) -> Vec<u8> {
        (0..self.degree as u8).collect()
    }

    fn mul(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        for (o, &x) in out.iter_mut().zip(a) {
            *o = b[x as usize];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let p = Perm::parse_cycles(7, "(1,2,3,4,6,7,5)").unwrap();
        assert_eq!(p.to_string(), "(1,2,3,4,6,7,5)");
        assert_eq!(Perm::parse_cycles(4, "()").unwrap(), Perm::identity(4));
    }

    #[test]
    fn parse_rejects_repeated_point() {
        // Repeats the point 2.
        assert!(Perm::parse_cycles(7, "(2,7)(3,6)(2,4)").is_err());
    }

    #[test]
    fn right_action_composition() {
        let a = Perm::parse_cycles(3, "(1,2)").unwrap();
        let b = Perm::parse_cycles(3, "(2,3)").unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.compose(&b).apply(0), 2);
        assert_eq!(a.compose(&b).to_string(), "(1,3,2)");
    }

    #[test]
    fn adjacent_word_reproduces_permutation() {
        let p = Perm::parse_cycles(6, "(1,5,2)(3,6)").unwrap();
        let w = p.adjacent_transposition_word();
        let prod = w.iter().fold(Perm::identity(6), |acc, &i| {
            let mut t: Vec<u8> = (0..6).collect();
            t.swap(i, i + 1);
            acc.compose(&Perm::new(t).unwrap())
        });
        assert_eq!(prod, p);
    }

    #[test]
    fn parity() {
        assert!(Perm::parse_cycles(5, "(1,2,3)").unwrap().is_even());
        assert!(!Perm::parse_cycles(5, "(1,2)").unwrap().is_even());
    }
}

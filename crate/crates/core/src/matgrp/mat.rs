use std::fmt;
use std::sync::Arc;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::gf::{Gf, Polynomial};
use crate::permgrp::GroupRule;

// Slice-level kernels shared by `Mat` and the group rules. Matrices are n*n
// row-major arrays of field codes.

pub(crate) fn mul_into(f: &Gf, n: usize, a: &[u8], b: &[u8], out: &mut [u8]) {
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0u8;
            for l in 0..n {
                acc = f.add(acc, f.mul(a[i * n + l], b[l * n + j]));
            }
            out[i * n + j] = acc;
        }
    }
}

/// Scales `m` so that its first nonzero entry (row-major) is 1.
pub(crate) fn canonicalize(f: &Gf, m: &mut [u8]) {
    if let Some(&lead) = m.iter().find(|&&c| c != 0) {
        if lead != 1 {
            let s = f.inv(lead).expect("nonzero lead");
            for c in m.iter_mut() {
                *c = f.mul(*c, s);
            }
        }
    }
}

pub(crate) fn inverse_raw(f: &Gf, n: usize, a: &[u8]) -> Option<Vec<u8>> {
    let w = 2 * n;
    let mut aug = vec![0u8; n * w];
    for i in 0..n {
        aug[i * w..i * w + n].copy_from_slice(&a[i * n..(i + 1) * n]);
        aug[i * w + n + i] = 1;
    }
    for col in 0..n {
        let piv = (col..n).find(|&r| aug[r * w + col] != 0)?;
        if piv != col {
            for j in 0..w {
                aug.swap(piv * w + j, col * w + j);
            }
        }
        let s = f.inv(aug[col * w + col])?;
        for j in 0..w {
            aug[col * w + j] = f.mul(aug[col * w + j], s);
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let c = aug[r * w + col];
            if c != 0 {
                for j in 0..w {
                    let v = f.mul(c, aug[col * w + j]);
                    aug[r * w + j] = f.sub(aug[r * w + j], v);
                }
            }
        }
    }
    let mut out = vec![0u8; n * n];
    for i in 0..n {
        out[i * n..(i + 1) * n].copy_from_slice(&aug[i * w + n..(i + 1) * w]);
    }
    Some(out)
}

pub(crate) fn transpose_raw(n: usize, a: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = a[i * n + j];
        }
    }
    out
}

pub(crate) fn det_raw(f: &Gf, n: usize, a: &[u8]) -> u8 {
    let mut m = a.to_vec();
    let mut det = 1u8;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r * n + col] != 0) else {
            return 0;
        };
        if piv != col {
            for j in 0..n {
                m.swap(piv * n + j, col * n + j);
            }
            det = f.neg(det);
        }
        let d = m[col * n + col];
        det = f.mul(det, d);
        let dinv = f.inv(d).expect("nonzero pivot");
        for r in col + 1..n {
            let c = f.mul(m[r * n + col], dinv);
            if c != 0 {
                for j in col..n {
                    let v = f.mul(c, m[col * n + j]);
                    m[r * n + j] = f.sub(m[r * n + j], v);
                }
            }
        }
    }
    det
}

/// Square matrix over a table-backed finite field.
#[derive(Clone)]
pub struct Mat {
    n: usize,
    field: Arc<Gf>,
    entries: Vec<u8>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries && self.field.spec() == other.field.spec()
    }
}

impl Eq for Mat {}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{:?}", self.rows())
    }
}

impl Mat {
    pub fn from_entries(field: Arc<Gf>, n: usize, entries: Vec<u8>) -> Result<Self> {
        if entries.len() != n * n || entries.iter().any(|&c| c as usize >= field.q()) {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries below {}",
                n * n,
                field.q()
            )));
        }
        Ok(Mat { n, field, entries })
    }

    pub fn from_rows(field: Arc<Gf>, rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("matrix must be square".into()));
        }
        Mat::from_entries(field, n, rows.concat())
    }

    pub fn identity(field: Arc<Gf>, n: usize) -> Self {
        Mat::scalar(field, n, 1)
    }

    pub fn scalar(field: Arc<Gf>, n: usize, c: u8) -> Self {
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            entries[i * n + i] = c;
        }
        Mat { n, field, entries }
    }

    pub fn diagonal(field: Arc<Gf>, diag: &[u8]) -> Self {
        let n = diag.len();
        let mut entries = vec![0u8; n * n];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * n + i] = d;
        }
        Mat { n, field, entries }
    }

    /// Companion matrix of a monic `f = T^n - a_{n-1}T^{n-1} - ... - a_0`
    /// for row vectors: `e_i C = e_{i+1}` and `e_n C = (a_0, ..., a_{n-1})`.
    pub fn companion(field: Arc<Gf>, f: &Polynomial) -> Result<Self> {
        let n = f.degree().filter(|&d| d >= 1 && f.is_monic()).ok_or_else(|| {
            Error::InvalidArgument("companion matrix needs a monic polynomial of degree >= 1".into())
        })?;
        let mut entries = vec![0u8; n * n];
        for i in 0..n - 1 {
            entries[i * n + i + 1] = 1;
        }
        for j in 0..n {
            entries[(n - 1) * n + j] = field.neg(f.coeffs()[j] as u8);
        }
        Ok(Mat { n, field, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<Gf> {
        &self.field
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    fn with_entries(&self, entries: Vec<u8>) -> Mat {
        Mat {
            n: self.n,
            field: self.field.clone(),
            entries,
        }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let mut out = vec![0u8; self.n * self.n];
        mul_into(&self.field, self.n, &self.entries, &other.entries, &mut out);
        self.with_entries(out)
    }

    pub fn add(&self, other: &Mat) -> Mat {
        let f = &self.field;
        self.with_entries(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        )
    }

    pub fn scale(&self, c: u8) -> Mat {
        let f = &self.field;
        self.with_entries(self.entries.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        let mut acc = Mat::identity(self.field.clone(), self.n);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    pub fn det(&self) -> u8 {
        det_raw(&self.field, self.n, &self.entries)
    }

    pub fn inv(&self) -> Result<Mat> {
        inverse_raw(&self.field, self.n, &self.entries)
            .map(|e| self.with_entries(e))
            .ok_or(Error::Singular)
    }

    pub fn transpose(&self) -> Mat {
        self.with_entries(transpose_raw(self.n, &self.entries))
    }

    /// `(m^-1)^T`.
    pub fn inverse_transpose(&self) -> Result<Mat> {
        Ok(self.inv()?.transpose())
    }

    /// Entrywise `a -> a^(p^i)`.
    pub fn frobenius(&self, i: u32) -> Mat {
        let f = &self.field;
        self.with_entries(self.entries.iter().map(|&a| f.frob(a, i)).collect())
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.field.clone(), self.n)
    }

    /// Scalar value if the matrix is a scalar multiple of the identity.
    pub fn scalar_value(&self) -> Option<u8> {
        let c = self.entries.first().copied()?;
        (*self == Mat::scalar(self.field.clone(), self.n, c)).then_some(c)
    }

    /// Multiplicative order; `None` for singular matrices.
    pub fn order(&self) -> Option<u64> {
        if self.det() == 0 {
            return None;
        }
        let mut x = self.clone();
        let mut m = 1;
        while !x.is_identity() {
            x = x.mul(self);
            m += 1;
        }
        Some(m)
    }

    /// Characteristic polynomial `det(T I - m)`, monic of degree n.
    ///
    /// Reduces to upper Hessenberg form by elementary similarities, then runs
    /// the standard determinant recurrence on the leading principal minors.
    pub fn char_poly(&self) -> Polynomial {
        let f = &*self.field;
        let n = self.n;
        let mut h = self.entries.clone();
        let at = |i: usize, j: usize| i * n + j;
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h[at(i, m - 1)] != 0) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    h.swap(at(i, j), at(m, j));
                }
                for j in 0..n {
                    h.swap(at(j, i), at(j, m));
                }
            }
            let tinv = f.inv(h[at(m, m - 1)]).expect("nonzero pivot");
            for i in m + 1..n {
                let u = f.mul(h[at(i, m - 1)], tinv);
                if u == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = f.mul(u, h[at(m, j)]);
                    h[at(i, j)] = f.sub(h[at(i, j)], v);
                }
                for j in 0..n {
                    let v = f.mul(u, h[at(j, i)]);
                    h[at(j, m)] = f.add(h[at(j, m)], v);
                }
            }
        }
        // p[k] = characteristic polynomial of the leading k x k block.
        let mut p: Vec<Vec<u8>> = vec![vec![1]];
        for k in 1..=n {
            let d = h[at(k - 1, k - 1)];
            // (T - d) * p[k-1]
            let prev = &p[k - 1];
            let mut next = vec![0u8; k + 1];
            for (i, &c) in prev.iter().enumerate() {
                next[i + 1] = f.add(next[i + 1], c);
                next[i] = f.sub(next[i], f.mul(d, c));
            }
            let mut t = 1u8;
            for i in (1..k).rev() {
                t = f.mul(t, h[at(i, i - 1)]);
                let c = f.mul(h[at(i - 1, k - 1)], t);
                if c != 0 {
                    for (j, &pc) in p[i - 1].iter().enumerate() {
                        next[j] = f.sub(next[j], f.mul(c, pc));
                    }
                }
            }
            p.push(next);
        }
        Polynomial::new(p[n].iter().map(|&c| c as u32).collect())
    }

    /// Evaluates the polynomial at this matrix (Horner).
    pub fn eval_poly(&self, poly: &Polynomial) -> Mat {
        let mut acc = Mat::scalar(self.field.clone(), self.n, 0);
        for &c in poly.coeffs().iter().rev() {
            acc = acc
                .mul(self)
                .add(&Mat::scalar(self.field.clone(), self.n, c as u8));
        }
        acc
    }

    pub fn projective(&self) -> ProjMat {
        ProjMat::new(self.clone())
    }
}

impl Serialize for Mat {
    /// Nested arrays of coefficient vectors.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let spec = self.field.spec();
        let rows: Vec<Vec<Vec<u32>>> = self
            .rows()
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|c| spec.from_code(c as u64).coeffs().to_vec())
                    .collect()
            })
            .collect();
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for r in &rows {
            seq.serialize_element(r)?;
        }
        seq.end()
    }
}

/// Matrix modulo scalars, stored with its first nonzero entry equal to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjMat {
    rep: Mat,
}

impl ProjMat {
    pub fn new(mut m: Mat) -> Self {
        let field = m.field.clone();
        canonicalize(&field, &mut m.entries);
        ProjMat { rep: m }
    }

    pub fn rep(&self) -> &Mat {
        &self.rep
    }

    pub fn key(&self) -> &[u8] {
        &self.rep.entries
    }

    pub fn mul(&self, other: &ProjMat) -> ProjMat {
        ProjMat::new(self.rep.mul(&other.rep))
    }
}

/// Element of the semilinear group: a matrix together with a Frobenius power.
///
/// `(A, i)` acts on row vectors by `v -> sigma^i(v) A`, where `sigma` is the
/// p-power map. Acting by `(A, i)` then `(B, j)` gives
/// `(A, i) * (B, j) = (sigma^j(A) B, i + j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearElem {
    pub mat: Mat,
    pub frob: u32,
}

impl SemilinearElem {
    pub fn new(mat: Mat, frob: u32) -> Self {
        let k = mat.field.k();
        SemilinearElem { mat, frob: frob % k }
    }

    pub fn compose(&self, other: &SemilinearElem) -> SemilinearElem {
        SemilinearElem::new(
            self.mat.frobenius(other.frob).mul(&other.mat),
            self.frob + other.frob,
        )
    }

    pub fn inverse(&self) -> Result<SemilinearElem> {
        let k = self.mat.field.k();
        let back = (k - self.frob) % k;
        Ok(SemilinearElem::new(self.mat.frobenius(back).inv()?, back))
    }

    pub fn act(&self, v: &[u8]) -> Vec<u8> {
        let f = &self.mat.field;
        let n = self.mat.n;
        let w: Vec<u8> = v.iter().map(|&c| f.frob(c, self.frob)).collect();
        (0..n)
            .map(|j| (0..n).fold(0u8, |acc, i| f.add(acc, f.mul(w[i], self.mat.get(i, j)))))
            .collect()
    }

    /// `a^-1 x a` for a linear `x`, which equals `A^-1 sigma^i(x) A`.
    pub fn conjugate(&self, x: &Mat) -> Result<Mat> {
        Ok(self.mat.inv()?.mul(&x.frobenius(self.frob)).mul(&self.mat))
    }
}

/// Matrix multiplication on row-major code keys, optionally modulo scalars.
pub struct MatRule {
    field: Arc<Gf>,
    n: usize,
    projective: bool,
}

impl MatRule {
    pub fn new(field: Arc<Gf>, n: usize, projective: bool) -> Self {
        MatRule { field, n, projective }
    }
}

impl GroupRule for MatRule {
    fn key_len(&self) -> usize {
        self.n * self.n
    }

    fn identity(&self) -> Vec<u8> {
        Mat::identity(self.field.clone(), self.n).entries
    }

    fn mul(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        mul_into(&self.field, self.n, a, b, out);
        if self.projective {
            canonicalize(&self.field, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Arc<Gf> {
        Arc::new(Gf::of_order(q).unwrap())
    }

    #[test]
    fn identity_times_m_is_m() {
        let f = gf(3);
        let m = Mat::from_rows(f.clone(), &[vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]]).unwrap();
        assert_eq!(Mat::identity(f, 3).mul(&m), m);
    }

    #[test]
    fn transpose_is_involutive() {
        let f = gf(4);
        let m = Mat::from_rows(f, &[vec![1, 2, 3], vec![0, 1, 1], vec![2, 0, 1]]).unwrap();
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn singular_inverse_is_an_error() {
        let f = gf(3);
        let m = Mat::from_rows(f, &[vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(m.det(), 0);
        assert!(matches!(m.inv(), Err(Error::Singular)));
        assert!(matches!(m.inverse_transpose(), Err(Error::Singular)));
    }

    #[test]
    fn inverse_transpose_of_diagonal() {
        let f = gf(5);
        let d = Mat::diagonal(f.clone(), &[2, 3, 4]);
        let expect = Mat::diagonal(f.clone(), &[3, 2, 4]);
        assert_eq!(d.inverse_transpose().unwrap(), expect);
        assert!(Mat::identity(f, 3).inverse_transpose().unwrap().is_identity());
    }

    #[test]
    fn symmetric_matrix_is_inverted_by_inverse_transpose() {
        let f = gf(3);
        let m = Mat::from_rows(f, &[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        assert_eq!(m, m.transpose());
        assert_eq!(m.inverse_transpose().unwrap(), m.inv().unwrap());
    }

    #[test]
    fn char_poly_of_identity_over_gf3() {
        let f = gf(3);
        // (T - 1)^2 = T^2 - 2T + 1 = T^2 + T + 1 over GF(3)
        assert_eq!(Mat::identity(f, 2).char_poly().coeffs(), &[1, 1, 1]);
    }

    #[test]
    fn char_poly_of_companion_is_the_polynomial() {
        let f = gf(4);
        let poly = Polynomial::new(vec![2, 0, 3, 1]);
        let c = Mat::companion(f, &poly).unwrap();
        assert_eq!(c.char_poly(), poly);
    }

    #[test]
    fn semilinear_composition_matches_action() {
        let f = gf(4);
        let a = SemilinearElem::new(
            Mat::from_rows(f.clone(), &[vec![1, 2, 0], vec![0, 1, 3], vec![0, 0, 1]]).unwrap(),
            1,
        );
        let b = SemilinearElem::new(
            Mat::from_rows(f.clone(), &[vec![2, 0, 1], vec![1, 1, 0], vec![0, 3, 1]]).unwrap(),
            1,
        );
        let ab = a.compose(&b);
        for v in [[1u8, 0, 0], [2, 3, 1], [0, 1, 2]] {
            assert_eq!(ab.act(&v), b.act(&a.act(&v)));
        }
        let id = a.compose(&a.inverse().unwrap());
        assert!(id.mat.is_identity() && id.frob == 0);
    }
}

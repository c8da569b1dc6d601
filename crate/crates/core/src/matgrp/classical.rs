use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{gcd, FieldSpec, Gf};
use crate::matgrp::mat::{canonicalize, det_raw, Mat, MatRule};
use crate::permgrp::{close_generators, GroupHandle};

const UNITARY_SEED: u64 = 0x5eed_0003;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassicalKind {
    GL,
    SL,
    PGL,
    PSL,
    GU,
    SU,
    PGU,
    PSU,
    SP2,
}

impl ClassicalKind {
    pub const ALL: [ClassicalKind; 9] = [
        ClassicalKind::GL,
        ClassicalKind::SL,
        ClassicalKind::PGL,
        ClassicalKind::PSL,
        ClassicalKind::GU,
        ClassicalKind::SU,
        ClassicalKind::PGU,
        ClassicalKind::PSU,
        ClassicalKind::SP2,
    ];

    pub fn is_projective(self) -> bool {
        matches!(
            self,
            ClassicalKind::PGL | ClassicalKind::PSL | ClassicalKind::PGU | ClassicalKind::PSU
        )
    }

    pub fn is_unitary(self) -> bool {
        matches!(
            self,
            ClassicalKind::GU | ClassicalKind::SU | ClassicalKind::PGU | ClassicalKind::PSU
        )
    }

    fn has_det_one(self) -> bool {
        matches!(
            self,
            ClassicalKind::SL
                | ClassicalKind::PSL
                | ClassicalKind::SU
                | ClassicalKind::PSU
                | ClassicalKind::SP2
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassicalKind::GL => "GL",
            ClassicalKind::SL => "SL",
            ClassicalKind::PGL => "PGL",
            ClassicalKind::PSL => "PSL",
            ClassicalKind::GU => "GU",
            ClassicalKind::SU => "SU",
            ClassicalKind::PGU => "PGU",
            ClassicalKind::PSU => "PSU",
            ClassicalKind::SP2 => "Sp",
        }
    }
}

impl fmt::Display for ClassicalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassicalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let kind = match s.to_ascii_uppercase().as_str() {
            "GL" => ClassicalKind::GL,
            "SL" => ClassicalKind::SL,
            "PGL" => ClassicalKind::PGL,
            "PSL" => ClassicalKind::PSL,
            "GU" => ClassicalKind::GU,
            "SU" => ClassicalKind::SU,
            "PGU" => ClassicalKind::PGU,
            "PSU" => ClassicalKind::PSU,
            "SP2" | "SP" => ClassicalKind::SP2,
            _ => return Err(Error::UnsupportedGroup(s.to_string())),
        };
        Ok(kind)
    }
}

fn gl_order(n: u32, q: u128) -> Option<u128> {
    let qn = q.checked_pow(n)?;
    (0..n).try_fold(1u128, |acc, i| acc.checked_mul(qn - q.pow(i)))
}

fn gu_order(n: u32, q: u128) -> Option<u128> {
    let mut acc = q.checked_pow(n * (n - 1) / 2)?;
    for i in 1..=n {
        let qi = q.checked_pow(i)?;
        let f = if i % 2 == 0 { qi - 1 } else { qi + 1 };
        acc = acc.checked_mul(f)?;
    }
    Some(acc)
}

/// Order of the classical group from the standard formulas; `None` on
/// overflow or an invalid `(kind, n)` combination.
pub fn classical_order(kind: ClassicalKind, n: usize, q: u64) -> Option<u128> {
    if n == 0 || (kind == ClassicalKind::SP2 && n != 2) {
        return None;
    }
    let (n32, qq) = (n as u32, q as u128);
    let gl = || gl_order(n32, qq);
    let gu = || gu_order(n32, qq);
    match kind {
        ClassicalKind::GL => gl(),
        ClassicalKind::SL | ClassicalKind::PGL | ClassicalKind::SP2 => Some(gl()? / (qq - 1)),
        ClassicalKind::PSL => Some(gl()? / (qq - 1) / gcd(n as u64, q - 1) as u128),
        ClassicalKind::GU => gu(),
        ClassicalKind::SU | ClassicalKind::PGU => Some(gu()? / (qq + 1)),
        ClassicalKind::PSU => Some(gu()? / (qq + 1) / gcd(n as u64, q + 1) as u128),
    }
}

/// A classical matrix group together with its enumeration.
///
/// Unitary kinds live over GF(q^2) and preserve the Hermitian form given by
/// the identity matrix: `M * sigma(M)^T = I` with `sigma(a) = a^q`.
pub struct MatrixGroup {
    kind: ClassicalKind,
    n: usize,
    q: u64,
    field: Arc<Gf>,
    handle: GroupHandle,
}

impl fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({},{}) of order {}",
            self.kind,
            self.n,
            self.q,
            self.handle.order()
        )
    }
}

impl MatrixGroup {
    pub fn kind(&self) -> ClassicalKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Field of the matrix entries: GF(q), or GF(q^2) for unitary kinds.
    pub fn field(&self) -> &Arc<Gf> {
        &self.field
    }

    pub fn handle(&self) -> &GroupHandle {
        &self.handle
    }

    pub fn into_handle(self) -> GroupHandle {
        self.handle
    }

    /// Matrix for element `i` (the canonical representative if projective).
    pub fn mat(&self, i: u32) -> Mat {
        Mat::from_entries(self.field.clone(), self.n, self.handle.key(i).to_vec())
            .expect("stored keys are valid matrices")
    }

    pub fn index_of(&self, m: &Mat) -> Option<u32> {
        let mut key = m.entries().to_vec();
        if self.kind.is_projective() {
            canonicalize(&self.field, &mut key);
        }
        self.handle.index_of(&key)
    }
}

/// Transvections `I + c E_ij` with `c` running over an additive basis of the field.
pub fn transvection_generators(field: &Arc<Gf>, n: usize) -> Vec<Mat> {
    let k = field.k();
    let basis: Vec<u8> = (0..k).map(|m| field.pow(field.primitive(), m as u64)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for &c in &basis {
                let mut m = Mat::identity(field.clone(), n).entries().to_vec();
                m[i * n + j] = c;
                out.push(Mat::from_entries(field.clone(), n, m).unwrap());
            }
        }
    }
    out
}

/// Hermitian product `sum u_i * v_i^q` over GF(q^2), where `k` is the degree
/// of GF(q) over its prime field.
fn herm(field: &Gf, k: u32, u: &[u8], v: &[u8]) -> u8 {
    u.iter().zip(v).fold(0u8, |acc, (&a, &b)| {
        field.add(acc, field.mul(a, field.frob(b, k)))
    })
}

/// Random element of GU(n,q) by Gram-Schmidt on random vectors.
fn random_unitary(field: &Gf, k: u32, n: usize, rng: &mut ChaCha8Rng) -> Vec<u8> {
    let q2 = field.q();
    let mut rows: Vec<Vec<u8>> = Vec::with_capacity(n);
    while rows.len() < n {
        let mut v: Vec<u8> = (0..n).map(|_| rng.gen_range(0..q2) as u8).collect();
        for e in &rows {
            let a = herm(field, k, &v, e);
            for (x, &y) in v.iter_mut().zip(e) {
                *x = field.sub(*x, field.mul(a, y));
            }
        }
        let norm = herm(field, k, &v, &v);
        if norm == 0 {
            continue;
        }
        // c * c^q = norm has a solution since the norm map is onto GF(q)*.
        let c = field
            .units()
            .find(|&c| field.mul(c, field.frob(c, k)) == norm)
            .expect("norm map is surjective");
        let cinv = field.inv(c).unwrap();
        rows.push(v.iter().map(|&x| field.mul(x, cinv)).collect());
    }
    rows.concat()
}

fn is_unitary(field: &Gf, k: u32, n: usize, m: &[u8]) -> bool {
    (0..n).all(|i| {
        (0..n).all(|j| {
            let h = herm(field, k, &m[i * n..(i + 1) * n], &m[j * n..(j + 1) * n]);
            h == u8::from(i == j)
        })
    })
}

/// Enumerates the classical group `kind(n, q)` where `spec` is GF(q).
///
/// The enumerated order is checked against [`classical_order`].
pub fn build_matrix_group(
    kind: ClassicalKind,
    n: usize,
    spec: &FieldSpec,
    cap: usize,
) -> Result<MatrixGroup> {
    let q = spec.q();
    let label = format!("{kind}({n},{q})");
    if n < 1 || (kind == ClassicalKind::SP2 && n != 2) || (kind.is_unitary() && n < 2) {
        return Err(Error::InvalidArgument(format!("{label} is not supported")));
    }
    let expected = classical_order(kind, n, q)
        .ok_or_else(|| Error::InvalidArgument(format!("{label} order overflows")))?;
    if expected > cap as u128 {
        return Err(Error::cap(format!("{label} of order {expected}"), cap));
    }
    let projective = kind.is_projective();
    let (field, handle) = if kind.is_unitary() {
        let field = Arc::new(Gf::new(FieldSpec::new(spec.p(), 2 * spec.k())?)?);
        let handle = close_unitary(&field, spec.k(), n, kind, expected as usize, cap)?;
        (field, handle)
    } else {
        let field = Arc::new(Gf::new(spec.clone())?);
        let mut gens: Vec<Vec<u8>> = transvection_generators(&field, n)
            .into_iter()
            .map(|m| m.entries().to_vec())
            .collect();
        if matches!(kind, ClassicalKind::GL | ClassicalKind::PGL) {
            let mut d = vec![1u8; n];
            d[0] = field.primitive();
            gens.push(Mat::diagonal(field.clone(), &d).entries().to_vec());
        }
        let rule = Arc::new(MatRule::new(field.clone(), n, projective));
        (field, close_generators(rule, &gens, cap)?)
    };
    if handle.order() as u128 != expected {
        return Err(Error::defect(format!(
            "{label} closed to {} elements, expected {expected}",
            handle.order()
        )));
    }
    Ok(MatrixGroup {
        kind,
        n,
        q,
        field,
        handle,
    })
}

fn close_unitary(
    field: &Arc<Gf>,
    k: u32,
    n: usize,
    kind: ClassicalKind,
    expected: usize,
    cap: usize,
) -> Result<GroupHandle> {
    let mut rng = ChaCha8Rng::seed_from_u64(UNITARY_SEED);
    let rule = Arc::new(MatRule::new(field.clone(), n, kind.is_projective()));
    let mut gens: Vec<Vec<u8>> = Vec::new();
    for _ in 0..32 {
        let mut m = random_unitary(field, k, n, &mut rng);
        debug_assert!(is_unitary(field, k, n, &m));
        if kind.has_det_one() {
            let dinv = field.inv(det_raw(field, n, &m)).unwrap();
            for x in &mut m[..n] {
                *x = field.mul(*x, dinv);
            }
        }
        gens.push(m);
        if gens.len() < 2 {
            continue;
        }
        let handle = close_generators(rule.clone(), &gens, cap)?;
        if handle.order() == expected {
            return Ok(handle);
        }
    }
    Err(Error::defect(format!("no generating set found for {kind}({n})")))
}

/// Whether `m` (over GF(q^2)) satisfies `M * sigma(M)^T = I`.
pub fn is_unitary_matrix(m: &Mat, k: u32) -> bool {
    is_unitary(m.field(), k, m.n(), m.entries())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(q: u64) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    #[test]
    fn small_orders_match_formulas() {
        let cases = [
            (ClassicalKind::GL, 2, 3, 48),
            (ClassicalKind::SL, 2, 3, 24),
            (ClassicalKind::PSL, 2, 7, 168),
            (ClassicalKind::PGL, 2, 5, 120),
            (ClassicalKind::SP2, 2, 3, 24),
            (ClassicalKind::PSL, 3, 2, 168),
            (ClassicalKind::GU, 2, 2, 18),
            (ClassicalKind::SU, 2, 3, 24),
            (ClassicalKind::PGU, 2, 3, 24),
            (ClassicalKind::PSU, 3, 2, 72),
        ];
        for (kind, n, q, order) in cases {
            assert_eq!(classical_order(kind, n, q), Some(order), "{kind}({n},{q})");
            let g = build_matrix_group(kind, n, &spec(q), 100_000).unwrap();
            assert_eq!(g.handle().order() as u128, order, "{kind}({n},{q})");
        }
    }

    #[test]
    fn unitary_generators_satisfy_the_form() {
        let g = build_matrix_group(ClassicalKind::SU, 3, &spec(2), 100_000).unwrap();
        assert_eq!(g.handle().order(), 216);
        for i in 0..g.handle().order() as u32 {
            let m = g.mat(i);
            assert!(is_unitary_matrix(&m, 1));
            assert_eq!(m.det(), 1);
        }
    }

    #[test]
    fn cap_is_enforced_before_enumeration() {
        let err = build_matrix_group(ClassicalKind::GL, 3, &spec(5), 1000).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn sp2_requires_dimension_two() {
        assert!(build_matrix_group(ClassicalKind::SP2, 3, &spec(3), 100_000).is_err());
        assert_eq!("sp2".parse::<ClassicalKind>().unwrap(), ClassicalKind::SP2);
        assert!("SO".parse::<ClassicalKind>().is_err());
    }
}

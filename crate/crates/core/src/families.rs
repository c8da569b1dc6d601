//! Named group families, built as enumerated handles.
//!
//! The simple families (Alt, PSL, PSU) are rebuilt on two generators so that
//! an automorphism is determined by a pair of images.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, Gf};
use crate::matgrp::{build_matrix_group, ClassicalKind, MatRule};
use crate::permgrp::{close_generators, ClosureProbe, GroupHandle, Perm, PermRule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Alt,
    Classical(ClassicalKind),
}

impl Family {
    pub fn is_simple_family(self) -> bool {
        matches!(
            self,
            Family::Alt | Family::Classical(ClassicalKind::PSL | ClassicalKind::PSU)
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Alt => f.write_str("Alt"),
            Family::Classical(k) => write!(f, "{k}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("ALT") {
            Ok(Family::Alt)
        } else {
            s.parse().map(Family::Classical)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub family: Family,
    pub n: usize,
    /// Field order; ignored for `Alt`.
    pub q: u64,
}

impl GroupSpec {
    pub fn alt(n: usize) -> Self {
        GroupSpec {
            family: Family::Alt,
            n,
            q: 0,
        }
    }

    pub fn classical(kind: ClassicalKind, n: usize, q: u64) -> Self {
        GroupSpec {
            family: Family::Classical(kind),
            n,
            q,
        }
    }

    pub fn psl(n: usize, q: u64) -> Self {
        GroupSpec::classical(ClassicalKind::PSL, n, q)
    }

    pub fn psu(n: usize, q: u64) -> Self {
        GroupSpec::classical(ClassicalKind::PSU, n, q)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Alt => write!(f, "Alt({})", self.n),
            Family::Classical(k) => write!(f, "{k}({},{})", self.n, self.q),
        }
    }
}

/// How element keys of a handle are to be read.
#[derive(Clone, Debug)]
pub enum Realization {
    /// Keys are image arrays of permutations of `0..degree`.
    Perm { degree: usize },
    /// Keys are row-major `n x n` matrices over `field` (GF(q), or GF(q^2)
    /// for unitary kinds), scalar-canonical when `kind` is projective.
    Matrix {
        kind: ClassicalKind,
        n: usize,
        q: u64,
        field: Arc<Gf>,
    },
}

#[derive(Clone, Debug)]
pub struct BuiltGroup {
    pub spec: GroupSpec,
    pub handle: Arc<GroupHandle>,
    pub realization: Realization,
}

impl BuiltGroup {
    pub fn name(&self) -> String {
        self.spec.to_string()
    }

    pub fn order(&self) -> usize {
        self.handle.order()
    }

    pub fn perm(&self, i: u32) -> Option<Perm> {
        match self.realization {
            Realization::Perm { .. } => Perm::new(self.handle.key(i).to_vec()).ok(),
            Realization::Matrix { .. } => None,
        }
    }

    /// Element display: cycle notation or matrix rows.
    pub fn describe(&self, i: u32) -> String {
        match &self.realization {
            Realization::Perm { .. } => self.perm(i).unwrap().to_string(),
            Realization::Matrix { n, .. } => {
                let rows: Vec<String> = self
                    .handle
                    .key(i)
                    .chunks(*n)
                    .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))
                    .collect();
                format!("[{}]", rows.join("; "))
            }
        }
    }
}

fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |a, b| a.checked_mul(b))
}

/// Fixed generators of Alt(n): the pair `(1,2,3,4,5,6,7)`, `(1,2,3,4,6,7,5)`
/// for n = 7, otherwise `(1,2,3)` with `(1,...,n)` (n odd) or `(2,...,n)` (n even).
pub fn alt_generators(n: usize) -> Result<[Perm; 2]> {
    if n < 3 {
        return Err(Error::InvalidArgument("Alt(n) needs n >= 3".into()));
    }
    if n > 255 {
        return Err(Error::InvalidArgument("degree above 255".into()));
    }
    let cycle = |pts: Vec<usize>| {
        let body: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
        Perm::parse_cycles(n, &format!("({})", body.join(",")))
    };
    if n == 7 {
        return Ok([
            Perm::parse_cycles(7, "(1,2,3,4,5,6,7)")?,
            Perm::parse_cycles(7, "(1,2,3,4,6,7,5)")?,
        ]);
    }
    let long = if n % 2 == 1 {
        cycle((1..=n).collect())?
    } else {
        cycle((2..=n).collect())?
    };
    Ok([cycle(vec![1, 2, 3])?, long])
}

pub fn build_alt(n: usize, cap: usize) -> Result<BuiltGroup> {
    let order = factorial(n).map(|f| f / 2).unwrap_or(u128::MAX);
    if order > cap as u128 {
        return Err(Error::cap(format!("Alt({n}) of order {order}"), cap));
    }
    let gens = alt_generators(n)?;
    let keys: Vec<Vec<u8>> = gens.iter().map(|p| p.images().to_vec()).collect();
    let handle = close_generators(Arc::new(PermRule::new(n)), &keys, cap)?;
    if handle.order() as u128 != order {
        return Err(Error::defect(format!("Alt({n}) closed to {}", handle.order())));
    }
    Ok(BuiltGroup {
        spec: GroupSpec::alt(n),
        handle: Arc::new(handle),
        realization: Realization::Perm { degree: n },
    })
}

/// A generating pair: the first element of maximal order, with the first
/// partner (in index order) that generates together with it.
pub fn find_generating_pair(g: &GroupHandle) -> Result<(u32, u32)> {
    let orders = g.element_orders();
    let max = *orders.iter().max().unwrap();
    let x = orders.iter().position(|&o| o == max).unwrap() as u32;
    let mut probe = ClosureProbe::new(g.order());
    (0..g.order() as u32)
        .find(|&y| probe.generates(g, &[x, y]))
        .map(|y| (x, y))
        .ok_or(Error::NotGenerating)
}

/// Builds any supported group. Simple families come back on two generators.
pub fn build_group(spec: GroupSpec, cap: usize) -> Result<BuiltGroup> {
    let kind = match spec.family {
        Family::Alt => return build_alt(spec.n, cap),
        Family::Classical(kind) => kind,
    };
    let field_spec = FieldSpec::of_order(spec.q)?;
    let mg = build_matrix_group(kind, spec.n, &field_spec, cap)?;
    let field = mg.field().clone();
    let realization = Realization::Matrix {
        kind,
        n: spec.n,
        q: spec.q,
        field: field.clone(),
    };
    let handle = if spec.family.is_simple_family() && mg.handle().order() > 1 {
        let big = mg.into_handle();
        let (x, y) = find_generating_pair(&big)?;
        let keys = vec![big.key(x).to_vec(), big.key(y).to_vec()];
        drop(big);
        let rule = Arc::new(MatRule::new(field, spec.n, kind.is_projective()));
        close_generators(rule, &keys, cap)?
    } else {
        mg.into_handle()
    };
    Ok(BuiltGroup {
        spec,
        handle: Arc::new(handle),
        realization,
    })
}

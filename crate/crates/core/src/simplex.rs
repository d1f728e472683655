//! Index-level calculus of the category Δ of finite ordered sets.
//!
//! [`cj_map`] and [`cjshriek_map`] realize the two subset-indexed functors
//! into Δ that encode partial totalizations and tower layers as (sub)cubical
//! diagrams; [`check_identities`] verifies the cosimplicial identities for
//! any operator family at the level of induced linear maps, with composition
//! reversed for pullbacks: `(d^j d^i)* = (d^i)* (d^j)*`.

use crate::{Error, Result};
use std::fmt;

/// A weakly order-preserving map `{0..=source_size} -> {0..=target_size}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderMap {
    source_size: usize,
    target_size: usize,
    values: Vec<usize>,
}

impl OrderMap {
    pub fn new(source_size: usize, target_size: usize, values: Vec<usize>) -> Result<OrderMap> {
        if values.len() != source_size + 1 {
            return Err(Error::BadSubset(format!(
                "expected {} values, got {}",
                source_size + 1,
                values.len()
            )));
        }
        if values.iter().any(|&v| v > target_size) {
            return Err(Error::BadSubset("value exceeds target size".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::BadSubset("map is not order-preserving".into()));
        }
        Ok(OrderMap {
            source_size,
            target_size,
            values,
        })
    }

    pub fn identity(n: usize) -> OrderMap {
        OrderMap {
            source_size: n,
            target_size: n,
            values: (0..=n).collect(),
        }
    }

    pub fn source_size(&self) -> usize {
        self.source_size
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_identity(&self) -> bool {
        self.source_size == self.target_size
            && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &OrderMap) -> OrderMap {
        assert_eq!(self.target_size, other.source_size, "composition mismatch");
        OrderMap {
            source_size: self.source_size,
            target_size: other.target_size,
            values: self.values.iter().map(|&v| other.values[v]).collect(),
        }
    }
}

impl fmt::Display for OrderMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}]:", self.source_size, self.target_size)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {i}->{v}")?;
        }
        Ok(())
    }
}

fn check_subset_chain(j: u32, s: &[u32], s_prime: &[u32], lower: u32) -> Result<()> {
    for w in [s, s_prime] {
        if w.windows(2).any(|x| x[0] >= x[1]) {
            return Err(Error::BadSubset("subset must be strictly increasing".into()));
        }
        if w.iter().any(|&x| x < lower || x > j) {
            return Err(Error::BadSubset(format!(
                "subset element out of range {lower}..={j}"
            )));
        }
    }
    if !s.iter().all(|x| s_prime.binary_search(x).is_ok()) {
        return Err(Error::BadSubset("S is not a subset of S'".into()));
    }
    Ok(())
}

/// The functor `c_j : P_0([j]) -> Δ`, `S ↦ [|S|-1]`, on the inclusion
/// `S ⊆ S'`: the composite `[|S|-1] ≅ S ⊆ S' ≅ [|S'|-1]` of order
/// isomorphisms.  `S` must be nonempty, `S ⊆ S' ⊆ {0..=j}`.
pub fn cj_map(j: u32, s: &[u32], s_prime: &[u32]) -> Result<OrderMap> {
    if s.is_empty() {
        return Err(Error::BadSubset("S must be nonempty".into()));
    }
    check_subset_chain(j, s, s_prime, 0)?;
    let values = s
        .iter()
        .map(|x| s_prime.binary_search(x).expect("subset checked"))
        .collect();
    OrderMap::new(s.len() - 1, s_prime.len() - 1, values)
}

/// The functor `c^!_j : P(underline{j}) -> Δ`, `S ↦ [j-|S|]`, on the
/// inclusion `S ⊆ S'`: the composite
/// `[j-|S|] ≅ [j]∖S → [j]∖S' ≅ [j-|S'|]`, the middle map sending `i` to the
/// largest element of `[j]∖S'` that is `≤ i`.  Subsets live in `{1..=j}`.
pub fn cjshriek_map(j: u32, s: &[u32], s_prime: &[u32]) -> Result<OrderMap> {
    check_subset_chain(j, s, s_prime, 1)?;
    let complement = |set: &[u32]| -> Vec<u32> {
        (0..=j).filter(|x| set.binary_search(x).is_err()).collect()
    };
    let source = complement(s);
    let target = complement(s_prime);
    // 0 is never removed, so every i has a predecessor in the target.
    let values = source
        .iter()
        .map(|&x| match target.binary_search(&x) {
            Ok(idx) => idx,
            Err(ins) => ins - 1,
        })
        .collect();
    OrderMap::new(source.len() - 1, target.len() - 1, values)
}

/// A family of linear operators indexed like cofaces and codegeneracies,
/// supplied as pullbacks between cohomology levels.
///
/// `coface(p, i, x)` is the pullback of `d^i : [p-1] → [p]` applied to a
/// level-`p` class (landing at level `p-1`); `codegeneracy(p, i, x)` the
/// pullback of `s^i : [p+1] → [p]` (landing at level `p+1`).
pub trait OperatorFamily {
    type Class: Clone + PartialEq + fmt::Debug;

    /// Basis (or spanning set) of the level-`p` classes to check on.
    fn level_basis(&self, p: u32) -> Vec<Self::Class>;
    fn coface(&self, p: u32, i: u32, x: &Self::Class) -> Result<Self::Class, String>;
    fn codegeneracy(&self, p: u32, i: u32, x: &Self::Class) -> Result<Self::Class, String>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityKind {
    CofaceCoface,
    CodegenCodegen,
    Mixed,
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IdentityKind::CofaceCoface => "d.d",
            IdentityKind::CodegenCodegen => "s.s",
            IdentityKind::Mixed => "s.d",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone)]
pub struct IdentityFailure {
    pub kind: IdentityKind,
    pub p: u32,
    pub i: u32,
    pub j: u32,
    pub detail: String,
}

impl fmt::Display for IdentityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} identity failed at p={}, i={}, j={}: {}",
            self.kind, self.p, self.i, self.j, self.detail
        )
    }
}

/// Result of [`check_identities`]; empty `failures` means every identity
/// holds on the supplied bases.
#[derive(Debug, Default)]
pub struct IdentityReport {
    pub failures: Vec<IdentityFailure>,
    pub checked: usize,
}

impl IdentityReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verify all cosimplicial identities, reversed for pullbacks, whose levels
/// all lie within `0..=p_max+1`:
///
/// * `(d^j d^i)* = (d^i d^{j-1})*` for `i < j`;
/// * `(s^j s^i)* = (s^{i-1} s^j)*` for `i > j`;
/// * `(s^j d^i)*` equal to `(d^i s^{j-1})*`, the identity, or
///   `(d^{i-1} s^j)*` according to the position of `i` relative to `j`.
///
/// Structural errors from the family (dimension mismatches, invalid indices)
/// are reported as failures rather than skipped.
pub fn check_identities<Fam: OperatorFamily>(fam: &Fam, p_max: u32) -> IdentityReport {
    let mut report = IdentityReport::default();
    let mut record = |kind, p, i, j, detail: String| {
        report.failures.push(IdentityFailure {
            kind,
            p,
            i,
            j,
            detail,
        });
    };

    // Coface-coface: x at level p+2, compare H(p+2) -> H(p).
    for p in 0..=p_max.saturating_sub(1) {
        if p + 2 > p_max + 1 {
            break;
        }
        let basis = fam.level_basis(p + 2);
        for i in 0..=p + 1 {
            for j in (i + 1)..=p + 2 {
                for (bi, x) in basis.iter().enumerate() {
                    report.checked += 1;
                    let lhs = fam
                        .coface(p + 2, j, x)
                        .and_then(|y| fam.coface(p + 1, i, &y));
                    let rhs = fam
                        .coface(p + 2, i, x)
                        .and_then(|y| fam.coface(p + 1, j - 1, &y));
                    match (lhs, rhs) {
                        (Ok(a), Ok(b)) if a == b => {}
                        (Ok(_), Ok(_)) => record(
                            IdentityKind::CofaceCoface,
                            p,
                            i,
                            j,
                            format!("mismatch on basis element {bi}"),
                        ),
                        (Err(e), _) | (_, Err(e)) => {
                            record(IdentityKind::CofaceCoface, p, i, j, format!("structural: {e}"))
                        }
                    }
                }
            }
        }
    }

    // Codegeneracy-codegeneracy: x at level p, compare H(p) -> H(p+2).
    for p in 0..=p_max.saturating_sub(1) {
        if p + 2 > p_max + 1 {
            break;
        }
        let basis = fam.level_basis(p);
        for j in 0..=p {
            for i in (j + 1)..=p + 1 {
                for (bi, x) in basis.iter().enumerate() {
                    report.checked += 1;
                    let lhs = fam
                        .codegeneracy(p, j, x)
                        .and_then(|y| fam.codegeneracy(p + 1, i, &y));
                    let rhs = fam
                        .codegeneracy(p, i - 1, x)
                        .and_then(|y| fam.codegeneracy(p + 1, j, &y));
                    match (lhs, rhs) {
                        (Ok(a), Ok(b)) if a == b => {}
                        (Ok(_), Ok(_)) => record(
                            IdentityKind::CodegenCodegen,
                            p,
                            i,
                            j,
                            format!("mismatch on basis element {bi}"),
                        ),
                        (Err(e), _) | (_, Err(e)) => record(
                            IdentityKind::CodegenCodegen,
                            p,
                            i,
                            j,
                            format!("structural: {e}"),
                        ),
                    }
                }
            }
        }
    }

    // Mixed: x at level p, compare H(p) -> H(p).
    for p in 0..=p_max {
        if p + 1 > p_max + 1 {
            break;
        }
        let basis = fam.level_basis(p);
        for j in 0..=p {
            for i in 0..=p + 1 {
                for (bi, x) in basis.iter().enumerate() {
                    report.checked += 1;
                    let lhs = fam
                        .codegeneracy(p, j, x)
                        .and_then(|y| fam.coface(p + 1, i, &y));
                    let rhs: Result<Fam::Class, String> = if i == j || i == j + 1 {
                        Ok(x.clone())
                    } else if i < j {
                        // (d^i s^{j-1})*: down to level p-1 then back up.
                        fam.coface(p, i, x)
                            .and_then(|y| fam.codegeneracy(p - 1, j - 1, &y))
                    } else {
                        fam.coface(p, i - 1, x)
                            .and_then(|y| fam.codegeneracy(p - 1, j, &y))
                    };
                    match (lhs, rhs) {
                        (Ok(a), Ok(b)) if a == b => {}
                        (Ok(_), Ok(_)) => record(
                            IdentityKind::Mixed,
                            p,
                            i,
                            j,
                            format!("mismatch on basis element {bi}"),
                        ),
                        (Err(e), _) | (_, Err(e)) => {
                            record(IdentityKind::Mixed, p, i, j, format!("structural: {e}"))
                        }
                    }
                }
            }
        }
    }

    report
}

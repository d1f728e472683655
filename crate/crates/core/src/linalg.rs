//! Exact sparse linear algebra over the rationals and prime fields.
//!
//! Only what the spectral-sequence engine needs: rank, kernel dimension, a
//! kernel basis for small matrices, transpose and multiplication.  No
//! floating point anywhere.  Elimination picks pivots for sparsity
//! (min-count column, then shortest/cheapest row) and over Q keeps rows
//! rescaled to coprime integers, so the arithmetic is effectively
//! fraction-free.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// An exact coefficient field.
///
/// Implementations carry the field's parameters (e.g. the prime), so elements
/// can stay plain data.
pub trait Field: Clone + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, x: i64) -> Self::Elem;

    /// Rescale a row by a nonzero scalar to keep entries cheap.  Rank-safe.
    fn simplify_row(&self, _row: &mut [(usize, Self::Elem)]) {}

    /// Heuristic pivot preference; smaller is better.
    fn pivot_cost(&self, _a: &Self::Elem) -> u64 {
        0
    }
}

/// The field of rationals, with arbitrary-precision entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_i64(&self, x: i64) -> BigRational {
        BigRational::from(BigInt::from(x))
    }

    fn simplify_row(&self, row: &mut [(usize, BigRational)]) {
        if row.is_empty() {
            return;
        }
        let mut lcm = BigInt::one();
        for (_, e) in row.iter() {
            lcm = lcm.lcm(e.denom());
        }
        let mut gcd = BigInt::zero();
        for (_, e) in row.iter() {
            gcd = gcd.gcd(&(e.numer() * &lcm / e.denom()));
        }
        if gcd.is_zero() {
            return;
        }
        let scale = BigRational::new(lcm, gcd);
        if scale.is_one() {
            return;
        }
        for (_, e) in row.iter_mut() {
            *e *= &scale;
        }
    }

    fn pivot_cost(&self, a: &BigRational) -> u64 {
        a.numer().bits() + a.denom().bits()
    }
}

/// A prime field `F_p`, elements canonically in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        pow_mod(*a, self.p - 2, self.p)
    }
    fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Configuration-level field descriptor (`q` or a prime).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<FieldSpec> {
        match s.to_ascii_lowercase().as_str() {
            "q" | "rational" | "rationals" => Ok(FieldSpec::Rationals),
            other => {
                let p: u64 = other
                    .parse()
                    .map_err(|_| Error::BadFieldSpec(s.to_string()))?;
                if !is_prime_u64(p) {
                    return Err(Error::NotPrime(p));
                }
                Ok(FieldSpec::Prime(p))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<FieldSpec> {
        FieldSpec::parse(s)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        FieldSpec::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Sparse vector: sorted `(index, value)` pairs with no explicit zeros.
pub type SparseVec<F> = Vec<(usize, <F as Field>::Elem)>;

/// Sparse matrix over an exact field, stored by rows with sorted column
/// indices and no explicit zeros.  Immutable once built.
#[derive(Debug, Clone)]
pub struct SparseMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zero(field: F, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            field,
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    /// Build from (row, col, value) triplets; duplicate positions are summed.
    pub fn from_triplets(
        field: F,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, F::Elem)>,
    ) -> Self {
        let mut m = SparseMatrix::zero(field, rows, cols);
        let mut per_row: Vec<SparseVec<F>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet out of range");
            per_row[r].push((c, v));
        }
        for (r, mut entries) in per_row.into_iter().enumerate() {
            entries.sort_by_key(|&(c, _)| c);
            let mut row: SparseVec<F> = Vec::with_capacity(entries.len());
            for (c, v) in entries {
                match row.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv = m.field.add(lv, &v),
                    _ => row.push((c, v)),
                }
            }
            row.retain(|(_, v)| !m.field.is_zero(v));
            m.data[r] = row;
        }
        m
    }

    pub fn from_dense(field: F, dense: &[Vec<i64>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        let mut triplets = Vec::new();
        for (r, row) in dense.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                triplets.push((r, c, field.from_i64(v)));
            }
        }
        SparseMatrix::from_triplets(field, rows, cols, triplets)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, F::Elem)] {
        &self.data[r]
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> SparseMatrix<F> {
        let triplets = self
            .data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (*c, r, v.clone())))
            .collect::<Vec<_>>();
        SparseMatrix::from_triplets(self.field.clone(), self.cols, self.rows, triplets)
    }

    /// `self * other` (dimensions must agree).
    pub fn multiply(&self, other: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = &self.field;
        let mut triplets = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: std::collections::BTreeMap<usize, F::Elem> = std::collections::BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    let prod = f.mul(a, b);
                    match acc.entry(*c) {
                        std::collections::btree_map::Entry::Occupied(mut o) => {
                            let s = f.add(o.get(), &prod);
                            *o.get_mut() = s;
                        }
                        std::collections::btree_map::Entry::Vacant(vac) => {
                            vac.insert(prod);
                        }
                    }
                }
            }
            triplets.extend(acc.into_iter().map(|(c, v)| (r, c, v)));
        }
        SparseMatrix::from_triplets(self.field.clone(), self.rows, other.cols, triplets)
    }

    /// Matrix rank by sparse Gaussian elimination with sparsity pivoting.
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut rows: Vec<Option<SparseVec<F>>> =
            self.data.iter().map(|r| Some(r.clone())).collect();
        // (count, col) priority set plus per-column candidate row lists
        // (lazily filtered; lists may hold stale indices).
        let mut col_count = vec![0usize; self.cols];
        let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (c, _) in row {
                col_count[*c] += 1;
                col_rows[*c].push(i);
            }
        }
        let mut queue: BTreeSet<(usize, usize)> = (0..self.cols)
            .filter(|&c| col_count[c] > 0)
            .map(|c| (col_count[c], c))
            .collect();

        let mut rank = 0usize;
        while let Some(&(_, pivot_col)) = queue.iter().next() {
            // Live rows containing pivot_col.  Fill-in can append the same
            // row several times, so dedup before use.
            col_rows[pivot_col].sort_unstable();
            col_rows[pivot_col].dedup();
            let mut best: Option<(usize, u64, usize)> = None; // (len, cost, row)
            col_rows[pivot_col].retain(|&r| {
                let Some(row) = rows[r].as_ref() else {
                    return false;
                };
                match row.binary_search_by_key(&pivot_col, |&(c, _)| c) {
                    Ok(idx) => {
                        let key = (row.len(), f.pivot_cost(&row[idx].1), r);
                        if best.is_none_or(|b| key < b) {
                            best = Some(key);
                        }
                        true
                    }
                    Err(_) => false,
                }
            });
            let Some((_, _, pr)) = best else {
                // Stale column; fix the queue and continue.
                queue.remove(&(col_count[pivot_col], pivot_col));
                col_count[pivot_col] = 0;
                continue;
            };

            rank += 1;
            let pivot_row = rows[pr].take().expect("pivot row is live");
            let pidx = pivot_row
                .binary_search_by_key(&pivot_col, |&(c, _)| c)
                .expect("pivot entry");
            let pval = pivot_row[pidx].1.clone();

            // Retire the pivot row from the column counts.
            for (c, _) in &pivot_row {
                queue.remove(&(col_count[*c], *c));
                col_count[*c] -= 1;
                if col_count[*c] > 0 {
                    queue.insert((col_count[*c], *c));
                }
            }

            let victims: Vec<usize> = col_rows[pivot_col]
                .iter()
                .copied()
                .filter(|&r| r != pr && rows[r].is_some())
                .collect();
            for r in victims {
                let row = rows[r].take().expect("victim is live");
                let Ok(vidx) = row.binary_search_by_key(&pivot_col, |&(c, _)| c) else {
                    rows[r] = Some(row);
                    continue;
                };
                let factor = f.mul(&row[vidx].1, &f.inv(&pval));
                // new_row = row - factor * pivot_row, merged over sorted cols.
                let mut new_row: SparseVec<F> = Vec::with_capacity(row.len() + pivot_row.len());
                let (mut a, mut b) = (0usize, 0usize);
                while a < row.len() || b < pivot_row.len() {
                    let ca = row.get(a).map(|&(c, _)| c);
                    let cb = pivot_row.get(b).map(|&(c, _)| c);
                    match (ca, cb) {
                        (Some(ca), Some(cb)) if ca == cb => {
                            let v = f.sub(&row[a].1, &f.mul(&factor, &pivot_row[b].1));
                            if !f.is_zero(&v) {
                                new_row.push((ca, v));
                            }
                            a += 1;
                            b += 1;
                        }
                        (Some(ca), Some(cb)) if ca < cb => {
                            new_row.push((ca, row[a].1.clone()));
                            a += 1;
                        }
                        (Some(_), Some(cb)) => {
                            let v = f.neg(&f.mul(&factor, &pivot_row[b].1));
                            if !f.is_zero(&v) {
                                new_row.push((cb, v));
                            }
                            b += 1;
                        }
                        (Some(ca), None) => {
                            new_row.push((ca, row[a].1.clone()));
                            a += 1;
                            let _ = ca;
                        }
                        (None, Some(cb)) => {
                            let v = f.neg(&f.mul(&factor, &pivot_row[b].1));
                            if !f.is_zero(&v) {
                                new_row.push((cb, v));
                            }
                            b += 1;
                        }
                        (None, None) => unreachable!(),
                    }
                }
                f.simplify_row(&mut new_row);

                // Update column occupancy for the difference.
                let mut ai = row.iter().peekable();
                let mut bi = new_row.iter().peekable();
                loop {
                    match (ai.peek(), bi.peek()) {
                        (Some(&&(ca, _)), Some(&&(cb, _))) if ca == cb => {
                            ai.next();
                            bi.next();
                        }
                        (Some(&&(ca, _)), Some(&&(cb, _))) if ca < cb => {
                            // entry vanished
                            queue.remove(&(col_count[ca], ca));
                            col_count[ca] -= 1;
                            if col_count[ca] > 0 {
                                queue.insert((col_count[ca], ca));
                            }
                            ai.next();
                        }
                        (Some(_), Some(&&(cb, _))) => {
                            // fill-in
                            queue.remove(&(col_count[cb], cb));
                            col_count[cb] += 1;
                            queue.insert((col_count[cb], cb));
                            col_rows[cb].push(r);
                            bi.next();
                        }
                        (Some(&&(ca, _)), None) => {
                            queue.remove(&(col_count[ca], ca));
                            col_count[ca] -= 1;
                            if col_count[ca] > 0 {
                                queue.insert((col_count[ca], ca));
                            }
                            ai.next();
                        }
                        (None, Some(&&(cb, _))) => {
                            queue.remove(&(col_count[cb], cb));
                            col_count[cb] += 1;
                            queue.insert((col_count[cb], cb));
                            col_rows[cb].push(r);
                            bi.next();
                        }
                        (None, None) => break,
                    }
                }
                if !new_row.is_empty() {
                    rows[r] = Some(new_row);
                }
            }
        }
        rank
    }

    /// `ncols - rank`.
    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of the right kernel, as sparse column vectors.  Exact: every
    /// returned vector multiplies to zero.  Meant for small matrices (does a
    /// full Gauss-Jordan pass).
    pub fn kernel_basis(&self) -> Vec<SparseVec<F>> {
        let f = &self.field;
        let mut rows: Vec<SparseVec<F>> =
            self.data.iter().filter(|r| !r.is_empty()).cloned().collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (col, row index)
        let mut used = vec![false; rows.len()];
        for col in 0..self.cols {
            let Some(pr) = (0..rows.len()).find(|&r| {
                !used[r]
                    && rows[r]
                        .binary_search_by_key(&col, |&(c, _)| c)
                        .is_ok()
            }) else {
                continue;
            };
            used[pr] = true;
            // Normalize pivot to 1.
            let pidx = rows[pr].binary_search_by_key(&col, |&(c, _)| c).unwrap();
            let pinv = f.inv(&rows[pr][pidx].1.clone());
            for (_, v) in rows[pr].iter_mut() {
                *v = f.mul(v, &pinv);
            }
            let pivot_row = rows[pr].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == pr {
                    continue;
                }
                let Ok(vidx) = row.binary_search_by_key(&col, |&(c, _)| c) else {
                    continue;
                };
                let factor = row[vidx].1.clone();
                *row = sub_scaled(f, row, &pivot_row, &factor);
            }
            pivots.push((col, pr));
        }
        let pivot_cols: BTreeSet<usize> = pivots.iter().map(|&(c, _)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut vec: SparseVec<F> = Vec::new();
            for &(pc, pr) in &pivots {
                if let Ok(idx) = rows[pr].binary_search_by_key(&free, |&(c, _)| c) {
                    let v = f.neg(&rows[pr][idx].1);
                    if !f.is_zero(&v) {
                        vec.push((pc, v));
                    }
                }
            }
            vec.push((free, f.one()));
            vec.sort_by_key(|&(c, _)| c);
            basis.push(vec);
        }
        basis
    }

    /// Apply the matrix to a sparse column vector.
    pub fn apply(&self, v: &[(usize, F::Elem)]) -> SparseVec<F> {
        let f = &self.field;
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = f.zero();
            let mut any = false;
            for (c, a) in row {
                if let Ok(idx) = v.binary_search_by_key(c, |&(vc, _)| vc) {
                    acc = f.add(&acc, &f.mul(a, &v[idx].1));
                    any = true;
                }
            }
            if any && !f.is_zero(&acc) {
                out.push((r, acc));
            }
        }
        out
    }
}

fn sub_scaled<F: Field>(
    f: &F,
    row: &[(usize, F::Elem)],
    pivot: &[(usize, F::Elem)],
    factor: &F::Elem,
) -> SparseVec<F> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut a, mut b) = (0usize, 0usize);
    while a < row.len() || b < pivot.len() {
        let ca = row.get(a).map(|&(c, _)| c);
        let cb = pivot.get(b).map(|&(c, _)| c);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = f.sub(&row[a].1, &f.mul(factor, &pivot[b].1));
                if !f.is_zero(&v) {
                    out.push((x, v));
                }
                a += 1;
                b += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push((x, row[a].1.clone()));
                a += 1;
            }
            (Some(_), Some(y)) => {
                let v = f.neg(&f.mul(factor, &pivot[b].1));
                if !f.is_zero(&v) {
                    out.push((y, v));
                }
                b += 1;
            }
            (Some(x), None) => {
                out.push((x, row[a].1.clone()));
                a += 1;
            }
            (None, Some(y)) => {
                let v = f.neg(&f.mul(factor, &pivot[b].1));
                if !f.is_zero(&v) {
                    out.push((y, v));
                }
                b += 1;
            }
            (None, None) => break,
        }
    }
    out
}

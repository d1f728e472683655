//! Assembly of the normalized cohomology first page, the `d1` differential,
//! and the second page.
//!
//! For a fixed row `q` the support in `p` is finite: chords of total degree
//! `q` can touch at most `2q/(n-1)` columns (braids: `q/(n-2)` slots), so
//! every row is computed exactly, never truncated silently.  `d1` is the
//! alternating sum of the coface pullbacks `sum_{i=0}^p (-1)^i (d^i)*`
//! projected to the normalized basis, which is plain basis filtering because
//! straightening never enlarges the set of touched columns.

use crate::graph::Family;
use crate::linalg::{Field, SparseMatrix};
use crate::models::{LevelMono, Model, ZLevelClass};
use crate::chords::Straightener;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::time::Instant;

/// Largest column count that can carry a nonzero normalized class in row
/// `q`: `floor(2q/(n-1))` for links/hlinks, `floor(q/(n-2))` for braids.
pub fn support_pmax(model: &Model, q: u32) -> u32 {
    let spec = model.spec();
    match spec.family.normalized() {
        Family::Braids => q / (spec.n - 2),
        _ => 2 * q / (spec.n - 1),
    }
}

/// Dimension of the normalized first page at `(-p, q)`.
pub fn e1_dims(model: &Model, p: u32, q: u32) -> usize {
    model.normalized_basis(p, q).len()
}

/// Matrix of `d1 : E1^{-p,q} -> E1^{-(p-1),q}`, columns indexed by the
/// normalized basis at level `p`, rows at level `p-1`.
pub fn d1_matrix<F: Field>(model: &Model, field: &F, p: u32, q: u32) -> SparseMatrix<F> {
    assert!(p >= 1, "d1 needs a positive source level");
    let src = model.normalized_basis(p, q);
    let dst = model.normalized_basis(p - 1, q);
    let dst_index: HashMap<LevelMono, usize> = dst
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let tgt_graph = model.level_graph(p - 1);
    let mut st = Straightener::new(&tgt_graph, model.spec().algebra_ambient());
    let mut triplets: Vec<(usize, usize, F::Elem)> = Vec::new();
    for (col, mono) in src.iter().enumerate() {
        let mut acc = ZLevelClass::zero();
        for i in 0..=p {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let z = model
                .coface_mono(p, i, mono, &mut st)
                .expect("coface index in range");
            acc.add_scaled(&z, sign);
        }
        for (m2, c) in acc.iter() {
            // Projection to the normalized quotient: drop monomials with an
            // untouched column (they span the degenerate subspace).
            if let Some(&row) = dst_index.get(m2) {
                let e = field.from_i64(c);
                if !field.is_zero(&e) {
                    triplets.push((row, col, e));
                }
            }
        }
    }
    SparseMatrix::from_triplets(field.clone(), dst.len(), src.len(), triplets)
}

/// One `(p, q)` spot of the report.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct PageEntry {
    pub p: u32,
    pub e1: usize,
    /// `None` when the row was truncated before ranks were computed.
    pub e2: Option<usize>,
}

/// One fully computed (or explicitly truncated) row of the report.
#[derive(Debug, Clone, Serialize)]
pub struct RowReport {
    pub q: u32,
    pub entries: Vec<PageEntry>,
    pub euler_e1: i64,
    pub euler_e2: Option<i64>,
    /// `d1 ∘ d1 = 0`, when the check was requested and the row not truncated.
    pub d1sq_ok: Option<bool>,
    /// E1 support respects the vanishing window for `p >= 1`
    /// (links/hlinks only).
    pub vanishing_ok: Option<bool>,
    pub truncated: bool,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

/// Page computation options.
#[derive(Debug, Clone)]
pub struct PageOptions {
    /// Verify `d1 ∘ d1 = 0` on every row.
    pub check_d1sq: bool,
    /// Abort a row (flagging it truncated) if a normalized basis exceeds
    /// this size.
    pub max_basis: Option<usize>,
}

impl Default for PageOptions {
    fn default() -> Self {
        PageOptions {
            check_d1sq: true,
            max_basis: None,
        }
    }
}

/// The assembled report for rows `0..=q_max`.
#[derive(Debug, Clone, Serialize)]
pub struct PageReport {
    pub family: Family,
    pub strands: u32,
    pub ambient: u32,
    pub field: crate::linalg::FieldSpec,
    pub q_max: u32,
    pub rows: Vec<RowReport>,
}

impl PageReport {
    pub fn entry(&self, q: u32, p: u32) -> Option<&PageEntry> {
        self.rows
            .get(q as usize)
            .and_then(|r| r.entries.iter().find(|e| e.p == p))
    }

    pub fn any_truncated(&self) -> bool {
        self.rows.iter().any(|r| r.truncated)
    }

    pub fn euler_conserved(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.truncated || r.euler_e2 == Some(r.euler_e1))
    }

    pub fn d1sq_all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.d1sq_ok != Some(false))
    }

    pub fn vanishing_all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.vanishing_ok != Some(false))
    }
}

/// Compute E1 dimensions, d1 ranks, and E2 dimensions for all rows
/// `q <= q_max`.  Rows are independent and run in parallel.
pub fn e2_page<F: Field>(
    model: &Model,
    field: &F,
    q_max: u32,
    opts: &PageOptions,
) -> PageReport {
    let spec = *model.spec();
    let rows: Vec<RowReport> = (0..=q_max)
        .into_par_iter()
        .map(|q| compute_row(model, field, q, opts))
        .collect();
    PageReport {
        family: spec.family,
        strands: spec.m,
        ambient: spec.n,
        field: spec.field,
        q_max,
        rows,
    }
}

fn compute_row<F: Field>(model: &Model, field: &F, q: u32, opts: &PageOptions) -> RowReport {
    let start = Instant::now();
    let pmax = support_pmax(model, q);
    let dims: Vec<usize> = (0..=pmax + 1)
        .map(|p| e1_dims(model, p, q))
        .collect();
    debug_assert_eq!(dims[pmax as usize + 1], 0, "support bound violated");

    let vanishing_ok = vanishing_row_ok(model, q, &dims);
    let euler_e1: i64 = dims
        .iter()
        .enumerate()
        .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum();

    if let Some(limit) = opts.max_basis {
        if dims.iter().any(|&d| d > limit) {
            let entries = (0..=pmax)
                .map(|p| PageEntry {
                    p,
                    e1: dims[p as usize],
                    e2: None,
                })
                .collect();
            return RowReport {
                q,
                entries,
                euler_e1,
                euler_e2: None,
                d1sq_ok: None,
                vanishing_ok,
                truncated: true,
                elapsed_ms: start.elapsed().as_millis(),
            };
        }
    }

    // d1 matrices into level p-1, for p = 1..=pmax+1 (the last one is
    // 0-dimensional but keeps the rank bookkeeping uniform).
    let mats: Vec<SparseMatrix<F>> = (1..=pmax + 1)
        .map(|p| d1_matrix(model, field, p, q))
        .collect();
    let ranks: Vec<usize> = {
        let mut r: Vec<usize> = mats.par_iter().map(|m| m.rank()).collect();
        r.push(0); // incoming rank beyond the support
        r
    };

    let d1sq_ok = if opts.check_d1sq {
        // mats[idx] is d1 at level idx+1; check d1_p ∘ d1_{p+1} = 0.
        Some(
            (1..=pmax)
                .into_par_iter()
                .all(|p| {
                    let a = &mats[p as usize - 1];
                    let b = &mats[p as usize];
                    a.multiply(b).is_zero()
                }),
        )
    } else {
        None
    };

    let entries: Vec<PageEntry> = (0..=pmax)
        .map(|p| {
            let e1 = dims[p as usize];
            let rank_out = if p == 0 { 0 } else { ranks[p as usize - 1] };
            let rank_in = ranks[p as usize];
            let e2 = e1 - rank_out - rank_in;
            PageEntry {
                p,
                e1,
                e2: Some(e2),
            }
        })
        .collect();
    let euler_e2: i64 = entries
        .iter()
        .map(|e| {
            let d = e.e2.unwrap() as i64;
            if e.p % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .sum();

    RowReport {
        q,
        entries,
        euler_e1,
        euler_e2: Some(euler_e2),
        d1sq_ok,
        vanishing_ok,
        truncated: false,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// E1 must vanish outside `p(n-1)/2 <= q <= (pm-1)(n-1)` for `p >= 1`
/// (links and hlinks; the braid model has no such stated window).
fn vanishing_row_ok(model: &Model, q: u32, dims: &[usize]) -> Option<bool> {
    let spec = model.spec();
    if spec.family.normalized() == Family::Braids {
        return None;
    }
    let ok = dims.iter().enumerate().skip(1).all(|(p, &d)| {
        if d == 0 {
            return true;
        }
        let (q_low_num, q_low_den, q_high) =
            crate::connectivity::vanishing_window(spec.m, p as u32, spec.n);
        // q >= p(n-1)/2 i.e. 2q >= p(n-1), and q <= (pm-1)(n-1).
        (q as i64) * q_low_den >= q_low_num && (q as i64) <= q_high
    });
    Some(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use crate::linalg::{FieldSpec, PrimeField, Rationals};
    use crate::models::ModelSpec;

    fn model(family: Family, m: u32, n: u32) -> Model {
        Model::new(ModelSpec::new(family, m, n, FieldSpec::Rationals).unwrap()).unwrap()
    }

    #[test]
    fn e1_dims_examples() {
        let m1 = model(Family::Links, 1, 4);
        assert_eq!(e1_dims(&m1, 2, 3), 1);
        let m2 = model(Family::Links, 2, 4);
        assert_eq!(e1_dims(&m2, 2, 3), 4);
        assert_eq!(e1_dims(&m2, 5, 3), 0);
    }

    #[test]
    fn d1_one_strand_row3() {
        // Target basis is empty: the 0x1 matrix.
        let m = model(Family::Links, 1, 4);
        let d = d1_matrix(&m, &Rationals, 2, 3);
        assert_eq!((d.nrows(), d.ncols()), (0, 1));
        assert_eq!(d.rank(), 0);
    }

    #[test]
    fn d1_two_strands_row3() {
        // 1x4 of rank 1: same-strand chords die, the two inter-strand
        // chords map to minus the single column-1 chord.
        let m = model(Family::Links, 2, 4);
        let d = d1_matrix(&m, &Rationals, 2, 3);
        assert_eq!((d.nrows(), d.ncols()), (1, 4));
        assert_eq!(d.rank(), 1);
        assert_eq!(d.kernel_dim(), 3);
        let row = d.row(0);
        assert_eq!(row.len(), 2);
        for (_, v) in row {
            assert_eq!(v, &Rationals.from_i64(-1));
        }
    }

    #[test]
    fn d1_empty_when_degree_mismatch() {
        let m = model(Family::Links, 2, 4);
        let d = d1_matrix(&m, &Rationals, 2, 4);
        assert_eq!((d.nrows(), d.ncols()), (0, 0));
    }

    #[test]
    fn e2_row3_one_strand() {
        let m = model(Family::Links, 1, 4);
        let report = e2_page(&m, &Rationals, 3, &PageOptions::default());
        let row = &report.rows[3];
        assert!(row.d1sq_ok.unwrap());
        assert_eq!(row.euler_e1, row.euler_e2.unwrap());
        for e in &row.entries {
            let expect = if e.p == 2 { 1 } else { 0 };
            assert_eq!(e.e2, Some(expect), "p = {}", e.p);
        }
    }

    #[test]
    fn e2_row3_two_strands() {
        let m = model(Family::Links, 2, 4);
        let report = e2_page(&m, &Rationals, 3, &PageOptions::default());
        let row = &report.rows[3];
        assert_eq!(report.entry(3, 1).unwrap().e2, Some(0));
        assert_eq!(report.entry(3, 2).unwrap().e2, Some(3));
        assert!(row.vanishing_ok.unwrap());
        assert!(report.euler_conserved());
    }

    #[test]
    fn braid_rows_match_loop_space() {
        // m=2, n=6: E2 is one-dimensional exactly on the diagonal q = 4p.
        let m = model(Family::Braids, 2, 6);
        let report = e2_page(&m, &Rationals, 12, &PageOptions::default());
        for row in &report.rows {
            for e in &row.entries {
                let expect = if row.q == 4 * e.p { 1 } else { 0 };
                assert_eq!(e.e2, Some(expect), "q={} p={}", row.q, e.p);
            }
            assert!(row.d1sq_ok.unwrap());
        }
    }

    #[test]
    fn knots_alias_matches_links_m1() {
        let a = Model::new(ModelSpec::new(Family::Knots, 1, 4, FieldSpec::Rationals).unwrap())
            .unwrap();
        let b = model(Family::Links, 1, 4);
        let ra = e2_page(&a, &Rationals, 6, &PageOptions::default());
        let rb = e2_page(&b, &Rationals, 6, &PageOptions::default());
        for (rowa, rowb) in ra.rows.iter().zip(&rb.rows) {
            assert_eq!(rowa.entries, rowb.entries);
        }
    }

    #[test]
    fn prime_field_row_matches_rational_row_here() {
        let m = model(Family::Links, 2, 4);
        let f2 = PrimeField::new(2).unwrap();
        let over_q = e2_page(&m, &Rationals, 3, &PageOptions::default());
        let over_f2 = e2_page(&m, &f2, 3, &PageOptions::default());
        for (a, b) in over_q.rows.iter().zip(&over_f2.rows) {
            for (ea, eb) in a.entries.iter().zip(&b.entries) {
                assert_eq!(ea.e1, eb.e1);
                // Mod-2 dimensions can only grow; here they agree.
                assert_eq!(ea.e2, eb.e2);
            }
        }
    }

    #[test]
    fn prime_field_dimensions_dominate_rational_ones() {
        // Rank can only drop under reduction mod p, so E2 dims can only
        // grow.  (They genuinely do grow here at q = 6 over F_2.)
        let m = model(Family::Links, 2, 4);
        let f2 = PrimeField::new(2).unwrap();
        let over_q = e2_page(&m, &Rationals, 6, &PageOptions::default());
        let over_f2 = e2_page(&m, &f2, 6, &PageOptions::default());
        for (a, b) in over_q.rows.iter().zip(&over_f2.rows) {
            for (ea, eb) in a.entries.iter().zip(&b.entries) {
                assert!(eb.e2.unwrap() >= ea.e2.unwrap(), "q={} p={}", a.q, ea.p);
            }
        }
    }

    #[test]
    fn e2_never_exceeds_e1() {
        for (fam, m_count, n) in [
            (Family::Links, 2, 4),
            (Family::HLinks, 2, 5),
            (Family::Braids, 3, 5),
        ] {
            let m = model(fam, m_count, n);
            let report = e2_page(&m, &Rationals, 8, &PageOptions::default());
            for row in &report.rows {
                for e in &row.entries {
                    assert!(e.e2.unwrap() <= e.e1, "{fam} q={} p={}", row.q, e.p);
                }
            }
        }
    }

    #[test]
    fn truncation_is_explicit() {
        let m = model(Family::Links, 2, 4);
        let opts = PageOptions {
            check_d1sq: true,
            max_basis: Some(2),
        };
        let report = e2_page(&m, &Rationals, 3, &opts);
        let row = &report.rows[3];
        assert!(row.truncated);
        assert!(row.entries.iter().any(|e| e.e2.is_none()));
        assert!(report.any_truncated());
    }
}

//! Graphs underlying the chord-diagram algebras.
//!
//! A [`Graph`] records the vertex/edge combinatorics of the subspace
//! arrangement whose complement is the relevant (partial) configuration space:
//! complete graphs for knots/links and braid tensor factors, complete
//! multipartite graphs (parts = strands) for homotopy links.  Edges carry a
//! fixed total order — lexicographic on (max endpoint, min endpoint) — which
//! defines broken circuits and hence the normal-form basis.
//!
//! The chromatic polynomial lives here as well: computed by plain
//! deletion-contraction, it is the independent oracle for the ranks of the
//! chord-diagram algebra via `sum_k b_k x^k = (-x)^v chi_G(-1/x)`.

use crate::poly::Poly;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

/// Index of an edge in the graph's fixed edge order.
pub type EdgeId = u32;

/// The four families of cosimplicial models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Knots,
    Links,
    HLinks,
    Braids,
}

impl Family {
    /// Knots are the `m = 1` case of links; everything downstream treats them
    /// identically.
    pub fn normalized(self) -> Family {
        match self {
            Family::Knots => Family::Links,
            f => f,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Knots => "knots",
            Family::Links => "links",
            Family::HLinks => "hlinks",
            Family::Braids => "braids",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "knots" | "knot" => Ok(Family::Knots),
            "links" | "link" => Ok(Family::Links),
            "hlinks" | "hlink" | "homotopy-links" => Ok(Family::HLinks),
            "braids" | "braid" => Ok(Family::Braids),
            other => Err(format!("unknown family '{other}'")),
        }
    }
}

/// An undirected simple graph with a part label per vertex.
///
/// Invariants: no loops, no repeated edges, no edge inside a part.  Edges are
/// stored as `(u, v)` with `u < v`, sorted by `(v, u)`; an [`EdgeId`] is the
/// position in that order.
#[derive(Debug, Clone)]
pub struct Graph {
    vertex_count: usize,
    part: Vec<u32>,
    edges: Vec<(u32, u32)>,
    index: HashMap<(u32, u32), EdgeId>,
}

impl Graph {
    pub fn new(vertex_count: usize, part: Vec<u32>, edge_list: &[(u32, u32)]) -> Result<Graph> {
        assert_eq!(part.len(), vertex_count, "one part label per vertex");
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(a, b) in edge_list {
            if a as usize >= vertex_count || b as usize >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: a.max(b),
                    vertex_count,
                });
            }
            if a == b {
                return Err(Error::LoopEdge(a));
            }
            let (u, v) = (a.min(b), a.max(b));
            if part[u as usize] == part[v as usize] {
                return Err(Error::EdgeWithinPart(u, v));
            }
            edges.push((u, v));
        }
        edges.sort_by_key(|&(u, v)| (v, u));
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedEdge(w[0].0, w[0].1));
        }
        let index = edges
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i as EdgeId))
            .collect();
        Ok(Graph {
            vertex_count,
            part,
            edges,
            index,
        })
    }

    /// Complete graph on `v` vertices (all part labels distinct).
    pub fn complete(v: usize) -> Graph {
        let part = (0..v as u32).collect();
        let mut edges = Vec::with_capacity(v * v.saturating_sub(1) / 2);
        for b in 0..v as u32 {
            for a in 0..b {
                edges.push((a, b));
            }
        }
        Graph::new(v, part, &edges).expect("complete graph is valid")
    }

    /// Complete multipartite graph; `sizes[i]` vertices carry part label `i`,
    /// laid out contiguously (part-major vertex order).
    pub fn complete_multipartite(sizes: &[usize]) -> Graph {
        let v: usize = sizes.iter().sum();
        let mut part = Vec::with_capacity(v);
        for (label, &s) in sizes.iter().enumerate() {
            part.extend(std::iter::repeat_n(label as u32, s));
        }
        let mut edges = Vec::new();
        for b in 0..v as u32 {
            for a in 0..b {
                if part[a as usize] != part[b as usize] {
                    edges.push((a, b));
                }
            }
        }
        Graph::new(v, part, &edges).expect("multipartite graph is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn part_of(&self, v: u32) -> u32 {
        self.part[v as usize]
    }

    /// Endpoints of an edge, always `(u, v)` with `u < v`.
    pub fn endpoints(&self, e: EdgeId) -> (u32, u32) {
        self.edges[e as usize]
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Edge id joining `a` and `b`, if present (order of arguments ignored).
    pub fn edge_between(&self, a: u32, b: u32) -> Option<EdgeId> {
        let key = (a.min(b), a.max(b));
        self.index.get(&key).copied()
    }

    /// Whether every pair of vertices is joined (enables the distinct-maxima
    /// shortcut for broken-circuit checks).
    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.vertex_count * self.vertex_count.saturating_sub(1) / 2
    }
}

/// Graph of chord-diagram generators for a family at `p` columns.
///
/// * links/knots: complete graph on `p*m` points;
/// * hlinks: complete multipartite graph, `m` parts (strands) of `p` points;
/// * braids: complete graph on `m` points (one tensor factor).
///
/// `p = 0` yields the empty graph for links/hlinks.
pub fn build_graph(family: Family, m: u32, p: u32) -> Graph {
    match family.normalized() {
        Family::Links => Graph::complete((m * p) as usize),
        Family::HLinks => Graph::complete_multipartite(&vec![p as usize; m as usize]),
        Family::Braids => Graph::complete(m as usize),
        Family::Knots => unreachable!("normalized"),
    }
}

/// Chromatic polynomial by deletion-contraction.
///
/// This is the independent oracle for nbc counts; it shares no code with the
/// enumeration in [`crate::chords`].
pub fn chromatic_polynomial(g: &Graph) -> Poly {
    let edges: Vec<(u32, u32)> = g.edges.to_vec();
    let mut memo = HashMap::new();
    chromatic_rec(g.vertex_count, edges, &mut memo)
}

type ChromaticMemo = HashMap<(usize, Vec<(u32, u32)>), Poly>;

fn chromatic_rec(v: usize, mut edges: Vec<(u32, u32)>, memo: &mut ChromaticMemo) -> Poly {
    edges.sort_unstable();
    edges.dedup();
    if edges.is_empty() {
        return Poly::var_pow(v);
    }
    if edges.len() == v * (v - 1) / 2 {
        // Complete graph: falling factorial t(t-1)...(t-v+1).
        let mut p = Poly::one();
        for i in 0..v as i64 {
            p = &p * &Poly::from_coeffs(vec![BigInt::from(-i), BigInt::from(1)]);
        }
        return p;
    }
    let key = (v, edges.clone());
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }

    // Split off connected components (isolated vertices contribute t each).
    let mut comp = vec![usize::MAX; v];
    let mut ncomp = 0usize;
    for start in 0..v {
        if comp[start] != usize::MAX {
            continue;
        }
        let c = ncomp;
        ncomp += 1;
        let mut stack = vec![start];
        comp[start] = c;
        while let Some(x) = stack.pop() {
            for &(a, b) in &edges {
                let (a, b) = (a as usize, b as usize);
                let other = if a == x {
                    b
                } else if b == x {
                    a
                } else {
                    continue;
                };
                if comp[other] == usize::MAX {
                    comp[other] = c;
                    stack.push(other);
                }
            }
        }
    }
    let result = if ncomp > 1 {
        let mut acc = Poly::one();
        for c in 0..ncomp {
            let verts: Vec<usize> = (0..v).filter(|&x| comp[x] == c).collect();
            let relabel: HashMap<usize, u32> = verts
                .iter()
                .enumerate()
                .map(|(new, &old)| (old, new as u32))
                .collect();
            let sub: Vec<(u32, u32)> = edges
                .iter()
                .filter(|&&(a, _)| comp[a as usize] == c)
                .map(|&(a, b)| (relabel[&(a as usize)], relabel[&(b as usize)]))
                .collect();
            acc = &acc * &chromatic_rec(verts.len(), sub, memo);
        }
        acc
    } else {
        // Deletion-contraction on the edge whose endpoints have the largest
        // degree sum, which drives the contraction branch toward completeness.
        let mut deg = vec![0usize; v];
        for &(a, b) in &edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        let &(eu, ev) = edges
            .iter()
            .max_by_key(|&&(a, b)| deg[a as usize] + deg[b as usize])
            .unwrap();
        let deleted: Vec<(u32, u32)> = edges
            .iter()
            .copied()
            .filter(|&e| e != (eu, ev))
            .collect();
        // Contract ev into eu; the last vertex takes over ev's id so labels
        // stay in 0..v-1.  (When ev is already the last vertex the first arm
        // of `map` shadows the second, which is what we want.)
        let contracted: Vec<(u32, u32)> = deleted
            .iter()
            .filter_map(|&(a, b)| {
                let map = |x: u32| {
                    if x == ev {
                        eu
                    } else if x == (v as u32 - 1) {
                        ev
                    } else {
                        x
                    }
                };
                let (a, b) = (map(a), map(b));
                if a == b {
                    None
                } else {
                    Some((a.min(b), a.max(b)))
                }
            })
            .collect();
        &chromatic_rec(v, deleted, memo) - &chromatic_rec(v - 1, contracted, memo)
    };
    memo.insert(key, result.clone());
    result
}

/// Extract nbc counts from a chromatic polynomial via
/// `sum_k b_k x^k = (-x)^v chi(-1/x)`, i.e. `b_k = (-1)^k [t^{v-k}] chi`.
///
/// Panics if the coefficients do not alternate in sign as Whitney's theorem
/// demands — that would mean the polynomial is not chromatic.
pub fn nbc_counts_from_chromatic(chi: &Poly, vertex_count: usize) -> Vec<BigInt> {
    let mut counts = Vec::with_capacity(vertex_count + 1);
    for k in 0..=vertex_count {
        let c = chi.coeff(vertex_count - k);
        let b = if k % 2 == 0 { c } else { -c };
        assert!(
            !b.is_negative(),
            "coefficient of degree {} has unexpected sign",
            vertex_count - k
        );
        counts.push(b);
    }
    while counts.last().is_some_and(|c| c.is_zero()) {
        counts.pop();
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn build_graph_families() {
        // K3 for one strand, three columns.
        let g = build_graph(Family::Links, 1, 3);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        // K_{2,2} for two strands, two columns of homotopy links.
        let g = build_graph(Family::HLinks, 2, 2);
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        // K4 for two strands, two columns of links.
        let g = build_graph(Family::Links, 2, 2);
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        // Braids: complete graph on m vertices, columns ignored.
        let g = build_graph(Family::Braids, 3, 5);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        // p = 0 yields the empty graph.
        let g = build_graph(Family::Links, 2, 0);
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn knots_alias_links() {
        let a = build_graph(Family::Knots, 1, 4);
        let b = build_graph(Family::Links, 1, 4);
        assert_eq!(a.edges(), b.edges());
    }

    #[test]
    fn edge_order_is_max_then_min() {
        let g = Graph::complete(4);
        let keys: Vec<(u32, u32)> = g.edges().iter().map(|&(u, v)| (v, u)).collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
        assert_eq!(g.endpoints(0), (0, 1));
        assert_eq!(g.edge_between(2, 0), Some(1));
        assert_eq!(g.edge_between(3, 2), Some(5));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Graph::new(3, vec![0, 1, 2], &[(1, 1)]),
            Err(Error::LoopEdge(1))
        ));
        assert!(matches!(
            Graph::new(3, vec![0, 1, 2], &[(0, 1), (1, 0)]),
            Err(Error::RepeatedEdge(0, 1))
        ));
        assert!(matches!(
            Graph::new(4, vec![0, 0, 1, 1], &[(0, 1)]),
            Err(Error::EdgeWithinPart(0, 1))
        ));
        assert!(matches!(
            Graph::new(2, vec![0, 1], &[(0, 5)]),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn chromatic_triangle() {
        // k(k-1)(k-2) = k^3 - 3k^2 + 2k.
        let chi = chromatic_polynomial(&Graph::complete(3));
        assert_eq!(
            chi,
            Poly::from_coeffs(vec![big(0), big(2), big(-3), big(1)])
        );
    }

    #[test]
    fn chromatic_edgeless() {
        let g = Graph::new(5, (0..5).collect(), &[]).unwrap();
        assert_eq!(chromatic_polynomial(&g), Poly::var_pow(5));
    }

    #[test]
    fn chromatic_k22() {
        // Derived by hand before the build: k^4 - 4k^3 + 6k^2 - 3k.
        let chi = chromatic_polynomial(&Graph::complete_multipartite(&[2, 2]));
        assert_eq!(
            chi,
            Poly::from_coeffs(vec![big(0), big(-3), big(6), big(-4), big(1)])
        );
    }

    #[test]
    fn nbc_counts_from_k22() {
        let chi = chromatic_polynomial(&Graph::complete_multipartite(&[2, 2]));
        let counts = nbc_counts_from_chromatic(&chi, 4);
        assert_eq!(counts, vec![big(1), big(4), big(6), big(3)]);
    }

    #[test]
    fn nbc_counts_complete_graph_match_product() {
        // For K_v the generating function is prod_{i=1}^{v-1} (1 + i x).
        for v in 2..=7usize {
            let chi = chromatic_polynomial(&Graph::complete(v));
            let counts = nbc_counts_from_chromatic(&chi, v);
            let mut expect = Poly::one();
            for i in 1..v as i64 {
                expect = &expect * &Poly::from_coeffs(vec![BigInt::one(), big(i)]);
            }
            assert_eq!(counts, expect.coeffs().to_vec(), "K_{v}");
        }
    }
}

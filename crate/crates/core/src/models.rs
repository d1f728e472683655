//! Cohomology-level builders for the diagonal cosimplicial models.
//!
//! A model is determined by a family, a strand count `m`, an ambient
//! dimension `n` and a coefficient field.  Level `p` carries the chord
//! algebra of [`build_graph`] at `p` columns (links/hlinks) or the `p`-fold
//! tensor power of the `K_m` chord algebra in dimension `n-1` (braids).
//!
//! Cofaces act by pullback: the two boundary cofaces insert fixed boundary
//! configurations, so any chord touching the corresponding column dies (the
//! direction map lands in a hemisphere); a middle coface merges two adjacent
//! columns, sending a chord whose endpoints collide to zero (the direction of
//! a repeated point is the constant `e`) and re-straightening the rest.
//! Codegeneracies pull back to injective column relabelings (braids: unit
//! slot insertion).

use crate::chords::{self, Monomial, Straightener};
use crate::graph::{build_graph, Family, Graph};
use crate::linalg::{Field, FieldSpec};
use crate::simplex::OperatorFamily;
use crate::{Error, Result};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

/// Which model to build: family, strand count, ambient dimension and the
/// coefficient field for downstream linear algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelSpec {
    pub family: Family,
    pub m: u32,
    pub n: u32,
    pub field: FieldSpec,
}

impl ModelSpec {
    pub fn new(family: Family, m: u32, n: u32, field: FieldSpec) -> Result<ModelSpec> {
        let spec = ModelSpec { family, m, n, field };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 1 {
            return Err(Error::InvalidModel("strand count must be at least 1".into()));
        }
        if self.family == Family::Knots && self.m != 1 {
            return Err(Error::InvalidModel(
                "knots are the one-strand case; use family=links for m > 1".into(),
            ));
        }
        match self.family {
            Family::Braids => {
                if self.n < 4 {
                    return Err(Error::InvalidModel(
                        "braids need ambient dimension n >= 4 (generator degree n-2 >= 2)".into(),
                    ));
                }
            }
            _ => {
                if self.n < 3 {
                    return Err(Error::InvalidModel(
                        "ambient dimension n >= 3 required".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Degree of one chord generator.
    pub fn generator_degree(&self) -> u32 {
        match self.family.normalized() {
            Family::Braids => self.n - 2,
            _ => self.n - 1,
        }
    }

    /// Ambient dimension parameter of the underlying chord algebra
    /// (braids use configurations in one dimension lower).
    pub fn algebra_ambient(&self) -> u32 {
        match self.family.normalized() {
            Family::Braids => self.n - 1,
            _ => self.n,
        }
    }

    pub fn is_braids(&self) -> bool {
        self.family.normalized() == Family::Braids
    }
}

/// Strand-major linear index of grid position (strand `a`, column `l`),
/// both 1-based: `(a-1)p + l`.
pub fn grid_index(m: u32, p: u32, a: u32, l: u32) -> Result<u32> {
    if a < 1 || a > m || l < 1 || l > p {
        return Err(Error::GridOutOfRange { m, p, a, l });
    }
    Ok((a - 1) * p + l)
}

/// Inverse of [`grid_index`].
pub fn grid_unindex(m: u32, p: u32, idx: u32) -> Result<(u32, u32)> {
    if idx < 1 || idx > m * p {
        return Err(Error::GridOutOfRange { m, p, a: 0, l: idx });
    }
    let a = (idx - 1) / p + 1;
    let l = (idx - 1) % p + 1;
    Ok((a, l))
}

/// A basis monomial of one cohomology level: a chord diagram for
/// links/hlinks, a tensor of per-slot diagrams for braids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LevelMono {
    Flat(Monomial),
    Tensor(Box<[Monomial]>),
}

impl LevelMono {
    pub fn weight(&self) -> usize {
        match self {
            LevelMono::Flat(m) => m.weight(),
            LevelMono::Tensor(slots) => slots.iter().map(|s| s.weight()).sum(),
        }
    }

    pub fn as_flat(&self) -> &Monomial {
        match self {
            LevelMono::Flat(m) => m,
            LevelMono::Tensor(_) => panic!("expected a flat monomial"),
        }
    }
}

/// Integer-coefficient combination of level monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZLevelClass {
    terms: BTreeMap<LevelMono, i64>,
}

impl ZLevelClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_mono(m: LevelMono) -> Self {
        let mut c = Self::default();
        c.add_term(m, 1);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &LevelMono) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LevelMono, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn add_term(&mut self, m: LevelMono, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = o.get_mut();
                *v = v.checked_add(c).expect("coefficient overflow");
                if *v == 0 {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &ZLevelClass, scale: i64) {
        if scale == 0 {
            return;
        }
        for (m, c) in other.iter() {
            self.add_term(m.clone(), c.checked_mul(scale).expect("overflow"));
        }
    }
}

/// Level class with coefficients in a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelClass<F: Field> {
    terms: BTreeMap<LevelMono, F::Elem>,
}

impl<F: Field> LevelClass<F> {
    pub fn zero() -> Self {
        LevelClass {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_mono(field: &F, m: LevelMono) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, field.one());
        LevelClass { terms }
    }

    pub fn from_z(field: &F, z: &ZLevelClass) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in z.iter() {
            let e = field.from_i64(c);
            if !field.is_zero(&e) {
                terms.insert(m.clone(), e);
            }
        }
        LevelClass { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LevelMono, &F::Elem)> {
        self.terms.iter()
    }

    fn add_scaled_z(&mut self, field: &F, z: &ZLevelClass, scale: &F::Elem) {
        for (m, c) in z.iter() {
            let add = field.mul(scale, &field.from_i64(c));
            match self.terms.entry(m.clone()) {
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let v = field.add(o.get(), &add);
                    if field.is_zero(&v) {
                        o.remove();
                    } else {
                        *o.get_mut() = v;
                    }
                }
                std::collections::btree_map::Entry::Vacant(vac) => {
                    if !field.is_zero(&add) {
                        vac.insert(add);
                    }
                }
            }
        }
    }
}

/// A model with memoized level graphs and bases.  The caches are internally
/// synchronized; results do not depend on them.
type BasisKey = (u32, u32, bool);

pub struct Model {
    spec: ModelSpec,
    graphs: Mutex<HashMap<u32, Arc<Graph>>>,
    bases: Mutex<HashMap<BasisKey, Arc<Vec<LevelMono>>>>,
}

impl Model {
    pub fn new(spec: ModelSpec) -> Result<Model> {
        spec.validate()?;
        Ok(Model {
            spec,
            graphs: Mutex::new(HashMap::new()),
            bases: Mutex::new(HashMap::new()),
        })
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    /// The chord-generator graph of level `p` (braids: of one tensor slot).
    pub fn level_graph(&self, p: u32) -> Arc<Graph> {
        let key = if self.spec.is_braids() { 0 } else { p };
        let mut cache = self.graphs.lock().unwrap();
        cache
            .entry(key)
            .or_insert_with(|| Arc::new(build_graph(self.spec.family, self.spec.m, key)))
            .clone()
    }

    fn columns(&self, p: u32) -> u32 {
        p
    }

    /// Column (0-based) of a vertex at level `p`, strand-major layout.
    fn column_of(&self, p: u32, vertex: u32) -> u32 {
        debug_assert!(p > 0);
        vertex % p
    }

    /// Is the monomial part of the normalized basis at level `p`: does it
    /// touch every column (braids: is every slot of positive degree)?
    pub fn is_normalized(&self, p: u32, mono: &LevelMono) -> bool {
        match mono {
            LevelMono::Flat(m) => {
                if p == 0 {
                    return m.weight() == 0;
                }
                let g = self.level_graph(p);
                let mut touched = vec![false; p as usize];
                for v in m.touched_vertices(&g) {
                    touched[self.column_of(p, v) as usize] = true;
                }
                touched.iter().all(|&t| t)
            }
            LevelMono::Tensor(slots) => {
                slots.len() == p as usize && slots.iter().all(|s| s.weight() > 0)
            }
        }
    }

    /// Basis of the full level cohomology in degree `q` (no normalization).
    pub fn full_basis(&self, p: u32, q: u32) -> Arc<Vec<LevelMono>> {
        self.basis(p, q, false)
    }

    /// Basis of the normalized level cohomology in degree `q`: diagrams with
    /// at least one chord endpoint in every column, resp. tensors with every
    /// slot of positive degree.
    pub fn normalized_basis(&self, p: u32, q: u32) -> Arc<Vec<LevelMono>> {
        self.basis(p, q, true)
    }

    fn basis(&self, p: u32, q: u32, normalized: bool) -> Arc<Vec<LevelMono>> {
        if let Some(hit) = self.bases.lock().unwrap().get(&(p, q, normalized)) {
            return hit.clone();
        }
        let result = Arc::new(self.compute_basis(p, q, normalized));
        self.bases
            .lock()
            .unwrap()
            .insert((p, q, normalized), result.clone());
        result
    }

    fn compute_basis(&self, p: u32, q: u32, normalized: bool) -> Vec<LevelMono> {
        let deg = self.spec.generator_degree();
        if !q.is_multiple_of(deg) && q != 0 {
            return Vec::new();
        }
        let k = (q / deg) as usize;
        if self.spec.is_braids() {
            let g = self.level_graph(p);
            let slot_bases: Vec<Vec<Monomial>> = (0..=k)
                .map(|w| chords::enumerate_nbc(&g, w))
                .collect();
            let mut out = Vec::new();
            let mut slots: Vec<Monomial> = Vec::with_capacity(p as usize);
            fn rec(
                slot_bases: &[Vec<Monomial>],
                p: usize,
                rest: usize,
                normalized: bool,
                slots: &mut Vec<Monomial>,
                out: &mut Vec<LevelMono>,
            ) {
                if slots.len() == p {
                    if rest == 0 {
                        out.push(LevelMono::Tensor(slots.clone().into_boxed_slice()));
                    }
                    return;
                }
                let remaining_slots = p - slots.len();
                let lo = if normalized { 1 } else { 0 };
                for w in lo..=rest {
                    // Leave room for the later slots.
                    if normalized && rest - w < remaining_slots - 1 {
                        continue;
                    }
                    for mono in &slot_bases[w] {
                        slots.push(mono.clone());
                        rec(slot_bases, p, rest - w, normalized, slots, out);
                        slots.pop();
                    }
                }
            }
            rec(
                &slot_bases,
                p as usize,
                k,
                normalized,
                &mut slots,
                &mut out,
            );
            out
        } else {
            if p == 0 {
                return if k == 0 {
                    vec![LevelMono::Flat(Monomial::empty())]
                } else {
                    Vec::new()
                };
            }
            let g = self.level_graph(p);
            let monos = if normalized {
                let p_us = p as usize;
                let graph = g.clone();
                let this = self;
                chords::enumerate_nbc_pruned(&g, k, move |stack, remaining| {
                    // A branch is dead once even 2 new columns per remaining
                    // chord cannot reach full coverage.
                    let mut cols = vec![false; p_us];
                    for &e in stack {
                        let (u, v) = graph.endpoints(e);
                        cols[this.column_of(p, u) as usize] = true;
                        cols[this.column_of(p, v) as usize] = true;
                    }
                    let touched = cols.iter().filter(|&&t| t).count();
                    touched + 2 * remaining < p_us
                })
            } else {
                chords::enumerate_nbc(&g, k)
            };
            monos
                .into_iter()
                .map(LevelMono::Flat)
                .filter(|m| !normalized || self.is_normalized(p, m))
                .collect()
        }
    }

    /// Pullback of a single level-`p` basis monomial along `d^i`, as an
    /// integer class at level `p-1`.  `st` must be a straightener for the
    /// target level's graph.
    pub fn coface_mono(
        &self,
        p: u32,
        i: u32,
        mono: &LevelMono,
        st: &mut Straightener<'_>,
    ) -> Result<ZLevelClass> {
        if i > p || p == 0 {
            return Err(Error::CofaceIndexOutOfRange { i, p });
        }
        match mono {
            LevelMono::Flat(m) => {
                debug_assert_eq!(
                    st.graph().vertex_count(),
                    (self.spec.m * (p - 1)) as usize,
                    "straightener must live on the target level"
                );
                let src = self.level_graph(p);
                let z = self.flat_coface(p, i, m, &src, st);
                Ok(z)
            }
            LevelMono::Tensor(slots) => {
                assert_eq!(slots.len(), p as usize, "tensor length must equal level");
                Ok(self.tensor_coface(p, i, slots, st))
            }
        }
    }

    fn flat_coface(
        &self,
        p: u32,
        i: u32,
        m: &Monomial,
        src: &Graph,
        st: &mut Straightener<'_>,
    ) -> ZLevelClass {
        let cols = self.columns(p);
        // Column killed by a boundary coface, if any.
        let killed: Option<u32> = if i == 0 {
            Some(0)
        } else if i == p {
            Some(cols - 1)
        } else {
            None
        };
        let col_map = |c: u32| -> u32 {
            match (i, killed) {
                (0, _) => c - 1,
                (_, Some(_)) => c,
                _ => {
                    if c < i {
                        c
                    } else {
                        c - 1
                    }
                }
            }
        };
        let mut word: Vec<u32> = Vec::with_capacity(m.weight());
        for &e in m.edge_ids() {
            let (u, v) = src.endpoints(e);
            let (cu, cv) = (self.column_of(p, u), self.column_of(p, v));
            if let Some(kc) = killed {
                if cu == kc || cv == kc {
                    return ZLevelClass::zero();
                }
            }
            let (au, av) = (u / p, v / p);
            let nu = au * (p - 1) + col_map(cu);
            let nv = av * (p - 1) + col_map(cv);
            if nu == nv {
                // Both endpoints merged to the repeated point; its direction
                // vector is the constant e, so the class dies.  Inter-strand
                // generators can never collide.
                debug_assert_eq!(au, av);
                debug_assert!(
                    self.spec.family.normalized() != Family::HLinks,
                    "hlinks chords are inter-strand"
                );
                return ZLevelClass::zero();
            }
            let id = st
                .graph()
                .edge_between(nu, nv)
                .expect("merged pair is an edge of the target graph");
            word.push(id);
        }
        let z = st.word_ids(&word);
        let mut out = ZLevelClass::zero();
        for (mono, c) in z.iter() {
            out.add_term(LevelMono::Flat(mono.clone()), c);
        }
        out
    }

    fn tensor_coface(
        &self,
        p: u32,
        i: u32,
        slots: &[Monomial],
        st: &mut Straightener<'_>,
    ) -> ZLevelClass {
        let mut out = ZLevelClass::zero();
        if i == 0 || i == p {
            // Augmentation of the first or last slot.
            let idx = if i == 0 { 0 } else { p as usize - 1 };
            if slots[idx].weight() > 0 {
                return out;
            }
            let rest: Vec<Monomial> = slots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != idx)
                .map(|(_, s)| s.clone())
                .collect();
            out.add_term(LevelMono::Tensor(rest.into_boxed_slice()), 1);
            return out;
        }
        // Multiply slots i-1 and i (0-based).
        let a = i as usize - 1;
        let word: Vec<u32> = slots[a]
            .edge_ids()
            .iter()
            .chain(slots[a + 1].edge_ids())
            .copied()
            .collect();
        let product = st.word_ids(&word);
        for (mono, c) in product.iter() {
            let mut new_slots: Vec<Monomial> = Vec::with_capacity(p as usize - 1);
            new_slots.extend_from_slice(&slots[..a]);
            new_slots.push(mono.clone());
            new_slots.extend_from_slice(&slots[a + 2..]);
            out.add_term(LevelMono::Tensor(new_slots.into_boxed_slice()), c);
        }
        out
    }

    /// Pullback of a single level-`p` basis monomial along `s^i`, as an
    /// integer class at level `p+1`: the injective relabeling skipping
    /// column `i+1` (braids: unit insertion at slot `i+1`).
    pub fn codegeneracy_mono(&self, p: u32, i: u32, mono: &LevelMono) -> Result<ZLevelClass> {
        if i > p {
            return Err(Error::CodegeneracyIndexOutOfRange { i, p });
        }
        match mono {
            LevelMono::Flat(m) => {
                let src = self.level_graph(p);
                let dst = self.level_graph(p + 1);
                let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(m.weight());
                for &e in m.edge_ids() {
                    let (u, v) = src.endpoints(e);
                    let map = |x: u32| -> u32 {
                        let a = x / p;
                        let c = self.column_of(p, x);
                        let nc = if c < i { c } else { c + 1 };
                        a * (p + 1) + nc
                    };
                    pairs.push((map(u), map(v)));
                }
                let mut out = ZLevelClass::zero();
                let mono2 = Monomial::from_pairs(&dst, &pairs).expect("relabeled edges exist");
                debug_assert!(chords::is_nbc(&dst, &mono2));
                out.add_term(LevelMono::Flat(mono2), 1);
                Ok(out)
            }
            LevelMono::Tensor(slots) => {
                assert_eq!(slots.len(), p as usize);
                let mut new_slots: Vec<Monomial> = Vec::with_capacity(p as usize + 1);
                new_slots.extend_from_slice(&slots[..i as usize]);
                new_slots.push(Monomial::empty());
                new_slots.extend_from_slice(&slots[i as usize..]);
                let mut out = ZLevelClass::zero();
                out.add_term(LevelMono::Tensor(new_slots.into_boxed_slice()), 1);
                Ok(out)
            }
        }
    }

    /// Integer-class versions acting on whole classes (for the identity
    /// harness and tests).
    pub fn coface_class(&self, p: u32, i: u32, cls: &ZLevelClass) -> Result<ZLevelClass> {
        let tgt = self.level_graph(p.saturating_sub(1));
        let mut st = Straightener::new(&tgt, self.spec.algebra_ambient());
        let mut out = ZLevelClass::zero();
        for (m, c) in cls.iter() {
            let z = self.coface_mono(p, i, m, &mut st)?;
            out.add_scaled(&z, c);
        }
        Ok(out)
    }

    pub fn codegeneracy_class(&self, p: u32, i: u32, cls: &ZLevelClass) -> Result<ZLevelClass> {
        let mut out = ZLevelClass::zero();
        for (m, c) in cls.iter() {
            let z = self.codegeneracy_mono(p, i, m)?;
            out.add_scaled(&z, c);
        }
        Ok(out)
    }

    /// Human-readable monomial using 1-based grid coordinates, e.g.
    /// `(1,1)-(2,2)` for a chord, `[x(1)(2) | 1]` for a braid tensor.
    pub fn display_mono(&self, p: u32, mono: &LevelMono) -> String {
        match mono {
            LevelMono::Flat(m) => {
                if m.weight() == 0 {
                    return "1".into();
                }
                let g = self.level_graph(p);
                m.edge_ids()
                    .iter()
                    .map(|&e| {
                        let (u, v) = g.endpoints(e);
                        let (au, cu) = (u / p + 1, u % p + 1);
                        let (av, cv) = (v / p + 1, v % p + 1);
                        format!("({au},{cu})-({av},{cv})")
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            }
            LevelMono::Tensor(slots) => {
                let g = self.level_graph(p);
                let parts: Vec<String> = slots
                    .iter()
                    .map(|s| {
                        if s.weight() == 0 {
                            "1".to_string()
                        } else {
                            // 1-based strand labels, matching the grid form.
                            s.edge_ids()
                                .iter()
                                .map(|&e| {
                                    let (u, v) = g.endpoints(e);
                                    format!("a({},{})", u + 1, v + 1)
                                })
                                .collect()
                        }
                    })
                    .collect();
                format!("[{}]", parts.join(" | "))
            }
        }
    }
}

/// Pullback of `d^i : [p-1] → [p]` applied to a level-`p` class.
pub fn coface_pullback<F: Field>(
    model: &Model,
    field: &F,
    p: u32,
    i: u32,
    cls: &LevelClass<F>,
) -> Result<LevelClass<F>> {
    if i > p || p == 0 {
        return Err(Error::CofaceIndexOutOfRange { i, p });
    }
    let tgt = model.level_graph(p - 1);
    let mut st = Straightener::new(&tgt, model.spec().algebra_ambient());
    let mut out = LevelClass::zero();
    for (m, c) in cls.terms() {
        let z = model.coface_mono(p, i, m, &mut st)?;
        out.add_scaled_z(field, &z, c);
    }
    Ok(out)
}

/// Pullback of `s^i : [p+1] → [p]` applied to a level-`p` class.
pub fn codegeneracy_pullback<F: Field>(
    model: &Model,
    field: &F,
    p: u32,
    i: u32,
    cls: &LevelClass<F>,
) -> Result<LevelClass<F>> {
    if i > p {
        return Err(Error::CodegeneracyIndexOutOfRange { i, p });
    }
    let mut out = LevelClass::zero();
    for (m, c) in cls.terms() {
        let z = model.codegeneracy_mono(p, i, m)?;
        out.add_scaled_z(field, &z, c);
    }
    Ok(out)
}

/// The cohomology operator family of a model restricted to one degree, for
/// the cosimplicial identity harness.
pub struct CohomologyOps<'m> {
    model: &'m Model,
    q: u32,
}

impl<'m> CohomologyOps<'m> {
    pub fn new(model: &'m Model, q: u32) -> Self {
        CohomologyOps { model, q }
    }
}

impl OperatorFamily for CohomologyOps<'_> {
    type Class = ZLevelClass;

    fn level_basis(&self, p: u32) -> Vec<ZLevelClass> {
        self.model
            .full_basis(p, self.q)
            .iter()
            .cloned()
            .map(ZLevelClass::from_mono)
            .collect()
    }

    fn coface(&self, p: u32, i: u32, x: &ZLevelClass) -> Result<ZLevelClass, String> {
        self.model.coface_class(p, i, x).map_err(|e| e.to_string())
    }

    fn codegeneracy(&self, p: u32, i: u32, x: &ZLevelClass) -> Result<ZLevelClass, String> {
        self.model
            .codegeneracy_class(p, i, x)
            .map_err(|e| e.to_string())
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} m={} n={} over {}",
            self.family, self.m, self.n, self.field
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::check_identities;

    fn model(family: Family, m: u32, n: u32) -> Model {
        Model::new(ModelSpec::new(family, m, n, FieldSpec::Rationals).unwrap()).unwrap()
    }

    fn flat(model: &Model, p: u32, pairs: &[(u32, u32)]) -> LevelMono {
        let g = model.level_graph(p);
        LevelMono::Flat(Monomial::from_pairs(&g, pairs).unwrap())
    }

    #[test]
    fn grid_indexing() {
        assert_eq!(grid_index(2, 3, 1, 1).unwrap(), 1);
        assert_eq!(grid_index(2, 3, 2, 1).unwrap(), 4);
        assert_eq!(grid_index(3, 2, 3, 2).unwrap(), 6);
        assert!(grid_index(2, 3, 3, 1).is_err());
        assert!(grid_index(2, 3, 1, 0).is_err());
        for idx in 1..=6 {
            let (a, l) = grid_unindex(2, 3, idx).unwrap();
            assert_eq!(grid_index(2, 3, a, l).unwrap(), idx);
        }
    }

    #[test]
    fn model_validation() {
        assert!(ModelSpec::new(Family::Knots, 2, 4, FieldSpec::Rationals).is_err());
        assert!(ModelSpec::new(Family::Links, 1, 2, FieldSpec::Rationals).is_err());
        assert!(ModelSpec::new(Family::Braids, 2, 3, FieldSpec::Rationals).is_err());
        assert!(ModelSpec::new(Family::Braids, 2, 4, FieldSpec::Rationals).is_ok());
        assert!(ModelSpec::new(Family::Links, 1, 3, FieldSpec::Rationals).is_ok());
    }

    #[test]
    fn normalized_basis_one_strand() {
        // One chord must touch both columns: exactly alpha_{12}.
        let m = model(Family::Links, 1, 4);
        let basis = m.normalized_basis(2, 3);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], flat(&m, 2, &[(0, 1)]));
        // One-column level has no chords at all for one strand.
        assert!(m.normalized_basis(1, 3).is_empty());
    }

    #[test]
    fn normalized_basis_two_strands() {
        // Weight-1 diagrams touching both columns: chords (a,1)-(b,2).
        let m = model(Family::Links, 2, 4);
        let basis = m.normalized_basis(2, 3);
        assert_eq!(basis.len(), 4);
        // Vanishing below the lower line: q = 3 < p(n-1)/2 for p = 5.
        assert!(m.normalized_basis(5, 3).is_empty());
        // q not a multiple of the generator degree: empty, not an error.
        assert!(m.normalized_basis(2, 4).is_empty());
    }

    #[test]
    fn full_vs_normalized_counts() {
        let m = model(Family::Links, 2, 4);
        // Weight 1 on K4: 6 edges; 4 touch both columns.
        assert_eq!(m.full_basis(2, 3).len(), 6);
        assert_eq!(m.normalized_basis(2, 3).len(), 4);
        // p = 0: only the empty diagram in degree 0.
        assert_eq!(m.full_basis(0, 0).len(), 1);
        assert_eq!(m.normalized_basis(0, 0).len(), 1);
        assert!(m.normalized_basis(0, 3).is_empty());
    }

    #[test]
    fn middle_coface_merges_columns() {
        let m = model(Family::Links, 2, 4);
        // Chord (1,1)-(2,2) at p=2; middle coface d^1 merges the columns.
        let cls = ZLevelClass::from_mono(flat(&m, 2, &[(0, 3)]));
        let out = m.coface_class(2, 1, &cls).unwrap();
        assert_eq!(out.len(), 1);
        let expected = flat(&m, 1, &[(0, 1)]);
        assert_eq!(out.coeff(&expected), 1);
    }

    #[test]
    fn same_strand_merge_dies() {
        // alpha_{12} on one strand: both endpoints become the repeated
        // point.
        let m = model(Family::Links, 1, 4);
        let cls = ZLevelClass::from_mono(flat(&m, 2, &[(0, 1)]));
        let out = m.coface_class(2, 1, &cls).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn boundary_cofaces_kill_touching_chords() {
        let m = model(Family::Links, 2, 4);
        let cls = ZLevelClass::from_mono(flat(&m, 2, &[(0, 3)]));
        // d^0 inserts the boundary column in front: chord touches column 1.
        assert!(m.coface_class(2, 0, &cls).unwrap().is_zero());
        // d^2 = d^p: chord touches column 2.
        assert!(m.coface_class(2, 2, &cls).unwrap().is_zero());
        // A diagram missing the boundary column survives and relabels.
        let m1 = model(Family::Links, 2, 4);
        let g3 = m1.level_graph(3);
        // Chord between (1,2) and (2,3): vertices 1 and 5 at p=3.
        let cls = ZLevelClass::from_mono(LevelMono::Flat(
            Monomial::from_pairs(&g3, &[(1, 5)]).unwrap(),
        ));
        let out = m1.coface_class(3, 0, &cls).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out.coeff(&flat(&m1, 2, &[(0, 3)])), 1);
    }

    #[test]
    fn codegeneracy_skips_column() {
        let m = model(Family::Links, 1, 4);
        // Empty diagram at p=1 maps to the empty diagram at p=2.
        let cls = ZLevelClass::from_mono(LevelMono::Flat(Monomial::empty()));
        let out = m.codegeneracy_class(1, 0, &cls).unwrap();
        assert_eq!(out.len(), 1);
        // Chord (1,1)-(2,1) at p=1 relabels to (1,2)-(2,2) under s^0.
        let m2 = model(Family::Links, 2, 4);
        let cls = ZLevelClass::from_mono(flat(&m2, 1, &[(0, 1)]));
        let out = m2.codegeneracy_class(1, 0, &cls).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out.coeff(&flat(&m2, 2, &[(1, 3)])), 1);
    }

    #[test]
    fn braid_cofaces() {
        let m = model(Family::Braids, 2, 6);
        let g = m.level_graph(2);
        let x = Monomial::from_pairs(&g, &[(0, 1)]).unwrap();
        // x ⊗ x with deg x = 4: augmentation of a positive slot is zero.
        let xx = LevelMono::Tensor(vec![x.clone(), x.clone()].into_boxed_slice());
        let cls = ZLevelClass::from_mono(xx);
        assert!(m.coface_class(2, 0, &cls).unwrap().is_zero());
        // Middle coface multiplies the slots: x·x = 0.
        assert!(m.coface_class(2, 1, &cls).unwrap().is_zero());
        // Unit insertion: s^1 on (x) gives x ⊗ 1.
        let cls = ZLevelClass::from_mono(LevelMono::Tensor(vec![x.clone()].into_boxed_slice()));
        let out = m.codegeneracy_class(1, 1, &cls).unwrap();
        let expect = LevelMono::Tensor(vec![x.clone(), Monomial::empty()].into_boxed_slice());
        assert_eq!(out.coeff(&expect), 1);
    }

    #[test]
    fn braid_normalized_basis_sizes() {
        // m=2, n=6: exterior algebra on one degree-4 class.
        let m = model(Family::Braids, 2, 6);
        for p in 0..=3u32 {
            for q in 0..=12u32 {
                let dim = m.normalized_basis(p, q).len();
                let expect = if q == 4 * p { 1 } else { 0 };
                assert_eq!(dim, expect, "p={p} q={q}");
            }
        }
        // Full basis includes unit slots: at p=2, q=4 there are two tensors
        // (x⊗1 and 1⊗x).
        assert_eq!(m.full_basis(2, 4).len(), 2);
    }

    #[test]
    fn cosimplicial_identities_small() {
        // Identities must hold for every family; any failure is a bug in the
        // pullback rules or the straightening signs.
        for (fam, m_count, n, q_max, p_max) in [
            (Family::Links, 1, 4, 6, 3),
            (Family::Links, 2, 4, 6, 2),
            (Family::Links, 2, 5, 8, 2),
            (Family::HLinks, 2, 4, 6, 2),
            (Family::HLinks, 2, 5, 8, 2),
            (Family::HLinks, 3, 4, 6, 2),
            (Family::HLinks, 3, 5, 8, 2),
            (Family::Braids, 2, 5, 9, 4),
            (Family::Braids, 3, 5, 9, 2),
            (Family::Braids, 3, 6, 8, 2),
        ] {
            let model = model(fam, m_count, n, );
            let deg = model.spec().generator_degree();
            for q in (0..=q_max).step_by(deg as usize) {
                let ops = CohomologyOps::new(&model, q);
                let report = check_identities(&ops, p_max);
                assert!(
                    report.is_ok(),
                    "{fam} m={m_count} n={n} q={q}: {:?}",
                    report.failures.first()
                );
            }
        }
    }

    #[test]
    fn cosimplicial_identities_to_level_six() {
        // The identities hold at every level; exercise p <= 5 (levels up to
        // six) for each family, at low weight to keep the bases small.
        for (fam, m_count, n, q_max) in [
            (Family::Links, 1, 4, 6),
            (Family::Links, 2, 4, 3),
            (Family::HLinks, 2, 5, 8),
            (Family::Braids, 2, 5, 9),
        ] {
            let model = model(fam, m_count, n);
            let deg = model.spec().generator_degree();
            for q in (0..=q_max).step_by(deg as usize) {
                let report = check_identities(&CohomologyOps::new(&model, q), 5);
                assert!(
                    report.is_ok(),
                    "{fam} m={m_count} n={n} q={q}: {:?}",
                    report.failures.first()
                );
            }
        }
    }

    #[test]
    fn degenerate_span_is_preserved_by_the_alternating_sum() {
        // Individual cofaces need not preserve the degenerate span, but the
        // alternating sum must, which is what makes the normalized page a
        // quotient complex.
        for (fam, m_count, n) in [(Family::Links, 2, 4), (Family::HLinks, 2, 5)] {
            let model = model(fam, m_count, n);
            let p = 2u32;
            let q = n - 1;
            for mono in model.full_basis(p, q).iter() {
                if model.is_normalized(p, mono) {
                    continue;
                }
                let cls = ZLevelClass::from_mono(mono.clone());
                let mut sum = ZLevelClass::zero();
                for i in 0..=p {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    sum.add_scaled(&model.coface_class(p, i, &cls).unwrap(), sign);
                }
                for (m2, c) in sum.iter() {
                    assert!(
                        !model.is_normalized(p - 1, m2) || c == 0,
                        "degenerate class leaked into the normalized basis"
                    );
                }
            }
        }
    }
}

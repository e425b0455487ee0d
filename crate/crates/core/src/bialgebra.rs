//! Truncated graded quotients `T(V, c) / I` of the braided tensor bialgebra.
//!
//! A quotient is stored as relation subspaces `R_d ⊆ V^{⊗d}` for
//! `1 ≤ d ≤ D`. The non-pivot coordinates of `rref(R_d)` index a monomial
//! basis of the degree-`d` part of the quotient.
//!
//! Every tensor power is split into blocks of basis words such that the braid
//! action, the relations and the quotient maps never mix two blocks; the
//! heavy linear algebra (ideal closure, primitives) then runs block by block
//! on small dense matrices.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::braiding::{check_degree, BraidedSpace, UnionFind};
use crate::error::{Error, Result};
use crate::exactlin::sparse::{self, Accumulator, SparseVec};
use crate::exactlin::{Matrix, Subspace};
use crate::field::Field;
use crate::shuffle::CoproductTable;

/// A braided space together with its coproduct images up to a cutoff.
pub(crate) struct Engine<F: Field> {
    space: BraidedSpace<F>,
    table: CoproductTable<F>,
}

impl<F: Field> Engine<F> {
    fn new(space: BraidedSpace<F>, cutoff: usize) -> Result<Self> {
        let table = CoproductTable::new(&space, cutoff)?;
        Ok(Engine { space, table })
    }
}

/// Blocks of basis words of one tensor power.
#[derive(Debug, Clone)]
pub(crate) struct Partition {
    /// Smallest word of the block containing each word.
    root: Vec<usize>,
    part_of: Vec<usize>,
    parts: Vec<Vec<usize>>,
}

impl Partition {
    fn from_union_find(mut uf: UnionFind) -> Self {
        let parts = uf.components();
        let size: usize = parts.iter().map(|p| p.len()).sum();
        let mut root = vec![0; size];
        let mut part_of = vec![0; size];
        for (k, part) in parts.iter().enumerate() {
            for &w in part {
                root[w] = part[0];
                part_of[w] = k;
            }
        }
        Partition { root, part_of, parts }
    }

    pub(crate) fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }
}

/// Builds the partition of degree `d` from the partitions of all lower
/// degrees: words `p·s` and `p'·s'` share a block when `p ~ p'` and
/// `s ~ s'` at every split, when `c` links them (degree 2), or when some
/// vector in `supports` involves both.
fn build_partition<F: Field>(
    space: &BraidedSpace<F>,
    d: usize,
    lower: &[Partition],
    supports: &[SparseVec<F::Elem>],
) -> Partition {
    let n = space.dim();
    let size = space.tensor_dim(d);
    let mut uf = UnionFind::new(size);
    for i in 1..d {
        let tail = n.pow((d - i) as u32);
        let (left, right) = (&lower[i], &lower[d - i]);
        for w in 0..size {
            let (p, s) = (w / tail, w % tail);
            uf.union(w, left.root[p] * tail + s);
            uf.union(w, p * tail + right.root[s]);
        }
    }
    if d == 2 {
        let f = space.field();
        for w in 0..size {
            for (u, _) in space.apply_generator(2, 1, &[(w, f.one())]) {
                uf.union(w, u);
            }
        }
    }
    for v in supports {
        if let Some(&(first, _)) = v.first() {
            for (u, _) in v {
                uf.union(first, *u);
            }
        }
    }
    Partition::from_union_find(uf)
}

fn unit_partition() -> Partition {
    Partition {
        root: vec![0],
        part_of: vec![0],
        parts: vec![vec![0]],
    }
}

fn sparse_rows<F: Field>(s: &Subspace<F>) -> Vec<SparseVec<F::Elem>> {
    s.vectors().map(|v| sparse::from_dense(s.field(), v)).collect()
}

/// Row space of block-homogeneous sparse vectors, reduced block by block.
fn blockwise_span<F: Field>(
    field: &F,
    partition: &Partition,
    ambient: usize,
    vectors: Vec<SparseVec<F::Elem>>,
) -> Subspace<F> {
    let mut by_part: BTreeMap<usize, Vec<SparseVec<F::Elem>>> = BTreeMap::new();
    for v in vectors {
        if let Some(&(first, _)) = v.first() {
            let k = partition.part_of[first];
            debug_assert!(v.iter().all(|(u, _)| partition.part_of[*u] == k));
            by_part.entry(k).or_default().push(v);
        }
    }
    let groups: Vec<(usize, Vec<SparseVec<F::Elem>>)> = by_part.into_iter().collect();
    let reduced: Vec<Vec<(usize, SparseVec<F::Elem>)>> = groups
        .par_iter()
        .map(|(k, vs)| {
            let coords = &partition.parts[*k];
            let local = sparse::gather(field, coords, vs);
            let (r, pivots) = local.rref();
            pivots
                .iter()
                .enumerate()
                .map(|(row, &p)| (coords[p], sparse::scatter(field, coords, r.row(row))))
                .collect()
        })
        .collect();
    let mut rows: Vec<(usize, SparseVec<F::Elem>)> = reduced.into_iter().flatten().collect();
    rows.sort_by_key(|(p, _)| *p);
    let pivots = rows.iter().map(|(p, _)| *p).collect();
    let dense = rows.iter().map(|(_, v)| sparse::to_dense(field, ambient, v)).collect();
    Subspace::from_rref_rows(field.clone(), ambient, dense, pivots)
}

/// The quotient map `V^{⊗k} → V^{⊗k}/R_k` on basis words, written in the
/// non-pivot monomial basis.
struct Projector<F: Field> {
    pivot_images: HashMap<usize, SparseVec<F::Elem>>,
}

impl<F: Field> Projector<F> {
    fn new(relations: &Subspace<F>) -> Self {
        let f = relations.field();
        let mut pivot_images = HashMap::new();
        for (row, &p) in relations.vectors().zip(relations.pivots()) {
            let image = row
                .iter()
                .enumerate()
                .filter(|&(c, x)| c != p && !f.is_zero(x))
                .map(|(c, x)| (c, f.neg(x)))
                .collect();
            pivot_images.insert(p, image);
        }
        Projector { pivot_images }
    }

    fn trivial() -> Self {
        Projector {
            pivot_images: HashMap::new(),
        }
    }

    fn is_pivot(&self, w: usize) -> bool {
        self.pivot_images.contains_key(&w)
    }

    fn image<'a>(&'a self, w: usize, one: &'a [(usize, F::Elem)]) -> &'a [(usize, F::Elem)] {
        match self.pivot_images.get(&w) {
            Some(v) => v,
            None => one,
        }
    }
}

/// Derived data of a quotient: blocks and projectors in every degree.
struct Layout<F: Field> {
    partitions: Vec<Partition>,
    projectors: Vec<Projector<F>>,
}

/// Truncated graded braided bialgebra `T(V, c)/I`, kept up to degree `D`.
pub struct GradedQuotient<F: Field> {
    engine: Arc<Engine<F>>,
    cutoff: usize,
    relations: Vec<Subspace<F>>,
    layout: OnceLock<Layout<F>>,
}

impl<F: Field> Clone for GradedQuotient<F> {
    fn clone(&self) -> Self {
        GradedQuotient {
            engine: Arc::clone(&self.engine),
            cutoff: self.cutoff,
            relations: self.relations.clone(),
            layout: OnceLock::new(),
        }
    }
}

impl<F: Field> PartialEq for GradedQuotient<F> {
    fn eq(&self, other: &Self) -> bool {
        self.cutoff == other.cutoff && self.engine.space == other.engine.space && self.relations == other.relations
    }
}

impl<F: Field> std::fmt::Debug for GradedQuotient<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedQuotient")
            .field("dim", &self.engine.space.dim())
            .field("cutoff", &self.cutoff)
            .field("hilbert", &self.hilbert_series())
            .finish()
    }
}

/// Representatives of the primitive elements of one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveReport<F: Field> {
    pub degree: usize,
    /// Subspace of `V^{⊗d}` meeting `R_d` trivially, whose image in the
    /// quotient is the space of primitives of degree `d`.
    pub subspace: Subspace<F>,
}

impl<F: Field> GradedQuotient<F> {
    /// `T(V, c)` truncated at degree `cutoff`, with no relations.
    pub fn free_truncated(space: &BraidedSpace<F>, cutoff: usize) -> Result<Self> {
        check_degree(cutoff)?;
        let zero: Vec<Subspace<F>> = (1..=cutoff)
            .map(|d| Subspace::zero(space.field().clone(), space.tensor_dim(d)))
            .collect();
        Self::from_relations(space, cutoff, zero)
    }

    /// Wraps given relation subspaces `R_1, …, R_D` without saturating them.
    pub fn from_relations(space: &BraidedSpace<F>, cutoff: usize, relations: Vec<Subspace<F>>) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::ConfigMismatch("degree cutoff must be at least 1".to_string()));
        }
        check_degree(cutoff)?;
        if relations.len() != cutoff {
            return Err(Error::ConfigMismatch(format!(
                "{} relation subspaces for cutoff {cutoff}",
                relations.len()
            )));
        }
        for (k, r) in relations.iter().enumerate() {
            let expected = space.tensor_dim(k + 1);
            if r.ambient_dim() != expected {
                return Err(Error::AmbientMismatch {
                    expected,
                    found: r.ambient_dim(),
                });
            }
            if r.field() != space.field() {
                return Err(Error::FieldMismatch {
                    expected: space.field().spec(),
                    found: r.field().spec(),
                });
            }
        }
        Ok(GradedQuotient {
            engine: Arc::new(Engine::new(space.clone(), cutoff)?),
            cutoff,
            relations,
            layout: OnceLock::new(),
        })
    }

    fn with_relations(&self, relations: Vec<Subspace<F>>) -> Self {
        GradedQuotient {
            engine: Arc::clone(&self.engine),
            cutoff: self.cutoff,
            relations,
            layout: OnceLock::new(),
        }
    }

    pub fn space(&self) -> &BraidedSpace<F> {
        &self.engine.space
    }

    pub fn field(&self) -> &F {
        self.engine.space.field()
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// `R_d` for `1 ≤ d ≤ D`.
    pub fn relations(&self, d: usize) -> &Subspace<F> {
        assert!((1..=self.cutoff).contains(&d), "degree {d} outside 1..={}", self.cutoff);
        &self.relations[d - 1]
    }

    pub fn all_relations(&self) -> &[Subspace<F>] {
        &self.relations
    }

    /// Dimensions of the graded pieces, starting with the unit in degree 0.
    pub fn hilbert_series(&self) -> Vec<usize> {
        let mut out = vec![1];
        out.extend(
            self.relations
                .iter()
                .enumerate()
                .map(|(k, r)| self.space().tensor_dim(k + 1) - r.dim()),
        );
        out
    }

    fn layout(&self) -> &Layout<F> {
        self.layout.get_or_init(|| {
            let space = self.space();
            let mut partitions = vec![unit_partition()];
            let mut projectors = vec![Projector::trivial()];
            for d in 1..=self.cutoff {
                let r = self.relations(d);
                let p = build_partition(space, d, &partitions, &sparse_rows(r));
                partitions.push(p);
                projectors.push(Projector::new(r));
            }
            Layout { partitions, projectors }
        })
    }

    pub(crate) fn partition(&self, d: usize) -> &Partition {
        &self.layout().partitions[d]
    }

    /// `(π_i ⊗ π_{d-i})(v)` for a vector `v` of `V^{⊗d}`: the image of `v`
    /// in `(V^{⊗i}/R_i) ⊗ (V^{⊗(d-i)}/R_{d-i})`.
    fn project_pair(&self, d: usize, i: usize, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let f = self.field();
        let layout = self.layout();
        let tail = self.space().tensor_dim(d - i);
        let (left, right) = (&layout.projectors[i], &layout.projectors[d - i]);
        let mut acc = Accumulator::new(f);
        for (u, x) in v {
            let (p, s) = (u / tail, u % tail);
            let one_p = [(p, f.one())];
            let one_s = [(s, f.one())];
            for (p2, a) in left.image(p, &one_p) {
                let xa = f.mul(x, a);
                for (s2, b) in right.image(s, &one_s) {
                    acc.add(p2 * tail + s2, &f.mul(&xa, b));
                }
            }
        }
        acc.finish()
    }

    /// Smallest ideal-closed family containing the current relations and
    /// the given generators.
    pub fn ideal_saturate(&self, generators: &[(usize, Subspace<F>)]) -> Result<Self> {
        let space = self.space();
        let f = self.field();
        let n = space.dim();
        let mut extra: Vec<Vec<SparseVec<F::Elem>>> = vec![Vec::new(); self.cutoff + 1];
        for (d, s) in generators {
            if !(1..=self.cutoff).contains(d) {
                return Err(Error::DegreeCap {
                    degree: *d,
                    cap: self.cutoff,
                });
            }
            let expected = space.tensor_dim(*d);
            if s.ambient_dim() != expected {
                return Err(Error::AmbientMismatch {
                    expected,
                    found: s.ambient_dim(),
                });
            }
            extra[*d].extend(sparse_rows(s));
        }
        let mut partitions = vec![unit_partition()];
        let mut relations: Vec<Subspace<F>> = Vec::with_capacity(self.cutoff);
        let mut prev_rows: Vec<SparseVec<F::Elem>> = Vec::new();
        for (d, mut added) in extra.into_iter().enumerate().skip(1) {
            let size = space.tensor_dim(d);
            let mut gens = sparse_rows(self.relations(d));
            gens.append(&mut added);
            for r in &prev_rows {
                let stride = space.tensor_dim(d - 1);
                for a in 0..n {
                    // e_a ⊗ r and r ⊗ e_a
                    gens.push(r.iter().map(|(u, x)| (a * stride + u, x.clone())).collect());
                    gens.push(r.iter().map(|(u, x)| (u * n + a, x.clone())).collect());
                }
            }
            let partition = build_partition(space, d, &partitions, &gens);
            let r = blockwise_span(f, &partition, size, gens);
            prev_rows = sparse_rows(&r);
            partitions.push(partition);
            relations.push(r);
        }
        Ok(self.with_relations(relations))
    }

    /// Representatives of the primitives of degree `d`: vectors `x` supported
    /// off the pivots of `R_d` with `Δ_{i,d-i}(x) ∈ R_i ⊗ V^{⊗(d-i)} +
    /// V^{⊗i} ⊗ R_{d-i}` for all `0 < i < d`.
    pub fn primitives(&self, d: usize) -> Result<PrimitiveReport<F>> {
        if d == 0 || d > self.cutoff {
            return Err(Error::DegreeCap {
                degree: d,
                cap: self.cutoff,
            });
        }
        let f = self.field();
        let size = self.space().tensor_dim(d);
        let partition = self.partition(d);
        let projector = &self.layout().projectors[d];
        let table = &self.engine.table;
        let blocks: Vec<Vec<(usize, SparseVec<F::Elem>)>> = partition
            .parts()
            .par_iter()
            .map(|block| {
                let free: Vec<usize> = block.iter().copied().filter(|&w| !projector.is_pivot(w)).collect();
                if free.is_empty() {
                    return Vec::new();
                }
                // rows indexed by (split, target word)
                let mut row_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
                let mut columns: Vec<Vec<(usize, F::Elem)>> = Vec::with_capacity(free.len());
                for &w in &free {
                    let mut col = Vec::new();
                    for i in 1..d {
                        for (t, x) in self.project_pair(d, i, table.image(d, i, w)) {
                            let next = row_index.len();
                            let r = *row_index.entry((i, t)).or_insert(next);
                            col.push((r, x));
                        }
                    }
                    columns.push(col);
                }
                let mut m = Matrix::zeros(f.clone(), row_index.len(), free.len());
                for (c, col) in columns.into_iter().enumerate() {
                    for (r, x) in col {
                        m.set(r, c, x);
                    }
                }
                let kernel = m.kernel();
                kernel
                    .vectors()
                    .zip(kernel.pivots())
                    .map(|(v, &p)| (free[p], sparse::scatter(f, &free, v)))
                    .collect()
            })
            .collect();
        let mut rows: Vec<(usize, SparseVec<F::Elem>)> = blocks.into_iter().flatten().collect();
        rows.sort_by_key(|(p, _)| *p);
        let pivots = rows.iter().map(|(p, _)| *p).collect();
        let dense = rows.iter().map(|(_, v)| sparse::to_dense(f, size, v)).collect();
        Ok(PrimitiveReport {
            degree: d,
            subspace: Subspace::from_rref_rows(f.clone(), size, dense, pivots),
        })
    }

    /// `V ⊗ R_d + R_d ⊗ V ⊆ R_{d+1}` for every `d < D`.
    pub fn check_ideal_closure(&self) -> Result<()> {
        let n = self.space().dim();
        let f = self.field();
        for d in 1..self.cutoff {
            let next = &self.layout().projectors[d + 1];
            let stride = self.space().tensor_dim(d);
            for r in sparse_rows(self.relations(d)) {
                for a in 0..n {
                    let left: SparseVec<F::Elem> = r.iter().map(|(u, x)| (a * stride + u, x.clone())).collect();
                    let right: SparseVec<F::Elem> = r.iter().map(|(u, x)| (u * n + a, x.clone())).collect();
                    for v in [left, right] {
                        if !reduces_to_zero(f, next, &v) {
                            return Err(Error::IdealViolation { degree: d });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `Δ_{i,d-i}(R_d) ⊆ R_i ⊗ V^{⊗(d-i)} + V^{⊗i} ⊗ R_{d-i}` for all
    /// `0 < i < d ≤ D`.
    pub fn check_coideal(&self) -> Result<()> {
        let f = self.field();
        let table = &self.engine.table;
        for d in 2..=self.cutoff {
            let rows = sparse_rows(self.relations(d));
            let failure = rows.par_iter().find_map_first(|r| {
                for i in 1..d {
                    let mut acc = Accumulator::new(f);
                    for (w, x) in r {
                        acc.add_scaled(table.image(d, i, *w), x);
                    }
                    if !self.project_pair(d, i, &acc.finish()).is_empty() {
                        return Some(i);
                    }
                }
                None
            });
            if let Some(i) = failure {
                return Err(Error::CoidealViolation {
                    degree: d,
                    left: i,
                    right: d - i,
                });
            }
        }
        Ok(())
    }

    /// Both structural invariants.
    pub fn check_invariants(&self) -> Result<()> {
        self.check_ideal_closure()?;
        self.check_coideal()
    }

    /// Offsets of each degree inside the total space
    /// `⊕_{d ≤ D} V^{⊗d}/R_d`; the last entry is the total dimension.
    pub fn degree_offsets(&self) -> Vec<usize> {
        let mut offsets = vec![0];
        let mut acc = 0;
        for dim in self.hilbert_series() {
            acc += dim;
            offsets.push(acc);
        }
        offsets
    }

    pub fn total_dim(&self) -> usize {
        self.hilbert_series().iter().sum()
    }

    /// Degree-one projection `ω : ⊕_d V^{⊗d}/R_d → V`.
    pub fn omega_projection(&self) -> Matrix<F> {
        let f = self.field();
        let n = self.space().dim();
        let offsets = self.degree_offsets();
        let mut m = Matrix::zeros(f.clone(), n, self.total_dim());
        for (k, w) in self.relations(1).non_pivots().into_iter().enumerate() {
            m.set(w, offsets[1] + k, f.one());
        }
        m
    }

    /// Degree-one inclusion `η : V → ⊕_d V^{⊗d}/R_d`.
    pub fn degree_one_inclusion(&self) -> Matrix<F> {
        let f = self.field();
        let n = self.space().dim();
        let offsets = self.degree_offsets();
        let r1 = self.relations(1);
        let free = r1.non_pivots();
        let mut m = Matrix::zeros(f.clone(), self.total_dim(), n);
        for a in 0..n {
            let mut e = vec![f.zero(); n];
            e[a] = f.one();
            let reduced = r1.reduce(&e).expect("vector in V");
            for (k, &w) in free.iter().enumerate() {
                m.set(offsets[1] + k, a, reduced[w].clone());
            }
        }
        m
    }

    /// The counit `ε`: projection onto the degree-0 coordinate.
    pub fn counit(&self) -> Matrix<F> {
        let f = self.field();
        let mut m = Matrix::zeros(f.clone(), 1, self.total_dim());
        m.set(0, 0, f.one());
        m
    }

    /// The unit `u : 𝕜 → ⊕_d V^{⊗d}/R_d`.
    pub fn unit(&self) -> Matrix<F> {
        self.counit().transpose()
    }

    /// `(ζ, τ)`: `ζ` includes the augmentation ideal (the positive-degree
    /// part, which is the kernel of the counit) and `τ` is the corestriction
    /// of `Id - u∘ε` to it, so that `τ∘ζ = Id` and `ζ∘τ = Id - u∘ε`.
    pub fn augmentation_split(&self) -> (Matrix<F>, Matrix<F>) {
        let f = self.field();
        let total = self.total_dim();
        let mut zeta = Matrix::zeros(f.clone(), total, total - 1);
        let mut tau = Matrix::zeros(f.clone(), total - 1, total);
        for k in 1..total {
            zeta.set(k, k - 1, f.one());
            tau.set(k - 1, k, f.one());
        }
        (zeta, tau)
    }
}

fn reduces_to_zero<F: Field>(f: &F, projector: &Projector<F>, v: &[(usize, F::Elem)]) -> bool {
    // the quotient map kills v exactly when v ∈ R
    let mut acc = Accumulator::new(f);
    for (w, x) in v {
        let one = [(*w, f.one())];
        acc.add_scaled(projector.image(*w, &one), x);
    }
    acc.finish().is_empty()
}

/// `T(V, c)` truncated at degree `cutoff`.
pub fn free_truncated<F: Field>(space: &BraidedSpace<F>, cutoff: usize) -> Result<GradedQuotient<F>> {
    GradedQuotient::free_truncated(space, cutoff)
}

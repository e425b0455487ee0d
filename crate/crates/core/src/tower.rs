//! The tower `S_[0] = T(V) → S_[1] → S_[2] → …` obtained by repeatedly
//! dividing out the ideal generated by primitives of degree at least two,
//! together with the retraction, idempotent and monad laws checked on each
//! stage.

use rayon::prelude::*;

use crate::bialgebra::GradedQuotient;
use crate::braiding::BraidedSpace;
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Subspace};
use crate::field::Field;
use crate::shuffle::Permutation;

/// Summary of one stage of the tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageReport {
    pub stage: usize,
    pub hilbert: Vec<usize>,
    /// Dimensions of the primitives found in degrees `2..=D`.
    pub new_relation_dims: Vec<usize>,
    /// The map to the next stage is an isomorphism up to the cutoff.
    pub stage_map_iso: bool,
}

/// Outcome of iterating the tower.
#[derive(Debug, Clone)]
pub struct RankReport<F: Field> {
    pub stages: Vec<StageReport>,
    /// Index of the first stage whose map is an isomorphism up to the
    /// cutoff. This is a lower bound on the untruncated rank.
    pub rank_le_cutoff: Option<usize>,
    pub stabilized: bool,
    pub final_quotient: GradedQuotient<F>,
    /// The quotient examined at each recorded stage.
    pub stage_quotients: Vec<GradedQuotient<F>>,
    pub oracle_match: Option<bool>,
}

impl<F: Field> RankReport<F> {
    pub fn final_hilbert(&self) -> Vec<usize> {
        self.final_quotient.hilbert_series()
    }

    /// Checks that isomorphic stage maps stay isomorphic and that Hilbert
    /// series never grow from one stage to the next.
    pub fn check_monotone(&self) -> Result<()> {
        check_monotone(&self.stages)
    }
}

/// Monotonicity of a sequence of stage reports.
pub fn check_monotone(stages: &[StageReport]) -> Result<()> {
    for pair in stages.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if a.stage_map_iso && !b.stage_map_iso {
            return Err(Error::ConfigMismatch(format!(
                "stage {} is an isomorphism but stage {} is not",
                a.stage, b.stage
            )));
        }
        if a.hilbert.len() != b.hilbert.len() || a.hilbert.iter().zip(&b.hilbert).any(|(x, y)| y > x) {
            return Err(Error::ConfigMismatch(format!(
                "Hilbert series grows from stage {} to stage {}",
                a.stage, b.stage
            )));
        }
    }
    Ok(())
}

/// One step of the tower from stage `stage`; see [`step`].
pub fn step_at<F: Field>(s: &GradedQuotient<F>, stage: usize) -> Result<(GradedQuotient<F>, StageReport)> {
    let found: Vec<(usize, Subspace<F>)> = (2..=s.cutoff())
        .into_par_iter()
        .map(|d| s.primitives(d).map(|p| (d, p.subspace)))
        .collect::<Result<_>>()?;
    let new_relation_dims: Vec<usize> = found.iter().map(|(_, p)| p.dim()).collect();
    let iso = new_relation_dims.iter().all(|&k| k == 0);
    let report = StageReport {
        stage,
        hilbert: s.hilbert_series(),
        new_relation_dims,
        stage_map_iso: iso,
    };
    if iso {
        return Ok((s.clone(), report));
    }
    let generators: Vec<(usize, Subspace<F>)> = found.into_iter().filter(|(_, p)| !p.is_zero()).collect();
    let next = s.ideal_saturate(&generators)?;
    next.check_invariants()?;
    Ok((next, report))
}

/// Divides out the ideal generated by the primitives of degrees `2..=D`.
/// The report describes the input stage; when it has no such primitives the
/// output equals the input.
pub fn step<F: Field>(s: &GradedQuotient<F>) -> Result<(GradedQuotient<F>, StageReport)> {
    step_at(s, 0)
}

/// Iterates [`step`] from the free object until a stage map is an
/// isomorphism up to `cutoff` or `max_iter` stages have been examined.
pub fn run<F: Field>(space: &BraidedSpace<F>, cutoff: usize, max_iter: usize) -> Result<RankReport<F>> {
    let mut current = GradedQuotient::free_truncated(space, cutoff)?;
    let mut stages = Vec::new();
    let mut quotients = Vec::new();
    let mut rank = None;
    for k in 0..max_iter {
        let (next, report) = step_at(&current, k)?;
        let iso = report.stage_map_iso;
        stages.push(report);
        quotients.push(current.clone());
        if iso {
            rank = Some(k);
            break;
        }
        current = next;
    }
    check_monotone(&stages)?;
    Ok(RankReport {
        stages,
        rank_le_cutoff: rank,
        stabilized: rank.is_some(),
        final_quotient: current,
        stage_quotients: quotients,
        oracle_match: None,
    })
}

/// The truncated primitive space `⊕_{1≤d≤D} P_d` of a quotient, with
/// coordinates given by the concatenated rref bases of the `P_d`.
#[derive(Debug, Clone)]
pub struct PrimitiveSpace<F: Field> {
    blocks: Vec<Subspace<F>>,
    relations_one: Subspace<F>,
}

impl<F: Field> PrimitiveSpace<F> {
    pub fn new(s: &GradedQuotient<F>) -> Result<Self> {
        let blocks = (1..=s.cutoff())
            .into_par_iter()
            .map(|d| s.primitives(d).map(|p| p.subspace))
            .collect::<Result<_>>()?;
        Ok(PrimitiveSpace {
            blocks,
            relations_one: s.relations(1).clone(),
        })
    }

    /// Representatives of the primitives of degree `d`.
    pub fn degree(&self, d: usize) -> &Subspace<F> {
        &self.blocks[d - 1]
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim()).sum()
    }

    fn field(&self) -> &F {
        self.relations_one.field()
    }

    /// `γ`: the degree-one projection onto `V`.
    pub fn gamma(&self) -> Matrix<F> {
        let p1 = &self.blocks[0];
        let mut m = Matrix::zeros(self.field().clone(), p1.ambient_dim(), self.dim());
        for (k, v) in p1.vectors().enumerate() {
            for (a, x) in v.iter().enumerate() {
                m.set(a, k, x.clone());
            }
        }
        m
    }

    /// `η`: the inclusion of `V` as the primitives of degree one.
    pub fn inclusion(&self) -> Matrix<F> {
        let f = self.field();
        let n = self.relations_one.ambient_dim();
        let p1 = &self.blocks[0];
        let mut m = Matrix::zeros(f.clone(), self.dim(), n);
        for a in 0..n {
            let mut e = vec![f.zero(); n];
            e[a] = f.one();
            let reduced = self.relations_one.reduce(&e).expect("vector in V");
            let coords = p1
                .coordinates(&reduced)
                .expect("vector in V")
                .expect("reduced generators are primitive");
            for (k, x) in coords.into_iter().enumerate() {
                m.set(k, a, x);
            }
        }
        m
    }

    /// `e = η∘γ` on the truncated primitive space.
    pub fn idempotent(&self) -> Matrix<F> {
        self.inclusion().mul(&self.gamma()).expect("shapes agree")
    }
}

/// `γ∘η = Id_V`, which holds exactly when no generator has been divided out.
pub fn gamma_retraction_check<F: Field>(s: &GradedQuotient<F>) -> Result<bool> {
    let p = PrimitiveSpace::new(s)?;
    Ok(p.gamma().mul(&p.inclusion())?.is_identity())
}

/// `e∘e = e` for `e = η∘γ` on the truncated primitive space.
pub fn idempotent_check<F: Field>(s: &GradedQuotient<F>) -> Result<bool> {
    let e = PrimitiveSpace::new(s)?.idempotent();
    Ok(e.mul(&e)? == e)
}

/// Unit law `action∘η = Id_V` for a candidate action of the truncated
/// primitive space of `T(V)` on `V`. Associativity is not checked here.
pub fn em_unit_check<F: Field>(space: &BraidedSpace<F>, cutoff: usize, action: &Matrix<F>) -> Result<bool> {
    let p = PrimitiveSpace::new(&GradedQuotient::free_truncated(space, cutoff)?)?;
    let n = space.dim();
    if action.rows() != n || action.cols() != p.dim() {
        return Err(Error::ShapeMismatch(format!(
            "action is {}x{}, expected {}x{}",
            action.rows(),
            action.cols(),
            n,
            p.dim()
        )));
    }
    Ok(action.mul(&p.inclusion())?.is_identity())
}

/// Largest `n · D_inner^{D_outer}` accepted by [`monad_augmentation_check`].
pub const MONAD_ENVELOPE: usize = 256;

/// The primitives `W` of `T(V)` in degrees `1..=cutoff`, as a braided space
/// with the braiding of `T(V)` restricted to `W ⊗ W`.
#[derive(Debug, Clone)]
pub struct PrimitiveBraiding<F: Field> {
    pub space: BraidedSpace<F>,
    /// `V`-degree of each basis vector of `W`.
    pub degrees: Vec<usize>,
    /// Basis vectors of `W`, each in `V^{⊗degree}`.
    pub vectors: Vec<Vec<F::Elem>>,
}

/// Builds [`PrimitiveBraiding`] for the free object truncated at `cutoff`.
pub fn primitive_braiding<F: Field>(space: &BraidedSpace<F>, cutoff: usize) -> Result<PrimitiveBraiding<F>> {
    let f = space.field();
    let n = space.dim();
    let p = PrimitiveSpace::new(&GradedQuotient::free_truncated(space, cutoff)?)?;
    let mut degrees = Vec::new();
    let mut vectors = Vec::new();
    let mut pivots = Vec::new();
    for d in 1..=cutoff {
        let block = p.degree(d);
        for (v, &piv) in block.vectors().zip(block.pivots()) {
            degrees.push(d);
            vectors.push(v.to_vec());
            pivots.push(piv);
        }
    }
    let m = vectors.len();
    if m > crate::braiding::MAX_DIM {
        return Err(Error::EnvelopeExceeded(format!(
            "{m} primitives up to degree {cutoff}, at most {} supported",
            crate::braiding::MAX_DIM
        )));
    }
    let mut c = Matrix::zeros(f.clone(), m * m, m * m);
    for a in 0..m {
        for b in 0..m {
            let (i, j) = (degrees[a], degrees[b]);
            let d = i + j;
            let x = kron(f, n, &vectors[a], j, &vectors[b]);
            // move the first i factors past the last j
            let images: Vec<usize> = (i..d).chain(0..i).collect();
            let word = Permutation::from_images(images).reduced_word();
            let y = crate::exactlin::sparse::to_dense(
                f,
                x.len(),
                &space.apply_word(d, &word, &crate::exactlin::sparse::from_dense(f, &x)),
            );
            let mut rebuilt = vec![f.zero(); y.len()];
            for c2 in (0..m).filter(|&k| degrees[k] == j) {
                for d2 in (0..m).filter(|&k| degrees[k] == i) {
                    // rref bases: the coefficient of w_c ⊗ w_d sits at the pivot pair
                    let coeff = y[pivots[c2] * n.pow(i as u32) + pivots[d2]].clone();
                    if f.is_zero(&coeff) {
                        continue;
                    }
                    let term = kron(f, n, &vectors[c2], i, &vectors[d2]);
                    for (slot, t) in rebuilt.iter_mut().zip(&term) {
                        f.add_mul_assign(slot, &coeff, t);
                    }
                    c.set(c2 * m + d2, a * m + b, coeff);
                }
            }
            if rebuilt != y {
                return Err(Error::ShapeMismatch(
                    "braiding does not preserve the primitive space".to_string(),
                ));
            }
        }
    }
    Ok(PrimitiveBraiding {
        space: BraidedSpace::from_matrix(m, c)?,
        degrees,
        vectors,
    })
}

fn kron<F: Field>(f: &F, n: usize, a: &[F::Elem], b_degree: usize, b: &[F::Elem]) -> Vec<F::Elem> {
    let stride = n.pow(b_degree as u32);
    debug_assert_eq!(b.len(), stride);
    let mut out = vec![f.zero(); a.len() * stride];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i * stride + j] = f.mul(x, y);
        }
    }
    out
}

/// Augmentation laws `γ∘u = Id` and `γ∘γ_W = γ∘m` for the monad of
/// primitives, on a double truncation.
///
/// `W` is the truncated primitive space of `T(V)` up to `inner` and the
/// outer layer is the primitive space of `T(W)` up to `W`-degree `outer`,
/// kept in total `V`-degree at most `inner`. `m` is the restriction of the
/// algebra map `T(W) → T(V)` extending `W ⊂ T(V)`, whose images must again
/// be primitive.
pub fn monad_augmentation_check<F: Field>(space: &BraidedSpace<F>, outer: usize, inner: usize) -> Result<bool> {
    let n = space.dim();
    let size = inner
        .checked_pow(outer as u32)
        .and_then(|s| s.checked_mul(n))
        .unwrap_or(usize::MAX);
    if size > MONAD_ENVELOPE || outer == 0 || inner == 0 {
        return Err(Error::EnvelopeExceeded(format!(
            "n = {n}, inner cutoff {inner}, outer cutoff {outer}"
        )));
    }
    let f = space.field();
    let inner_obj = GradedQuotient::free_truncated(space, inner)?;
    let pv = PrimitiveSpace::new(&inner_obj)?;
    let unit_law = pv.gamma().mul(&pv.inclusion())?.is_identity();

    let w = primitive_braiding(space, inner)?;
    let m = w.degrees.len();
    let outer_obj = GradedQuotient::free_truncated(&w.space, outer)?;

    let mut lhs_cols: Vec<Vec<F::Elem>> = Vec::new();
    let mut rhs_cols: Vec<Vec<F::Elem>> = Vec::new();
    let mut images_primitive = true;
    for k in 1..=outer {
        let pk = outer_obj.primitives(k)?.subspace;
        for z in pk.vectors() {
            // split z by total V-degree; each part is again primitive
            let mut parts: std::collections::BTreeMap<usize, Vec<(usize, F::Elem)>> = Default::default();
            for (word, x) in z.iter().enumerate().filter(|(_, x)| !f.is_zero(x)) {
                let letters = crate::braiding::word_digits(m, k, word);
                let vdeg: usize = letters.iter().map(|&a| w.degrees[a]).sum();
                parts.entry(vdeg).or_default().push((word, x.clone()));
            }
            for (vdeg, part) in parts.into_iter().filter(|(v, _)| *v <= inner) {
                let mut image = vec![f.zero(); space.tensor_dim(vdeg)];
                for (word, x) in &part {
                    let letters = crate::braiding::word_digits(m, k, *word);
                    let mut prod = vec![f.one()];
                    for &a in &letters {
                        prod = kron(f, n, &prod, w.degrees[a], &w.vectors[a]);
                    }
                    for (slot, t) in image.iter_mut().zip(&prod) {
                        f.add_mul_assign(slot, x, t);
                    }
                }
                if !pv.degree(vdeg).contains(&image)? {
                    images_primitive = false;
                }
                // γ∘m
                lhs_cols.push(if vdeg == 1 { image } else { vec![f.zero(); n] });
                // γ∘γ_W
                let mut rhs = vec![f.zero(); n];
                if k == 1 {
                    for (word, x) in &part {
                        if w.degrees[*word] == 1 {
                            for (slot, t) in rhs.iter_mut().zip(&w.vectors[*word]) {
                                f.add_mul_assign(slot, x, t);
                            }
                        }
                    }
                }
                rhs_cols.push(rhs);
            }
        }
    }
    Ok(unit_law && images_primitive && lhs_cols == rhs_cols)
}

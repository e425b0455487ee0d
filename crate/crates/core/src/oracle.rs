//! Reference computations that avoid the coproduct tables of the main
//! engine: truncated Nichols algebras from kernels of quantum
//! symmetrizers, and primitives from directly summed unshuffle lifts.

use rayon::prelude::*;

use crate::bialgebra::GradedQuotient;
use crate::braiding::{check_degree, BraidedSpace};
use crate::error::{Error, Result};
use crate::exactlin::{sparse, Matrix, Subspace};
use crate::field::Field;
use crate::shuffle::{permutations, symmetrizer_column, unshuffles};

/// `ker 𝔖_d`, computed separately on each braid orbit of basis words.
pub fn symmetrizer_kernel<F: Field>(space: &BraidedSpace<F>, d: usize) -> Result<Subspace<F>> {
    check_degree(d)?;
    let f = space.field();
    let size = space.tensor_dim(d);
    let words: Vec<Vec<usize>> = permutations(d).iter().map(|p| p.reduced_word()).collect();
    let orbits = space.braid_orbits(d);
    let pieces: Vec<Vec<Vec<F::Elem>>> = orbits
        .par_iter()
        .map(|orbit| {
            let mut local = Matrix::zeros(f.clone(), orbit.len(), orbit.len());
            for (c, &w) in orbit.iter().enumerate() {
                for (u, x) in symmetrizer_column(space, d, &words, w) {
                    let r = orbit.binary_search(&u).expect("braid lifts preserve orbits");
                    local.set(r, c, x);
                }
            }
            local
                .kernel()
                .vectors()
                .map(|v| sparse::to_dense(f, size, &sparse::scatter(f, orbit, v)))
                .collect()
        })
        .collect();
    Subspace::span(f.clone(), size, pieces.into_iter().flatten().collect())
}

/// The Nichols algebra truncated at `cutoff`, with `R_d = ker 𝔖_d`. Both
/// structural invariants are verified before returning.
pub fn nichols_truncation<F: Field>(space: &BraidedSpace<F>, cutoff: usize) -> Result<GradedQuotient<F>> {
    check_degree(cutoff)?;
    let relations = (1..=cutoff)
        .into_par_iter()
        .map(|d| symmetrizer_kernel(space, d))
        .collect::<Result<Vec<_>>>()?;
    let q = GradedQuotient::from_relations(space, cutoff, relations)?;
    q.check_invariants()?;
    Ok(q)
}

/// Dense `Δ_{i,d-i}` as the sum of the lifts of all `(i, d-i)`-unshuffles.
fn unshuffle_sum<F: Field>(space: &BraidedSpace<F>, i: usize, j: usize) -> Result<Matrix<F>> {
    let d = i + j;
    let size = space.tensor_dim(d);
    let mut total = Matrix::zeros(space.field().clone(), size, size);
    for u in unshuffles(i, j)? {
        total = total.add(&space.braid_word(d, &u.word)?)?;
    }
    Ok(total)
}

/// `R_i ⊗ V^{⊗j} + V^{⊗i} ⊗ R_j`.
fn split_relations<F: Field>(s: &GradedQuotient<F>, i: usize, j: usize) -> Result<Subspace<F>> {
    let f = s.field();
    let space = s.space();
    let (left, right) = (space.tensor_dim(i), space.tensor_dim(j));
    let mut rows = Vec::new();
    for r in s.relations(i).vectors() {
        for t in 0..right {
            let mut v = vec![f.zero(); left * right];
            for (p, x) in r.iter().enumerate() {
                v[p * right + t] = x.clone();
            }
            rows.push(v);
        }
    }
    for r in s.relations(j).vectors() {
        for p in 0..left {
            let mut v = vec![f.zero(); left * right];
            for (t, x) in r.iter().enumerate() {
                v[p * right + t] = x.clone();
            }
            rows.push(v);
        }
    }
    Subspace::span(f.clone(), left * right, rows)
}

/// Primitives of degree `d` of `s`, found with dense matrices: the common
/// kernel of `Δ_{i,d-i}` modulo `R_i ⊗ V^{⊗(d-i)} + V^{⊗i} ⊗ R_{d-i}`,
/// reduced to its canonical complement of `R_d`.
pub fn brute_force_primitives<F: Field>(
    space: &BraidedSpace<F>,
    s: &GradedQuotient<F>,
    d: usize,
) -> Result<Subspace<F>> {
    if d == 0 || d > s.cutoff() {
        return Err(Error::DegreeCap {
            degree: d,
            cap: s.cutoff(),
        });
    }
    if space != s.space() {
        return Err(Error::ConfigMismatch(
            "quotient belongs to another braiding".to_string(),
        ));
    }
    let f = space.field();
    let size = space.tensor_dim(d);
    let mut stacked: Option<Matrix<F>> = None;
    for i in 1..d {
        let constraint = split_relations(s, i, d - i)?
            .annihilator()
            .mul(&unshuffle_sum(space, i, d - i)?)?;
        stacked = Some(match stacked {
            None => constraint,
            Some(m) => m.vstack(&constraint)?,
        });
    }
    let kernel = match stacked {
        None => Subspace::full(f.clone(), size),
        Some(m) => m.kernel(),
    };
    let rd = s.relations(d);
    let reduced = kernel.vectors().map(|v| rd.reduce(v)).collect::<Result<Vec<_>>>()?;
    Subspace::span(f.clone(), size, reduced)
}

/// Degreewise equality of relation subspaces.
pub fn compare<F: Field>(result: &GradedQuotient<F>, oracle: &GradedQuotient<F>) -> Result<bool> {
    if result.space() != oracle.space() {
        return Err(Error::ConfigMismatch("different braidings".to_string()));
    }
    if result.cutoff() != oracle.cutoff() {
        return Err(Error::ConfigMismatch(format!(
            "cutoffs {} and {}",
            result.cutoff(),
            oracle.cutoff()
        )));
    }
    Ok(result.all_relations() == oracle.all_relations())
}

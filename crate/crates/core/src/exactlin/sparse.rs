//! Sparse vectors used by the tensor-power kernels. Entries are sorted by
//! index and never zero.

use std::collections::BTreeMap;

use crate::field::Field;

use super::Matrix;

pub(crate) type SparseVec<E> = Vec<(usize, E)>;

/// Accumulates `index -> coefficient` contributions.
pub(crate) struct Accumulator<'a, F: Field> {
    field: &'a F,
    entries: BTreeMap<usize, F::Elem>,
}

impl<'a, F: Field> Accumulator<'a, F> {
    pub(crate) fn new(field: &'a F) -> Self {
        Accumulator {
            field,
            entries: BTreeMap::new(),
        }
    }

    pub(crate) fn add(&mut self, index: usize, coeff: &F::Elem) {
        match self.entries.get_mut(&index) {
            Some(slot) => *slot = self.field.add(slot, coeff),
            None => {
                self.entries.insert(index, coeff.clone());
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, v: &[(usize, F::Elem)], scale: &F::Elem) {
        for (i, x) in v {
            let term = self.field.mul(x, scale);
            self.add(*i, &term);
        }
    }

    pub(crate) fn finish(self) -> SparseVec<F::Elem> {
        let f = self.field;
        self.entries.into_iter().filter(|(_, x)| !f.is_zero(x)).collect()
    }
}

pub(crate) fn to_dense<F: Field>(field: &F, len: usize, v: &[(usize, F::Elem)]) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub(crate) fn from_dense<F: Field>(field: &F, v: &[F::Elem]) -> SparseVec<F::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !field.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Dense local rows from sparse vectors supported on `coords` (sorted).
pub(crate) fn gather<F: Field>(field: &F, coords: &[usize], vs: &[SparseVec<F::Elem>]) -> Matrix<F> {
    let cols = coords.len();
    let mut data = vec![field.zero(); vs.len() * cols];
    for (r, v) in vs.iter().enumerate() {
        for (i, x) in v {
            let c = coords
                .binary_search(i)
                .expect("vector is supported on the local coordinates");
            data[r * cols + c] = x.clone();
        }
    }
    Matrix::new(field.clone(), vs.len(), cols, data).expect("gathered shape is consistent")
}

/// Sparse global vector from a dense local row.
pub(crate) fn scatter<F: Field>(field: &F, coords: &[usize], row: &[F::Elem]) -> SparseVec<F::Elem> {
    row.iter()
        .zip(coords)
        .filter(|(x, _)| !field.is_zero(x))
        .map(|(x, &i)| (i, x.clone()))
        .collect()
}

use crate::error::{Error, Result};
use crate::field::Field;

use super::matrix::Matrix;

/// A subspace of a coordinate space, stored as its reduced row-echelon basis.
///
/// The rref basis is unique, so two subspaces are equal exactly when their
/// bases are equal, and the derived `PartialEq` is subspace equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    ambient_dim: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: F, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix<F>) -> Self {
        let (r, pivots) = m.rref();
        let rank = pivots.len();
        let cols = r.cols();
        let field = r.field().clone();
        let mut data = r.into_data();
        data.truncate(rank * cols);
        Subspace {
            ambient_dim: cols,
            basis: Matrix::new(field, rank, cols, data).expect("truncated rref has consistent shape"),
            pivots,
        }
    }

    /// Span of the given vectors.
    pub fn span(field: F, ambient_dim: usize, vectors: Vec<Vec<F::Elem>>) -> Result<Self> {
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(Error::AmbientMismatch {
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
        }
        let m = Matrix::from_rows(field, ambient_dim, vectors)?;
        Ok(Self::row_space(&m))
    }

    /// Wraps rows that are already in reduced row-echelon form.
    pub(crate) fn from_rref_rows(field: F, ambient_dim: usize, rows: Vec<Vec<F::Elem>>, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(rows.len(), pivots.len());
        debug_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        let basis = Matrix::from_rows(field, ambient_dim, rows).expect("rows match the ambient dimension");
        let s = Subspace {
            ambient_dim,
            basis,
            pivots,
        };
        debug_assert!(s.is_rref());
        s
    }

    fn is_rref(&self) -> bool {
        let f = self.field();
        self.pivots.iter().enumerate().all(|(i, &p)| {
            f.is_one(self.basis.get(i, p))
                && (0..p).all(|c| f.is_zero(self.basis.get(i, c)))
                && self
                    .pivots
                    .iter()
                    .enumerate()
                    .all(|(j, &q)| j == i || f.is_zero(self.basis.get(j, p)) && q != p)
        })
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[F::Elem]> {
        self.basis.row_vectors()
    }

    /// Indices of the coordinates that are not pivots; they index a basis of
    /// the quotient of the ambient space by this subspace.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&c| !is_pivot[c]).collect()
    }

    fn check_ambient(&self, len: usize) -> Result<()> {
        if len != self.ambient_dim {
            return Err(Error::AmbientMismatch {
                expected: self.ambient_dim,
                found: len,
            });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.check_ambient(other.ambient_dim)?;
        if self.field() != other.field() {
            return Err(Error::FieldMismatch {
                expected: self.field().spec(),
                found: other.field().spec(),
            });
        }
        Ok(())
    }

    /// Canonical representative of `v` modulo this subspace: the unique
    /// vector in `v + self` that vanishes on every pivot coordinate.
    pub fn reduce(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.check_ambient(v.len())?;
        let f = self.field();
        let mut out = v.to_vec();
        // rref rows vanish on every other pivot, so one pass suffices
        for (i, &p) in self.pivots.iter().enumerate() {
            let factor = out[p].clone();
            if f.is_zero(&factor) {
                continue;
            }
            for (slot, b) in out.iter_mut().zip(self.basis.row(i)).skip(p) {
                f.sub_mul_assign(slot, &factor, b);
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool> {
        let r = self.reduce(v)?;
        let f = self.field();
        Ok(r.iter().all(|x| f.is_zero(x)))
    }

    /// Coordinates of `v` in the rref basis, or `None` if `v` is not in the
    /// subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        for v in self.vectors() {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `self + other`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self::row_space(&self.basis.vstack(&other.basis)?))
    }

    /// `self ∩ other`, from the kernel of `[A^T | -B^T]`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = self.field().clone();
        let (k, l) = (self.dim(), other.dim());
        if k == 0 || l == 0 {
            return Ok(Self::zero(f, self.ambient_dim));
        }
        let mut m = Matrix::zeros(f.clone(), self.ambient_dim, k + l);
        for (i, row) in self.vectors().enumerate() {
            for (c, x) in row.iter().enumerate() {
                m.set(c, i, x.clone());
            }
        }
        for (j, row) in other.vectors().enumerate() {
            for (c, x) in row.iter().enumerate() {
                m.set(c, k + j, f.neg(x));
            }
        }
        let relations = m.kernel();
        let mut vectors = Vec::with_capacity(relations.dim());
        for coeffs in relations.vectors() {
            let mut v = vec![f.zero(); self.ambient_dim];
            for (a, row) in coeffs[..k].iter().zip(self.vectors()) {
                if f.is_zero(a) {
                    continue;
                }
                for (slot, x) in v.iter_mut().zip(row) {
                    f.add_mul_assign(slot, a, x);
                }
            }
            vectors.push(v);
        }
        Self::span(f, self.ambient_dim, vectors)
    }

    /// Matrix whose null space is exactly this subspace.
    pub fn annihilator(&self) -> Matrix<F> {
        let f = self.field().clone();
        let ann = self.basis.kernel();
        let rows: Vec<Vec<F::Elem>> = ann.vectors().map(|v| v.to_vec()).collect();
        Matrix::from_rows(f, self.ambient_dim, rows).expect("annihilator rows match the ambient dimension")
    }
}

impl<F: Field> std::fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subspace(dim {} in {}, pivots {:?}) ",
            self.dim(),
            self.ambient_dim,
            self.pivots
        )?;
        self.basis.fmt(f)
    }
}

/// Largest subspace contained in both `a` and `b`.
pub fn intersect<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<Subspace<F>> {
    a.intersect(b)
}

/// Exact membership test.
pub fn contains<F: Field>(a: &Subspace<F>, v: &[F::Elem]) -> Result<bool> {
    a.contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn span(vs: &[&[i64]]) -> Subspace<Rationals> {
        let n = vs.first().map_or(0, |v| v.len());
        let rows = vs
            .iter()
            .map(|v| v.iter().map(|&x| Rationals.from_i64(x)).collect())
            .collect();
        Subspace::span(Rationals, n, rows).unwrap()
    }

    fn vec_q(v: &[i64]) -> Vec<num_rational::BigRational> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn intersection_examples() {
        let a = span(&[&[1, 0], &[0, 1]]);
        let b = span(&[&[1, 1]]);
        assert_eq!(intersect(&a, &b).unwrap(), b);
        assert_eq!(intersect(&a, &a).unwrap(), a);
        let z = Subspace::zero(Rationals, 2);
        assert_eq!(intersect(&a, &z).unwrap(), z);
        let c = span(&[&[1, 2, 0], &[0, 0, 1]]);
        let d = span(&[&[1, 2, 1], &[1, 0, 0]]);
        assert_eq!(intersect(&c, &d).unwrap(), span(&[&[1, 2, 1]]));
    }

    #[test]
    fn membership() {
        let z = Subspace::zero(Rationals, 2);
        assert!(contains(&z, &vec_q(&[0, 0])).unwrap());
        assert!(!contains(&z, &vec_q(&[1, 0])).unwrap());
        let l = span(&[&[1, 2]]);
        assert!(contains(&l, &vec_q(&[2, 4])).unwrap());
        assert!(!contains(&l, &vec_q(&[2, 3])).unwrap());
        assert_eq!(
            contains(&l, &vec_q(&[1, 2, 3])),
            Err(Error::AmbientMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn ambient_mismatch() {
        let a = span(&[&[1, 0]]);
        let b = span(&[&[1, 0, 0]]);
        assert!(matches!(a.intersect(&b), Err(Error::AmbientMismatch { .. })));
    }

    #[test]
    fn reduce_gives_canonical_representative() {
        let l = span(&[&[1, 2, 0]]);
        let r = l.reduce(&vec_q(&[3, 1, 5])).unwrap();
        assert_eq!(r, vec_q(&[0, -5, 5]));
        assert_eq!(l.non_pivots(), vec![1, 2]);
    }

    #[test]
    fn annihilator_cuts_out_subspace() {
        let a = span(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        let ann = a.annihilator();
        assert_eq!(ann.kernel(), a);
    }

    #[test]
    fn characteristic_matters() {
        let f2 = PrimeField::new(2).unwrap();
        let a = Subspace::span(f2, 2, vec![vec![1, 1]]).unwrap();
        // (1,1) + (1,1) = 0 in characteristic 2, so (1,-1) = (1,1)
        assert!(a.contains(&[1, f2.from_i64(-1)]).unwrap());
    }
}

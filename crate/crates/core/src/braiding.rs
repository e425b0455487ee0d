//! Braided vector spaces `(V, c)` and the braid group action on tensor powers.
//!
//! Basis convention: `e_{i1} ⊗ … ⊗ e_{id}` in `V^{⊗d}` has index
//! `Σ i_k · n^{d-k}` (big-endian, first factor most significant), and
//! `c[(k,l),(i,j)]` is the coefficient of `e_k ⊗ e_l` in `c(e_i ⊗ e_j)`.

use crate::error::{Error, Result};
use crate::exactlin::sparse::{Accumulator, SparseVec};
use crate::exactlin::Matrix;
use crate::field::Field;

/// Largest supported dimension of `V`.
pub const MAX_DIM: usize = 8;
/// Largest supported tensor degree.
pub const MAX_DEGREE: usize = 12;

#[derive(Clone, PartialEq, Eq)]
pub struct BraidedSpace<F: Field> {
    n: usize,
    c: Matrix<F>,
    /// Nonzero entries of each column of `c`, indexed by `i*n + j`.
    columns: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> std::fmt::Debug for BraidedSpace<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BraidedSpace(n = {}) with c = {:?}", self.n, self.c)
    }
}

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::DimensionCap { dim: n, cap: MAX_DIM });
    }
    Ok(())
}

pub(crate) fn check_degree(d: usize) -> Result<()> {
    if d > MAX_DEGREE {
        return Err(Error::DegreeCap {
            degree: d,
            cap: MAX_DEGREE,
        });
    }
    Ok(())
}

impl<F: Field> BraidedSpace<F> {
    /// The symmetric braiding `x ⊗ y ↦ y ⊗ x`.
    pub fn flip(n: usize, field: F) -> Result<Self> {
        check_dim(n)?;
        let mut c = Matrix::zeros(field.clone(), n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                c.set(j * n + i, i * n + j, field.one());
            }
        }
        Self::from_matrix(n, c)
    }

    /// Diagonal braiding `c(e_i ⊗ e_j) = q_ij e_j ⊗ e_i`.
    pub fn diagonal(q: &Matrix<F>) -> Result<Self> {
        let n = q.rows();
        if q.cols() != n {
            return Err(Error::ShapeMismatch(format!(
                "diagonal parameters must be square, got {}x{}",
                q.rows(),
                q.cols()
            )));
        }
        check_dim(n)?;
        let field = q.field().clone();
        let mut c = Matrix::zeros(field.clone(), n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                let qij = q.get(i, j);
                if field.is_zero(qij) {
                    return Err(Error::ZeroParameter { row: i, col: j });
                }
                c.set(j * n + i, i * n + j, qij.clone());
            }
        }
        Self::from_matrix(n, c)
    }

    /// Validates an arbitrary `n² × n²` matrix as a braiding.
    pub fn from_matrix(n: usize, c: Matrix<F>) -> Result<Self> {
        check_dim(n)?;
        if c.rows() != n * n || c.cols() != n * n {
            return Err(Error::ShapeMismatch(format!(
                "braiding on a {n}-dimensional space must be {}x{}, got {}x{}",
                n * n,
                n * n,
                c.rows(),
                c.cols()
            )));
        }
        let field = c.field().clone();
        let columns = (0..n * n)
            .map(|col| {
                (0..n * n)
                    .filter(|&r| !field.is_zero(c.get(r, col)))
                    .map(|r| (r, c.get(r, col).clone()))
                    .collect()
            })
            .collect();
        let space = BraidedSpace { n, c, columns };
        if space.c.rank() != n * n {
            return Err(Error::NotInvertible);
        }
        if let Some(witness) = space.yang_baxter_witness() {
            return Err(Error::YangBaxterViolation { witness });
        }
        Ok(space)
    }

    pub fn field(&self) -> &F {
        self.c.field()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.c
    }

    /// `n^d`
    pub fn tensor_dim(&self, d: usize) -> usize {
        self.n.pow(d as u32)
    }

    /// First basis vector `e_i ⊗ e_j ⊗ e_k` on which the two sides of the
    /// braid equation differ.
    fn yang_baxter_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for w in 0..n * n * n {
            let e = vec![(w, self.field().one())];
            let lhs = self.apply_word(3, &[1, 2, 1], &e);
            let rhs = self.apply_word(3, &[2, 1, 2], &e);
            if lhs != rhs {
                return Some((w / (n * n), (w / n) % n, w % n));
            }
        }
        None
    }

    /// Applies `c_i` (acting on factors `i, i+1`, 1-based) to a sparse vector
    /// of `V^{⊗d}`.
    pub(crate) fn apply_generator(&self, d: usize, i: usize, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        debug_assert!(i >= 1 && i < d);
        let n = self.n;
        let low = n.pow((d - i - 1) as u32);
        let mut acc = Accumulator::new(self.field());
        for (w, x) in v {
            let pair = (w / low) % (n * n);
            let base = w - pair * low;
            for (kl, coeff) in &self.columns[pair] {
                acc.add(base + kl * low, &self.field().mul(x, coeff));
            }
        }
        acc.finish()
    }

    /// Applies the product `c_{w_1} c_{w_2} ⋯ c_{w_k}` (rightmost first).
    pub(crate) fn apply_word(&self, d: usize, word: &[usize], v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let mut cur = v.to_vec();
        for &i in word.iter().rev() {
            cur = self.apply_generator(d, i, &cur);
        }
        cur
    }

    fn check_word(&self, d: usize, word: &[usize]) -> Result<()> {
        check_degree(d)?;
        for &i in word {
            if i == 0 || i >= d {
                return Err(Error::IndexOutOfRange { index: i, degree: d });
            }
        }
        Ok(())
    }

    /// Matrix of `c_i = I^{⊗(i-1)} ⊗ c ⊗ I^{⊗(d-i-1)}` on `V^{⊗d}`.
    pub fn braid_generator(&self, d: usize, i: usize) -> Result<Matrix<F>> {
        self.braid_word(d, &[i])
    }

    /// Ordered product of generator matrices; the leftmost factor is applied
    /// last. The empty word gives the identity.
    pub fn braid_word(&self, d: usize, word: &[usize]) -> Result<Matrix<F>> {
        self.check_word(d, word)?;
        let size = self.tensor_dim(d);
        let f = self.field();
        let mut m = Matrix::zeros(f.clone(), size, size);
        for col in 0..size {
            let image = self.apply_word(d, word, &[(col, f.one())]);
            for (row, x) in image {
                m.set(row, col, x);
            }
        }
        Ok(m)
    }

    /// Partition of the basis words of `V^{⊗d}` into the connected components
    /// of the braid action: two words are linked when some generator maps one
    /// onto a combination involving the other. Components are sorted by
    /// their smallest word; words within a component are sorted.
    pub fn braid_orbits(&self, d: usize) -> Vec<Vec<usize>> {
        let size = self.tensor_dim(d);
        let mut uf = UnionFind::new(size);
        let f = self.field();
        for w in 0..size {
            for i in 1..d {
                for (u, _) in self.apply_generator(d, i, &[(w, f.one())]) {
                    uf.union(w, u);
                }
            }
        }
        uf.components()
    }
}

/// Factors of a basis word, most significant first.
pub fn word_digits(n: usize, d: usize, mut index: usize) -> Vec<usize> {
    let mut digits = vec![0; d];
    for slot in digits.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    digits
}

pub fn word_index(n: usize, digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, &x| acc * n + x)
}

/// Label such as `e01` for `e_0 ⊗ e_1`; the unit is `1`.
pub fn word_label(n: usize, d: usize, index: usize) -> String {
    if d == 0 {
        return "1".to_string();
    }
    let digits = word_digits(n, d, index);
    let sep = if n > 10 { "," } else { "" };
    let body: Vec<String> = digits.iter().map(|x| x.to_string()).collect();
    format!("e{}", body.join(sep))
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(size: usize) -> Self {
        UnionFind {
            parent: (0..size).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller index as the root, so roots are component minima.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }

    pub(crate) fn components(&mut self) -> Vec<Vec<usize>> {
        let size = self.parent.len();
        let mut slot = vec![usize::MAX; size];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for w in 0..size {
            let r = self.find(w);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(w);
        }
        out
    }
}

//! Braided deconcatenation coproduct of `T(V, c)` and the quantum
//! symmetrizer, as explicit matrices on tensor powers.
//!
//! Permutations are in one-line notation with 0-based values. The operator
//! attached to a permutation `σ` sends `v_1 ⊗ … ⊗ v_d` to
//! `v_{σ(1)} ⊗ … ⊗ v_{σ(d)}` when `c` is the flip, and is lifted to an
//! arbitrary braiding through the lexicographically minimal reduced word
//! with positive crossings.

use crate::braiding::{check_degree, BraidedSpace};
use crate::error::Result;
use crate::exactlin::sparse::{Accumulator, SparseVec};
use crate::exactlin::Matrix;
use crate::field::Field;

/// A permutation of `0..d` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation((0..d).collect())
    }

    /// Panics unless `images` is a permutation of `0..len`.
    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            assert!(x < images.len() && !seen[x], "not a permutation: {images:?}");
            seen[x] = true;
        }
        Permutation(images)
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (k, &x) in self.0.iter().enumerate() {
            inv[x] = k;
        }
        Permutation(inv)
    }

    /// Number of inversions, i.e. the Coxeter length.
    pub fn length(&self) -> usize {
        let p = &self.0;
        (0..p.len())
            .map(|a| (a + 1..p.len()).filter(|&b| p[a] > p[b]).count())
            .sum()
    }

    /// Lexicographically minimal reduced word `[w_1, …, w_k]` (1-based
    /// generator indices) with `braid_word(word)` realizing this
    /// permutation's operator. Built greedily: the first letter is always the
    /// smallest available descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        // The operator moves the factor at position σ(k) to position k, i.e.
        // it is the position map ρ = σ^{-1}. A generator s can come first
        // (be applied last) iff s is a left descent of ρ, which in terms of σ
        // reads σ(s-1) > σ(s).
        let mut p = self.0.clone();
        let mut word = Vec::new();
        while let Some(s) = (1..p.len()).find(|&s| p[s - 1] > p[s]) {
            word.push(s);
            p.swap(s - 1, s);
        }
        word
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let body: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", body.join(" "))
    }
}

/// All permutations of `0..d` in lexicographic order.
pub fn permutations(d: usize) -> Vec<Permutation> {
    let mut cur: Vec<usize> = (0..d).collect();
    let mut out = vec![Permutation(cur.clone())];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len())
            .rev()
            .find(|&j| cur[j] > cur[i - 1])
            .expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Permutation(cur.clone()));
    }
}

/// An `(i, j)`-unshuffle together with the braid word of its lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unshuffle {
    pub permutation: Permutation,
    pub word: Vec<usize>,
}

/// Permutations of `0..i+j` increasing on the first `i` and on the last `j`
/// positions, in lexicographic one-line order. There are `C(i+j, i)`.
pub fn unshuffles(i: usize, j: usize) -> Result<Vec<Unshuffle>> {
    check_degree(i + j)?;
    let d = i + j;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(i);
    collect_subsets(d, i, 0, &mut chosen, &mut |left: &[usize]| {
        let mut images = left.to_vec();
        images.extend((0..d).filter(|x| !left.contains(x)));
        let permutation = Permutation(images);
        let word = permutation.reduced_word();
        out.push(Unshuffle { permutation, word });
    });
    out.sort_by(|a, b| a.permutation.cmp(&b.permutation));
    Ok(out)
}

fn collect_subsets(d: usize, k: usize, start: usize, chosen: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if chosen.len() == k {
        emit(chosen);
        return;
    }
    for x in start..d {
        chosen.push(x);
        collect_subsets(d, k, x + 1, chosen, emit);
        chosen.pop();
    }
}

/// The component `Δ_{i,j} : V^{⊗(i+j)} → V^{⊗i} ⊗ V^{⊗j}` of the coproduct.
/// Both sides are indexed by the same tensor basis convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaComponent<F: Field> {
    pub left: usize,
    pub right: usize,
    pub matrix: Matrix<F>,
}

/// Images `Δ_{i, m-i}(e_w)` of every basis word of degree `m ≤ max_degree`.
///
/// Filled by the recursion obtained from multiplicativity applied to the
/// last factor `w = x·v`:
///
/// `Δ_{i,j}(x v) = Δ_{i,j-1}(x) ⊗ v + c_i c_{i+1} ⋯ c_{m-1} (Δ_{i-1,j}(x) ⊗ v)`
///
/// where the braid product moves `v` leftwards across the right tensor
/// factor.
pub(crate) struct CoproductTable<F: Field> {
    /// `levels[m][i][w]`
    levels: Vec<Vec<Vec<SparseVec<F::Elem>>>>,
}

impl<F: Field> CoproductTable<F> {
    pub(crate) fn new(space: &BraidedSpace<F>, max_degree: usize) -> Result<Self> {
        check_degree(max_degree)?;
        let n = space.dim();
        let f = space.field();
        let mut levels: Vec<Vec<Vec<SparseVec<F::Elem>>>> = vec![vec![vec![vec![(0, f.one())]]]];
        for m in 1..=max_degree {
            let size = space.tensor_dim(m);
            let prev = &levels[m - 1];
            let mut level = vec![Vec::with_capacity(size); m + 1];
            let cross: Vec<Vec<usize>> = (0..=m)
                .map(|i| if i >= 1 { (i..m).collect() } else { Vec::new() })
                .collect();
            for w in 0..size {
                let (x, v) = (w / n, w % n);
                let append = |vec: &[(usize, F::Elem)]| -> SparseVec<F::Elem> {
                    vec.iter().map(|(u, a)| (u * n + v, a.clone())).collect()
                };
                for i in 0..=m {
                    let image = if i == 0 || i == m {
                        vec![(w, f.one())]
                    } else {
                        let stay = append(&prev[i][x]);
                        let moved = space.apply_word(m, &cross[i], &append(&prev[i - 1][x]));
                        let mut acc = Accumulator::new(f);
                        acc.add_scaled(&stay, &f.one());
                        acc.add_scaled(&moved, &f.one());
                        acc.finish()
                    };
                    level[i].push(image);
                }
            }
            levels.push(level);
        }
        Ok(CoproductTable { levels })
    }

    /// `Δ_{i, d-i}(e_w)`
    pub(crate) fn image(&self, d: usize, i: usize, w: usize) -> &[(usize, F::Elem)] {
        &self.levels[d][i][w]
    }
}

/// `Δ_{i,j}` as a dense `n^{i+j} × n^{i+j}` matrix.
pub fn delta_component<F: Field>(space: &BraidedSpace<F>, i: usize, j: usize) -> Result<DeltaComponent<F>> {
    let d = i + j;
    let table = CoproductTable::new(space, d)?;
    let size = space.tensor_dim(d);
    let f = space.field();
    let mut m = Matrix::zeros(f.clone(), size, size);
    for w in 0..size {
        for (r, x) in table.image(d, i, w) {
            m.set(*r, w, x.clone());
        }
    }
    Ok(DeltaComponent {
        left: i,
        right: j,
        matrix: m,
    })
}

/// Quantum symmetrizer `𝔖_d = Σ_{σ ∈ S_d}` (lift of σ), summed term by term.
pub fn symmetrizer<F: Field>(space: &BraidedSpace<F>, d: usize) -> Result<Matrix<F>> {
    check_degree(d)?;
    let size = space.tensor_dim(d);
    let words: Vec<Vec<usize>> = permutations(d).iter().map(|p| p.reduced_word()).collect();
    let f = space.field();
    let mut m = Matrix::zeros(f.clone(), size, size);
    for col in 0..size {
        for (r, x) in symmetrizer_column(space, d, &words, col) {
            m.set(r, col, x);
        }
    }
    Ok(m)
}

pub(crate) fn symmetrizer_column<F: Field>(
    space: &BraidedSpace<F>,
    d: usize,
    words: &[Vec<usize>],
    col: usize,
) -> SparseVec<F::Elem> {
    let f = space.field();
    let e = [(col, f.one())];
    let mut acc = Accumulator::new(f);
    for word in words {
        acc.add_scaled(&space.apply_word(d, word, &e), &f.one());
    }
    acc.finish()
}

/// Gaussian binomial coefficient `[d choose i]_q` by the q-Pascal rule
/// `[d, i] = [d-1, i-1] + q^i [d-1, i]`.
pub fn gaussian_binomial<F: Field>(field: &F, d: usize, i: usize, q: &F::Elem) -> F::Elem {
    if i > d {
        return field.zero();
    }
    let mut row = vec![field.one()];
    for m in 1..=d {
        let mut next = vec![field.zero(); m + 1];
        for k in 0..=m {
            let mut v = if k >= 1 { row[k - 1].clone() } else { field.zero() };
            if k < m {
                v = field.add(&v, &field.mul(&field.pow(q, k as u64), &row[k]));
            }
            next[k] = v;
        }
        row = next;
    }
    row[i].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn unshuffle_counts() {
        let u = unshuffles(1, 1).unwrap();
        assert_eq!(u.len(), 2);
        assert_eq!(u[0].permutation, Permutation::identity(2));
        assert!(u[0].word.is_empty());
        assert_eq!(u[1].word, vec![1]);
        assert_eq!(unshuffles(0, 4).unwrap().len(), 1);
        assert_eq!(unshuffles(2, 2).unwrap().len(), 6);
        assert_eq!(unshuffles(3, 4).unwrap().len(), 35);
        assert!(unshuffles(7, 6).is_err());
    }

    #[test]
    fn reduced_words_have_coxeter_length() {
        for p in permutations(4) {
            assert_eq!(p.reduced_word().len(), p.length(), "{p}");
        }
        // [3 1 2]: output takes factors 3, 1, 2
        let p = Permutation::from_images(vec![2, 0, 1]);
        assert_eq!(p.reduced_word(), vec![1, 2]);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0).len(), 1);
    }

    #[test]
    fn permutation_operator_convention() {
        // with the flip, the lift of σ sends e_a ⊗ e_b ⊗ e_c to the factors
        // read in the order σ(1), σ(2), σ(3)
        let b = BraidedSpace::flip(3, Rationals).unwrap();
        let p = Permutation::from_images(vec![2, 0, 1]);
        let m = b.braid_word(3, &p.reduced_word()).unwrap();
        let src = crate::braiding::word_index(3, &[0, 1, 2]);
        let dst = crate::braiding::word_index(3, &[2, 0, 1]);
        assert_eq!(m.get(dst, src), &Rationals.one());
    }

    #[test]
    fn q_binomials() {
        let f = Rationals;
        let q = f.from_i64(-1);
        assert_eq!(gaussian_binomial(&f, 5, 0, &q), f.one());
        assert_eq!(gaussian_binomial(&f, 2, 1, &q), f.zero());
        assert_eq!(gaussian_binomial(&f, 3, 1, &q), f.one());
        let two = f.from_i64(2);
        // [4 choose 2]_2 = 35
        assert_eq!(gaussian_binomial(&f, 4, 2, &two), f.from_i64(35));
        assert_eq!(gaussian_binomial(&f, 4, 2, &f.one()), f.from_i64(6));
    }

    #[test]
    fn delta_one_one_small() {
        let f = Rationals;
        let flip = BraidedSpace::flip(1, f).unwrap();
        let d = delta_component(&flip, 1, 1).unwrap();
        assert_eq!(d.matrix.get(0, 0), &f.from_i64(2));

        let minus = BraidedSpace::diagonal(&Matrix::from_i64(f, 1, 1, &[-1]).unwrap()).unwrap();
        let d = delta_component(&minus, 1, 1).unwrap();
        assert!(d.matrix.is_zero());
        assert!(delta_component(&minus, 0, 3).unwrap().matrix.is_identity());
        assert!(delta_component(&minus, 3, 0).unwrap().matrix.is_identity());
    }

    #[test]
    fn symmetrizer_small() {
        let f = Rationals;
        let flip = BraidedSpace::flip(1, f).unwrap();
        assert_eq!(symmetrizer(&flip, 3).unwrap(), Matrix::from_i64(f, 1, 1, &[6]).unwrap());
        assert!(symmetrizer(&flip, 1).unwrap().is_identity());
        let minus = BraidedSpace::diagonal(&Matrix::from_i64(f, 1, 1, &[-1]).unwrap()).unwrap();
        assert!(symmetrizer(&minus, 2).unwrap().is_zero());
    }
}

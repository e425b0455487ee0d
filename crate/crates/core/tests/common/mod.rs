#![allow(dead_code)]

use nichols::{BraidedSpace, Field, Matrix, PrimeField, Rationals};

pub fn q_flip(n: usize) -> BraidedSpace<Rationals> {
    BraidedSpace::flip(n, Rationals).unwrap()
}

pub fn q_diagonal(n: usize, q: &[&str]) -> BraidedSpace<Rationals> {
    BraidedSpace::diagonal(&Matrix::parse(Rationals, n, n, q).unwrap()).unwrap()
}

pub fn fp_flip(p: u64, n: usize) -> BraidedSpace<PrimeField> {
    BraidedSpace::flip(n, PrimeField::new(p).unwrap()).unwrap()
}

pub fn fp_diagonal(p: u64, n: usize, q: &[i64]) -> BraidedSpace<PrimeField> {
    let f = PrimeField::new(p).unwrap();
    BraidedSpace::diagonal(&Matrix::from_i64(f, n, n, q).unwrap()).unwrap()
}

/// Standard two-dimensional Hecke-type braiding with parameter `q`:
/// `c(e_i e_i) = q e_i e_i`, `c(e_0 e_1) = e_1 e_0`,
/// `c(e_1 e_0) = e_0 e_1 + (q - 1/q) e_1 e_0`.
pub fn q_hecke(q: i64) -> BraidedSpace<Rationals> {
    let f = Rationals;
    let qe = f.from_i64(q);
    let diff = f.sub(&qe, &f.inv(&qe).unwrap());
    let mut c = Matrix::zeros(f, 4, 4);
    c.set(0, 0, qe.clone());
    c.set(3, 3, qe);
    c.set(2, 1, f.one());
    c.set(1, 2, f.one());
    c.set(2, 2, diff);
    BraidedSpace::from_matrix(2, c).unwrap()
}

/// Non-diagonal braiding `c(e_1 e_1) = e_1 e_1 + e_0 e_0`, flip elsewhere.
pub fn q_jordan_like() -> BraidedSpace<Rationals> {
    let mut c = q_flip(2).matrix().clone();
    c.set(0, 3, Rationals.one());
    BraidedSpace::from_matrix(2, c).unwrap()
}

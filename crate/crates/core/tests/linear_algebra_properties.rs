use nichols::{Field, Matrix, PrimeField, Rationals, Subspace};
use proptest::prelude::*;

fn small_matrix(max_rows: usize, cols: usize) -> impl Strategy<Value = (usize, Vec<i64>)> {
    (1..=max_rows).prop_flat_map(move |r| (Just(r), proptest::collection::vec(-3i64..=3, r * cols)))
}

fn span_of<F: Field>(f: &F, cols: usize, rows: usize, entries: &[i64]) -> Subspace<F> {
    Subspace::row_space(&Matrix::from_i64(f.clone(), rows, cols, entries).unwrap())
}

proptest! {
    #[test]
    fn rref_is_idempotent((rows, entries) in small_matrix(5, 4)) {
        let m = Matrix::from_i64(Rationals, rows, 4, &entries).unwrap();
        let (r, pivots) = m.rref();
        let (again, pivots_again) = r.rref();
        prop_assert_eq!(&r, &again);
        prop_assert_eq!(pivots, pivots_again);
    }

    #[test]
    fn rank_nullity((rows, entries) in small_matrix(5, 5)) {
        for p in [0u64, 2, 5] {
            if p == 0 {
                let m = Matrix::from_i64(Rationals, rows, 5, &entries).unwrap();
                prop_assert_eq!(m.rank() + m.kernel().dim(), 5);
                for v in m.kernel().vectors() {
                    prop_assert!(m.apply(v).unwrap().iter().all(|x| Rationals.is_zero(x)));
                }
            } else {
                let f = PrimeField::new(p).unwrap();
                let m = Matrix::from_i64(f, rows, 5, &entries).unwrap();
                prop_assert_eq!(m.rank() + m.kernel().dim(), 5);
            }
        }
    }

    #[test]
    fn intersection_is_commutative_and_associative(
        (ra, a) in small_matrix(3, 4),
        (rb, b) in small_matrix(3, 4),
        (rc, c) in small_matrix(3, 4),
    ) {
        let f = PrimeField::new(3).unwrap();
        let (a, b, c) = (span_of(&f, 4, ra, &a), span_of(&f, 4, rb, &b), span_of(&f, 4, rc, &c));
        prop_assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
        prop_assert_eq!(
            a.intersect(&b).unwrap().intersect(&c).unwrap(),
            a.intersect(&b.intersect(&c).unwrap()).unwrap()
        );
        let ab = a.intersect(&b).unwrap();
        prop_assert_eq!(ab.dim() + a.sum(&b).unwrap().dim(), a.dim() + b.dim());
        prop_assert!(ab.is_subspace_of(&a).unwrap());
    }

    #[test]
    fn reduction_is_canonical((ra, a) in small_matrix(3, 4), v in proptest::collection::vec(-4i64..=4, 4)) {
        let s = span_of(&Rationals, 4, ra, &a);
        let v: Vec<_> = v.into_iter().map(|x| Rationals.from_i64(x)).collect();
        let r = s.reduce(&v).unwrap();
        prop_assert_eq!(s.reduce(&r).unwrap(), r.clone());
        let diff: Vec<_> = v.iter().zip(&r).map(|(x, y)| Rationals.sub(x, y)).collect();
        prop_assert!(s.contains(&diff).unwrap());
        prop_assert!(s.annihilator().apply(&diff).unwrap().iter().all(|x| Rationals.is_zero(x)));
    }
}

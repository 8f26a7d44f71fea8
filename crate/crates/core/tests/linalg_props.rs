use loewy::linalg::{solve_linear_system, Matrix, PrimeField, Subspace};
use proptest::prelude::*;

const PRIMES: [u64; 5] = [2, 3, 5, 7, 101];

fn field() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(&PRIMES[..]).prop_map(|p| PrimeField::new(p).unwrap())
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (field(), 1..=max_rows, 1..=max_cols).prop_flat_map(|(f, r, c)| {
        prop::collection::vec(0..f.modulus(), r * c).prop_map(move |d| Matrix::from_vec(f, r, c, d))
    })
}

/// A random invertible matrix built as a product of elementary row operations.
fn invertible(f: PrimeField, n: usize, ops: &[(usize, usize, u32)]) -> Matrix {
    let mut m = Matrix::identity(f, n);
    for &(i, j, s) in ops {
        let (i, j) = (i % n, j % n);
        let mut e = Matrix::identity(f, n);
        if i == j {
            e.set(i, i, 1 + s % (f.modulus() - 1));
        } else {
            e.set(i, j, s % f.modulus());
        }
        m = e.mul(&m);
    }
    m
}

proptest! {
    #[test]
    fn field_axioms(f in field(), a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
        let (a, b, c) = (f.reduce(a.into()), f.reduce(b.into()), f.reduce(c.into()));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        match f.inv(a) {
            Some(x) => prop_assert_eq!(f.mul(a, x), 1),
            None => prop_assert_eq!(a, 0),
        }
    }

    #[test]
    fn rref_is_invariant_under_row_operations(
        m in matrix(6, 6),
        ops in prop::collection::vec((0usize..6, 0usize..6, 0u32..1000), 0..12),
    ) {
        let r = invertible(m.field(), m.rows(), &ops);
        prop_assert!(r.is_invertible());
        prop_assert_eq!(r.mul(&m).rref(), m.rref());
    }

    #[test]
    fn rank_nullity(m in matrix(7, 7)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        prop_assert_eq!(m.rank() + m.left_kernel().dim(), m.rows());
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.mul(&m.kernel().basis().transpose()).is_zero());
    }

    #[test]
    fn sum_and_intersection_dimensions(a in matrix(5, 6), rows in prop::collection::vec(0u32..1000, 0..30)) {
        let f = a.field();
        let n = a.cols();
        let vecs: Vec<Vec<u32>> = rows
            .chunks(n)
            .filter(|c| c.len() == n)
            .map(|c| c.iter().map(|&x| x % f.modulus()).collect())
            .collect();
        let s = Subspace::span(&a);
        let t = Subspace::from_vectors(f, n, &vecs);
        let sum = s.sum(&t).unwrap();
        let meet = s.intersection(&t).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), s.dim() + t.dim());
        prop_assert!(sum.contains_subspace(&s) && sum.contains_subspace(&t));
        prop_assert!(s.contains_subspace(&meet) && t.contains_subspace(&meet));
    }

    #[test]
    fn solve_has_zero_residual(a in matrix(5, 5), x in prop::collection::vec(0u32..1000, 25)) {
        let f = a.field();
        let x = Matrix::from_vec(f, a.cols(), 1, x[..a.cols()].iter().map(|&v| v % f.modulus()).collect());
        let b = a.mul(&x);
        let sol = solve_linear_system(&a, &b).unwrap();
        let p = sol.particular.expect("consistent by construction");
        prop_assert_eq!(a.mul(&p), b);
        prop_assert_eq!(sol.homogeneous.dim(), a.kernel().dim());
    }

    #[test]
    fn quotient_coordinates_split(a in matrix(5, 6)) {
        let s = Subspace::span(&a);
        let q = s.quotient_coordinates();
        prop_assert_eq!(q.projection.cols(), a.cols() - s.dim());
        prop_assert!(s.basis().mul(&q.projection).is_zero());
        prop_assert!(q.section.mul(&q.projection).is_identity());
    }
}

use e7forge::sparse::*;
use e7forge::ExactScalar;
use proptest::prelude::*;

fn m(entries: &[(usize, usize, i64)]) -> SparseMatrix<ExactScalar> {
    SparseMatrix::from_triplets(3, 3, entries.iter().map(|&(r, c, v)| (r, c, ExactScalar::from_int(v))))
}

#[test]
fn products_match_dense() {
    let a = m(&[(0, 1, 2), (1, 2, -1), (2, 0, 3), (2, 2, 1)]);
    let b = m(&[(0, 0, 1), (1, 1, 4), (2, 1, 5)]);
    let dense = a.to_dense() * b.to_dense();
    assert_eq!(a.mul(&b).to_dense(), dense);
    assert_eq!(a.trace_product(&b).embed().re, dense.trace().re);
}

#[test]
fn duplicates_sum_and_zeros_drop() {
    let a = m(&[(0, 0, 1), (0, 0, -1), (1, 1, 2), (1, 1, 3)]);
    assert_eq!(a.nnz(), 1);
    assert_eq!(a.get(1, 1), ExactScalar::from_int(5));
    assert!(a.sub(&a).is_zero());
}

#[test]
fn commutator_antisymmetric() {
    let a = m(&[(0, 1, 1), (1, 0, -1)]);
    let b = m(&[(1, 2, 1), (2, 1, -1)]);
    assert_eq!(a.commutator(&b), b.commutator(&a).neg());
    assert_eq!(a.commutator(&b), m(&[(0, 2, 1), (2, 0, -1)]));
}

fn entries(n: usize) -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0..n, 0..n, -4i64..=4), 0..20)
}

proptest! {
    #[test]
    fn operations_match_dense(a in entries(5), b in entries(5)) {
        let to = |e: &[(usize, usize, i64)]| SparseMatrix::from_triplets(5, 5, e.iter().map(|&(r, c, v)| (r, c, ExactScalar::from_int(v))));
        let (sa, sb) = (to(&a), to(&b));
        let (da, db) = (sa.to_dense(), sb.to_dense());
        prop_assert_eq!(sa.mul(&sb).to_dense(), &da * &db);
        prop_assert_eq!(sa.add(&sb).to_dense(), &da + &db);
        prop_assert_eq!(sa.transpose().to_dense(), da.transpose());
        prop_assert_eq!(sa.adjoint().to_dense(), da.adjoint());
        prop_assert_eq!(sa.trace_product(&sb).embed().re, (&da * &db).trace().re);
        prop_assert!(sa.iter().all(|(_, _, v)| !v.is_zero()));
    }
}

mod common;

use parahom::complex::{homology, induced_map, level_subcomplex, validate, GridPos, Side};
use parahom::gf2::{kernel_basis, rank, BitVec, Gf2Matrix, Subspace};
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Gf2Matrix> {
    (0..=max_rows, 0..=max_cols).prop_flat_map(|(rows, cols)| fixed(rows, cols))
}

fn fixed(rows: usize, cols: usize) -> impl Strategy<Value = Gf2Matrix> {
    prop::collection::vec(prop::collection::vec(any::<bool>(), rows), cols).prop_map(
        move |columns| {
            Gf2Matrix::from_columns(rows, columns.into_iter().map(BitVec::from_bits).collect())
        },
    )
}

/// Any row count up to `max_rows`, exactly `cols` columns.
fn shaped(max_rows: usize, cols: usize) -> impl Strategy<Value = Gf2Matrix> {
    (0..=max_rows).prop_flat_map(move |rows| fixed(rows, cols))
}

/// Exactly `rows` rows, any column count up to `max_cols`.
fn shaped_rows(rows: usize, max_cols: usize) -> impl Strategy<Value = Gf2Matrix> {
    (0..=max_cols).prop_flat_map(move |cols| fixed(rows, cols))
}

fn subspace_pair(max_dim: usize) -> impl Strategy<Value = (Subspace, Subspace)> {
    (1..=max_dim).prop_flat_map(|n| {
        let vectors = move || prop::collection::vec(prop::collection::vec(any::<bool>(), n), 0..=n);
        (vectors(), vectors()).prop_map(move |(u, v)| {
            let span = |vs: Vec<Vec<bool>>| {
                let bits: Vec<BitVec> = vs.into_iter().map(BitVec::from_bits).collect();
                Subspace::span(n, &bits)
            };
            (span(u), span(v))
        })
    })
}

proptest! {
    #[test]
    fn row_rank_equals_column_rank(m in matrix(10, 10)) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rank_plus_nullity(m in matrix(10, 10)) {
        let ker = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + ker.dim(), m.cols());
        for v in ker.basis().columns() {
            prop_assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn product_rank_is_bounded((a, b) in (0usize..=6).prop_flat_map(|inner| (shaped(6, inner), shaped_rows(inner, 6)))) {
        let ab = a.mul(&b);
        prop_assert!(rank(&ab) <= rank(&a).min(rank(&b)));
    }

    #[test]
    fn grassmann_identity((u, v) in subspace_pair(8)) {
        let sum = u.sum(&v).unwrap();
        let cap = u.intersect(&v).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), u.dim() + v.dim());
        prop_assert!(cap.is_subspace_of(&u) && cap.is_subspace_of(&v));
        prop_assert!(u.is_subspace_of(&sum) && v.is_subspace_of(&sum));
        prop_assert_eq!(u.quotient_dim(&cap).unwrap(), u.dim() - cap.dim());
    }

    #[test]
    fn euler_characteristic_matches_betti_numbers((k, _) in common::complex_with_function(7, 3)) {
        let top = k.dim().map_or(0, |d| d + 1);
        let alternating: i64 = (0..top)
            .map(|r| {
                let b = homology(&k, r).dim() as i64;
                if r % 2 == 0 { b } else { -b }
            })
            .sum();
        prop_assert_eq!(alternating, k.euler_characteristic());
    }

    #[test]
    fn boundary_of_boundary_vanishes((k, _) in common::complex_with_function(7, 3)) {
        for r in 1..=k.dim().unwrap_or(0) {
            let dd = k.boundary_matrix(r).mul(&k.boundary_matrix(r + 1));
            prop_assert_eq!(rank(&dd), 0);
        }
    }

    #[test]
    fn induced_maps_compose((k, f) in common::complex_with_function(7, 2), picks in prop::collection::vec(0usize..20, 3)) {
        let grid = validate(&k, &f).unwrap();
        let positions = grid.positions();
        let mut chosen: Vec<GridPos> = picks.iter().map(|&i| positions[i % positions.len()]).collect();
        chosen.sort();
        let [a, b, c] = [chosen[0], chosen[1], chosen[2]];
        let (la, lb, lc) = (
            level_subcomplex(&k, &f, &grid, Side::Sub, a),
            level_subcomplex(&k, &f, &grid, Side::Sub, b),
            level_subcomplex(&k, &f, &grid, Side::Sub, c),
        );
        for r in 0..=k.dim().unwrap_or(0) {
            let direct = induced_map(&la, &lc, r).unwrap();
            let composed = induced_map(&lb, &lc, r).unwrap().mul(&induced_map(&la, &lb, r).unwrap());
            prop_assert_eq!(direct, composed);
            let identity = induced_map(&lb, &lb, r).unwrap();
            prop_assert_eq!(identity, Gf2Matrix::identity(homology(&lb, r).dim()));
        }
    }
}

#[test]
fn induced_map_rejects_non_subcomplexes() {
    let (k, f) = (
        common::flag_complex(3, &[(0, 1), (1, 2)], 1),
        parahom::complex::VertexFunction::new(
            vec![0, 1, 2].into_iter().map(parahom::value::int).collect(),
        ),
    );
    let grid = validate(&k, &f).unwrap();
    let low = level_subcomplex(&k, &f, &grid, Side::Sub, GridPos::At(0));
    assert!(induced_map(&k, &low, 0).is_err());
}

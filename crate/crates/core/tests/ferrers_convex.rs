use convexmat::oracle::{all_ferrers_convex_specs, shapes_up_to};
use convexmat::{ferrers_convex, ferrers_convex_decompose, is_unimodal, BinaryMatrix};

/// `n x n` band with `1`s on the diagonal and the superdiagonal.
fn band(n: usize) -> BinaryMatrix {
    BinaryMatrix::from_fn(n, n, |i, j| j == i || j == i + 1)
}

/// Left-justified rows of nonincreasing length, written independently of
/// the library's own shape detection.
fn is_ferrers(a: &BinaryMatrix) -> bool {
    let mut prev = usize::MAX;
    for i in 0..a.rows() {
        let row = a.row(i);
        let len = row.iter().take_while(|&&b| b).count();
        if row[len..].iter().any(|&b| b) || len > prev {
            return false;
        }
        prev = len;
    }
    true
}

fn block(a: &BinaryMatrix, r0: usize, c0: usize, rows: usize, cols: usize) -> BinaryMatrix {
    BinaryMatrix::from_fn(rows, cols, |i, j| a.get(r0 + i, c0 + j))
}

/// Whether some split, empty blocks included, turns `a` into four rotated
/// Ferrers matrices.
fn splits_into_ferrers_blocks(a: &BinaryMatrix) -> bool {
    let (m, n) = a.shape();
    (0..=m).any(|m1| {
        (0..=n).any(|n1| {
            let (m2, n2) = (m - m1, n - n1);
            let ok = |r0, c0, r, c, undo: i32| {
                r == 0 || c == 0 || is_ferrers(&block(a, r0, c0, r, c).rotate(undo))
            };
            ok(0, 0, m1, n1, 2)
                && ok(0, n1, m1, n2, 3)
                && ok(m1, 0, m2, n1, 1)
                && ok(m1, n1, m2, n2, 0)
        })
    })
}

#[test]
fn band_matrices_are_convex_unimodal_but_not_ferrers_convex() {
    for n in 4..=7 {
        let a = band(n);
        assert!(a.is_convex() && a.is_connected());
        assert!(is_unimodal(&a.row_sums()) && is_unimodal(&a.col_sums()));
        assert!(!splits_into_ferrers_blocks(&a), "n = {n}");
        assert_eq!(ferrers_convex_decompose(&a), None);
    }
}

#[test]
fn no_spec_assembles_the_4x4_band() {
    let target = band(4);
    let specs = all_ferrers_convex_specs(4, 4);
    assert!(!specs.is_empty());
    assert!(specs.iter().all(|s| ferrers_convex(s).unwrap() != target));
}

#[test]
fn decomposition_agrees_with_exhaustive_assembly() {
    for (m, n) in shapes_up_to(9)
        .into_iter()
        .filter(|&(m, n)| m >= 2 && n >= 2)
    {
        let mut built: Vec<BinaryMatrix> = all_ferrers_convex_specs(m, n)
            .iter()
            .map(|s| ferrers_convex(s).unwrap())
            .collect();
        built.sort();
        built.dedup();
        for mask in 0..1u64 << (m * n) {
            let a = convexmat::matrix_from_mask(m, n, mask);
            let found = ferrers_convex_decompose(&a);
            assert_eq!(found.is_some(), built.binary_search(&a).is_ok(), "{a:?}");
            if let Some(spec) = found {
                assert_eq!(ferrers_convex(&spec).unwrap(), a);
            }
        }
    }
}

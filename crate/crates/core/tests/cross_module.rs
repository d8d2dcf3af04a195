use grassmat_core::identities::{charge_table, relation_rank};
use grassmat_core::qindex::{hilbert_series_by_rank, molien_weyl_index, HilbertMode, QSeries, VariableSpec};
use grassmat_core::symfun::{catalan, codimension};
use grassmat_core::Q;

#[test]
fn free_series_matches_charge_table() {
    let rows = charge_table(8, None, false, false).unwrap();
    let charges: Vec<usize> = (1..=8).collect();
    let s = hilbert_series_by_rank(HilbertMode::Free, 1, &VariableSpec::fermions(&charges, true), 8, false).unwrap();
    assert_eq!(s.coeff(0), Q::from_integer(1.into()));
    for r in &rows {
        assert_eq!(s.coeff(r.charge), Q::from_integer(r.bosonic.len().into()), "charge {}", r.charge);
    }
}

#[test]
fn rank_is_catalan_for_two_by_two() {
    for m in 1..=4 {
        for e in 0..=m {
            let r = relation_rank(m, e, m - e, 2).unwrap();
            assert_eq!(r.span_dim as u128, catalan(m));
            assert_eq!(r.span_dim as u128, codimension(m, 2));
        }
    }
}

#[test]
fn molien_weyl_is_euler() {
    for (n, order) in [(1, 8), (2, 6)] {
        assert_eq!(molien_weyl_index(n, order, false).unwrap(), QSeries::euler(order));
    }
}

use necklace_core::bounds::d_value;
use necklace_core::measures::{
    build_construction, check_no_fair_on_grid, check_no_fair_on_grid_with_budget, rank,
    MeasureOutcome, Rational, Symbol, SymbolicQuantity,
};
use necklace_core::Error;

fn a() -> SymbolicQuantity {
    SymbolicQuantity::symbol(Symbol::A)
}

#[test]
fn one_dimensional_certificate_uses_independence_only() {
    let col = build_construction(1, 1, 3, 8).unwrap();
    let MeasureOutcome::Certificate(cert) = check_no_fair_on_grid(&col, 1).unwrap() else {
        panic!("counterexample found");
    };
    assert!(cert.all_via_independence());
    assert!(cert.conservation_holds);
    assert_eq!(cert.refuted_by_independence, cert.equations);
    assert_eq!(cert.witnesses_by_color.iter().sum::<u64>(), cert.equations);
    assert!(cert.alpha_rank_max as i128 <= cert.d_value);
    assert_eq!(cert.d_value, d_value(1, 1).unwrap());
}

#[test]
fn planar_certificate_stays_within_the_dimension_count() {
    let col = build_construction(2, 1, 2, 2).unwrap();
    let MeasureOutcome::Certificate(cert) = check_no_fair_on_grid(&col, 1).unwrap() else {
        panic!("counterexample found");
    };
    assert!(cert.all_via_independence());
    assert!(cert.conservation_holds);
    assert!(cert.alpha_rank_max as i128 <= cert.d_value);
}

#[test]
fn a_single_colour_splits_between_whole_cells() {
    let col = build_construction(1, 1, 2, 1).unwrap();
    match check_no_fair_on_grid(&col, 1).unwrap() {
        MeasureOutcome::Counterexample { cuts, labels } => {
            assert_eq!(cuts, vec![vec!["1".to_string()]]);
            assert_eq!(labels, vec![0, 1]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn no_cuts_means_one_box() {
    let col = build_construction(1, 0, 2, 2).unwrap();
    let MeasureOutcome::Certificate(cert) = check_no_fair_on_grid(&col, 0).unwrap() else {
        panic!("one box cannot be halved");
    };
    assert_eq!(cert.splittings, 1);
    assert_eq!(cert.equations, 2);
}

#[test]
fn totals_add_up_per_cell() {
    for (d, n, k) in [(1, 2, 2), (1, 3, 4), (2, 2, 3)] {
        let col = build_construction(d, 1, n, k).unwrap();
        let mut sum = vec![SymbolicQuantity::zero(); k];
        for cell in 0..col.cells() {
            for (color, q) in col.region_measures(cell) {
                sum[color.index()].add_assign(&q);
            }
        }
        assert_eq!(sum, col.color_totals());
    }
}

#[test]
fn v_cubes_carry_two_to_the_d_times_m() {
    for d in 1..=2 {
        let col = build_construction(d, 1, 2, 3).unwrap();
        for cell in 0..col.cells() {
            for (color, q) in col.region_measures(cell) {
                if color == col.white || q.terms().all(|(m, _)| !m.has_root()) {
                    continue;
                }
                let (m, coeff) = q.terms().next().unwrap();
                assert_eq!(q.terms().count(), 1);
                assert!(m.is_m(d));
                assert_eq!(*coeff, Rational::from_integer(1 << d));
            }
        }
    }
}

#[test]
fn rank_counts_independent_directions() {
    let m1 = SymbolicQuantity::m(0, 0, 1);
    let m2 = SymbolicQuantity::m(1, 0, 1);
    let half = Rational::new(1, 2);
    assert_eq!(rank(&[m1.clone(), m2.clone(), &m1 + &m2]), 2);
    assert_eq!(rank(&[a(), a().scale(half)]), 1);
    assert_eq!(rank(&[]), 0);
    assert_eq!(rank(&[SymbolicQuantity::zero()]), 0);
}

#[test]
fn budgets_are_explicit() {
    let col = build_construction(2, 1, 2, 2).unwrap();
    assert!(matches!(
        check_no_fair_on_grid_with_budget(&col, 1, 10),
        Err(Error::ResourceExceeded { .. })
    ));
    assert!(build_construction(3, 1, 2, 2).is_err());
}

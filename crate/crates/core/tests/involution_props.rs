use m0n_core::involution::{
    classify_ny_config, composed_pairs, doubling_map, epsilon_stratify, induced_tree_action, label_involution,
    monad_report, ny_compose, tree_orbits, PairedLabel, NY_TABLE,
};
use m0n_core::rational::{half, q};
use m0n_core::trees::enumerate_stable_trees;
use m0n_core::{PairedConfig, PairedLabelSet, Rational};
use proptest::prelude::*;

#[test]
fn burnside_orbit_count() {
    for p in 1..=2 {
        let set = PairedLabelSet::new(p);
        for grade in 0..=set.labels().max_grade() {
            let trees = enumerate_stable_trees(set.labels(), Some(grade));
            let fixed = trees.iter().filter(|t| induced_tree_action(t).unwrap() == **t).count();
            let orbits = tree_orbits(&set, grade);
            assert_eq!(orbits.len() * 2, trees.len() + fixed, "p = {p}, grade = {grade}");
        }
    }
}

#[test]
fn involution_laws_up_to_three_pairs() {
    let r = monad_report(4, 3);
    assert!(r.points && r.labels && r.trees && r.grades, "{r:?}");
}

#[test]
fn label_involution_fixes_only_infinity() {
    for p in 0..=4 {
        let inv = label_involution(&PairedLabelSet::new(p));
        assert_eq!(inv.fixed_points(), vec![PairedLabel::Infinity]);
        assert_eq!(inv.transpositions().len(), p as usize + 1);
    }
}

#[test]
fn table_rows_classify_to_their_codimension() {
    for row in NY_TABLE.iter().filter(|r| r.name != "4a") {
        let d = classify_ny_config(&row.witness());
        assert_eq!(d.codim, row.codim, "row {}", row.name);
        assert_eq!(d.table_row, Some(row.name));
    }
}

#[test]
fn one_collision_off_half_has_codimension_one() {
    // The witness for the second codimension-4 row has the same incidences
    // as the single-collision row.
    let row = NY_TABLE.iter().find(|r| r.name == "4a").unwrap();
    let d = classify_ny_config(&row.witness());
    assert_eq!(d.codim, 1);
    assert_eq!(d.table_row, Some("1b"));
}

#[test]
fn composition_arity_is_associative() {
    for (a, b, c) in [(1, 2, 0), (2, 1, 3), (1, 1, 1)] {
        let left = composed_pairs(composed_pairs(a, b), c);
        let right = composed_pairs(a, composed_pairs(b, c));
        assert_eq!(left, right);
        assert_eq!(left, a + b + c + 2);
        let ab = ny_compose(&PairedLabelSet::new(a), &PairedLabel::Z(1), &PairedLabelSet::new(b)).unwrap();
        let abc = ny_compose(&ab.labels, &PairedLabel::Z(1), &PairedLabelSet::new(c)).unwrap();
        assert_eq!(abc.labels.pairs(), left);
        assert_eq!(abc.labels.len(), 2 * left as usize + 3);
    }
}

#[test]
fn composition_trees_are_rho_symmetric() {
    for p in 1..=3 {
        for pb in 0..=2 {
            for i in 1..=p {
                let c = ny_compose(&PairedLabelSet::new(p), &PairedLabel::Z(i), &PairedLabelSet::new(pb)).unwrap();
                assert_eq!(induced_tree_action(&c.tree).unwrap(), c.tree);
                assert_eq!(c.tree.edge_count(), 2);
            }
        }
    }
}

fn coord() -> impl Strategy<Value = Rational> {
    prop_oneof![
        (-20i64..=20, 1i64..=12).prop_map(|(a, b)| q(a, b)),
        Just(half()),
        (1i64..=9).prop_map(|k| half() + q(1, 100 * k)),
    ]
}

proptest! {
    #[test]
    fn doubling_degenerates_exactly_at_mirror_incidences(xs in prop::collection::vec(coord(), 1..5)) {
        let d = doubling_map(&xs);
        let p = xs.len();
        prop_assert_eq!(d.values.len(), 2 * p);
        for i in 0..p {
            prop_assert_eq!(&d.values[i] + &d.values[p + i], Rational::from_integer(1.into()));
        }
        let expected = xs.iter().any(|x| *x == half())
            || (0..p).any(|i| (i + 1..p).any(|j| &xs[i] + &xs[j] == Rational::from_integer(1.into())));
        prop_assert_eq!(d.degenerate, expected);
    }

    #[test]
    fn epsilon_depth_is_antitone(xs in prop::collection::vec(coord(), 2..6), a in 1i64..50, b in 1i64..50) {
        let c = PairedConfig::finite(xs.clone());
        let (small, large) = (q(a.min(b), 100), q(a.max(b), 100));
        match (epsilon_stratify(&c, &small), epsilon_stratify(&c, &large)) {
            (Ok(js), Ok(jl)) => prop_assert!(js <= jl),
            (Err(e1), Err(e2)) => prop_assert_eq!(e1, e2),
            other => prop_assert!(false, "inconsistent {:?}", other),
        }
    }

    #[test]
    fn classification_is_rho_invariant(xs in prop::collection::vec(coord(), 1..5)) {
        let c = PairedConfig::finite(xs);
        let d = classify_ny_config(&c);
        let e = classify_ny_config(&c.rho());
        prop_assert_eq!(d.codim, e.codim);
        prop_assert_eq!(d.collision_pattern, e.collision_pattern);
        prop_assert_eq!(d.half_incidences, e.half_incidences);
    }
}

#[test]
fn all_half_reaches_full_depth() {
    for p in 1..=5 {
        let c = PairedConfig::finite(vec![half(); p]);
        assert_eq!(epsilon_stratify(&c, &q(1, 1000)).unwrap(), p);
    }
}

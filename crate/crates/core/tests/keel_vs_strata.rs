use std::time::Instant;

use m0n_core::keel::{divisor_classes, is_crossing, literal_vanishing_condition, KeelElement};
use m0n_core::strata::{betti_numbers, compactified_count_poly, strata_poset};
use m0n_core::{KeelRing, LabelSet, Rational};
use proptest::prelude::*;

fn set(n: u32) -> LabelSet<u32> {
    LabelSet::range(n).unwrap()
}

#[test]
fn graded_dimensions_equal_point_count_betti_numbers() {
    for n in 4..=6 {
        let keel = KeelRing::new(&set(n)).unwrap().graded_dimensions();
        let strata: Vec<usize> = betti_numbers(&set(n)).even().iter().map(|&b| b as usize).collect();
        assert_eq!(keel, strata, "n = {n}");
    }
}

#[test]
fn seven_points_both_ways() {
    let start = Instant::now();
    let keel = KeelRing::new(&set(7)).unwrap().graded_dimensions();
    assert_eq!(keel, vec![1, 42, 127, 42, 1]);
    assert_eq!(betti_numbers(&set(7)).even(), &[1, 42, 127, 42, 1]);
    assert!(start.elapsed().as_secs() < 120);
}

#[test]
fn count_polynomials_are_palindromic() {
    for n in 3..=8 {
        let p = compactified_count_poly(&set(n));
        assert!(p.is_palindromic(), "n = {n}");
        assert_eq!(p.degree(), Some(n as usize - 3));
    }
}

#[test]
fn euler_characteristics() {
    assert_eq!(betti_numbers(&set(5)).euler_characteristic(), 7);
    assert_eq!(betti_numbers(&set(6)).euler_characteristic(), 34);
    for n in 4..=7 {
        assert_eq!(
            compactified_count_poly(&set(n)).eval(1),
            betti_numbers(&set(n)).euler_characteristic() as i128
        );
    }
}

#[test]
fn divisor_classes_are_codimension_one_strata() {
    for n in 4..=7 {
        let classes = divisor_classes(&set(n)).unwrap();
        let codim1: Vec<Vec<usize>> = strata_poset(&set(n))
            .grade(1)
            .iter()
            .map(|s| s.tree().splits().into_iter().next().unwrap())
            .collect();
        let mut reps: Vec<Vec<usize>> = classes.iter().map(|c| c.rep()).collect();
        let mut codim1 = codim1;
        reps.sort();
        codim1.sort();
        assert_eq!(reps, codim1);
    }
}

#[test]
fn crossing_is_representative_independent() {
    for n in 4..=7u32 {
        let n_us = n as usize;
        let full = (1u64 << n) - 1;
        let classes = divisor_classes(&set(n)).unwrap();
        for a in &classes {
            for b in &classes {
                let verdict = is_crossing(a, b).unwrap();
                assert_eq!(verdict, is_crossing(b, a).unwrap());
                let readings = [
                    (a.mask(), b.mask()),
                    (full & !a.mask(), b.mask()),
                    (a.mask(), full & !b.mask()),
                    (full & !a.mask(), full & !b.mask()),
                ];
                for (s, t) in readings {
                    assert_eq!(
                        literal_vanishing_condition(n_us, s, t),
                        verdict,
                        "{:?} {:?}",
                        a.rep(),
                        b.rep()
                    );
                }
            }
        }
    }
}

#[test]
fn relations_and_crossing_products_vanish() {
    for n in 5..=6u32 {
        let ring = KeelRing::new(&set(n)).unwrap();
        let labels: Vec<u32> = (1..=n).collect();
        let piece1 = ring.graded_piece(1).unwrap();
        for &i in &labels {
            for &j in &labels {
                for &k in &labels {
                    for &l in &labels {
                        if [i, j, k, l].iter().collect::<std::collections::BTreeSet<_>>().len() == 4 {
                            let r = ring.four_point_relation(&i, &j, &k, &l).unwrap();
                            assert!(ring.normal_form_in(&piece1, &r).unwrap().is_zero());
                        }
                    }
                }
            }
        }
        let piece2 = ring.graded_piece(2).unwrap();
        let rel = ring.relation_set();
        assert!(!rel.vanishing_pairs.is_empty());
        for (a, b) in &rel.vanishing_pairs {
            let prod = KeelElement::generator(*a).mul(&KeelElement::generator(*b));
            assert!(ring.normal_form_in(&piece2, &prod).unwrap().is_zero());
        }
    }
}

#[test]
fn poincare_duality_of_dimensions() {
    for n in 4..=6 {
        let d = KeelRing::new(&set(n)).unwrap().graded_dimensions();
        let mut r = d.clone();
        r.reverse();
        assert_eq!(d, r);
    }
}

fn random_element(ring: &KeelRing<u32>, degree: usize, picks: &[(usize, usize, i64)]) -> KeelElement {
    let classes = ring.classes();
    let terms = picks.iter().map(|&(a, b, c)| {
        let m = match degree {
            1 => vec![classes[a % classes.len()]],
            _ => vec![classes[a % classes.len()], classes[b % classes.len()]],
        };
        (m, Rational::from_integer(c.into()))
    });
    KeelElement::from_terms(degree, terms).unwrap()
}

proptest! {
    #[test]
    fn normal_form_is_linear_and_idempotent(
        degree in 1usize..=2,
        xs in prop::collection::vec((0usize..10, 0usize..10, -5i64..=5), 1..6),
        ys in prop::collection::vec((0usize..10, 0usize..10, -5i64..=5), 1..6),
        c in -3i64..=3,
    ) {
        let ring = KeelRing::new(&set(5)).unwrap();
        let x = random_element(&ring, degree, &xs);
        let y = random_element(&ring, degree, &ys);
        let nx = ring.normal_form(&x).unwrap();
        prop_assert_eq!(&ring.normal_form(&nx).unwrap(), &nx);
        let c = Rational::from_integer(c.into());
        let lhs = ring.normal_form(&x.scale(&c).add(&y).unwrap()).unwrap();
        let rhs = nx.scale(&c).add(&ring.normal_form(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

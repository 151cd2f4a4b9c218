//! Kazhdan-Lusztig polynomials against the independent oracle.

mod common;

use common::{compare_all, distinguished, Oracle};
use grex::exact::LaurentPoly;
use grex::kl::{CoxeterElement, CoxeterGroup, KlTable};

#[test]
fn oracle_agrees_on_s3() {
    let g = CoxeterGroup::finite('A', 2).unwrap();
    assert_eq!(compare_all(&g, &g.elements().unwrap()), 36);
}

#[test]
fn oracle_agrees_on_s4() {
    let g = CoxeterGroup::finite('A', 3).unwrap();
    assert_eq!(compare_all(&g, &g.elements().unwrap()), 576);
}

#[test]
fn oracle_agrees_on_affine_a1_ball() {
    let g = CoxeterGroup::parse("~A1").unwrap();
    let ball = g.ball(8);
    assert_eq!(ball.len(), 17);
    assert_eq!(compare_all(&g, &ball), 17 * 17);
}

#[test]
fn oracle_agrees_on_b2_and_g2() {
    for (kind, order) in [('B', 8), ('G', 12)] {
        let g = CoxeterGroup::finite(kind, 2).unwrap();
        let els = g.elements().unwrap();
        assert_eq!(els.len(), order);
        compare_all(&g, &els);
    }
}

#[test]
fn oracle_confirms_one_plus_q() {
    let g = CoxeterGroup::finite('A', 3).unwrap();
    let (x, w) = (g.element("2").unwrap(), g.element("2132").unwrap());
    let els = g.elements().unwrap();
    let interval: Vec<CoxeterElement> = els.into_iter().filter(|y| g.bruhat_leq_subword(y, &w)).collect();
    let col = Oracle::new(&g).column(&w, &interval);
    assert_eq!(col[&x], LaurentPoly::from_coeffs(&[1, 1]));
}

#[test]
fn singular_polynomials_are_nonnegative_on_a3() {
    let g = CoxeterGroup::finite('A', 3).unwrap();
    let els = g.elements().unwrap();
    let mut table = KlTable::new(g.clone());
    let subsets: Vec<Vec<usize>> = vec![vec![0], vec![1], vec![2], vec![0, 2], vec![0, 1], vec![1, 2]];
    let mut instances = 0;
    for gens in subsets {
        let reps = distinguished(&g, &els, &gens);
        for y in &reps {
            for w in &reps {
                let p = table.parabolic_sing(y, w, &gens).unwrap();
                assert!(p.has_nonnegative_coeffs());
                instances += 1;
            }
        }
    }
    assert!(instances > 100);
}

#[test]
fn singular_polynomials_are_nonnegative_on_affine_a2() {
    let g = CoxeterGroup::parse("~A2").unwrap();
    let ball = g.ball(5);
    let mut table = KlTable::new(g.clone());
    for gens in [vec![0], vec![1], vec![1, 2]] {
        let reps = distinguished(&g, &ball, &gens);
        for y in &reps {
            for w in &reps {
                assert!(table.parabolic_sing(y, w, &gens).unwrap().has_nonnegative_coeffs());
            }
        }
    }
}

#[test]
fn empty_parabolic_recovers_plain_polynomials() {
    let g = CoxeterGroup::finite('A', 3).unwrap();
    let els = g.elements().unwrap();
    let mut table = KlTable::new(g.clone());
    for x in &els {
        for w in &els {
            let p = table.p(x, w).unwrap();
            assert_eq!(table.parabolic_sing(x, w, &[]).unwrap(), p.substitute_power(2));
        }
    }
}

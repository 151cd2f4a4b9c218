//! Invariants checked over randomly drawn inputs.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_traits::One;
use proptest::prelude::*;

use grex::corpus::{presentations, CorpusConfig};
use grex::exact::{rational, ExactMatrix, Field, LaurentPoly};
use grex::gradalg::{build_algebra, GradedAlgebra, QuiverSpec};
use grex::homolog::{graded_ext, loewy_length, minimal_resolution, radical_series, socle_series, ungraded_ext, GradedModule};
use grex::kl::{CoxeterGroup, KlTable};
use grex::qha::{bgg_reciprocity, cartan_from_decomposition, certify_qha, decomposition_matrix, QhaVerdict, StandardSystem, WeightPoset};
use grex::specfile::AlgebraDoc;
use grex::symgrp::{
    all_perms, hom_dim, perm_length, perm_reduced_word, permutation_module, q_perm_hom, specht_module, HeckeAlgebra, Partition,
    QPermutationModule,
};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn small_presentations() -> &'static [QuiverSpec] {
    static CELL: OnceLock<Vec<QuiverSpec>> = OnceLock::new();
    CELL.get_or_init(|| {
        let cfg = CorpusConfig { max_vertices: 2, max_arrows: 3, ..CorpusConfig::default() };
        presentations(&cfg).expect("corpus presentations")
    })
}

fn small_algebra() -> impl Strategy<Value = Arc<GradedAlgebra>> {
    let n = small_presentations().len();
    (0..n).prop_filter_map("infinite or oversized", |i| build_algebra(&small_presentations()[i]).ok().filter(|a| a.dim() <= 16).map(Arc::new))
}

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::prime(2).unwrap()), Just(Field::prime(3).unwrap()), Just(Field::prime(7).unwrap())]
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -3i64..=3), 0..6).prop_map(LaurentPoly::from_terms)
}

fn naive_product(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; (a.len() + b.len()).saturating_sub(1)];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn total_orders(a: &GradedAlgebra) -> Vec<WeightPoset> {
    all_perms(a.num_vertices())
        .into_iter()
        .map(|p| {
            let covers: Vec<(usize, usize)> = p.windows(2).map(|w| (w[0] as usize, w[1] as usize)).collect();
            WeightPoset::from_covers(a.vertices.clone(), &covers).unwrap()
        })
        .collect()
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn rank_plus_nullity(f in field(), rows in 1usize..6, cols in 1usize..6, seed in int_matrix(6, 6)) {
        let cut: Vec<Vec<i64>> = seed[..rows].iter().map(|r| r[..cols].to_vec()).collect();
        let m = ExactMatrix::from_int_rows(f, &cut);
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(f.is_zero_vec(&m.apply(v)));
        }
    }

    #[test]
    fn row_reduction_is_idempotent(f in field(), seed in int_matrix(4, 5)) {
        let (r, pivots) = ExactMatrix::from_int_rows(f, &seed).rref();
        let (rr, pivots2) = r.rref();
        prop_assert_eq!(rr, r);
        prop_assert_eq!(pivots2, pivots);
    }

    #[test]
    fn matrix_product_is_associative(f in field(), a in int_matrix(3, 4), b in int_matrix(4, 2), c in int_matrix(2, 5)) {
        let (a, b, c) = (ExactMatrix::from_int_rows(f, &a), ExactMatrix::from_int_rows(f, &b), ExactMatrix::from_int_rows(f, &c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn laurent_product_matches_convolution(a in prop::collection::vec(-5i64..=5, 0..6), b in prop::collection::vec(-5i64..=5, 0..6)) {
        let got = &LaurentPoly::from_coeffs(&a) * &LaurentPoly::from_coeffs(&b);
        prop_assert_eq!(got, LaurentPoly::from_coeffs(&naive_product(&a, &b)));
    }

    #[test]
    fn bar_is_a_ring_involution(a in laurent(), b in laurent()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
    }

    #[test]
    fn laurent_evaluation_is_a_homomorphism(a in laurent(), b in laurent(), x in prop_oneof![Just(-1i64), Just(2), Just(3)]) {
        let x = rational(x, 1);
        let ab = (&a * &b).eval(&x).unwrap();
        prop_assert_eq!(ab, a.eval(&x).unwrap() * b.eval(&x).unwrap());
    }

    #[test]
    fn partition_dual_is_an_involution(mut parts in prop::collection::vec(1usize..6, 1..6)) {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let p = Partition::new(parts).unwrap();
        prop_assert_eq!(p.dual().dual(), p.clone());
        prop_assert_eq!(p.dual().size(), p.size());
    }

    #[test]
    fn inversion_count_is_coxeter_length(w in Just(5usize).prop_flat_map(|n| Just((0..n as u8).collect::<Vec<_>>()).prop_shuffle())) {
        let g = CoxeterGroup::finite('A', 4).unwrap();
        let el = g.element_from_indices(&perm_reduced_word(&w)).unwrap();
        prop_assert_eq!(el.length(), perm_length(&w));
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn builder_structure(a in small_algebra()) {
        prop_assert_eq!(a.cartan_matrix().iter().flatten().sum::<usize>(), a.dim());
        prop_assert_eq!(a.graded_dims().iter().sum::<usize>(), a.dim());
        let f = a.field;
        let n = a.dim();
        let unit: Vec<_> = (0..n).map(|i| f.unit_vector(n, i)).collect();
        let mut one = f.zeros(n);
        for &e in &a.idempotents {
            f.add_scaled(&mut one, &f.one(), &unit[e]);
        }
        for i in 0..n {
            prop_assert_eq!(a.mul_dense(&one, &unit[i]), unit[i].clone());
            for j in 0..n {
                for (k, c) in a.product(i, j) {
                    prop_assert!(!f.is_zero(c));
                    prop_assert_eq!(a.basis[*k].grade, a.basis[i].grade + a.basis[j].grade);
                }
                let ij = a.mul_dense(&unit[i], &unit[j]);
                for k in 0..n {
                    prop_assert_eq!(a.mul_dense(&ij, &unit[k]), a.mul_dense(&unit[i], &a.mul_dense(&unit[j], &unit[k])));
                }
            }
        }
    }

    #[test]
    fn opposite_and_tensor_dimensions(a in small_algebra(), b in small_algebra()) {
        let op = a.opposite();
        prop_assert_eq!(op.graded_dims(), a.graded_dims());
        prop_assert_eq!(op.opposite().graded_dims(), a.graded_dims());
        let ct: Vec<Vec<usize>> = (0..a.num_vertices()).map(|l| (0..a.num_vertices()).map(|m| a.cartan_matrix()[m][l]).collect()).collect();
        prop_assert_eq!(op.cartan_matrix(), ct);
        prop_assert_eq!(op.grade_zero().0.dim(), a.grade_zero().0.dim());
        if a.field == b.field && a.dim() * b.dim() <= 64 {
            let t = a.tensor_product(&b).unwrap();
            prop_assert_eq!(t.dim(), a.dim() * b.dim());
            prop_assert_eq!(t.grade_zero().0.dim(), a.grade_zero().0.dim() * b.grade_zero().0.dim());
        }
    }

    #[test]
    fn spec_file_round_trip(i in 0..small_presentations().len()) {
        let spec = &small_presentations()[i];
        let doc = AlgebraDoc::from_quiver(spec, None);
        let text = doc.to_text().unwrap();
        let back = AlgebraDoc::parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_text().unwrap(), text);
        prop_assert_eq!(&back.quiver().unwrap(), spec);
    }

    #[test]
    fn simple_resolutions_are_minimal_and_exact(a in small_algebra()) {
        for v in 0..a.num_vertices() {
            let l = GradedModule::simple(a.clone(), v, 0);
            let res = minimal_resolution(&l, 3);
            prop_assert!(res.verify(&l).is_ok(), "{:?}", res.verify(&l));
        }
    }

    #[test]
    fn first_ext_between_simples_is_the_second_radical_layer(a in small_algebra()) {
        for v in 0..a.num_vertices() {
            let p = GradedModule::projective(a.clone(), v, 0);
            let layers = radical_series(&p);
            let second = layers.get(1).cloned().unwrap_or_default();
            for u in 0..a.num_vertices() {
                let t = graded_ext(&GradedModule::simple(a.clone(), v, 0), &GradedModule::simple(a.clone(), u, 0), 1);
                let got: BTreeMap<i32, usize> = t.entries().into_iter().filter(|e| e.0 == 1).map(|(_, r, d)| (r, d)).collect();
                let want: BTreeMap<i32, usize> = second.iter().filter(|((w, _), _)| *w == u).map(|((_, r), d)| (*r, *d)).collect();
                prop_assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn radical_and_socle_lengths_agree(a in small_algebra()) {
        for v in 0..a.num_vertices() {
            let p = GradedModule::projective(a.clone(), v, 0);
            prop_assert_eq!(radical_series(&p).len(), socle_series(&p).len());
            prop_assert_eq!(radical_series(&p).len(), loewy_length(&p));
        }
    }

    #[test]
    fn graded_ext_sums_to_ungraded(a in small_algebra()) {
        for v in 0..a.num_vertices() {
            for u in 0..a.num_vertices() {
                let (m, n) = (GradedModule::simple(a.clone(), v, 0), GradedModule::simple(a.clone(), u, 0));
                let graded = graded_ext(&m, &n, 2);
                let mut sums = vec![0; 3];
                for (k, _, d) in graded.entries() {
                    sums[k] += d;
                }
                prop_assert_eq!(ungraded_ext(&m, &n, 2), sums);
            }
        }
    }

    #[test]
    fn certified_systems_satisfy_reciprocity_and_orthogonality(a in small_algebra()) {
        for poset in total_orders(&a) {
            let sys = StandardSystem::new(a.clone(), poset).unwrap();
            let QhaVerdict::Certified(cert) = certify_qha(&sys) else { continue };
            prop_assert!(bgg_reciprocity(&sys, &cert).is_ok());
            let d = decomposition_matrix(&sys);
            let n = sys.len();
            let nabla: Vec<Vec<usize>> = sys.nabla.iter().map(|m| m.vertex_multiplicities()).collect();
            let c: Vec<Vec<usize>> = (0..n).map(|l| (0..n).map(|m| (0..n).map(|v| nabla[v][l] * d[v][m]).sum()).collect()).collect();
            prop_assert_eq!(&c, &a.cartan_matrix());
            if nabla == d {
                prop_assert_eq!(cartan_from_decomposition(&d), c);
            }
            for l in 0..sys.len() {
                for m in 0..sys.len() {
                    let t = graded_ext(&sys.delta[l], &sys.nabla[m], 2);
                    prop_assert_eq!(t.ungraded[0], usize::from(l == m));
                    prop_assert_eq!(t.ungraded[1..].iter().sum::<usize>(), 0);
                }
            }
        }
    }
}

fn finite_groups() -> Vec<CoxeterGroup> {
    vec![CoxeterGroup::finite('A', 3).unwrap(), CoxeterGroup::finite('B', 3).unwrap(), CoxeterGroup::finite('G', 2).unwrap()]
}

proptest! {
    #![proptest_config(config(96))]

    #[test]
    fn coxeter_length_changes_by_one(gi in 0usize..3, i in any::<prop::sample::Index>(), s in 0usize..3) {
        let g = &finite_groups()[gi];
        let els = g.elements().unwrap();
        let x = &els[i.index(els.len())];
        let s = s % g.rank();
        let xs = g.mul_gen(x, s);
        prop_assert_eq!(xs.length().abs_diff(x.length()), 1);
        prop_assert_eq!(g.is_right_descent(x, s), xs.length() < x.length());
    }

    #[test]
    fn bruhat_order_by_lifting_matches_subwords(gi in 0usize..3, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let g = &finite_groups()[gi];
        let els = g.elements().unwrap();
        let (x, y) = (&els[i.index(els.len())], &els[j.index(els.len())]);
        prop_assert_eq!(g.bruhat_leq(x, y), g.bruhat_leq_subword(x, y));
    }

    #[test]
    fn kl_polynomial_shape(gi in 0usize..3, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let g = finite_groups().swap_remove(gi);
        let els = g.elements().unwrap();
        let (x, y) = (els[i.index(els.len())].clone(), els[j.index(els.len())].clone());
        let mut table = KlTable::new(g.clone());
        let p = table.p(&x, &y).unwrap();
        if !g.bruhat_leq(&x, &y) {
            prop_assert!(p.is_zero());
        } else if x == y {
            prop_assert_eq!(p, LaurentPoly::one());
        } else {
            let d = (y.length() - x.length()) as i64;
            prop_assert_eq!(p.coeff(0), 1);
            prop_assert!(2 * p.max_exp().unwrap() < d);
            prop_assert!(p.has_nonnegative_coeffs());
            if d <= 2 {
                prop_assert_eq!(p, LaurentPoly::one());
            }
        }
    }
}

#[test]
fn specht_dimensions_follow_the_hook_formula() {
    let f = Field::prime(3).unwrap();
    for n in 1..=7 {
        for shape in Partition::all(n) {
            let s = specht_module(&shape, f).unwrap();
            assert_eq!(s.dim as u128, shape.hook_dimension(), "shape {shape}");
            assert!(s.satisfies_relations());
        }
    }
}

#[test]
fn hecke_relations_up_to_five_strands() {
    for n in 1..=5 {
        assert!(HeckeAlgebra::at_minus_one(n).unwrap().check_relations());
        let generic = HeckeAlgebra::new(n, rational(3, 1)).unwrap();
        assert!(generic.check_relations());
        assert_eq!(generic.dim(), (1..=n).product::<usize>());
    }
}

#[test]
fn q_permutation_modules_degenerate_at_one() {
    let h = HeckeAlgebra::new(4, num_rational::BigRational::one()).unwrap();
    let compositions: [&[usize]; 4] = [&[4], &[3, 1], &[2, 2], &[2, 1, 1]];
    for lam in compositions {
        let q = QPermutationModule::new(&h, lam).unwrap();
        let (classical, _) = permutation_module(lam, Field::Rational);
        assert_eq!(q.dim(), classical.dim);
        for mu in compositions {
            let q2 = QPermutationModule::new(&h, mu).unwrap();
            let (classical2, _) = permutation_module(mu, Field::Rational);
            assert_eq!(q_perm_hom(&q, &q2).len(), hom_dim(&classical, &classical2), "{lam:?} → {mu:?}");
        }
    }
}

#[test]
fn permutation_modules_are_self_dual() {
    for lam in [&[3usize, 2][..], &[2, 2, 1], &[4, 1]] {
        for p in [2, 3, 5] {
            let (m, _) = permutation_module(lam, Field::prime(p).unwrap());
            let form = ExactMatrix::identity(m.field, m.dim);
            assert_eq!(form.rank(), m.dim);
            assert!(m.is_invariant_form(&form));
        }
    }
}

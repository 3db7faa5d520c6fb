//! Algebraic invariants checked on random inputs.

use artinian::apolarity::{apolar_algebra, diff_closure, hilbert_function, inverse_system_of, InverseSystem};
use artinian::commuting::{hilb_tangent_dim, tangent_space_dim, CommutingTuple};
use artinian::exactalg::{int, Matrix, Scalar, Subspace};
use artinian::ideals::FiniteIdeal;
use artinian::poly::{
    contract, essential_variable_count, monomials_of_degree, DualPolynomial, Monomial, OperatorPolynomial, Polynomial,
    Role,
};
use artinian::raydeg::CoordinateChange;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    Matrix::from_fn(rows, cols, |i, j| int(entries[i * cols + j]))
}

fn square(d: usize, bound: i64) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-bound..=bound, d * d).prop_map(move |e| matrix(d, d, &e))
}

fn invertible(d: usize) -> impl Strategy<Value = (Matrix, Matrix)> {
    square(d, 2).prop_filter_map("singular", |p| p.inverse().map(|q| (p, q)))
}

fn vectors(count: usize, len: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, len), 0..=count)
        .prop_map(|vs| vs.into_iter().map(|v| v.into_iter().map(int).collect()).collect())
}

/// A polynomial with `coeffs` on the monomials of degree `lo..=hi`.
fn poly<R: Role>(n: usize, lo: u32, hi: u32, coeffs: &[i64]) -> Polynomial<R> {
    let monos: Vec<Monomial> = (lo..=hi).flat_map(|k| monomials_of_degree(n, k)).collect();
    Polynomial::from_terms(n, monos.into_iter().zip(coeffs.iter().cycle()).map(|(m, &c)| (m, int(c))))
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -2i64..=2], 1..=12)
}

/// A nonzero homogeneous inverse system in `n` variables.
fn homogeneous_system(n: usize, max_degree: u32) -> impl Strategy<Value = InverseSystem> {
    prop::collection::vec((1..=max_degree, coeffs()), 1..=2).prop_filter_map("zero system", move |gs| {
        let gens: Vec<DualPolynomial> =
            gs.iter().map(|(k, c)| poly(n, *k, *k, c)).filter(|f: &DualPolynomial| !f.is_zero()).collect();
        if gens.is_empty() {
            None
        } else {
            InverseSystem::new(n, gens).ok()
        }
    })
}

fn local_ideal(e: &InverseSystem) -> FiniteIdeal {
    FiniteIdeal::from_algebra(apolar_algebra(e).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn modular_law(a in vectors(3, 5), b in vectors(3, 5), extra in vectors(2, 5)) {
        let a = Subspace::from_vectors(5, a);
        let b = Subspace::from_vectors(5, b);
        let c = a.sum(&Subspace::from_vectors(5, extra)).unwrap();
        let left = a.sum(&b).unwrap().intersect(&c).unwrap();
        let right = a.sum(&b.intersect(&c).unwrap()).unwrap();
        prop_assert!(left.is_subspace_of(&right).unwrap());
        prop_assert!(right.is_subspace_of(&left).unwrap());
    }

    #[test]
    fn cayley_hamilton(m in (1usize..=5).prop_flat_map(|d| square(d, 3))) {
        let chi = m.char_poly().unwrap();
        prop_assert_eq!(chi.degree(), Some(m.rows()));
        prop_assert!(m.eval_poly(&chi).unwrap().is_zero());
    }

    #[test]
    fn contraction_is_a_module_action(a in coeffs(), b in coeffs(), f in coeffs()) {
        let a: OperatorPolynomial = poly(3, 0, 2, &a);
        let b: OperatorPolynomial = poly(3, 0, 2, &b);
        let f: DualPolynomial = poly(3, 0, 4, &f);
        let ab = a.checked_mul(&b).unwrap();
        let lhs = contract(&ab, &f).unwrap();
        let rhs = contract(&a, &contract(&b, &f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn essential_variables_are_coordinate_free(k in 2u32..=3, c in coeffs(), (p, _) in invertible(3)) {
        let f: DualPolynomial = poly(3, k, k, &c);
        prop_assume!(!f.is_zero());
        let g = CoordinateChange::new(p).unwrap().apply_dual(&f).unwrap();
        prop_assert_eq!(essential_variable_count(&f).unwrap(), essential_variable_count(&g).unwrap());
    }

    #[test]
    fn duality_round_trip(e in (1usize..=3).prop_flat_map(|n| homogeneous_system(n, 3))) {
        let alg = apolar_algebra(&e).unwrap();
        let back = InverseSystem::new(e.nvars(), inverse_system_of(&alg, e.max_degree())).unwrap();
        prop_assert_eq!(diff_closure(&back).dim(), diff_closure(&e).dim());
        prop_assert!(diff_closure(&e).basis().iter().all(|f| diff_closure(&back).contains(f)));
        prop_assert!(local_ideal(&back).equals(&FiniteIdeal::from_algebra(alg)).unwrap());
    }

    #[test]
    fn translation_round_trip(e in homogeneous_system(2, 3), p in prop::collection::vec(-3i64..=3, 2)) {
        let i = local_ideal(&e);
        let p: Vec<Scalar> = p.into_iter().map(int).collect();
        let q: Vec<Scalar> = p.iter().map(|x| -x.clone()).collect();
        let moved = i.translate(&p).unwrap();
        prop_assert_eq!(moved.colength(), i.colength());
        prop_assert!(moved.translate(&q).unwrap().equals(&i).unwrap());
    }

    #[test]
    fn colength_is_additive_over_disjoint_supports(
        e in homogeneous_system(2, 3),
        f in homogeneous_system(2, 3),
        p in prop::collection::vec(-3i64..=3, 2),
    ) {
        prop_assume!(p.iter().any(|&x| x != 0));
        let p: Vec<Scalar> = p.into_iter().map(int).collect();
        let i = local_ideal(&e);
        let j = local_ideal(&f).translate(&p).unwrap();
        prop_assert_eq!(i.intersect(&j).unwrap().colength(), i.colength() + j.colength());
    }

    #[test]
    fn initial_ideals_preserve_colength(
        c in coeffs(),
        w in prop::collection::vec(1i64..=3, 3),
    ) {
        let f: DualPolynomial = poly(3, 1, 3, &c);
        prop_assume!(!f.is_zero());
        let i = local_ideal(&InverseSystem::new(3, vec![f]).unwrap());
        let neg: Vec<i64> = w.iter().map(|x| -x).collect();
        prop_assert_eq!(i.initial_ideal(&w).unwrap().colength(), i.colength());
        let low = i.initial_ideal(&neg).unwrap();
        prop_assert_eq!(low.colength(), i.colength());
        if w.iter().all(|&x| x == 1) {
            prop_assert_eq!(low.local_hilbert_function().unwrap(), i.local_hilbert_function().unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn invariants_are_stable_under_conjugation(
        (e, noise) in homogeneous_system(2, 2).prop_flat_map(|e| {
            let d = hilbert_function(&e).total();
            (Just(e), square(d, 1))
        }),
    ) {
        let alg = apolar_algebra(&e).unwrap();
        let t = alg.tuple().unwrap().clone();
        let p = Matrix::identity(t.d()).checked_add(&noise).unwrap();
        prop_assume!(p.inverse().is_some());
        let q = p.inverse().unwrap();
        let s = t.conjugate(&p, &q).unwrap();
        prop_assert_eq!(s.kernel_profile().unwrap(), t.kernel_profile().unwrap());
        prop_assert_eq!(s.kernel_profile().unwrap(), hilbert_function(&e));
        prop_assert_eq!(s.socle_dim(), t.socle_dim());
        prop_assert_eq!(tangent_space_dim(&s, None).unwrap(), tangent_space_dim(&t, None).unwrap());
        prop_assert_eq!(hilb_tangent_dim(&s).unwrap(), hilb_tangent_dim(&t).unwrap());
    }

    #[test]
    fn distinct_points_are_smooth(
        n in 1usize..=3,
        points in prop::collection::btree_set(prop::collection::vec(-4i64..=4, 3), 1..=5),
    ) {
        let points: Vec<Vec<i64>> = points.into_iter().map(|p| p[..n].to_vec()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        let d = points.len();
        let mats: Vec<Matrix> =
            (0..n).map(|i| Matrix::from_fn(d, d, |r, c| if r == c { int(points[r][i]) } else { int(0) })).collect();
        let t = CommutingTuple::new(mats).unwrap();
        prop_assert_eq!(hilb_tangent_dim(&t).unwrap(), n * d);
    }
}

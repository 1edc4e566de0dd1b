use std::sync::Arc;

use proptest::prelude::*;

use gcat_duality::exactlin::{mat_inverse, mat_mul, Mat, RingSpec, Scalar};
use gcat_duality::fixtures;
use gcat_duality::gcat::{
    compose_equivariant, equiv_horizontal, equiv_vertical, validate_action,
    validate_equiv_morphism, validate_equivariant, EquivFunctor, FinGroup,
};
use gcat_duality::graded::{validate_grading, GradedCat};
use gcat_duality::lincat::{
    nt_equal, nt_horizontal, nt_vertical, LinCat, LinCatBuilder, LinFunctor, NatTrans,
};
use gcat_duality::orbit::orbit_category;
use gcat_duality::twofun::{
    slash_on_2cell, slash_on_functor, verify_main_theorem, FixtureSuite, GContext,
};

const Q: RingSpec = RingSpec::Rationals;
const F5: RingSpec = RingSpec::PrimeField(5);

fn ring() -> impl Strategy<Value = RingSpec> {
    prop_oneof![Just(Q), Just(F5)]
}

fn scalar(ring: RingSpec) -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(move |(n, d)| match ring {
        RingSpec::Rationals => Scalar::from_ratio(ring, n, d).unwrap(),
        _ => Scalar::from_i64(ring, n),
    })
}

fn matrix(ring: RingSpec, rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(scalar(ring), rows * cols)
        .prop_map(move |v| Mat::from_entries(ring, rows, cols, v).unwrap())
}

fn square(max: usize) -> impl Strategy<Value = Mat> {
    (ring(), 1..=max).prop_flat_map(|(r, n)| matrix(r, n, n))
}

/// `x0 -> x1 -> ... -> x(n-1) -> x0` with every path of length two zero.
fn cyclic_quiver(ring: RingSpec, n: usize) -> LinCat {
    let mut b = LinCatBuilder::new(ring);
    for k in 0..n {
        b.object(format!("x{k}"));
    }
    let one = Scalar::one(ring);
    if n == 1 {
        b.hom(0, 0, &["id", "a0"]);
        b.identity(0, vec![one.clone(), Scalar::zero(ring)]);
        b.compose_basis((0, 0, 0), 0, 0, 0);
        b.compose_basis((0, 0, 0), 0, 1, 1);
        b.compose_basis((0, 0, 0), 1, 0, 1);
        return b.build().unwrap();
    }
    for k in 0..n {
        let next = (k + 1) % n;
        b.hom(k, k, &[format!("id{k}")])
            .hom(k, next, &[format!("a{k}")]);
        b.identity(k, vec![one.clone()]);
        b.compose_basis((k, k, k), 0, 0, 0);
        b.compose_basis((k, k, next), 0, 0, 0);
        b.compose_basis((k, next, next), 0, 0, 0);
    }
    b.build().unwrap()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `C_m` rotating an `n`-cycle quiver by `r` steps per generator.
fn rotation() -> impl Strategy<Value = (usize, usize, usize)> {
    (1usize..=4, 0usize..4, 1usize..=2).prop_filter_map("m too large", |(n, r, t)| {
        let r = r % n;
        let order = n / gcd(n, r);
        let m = order * t;
        (m <= 6).then_some((n, r, m))
    })
}

fn rotation_gcat(ring: RingSpec, n: usize, r: usize, m: usize) -> Arc<gcat_duality::GCategory> {
    Arc::new(fixtures::permutation_action(
        Arc::new(cyclic_quiver(ring, n)),
        Arc::new(FinGroup::cyclic(m)),
        move |a, x| (x + a * r) % n,
    ))
}

fn graded_quiver() -> impl Strategy<Value = (usize, usize, Vec<usize>)> {
    (1usize..=3, 1usize..=3)
        .prop_flat_map(|(n, m)| (Just(n), Just(m), prop::collection::vec(0..m, n)))
}

fn graded_quiver_cat(ring: RingSpec, n: usize, m: usize, arrow_deg: &[usize]) -> Arc<GradedCat> {
    let base = Arc::new(cyclic_quiver(ring, n));
    let mut deg = vec![Vec::new(); n * n];
    for k in 0..n {
        let next = (k + 1) % n;
        if n == 1 {
            deg[0] = vec![0, arrow_deg[0]];
        } else {
            deg[k * n + k] = vec![0];
            deg[k * n + next] = vec![arrow_deg[k]];
        }
    }
    Arc::new(GradedCat::new(base, Arc::new(FinGroup::cyclic(m)), deg).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn inverse_is_two_sided(a in square(8)) {
        match mat_inverse(&a) {
            Ok(inv) => {
                let n = a.rows();
                prop_assert!(mat_mul(&a, &inv).unwrap().is_identity());
                prop_assert!(mat_mul(&inv, &a).unwrap().is_identity());
                prop_assert_eq!(a.rank(), n);
            }
            Err(_) => prop_assert!(a.rank() < a.rows()),
        }
    }

    #[test]
    fn unitriangular_products_are_invertible(
        (r, n) in (ring(), 1usize..=8),
        seed in prop::collection::vec(-3i64..=3, 64),
    ) {
        let mut l = Mat::identity(r, n);
        let mut u = Mat::identity(r, n);
        for i in 0..n {
            for j in 0..n {
                let v = Scalar::from_i64(r, seed[i * 8 + j]);
                if i > j { l.set(i, j, v) } else if i < j { u.set(i, j, v) }
            }
        }
        let a = mat_mul(&l, &u).unwrap();
        let inv = mat_inverse(&a).unwrap();
        prop_assert!(mat_mul(&a, &inv).unwrap().is_identity());
    }

    #[test]
    fn multiplication_is_associative(
        (a, b, c) in (ring(), 1usize..=4, 1usize..=4, 1usize..=4, 1usize..=4)
            .prop_flat_map(|(r, p, q, s, t)| (matrix(r, p, q), matrix(r, q, s), matrix(r, s, t)))
    ) {
        let left = mat_mul(&mat_mul(&a, &b).unwrap(), &c).unwrap();
        let right = mat_mul(&a, &mat_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn scalars_print_and_parse(s in ring().prop_flat_map(scalar)) {
        prop_assert_eq!(Scalar::parse(s.ring(), &s.to_string()).unwrap(), s);
    }

    // (b' b) * (a' a) = (b' * a') (b * a) with a, a': id -> id and
    // b, b': sign -> sign on kC2
    #[test]
    fn interchange_law(coeffs in prop::collection::vec(-4i64..=4, 8)) {
        let f = fixtures::sign_functor(Q);
        let c = f.dom().clone();
        let id = LinFunctor::identity(&c);
        let elem = |k: usize| {
            c.morphism(0, 0, vec![Scalar::from_i64(Q, coeffs[k]), Scalar::from_i64(Q, coeffs[k + 1])]).unwrap()
        };
        let a = NatTrans::new(id.clone(), id.clone(), vec![elem(0)]).unwrap();
        let a2 = NatTrans::new(id.clone(), id.clone(), vec![elem(2)]).unwrap();
        let b = NatTrans::new(f.clone(), f.clone(), vec![elem(4)]).unwrap();
        let b2 = NatTrans::new(f.clone(), f.clone(), vec![elem(6)]).unwrap();
        let left = nt_horizontal(&nt_vertical(&b2, &b).unwrap(), &nt_vertical(&a2, &a).unwrap()).unwrap();
        let right = nt_vertical(&nt_horizontal(&b2, &a2).unwrap(), &nt_horizontal(&b, &a).unwrap()).unwrap();
        prop_assert!(nt_equal(&left, &right));
    }

    // composites of valid 1- and 2-cells over SW2 stay valid, and ?/G
    // preserves them
    #[test]
    fn equivariant_two_category_closure(
        word in prop::collection::vec(0usize..3, 1..4),
        scalars in prop::collection::vec(1i64..=5, 3),
    ) {
        let cells = [fixtures::sw2_nonstrict(Q), fixtures::sw2_swap(Q), EquivFunctor::identity(&Arc::new(fixtures::sw2(Q)))];
        let mut f = cells[word[0]].clone();
        for &k in &word[1..] {
            f = compose_equivariant(&cells[k], &f).unwrap();
        }
        prop_assert!(validate_equivariant(&f).passed());
        let s = |k: usize| Scalar::from_i64(Q, scalars[k]);
        let eta = fixtures::scalar_two_cell(&f, s(0));
        let eta2 = fixtures::scalar_two_cell(&f, s(1));
        let swap = fixtures::scalar_two_cell(&fixtures::sw2_swap(Q), s(2));
        let vert = equiv_vertical(&eta2, &eta).unwrap();
        let horiz = equiv_horizontal(&swap, &eta).unwrap();
        prop_assert!(validate_equiv_morphism(&vert).passed());
        prop_assert!(validate_equiv_morphism(&horiz).passed());

        let g = GContext::new(f.dom()).unwrap();
        let o = &g.orbit;
        let slashed = slash_on_functor(&horiz.src().clone(), o, o).unwrap();
        let parts = gcat_duality::graded::compose_deg_functors(
            &slash_on_functor(swap.src(), o, o).unwrap(),
            &slash_on_functor(eta.src(), o, o).unwrap(),
        ).unwrap();
        prop_assert_eq!(slashed, parts);
        let lhs = slash_on_2cell(&horiz, o, o).unwrap();
        let rhs = gcat_duality::graded::deg_horizontal(
            &slash_on_2cell(&swap, o, o).unwrap(),
            &slash_on_2cell(&eta, o, o).unwrap(),
        ).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn random_rotations_satisfy_the_unit_equations((n, r, m) in rotation(), ring in ring()) {
        let c = rotation_gcat(ring, n, r, m);
        prop_assert!(validate_action(&c).passed());
        let o = orbit_category(&c).unwrap();
        for x in 0..n {
            for y in 0..n {
                let want: usize = (0..m).map(|a| c.base().dim((x + a * r) % n, y)).sum();
                prop_assert_eq!(o.category().dim(x, y), want);
            }
        }
        let suite = FixtureSuite { gcats: vec![("C".into(), c)], ..FixtureSuite::default() };
        let report = verify_main_theorem(&suite).flatten();
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn random_gradings_satisfy_the_counit_equations((n, m, degs) in graded_quiver()) {
        let b = graded_quiver_cat(Q, n, m, &degs);
        prop_assert!(validate_grading(&b).passed());
        let suite = FixtureSuite { graded: vec![("B".into(), b)], ..FixtureSuite::default() };
        let report = verify_main_theorem(&suite).flatten();
        prop_assert!(report.passed(), "{}", report);
    }
}

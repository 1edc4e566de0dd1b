//! Small worked instances checked against hand computation.

use std::sync::Arc;

use gcat_duality::exactlin::{RingSpec, Scalar};
use gcat_duality::fixtures;
use gcat_duality::gcat::compose_equivariant;
use gcat_duality::lincat::{compose_functors, functor_equal, nt_equal, LinFunctor, Morphism};
use gcat_duality::orbit::{factorize_through_P, orbit_category, pstar};
use gcat_duality::twofun::{
    epsilon, hash_on_functor, phi_square, psi_square, slash_on_functor, BContext, GContext,
};

const Q: RingSpec = RingSpec::Rationals;

fn q(n: i64) -> Scalar {
    Scalar::from_i64(Q, n)
}

#[test]
fn orbit_of_trivial_c2_on_a_point_is_the_group_algebra() {
    let o = orbit_category(&Arc::new(fixtures::pt2(Q))).unwrap();
    let c = o.category();
    assert_eq!(c.dim(0, 0), 2);
    // psi_s * is the identity of * placed in block s
    let s = o.psi(1, 0);
    assert_eq!(s.coeffs, vec![q(0), q(1)]);
    assert_eq!(c.compose(&s, &s).unwrap(), c.identity(0));
    assert_eq!(o.carrier().degree_of(&s), Some(1));
}

#[test]
fn epsilon_sends_the_point_to_its_degree_one_copy() {
    let ctx = GContext::new(&Arc::new(fixtures::pt2(Q))).unwrap();
    let e = epsilon(&ctx).unwrap();
    assert_eq!(e.functor().obj(0), ctx.smash.object(0, 0));
    assert_eq!(ctx.smash.category().num_objects(), 2);
}

#[test]
fn sign_hash_negates_the_odd_generators() {
    let ctx = BContext::new(&Arc::new(fixtures::ga2(Q))).unwrap();
    let s = &ctx.smash;
    let h = hash_on_functor(&fixtures::ga2_sign(Q), s, s).unwrap();
    let (one, odd) = (s.object(0, 0), s.object(0, 1));
    let f = h.functor();
    assert_eq!(f.obj(one), one);
    assert_eq!(f.obj(odd), odd);
    // hom(*^(1), *^(s)) is spanned by us; so is hom(*^(s), *^(1))
    for (u, v) in [(one, odd), (odd, one)] {
        assert_eq!(s.category().dim(u, v), 1);
        let g = Morphism {
            src: u,
            tgt: v,
            coeffs: vec![q(1)],
        };
        assert_eq!(f.apply(&g).coeffs, vec![q(-1)]);
    }
    for u in [one, odd] {
        assert_eq!(f.apply(&s.category().identity(u)), s.category().identity(u));
    }
}

#[test]
fn swap_over_g_is_an_isomorphism() {
    let ctx = GContext::new(&Arc::new(fixtures::sw2(Q))).unwrap();
    let o = &ctx.orbit;
    let swap = fixtures::sw2_swap(Q);
    let slashed = slash_on_functor(&swap, o, o).unwrap();
    assert!(slashed.functor().is_fully_faithful());
    assert!(slashed.functor().is_object_surjective());
    // swap is an involution, and so is its image
    let twice = compose_functors(slashed.functor(), slashed.functor()).unwrap();
    assert!(functor_equal(&twice, &LinFunctor::identity(o.category())));
}

#[test]
fn psi_is_trivial_exactly_for_strict_functors() {
    let ctx = GContext::new(&Arc::new(fixtures::sw2(Q))).unwrap();
    let strict = psi_square(&fixtures::sw2_swap(Q), &ctx, &ctx).unwrap();
    assert!(strict.eta().is_identity());
    let lax = psi_square(&fixtures::sw2_nonstrict(Q), &ctx, &ctx).unwrap();
    assert!(!lax.eta().is_identity());
    // rho_s x0 = 2 id sits at x0^(s)
    let u = ctx.smash.object(0, 1);
    assert_eq!(lax.eta().component(u).coeffs, vec![q(2)]);
}

#[test]
fn phi_of_regrading_is_not_the_identity() {
    let (gr, flat, h) = fixtures::gr2_chain(Q);
    let (src, tgt) = (BContext::new(&gr).unwrap(), BContext::new(&flat).unwrap());
    let phi = phi_square(&h, &src, &tgt).unwrap();
    assert!(!phi.theta().is_identity());
    // r = (s, 1): the x0 component lies in block s, the x1 component is an identity
    let c0 = phi.theta().component(0);
    assert_eq!(tgt.orbit.carrier().degree_of(c0), Some(1));
    let c1 = phi.theta().component(1);
    assert_eq!(c1, &tgt.orbit.category().identity(c1.src));
}

#[test]
fn factorizing_then_pulling_back_recovers_the_invariant_functor() {
    let c = Arc::new(fixtures::sw2(Q));
    let o = orbit_category(&c).unwrap();
    let e = compose_equivariant(&fixtures::sw2_nonstrict(Q), &fixtures::sw2_swap(Q)).unwrap();
    let f = gcat_duality::ginv::compose_equiv_then_inv(o.p(), &e).unwrap();
    let h = factorize_through_P(&o, &f).unwrap();
    let back = pstar(&o, &h).unwrap();
    assert!(functor_equal(back.functor(), f.functor()));
    for a in 0..2 {
        assert!(nt_equal(back.phi(a), f.phi(a)));
    }
    let id = factorize_through_P(&o, o.p()).unwrap();
    assert!(functor_equal(&id, &LinFunctor::identity(o.category())));
}

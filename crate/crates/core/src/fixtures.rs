//! Small named instances used by tests, examples and the shipped bundles.
//!
//! | name | contents |
//! |------|----------|
//! | TG1  | a point with the trivial group |
//! | PT2  | a point with `C2` acting trivially |
//! | SW2  | two objects, identities only, `C2` swapping them |
//! | CY3  | `C3` rotating a 3-cycle quiver with radical square zero |
//! | GA2  | `kC2` as a one-object `C2`-graded category |
//! | GR2  | the `A2` quiver graded with its arrow in degree `s` |

use std::sync::Arc;

use crate::bundle::{Bundle, BundleWriter};
use crate::exactlin::{Mat, RingSpec, Scalar};
use crate::gcat::{trivial_gcategory, EquivFunctor, EquivMorphism, FinGroup, GCategory};
use crate::ginv::{DensityWitness, InvFunctor};
use crate::graded::{DegFunctor, DegMorphism, GradedCat};
use crate::lincat::{LinCat, LinCatBuilder, LinFunctor, Morphism, NatTrans};
use crate::smash::smash_product;
use crate::twofun::FixtureSuite;

fn one(ring: RingSpec) -> Scalar {
    Scalar::one(ring)
}

/// One object `*` with hom basis `{id}`.
pub fn point_category(ring: RingSpec) -> LinCat {
    let mut b = LinCatBuilder::new(ring);
    let x = b.object("*");
    b.hom(x, x, &["id"]).identity(x, vec![one(ring)]);
    b.compose_basis((x, x, x), 0, 0, 0);
    b.build().expect("point category")
}

/// `kC2` on one object, basis `u1, us` with `us us = u1`.
pub fn group_algebra_c2_category(ring: RingSpec) -> LinCat {
    let mut b = LinCatBuilder::new(ring);
    let x = b.object("*");
    b.hom(x, x, &["u1", "us"])
        .identity(x, vec![one(ring), Scalar::zero(ring)]);
    for (j, i, k) in [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)] {
        b.compose_basis((x, x, x), j, i, k);
    }
    b.build().expect("group algebra")
}

/// Discrete category on objects `x0, ..., x{n-1}`.
pub fn discrete_category(ring: RingSpec, n: usize) -> LinCat {
    let mut b = LinCatBuilder::new(ring);
    for k in 0..n {
        let x = b.object(format!("x{k}"));
        b.hom(x, x, &[format!("id_x{k}")])
            .identity(x, vec![one(ring)]);
        b.compose_basis((x, x, x), 0, 0, 0);
    }
    b.build().expect("discrete category")
}

/// Two objects with identities only.
pub fn swap_category(ring: RingSpec) -> LinCat {
    discrete_category(ring, 2)
}

/// Objects `1, 2` with one basis vector `e_ij` in each hom and
/// `e_jk e_ij = e_ik`.
pub fn matrix2_category(ring: RingSpec) -> LinCat {
    let mut b = LinCatBuilder::new(ring);
    let objs = [b.object("1"), b.object("2")];
    for &i in &objs {
        for &j in &objs {
            b.hom(i, j, &[format!("e{}{}", i + 1, j + 1)]);
        }
        b.identity(i, vec![one(ring)]);
    }
    for &i in &objs {
        for &j in &objs {
            for &k in &objs {
                b.compose_basis((i, j, k), 0, 0, 0);
            }
        }
    }
    b.build().expect("matrix category")
}

/// The quiver `x0 -> x1 -> x2 -> x0` with arrows `a0, a1, a2` and all
/// paths of length two set to zero.
pub fn cyclic_quiver_category(ring: RingSpec) -> LinCat {
    let mut b = LinCatBuilder::new(ring);
    for k in 0..3 {
        b.object(format!("x{k}"));
    }
    for k in 0..3 {
        let next = (k + 1) % 3;
        b.hom(k, k, &[format!("id_x{k}")])
            .identity(k, vec![one(ring)]);
        b.hom(k, next, &[format!("a{k}")]);
    }
    for k in 0..3 {
        let next = (k + 1) % 3;
        b.compose_basis((k, k, k), 0, 0, 0);
        b.compose_basis((k, k, next), 0, 0, 0);
        b.compose_basis((k, next, next), 0, 0, 0);
    }
    b.build().expect("cyclic quiver")
}

/// `x0 -> x1` with a single arrow `a`.
pub fn a2_category(ring: RingSpec) -> LinCat {
    let mut b = LinCatBuilder::new(ring);
    let (x, y) = (b.object("x0"), b.object("x1"));
    b.hom(x, x, &["id_x0"])
        .hom(y, y, &["id_x1"])
        .hom(x, y, &["a"]);
    b.identity(x, vec![one(ring)]).identity(y, vec![one(ring)]);
    b.compose_basis((x, x, x), 0, 0, 0);
    b.compose_basis((y, y, y), 0, 0, 0);
    b.compose_basis((x, x, y), 0, 0, 0);
    b.compose_basis((x, y, y), 0, 0, 0);
    b.build().expect("A2 quiver")
}

/// An action permuting objects by `perm(a, x)` and carrying basis vector
/// `i` of hom(x,y) to basis vector `i` of hom(ax, ay).
pub fn permutation_action(
    base: Arc<LinCat>,
    group: Arc<FinGroup>,
    perm: impl Fn(usize, usize) -> usize,
) -> GCategory {
    let n = base.num_objects();
    let ring = base.ring();
    let action = group
        .elements()
        .map(|a| {
            let obj_map: Vec<usize> = (0..n).map(|x| perm(a, x)).collect();
            LinFunctor::from_fn(base.clone(), base.clone(), obj_map, |x, y| {
                Mat::identity(ring, base.dim(x, y))
            })
            .expect("permutation action")
        })
        .collect();
    GCategory::new(base, group, action).expect("permutation action")
}

pub fn tg1(ring: RingSpec) -> GCategory {
    trivial_gcategory(
        Arc::new(point_category(ring)),
        Arc::new(FinGroup::trivial()),
    )
}

pub fn pt2(ring: RingSpec) -> GCategory {
    trivial_gcategory(
        Arc::new(point_category(ring)),
        Arc::new(FinGroup::cyclic(2)),
    )
}

pub fn sw2(ring: RingSpec) -> GCategory {
    permutation_action(
        Arc::new(swap_category(ring)),
        Arc::new(FinGroup::cyclic(2)),
        |a, x| (x + a) % 2,
    )
}

pub fn cy3(ring: RingSpec) -> GCategory {
    permutation_action(
        Arc::new(cyclic_quiver_category(ring)),
        Arc::new(FinGroup::cyclic(3)),
        |a, x| (x + a) % 3,
    )
}

/// `S3` permuting three objects with identity homs; the group is not
/// abelian, so order conventions show up here.
pub fn perm_s3(ring: RingSpec) -> GCategory {
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    permutation_action(
        Arc::new(discrete_category(ring, 3)),
        Arc::new(FinGroup::symmetric3()),
        move |a, x| perms[a][x],
    )
}

/// SW2 with the hom matrices of `A_s` doubled: not an action.
pub fn sw2_scaled_action(ring: RingSpec) -> GCategory {
    let base = Arc::new(swap_category(ring));
    let two = Scalar::from_i64(ring, 2);
    let action = (0..2)
        .map(|a| {
            LinFunctor::from_fn(base.clone(), base.clone(), vec![a, 1 - a], |x, y| {
                let m = Mat::identity(ring, base.dim(x, y));
                if a == 1 {
                    m.scale(&two)
                } else {
                    m
                }
            })
            .unwrap()
        })
        .collect();
    GCategory::new(base, Arc::new(FinGroup::cyclic(2)), action).unwrap()
}

/// `id` on SW2 with `rho_s` given by `2` at `x0` and `1/2` at `x1`.
pub fn sw2_nonstrict(ring: RingSpec) -> EquivFunctor {
    let c = Arc::new(sw2(ring));
    let base = c.base().clone();
    let two = Scalar::from_i64(ring, 2);
    let half = two.inv().expect("2 is invertible");
    // rho_s at x0 lives in hom(A_s x0, A_s x0) = hom(x1, x1)
    let comps = vec![
        vec![base.identity(0), base.identity(1)],
        vec![base.identity(1).scale(&two), base.identity(0).scale(&half)],
    ];
    EquivFunctor::from_components(c.clone(), c, LinFunctor::identity(&base), comps).unwrap()
}

/// `A_s` on SW2 as a strictly equivariant functor.
pub fn sw2_swap(ring: RingSpec) -> EquivFunctor {
    let c = Arc::new(sw2(ring));
    EquivFunctor::strict(c.clone(), c.clone(), c.functor(1).clone()).unwrap()
}

/// `c` times the identity 2-cell of `f`.
pub fn scalar_two_cell(f: &EquivFunctor, c: Scalar) -> EquivMorphism {
    let cod = f.cod().base();
    let comps = (0..f.dom().base().num_objects())
        .map(|x| cod.identity(f.functor().obj(x)).scale(&c))
        .collect();
    let eta = NatTrans::new(f.functor().clone(), f.functor().clone(), comps).unwrap();
    EquivMorphism::new(f.clone(), f.clone(), eta).unwrap()
}

/// GA2: `u1` in degree 1, `us` in degree `s`.
pub fn ga2(ring: RingSpec) -> GradedCat {
    let base = Arc::new(group_algebra_c2_category(ring));
    GradedCat::new(base, Arc::new(FinGroup::cyclic(2)), vec![vec![0, 1]]).unwrap()
}

/// One object with basis `u1, us` and `us us = u1 + us`, graded as GA2.
/// The composite `us us` is not homogeneous.
pub fn ga2_misgraded(ring: RingSpec) -> GradedCat {
    let mut b = LinCatBuilder::new(ring);
    let x = b.object("*");
    b.hom(x, x, &["u1", "us"])
        .identity(x, vec![one(ring), Scalar::zero(ring)]);
    b.compose_basis((x, x, x), 0, 0, 0)
        .compose_basis((x, x, x), 0, 1, 1)
        .compose_basis((x, x, x), 1, 0, 1)
        .compose((x, x, x), 1, 1, vec![one(ring), one(ring)]);
    let base = Arc::new(b.build().unwrap());
    GradedCat::new(base, Arc::new(FinGroup::cyclic(2)), vec![vec![0, 1]]).unwrap()
}

/// The automorphism of `kC2` fixing `u1` and negating `us`.
pub fn sign_functor(ring: RingSpec) -> LinFunctor {
    let c = Arc::new(group_algebra_c2_category(ring));
    LinFunctor::new(
        c.clone(),
        c,
        vec![0],
        vec![Mat::from_i64_rows(ring, &[&[1, 0], &[0, -1]])],
    )
    .unwrap()
}

/// The sign automorphism of GA2 as a strictly degree-preserving functor.
pub fn ga2_sign(ring: RingSpec) -> DegFunctor {
    let b = Arc::new(ga2(ring));
    DegFunctor::strict(b.clone(), b, sign_functor(ring)).unwrap()
}

/// GR2, GR2' (arrow in degree 1) and `(id, r)` from GR2 to GR2' with
/// the nonconstant adjuster `r = (s, 1)`.
pub fn gr2_chain(ring: RingSpec) -> (Arc<GradedCat>, Arc<GradedCat>, DegFunctor) {
    let base = Arc::new(a2_category(ring));
    let c2 = Arc::new(FinGroup::cyclic(2));
    // hom order: (x0,x0), (x0,x1), (x1,x0), (x1,x1)
    let gr = Arc::new(
        GradedCat::new(
            base.clone(),
            c2.clone(),
            vec![vec![0], vec![1], vec![], vec![0]],
        )
        .unwrap(),
    );
    let flat = Arc::new(GradedCat::trivial(base.clone(), c2));
    let h = DegFunctor::new(
        gr.clone(),
        flat.clone(),
        LinFunctor::identity(&base),
        vec![1, 0],
    )
    .unwrap();
    (gr, flat, h)
}

/// The inclusion of `x0` into SW2, over the trivial group: precovering
/// but not dense.
pub fn sw2_point_inclusion(ring: RingSpec) -> InvFunctor {
    let pt = Arc::new(point_category(ring));
    let src = Arc::new(trivial_gcategory(pt.clone(), Arc::new(FinGroup::trivial())));
    let tgt = Arc::new(swap_category(ring));
    let f = LinFunctor::new(pt, tgt.clone(), vec![0], vec![Mat::identity(ring, 1)]).unwrap();
    InvFunctor::strict(src, tgt, f).unwrap()
}

/// `* -> *^(1)` from TG1 into GA2#C2, with the witness `*^(1) ~ *^(s)`
/// given by `us` both ways.
pub fn point_into_smash_with_witness(ring: RingSpec) -> (InvFunctor, DensityWitness) {
    let s = smash_product(&Arc::new(ga2(ring))).unwrap();
    let cat = s.category().clone();
    let pt = Arc::new(point_category(ring));
    let src = Arc::new(trivial_gcategory(pt.clone(), Arc::new(FinGroup::trivial())));
    let f = LinFunctor::new(
        pt,
        cat.clone(),
        vec![s.object(0, 0)],
        vec![Mat::identity(ring, 1)],
    )
    .unwrap();
    let f = InvFunctor::strict(src, cat.clone(), f).unwrap();
    let (u1, us) = (s.object(0, 0), s.object(0, 1));
    let witness = DensityWitness {
        source: 0,
        target: us,
        forward: Morphism {
            src: u1,
            tgt: us,
            coeffs: vec![one(ring)],
        },
        backward: Morphism {
            src: us,
            tgt: u1,
            coeffs: vec![one(ring)],
        },
    };
    (f, witness)
}

/// The 2-cell `id -> sw2_nonstrict` with components `c0` at `x0` and `c1`
/// at `x1`. It respects the adjusters exactly when `c1 = 2 c0`.
pub fn sw2_two_cell(ring: RingSpec, c0: i64, c1: i64) -> EquivMorphism {
    let to = sw2_nonstrict(ring);
    let c = to.dom().clone();
    let from = EquivFunctor::identity(&c);
    let base = c.base();
    let comps = vec![
        base.identity(0).scale(&Scalar::from_i64(ring, c0)),
        base.identity(1).scale(&Scalar::from_i64(ring, c1)),
    ];
    let eta = NatTrans::new(from.functor().clone(), to.functor().clone(), comps).unwrap();
    EquivMorphism::new(from, to, eta).unwrap()
}

/// `c` times the identity 2-cell of a degree-preserving functor.
pub fn scalar_deg_cell(h: &DegFunctor, c: Scalar) -> DegMorphism {
    let cod = h.cod().base();
    let comps = (0..h.dom().base().num_objects())
        .map(|x| cod.identity(h.functor().obj(x)).scale(&c))
        .collect();
    let t = NatTrans::new(h.functor().clone(), h.functor().clone(), comps).unwrap();
    DegMorphism::new(h.clone(), h.clone(), t).unwrap()
}

/// The instances the 2-equivalence is checked on, over `ring` plus the
/// `F_5` copies of PT2 and GA2. `with_s3` adds the nonabelian PERM-S3.
pub fn theorem_suite(ring: RingSpec, with_s3: bool) -> FixtureSuite {
    let named = |n: &str| n.to_string();
    let mut gcats = vec![
        (named("TG1"), Arc::new(tg1(ring))),
        (named("PT2"), Arc::new(pt2(ring))),
        (named("SW2"), Arc::new(sw2(ring))),
        (named("CY3"), Arc::new(cy3(ring))),
    ];
    if with_s3 {
        gcats.push((named("PERM-S3"), Arc::new(perm_s3(ring))));
    }
    let f5 = RingSpec::PrimeField(5);
    gcats.push((named("PT2/F5"), Arc::new(pt2(f5))));
    let (gr, flat, h) = gr2_chain(ring);
    let graded = vec![
        (named("GA2"), Arc::new(ga2(ring))),
        (named("GA2/F5"), Arc::new(ga2(f5))),
        (named("GR2"), gr),
        (named("GR2'"), flat),
    ];
    let nonstrict = sw2_nonstrict(ring);
    let swap = sw2_swap(ring);
    let three = Scalar::from_i64(ring, 3);
    let equiv_cells = vec![
        (
            named("2*id(SW2-nonstrict)"),
            scalar_two_cell(&nonstrict, Scalar::from_i64(ring, 2)),
        ),
        (
            named("3*id(SW2-swap)"),
            scalar_two_cell(&swap, three.clone()),
        ),
        (named("SW2-strictifier"), sw2_two_cell(ring, 1, 2)),
    ];
    let sign = ga2_sign(ring);
    let deg_cells = vec![
        (
            named("3*id(GA2-sign)"),
            scalar_deg_cell(&sign, three.clone()),
        ),
        (named("3*id(GR2-regrade)"), scalar_deg_cell(&h, three)),
    ];
    FixtureSuite {
        gcats,
        graded,
        equiv_functors: vec![
            (named("SW2-nonstrict"), nonstrict),
            (named("SW2-swap"), swap),
        ],
        equiv_cells,
        deg_functors: vec![(named("GA2-sign"), sign), (named("GR2-regrade"), h)],
        deg_cells,
    }
}

fn writer(ring: RingSpec) -> BundleWriter {
    let mut w = BundleWriter::new(ring);
    w.group("C2", &Arc::new(FinGroup::cyclic(2)));
    w
}

fn suite_bundle(ring: RingSpec) -> Bundle {
    let mut w = BundleWriter::new(ring);
    w.group("C1", &Arc::new(FinGroup::trivial()));
    w.group("C2", &Arc::new(FinGroup::cyclic(2)));
    w.group("C3", &Arc::new(FinGroup::cyclic(3)));
    w.group("S3", &Arc::new(FinGroup::symmetric3()));
    let suite = theorem_suite(ring, true);
    for (n, c) in &suite.gcats {
        if !n.ends_with("/F5") {
            w.gcategory(n, c);
        }
    }
    for (n, b) in &suite.graded {
        if !n.ends_with("/F5") {
            w.graded(n, b);
        }
    }
    for (n, e) in &suite.equiv_functors {
        w.equiv_functor(n, e);
    }
    let (f, witness) = point_into_smash_with_witness(ring);
    w.inv_functor("TG1->GA2#C2", &f, &[witness]);
    for (n, h) in &suite.deg_functors {
        w.deg_functor(n, h);
    }
    for (n, c) in &suite.equiv_cells {
        w.equiv_cell(n, c);
    }
    for (n, c) in &suite.deg_cells {
        w.deg_cell(n, c);
    }
    w.finish()
}

/// The bundles shipped under `fixtures/`, by file name.
pub fn shipped_bundles() -> Vec<(&'static str, Bundle)> {
    let q = RingSpec::Rationals;
    let f5 = RingSpec::PrimeField(5);

    let mut w = writer(f5);
    w.gcategory("PT2", &Arc::new(pt2(f5)));
    w.graded("GA2", &Arc::new(ga2(f5)));
    let suite_f5 = w.finish();

    let mut w = writer(q);
    w.gcategory("PT2", &Arc::new(pt2(q)));
    let pt2_bundle = w.finish();

    let mut w = writer(q);
    w.graded("GA2", &Arc::new(ga2(q)));
    let ga2_bundle = w.finish();

    let mut w = BundleWriter::new(q);
    w.group("C1", &Arc::new(FinGroup::trivial()));
    w.category("SW2.base", &Arc::new(swap_category(q)));
    w.inv_functor("x0-into-SW2", &sw2_point_inclusion(q), &[]);
    let non_dense = w.finish();

    let mut w = writer(q);
    w.gcategory("SW2-scaled", &Arc::new(sw2_scaled_action(q)));
    let scaled = w.finish();

    let mut w = writer(q);
    w.graded("GA2-misgraded", &Arc::new(ga2_misgraded(q)));
    let misgraded = w.finish();

    let mut w = writer(q);
    let c = Arc::new(sw2(q));
    w.gcategory("SW2", &c);
    w.equiv_functor("id", &EquivFunctor::identity(&c));
    w.equiv_functor("SW2-nonstrict", &sw2_nonstrict(q));
    w.equiv_cell("broken", &sw2_two_cell(q, 1, 1));
    let broken = w.finish();

    vec![
        ("suite.json", suite_bundle(q)),
        ("suite_f5.json", suite_f5),
        ("pt2.json", pt2_bundle),
        ("ga2.json", ga2_bundle),
        ("non_dense.json", non_dense),
        ("neg_scaled_action.json", scaled),
        ("neg_misgraded.json", misgraded),
        ("neg_broken_square.json", broken),
    ]
}

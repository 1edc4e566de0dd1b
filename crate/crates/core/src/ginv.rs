//! Invariant functors out of a G-category, the assembled hom maps `F^(1)`
//! and `F^(2)`, and the precovering / covering predicates.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{mat_mul, Mat};
use crate::gcat::{same_gcat, EquivFunctor, GCategory};
use crate::lincat::{
    compose_functors, functor_equal, same_cat, validate_functor, LinCat, LinFunctor, Morphism,
    NatTrans,
};
use crate::report::VerificationReport;

/// A G-invariant functor `(F, phi)` with `phi_a: F -> F A_a`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvFunctor {
    dom: Arc<GCategory>,
    cod: Arc<LinCat>,
    functor: LinFunctor,
    phi: Vec<NatTrans>,
}

impl InvFunctor {
    /// Checks boundaries only; see [`validate_invariant`].
    pub fn new(
        dom: Arc<GCategory>,
        cod: Arc<LinCat>,
        functor: LinFunctor,
        phi: Vec<NatTrans>,
    ) -> Result<Self> {
        if !same_cat(functor.dom(), dom.base()) || !same_cat(functor.cod(), &cod) {
            return Err(Error::Boundary(
                "invariant functor boundaries do not match".into(),
            ));
        }
        if phi.len() != dom.group().order() {
            return Err(Error::malformed(
                "invariance adjuster",
                "one transformation per element",
            ));
        }
        for (a, p) in phi.iter().enumerate() {
            let tgt = compose_functors(&functor, dom.functor(a))?;
            if !functor_equal(p.src(), &functor) || !functor_equal(p.tgt(), &tgt) {
                return Err(Error::Boundary(format!(
                    "phi_{} does not run from F to F A_a",
                    dom.group().name(a)
                )));
            }
        }
        Ok(InvFunctor {
            dom,
            cod,
            functor,
            phi,
        })
    }

    pub fn from_components(
        dom: Arc<GCategory>,
        cod: Arc<LinCat>,
        functor: LinFunctor,
        components: Vec<Vec<Morphism>>,
    ) -> Result<Self> {
        let phi = components
            .into_iter()
            .enumerate()
            .map(|(a, comps)| {
                let tgt = compose_functors(&functor, dom.functor(a))?;
                NatTrans::new(functor.clone(), tgt, comps)
            })
            .collect::<Result<Vec<_>>>()?;
        InvFunctor::new(dom, cod, functor, phi)
    }

    /// `(F, id)`; requires `F A_a = F` for all `a`.
    pub fn strict(dom: Arc<GCategory>, cod: Arc<LinCat>, functor: LinFunctor) -> Result<Self> {
        let mut phi = Vec::new();
        for a in dom.group().elements() {
            let fa = compose_functors(&functor, dom.functor(a))?;
            if !functor_equal(&fa, &functor) {
                return Err(Error::Validation {
                    module: "ginv",
                    locus: format!("F A_a != F at a = {}", dom.group().name(a)),
                });
            }
            phi.push(NatTrans::identity(&functor));
        }
        InvFunctor::new(dom, cod, functor, phi)
    }

    pub fn dom(&self) -> &Arc<GCategory> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<LinCat> {
        &self.cod
    }

    pub fn functor(&self) -> &LinFunctor {
        &self.functor
    }

    pub fn phi(&self, a: usize) -> &NatTrans {
        &self.phi[a]
    }

    pub fn adjuster(&self) -> &[NatTrans] {
        &self.phi
    }
}

/// Checks the functor axioms, invertibility, the cocycle
/// `phi_{ba} = (phi_b A_a) phi_a`, `phi_1 = id` and
/// `phi_a^{-1} = phi_{a^{-1}} A_a`.
pub fn validate_invariant(f: &InvFunctor) -> VerificationReport {
    let g = f.dom.group();
    let c = f.dom.base();
    let b = &f.cod;
    let n = c.num_objects();
    let mut report = VerificationReport::new();
    report.absorb("functor", validate_functor(&f.functor));
    let inv_fail = g.elements().find_map(|a| {
        f.phi[a]
            .non_invertible_component()
            .map(|x| format!("phi_{} at {}", g.name(a), c.object_name(x)))
    });
    report.record("adjuster-invertible", inv_fail.map_or(Ok(()), Err));
    let mut cocycle_fail = None;
    'outer: for a in g.elements() {
        for bb in g.elements() {
            for x in 0..n {
                let lhs = f.phi[g.mul(bb, a)].component(x);
                let rhs = b.compose_unchecked(
                    f.phi[bb].component(f.dom.act_obj(a, x)),
                    f.phi[a].component(x),
                );
                if *lhs != rhs {
                    cocycle_fail = Some(format!(
                        "(a,b) = ({},{}) at object {}",
                        g.name(a),
                        g.name(bb),
                        c.object_name(x)
                    ));
                    break 'outer;
                }
            }
        }
    }
    report.record("cocycle", cocycle_fail.map_or(Ok(()), Err));
    report.record(
        "unit",
        if f.phi[0].is_identity() {
            Ok(())
        } else {
            Err("phi_1 != id_F".into())
        },
    );
    let mut inverse_fail = None;
    'inv: for a in g.elements() {
        for x in 0..n {
            let there = f.phi[a].component(x);
            let back = f.phi[g.inv(a)].component(f.dom.act_obj(a, x));
            let round = b.compose_unchecked(back, there);
            let other = b.compose_unchecked(there, back);
            if round.coeffs != b.identity_coeffs(round.src)
                || other.coeffs != b.identity_coeffs(other.src)
            {
                inverse_fail = Some(format!("a = {} at object {}", g.name(a), c.object_name(x)));
                break 'inv;
            }
        }
    }
    report.record("inverse", inverse_fail.map_or(Ok(()), Err));
    report
}

/// `H (F, phi) = (HF, H phi)`.
pub fn compose_with_functor(h: &LinFunctor, f: &InvFunctor) -> Result<InvFunctor> {
    if !same_cat(h.dom(), &f.cod) {
        return Err(Error::Boundary(
            "functor does not start at the invariant functor's target".into(),
        ));
    }
    let functor = compose_functors(h, &f.functor)?;
    let comps = f
        .phi
        .iter()
        .map(|p| p.components().iter().map(|m| h.apply(m)).collect())
        .collect();
    InvFunctor::from_components(f.dom.clone(), h.cod().clone(), functor, comps)
}

/// `(F, phi)(E, rho) = (FE, (F rho_a)(phi_a E))`.
pub fn compose_equiv_then_inv(f: &InvFunctor, e: &EquivFunctor) -> Result<InvFunctor> {
    if !same_gcat(e.cod(), &f.dom) {
        return Err(Error::Boundary(
            "equivariant functor does not land in the invariant functor's source".into(),
        ));
    }
    let functor = compose_functors(&f.functor, e.functor())?;
    let comps = e
        .dom()
        .group()
        .elements()
        .map(|a| {
            (0..e.dom().base().num_objects())
                .map(|x| {
                    let outer = f.functor.apply(e.rho(a).component(x));
                    let inner = f.phi[a].component(e.functor().obj(x));
                    f.cod.compose_unchecked(&outer, inner)
                })
                .collect()
        })
        .collect();
    InvFunctor::from_components(e.dom().clone(), f.cod.clone(), functor, comps)
}

/// Matrix of `F^(1)_{x,y}: (+)_a C(A_a x, y) -> B(Fx, Fy)`,
/// `(f_a) -> sum_a F(f_a) phi_a x`. Columns are ordered by group element,
/// then by the local basis of `C(A_a x, y)`.
pub fn f1_map(f: &InvFunctor, x: usize, y: usize) -> Mat {
    let g = f.dom.group();
    let b = &f.cod;
    let fy = f.functor.obj(y);
    let blocks: Vec<Mat> = g
        .elements()
        .map(|a| {
            let ax = f.dom.act_obj(a, x);
            let pre = b.pre_compose_matrix(f.phi[a].component(x), fy);
            mat_mul(&pre, f.functor.mat(ax, y)).expect("conformable")
        })
        .collect();
    Mat::hstack(b.ring(), b.dim(f.functor.obj(x), fy), &blocks).expect("blocks share rows")
}

/// Matrix of `F^(2)_{x,y}: (+)_b C(x, A_b y) -> B(Fx, Fy)`,
/// `(f_b) -> sum_b phi_{b^{-1}}(A_b y) F(f_b)`.
pub fn f2_map(f: &InvFunctor, x: usize, y: usize) -> Mat {
    let g = f.dom.group();
    let b = &f.cod;
    let fx = f.functor.obj(x);
    let blocks: Vec<Mat> = g
        .elements()
        .map(|bb| {
            let by = f.dom.act_obj(bb, y);
            let post = b.post_compose_matrix(f.phi[g.inv(bb)].component(by), fx);
            mat_mul(&post, f.functor.mat(x, by)).expect("conformable")
        })
        .collect();
    Mat::hstack(b.ring(), b.dim(fx, f.functor.obj(y)), &blocks).expect("blocks share rows")
}

/// Every `F^(1)_{x,y}` is invertible.
pub fn is_precovering(f: &InvFunctor) -> VerificationReport {
    let c = f.dom.base();
    let n = c.num_objects();
    let fail = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| !f1_map(f, x, y).is_invertible());
    let mut report = VerificationReport::new();
    report.record(
        "precovering",
        fail.map_or(Ok(()), |(x, y)| {
            Err(format!(
                "F1 not invertible at ({},{})",
                c.object_name(x),
                c.object_name(y)
            ))
        }),
    );
    report
}

/// Evidence that a target object is isomorphic to an image object:
/// `forward: F(source) -> target` and `backward: target -> F(source)`
/// mutually inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityWitness {
    pub source: usize,
    pub target: usize,
    pub forward: Morphism,
    pub backward: Morphism,
}

impl DensityWitness {
    pub fn verify(&self, functor: &LinFunctor) -> Result<()> {
        let b = functor.cod();
        let fx = functor.obj(self.source);
        let err =
            |why: &str| Error::Witness(format!("target {}: {why}", b.object_name(self.target)));
        if self.forward.src != fx || self.forward.tgt != self.target {
            return Err(err("forward morphism has the wrong type"));
        }
        if self.backward.src != self.target || self.backward.tgt != fx {
            return Err(err("backward morphism has the wrong type"));
        }
        if self.forward.coeffs.len() != b.dim(fx, self.target)
            || self.backward.coeffs.len() != b.dim(self.target, fx)
        {
            return Err(err("coefficient vector has the wrong length"));
        }
        let gf = b.compose_unchecked(&self.backward, &self.forward);
        let fg = b.compose_unchecked(&self.forward, &self.backward);
        if gf.coeffs != b.identity_coeffs(fx) || fg.coeffs != b.identity_coeffs(self.target) {
            return Err(err("witness morphisms are not mutually inverse"));
        }
        Ok(())
    }
}

/// Density of `functor`, by object-surjectivity or the supplied witnesses.
/// Returns the first object left uncovered.
pub(crate) fn density_gap(
    functor: &LinFunctor,
    witnesses: &[DensityWitness],
) -> Result<Option<usize>> {
    let mut covered = vec![false; functor.cod().num_objects()];
    for &y in functor.obj_map() {
        covered[y] = true;
    }
    for w in witnesses {
        w.verify(functor)?;
        covered[w.target] = true;
    }
    Ok(covered.iter().position(|c| !c))
}

/// Precovering plus density. A witness that fails to verify is an error,
/// not a failed check.
pub fn is_covering(f: &InvFunctor, witnesses: &[DensityWitness]) -> Result<VerificationReport> {
    let mut report = is_precovering(f);
    let gap = density_gap(&f.functor, witnesses)?;
    report.record(
        "dense",
        gap.map_or(Ok(()), |y| {
            Err(format!(
                "density: no image object isomorphic to {}",
                f.cod.object_name(y)
            ))
        }),
    );
    Ok(report)
}

/// A morphism of invariant functors `eta: (F, phi) -> (F', phi')`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvMorphism {
    src: InvFunctor,
    tgt: InvFunctor,
    eta: NatTrans,
}

impl InvMorphism {
    pub fn new(src: InvFunctor, tgt: InvFunctor, eta: NatTrans) -> Result<Self> {
        if !same_gcat(&src.dom, &tgt.dom) || !same_cat(&src.cod, &tgt.cod) {
            return Err(Error::Boundary(
                "morphism between non-parallel invariant functors".into(),
            ));
        }
        if !functor_equal(eta.src(), &src.functor) || !functor_equal(eta.tgt(), &tgt.functor) {
            return Err(Error::Boundary(
                "transformation does not match the invariant functors".into(),
            ));
        }
        Ok(InvMorphism { src, tgt, eta })
    }

    pub fn identity(f: &InvFunctor) -> Self {
        InvMorphism {
            src: f.clone(),
            tgt: f.clone(),
            eta: NatTrans::identity(&f.functor),
        }
    }

    pub fn src(&self) -> &InvFunctor {
        &self.src
    }

    pub fn tgt(&self) -> &InvFunctor {
        &self.tgt
    }

    pub fn eta(&self) -> &NatTrans {
        &self.eta
    }
}

/// Checks `(eta A_a) phi_a = phi'_a eta` for all `a`.
pub fn validate_inv_morphism(m: &InvMorphism) -> VerificationReport {
    let g = m.src.dom.group();
    let c = m.src.dom.base();
    let b = &m.src.cod;
    let mut fail = None;
    'outer: for a in g.elements() {
        for x in 0..c.num_objects() {
            let lhs = b.compose_unchecked(
                m.eta.component(m.src.dom.act_obj(a, x)),
                m.src.phi[a].component(x),
            );
            let rhs = b.compose_unchecked(m.tgt.phi[a].component(x), m.eta.component(x));
            if lhs != rhs {
                fail = Some(format!("a = {} at object {}", g.name(a), c.object_name(x)));
                break 'outer;
            }
        }
    }
    let mut report = VerificationReport::new();
    report.record("adjuster-square", fail.map_or(Ok(()), Err));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{RingSpec, Scalar};
    use crate::fixtures;
    use crate::gcat::{trivial_gcategory, FinGroup};
    use crate::orbit::orbit_category;

    const Q: RingSpec = RingSpec::Rationals;

    #[test]
    fn trivially_acted_source_with_identity_adjuster() {
        let b = Arc::new(fixtures::group_algebra_c2_category(Q));
        let c = Arc::new(trivial_gcategory(b.clone(), Arc::new(FinGroup::cyclic(2))));
        let f = InvFunctor::strict(c, b.clone(), LinFunctor::identity(&b)).unwrap();
        assert!(validate_invariant(&f).passed());
    }

    #[test]
    fn canonical_covering_is_invariant_and_negated_psi_is_not() {
        let c = Arc::new(fixtures::sw2(Q));
        let o = orbit_category(&c).unwrap();
        assert!(validate_invariant(o.p()).passed());

        let p = o.p();
        let minus = Scalar::from_i64(Q, -1);
        let comps: Vec<Vec<Morphism>> = c
            .group()
            .elements()
            .map(|a| {
                p.phi(a)
                    .components()
                    .iter()
                    .enumerate()
                    .map(|(x, m)| {
                        if a == 1 && x == 0 {
                            m.scale(&minus)
                        } else {
                            m.clone()
                        }
                    })
                    .collect()
            })
            .collect();
        let broken =
            InvFunctor::from_components(c.clone(), p.cod().clone(), p.functor().clone(), comps)
                .unwrap();
        let r = validate_invariant(&broken);
        assert!(!r.find("cocycle").unwrap().passed);
    }

    #[test]
    fn f1_for_trivial_group_is_the_hom_matrix() {
        let b = Arc::new(fixtures::group_algebra_c2_category(Q));
        let c = Arc::new(trivial_gcategory(b.clone(), Arc::new(FinGroup::trivial())));
        let sign = fixtures::sign_functor(Q);
        let f = InvFunctor::strict(c, b, sign.clone()).unwrap();
        assert_eq!(f1_map(&f, 0, 0), *sign.mat(0, 0));
    }

    #[test]
    fn f1_of_canonical_covering_on_pt2() {
        let c = Arc::new(fixtures::pt2(Q));
        let o = orbit_category(&c).unwrap();
        let m = f1_map(o.p(), 0, 0);
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert!(m.is_invertible());
        // (f_1, f_s) lands in blocks 1 and s respectively
        assert!(m.is_identity());
    }

    #[test]
    fn f1_and_f2_invertible_together() {
        for f in [fixtures::sw2(Q), fixtures::cy3(Q), fixtures::perm_s3(Q)] {
            let c = Arc::new(f);
            let o = orbit_category(&c).unwrap();
            let n = c.base().num_objects();
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(
                        f1_map(o.p(), x, y).is_invertible(),
                        f2_map(o.p(), x, y).is_invertible()
                    );
                }
            }
        }
    }

    #[test]
    fn inclusion_of_one_object_is_not_dense() {
        let f = fixtures::sw2_point_inclusion(Q);
        let r = is_covering(&f, &[]).unwrap();
        assert!(r.find("precovering").unwrap().passed);
        let dense = r.find("dense").unwrap();
        assert!(!dense.passed);
        assert!(dense.locus.as_ref().unwrap().contains("density"));
    }

    #[test]
    fn witnesses_establish_density() {
        let (f, w) = fixtures::point_into_smash_with_witness(Q);
        assert!(!is_covering(&f, &[]).unwrap().passed());
        assert!(is_covering(&f, std::slice::from_ref(&w)).unwrap().passed());
        let mut bad = w;
        bad.forward = bad.forward.scale(&Scalar::from_i64(Q, 2));
        assert!(matches!(is_covering(&f, &[bad]), Err(Error::Witness(_))));
    }

    #[test]
    fn composing_with_identity_functor() {
        let c = Arc::new(fixtures::sw2(Q));
        let o = orbit_category(&c).unwrap();
        let id = LinFunctor::identity(o.p().cod());
        assert_eq!(compose_with_functor(&id, o.p()).unwrap(), *o.p());
        let e = EquivFunctor::identity(&c);
        assert_eq!(compose_equiv_then_inv(o.p(), &e).unwrap(), *o.p());
    }

    #[test]
    fn inv_morphism_square() {
        let c = Arc::new(fixtures::sw2(Q));
        let o = orbit_category(&c).unwrap();
        assert!(validate_inv_morphism(&InvMorphism::identity(o.p())).passed());
    }
}

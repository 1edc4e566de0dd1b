//! The smash product `B#G` of a graded category, its free action and the
//! canonical covering `Q: B#G -> B`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{Mat, Scalar};
use crate::gcat::{FinGroup, GCategory};
use crate::ginv::InvFunctor;
use crate::graded::{validate_grading, GradedCat};
use crate::lincat::{LinCat, LinFunctor, Morphism};
use crate::orbit::{factorize_through_P, orbit_category};
use crate::report::VerificationReport;

/// `B#G`: object `x^(a)` has index `x*|G| + a`; hom(x^(a), y^(b)) is the
/// degree `b^{-1} a` part of B(x,y) with the inherited basis.
#[derive(Debug, Clone)]
pub struct SmashCat {
    source: Arc<GradedCat>,
    carrier: Arc<GCategory>,
    q: InvFunctor,
    // picks[u*m + v] lists the source basis positions spanning hom(u,v)
    picks: Vec<Vec<usize>>,
}

impl SmashCat {
    pub fn source(&self) -> &Arc<GradedCat> {
        &self.source
    }

    pub fn carrier(&self) -> &Arc<GCategory> {
        &self.carrier
    }

    pub fn category(&self) -> &Arc<LinCat> {
        self.carrier.base()
    }

    /// `(Q, id)`.
    pub fn q(&self) -> &InvFunctor {
        &self.q
    }

    fn order(&self) -> usize {
        self.source.group().order()
    }

    /// Index of `x^(a)`.
    pub fn object(&self, x: usize, a: usize) -> usize {
        x * self.order() + a
    }

    /// `(x, a)` for the object `x^(a)`.
    pub fn split(&self, u: usize) -> (usize, usize) {
        (u / self.order(), u % self.order())
    }

    pub fn object_table(&self) -> Vec<(usize, usize)> {
        (0..self.category().num_objects())
            .map(|u| self.split(u))
            .collect()
    }

    /// Source basis positions spanning hom(u, v).
    pub fn picks(&self, u: usize, v: usize) -> &[usize] {
        &self.picks[u * self.category().num_objects() + v]
    }

    /// The homogeneous part of `f: x -> y` viewed in hom(x^(a), y^(b)).
    pub fn restrict(&self, f: &Morphism, a: usize, b: usize) -> Morphism {
        let (u, v) = (self.object(f.src, a), self.object(f.tgt, b));
        Morphism {
            src: u,
            tgt: v,
            coeffs: self
                .picks(u, v)
                .iter()
                .map(|&i| f.coeffs[i].clone())
                .collect(),
        }
    }
}

/// Builds `B#G`. The grading must be valid.
pub fn smash_product(b: &Arc<GradedCat>) -> Result<SmashCat> {
    let grading = validate_grading(b);
    if let Some(f) = grading.first_failure() {
        return Err(Error::Validation {
            module: "graded",
            locus: format!("{}: {}", f.name, f.locus.clone().unwrap_or_default()),
        });
    }
    let base = b.base();
    let g = b.group();
    let ring = base.ring();
    let (n, ord) = (base.num_objects(), g.order());
    let m = n * ord;
    let split = |u: usize| (u / ord, u % ord);

    let objects: Vec<String> = (0..m)
        .map(|u| {
            let (x, a) = split(u);
            format!("{}^({})", base.object_name(x), g.name(a))
        })
        .collect();
    let mut picks = Vec::with_capacity(m * m);
    let mut basis = Vec::with_capacity(m * m);
    for u in 0..m {
        for v in 0..m {
            let ((x, a), (y, bb)) = (split(u), split(v));
            let d = g.mul(g.inv(bb), a);
            let idx = b.component_indices(x, y, d);
            basis.push(
                idx.iter()
                    .map(|&i| base.basis(x, y)[i].clone())
                    .collect::<Vec<_>>(),
            );
            picks.push(idx);
        }
    }
    let restrict = |v: &[Scalar], idx: &[usize]| -> Vec<Scalar> {
        idx.iter().map(|&i| v[i].clone()).collect()
    };
    let identity = (0..m)
        .map(|u| restrict(base.identity_coeffs(split(u).0), &picks[u * m + u]))
        .collect();
    let mut comp = Vec::with_capacity(m * m * m);
    for u in 0..m {
        for v in 0..m {
            for w in 0..m {
                let (x, y, z) = (split(u).0, split(v).0, split(w).0);
                let (puv, pvw, puw) = (&picks[u * m + v], &picks[v * m + w], &picks[u * m + w]);
                let mut t = Vec::with_capacity(pvw.len() * puv.len() * puw.len());
                for &j in pvw {
                    for &i in puv {
                        t.extend(restrict(base.comp_entry(x, y, z, j, i), puw));
                    }
                }
                comp.push(t);
            }
        }
    }
    let cat = Arc::new(LinCat::from_parts(ring, objects, basis, identity, comp)?);

    let action = g
        .elements()
        .map(|c| {
            let obj_map = (0..m)
                .map(|u| split(u).0 * ord + g.mul(c, split(u).1))
                .collect();
            LinFunctor::from_fn(cat.clone(), cat.clone(), obj_map, |u, v| {
                Mat::identity(ring, picks[u * m + v].len())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let carrier = Arc::new(GCategory::new(cat.clone(), g.clone(), action)?);

    let q_functor = LinFunctor::from_fn(
        cat,
        base.clone(),
        (0..m).map(|u| split(u).0).collect(),
        |u, v| {
            let idx = &picks[u * m + v];
            let mut mat = Mat::zeros(ring, base.dim(split(u).0, split(v).0), idx.len());
            for (col, &row) in idx.iter().enumerate() {
                mat.set(row, col, Scalar::one(ring));
            }
            mat
        },
    )?;
    let q = InvFunctor::strict(carrier.clone(), base.clone(), q_functor)?;
    Ok(SmashCat {
        source: b.clone(),
        carrier,
        q,
        picks,
    })
}

/// For each `c != 1`, `A_c` fixes no object.
pub fn free_action_report(c: &GCategory) -> VerificationReport {
    let g: &FinGroup = c.group();
    let fixed = g.elements().skip(1).find_map(|a| {
        (0..c.base().num_objects())
            .find(|&x| c.act_obj(a, x) == x)
            .map(|x| (a, x))
    });
    let mut report = VerificationReport::new();
    report.record(
        "free-action",
        fixed.map_or(Ok(()), |(a, x)| {
            Err(format!("A_{} fixes {}", g.name(a), c.base().object_name(x)))
        }),
    );
    report
}

pub fn verify_free_action(s: &SmashCat) -> VerificationReport {
    free_action_report(&s.carrier)
}

/// The unique `H: (B#G)/G -> B` with `Q = H(P, psi)`; fails unless `H` is
/// an equivalence.
pub fn q_factorization(s: &SmashCat) -> Result<LinFunctor> {
    let o = orbit_category(&s.carrier)?;
    let h = factorize_through_P(&o, &s.q)?;
    if !h.is_fully_faithful() || !h.is_object_surjective() {
        return Err(Error::Validation {
            module: "smash",
            locus: "the factorization of Q is not an equivalence".into(),
        });
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::RingSpec;
    use crate::gcat::validate_action;
    use crate::ginv::{is_covering, validate_invariant};
    use crate::lincat::validate_category;

    use crate::fixtures;

    const Q: RingSpec = RingSpec::Rationals;

    #[test]
    fn trivial_group_copies_the_base() {
        let b = Arc::new(GradedCat::trivial(
            Arc::new(fixtures::swap_category(Q)),
            Arc::new(FinGroup::trivial()),
        ));
        let s = smash_product(&b).unwrap();
        assert_eq!(s.category().num_objects(), 2);
        assert!(q_factorization(&s).unwrap().is_fully_faithful());
    }

    #[test]
    fn group_algebra_smash() {
        let b = Arc::new(fixtures::ga2(Q));
        let s = smash_product(&b).unwrap();
        let cat = s.category();
        assert_eq!(cat.num_objects(), 2);
        for u in 0..2 {
            for v in 0..2 {
                assert_eq!(cat.dim(u, v), 1);
            }
        }
        assert!(validate_category(cat).passed());
        assert!(validate_action(s.carrier()).passed());
        assert!(verify_free_action(&s).passed());
        assert!(validate_invariant(s.q()).passed());
        assert!(is_covering(s.q(), &[]).unwrap().passed());
    }

    #[test]
    fn smash_of_orbit_carrier_has_four_objects() {
        let c = Arc::new(fixtures::sw2(Q));
        let o = orbit_category(&c).unwrap();
        let s = smash_product(o.carrier()).unwrap();
        assert_eq!(s.category().num_objects(), 4);
        assert!(verify_free_action(&s).passed());
        assert!(q_factorization(&s).is_ok());
    }

    #[test]
    fn fixed_point_detected() {
        let c = fixtures::pt2(Q);
        assert!(!free_action_report(&c).passed());
    }
}

//! Finite groups, strict group actions on linear categories, equivariant
//! functors with their equivariance adjusters, and morphisms between them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lincat::{
    compose_functors, functor_equal, nt_horizontal, nt_vertical, same_cat, validate_functor,
    LinCat, LinFunctor, Morphism, NatTrans,
};
use crate::report::VerificationReport;

/// A finite group given by its multiplication table. Element `0` is the
/// identity and `mul(a, b)` is the product `ab`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGroup {
    names: Vec<String>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl FinGroup {
    /// Validates the table: closure, identity at index 0, associativity and
    /// inverses.
    pub fn new(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        let bad = |detail: String| Error::Validation {
            module: "group",
            locus: detail,
        };
        if n == 0 || mul.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(bad("multiplication table is not square".into()));
        }
        if mul.iter().flatten().any(|&c| c >= n) {
            return Err(bad("multiplication table entry out of range".into()));
        }
        for a in 0..n {
            if mul[0][a] != a || mul[a][0] != a {
                return Err(bad(format!("element 0 is not an identity at {}", names[a])));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(bad(format!(
                            "associativity fails at ({},{},{})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let mut inv = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == 0 && mul[b][a] == 0) {
                Some(b) => inv.push(b),
                None => return Err(bad(format!("{} has no inverse", names[a]))),
            }
        }
        Ok(FinGroup { names, mul, inv })
    }

    pub fn trivial() -> Self {
        FinGroup::cyclic(1)
    }

    /// `C_n` with elements `1, g, g^2, ...`; for `n = 2` the generator is `s`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n)
            .map(|k| match (n, k) {
                (_, 0) => "1".to_string(),
                (2, 1) => "s".to_string(),
                (_, 1) => "g".to_string(),
                (_, k) => format!("g{k}"),
            })
            .collect();
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FinGroup::new(names, mul).expect("cyclic group table is valid")
    }

    /// The symmetric group on three letters, elements as permutations of
    /// `{0,1,2}` in lexicographic order of their one-line notation.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let mut names: Vec<String> = perms
            .iter()
            .map(|p| format!("{}{}{}", p[0], p[1], p[2]))
            .collect();
        names[0] = "1".into();
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        // (ab)(i) = a(b(i))
        let mul = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| idx([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        FinGroup::new(names, mul).expect("S3 table is valid")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }
}

pub(crate) fn same_group(a: &Arc<FinGroup>, b: &Arc<FinGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A linear category with a strict action: one automorphism `A_a` per group
/// element with `A_b A_a = A_{ba}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GCategory {
    base: Arc<LinCat>,
    group: Arc<FinGroup>,
    action: Vec<LinFunctor>,
}

impl GCategory {
    /// Checks shapes; see [`validate_action`] for the action axioms.
    pub fn new(base: Arc<LinCat>, group: Arc<FinGroup>, action: Vec<LinFunctor>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::malformed(
                "action",
                "one functor per group element required",
            ));
        }
        if action
            .iter()
            .any(|f| !same_cat(f.dom(), &base) || !same_cat(f.cod(), &base))
        {
            return Err(Error::Boundary(
                "action functors must be endofunctors of the base".into(),
            ));
        }
        Ok(GCategory {
            base,
            group,
            action,
        })
    }

    pub fn base(&self) -> &Arc<LinCat> {
        &self.base
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    pub fn functor(&self, a: usize) -> &LinFunctor {
        &self.action[a]
    }

    pub fn act_obj(&self, a: usize, x: usize) -> usize {
        self.action[a].obj(x)
    }

    pub fn act(&self, a: usize, f: &Morphism) -> Morphism {
        self.action[a].apply(f)
    }
}

pub(crate) fn same_gcat(a: &Arc<GCategory>, b: &Arc<GCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// The category `b` with every group element acting as the identity.
pub fn trivial_gcategory(b: Arc<LinCat>, g: Arc<FinGroup>) -> GCategory {
    let id = LinFunctor::identity(&b);
    let action = vec![id; g.order()];
    GCategory::new(b, g, action).expect("trivial action is well formed")
}

/// Checks that every `A_a` is an automorphism, `A_1 = id` and
/// `A_b A_a = A_{ba}`.
pub fn validate_action(c: &GCategory) -> VerificationReport {
    let g = &c.group;
    let mut report = VerificationReport::new();
    let functor_fail = g.elements().find_map(|a| {
        let r = validate_functor(&c.action[a]);
        r.first_failure().map(|f| {
            format!(
                "A_{}: {} at {}",
                g.name(a),
                f.name,
                f.locus.clone().unwrap_or_default()
            )
        })
    });
    report.record("functors", functor_fail.map_or(Ok(()), Err));
    report.record(
        "identity-acts-trivially",
        if functor_equal(&c.action[0], &LinFunctor::identity(&c.base)) {
            Ok(())
        } else {
            Err("A_1 != id".into())
        },
    );
    let mut hom_fail = None;
    'outer: for a in g.elements() {
        for b in g.elements() {
            let ba = compose_functors(&c.action[b], &c.action[a]).expect("endofunctors compose");
            if !functor_equal(&ba, &c.action[g.mul(b, a)]) {
                hom_fail = Some(format!(
                    "A_b A_a != A_ba at (a,b) = ({},{})",
                    g.name(a),
                    g.name(b)
                ));
                break 'outer;
            }
        }
    }
    report.record("homomorphism", hom_fail.map_or(Ok(()), Err));
    let auto_fail = g.elements().find(|&a| {
        let f = &c.action[a];
        let mut seen = vec![false; c.base.num_objects()];
        for &y in f.obj_map() {
            seen[y] = true;
        }
        !seen.iter().all(|&s| s) || !f.is_fully_faithful()
    });
    report.record(
        "automorphisms",
        auto_fail.map_or(Ok(()), |a| {
            Err(format!("A_{} is not an automorphism", g.name(a)))
        }),
    );
    report
}

/// An equivariant functor `(E, rho)` with `rho_a: A'_a E -> E A_a`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivFunctor {
    dom: Arc<GCategory>,
    cod: Arc<GCategory>,
    functor: LinFunctor,
    rho: Vec<NatTrans>,
}

impl EquivFunctor {
    /// Checks boundaries of every `rho_a`; see [`validate_equivariant`] for
    /// invertibility and the cocycle condition.
    pub fn new(
        dom: Arc<GCategory>,
        cod: Arc<GCategory>,
        functor: LinFunctor,
        rho: Vec<NatTrans>,
    ) -> Result<Self> {
        if !same_group(&dom.group, &cod.group) {
            return Err(Error::Boundary(
                "equivariant functor between different groups".into(),
            ));
        }
        if !same_cat(functor.dom(), &dom.base) || !same_cat(functor.cod(), &cod.base) {
            return Err(Error::Boundary(
                "functor does not run between the base categories".into(),
            ));
        }
        if rho.len() != dom.group.order() {
            return Err(Error::malformed(
                "equivariance adjuster",
                "one transformation per element",
            ));
        }
        for (a, r) in rho.iter().enumerate() {
            let src = compose_functors(&cod.action[a], &functor)?;
            let tgt = compose_functors(&functor, &dom.action[a])?;
            if !functor_equal(r.src(), &src) || !functor_equal(r.tgt(), &tgt) {
                return Err(Error::Boundary(format!(
                    "rho_{} does not run from A_a E to E A_a",
                    dom.group.name(a)
                )));
            }
        }
        Ok(EquivFunctor {
            dom,
            cod,
            functor,
            rho,
        })
    }

    /// Builds `rho_a` from per-element component lists; naturality is
    /// checked for each.
    pub fn from_components(
        dom: Arc<GCategory>,
        cod: Arc<GCategory>,
        functor: LinFunctor,
        components: Vec<Vec<Morphism>>,
    ) -> Result<Self> {
        let rho = components
            .into_iter()
            .enumerate()
            .map(|(a, comps)| {
                let src = compose_functors(cod.functor(a), &functor)?;
                let tgt = compose_functors(&functor, dom.functor(a))?;
                NatTrans::new(src, tgt, comps)
            })
            .collect::<Result<Vec<_>>>()?;
        EquivFunctor::new(dom, cod, functor, rho)
    }

    /// The strictly equivariant functor with identity adjuster; requires
    /// `A'_a E = E A_a` exactly.
    pub fn strict(dom: Arc<GCategory>, cod: Arc<GCategory>, functor: LinFunctor) -> Result<Self> {
        let mut rho = Vec::with_capacity(dom.group.order());
        for a in dom.group.elements() {
            let lhs = compose_functors(cod.functor(a), &functor)?;
            let rhs = compose_functors(&functor, dom.functor(a))?;
            if !functor_equal(&lhs, &rhs) {
                return Err(Error::Validation {
                    module: "gcat",
                    locus: format!("A'_a E != E A_a at a = {}", dom.group.name(a)),
                });
            }
            rho.push(NatTrans::identity(&lhs));
        }
        EquivFunctor::new(dom, cod, functor, rho)
    }

    pub fn identity(c: &Arc<GCategory>) -> Self {
        EquivFunctor::strict(c.clone(), c.clone(), LinFunctor::identity(&c.base))
            .expect("identity is strict")
    }

    pub fn dom(&self) -> &Arc<GCategory> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<GCategory> {
        &self.cod
    }

    pub fn functor(&self) -> &LinFunctor {
        &self.functor
    }

    pub fn rho(&self, a: usize) -> &NatTrans {
        &self.rho[a]
    }

    pub fn adjuster(&self) -> &[NatTrans] {
        &self.rho
    }

    pub fn is_strict(&self) -> bool {
        self.rho.iter().all(NatTrans::is_identity)
    }
}

/// Checks the functor axioms, invertibility of each `rho_a` and the cocycle
/// `rho_{ba} = (rho_b A_a)(A'_b rho_a)`.
pub fn validate_equivariant(f: &EquivFunctor) -> VerificationReport {
    let g = &f.dom.group;
    let c = &f.dom.base;
    let d = &f.cod.base;
    let mut report = VerificationReport::new();
    report.absorb("functor", validate_functor(&f.functor));
    let inv_fail = g.elements().find_map(|a| {
        f.rho[a]
            .non_invertible_component()
            .map(|x| format!("rho_{} at {}", g.name(a), c.object_name(x)))
    });
    report.record("adjuster-invertible", inv_fail.map_or(Ok(()), Err));
    let mut cocycle_fail = None;
    'outer: for a in g.elements() {
        for b in g.elements() {
            for x in 0..c.num_objects() {
                let lhs = f.rho[g.mul(b, a)].component(x);
                let inner = f.cod.act(b, f.rho[a].component(x));
                let outer = f.rho[b].component(f.dom.act_obj(a, x));
                let rhs = d.compose_unchecked(outer, &inner);
                if *lhs != rhs {
                    cocycle_fail = Some(format!(
                        "(a,b) = ({},{}) at object {}",
                        g.name(a),
                        g.name(b),
                        c.object_name(x)
                    ));
                    break 'outer;
                }
            }
        }
    }
    report.record("cocycle", cocycle_fail.map_or(Ok(()), Err));
    report
}

/// `(E', rho')(E, rho) = (E'E, (E' rho_a)(rho'_a E))`.
pub fn compose_equivariant(f2: &EquivFunctor, f1: &EquivFunctor) -> Result<EquivFunctor> {
    if !same_gcat(&f1.cod, &f2.dom) {
        return Err(Error::Boundary(
            "equivariant functors are not composable".into(),
        ));
    }
    let functor = compose_functors(&f2.functor, &f1.functor)?;
    let e = &f2.cod.base;
    let comps = f1
        .dom
        .group
        .elements()
        .map(|a| {
            (0..f1.dom.base.num_objects())
                .map(|x| {
                    let outer = f2.functor.apply(f1.rho[a].component(x));
                    let inner = f2.rho[a].component(f1.functor.obj(x));
                    e.compose_unchecked(&outer, inner)
                })
                .collect()
        })
        .collect();
    EquivFunctor::from_components(f1.dom.clone(), f2.cod.clone(), functor, comps)
}

/// A 2-cell `eta: (E, rho) -> (E', rho')`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivMorphism {
    src: EquivFunctor,
    tgt: EquivFunctor,
    eta: NatTrans,
}

impl EquivMorphism {
    pub fn new(src: EquivFunctor, tgt: EquivFunctor, eta: NatTrans) -> Result<Self> {
        if !same_gcat(&src.dom, &tgt.dom) || !same_gcat(&src.cod, &tgt.cod) {
            return Err(Error::Boundary(
                "2-cell between non-parallel equivariant functors".into(),
            ));
        }
        if !functor_equal(eta.src(), &src.functor) || !functor_equal(eta.tgt(), &tgt.functor) {
            return Err(Error::Boundary(
                "transformation does not match the equivariant functors".into(),
            ));
        }
        Ok(EquivMorphism { src, tgt, eta })
    }

    pub fn identity(f: &EquivFunctor) -> Self {
        EquivMorphism {
            src: f.clone(),
            tgt: f.clone(),
            eta: NatTrans::identity(&f.functor),
        }
    }

    pub fn src(&self) -> &EquivFunctor {
        &self.src
    }

    pub fn tgt(&self) -> &EquivFunctor {
        &self.tgt
    }

    pub fn eta(&self) -> &NatTrans {
        &self.eta
    }
}

/// Checks `(eta A_a) rho_a = rho'_a (A'_a eta)` for every `a`.
pub fn validate_equiv_morphism(m: &EquivMorphism) -> VerificationReport {
    let (src, tgt) = (&m.src, &m.tgt);
    let g = &src.dom.group;
    let c = &src.dom.base;
    let d = &src.cod.base;
    let mut report = VerificationReport::new();
    let mut fail = None;
    'outer: for a in g.elements() {
        for x in 0..c.num_objects() {
            let lhs = d.compose_unchecked(
                m.eta.component(src.dom.act_obj(a, x)),
                src.rho[a].component(x),
            );
            let rhs =
                d.compose_unchecked(tgt.rho[a].component(x), &src.cod.act(a, m.eta.component(x)));
            if lhs != rhs {
                fail = Some(format!("a = {} at object {}", g.name(a), c.object_name(x)));
                break 'outer;
            }
        }
    }
    report.record("adjuster-square", fail.map_or(Ok(()), Err));
    report
}

/// Vertical composite of 2-cells in G-Cat.
pub fn equiv_vertical(b: &EquivMorphism, a: &EquivMorphism) -> Result<EquivMorphism> {
    EquivMorphism::new(a.src.clone(), b.tgt.clone(), nt_vertical(&b.eta, &a.eta)?)
}

/// Horizontal composite `b * a` of 2-cells in G-Cat.
pub fn equiv_horizontal(b: &EquivMorphism, a: &EquivMorphism) -> Result<EquivMorphism> {
    let src = compose_equivariant(&b.src, &a.src)?;
    let tgt = compose_equivariant(&b.tgt, &a.tgt)?;
    EquivMorphism::new(src, tgt, nt_horizontal(&b.eta, &a.eta)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{RingSpec, Scalar};
    use crate::fixtures;

    const Q: RingSpec = RingSpec::Rationals;

    #[test]
    fn group_tables() {
        let c3 = FinGroup::cyclic(3);
        assert_eq!(c3.mul(1, 2), 0);
        assert_eq!(c3.inv(1), 2);
        let s3 = FinGroup::symmetric3();
        assert_eq!(s3.order(), 6);
        // S3 is not abelian
        assert!((0..6).any(|a| (0..6).any(|b| s3.mul(a, b) != s3.mul(b, a))));
        assert!(FinGroup::new(vec!["1".into(), "s".into()], vec![vec![0, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn fixture_actions_validate() {
        assert!(validate_action(&fixtures::pt2(Q)).passed());
        assert!(validate_action(&fixtures::sw2(Q)).passed());
        assert!(validate_action(&fixtures::cy3(Q)).passed());
        assert!(validate_action(&fixtures::perm_s3(Q)).passed());
    }

    #[test]
    fn scaled_swap_fails_homomorphism() {
        let r = validate_action(&fixtures::sw2_scaled_action(Q));
        assert!(!r.passed());
        let hom = r.find("homomorphism").unwrap();
        assert!(!hom.passed);
        assert!(hom.locus.as_ref().unwrap().contains("(s,s)"));
    }

    #[test]
    fn trivial_gcategory_examples() {
        let pt = Arc::new(fixtures::point_category(Q));
        let c = trivial_gcategory(pt.clone(), Arc::new(FinGroup::cyclic(2)));
        assert_eq!(c, fixtures::pt2(Q));
        let ga = Arc::new(fixtures::group_algebra_c2_category(Q));
        assert!(validate_action(&trivial_gcategory(ga, Arc::new(FinGroup::cyclic(2)))).passed());
        let one = trivial_gcategory(pt.clone(), Arc::new(FinGroup::trivial()));
        assert_eq!(one.base().as_ref(), pt.as_ref());
    }

    fn pt2_identity_with(rho_s: i64) -> EquivFunctor {
        let c = Arc::new(fixtures::pt2(Q));
        let id = LinFunctor::identity(c.base());
        let comp = c.base().identity(0).scale(&Scalar::from_i64(Q, rho_s));
        EquivFunctor::from_components(
            c.clone(),
            c.clone(),
            id,
            vec![vec![c.base().identity(0)], vec![comp]],
        )
        .unwrap()
    }

    #[test]
    fn sign_adjuster_is_a_cocycle() {
        // (-1)(-1) = 1 = rho_1, so the sign character satisfies the cocycle
        assert!(validate_equivariant(&pt2_identity_with(-1)).passed());
    }

    #[test]
    fn doubled_adjuster_breaks_cocycle() {
        let r = validate_equivariant(&pt2_identity_with(2));
        let co = r.find("cocycle").unwrap();
        assert!(!co.passed);
        assert!(co.locus.as_ref().unwrap().contains("(s,s)"));
    }

    #[test]
    fn valid_adjusters_have_trivial_unit() {
        let f = fixtures::sw2_nonstrict(Q);
        assert!(validate_equivariant(&f).passed());
        assert!(f.rho(0).is_identity());
        assert!(!f.is_strict());
    }

    #[test]
    fn composition_of_equivariant_functors() {
        let c = Arc::new(fixtures::sw2(Q));
        let id = EquivFunctor::identity(&c);
        let ns = fixtures::sw2_nonstrict(Q);
        let swap = fixtures::sw2_swap(Q);
        assert_eq!(compose_equivariant(&id, &ns).unwrap(), ns);
        assert!(compose_equivariant(&swap, &swap).unwrap().is_strict());
        let left = compose_equivariant(&compose_equivariant(&ns, &swap).unwrap(), &ns).unwrap();
        let right = compose_equivariant(&ns, &compose_equivariant(&swap, &ns).unwrap()).unwrap();
        assert_eq!(left, right);
        assert!(validate_equivariant(&left).passed());
    }

    #[test]
    fn equiv_morphism_squares() {
        let ns = fixtures::sw2_nonstrict(Q);
        assert!(validate_equiv_morphism(&EquivMorphism::identity(&ns)).passed());
        let swap = fixtures::sw2_swap(Q);
        let scaled = fixtures::scalar_two_cell(&swap, Scalar::from_i64(Q, 3));
        assert!(validate_equiv_morphism(&scaled).passed());
        // components (1, 2) on SW2 are natural but break the square at a = s
        let c = ns.cod().base().clone();
        let eta = NatTrans::new(
            ns.functor().clone(),
            ns.functor().clone(),
            vec![c.identity(0), c.identity(1).scale(&Scalar::from_i64(Q, 2))],
        )
        .unwrap();
        let broken = EquivMorphism::new(ns.clone(), ns.clone(), eta).unwrap();
        let r = validate_equiv_morphism(&broken);
        assert!(!r.passed());
        assert!(r
            .first_failure()
            .unwrap()
            .locus
            .as_ref()
            .unwrap()
            .starts_with("a = s"));
    }
}

//! G-graded categories with homogeneous hom bases, degree-preserving
//! functors with degree adjusters, and their morphisms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gcat::{same_group, FinGroup};
use crate::lincat::{
    compose_functors, functor_equal, nt_horizontal, nt_vertical, same_cat, validate_functor,
    LinCat, LinFunctor, Morphism, NatTrans,
};
use crate::report::VerificationReport;

/// A linear category whose hom bases are homogeneous: every basis vector
/// carries one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCat {
    base: Arc<LinCat>,
    group: Arc<FinGroup>,
    // deg[x*n + y][i] is the degree of the i-th basis vector of hom(x,y)
    deg: Vec<Vec<usize>>,
}

impl GradedCat {
    /// `deg[x*n + y][i]` is the degree of basis vector `i` of hom(x,y).
    pub fn new(base: Arc<LinCat>, group: Arc<FinGroup>, deg: Vec<Vec<usize>>) -> Result<Self> {
        let n = base.num_objects();
        if deg.len() != n * n {
            return Err(Error::malformed(
                "grading",
                "one degree list per object pair",
            ));
        }
        for x in 0..n {
            for y in 0..n {
                let d = &deg[x * n + y];
                if d.len() != base.dim(x, y) {
                    return Err(Error::malformed(
                        "grading",
                        format!(
                            "hom({},{}) needs {} degrees",
                            base.object_name(x),
                            base.object_name(y),
                            base.dim(x, y)
                        ),
                    ));
                }
                if let Some(&bad) = d.iter().find(|&&a| a >= group.order()) {
                    return Err(Error::malformed(
                        "grading",
                        format!("degree index {bad} out of range"),
                    ));
                }
            }
        }
        Ok(GradedCat { base, group, deg })
    }

    /// Every basis vector in degree 1.
    pub fn trivial(base: Arc<LinCat>, group: Arc<FinGroup>) -> Self {
        let n = base.num_objects();
        let deg = (0..n * n)
            .map(|k| vec![0; base.dim(k / n, k % n)])
            .collect();
        GradedCat { base, group, deg }
    }

    pub fn base(&self) -> &Arc<LinCat> {
        &self.base
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    pub fn deg(&self, x: usize, y: usize, i: usize) -> usize {
        self.deg[x * self.base.num_objects() + y][i]
    }

    pub fn degrees(&self, x: usize, y: usize) -> &[usize] {
        &self.deg[x * self.base.num_objects() + y]
    }

    /// Whether `f` lies in the degree-`a` component.
    pub fn in_degree(&self, f: &Morphism, a: usize) -> bool {
        f.coeffs
            .iter()
            .zip(self.degrees(f.src, f.tgt))
            .all(|(c, &d)| c.is_zero() || d == a)
    }

    /// The degree of a nonzero homogeneous morphism.
    pub fn degree_of(&self, f: &Morphism) -> Option<usize> {
        let mut found = None;
        for (c, &d) in f.coeffs.iter().zip(self.degrees(f.src, f.tgt)) {
            if c.is_zero() {
                continue;
            }
            match found {
                None => found = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        found
    }

    /// Basis positions of hom(x,y) in degree `a`, in basis order.
    pub fn component_indices(&self, x: usize, y: usize, a: usize) -> Vec<usize> {
        self.degrees(x, y)
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d == a)
            .map(|(i, _)| i)
            .collect()
    }
}

pub(crate) fn same_graded(a: &Arc<GradedCat>, b: &Arc<GradedCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Checks that identities sit in degree 1 and that composition is
/// homogeneous: `deg(g . f) = deg g * deg f` on basis pairs.
pub fn validate_grading(b: &GradedCat) -> VerificationReport {
    let c = &b.base;
    let g = &b.group;
    let n = c.num_objects();
    let mut report = VerificationReport::new();
    let id_fail = (0..n).find(|&x| !b.in_degree(&c.identity(x), 0));
    report.record(
        "identities-degree-one",
        id_fail.map_or(Ok(()), |x| {
            Err(format!("id_{} is not of degree 1", c.object_name(x)))
        }),
    );
    let mut comp_fail = None;
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for i in 0..c.dim(x, y) {
                    for j in 0..c.dim(y, z) {
                        let want = g.mul(b.deg(y, z, j), b.deg(x, y, i));
                        let gf = Morphism {
                            src: x,
                            tgt: z,
                            coeffs: c.comp_entry(x, y, z, j, i).to_vec(),
                        };
                        if !b.in_degree(&gf, want) {
                            comp_fail = Some(format!(
                                "{} . {} leaves degree {}",
                                c.basis(y, z)[j],
                                c.basis(x, y)[i],
                                g.name(want)
                            ));
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    report.record("homogeneous-composition", comp_fail.map_or(Ok(()), Err));
    report
}

/// A degree-preserving functor `(H, r)`: a basis vector of degree `d` in
/// B(x,y) is sent into degree `r_y^{-1} d r_x`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegFunctor {
    dom: Arc<GradedCat>,
    cod: Arc<GradedCat>,
    functor: LinFunctor,
    r: Vec<usize>,
}

impl DegFunctor {
    /// Checks boundaries only; see [`validate_deg_functor`].
    pub fn new(
        dom: Arc<GradedCat>,
        cod: Arc<GradedCat>,
        functor: LinFunctor,
        r: Vec<usize>,
    ) -> Result<Self> {
        if !same_cat(functor.dom(), &dom.base) || !same_cat(functor.cod(), &cod.base) {
            return Err(Error::Boundary(
                "degree-preserving functor boundaries do not match".into(),
            ));
        }
        if !same_group(&dom.group, &cod.group) {
            return Err(Error::Boundary("gradings by different groups".into()));
        }
        if r.len() != dom.base.num_objects() || r.iter().any(|&a| a >= dom.group.order()) {
            return Err(Error::malformed(
                "degree adjuster",
                "one group element per object",
            ));
        }
        Ok(DegFunctor {
            dom,
            cod,
            functor,
            r,
        })
    }

    /// `(H, 1)`.
    pub fn strict(dom: Arc<GradedCat>, cod: Arc<GradedCat>, functor: LinFunctor) -> Result<Self> {
        let r = vec![0; dom.base.num_objects()];
        DegFunctor::new(dom, cod, functor, r)
    }

    pub fn identity(b: &Arc<GradedCat>) -> Self {
        DegFunctor::strict(b.clone(), b.clone(), LinFunctor::identity(&b.base))
            .expect("identity is well formed")
    }

    pub fn dom(&self) -> &Arc<GradedCat> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<GradedCat> {
        &self.cod
    }

    pub fn functor(&self) -> &LinFunctor {
        &self.functor
    }

    pub fn r(&self, x: usize) -> usize {
        self.r[x]
    }

    pub fn adjuster(&self) -> &[usize] {
        &self.r
    }

    pub fn is_strict(&self) -> bool {
        self.r.iter().all(|&a| a == 0)
    }
}

/// Support check of the degree condition on every basis vector.
pub fn validate_deg_functor(f: &DegFunctor) -> VerificationReport {
    let g = &f.dom.group;
    let c = &f.dom.base;
    let n = c.num_objects();
    let mut report = VerificationReport::new();
    report.absorb("functor", validate_functor(&f.functor));
    let mut fail = None;
    'outer: for x in 0..n {
        for y in 0..n {
            for i in 0..c.dim(x, y) {
                let d = f.dom.deg(x, y, i);
                let want = g.mul(g.mul(g.inv(f.r[y]), d), f.r[x]);
                let image = f.functor.apply(&c.basis_morphism(x, y, i));
                if !f.cod.in_degree(&image, want) {
                    fail = Some(format!(
                        "({},{}) basis {} of degree {} not sent into degree {}",
                        c.object_name(x),
                        c.object_name(y),
                        c.basis(x, y)[i],
                        g.name(d),
                        g.name(want)
                    ));
                    break 'outer;
                }
            }
        }
    }
    report.record("degree-preserving", fail.map_or(Ok(()), Err));
    report
}

/// `(H', r')(H, r) = (H'H, x -> r_x r'_{Hx})`.
pub fn compose_deg_functors(f2: &DegFunctor, f1: &DegFunctor) -> Result<DegFunctor> {
    if !same_graded(&f1.cod, &f2.dom) {
        return Err(Error::Boundary("graded functors are not composable".into()));
    }
    let g = &f1.dom.group;
    let functor = compose_functors(&f2.functor, &f1.functor)?;
    let r = (0..f1.dom.base.num_objects())
        .map(|x| g.mul(f1.r[x], f2.r[f1.functor.obj(x)]))
        .collect();
    DegFunctor::new(f1.dom.clone(), f2.cod.clone(), functor, r)
}

/// A morphism `theta: (H, r) -> (I, s)` of degree-preserving functors.
#[derive(Debug, Clone, PartialEq)]
pub struct DegMorphism {
    src: DegFunctor,
    tgt: DegFunctor,
    theta: NatTrans,
}

impl DegMorphism {
    pub fn new(src: DegFunctor, tgt: DegFunctor, theta: NatTrans) -> Result<Self> {
        if !same_graded(&src.dom, &tgt.dom) || !same_graded(&src.cod, &tgt.cod) {
            return Err(Error::Boundary(
                "morphism between non-parallel graded functors".into(),
            ));
        }
        if !functor_equal(theta.src(), &src.functor) || !functor_equal(theta.tgt(), &tgt.functor) {
            return Err(Error::Boundary(
                "transformation does not match the graded functors".into(),
            ));
        }
        Ok(DegMorphism { src, tgt, theta })
    }

    pub fn identity(f: &DegFunctor) -> Self {
        DegMorphism {
            src: f.clone(),
            tgt: f.clone(),
            theta: NatTrans::identity(&f.functor),
        }
    }

    pub fn src(&self) -> &DegFunctor {
        &self.src
    }

    pub fn tgt(&self) -> &DegFunctor {
        &self.tgt
    }

    pub fn theta(&self) -> &NatTrans {
        &self.theta
    }
}

/// `theta_x` lies in degree `s_x^{-1} r_x`.
pub fn validate_deg_morphism(m: &DegMorphism) -> VerificationReport {
    let g = &m.src.dom.group;
    let c = &m.src.dom.base;
    let fail = (0..c.num_objects()).find(|&x| {
        let want = g.mul(g.inv(m.tgt.r[x]), m.src.r[x]);
        !m.src.cod.in_degree(m.theta.component(x), want)
    });
    let mut report = VerificationReport::new();
    report.record(
        "homogeneous-components",
        fail.map_or(Ok(()), |x| {
            let want = g.mul(g.inv(m.tgt.r[x]), m.src.r[x]);
            Err(format!(
                "component at {} is not of degree {}",
                c.object_name(x),
                g.name(want)
            ))
        }),
    );
    report
}

/// `b . a` for `a: H -> I` and `b: I -> J`.
pub fn deg_vertical(b: &DegMorphism, a: &DegMorphism) -> Result<DegMorphism> {
    if a.tgt != b.src {
        return Err(Error::Boundary(
            "vertical composite needs a.tgt = b.src".into(),
        ));
    }
    DegMorphism::new(
        a.src.clone(),
        b.tgt.clone(),
        nt_vertical(&b.theta, &a.theta)?,
    )
}

/// `b * a` for `a: H -> I` and `b: H' -> I'` with `H'` after `H`.
pub fn deg_horizontal(b: &DegMorphism, a: &DegMorphism) -> Result<DegMorphism> {
    let src = compose_deg_functors(&b.src, &a.src)?;
    let tgt = compose_deg_functors(&b.tgt, &a.tgt)?;
    DegMorphism::new(src, tgt, nt_horizontal(&b.theta, &a.theta)?)
}

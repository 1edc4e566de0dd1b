//! The orbit category `C/G` in sum form, its matrix and right-sum views,
//! the canonical covering `(P, psi)` and factorization through it.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{mat_inverse, mat_mul, Scalar};
use crate::gcat::{same_gcat, validate_action, GCategory};
use crate::ginv::{
    compose_with_functor, density_gap, f1_map, is_covering, DensityWitness, InvFunctor, InvMorphism,
};
use crate::graded::GradedCat;
use crate::lincat::{LinCat, LinFunctor, Morphism, NatTrans};
use crate::report::VerificationReport;

/// `C/G` with hom(x,y) the concatenation over `a` of the bases of
/// C(A_a x, y); block `a` has degree `a`.
#[derive(Debug, Clone)]
pub struct OrbitCat {
    source: Arc<GCategory>,
    carrier: Arc<GradedCat>,
    p: InvFunctor,
    // offsets[x*n + y][a] = first carrier position of block a; last entry is the total
    offsets: Vec<Vec<usize>>,
}

impl OrbitCat {
    pub fn source(&self) -> &Arc<GCategory> {
        &self.source
    }

    pub fn carrier(&self) -> &Arc<GradedCat> {
        &self.carrier
    }

    /// The underlying linear category of the carrier.
    pub fn category(&self) -> &Arc<LinCat> {
        self.carrier.base()
    }

    /// The canonical covering `(P, psi)`.
    pub fn p(&self) -> &InvFunctor {
        &self.p
    }

    fn n(&self) -> usize {
        self.source.base().num_objects()
    }

    /// Carrier position of basis vector `i` of C(A_a x, y).
    pub fn block_index(&self, x: usize, y: usize, a: usize, i: usize) -> usize {
        self.offsets[x * self.n() + y][a] + i
    }

    /// Inverse of [`OrbitCat::block_index`].
    pub fn block_of(&self, x: usize, y: usize, pos: usize) -> (usize, usize) {
        let offs = &self.offsets[x * self.n() + y];
        let a = offs.partition_point(|&o| o <= pos) - 1;
        (a, pos - offs[a])
    }

    /// The whole `(a, i) -> position` table for hom(x,y).
    pub fn block_table(&self, x: usize, y: usize) -> Vec<(usize, usize)> {
        let total = *self.offsets[x * self.n() + y].last().unwrap();
        (0..total).map(|pos| self.block_of(x, y, pos)).collect()
    }

    /// Component `f_a` in C(A_a x, y).
    pub fn block(&self, f: &Morphism, a: usize) -> Morphism {
        let offs = &self.offsets[f.src * self.n() + f.tgt];
        Morphism {
            src: self.source.act_obj(a, f.src),
            tgt: f.tgt,
            coeffs: f.coeffs[offs[a]..offs[a + 1]].to_vec(),
        }
    }

    /// Assembles a carrier morphism `x -> y` from its components.
    pub fn from_blocks(&self, x: usize, y: usize, blocks: &[Morphism]) -> Morphism {
        let coeffs = blocks
            .iter()
            .flat_map(|b| b.coeffs.iter().cloned())
            .collect();
        Morphism {
            src: x,
            tgt: y,
            coeffs,
        }
    }

    /// `psi_c x: Px -> P A_c x`, the identity of `A_c x` in block `c`.
    pub fn psi(&self, c: usize, x: usize) -> Morphism {
        self.p.phi(c).component(x).clone()
    }
}

/// Builds the sum-form orbit category. The action must be valid.
pub fn orbit_category(c: &Arc<GCategory>) -> Result<OrbitCat> {
    let action = validate_action(c);
    if let Some(f) = action.first_failure() {
        return Err(Error::Validation {
            module: "gcat",
            locus: format!("{}: {}", f.name, f.locus.clone().unwrap_or_default()),
        });
    }
    let base = c.base();
    let g = c.group();
    let ring = base.ring();
    let n = base.num_objects();
    let ord = g.order();

    let mut offsets = Vec::with_capacity(n * n);
    let mut basis = Vec::with_capacity(n * n);
    let mut deg = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let mut offs = vec![0];
            let mut labels = Vec::new();
            let mut d = Vec::new();
            for a in 0..ord {
                for l in base.basis(c.act_obj(a, x), y) {
                    labels.push(format!("{l}[{}]", g.name(a)));
                    d.push(a);
                }
                offs.push(labels.len());
            }
            offsets.push(offs);
            basis.push(labels);
            deg.push(d);
        }
    }
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let dim = |x: usize, y: usize| dims[x * n + y];

    let identity: Vec<Vec<Scalar>> = (0..n)
        .map(|x| {
            let mut v = vec![Scalar::zero(ring); dim(x, x)];
            let id = base.identity_coeffs(x);
            v[..id.len()].clone_from_slice(id);
            v
        })
        .collect();

    // (gf)_mu = sum over b a = mu of g_b . A_b(f_a)
    let mut comp = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (dxy, dyz, dxz) = (dim(x, y), dim(y, z), dim(x, z));
                let mut t = vec![Scalar::zero(ring); dyz * dxy * dxz];
                for a in 0..ord {
                    let ax = c.act_obj(a, x);
                    for i in 0..base.dim(ax, y) {
                        let f = base.basis_morphism(ax, y, i);
                        for b in 0..ord {
                            let bf = c.act(b, &f);
                            let by = c.act_obj(b, y);
                            let mu = g.mul(b, a);
                            debug_assert_eq!(bf.src, c.act_obj(mu, x));
                            for j in 0..base.dim(by, z) {
                                let gj = base.basis_morphism(by, z, j);
                                let prod =
                                    base.compose_coeffs(bf.src, by, z, &gj.coeffs, &bf.coeffs);
                                let jj = offsets[y * n + z][b] + j;
                                let ii = offsets[x * n + y][a] + i;
                                let off = (jj * dxy + ii) * dxz + offsets[x * n + z][mu];
                                t[off..off + prod.len()].clone_from_slice(&prod);
                            }
                        }
                    }
                }
                comp.push(t);
            }
        }
    }

    let carrier_base = Arc::new(LinCat::from_parts(
        ring,
        base.objects().to_vec(),
        basis,
        identity,
        comp,
    )?);
    let carrier = Arc::new(GradedCat::new(carrier_base.clone(), g.clone(), deg)?);

    let p_functor = LinFunctor::from_fn(
        base.clone(),
        carrier_base.clone(),
        (0..n).collect(),
        |x, y| {
            let mut m = crate::exactlin::Mat::zeros(ring, dim(x, y), base.dim(x, y));
            for i in 0..base.dim(x, y) {
                m.set(i, i, Scalar::one(ring));
            }
            m
        },
    )?;
    let psi: Vec<Vec<Morphism>> = (0..ord)
        .map(|cc| {
            (0..n)
                .map(|x| {
                    let cx = c.act_obj(cc, x);
                    let mut v = vec![Scalar::zero(ring); dim(x, cx)];
                    let off = offsets[x * n + cx][cc];
                    let id = base.identity_coeffs(cx);
                    v[off..off + id.len()].clone_from_slice(id);
                    Morphism {
                        src: x,
                        tgt: cx,
                        coeffs: v,
                    }
                })
                .collect()
        })
        .collect();
    let p = InvFunctor::from_components(c.clone(), carrier_base, p_functor, psi)?;
    Ok(OrbitCat {
        source: c.clone(),
        carrier,
        p,
        offsets,
    })
}

/// The matrix presentation `(f_{b,a})` with `f_{b,a}` in C(A_a x, A_b y).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixForm {
    pub src: usize,
    pub tgt: usize,
    order: usize,
    // entries[b*order + a] = f_{b,a}
    entries: Vec<Morphism>,
}

impl MatrixForm {
    pub fn entry(&self, b: usize, a: usize) -> &Morphism {
        &self.entries[b * self.order + a]
    }
}

/// `f_{b,a} = A_b f_{b^{-1} a}`.
pub fn to_matrix_form(o: &OrbitCat, f: &Morphism) -> MatrixForm {
    let c = &o.source;
    let g = c.group();
    let ord = g.order();
    let mut entries = Vec::with_capacity(ord * ord);
    for b in 0..ord {
        for a in 0..ord {
            entries.push(c.act(b, &o.block(f, g.mul(g.inv(b), a))));
        }
    }
    MatrixForm {
        src: f.src,
        tgt: f.tgt,
        order: ord,
        entries,
    }
}

/// Reads off row `b = 1`.
pub fn from_matrix_form(o: &OrbitCat, m: &MatrixForm) -> Morphism {
    let blocks: Vec<Morphism> = (0..m.order).map(|a| m.entry(0, a).clone()).collect();
    o.from_blocks(m.src, m.tgt, &blocks)
}

/// Matrix forms of every carrier basis vector of hom(x,y).
pub fn matrix_form_hom(o: &OrbitCat, x: usize, y: usize) -> Vec<MatrixForm> {
    (0..o.category().dim(x, y))
        .map(|i| to_matrix_form(o, &o.category().basis_morphism(x, y, i)))
        .collect()
}

/// `f_{cb,ca} = A_c f_{b,a}` for all `a, b, c`.
pub fn satisfies_matrix_identities(o: &OrbitCat, m: &MatrixForm) -> bool {
    let c = &o.source;
    let g = c.group();
    g.elements().all(|cc| {
        g.elements().all(|b| {
            g.elements()
                .all(|a| *m.entry(g.mul(cc, b), g.mul(cc, a)) == c.act(cc, m.entry(b, a)))
        })
    })
}

/// `(gf)_{b,a} = sum_c g_{b,c} f_{c,a}`.
pub fn matrix_compose(o: &OrbitCat, g: &MatrixForm, f: &MatrixForm) -> MatrixForm {
    let base = o.source.base();
    let ord = f.order;
    let mut entries = Vec::with_capacity(ord * ord);
    for b in 0..ord {
        for a in 0..ord {
            let src = f.entry(0, a).src;
            let tgt = g.entry(b, 0).tgt;
            let mut acc = base.zero(src, tgt);
            for c in 0..ord {
                acc = acc.add(&base.compose_unchecked(g.entry(b, c), f.entry(c, a)));
            }
            entries.push(acc);
        }
    }
    MatrixForm {
        src: f.src,
        tgt: g.tgt,
        order: ord,
        entries,
    }
}

/// `id_x = (delta_{a,b} id_{A_a x})`.
pub fn matrix_identity(o: &OrbitCat, x: usize) -> MatrixForm {
    let c = &o.source;
    let base = c.base();
    let ord = c.group().order();
    let mut entries = Vec::with_capacity(ord * ord);
    for b in 0..ord {
        for a in 0..ord {
            let (ax, bx) = (c.act_obj(a, x), c.act_obj(b, x));
            entries.push(if a == b {
                base.identity(ax)
            } else {
                base.zero(ax, bx)
            });
        }
    }
    MatrixForm {
        src: x,
        tgt: x,
        order: ord,
        entries,
    }
}

/// A morphism of the right-sum form: components `f_b` in C(x, A_b y).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightSum {
    pub src: usize,
    pub tgt: usize,
    pub blocks: Vec<Morphism>,
}

/// `f^(2)_b = A_b f_{b^{-1}}`.
pub fn to_orbit2(o: &OrbitCat, f: &Morphism) -> RightSum {
    let c = &o.source;
    let g = c.group();
    let blocks = g
        .elements()
        .map(|b| c.act(b, &o.block(f, g.inv(b))))
        .collect();
    RightSum {
        src: f.src,
        tgt: f.tgt,
        blocks,
    }
}

/// `f_a = A_a f^(2)_{a^{-1}}`.
pub fn from_orbit2(o: &OrbitCat, f: &RightSum) -> Morphism {
    let c = &o.source;
    let g = c.group();
    let blocks: Vec<Morphism> = g
        .elements()
        .map(|a| c.act(a, &f.blocks[g.inv(a)]))
        .collect();
    o.from_blocks(f.src, f.tgt, &blocks)
}

/// `(gf)_mu = sum over a b = mu of A_a(g_b) . f_a`.
pub fn orbit2_compose(o: &OrbitCat, g2: &RightSum, f2: &RightSum) -> RightSum {
    let c = &o.source;
    let grp = c.group();
    let base = c.base();
    let blocks = grp
        .elements()
        .map(|mu| {
            let mut acc = base.zero(f2.src, c.act_obj(mu, g2.tgt));
            for a in grp.elements() {
                let b = grp.mul(grp.inv(a), mu);
                let agb = c.act(a, &g2.blocks[b]);
                acc = acc.add(&base.compose_unchecked(&agb, &f2.blocks[a]));
            }
            acc
        })
        .collect();
    RightSum {
        src: f2.src,
        tgt: g2.tgt,
        blocks,
    }
}

/// Round trips between the three presentations are identities, the
/// matrix identities hold, and both translations respect composition and
/// identities on all basis pairs.
pub fn orbit2_iso(o: &OrbitCat) -> VerificationReport {
    let cat = o.category();
    let n = cat.num_objects();
    let mut report = VerificationReport::new();

    let mut round = None;
    let mut shape = None;
    for x in 0..n {
        for y in 0..n {
            for i in 0..cat.dim(x, y) {
                let f = cat.basis_morphism(x, y, i);
                let m = to_matrix_form(o, &f);
                if shape.is_none() && !satisfies_matrix_identities(o, &m) {
                    shape = Some(format!(
                        "f_(cb,ca) != A_c f_(b,a) for {}",
                        cat.basis(x, y)[i]
                    ));
                }
                if round.is_none()
                    && (from_matrix_form(o, &m) != f || from_orbit2(o, &to_orbit2(o, &f)) != f)
                {
                    round = Some(format!("round trip moves {}", cat.basis(x, y)[i]));
                }
            }
        }
    }
    report.record("matrix-identities", shape.map_or(Ok(()), Err));
    report.record("round-trip", round.map_or(Ok(()), Err));

    let id_fail = (0..n).find(|&x| {
        let id = cat.identity(x);
        to_matrix_form(o, &id) != matrix_identity(o, x)
    });
    report.record(
        "identity",
        id_fail.map_or(Ok(()), |x| {
            Err(format!(
                "identity of {} is not diagonal",
                cat.object_name(x)
            ))
        }),
    );

    let mut comp_fail = None;
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for i in 0..cat.dim(x, y) {
                    let f = cat.basis_morphism(x, y, i);
                    let (fm, f2) = (to_matrix_form(o, &f), to_orbit2(o, &f));
                    for j in 0..cat.dim(y, z) {
                        let g = cat.basis_morphism(y, z, j);
                        let gf = cat.compose_unchecked(&g, &f);
                        let via_matrix = matrix_compose(o, &to_matrix_form(o, &g), &fm)
                            == to_matrix_form(o, &gf);
                        let via_right =
                            orbit2_compose(o, &to_orbit2(o, &g), &f2) == to_orbit2(o, &gf);
                        if !via_matrix || !via_right {
                            let which = if via_matrix { "right-sum" } else { "matrix" };
                            comp_fail = Some(format!(
                                "{which} form: {} . {}",
                                cat.basis(y, z)[j],
                                cat.basis(x, y)[i]
                            ));
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    report.record("composition", comp_fail.map_or(Ok(()), Err));
    report
}

/// The unique `H` with `H(P, psi) = (F, phi)`: `H(Px) = Fx` and
/// `H_{x,y} = F^(1)_{x,y} (P^(1)_{x,y})^{-1}`.
#[allow(non_snake_case)]
pub fn factorize_through_P(o: &OrbitCat, f: &InvFunctor) -> Result<LinFunctor> {
    if !same_gcat(f.dom(), &o.source) {
        return Err(Error::Boundary(
            "invariant functor does not start at the orbit source".into(),
        ));
    }
    let h = LinFunctor::new(
        o.category().clone(),
        f.cod().clone(),
        f.functor().obj_map().to_vec(),
        {
            let n = o.n();
            let mut mats = Vec::with_capacity(n * n);
            for x in 0..n {
                for y in 0..n {
                    let p1 = mat_inverse(&f1_map(&o.p, x, y))?;
                    mats.push(mat_mul(&f1_map(f, x, y), &p1)?);
                }
            }
            mats
        },
    )?;
    if compose_with_functor(&h, &o.p)? != *f {
        return Err(Error::Validation {
            module: "orbit",
            locus: "H(P, psi) differs from the given invariant functor".into(),
        });
    }
    Ok(h)
}

/// `(P, psi)^*(H) = H(P, psi)`.
pub fn pstar(o: &OrbitCat, h: &LinFunctor) -> Result<InvFunctor> {
    compose_with_functor(h, &o.p)
}

/// The transformation `kappa: H -> H'` with `kappa_{Px} = eta_x`, where
/// `H`, `H'` factor the ends of `eta` through `P`.
pub fn pstar_inv_on_2cell(o: &OrbitCat, eta: &InvMorphism) -> Result<NatTrans> {
    let h = factorize_through_P(o, eta.src())?;
    let h2 = factorize_through_P(o, eta.tgt())?;
    NatTrans::new(h, h2, eta.eta().components().to_vec())
}

/// Verdicts of condition (covering) and condition (factors through `P`
/// by an equivalence) for one invariant functor.
#[derive(Debug, Clone)]
pub struct Characterization {
    pub covering: VerificationReport,
    pub equivalence: VerificationReport,
}

impl Characterization {
    pub fn agrees(&self) -> bool {
        self.covering.passed() == self.equivalence.passed()
    }

    pub fn report(&self) -> VerificationReport {
        let mut r = VerificationReport::new();
        r.record(
            "covering-iff-equivalence",
            if self.agrees() {
                Ok(())
            } else {
                Err(format!(
                    "covering = {}, equivalence = {}",
                    self.covering.passed(),
                    self.equivalence.passed()
                ))
            },
        );
        r
    }
}

pub fn check_covering_characterization(
    o: &OrbitCat,
    f: &InvFunctor,
    witnesses: &[DensityWitness],
) -> Result<Characterization> {
    let covering = is_covering(f, witnesses)?;
    let mut equivalence = VerificationReport::new();
    match factorize_through_P(o, f) {
        Ok(h) => {
            equivalence.pass("factorization");
            let cat = o.category();
            let n = cat.num_objects();
            let ff = (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .find(|&(x, y)| !h.mat(x, y).is_invertible());
            equivalence.record(
                "fully-faithful",
                ff.map_or(Ok(()), |(x, y)| {
                    Err(format!(
                        "H not bijective on hom({},{})",
                        cat.object_name(x),
                        cat.object_name(y)
                    ))
                }),
            );
            let gap = density_gap(&h, witnesses)?;
            equivalence.record(
                "dense",
                gap.map_or(Ok(()), |y| {
                    Err(format!(
                        "density: no image object isomorphic to {}",
                        f.cod().object_name(y)
                    ))
                }),
            );
        }
        Err(e) => equivalence.fail("factorization", e.to_string()),
    }
    Ok(Characterization {
        covering,
        equivalence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::RingSpec;
    use crate::fixtures;
    use crate::ginv::validate_invariant;
    use crate::graded::validate_grading;
    use crate::lincat::{functor_equal, validate_category};

    const Q: RingSpec = RingSpec::Rationals;

    #[test]
    fn trivial_group_keeps_dimensions() {
        let c = Arc::new(fixtures::tg1(Q));
        let o = orbit_category(&c).unwrap();
        assert_eq!(o.category().dim(0, 0), 1);
        assert!(o.p().functor().is_fully_faithful());
    }

    #[test]
    fn point_with_trivial_c2_action_gives_group_algebra() {
        let c = Arc::new(fixtures::pt2(Q));
        let o = orbit_category(&c).unwrap();
        let cat = o.category();
        assert_eq!(cat.dim(0, 0), 2);
        assert_eq!(o.carrier().degrees(0, 0), &[0, 1]);
        // u_s . u_s = u_1, computed by hand from the block formula
        let us = cat.basis_morphism(0, 0, 1);
        assert_eq!(cat.compose(&us, &us).unwrap(), cat.basis_morphism(0, 0, 0));
        assert!(validate_category(cat).passed());
        assert!(validate_grading(o.carrier()).passed());
    }

    #[test]
    fn swap_makes_objects_isomorphic() {
        let c = Arc::new(fixtures::sw2(Q));
        let o = orbit_category(&c).unwrap();
        let cat = o.category();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(cat.dim(x, y), 1);
            }
        }
        assert!(cat.is_iso(&o.psi(1, 0)));
    }

    #[test]
    fn block_table_round_trips() {
        let c = Arc::new(fixtures::cy3(Q));
        let o = orbit_category(&c).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                for (pos, (a, i)) in o.block_table(x, y).into_iter().enumerate() {
                    assert_eq!(o.block_index(x, y, a, i), pos);
                }
            }
        }
    }

    #[test]
    fn matrix_form_of_us_on_pt2() {
        let c = Arc::new(fixtures::pt2(Q));
        let o = orbit_category(&c).unwrap();
        let m = &matrix_form_hom(&o, 0, 0)[1];
        let g = c.group();
        for b in g.elements() {
            for a in g.elements() {
                assert_eq!(!m.entry(b, a).is_zero(), a == g.mul(b, 1));
            }
        }
    }

    #[test]
    fn orbit_forms_agree() {
        for c in [
            fixtures::pt2(Q),
            fixtures::sw2(Q),
            fixtures::cy3(Q),
            fixtures::perm_s3(Q),
        ] {
            let o = orbit_category(&Arc::new(c)).unwrap();
            let r = orbit2_iso(&o);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn factorizing_p_gives_identity() {
        let c = Arc::new(fixtures::sw2(Q));
        let o = orbit_category(&c).unwrap();
        let h = factorize_through_P(&o, o.p()).unwrap();
        assert!(functor_equal(&h, &LinFunctor::identity(o.category())));
        assert_eq!(pstar(&o, &h).unwrap(), *o.p());
        let kappa = pstar_inv_on_2cell(&o, &InvMorphism::identity(o.p())).unwrap();
        assert!(kappa.is_identity());
    }

    #[test]
    fn canonical_covering_characterized() {
        let c = Arc::new(fixtures::sw2(Q));
        let o = orbit_category(&c).unwrap();
        assert!(validate_invariant(o.p()).passed());
        let ch = check_covering_characterization(&o, o.p(), &[]).unwrap();
        assert!(ch.covering.passed() && ch.equivalence.passed());
    }

    #[test]
    fn non_dense_fails_both_conditions() {
        let f = fixtures::sw2_point_inclusion(Q);
        let o = orbit_category(f.dom()).unwrap();
        let ch = check_covering_characterization(&o, &f, &[]).unwrap();
        assert!(!ch.covering.passed() && !ch.equivalence.passed());
        assert!(ch.agrees());
    }

    #[test]
    fn invalid_action_rejected() {
        let c = Arc::new(fixtures::sw2_scaled_action(Q));
        assert!(matches!(orbit_category(&c), Err(Error::Validation { .. })));
    }
}

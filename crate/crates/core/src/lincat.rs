//! Finite k-linear categories presented by hom bases and composition
//! structure constants, together with functors and natural transformations.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{add_product, mat_mul, Mat, RingSpec, Scalar};
use crate::report::VerificationReport;

/// A finite k-linear category. Objects are indexed `0..n`; every hom space
/// is free with an ordered basis, and composition is stored as a structure
/// constant tensor per object triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinCat {
    ring: RingSpec,
    objects: Vec<String>,
    basis: Vec<Vec<String>>,
    identity: Vec<Vec<Scalar>>,
    // comp[(x*n + y)*n + z] holds, for basis g_j of hom(y,z) and f_i of
    // hom(x,y), the coordinates of g_j . f_i at offset (j*dim(x,y) + i)*dim(x,z).
    comp: Vec<Vec<Scalar>>,
}

/// A morphism `src -> tgt`, given by its coordinates in the hom basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub src: usize,
    pub tgt: usize,
    pub coeffs: Vec<Scalar>,
}

impl Morphism {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        Morphism {
            src: self.src,
            tgt: self.tgt,
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        assert_eq!((self.src, self.tgt), (other.src, other.tgt));
        Morphism {
            src: self.src,
            tgt: self.tgt,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Incremental construction of a [`LinCat`]. Composites not set explicitly
/// are zero.
#[derive(Debug, Clone)]
pub struct LinCatBuilder {
    ring: RingSpec,
    objects: Vec<String>,
    basis: BTreeMap<(usize, usize), Vec<String>>,
    identity: BTreeMap<usize, Vec<Scalar>>,
    comp: BTreeMap<(usize, usize, usize, usize, usize), Vec<Scalar>>,
}

impl LinCatBuilder {
    pub fn new(ring: RingSpec) -> Self {
        LinCatBuilder {
            ring,
            objects: Vec::new(),
            basis: BTreeMap::new(),
            identity: BTreeMap::new(),
            comp: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn object(&mut self, name: impl Into<String>) -> usize {
        self.objects.push(name.into());
        self.objects.len() - 1
    }

    pub fn hom<S: AsRef<str>>(&mut self, x: usize, y: usize, labels: &[S]) -> &mut Self {
        self.basis.insert(
            (x, y),
            labels.iter().map(|s| s.as_ref().to_string()).collect(),
        );
        self
    }

    pub fn identity(&mut self, x: usize, coeffs: Vec<Scalar>) -> &mut Self {
        self.identity.insert(x, coeffs);
        self
    }

    /// Sets `g_j . f_i` for `f_i` in hom(x,y) and `g_j` in hom(y,z).
    pub fn compose(
        &mut self,
        (x, y, z): (usize, usize, usize),
        j: usize,
        i: usize,
        result: Vec<Scalar>,
    ) -> &mut Self {
        self.comp.insert((x, y, z, j, i), result);
        self
    }

    /// Sets `g_j . f_i` to the single basis vector `k` of hom(x,z).
    pub fn compose_basis(
        &mut self,
        (x, y, z): (usize, usize, usize),
        j: usize,
        i: usize,
        k: usize,
    ) -> &mut Self {
        let d = self.basis.get(&(x, z)).map_or(0, Vec::len);
        let mut v = vec![Scalar::zero(self.ring); d];
        if k < d {
            v[k] = Scalar::one(self.ring);
        } else {
            // out-of-range index; caught by build()
            v.push(Scalar::one(self.ring));
        }
        self.compose((x, y, z), j, i, v)
    }

    pub fn build(self) -> Result<LinCat> {
        let n = self.objects.len();
        let mut basis = vec![Vec::new(); n * n];
        for ((x, y), labels) in self.basis {
            if x >= n || y >= n {
                return Err(Error::malformed(
                    "hom basis",
                    format!("object index ({x},{y}) out of range"),
                ));
            }
            basis[x * n + y] = labels;
        }
        let mut identity = Vec::with_capacity(n);
        for x in 0..n {
            match self.identity.get(&x) {
                Some(v) => identity.push(v.clone()),
                None => {
                    return Err(Error::malformed(
                        "identity",
                        format!("object {} has no identity", self.objects[x]),
                    ))
                }
            }
        }
        let dim = |a: usize, b: usize| basis[a * n + b].len();
        let mut comp: Vec<Vec<Scalar>> = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    comp.push(vec![
                        Scalar::zero(self.ring);
                        dim(y, z) * dim(x, y) * dim(x, z)
                    ]);
                }
            }
        }
        for ((x, y, z, j, i), v) in self.comp {
            if x >= n || y >= n || z >= n {
                return Err(Error::malformed("composition", "object index out of range"));
            }
            let (dxy, dyz, dxz) = (dim(x, y), dim(y, z), dim(x, z));
            if j >= dyz || i >= dxy || v.len() != dxz {
                return Err(Error::malformed(
                    "composition",
                    format!(
                        "entry ({},{},{}) [{j},{i}] has wrong arity",
                        self.objects[x], self.objects[y], self.objects[z]
                    ),
                ));
            }
            let t = &mut comp[(x * n + y) * n + z];
            let off = (j * dxy + i) * dxz;
            t[off..off + dxz].clone_from_slice(&v);
        }
        LinCat::from_parts(self.ring, self.objects, basis, identity, comp)
    }
}

impl LinCat {
    /// Assembles a category from raw parts, rejecting wrong arities. The
    /// category axioms are not checked here; see [`validate_category`].
    pub fn from_parts(
        ring: RingSpec,
        objects: Vec<String>,
        basis: Vec<Vec<String>>,
        identity: Vec<Vec<Scalar>>,
        comp: Vec<Vec<Scalar>>,
    ) -> Result<LinCat> {
        let n = objects.len();
        if basis.len() != n * n || identity.len() != n || comp.len() != n * n * n {
            return Err(Error::malformed(
                "category",
                "table sizes do not match object count",
            ));
        }
        for x in 0..n {
            if identity[x].len() != basis[x * n + x].len() {
                return Err(Error::malformed(
                    "identity",
                    format!("identity of {} has wrong length", objects[x]),
                ));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let want =
                        basis[y * n + z].len() * basis[x * n + y].len() * basis[x * n + z].len();
                    if comp[(x * n + y) * n + z].len() != want {
                        return Err(Error::malformed(
                            "composition",
                            format!(
                                "tensor ({},{},{}) has wrong arity",
                                objects[x], objects[y], objects[z]
                            ),
                        ));
                    }
                }
            }
        }
        let all = identity.iter().flatten().chain(comp.iter().flatten());
        if let Some(bad) = all.into_iter().find(|s| s.ring() != ring) {
            return Err(Error::Mat(crate::exactlin::MatError::RingMismatch(
                bad.ring(),
                ring,
            )));
        }
        Ok(LinCat {
            ring,
            objects,
            basis,
            identity,
            comp,
        })
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.basis[x * self.objects.len() + y].len()
    }

    pub fn basis(&self, x: usize, y: usize) -> &[String] {
        &self.basis[x * self.objects.len() + y]
    }

    pub fn identity_coeffs(&self, x: usize) -> &[Scalar] {
        &self.identity[x]
    }

    pub fn identity(&self, x: usize) -> Morphism {
        Morphism {
            src: x,
            tgt: x,
            coeffs: self.identity[x].clone(),
        }
    }

    pub fn zero(&self, x: usize, y: usize) -> Morphism {
        Morphism {
            src: x,
            tgt: y,
            coeffs: vec![Scalar::zero(self.ring); self.dim(x, y)],
        }
    }

    pub fn basis_morphism(&self, x: usize, y: usize, i: usize) -> Morphism {
        let mut m = self.zero(x, y);
        m.coeffs[i] = Scalar::one(self.ring);
        m
    }

    pub fn morphism(&self, x: usize, y: usize, coeffs: Vec<Scalar>) -> Result<Morphism> {
        if coeffs.len() != self.dim(x, y) {
            return Err(Error::malformed(
                "morphism",
                format!(
                    "{} coefficients for hom({},{}) of dimension {}",
                    coeffs.len(),
                    self.objects[x],
                    self.objects[y],
                    self.dim(x, y)
                ),
            ));
        }
        Ok(Morphism {
            src: x,
            tgt: y,
            coeffs,
        })
    }

    /// Structure constants of `g_j . f_i` in hom(x,z).
    pub fn comp_entry(&self, x: usize, y: usize, z: usize, j: usize, i: usize) -> &[Scalar] {
        let n = self.objects.len();
        let dxz = self.dim(x, z);
        let off = (j * self.dim(x, y) + i) * dxz;
        &self.comp[(x * n + y) * n + z][off..off + dxz]
    }

    /// Bilinear composite of coordinate vectors `g` in hom(y,z), `f` in hom(x,y).
    pub fn compose_coeffs(
        &self,
        x: usize,
        y: usize,
        z: usize,
        g: &[Scalar],
        f: &[Scalar],
    ) -> Vec<Scalar> {
        let dxz = self.dim(x, z);
        let mut out = vec![Scalar::zero(self.ring); dxz];
        for (j, gj) in g.iter().enumerate() {
            if gj.is_zero() {
                continue;
            }
            for (i, fi) in f.iter().enumerate() {
                if fi.is_zero() {
                    continue;
                }
                let c = gj * fi;
                for (o, t) in out.iter_mut().zip(self.comp_entry(x, y, z, j, i)) {
                    add_product(o, &c, t);
                }
            }
        }
        out
    }

    /// `g . f`.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        if f.tgt != g.src {
            return Err(Error::Boundary(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.objects[g.src], self.objects[g.tgt], self.objects[f.src], self.objects[f.tgt]
            )));
        }
        Ok(self.compose_unchecked(g, f))
    }

    pub(crate) fn compose_unchecked(&self, g: &Morphism, f: &Morphism) -> Morphism {
        debug_assert_eq!(f.tgt, g.src);
        Morphism {
            src: f.src,
            tgt: g.tgt,
            coeffs: self.compose_coeffs(f.src, f.tgt, g.tgt, &g.coeffs, &f.coeffs),
        }
    }

    /// Matrix of `h -> g . h` from hom(x, g.src) to hom(x, g.tgt).
    pub fn post_compose_matrix(&self, g: &Morphism, x: usize) -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..self.dim(x, g.src))
            .map(|i| {
                let mut e = vec![Scalar::zero(self.ring); self.dim(x, g.src)];
                e[i] = Scalar::one(self.ring);
                self.compose_coeffs(x, g.src, g.tgt, &g.coeffs, &e)
            })
            .collect();
        Mat::from_columns(self.ring, self.dim(x, g.tgt), &cols)
    }

    /// Matrix of `h -> h . f` from hom(f.tgt, z) to hom(f.src, z).
    pub fn pre_compose_matrix(&self, f: &Morphism, z: usize) -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..self.dim(f.tgt, z))
            .map(|j| {
                let mut e = vec![Scalar::zero(self.ring); self.dim(f.tgt, z)];
                e[j] = Scalar::one(self.ring);
                self.compose_coeffs(f.src, f.tgt, z, &e, &f.coeffs)
            })
            .collect();
        Mat::from_columns(self.ring, self.dim(f.src, z), &cols)
    }

    /// Two-sided inverse of `f`, if one exists.
    pub fn inverse_of(&self, f: &Morphism) -> Option<Morphism> {
        // g . f = id_src determines g when it exists; then check f . g.
        let m = self.pre_compose_matrix(f, f.src);
        let g = crate::exactlin::solve_any(&m, &self.identity[f.src])?;
        let g = Morphism {
            src: f.tgt,
            tgt: f.src,
            coeffs: g,
        };
        let fg = self.compose_unchecked(f, &g);
        let gf = self.compose_unchecked(&g, f);
        (fg.coeffs == self.identity[f.tgt] && gf.coeffs == self.identity[f.src]).then_some(g)
    }

    pub fn is_iso(&self, f: &Morphism) -> bool {
        self.inverse_of(f).is_some()
    }

    pub(crate) fn describe(&self, f: &Morphism) -> String {
        let terms: Vec<String> = f
            .coeffs
            .iter()
            .zip(self.basis(f.src, f.tgt))
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, b)| {
                if c.is_one() {
                    b.clone()
                } else {
                    format!("{c}*{b}")
                }
            })
            .collect();
        let body = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        format!("{body}: {} -> {}", self.objects[f.src], self.objects[f.tgt])
    }
}

pub(crate) fn same_cat(a: &Arc<LinCat>, b: &Arc<LinCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Checks both identity laws and associativity on all basis elements.
pub fn validate_category(c: &LinCat) -> VerificationReport {
    let n = c.num_objects();
    let mut report = VerificationReport::new();
    let mut identity_failure = None;
    'id: for x in 0..n {
        for y in 0..n {
            for i in 0..c.dim(x, y) {
                let f = c.basis_morphism(x, y, i);
                let left = c.compose_unchecked(&c.identity(y), &f);
                let right = c.compose_unchecked(&f, &c.identity(x));
                if left != f || right != f {
                    let side = if left != f { "id . f" } else { "f . id" };
                    identity_failure = Some(format!("{side} != f for f = {}", c.basis(x, y)[i]));
                    break 'id;
                }
            }
        }
    }
    report.record("identity-law", identity_failure.map_or(Ok(()), Err));

    let mut assoc_failure = None;
    'assoc: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    for i in 0..c.dim(x, y) {
                        for j in 0..c.dim(y, z) {
                            let gf = c.comp_entry(x, y, z, j, i);
                            for k in 0..c.dim(z, w) {
                                let h = c.basis_morphism(z, w, k);
                                let hg = c.comp_entry(y, z, w, k, j);
                                let lhs = c.compose_coeffs(x, z, w, &h.coeffs, gf);
                                let f = c.basis_morphism(x, y, i);
                                let rhs = c.compose_coeffs(x, y, w, hg, &f.coeffs);
                                if lhs != rhs {
                                    assoc_failure = Some(format!(
                                        "(h . g) . f != h . (g . f) for f = {}, g = {}, h = {}",
                                        c.basis(x, y)[i],
                                        c.basis(y, z)[j],
                                        c.basis(z, w)[k]
                                    ));
                                    break 'assoc;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report.record("associativity", assoc_failure.map_or(Ok(()), Err));
    report
}

/// `compose_morphisms(c, g, f) = g . f`.
pub fn compose_morphisms(c: &LinCat, g: &Morphism, f: &Morphism) -> Result<Morphism> {
    c.compose(g, f)
}

/// A k-linear functor given by its object map and one matrix per hom space.
#[derive(Debug, Clone)]
pub struct LinFunctor {
    dom: Arc<LinCat>,
    cod: Arc<LinCat>,
    obj_map: Vec<usize>,
    mats: Arc<Vec<Mat>>,
}

impl PartialEq for LinFunctor {
    fn eq(&self, other: &Self) -> bool {
        functor_equal(self, other)
    }
}

impl LinFunctor {
    /// Checks shapes only; see [`validate_functor`] for the functor axioms.
    pub fn new(
        dom: Arc<LinCat>,
        cod: Arc<LinCat>,
        obj_map: Vec<usize>,
        mats: Vec<Mat>,
    ) -> Result<Self> {
        let n = dom.num_objects();
        if obj_map.len() != n || mats.len() != n * n {
            return Err(Error::malformed(
                "functor",
                "object map or hom table has wrong length",
            ));
        }
        if let Some(&bad) = obj_map.iter().find(|&&y| y >= cod.num_objects()) {
            return Err(Error::malformed(
                "functor",
                format!("object image {bad} out of range"),
            ));
        }
        for x in 0..n {
            for y in 0..n {
                let m = &mats[x * n + y];
                let want = (cod.dim(obj_map[x], obj_map[y]), dom.dim(x, y));
                if (m.rows(), m.cols()) != want || m.ring() != dom.ring() {
                    return Err(Error::malformed(
                        "functor",
                        format!(
                            "hom matrix at ({},{}) is {}x{}, expected {}x{}",
                            dom.object_name(x),
                            dom.object_name(y),
                            m.rows(),
                            m.cols(),
                            want.0,
                            want.1
                        ),
                    ));
                }
            }
        }
        if dom.ring() != cod.ring() {
            return Err(Error::Mat(crate::exactlin::MatError::RingMismatch(
                dom.ring(),
                cod.ring(),
            )));
        }
        Ok(LinFunctor {
            dom,
            cod,
            obj_map,
            mats: Arc::new(mats),
        })
    }

    /// Builds the hom matrices from a closure over object pairs.
    pub fn from_fn(
        dom: Arc<LinCat>,
        cod: Arc<LinCat>,
        obj_map: Vec<usize>,
        mut mat: impl FnMut(usize, usize) -> Mat,
    ) -> Result<Self> {
        let n = dom.num_objects();
        let mut mats = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                mats.push(mat(x, y));
            }
        }
        LinFunctor::new(dom, cod, obj_map, mats)
    }

    pub fn identity(c: &Arc<LinCat>) -> Self {
        let n = c.num_objects();
        LinFunctor::from_fn(c.clone(), c.clone(), (0..n).collect(), |x, y| {
            Mat::identity(c.ring(), c.dim(x, y))
        })
        .expect("identity functor is well formed")
    }

    pub fn dom(&self) -> &Arc<LinCat> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<LinCat> {
        &self.cod
    }

    pub fn obj(&self, x: usize) -> usize {
        self.obj_map[x]
    }

    pub fn obj_map(&self) -> &[usize] {
        &self.obj_map
    }

    pub fn mat(&self, x: usize, y: usize) -> &Mat {
        &self.mats[x * self.dom.num_objects() + y]
    }

    pub fn apply(&self, f: &Morphism) -> Morphism {
        Morphism {
            src: self.obj_map[f.src],
            tgt: self.obj_map[f.tgt],
            coeffs: self.mat(f.src, f.tgt).apply(&f.coeffs),
        }
    }

    pub fn is_object_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.num_objects()];
        for &y in &self.obj_map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Every hom matrix is square and invertible.
    pub fn is_fully_faithful(&self) -> bool {
        self.mats.iter().all(Mat::is_invertible)
    }
}

/// `g . f`.
pub fn compose_functors(g: &LinFunctor, f: &LinFunctor) -> Result<LinFunctor> {
    if !same_cat(&f.cod, &g.dom) {
        return Err(Error::Boundary(
            "codomain of the first functor is not the domain of the second".into(),
        ));
    }
    let obj_map: Vec<usize> = f.obj_map.iter().map(|&y| g.obj_map[y]).collect();
    LinFunctor::from_fn(f.dom.clone(), g.cod.clone(), obj_map, |x, y| {
        mat_mul(g.mat(f.obj(x), f.obj(y)), f.mat(x, y)).expect("conformable by construction")
    })
}

/// Exact equality of boundaries, object maps and every hom matrix.
pub fn functor_equal(f: &LinFunctor, g: &LinFunctor) -> bool {
    same_cat(&f.dom, &g.dom)
        && same_cat(&f.cod, &g.cod)
        && f.obj_map == g.obj_map
        && f.mats == g.mats
}

/// Checks `F(id) = id` and `F(g . f) = F(g) . F(f)` on all basis pairs.
pub fn validate_functor(f: &LinFunctor) -> VerificationReport {
    let (c, d) = (&f.dom, &f.cod);
    let n = c.num_objects();
    let mut report = VerificationReport::new();
    let id_fail = (0..n).find(|&x| f.apply(&c.identity(x)) != d.identity(f.obj(x)));
    report.record(
        "preserves-identities",
        id_fail.map_or(Ok(()), |x| {
            Err(format!("F(id) != id at {}", c.object_name(x)))
        }),
    );
    let mut comp_fail = None;
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for i in 0..c.dim(x, y) {
                    let fi = c.basis_morphism(x, y, i);
                    let ffi = f.apply(&fi);
                    for j in 0..c.dim(y, z) {
                        let gj = c.basis_morphism(y, z, j);
                        let lhs = f.apply(&c.compose_unchecked(&gj, &fi));
                        let rhs = d.compose_unchecked(&f.apply(&gj), &ffi);
                        if lhs != rhs {
                            comp_fail = Some(format!(
                                "F(g . f) != F(g) . F(f) for f = {}, g = {}",
                                c.basis(x, y)[i],
                                c.basis(y, z)[j]
                            ));
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    report.record("preserves-composition", comp_fail.map_or(Ok(()), Err));
    report
}

/// A natural transformation between parallel functors. Construction checks
/// naturality on every basis morphism, so every value is natural.
#[derive(Debug, Clone, PartialEq)]
pub struct NatTrans {
    src: LinFunctor,
    tgt: LinFunctor,
    components: Vec<Morphism>,
}

impl NatTrans {
    pub fn new(src: LinFunctor, tgt: LinFunctor, components: Vec<Morphism>) -> Result<Self> {
        if !same_cat(&src.dom, &tgt.dom) || !same_cat(&src.cod, &tgt.cod) {
            return Err(Error::Boundary(
                "natural transformation between non-parallel functors".into(),
            ));
        }
        let (c, d) = (&src.dom, &src.cod);
        if components.len() != c.num_objects() {
            return Err(Error::malformed(
                "natural transformation",
                "one component per object required",
            ));
        }
        for (x, a) in components.iter().enumerate() {
            if a.src != src.obj(x) || a.tgt != tgt.obj(x) || a.coeffs.len() != d.dim(a.src, a.tgt) {
                return Err(Error::malformed(
                    "natural transformation",
                    format!("component at {} has the wrong type", c.object_name(x)),
                ));
            }
        }
        let nt = NatTrans {
            src,
            tgt,
            components,
        };
        if let Some(locus) = nt.naturality_failure() {
            return Err(Error::NotNatural(locus));
        }
        Ok(nt)
    }

    fn naturality_failure(&self) -> Option<String> {
        let (c, d) = (&self.src.dom, &self.src.cod);
        let n = c.num_objects();
        for x in 0..n {
            for y in 0..n {
                for i in 0..c.dim(x, y) {
                    let f = c.basis_morphism(x, y, i);
                    let lhs = d.compose_unchecked(&self.tgt.apply(&f), &self.components[x]);
                    let rhs = d.compose_unchecked(&self.components[y], &self.src.apply(&f));
                    if lhs != rhs {
                        return Some(format!("basis morphism {}", c.describe(&f)));
                    }
                }
            }
        }
        None
    }

    pub fn identity(f: &LinFunctor) -> Self {
        let components = (0..f.dom.num_objects())
            .map(|x| f.cod.identity(f.obj(x)))
            .collect();
        NatTrans {
            src: f.clone(),
            tgt: f.clone(),
            components,
        }
    }

    /// Same as [`NatTrans::new`] but with components from a closure.
    pub fn from_fn(
        src: LinFunctor,
        tgt: LinFunctor,
        component: impl FnMut(usize) -> Morphism,
    ) -> Result<Self> {
        let components = (0..src.dom.num_objects()).map(component).collect();
        NatTrans::new(src, tgt, components)
    }

    pub fn src(&self) -> &LinFunctor {
        &self.src
    }

    pub fn tgt(&self) -> &LinFunctor {
        &self.tgt
    }

    pub fn component(&self, x: usize) -> &Morphism {
        &self.components[x]
    }

    pub fn components(&self) -> &[Morphism] {
        &self.components
    }

    pub fn dom_cat(&self) -> &Arc<LinCat> {
        &self.src.dom
    }

    pub fn cod_cat(&self) -> &Arc<LinCat> {
        &self.src.cod
    }

    pub fn is_identity(&self) -> bool {
        functor_equal(&self.src, &self.tgt)
            && self
                .components
                .iter()
                .enumerate()
                .all(|(x, a)| a.coeffs == self.src.cod.identity_coeffs(self.src.obj(x)))
    }

    /// First object whose component is not invertible.
    pub fn non_invertible_component(&self) -> Option<usize> {
        self.components.iter().position(|a| !self.src.cod.is_iso(a))
    }

    pub fn is_iso(&self) -> bool {
        self.non_invertible_component().is_none()
    }

    pub fn inverse(&self) -> Option<NatTrans> {
        let comps: Option<Vec<Morphism>> = self
            .components
            .iter()
            .map(|a| self.src.cod.inverse_of(a))
            .collect();
        NatTrans::new(self.tgt.clone(), self.src.clone(), comps?).ok()
    }
}

/// Vertical composite `b . a` for `a: F -> G`, `b: G -> H`.
pub fn nt_vertical(b: &NatTrans, a: &NatTrans) -> Result<NatTrans> {
    if !functor_equal(&a.tgt, &b.src) {
        return Err(Error::Boundary(
            "vertical composite needs a.tgt = b.src".into(),
        ));
    }
    let d = &a.src.cod;
    let comps = a
        .components
        .iter()
        .zip(&b.components)
        .map(|(ax, bx)| d.compose_unchecked(bx, ax))
        .collect();
    NatTrans::new(a.src.clone(), b.tgt.clone(), comps)
}

/// Horizontal composite `b * a` for `a: F -> F'` (C -> D) and `b: G -> G'`
/// (D -> E), with components `b(F' x) . G(a x)`.
pub fn nt_horizontal(b: &NatTrans, a: &NatTrans) -> Result<NatTrans> {
    if !same_cat(&a.src.cod, &b.src.dom) {
        return Err(Error::Boundary(
            "horizontal composite needs cod(a) = dom(b)".into(),
        ));
    }
    let src = compose_functors(&b.src, &a.src)?;
    let tgt = compose_functors(&b.tgt, &a.tgt)?;
    let e = &b.src.cod;
    let comps = (0..a.src.dom.num_objects())
        .map(|x| {
            let gax = b.src.apply(&a.components[x]);
            e.compose_unchecked(&b.components[a.tgt.obj(x)], &gax)
        })
        .collect();
    NatTrans::new(src, tgt, comps)
}

/// Whiskering `H a` of a natural transformation by a functor on the left.
pub fn whisker_left(h: &LinFunctor, a: &NatTrans) -> Result<NatTrans> {
    nt_horizontal(&NatTrans::identity(h), a)
}

/// Whiskering `a K` of a natural transformation by a functor on the right.
pub fn whisker_right(a: &NatTrans, k: &LinFunctor) -> Result<NatTrans> {
    nt_horizontal(a, &NatTrans::identity(k))
}

pub fn nt_equal(a: &NatTrans, b: &NatTrans) -> bool {
    functor_equal(&a.src, &b.src) && functor_equal(&a.tgt, &b.tgt) && a.components == b.components
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const Q: RingSpec = RingSpec::Rationals;

    #[test]
    fn point_category_is_valid() {
        assert!(validate_category(&fixtures::point_category(Q)).passed());
    }

    #[test]
    fn doubled_composition_breaks_identity_law() {
        let mut b = LinCatBuilder::new(Q);
        let x = b.object("*");
        b.hom(x, x, &["id"]).identity(x, vec![Scalar::one(Q)]);
        b.compose((x, x, x), 0, 0, vec![Scalar::from_i64(Q, 2)]);
        let r = validate_category(&b.build().unwrap());
        assert!(!r.passed());
        assert!(!r.find("identity-law").unwrap().passed);
    }

    #[test]
    fn group_algebra_carrier_is_valid() {
        let c = fixtures::group_algebra_c2_category(Q);
        let r = validate_category(&c);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn wrong_arity_rejected_before_checking() {
        let mut b = LinCatBuilder::new(Q);
        let x = b.object("*");
        b.hom(x, x, &["id"]).identity(x, vec![Scalar::one(Q)]);
        b.compose((x, x, x), 0, 0, vec![Scalar::one(Q), Scalar::one(Q)]);
        assert!(matches!(b.build(), Err(Error::Malformed { .. })));
    }

    #[test]
    fn composition_in_group_algebra() {
        let c = fixtures::group_algebra_c2_category(Q);
        let us = c.basis_morphism(0, 0, 1);
        assert_eq!(
            compose_morphisms(&c, &us, &us).unwrap(),
            c.basis_morphism(0, 0, 0)
        );
        let id = c.identity(0);
        assert_eq!(c.compose(&id, &us).unwrap(), us);

        let f5 = RingSpec::prime_field(5).unwrap();
        let c5 = fixtures::group_algebra_c2_category(f5);
        let two_us = c5.basis_morphism(0, 0, 1).scale(&Scalar::from_i64(f5, 2));
        let three_us = c5.basis_morphism(0, 0, 1).scale(&Scalar::from_i64(f5, 3));
        // 6 u_1 = u_1 in F_5
        assert_eq!(
            c5.compose(&two_us, &three_us).unwrap(),
            c5.basis_morphism(0, 0, 0)
        );
    }

    #[test]
    fn non_composable_pair_rejected() {
        let c = Arc::new(fixtures::swap_category(Q));
        assert!(c.compose(&c.identity(0), &c.identity(1)).is_err());
    }

    fn scaled_generator(c: &Arc<LinCat>, factor: i64) -> LinFunctor {
        LinFunctor::from_fn(c.clone(), c.clone(), vec![0], |_, _| {
            Mat::from_i64_rows(Q, &[&[1, 0], &[0, factor]])
        })
        .unwrap()
    }

    #[test]
    fn functor_validation_examples() {
        let c = Arc::new(fixtures::group_algebra_c2_category(Q));
        assert!(validate_functor(&LinFunctor::identity(&c)).passed());
        assert!(validate_functor(&scaled_generator(&c, -1)).passed());
        let r = validate_functor(&scaled_generator(&c, 2));
        assert!(!r.passed());
        assert!(!r.find("preserves-composition").unwrap().passed);
    }

    #[test]
    fn functor_composition_examples() {
        let c = Arc::new(fixtures::group_algebra_c2_category(Q));
        let id = LinFunctor::identity(&c);
        let sign = scaled_generator(&c, -1);
        assert!(functor_equal(&compose_functors(&id, &sign).unwrap(), &sign));
        assert!(functor_equal(&compose_functors(&sign, &id).unwrap(), &sign));
        assert!(functor_equal(&compose_functors(&sign, &sign).unwrap(), &id));
        assert!(!functor_equal(&sign, &id));
    }

    #[test]
    fn empty_category_functors_are_equal() {
        let e = Arc::new(LinCatBuilder::new(Q).build().unwrap());
        let f = LinFunctor::new(e.clone(), e.clone(), vec![], vec![]).unwrap();
        assert!(functor_equal(&f, &LinFunctor::identity(&e)));
    }

    #[test]
    fn identity_nat_trans_composites() {
        let c = Arc::new(fixtures::group_algebra_c2_category(Q));
        let id = NatTrans::identity(&LinFunctor::identity(&c));
        assert!(nt_equal(&nt_vertical(&id, &id).unwrap(), &id));
        assert!(nt_equal(&nt_horizontal(&id, &id).unwrap(), &id));
    }

    #[test]
    fn unnatural_components_rejected() {
        let c = Arc::new(fixtures::group_algebra_c2_category(Q));
        let id = LinFunctor::identity(&c);
        let sign = scaled_generator(&c, -1);
        // u_s does not intertwine id and sign: sign(u_s) u_s = -u_1 but u_s id(u_s) = u_1
        let us = c.basis_morphism(0, 0, 1);
        assert!(matches!(
            NatTrans::new(id.clone(), sign.clone(), vec![us.clone()]),
            Err(Error::NotNatural(_))
        ));
        // the zero transformation is natural
        assert!(NatTrans::new(id, sign, vec![c.zero(0, 0)]).is_ok());
    }
}

//! The JSON bundle format. Objects, group elements and basis vectors are
//! referenced by index; everything else by name. Scalars are strings,
//! `"n"` or `"n/d"` over ℚ and a decimal residue over `F_p`. Field order on
//! emission is fixed by the struct definitions below.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{Mat, RingSpec, Scalar};
use crate::gcat::{same_gcat, same_group, EquivFunctor, EquivMorphism, FinGroup, GCategory};
use crate::ginv::{DensityWitness, InvFunctor};
use crate::graded::{same_graded, DegFunctor, DegMorphism, GradedCat};
use crate::lincat::{same_cat, LinCat, LinFunctor, Morphism, NatTrans};
use crate::orbit::OrbitCat;
use crate::smash::SmashCat;

type Vector = Vec<String>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bundle {
    pub ring: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<GroupSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub categories: Vec<CategorySpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gcategories: Vec<GCategorySpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub graded: Vec<GradedSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functors: Vec<FunctorSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub transformations: Vec<TransformationSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equiv_functors: Vec<EquivFunctorSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inv_functors: Vec<InvFunctorSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub deg_functors: Vec<DegFunctorSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equiv_cells: Vec<CellSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub deg_cells: Vec<CellSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit: Option<OrbitInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smash: Option<SmashInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: String,
    pub elements: Vec<String>,
    pub mul: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomSpec {
    pub src: usize,
    pub tgt: usize,
    pub basis: Vec<String>,
}

/// `basis[g] . basis[f] = sum coeff * basis[k]` for `f: src -> mid`,
/// `g: mid -> tgt`. Pairs not listed compose to zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompSpec {
    pub src: usize,
    pub mid: usize,
    pub tgt: usize,
    pub g: usize,
    pub f: usize,
    pub terms: Vec<(usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    pub name: String,
    pub objects: Vec<String>,
    pub homs: Vec<HomSpec>,
    pub identities: Vec<Vector>,
    pub compositions: Vec<CompSpec>,
}

/// Row-major matrix of the map hom(src,tgt) -> hom(F src, F tgt). Pairs not
/// listed have an empty hom on one side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomMatrix {
    pub src: usize,
    pub tgt: usize,
    pub matrix: Vec<Vector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub objects: Vec<usize>,
    pub homs: Vec<HomMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GCategorySpec {
    pub name: String,
    pub category: String,
    pub group: String,
    /// One entry per group element, in element order.
    pub action: Vec<ActionSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeSpec {
    pub src: usize,
    pub tgt: usize,
    pub degrees: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedSpec {
    pub name: String,
    pub category: String,
    pub group: String,
    pub degrees: Vec<DegreeSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorSpec {
    pub name: String,
    pub dom: String,
    pub cod: String,
    pub objects: Vec<usize>,
    pub homs: Vec<HomMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformationSpec {
    pub name: String,
    pub src: String,
    pub tgt: String,
    pub components: Vec<Vector>,
}

/// `adjuster[a][x]` is the component at `x` of the adjuster for element
/// `a`; an empty list means the identity adjuster.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivFunctorSpec {
    pub name: String,
    pub dom: String,
    pub cod: String,
    pub functor: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub adjuster: Vec<Vec<Vector>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessSpec {
    pub source: usize,
    pub target: usize,
    pub forward: Vector,
    pub backward: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvFunctorSpec {
    pub name: String,
    pub dom: String,
    pub cod: String,
    pub functor: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub adjuster: Vec<Vec<Vector>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessSpec>,
}

/// An empty adjuster means `r_x = 1` everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegFunctorSpec {
    pub name: String,
    pub dom: String,
    pub cod: String,
    pub functor: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub adjuster: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellSpec {
    pub name: String,
    pub src: String,
    pub tgt: String,
    pub components: Vec<Vector>,
}

/// For each hom of the orbit category, the `(element, index)` of every
/// basis position: position `k` is basis vector `index` of C(A_element x, y).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockIndex {
    pub src: usize,
    pub tgt: usize,
    pub blocks: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitInfo {
    pub source: String,
    pub graded: String,
    pub covering: String,
    pub block_index: Vec<BlockIndex>,
}

/// `objects[u] = (x, a)` for `u = x^(a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmashInfo {
    pub source: String,
    pub gcategory: String,
    pub covering: String,
    pub objects: Vec<(usize, usize)>,
}

/// Reads a bundle. Syntax and schema errors carry the line and column.
pub fn parse_bundle(path: &Path) -> Result<Bundle> {
    let text = std::fs::read_to_string(path)?;
    parse_bundle_str(&text)
}

pub fn parse_bundle_str(text: &str) -> Result<Bundle> {
    serde_json::from_str(text)
        .map_err(|e| Error::Schema(format!("line {} column {}: {e}", e.line(), e.column())))
}

pub fn bundle_to_string(b: &Bundle) -> String {
    let mut s = serde_json::to_string_pretty(b).expect("bundles serialize");
    s.push('\n');
    s
}

pub fn emit_bundle(b: &Bundle, path: &Path) -> Result<()> {
    std::fs::write(path, bundle_to_string(b))?;
    Ok(())
}

/// A bundle with every name resolved.
#[derive(Debug, Clone)]
pub struct Model {
    pub ring: RingSpec,
    pub groups: Vec<(String, Arc<FinGroup>)>,
    pub categories: Vec<(String, Arc<LinCat>)>,
    pub gcategories: Vec<(String, Arc<GCategory>)>,
    pub graded: Vec<(String, Arc<GradedCat>)>,
    pub functors: Vec<(String, LinFunctor)>,
    pub transformations: Vec<(String, NatTrans)>,
    pub equiv_functors: Vec<(String, EquivFunctor)>,
    pub inv_functors: Vec<(String, InvFunctor, Vec<DensityWitness>)>,
    pub deg_functors: Vec<(String, DegFunctor)>,
    pub equiv_cells: Vec<(String, EquivMorphism)>,
    pub deg_cells: Vec<(String, DegMorphism)>,
    pub orbit: Option<OrbitInfo>,
    pub smash: Option<SmashInfo>,
}

fn lookup<'a, T>(list: &'a [(String, T)], name: &str, kind: &str) -> Result<&'a T> {
    list.iter()
        .find(|(n, _)| n == name)
        .map(|(_, t)| t)
        .ok_or_else(|| Error::UnknownName(format!("{kind} {name}")))
}

fn schema(at: &str, detail: impl std::fmt::Display) -> Error {
    Error::Schema(format!("{at}: {detail}"))
}

fn unique(names: impl Iterator<Item = String>, kind: &str) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for n in names {
        if !seen.insert(n.clone()) {
            return Err(schema(kind, format!("duplicate name {n:?}")));
        }
    }
    Ok(())
}

struct Reader {
    ring: RingSpec,
}

impl Reader {
    fn scalar(&self, s: &str, at: &str) -> Result<Scalar> {
        Scalar::parse(self.ring, s).map_err(|_| schema(at, format!("bad scalar {s:?}")))
    }

    fn vector(&self, v: &[String], len: usize, at: &str) -> Result<Vec<Scalar>> {
        if v.len() != len {
            return Err(schema(
                at,
                format!("expected {len} coefficients, found {}", v.len()),
            ));
        }
        v.iter().map(|s| self.scalar(s, at)).collect()
    }

    fn morphism(&self, c: &LinCat, x: usize, y: usize, v: &[String], at: &str) -> Result<Morphism> {
        Ok(Morphism {
            src: x,
            tgt: y,
            coeffs: self.vector(v, c.dim(x, y), at)?,
        })
    }

    fn object(&self, c: &LinCat, x: usize, at: &str) -> Result<usize> {
        if x < c.num_objects() {
            Ok(x)
        } else {
            Err(schema(at, format!("object index {x} out of range")))
        }
    }

    fn category(&self, spec: &CategorySpec) -> Result<LinCat> {
        let at = format!("category {}", spec.name);
        let n = spec.objects.len();
        let mut basis = vec![None; n * n];
        for h in &spec.homs {
            if h.src >= n || h.tgt >= n {
                return Err(schema(
                    &at,
                    format!("hom ({},{}) out of range", h.src, h.tgt),
                ));
            }
            if basis[h.src * n + h.tgt].replace(h.basis.clone()).is_some() {
                return Err(schema(
                    &at,
                    format!("hom ({},{}) listed twice", h.src, h.tgt),
                ));
            }
        }
        let basis: Vec<Vec<String>> = basis.into_iter().map(Option::unwrap_or_default).collect();
        if spec.identities.len() != n {
            return Err(schema(&at, "one identity per object required"));
        }
        let identity = (0..n)
            .map(|x| {
                self.vector(
                    &spec.identities[x],
                    basis[x * n + x].len(),
                    &format!("{at} identity {x}"),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let zero = Scalar::zero(self.ring);
        let mut comp: Vec<Vec<Scalar>> = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let len =
                        basis[y * n + z].len() * basis[x * n + y].len() * basis[x * n + z].len();
                    comp.push(vec![zero.clone(); len]);
                }
            }
        }
        for c in &spec.compositions {
            let (x, y, z) = (c.src, c.mid, c.tgt);
            if x >= n || y >= n || z >= n {
                return Err(schema(
                    &at,
                    format!("composition ({x},{y},{z}) out of range"),
                ));
            }
            let (dxy, dyz, dxz) = (
                basis[x * n + y].len(),
                basis[y * n + z].len(),
                basis[x * n + z].len(),
            );
            if c.f >= dxy || c.g >= dyz {
                return Err(schema(
                    &at,
                    format!("composition ({x},{y},{z}) basis index out of range"),
                ));
            }
            let t = &mut comp[(x * n + y) * n + z];
            let off = (c.g * dxy + c.f) * dxz;
            for (k, s) in &c.terms {
                if *k >= dxz {
                    return Err(schema(
                        &at,
                        format!("composition ({x},{y},{z}) output index {k} out of range"),
                    ));
                }
                t[off + k] = self.scalar(s, &at)?;
            }
        }
        LinCat::from_parts(self.ring, spec.objects.clone(), basis, identity, comp)
    }

    fn hom_matrices(
        &self,
        dom: &LinCat,
        cod: &LinCat,
        objects: &[usize],
        homs: &[HomMatrix],
        at: &str,
    ) -> Result<Vec<Mat>> {
        let n = dom.num_objects();
        if objects.len() != n {
            return Err(schema(at, "object map has the wrong length"));
        }
        for &o in objects {
            self.object(cod, o, at)?;
        }
        let mut mats: Vec<Mat> = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                Mat::zeros(self.ring, cod.dim(objects[x], objects[y]), dom.dim(x, y))
            })
            .collect();
        let mut seen = vec![false; n * n];
        for h in homs {
            let (x, y) = (self.object(dom, h.src, at)?, self.object(dom, h.tgt, at)?);
            if std::mem::replace(&mut seen[x * n + y], true) {
                return Err(schema(at, format!("matrix for ({x},{y}) listed twice")));
            }
            let (rows, cols) = (cod.dim(objects[x], objects[y]), dom.dim(x, y));
            if h.matrix.len() != rows {
                return Err(schema(
                    at,
                    format!("matrix for ({x},{y}) needs {rows} rows"),
                ));
            }
            let mut m = Mat::zeros(self.ring, rows, cols);
            for (i, row) in h.matrix.iter().enumerate() {
                for (j, v) in self.vector(row, cols, at)?.into_iter().enumerate() {
                    m.set(i, j, v);
                }
            }
            mats[x * n + y] = m;
        }
        Ok(mats)
    }

    fn components(
        &self,
        f: &LinFunctor,
        g: &LinFunctor,
        comps: &[Vector],
        at: &str,
    ) -> Result<Vec<Morphism>> {
        let n = f.dom().num_objects();
        if comps.len() != n {
            return Err(schema(at, "one component per object required"));
        }
        (0..n)
            .map(|x| self.morphism(f.cod(), f.obj(x), g.obj(x), &comps[x], at))
            .collect()
    }
}

impl Bundle {
    /// Resolves names and builds every structure. `ring` overrides the
    /// bundle's own ring. Axioms are not checked here: shape errors are
    /// `Schema`/`Malformed`/`Boundary`, non-natural components are
    /// `NotNatural`.
    pub fn load(&self, ring: Option<RingSpec>) -> Result<Model> {
        let ring = match ring {
            Some(r) => r,
            None => RingSpec::parse(&self.ring)
                .map_err(|_| schema("ring", format!("bad ring {:?}", self.ring)))?,
        };
        let rd = Reader { ring };
        unique(self.groups.iter().map(|g| g.name.clone()), "groups")?;
        unique(self.categories.iter().map(|g| g.name.clone()), "categories")?;
        unique(
            self.gcategories.iter().map(|g| g.name.clone()),
            "gcategories",
        )?;
        unique(self.graded.iter().map(|g| g.name.clone()), "graded")?;
        unique(self.functors.iter().map(|g| g.name.clone()), "functors")?;
        unique(
            self.transformations.iter().map(|g| g.name.clone()),
            "transformations",
        )?;
        unique(
            self.equiv_functors.iter().map(|g| g.name.clone()),
            "equiv_functors",
        )?;
        unique(
            self.inv_functors.iter().map(|g| g.name.clone()),
            "inv_functors",
        )?;
        unique(
            self.deg_functors.iter().map(|g| g.name.clone()),
            "deg_functors",
        )?;
        unique(
            self.equiv_cells.iter().map(|g| g.name.clone()),
            "equiv_cells",
        )?;
        unique(self.deg_cells.iter().map(|g| g.name.clone()), "deg_cells")?;

        let groups = self
            .groups
            .iter()
            .map(|g| {
                Ok((
                    g.name.clone(),
                    Arc::new(FinGroup::new(g.elements.clone(), g.mul.clone())?),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let categories = self
            .categories
            .iter()
            .map(|c| Ok((c.name.clone(), Arc::new(rd.category(c)?))))
            .collect::<Result<Vec<_>>>()?;
        let mut gcategories = Vec::new();
        for s in &self.gcategories {
            let at = format!("gcategory {}", s.name);
            let base = lookup(&categories, &s.category, "category")?.clone();
            let group = lookup(&groups, &s.group, "group")?.clone();
            if s.action.len() != group.order() {
                return Err(schema(&at, "one action entry per group element required"));
            }
            let action = s
                .action
                .iter()
                .map(|a| {
                    let mats = rd.hom_matrices(&base, &base, &a.objects, &a.homs, &at)?;
                    LinFunctor::new(base.clone(), base.clone(), a.objects.clone(), mats)
                })
                .collect::<Result<Vec<_>>>()?;
            gcategories.push((
                s.name.clone(),
                Arc::new(GCategory::new(base, group, action)?),
            ));
        }
        let mut graded = Vec::new();
        for s in &self.graded {
            let at = format!("graded {}", s.name);
            let base = lookup(&categories, &s.category, "category")?.clone();
            let group = lookup(&groups, &s.group, "group")?.clone();
            let n = base.num_objects();
            let mut deg: Vec<Vec<usize>> = (0..n * n)
                .map(|k| vec![0; base.dim(k / n, k % n)])
                .collect();
            for d in &s.degrees {
                let (x, y) = (rd.object(&base, d.src, &at)?, rd.object(&base, d.tgt, &at)?);
                if d.degrees.len() != base.dim(x, y) {
                    return Err(schema(
                        &at,
                        format!("degrees for ({x},{y}) have the wrong length"),
                    ));
                }
                deg[x * n + y] = d.degrees.clone();
            }
            graded.push((s.name.clone(), Arc::new(GradedCat::new(base, group, deg)?)));
        }
        let mut functors = Vec::new();
        for s in &self.functors {
            let at = format!("functor {}", s.name);
            let dom = lookup(&categories, &s.dom, "category")?.clone();
            let cod = lookup(&categories, &s.cod, "category")?.clone();
            let mats = rd.hom_matrices(&dom, &cod, &s.objects, &s.homs, &at)?;
            functors.push((
                s.name.clone(),
                LinFunctor::new(dom, cod, s.objects.clone(), mats)?,
            ));
        }
        let mut transformations = Vec::new();
        for s in &self.transformations {
            let at = format!("transformation {}", s.name);
            let f = lookup(&functors, &s.src, "functor")?;
            let g = lookup(&functors, &s.tgt, "functor")?;
            let comps = rd.components(f, g, &s.components, &at)?;
            transformations.push((s.name.clone(), NatTrans::new(f.clone(), g.clone(), comps)?));
        }
        let mut equiv_functors = Vec::new();
        for s in &self.equiv_functors {
            let at = format!("equiv_functor {}", s.name);
            let dom = lookup(&gcategories, &s.dom, "gcategory")?.clone();
            let cod = lookup(&gcategories, &s.cod, "gcategory")?.clone();
            let f = lookup(&functors, &s.functor, "functor")?.clone();
            let e = if s.adjuster.is_empty() {
                EquivFunctor::strict(dom, cod, f)?
            } else {
                if s.adjuster.len() != dom.group().order() {
                    return Err(schema(&at, "one adjuster per group element required"));
                }
                let comps = s
                    .adjuster
                    .iter()
                    .enumerate()
                    .map(|(a, comps)| {
                        let src = crate::lincat::compose_functors(cod.functor(a), &f)?;
                        let tgt = crate::lincat::compose_functors(&f, dom.functor(a))?;
                        rd.components(&src, &tgt, comps, &at)
                    })
                    .collect::<Result<Vec<_>>>()?;
                EquivFunctor::from_components(dom, cod, f, comps)?
            };
            equiv_functors.push((s.name.clone(), e));
        }
        let mut inv_functors = Vec::new();
        for s in &self.inv_functors {
            let at = format!("inv_functor {}", s.name);
            let dom = lookup(&gcategories, &s.dom, "gcategory")?.clone();
            let cod = lookup(&categories, &s.cod, "category")?.clone();
            let f = lookup(&functors, &s.functor, "functor")?.clone();
            let inv = if s.adjuster.is_empty() {
                InvFunctor::strict(dom, cod.clone(), f.clone())?
            } else {
                if s.adjuster.len() != dom.group().order() {
                    return Err(schema(&at, "one adjuster per group element required"));
                }
                let comps = s
                    .adjuster
                    .iter()
                    .enumerate()
                    .map(|(a, comps)| {
                        let tgt = crate::lincat::compose_functors(&f, dom.functor(a))?;
                        rd.components(&f, &tgt, comps, &at)
                    })
                    .collect::<Result<Vec<_>>>()?;
                InvFunctor::from_components(dom, cod.clone(), f.clone(), comps)?
            };
            let witnesses = s
                .witnesses
                .iter()
                .map(|w| {
                    let src = rd.object(inv.dom().base(), w.source, &at)?;
                    let (fx, y) = (f.obj(src), rd.object(&cod, w.target, &at)?);
                    Ok(DensityWitness {
                        source: src,
                        target: y,
                        forward: rd.morphism(&cod, fx, y, &w.forward, &at)?,
                        backward: rd.morphism(&cod, y, fx, &w.backward, &at)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            inv_functors.push((s.name.clone(), inv, witnesses));
        }
        let mut deg_functors = Vec::new();
        for s in &self.deg_functors {
            let at = format!("deg_functor {}", s.name);
            let dom = lookup(&graded, &s.dom, "graded")?.clone();
            let cod = lookup(&graded, &s.cod, "graded")?.clone();
            let f = lookup(&functors, &s.functor, "functor")?.clone();
            let r = if s.adjuster.is_empty() {
                vec![0; dom.base().num_objects()]
            } else {
                s.adjuster.clone()
            };
            if r.len() != dom.base().num_objects() || r.iter().any(|&a| a >= dom.group().order()) {
                return Err(schema(&at, "adjuster needs one group element per object"));
            }
            deg_functors.push((s.name.clone(), DegFunctor::new(dom, cod, f, r)?));
        }
        let mut equiv_cells = Vec::new();
        for s in &self.equiv_cells {
            let at = format!("equiv_cell {}", s.name);
            let f = lookup(&equiv_functors, &s.src, "equiv_functor")?;
            let g = lookup(&equiv_functors, &s.tgt, "equiv_functor")?;
            let comps = rd.components(f.functor(), g.functor(), &s.components, &at)?;
            let eta = NatTrans::new(f.functor().clone(), g.functor().clone(), comps)?;
            equiv_cells.push((
                s.name.clone(),
                EquivMorphism::new(f.clone(), g.clone(), eta)?,
            ));
        }
        let mut deg_cells = Vec::new();
        for s in &self.deg_cells {
            let at = format!("deg_cell {}", s.name);
            let f = lookup(&deg_functors, &s.src, "deg_functor")?;
            let g = lookup(&deg_functors, &s.tgt, "deg_functor")?;
            let comps = rd.components(f.functor(), g.functor(), &s.components, &at)?;
            let t = NatTrans::new(f.functor().clone(), g.functor().clone(), comps)?;
            deg_cells.push((s.name.clone(), DegMorphism::new(f.clone(), g.clone(), t)?));
        }
        Ok(Model {
            ring,
            groups,
            categories,
            gcategories,
            graded,
            functors,
            transformations,
            equiv_functors,
            inv_functors,
            deg_functors,
            equiv_cells,
            deg_cells,
            orbit: self.orbit.clone(),
            smash: self.smash.clone(),
        })
    }
}

fn vector(v: &[Scalar]) -> Vector {
    v.iter().map(ToString::to_string).collect()
}

fn hom_matrices(f: &LinFunctor) -> Vec<HomMatrix> {
    let (dom, cod) = (f.dom(), f.cod());
    let n = dom.num_objects();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let m = f.mat(x, y);
            if dom.dim(x, y) == 0 || cod.dim(f.obj(x), f.obj(y)) == 0 {
                continue;
            }
            let matrix = (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
                .collect();
            out.push(HomMatrix {
                src: x,
                tgt: y,
                matrix,
            });
        }
    }
    out
}

/// Builds a bundle, reusing the name of anything already written and
/// naming dependencies `"{owner}.{role}"` otherwise.
#[derive(Debug)]
pub struct BundleWriter {
    bundle: Bundle,
    groups: Vec<(String, Arc<FinGroup>)>,
    categories: Vec<(String, Arc<LinCat>)>,
    gcategories: Vec<(String, Arc<GCategory>)>,
    graded: Vec<(String, Arc<GradedCat>)>,
    functors: Vec<(String, LinFunctor)>,
    equiv_functors: Vec<(String, EquivFunctor)>,
    deg_functors: Vec<(String, DegFunctor)>,
    inv_functors: Vec<(String, InvFunctor)>,
}

impl BundleWriter {
    pub fn new(ring: RingSpec) -> Self {
        BundleWriter {
            bundle: Bundle {
                ring: ring.to_string(),
                groups: Vec::new(),
                categories: Vec::new(),
                gcategories: Vec::new(),
                graded: Vec::new(),
                functors: Vec::new(),
                transformations: Vec::new(),
                equiv_functors: Vec::new(),
                inv_functors: Vec::new(),
                deg_functors: Vec::new(),
                equiv_cells: Vec::new(),
                deg_cells: Vec::new(),
                orbit: None,
                smash: None,
            },
            groups: Vec::new(),
            categories: Vec::new(),
            gcategories: Vec::new(),
            graded: Vec::new(),
            functors: Vec::new(),
            equiv_functors: Vec::new(),
            deg_functors: Vec::new(),
            inv_functors: Vec::new(),
        }
    }

    pub fn finish(self) -> Bundle {
        self.bundle
    }

    pub fn group(&mut self, name: &str, g: &Arc<FinGroup>) -> String {
        if let Some((n, _)) = self.groups.iter().find(|(_, h)| same_group(h, g)) {
            return n.clone();
        }
        self.groups.push((name.to_string(), g.clone()));
        self.bundle.groups.push(GroupSpec {
            name: name.to_string(),
            elements: g.names().to_vec(),
            mul: g.table().to_vec(),
        });
        name.to_string()
    }

    pub fn category(&mut self, name: &str, c: &Arc<LinCat>) -> String {
        if let Some((n, _)) = self.categories.iter().find(|(_, d)| same_cat(d, c)) {
            return n.clone();
        }
        self.categories.push((name.to_string(), c.clone()));
        let n = c.num_objects();
        let mut homs = Vec::new();
        let mut compositions = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if c.dim(x, y) > 0 {
                    homs.push(HomSpec {
                        src: x,
                        tgt: y,
                        basis: c.basis(x, y).to_vec(),
                    });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for j in 0..c.dim(y, z) {
                        for i in 0..c.dim(x, y) {
                            let terms: Vec<(usize, String)> = c
                                .comp_entry(x, y, z, j, i)
                                .iter()
                                .enumerate()
                                .filter(|(_, s)| !s.is_zero())
                                .map(|(k, s)| (k, s.to_string()))
                                .collect();
                            if !terms.is_empty() {
                                compositions.push(CompSpec {
                                    src: x,
                                    mid: y,
                                    tgt: z,
                                    g: j,
                                    f: i,
                                    terms,
                                });
                            }
                        }
                    }
                }
            }
        }
        self.bundle.categories.push(CategorySpec {
            name: name.to_string(),
            objects: c.objects().to_vec(),
            homs,
            identities: (0..n).map(|x| vector(c.identity_coeffs(x))).collect(),
            compositions,
        });
        name.to_string()
    }

    pub fn gcategory(&mut self, name: &str, c: &Arc<GCategory>) -> String {
        if let Some((n, _)) = self.gcategories.iter().find(|(_, d)| same_gcat(d, c)) {
            return n.clone();
        }
        let category = self.category(&format!("{name}.base"), c.base());
        let group = self.group(&format!("{name}.group"), c.group());
        self.gcategories.push((name.to_string(), c.clone()));
        let action = c
            .group()
            .elements()
            .map(|a| ActionSpec {
                objects: c.functor(a).obj_map().to_vec(),
                homs: hom_matrices(c.functor(a)),
            })
            .collect();
        self.bundle.gcategories.push(GCategorySpec {
            name: name.to_string(),
            category,
            group,
            action,
        });
        name.to_string()
    }

    pub fn graded(&mut self, name: &str, b: &Arc<GradedCat>) -> String {
        if let Some((n, _)) = self.graded.iter().find(|(_, d)| same_graded(d, b)) {
            return n.clone();
        }
        let category = self.category(&format!("{name}.base"), b.base());
        let group = self.group(&format!("{name}.group"), b.group());
        self.graded.push((name.to_string(), b.clone()));
        let n = b.base().num_objects();
        let degrees = (0..n * n)
            .filter(|k| b.base().dim(k / n, k % n) > 0)
            .map(|k| DegreeSpec {
                src: k / n,
                tgt: k % n,
                degrees: b.degrees(k / n, k % n).to_vec(),
            })
            .collect();
        self.bundle.graded.push(GradedSpec {
            name: name.to_string(),
            category,
            group,
            degrees,
        });
        name.to_string()
    }

    pub fn functor(&mut self, name: &str, f: &LinFunctor) -> String {
        if let Some((n, _)) = self.functors.iter().find(|(_, g)| g == f) {
            return n.clone();
        }
        let dom = self.category(&format!("{name}.dom"), f.dom());
        let cod = self.category(&format!("{name}.cod"), f.cod());
        self.functors.push((name.to_string(), f.clone()));
        self.bundle.functors.push(FunctorSpec {
            name: name.to_string(),
            dom,
            cod,
            objects: f.obj_map().to_vec(),
            homs: hom_matrices(f),
        });
        name.to_string()
    }

    pub fn transformation(&mut self, name: &str, t: &NatTrans) -> String {
        let src = self.functor(&format!("{name}.src"), t.src());
        let tgt = self.functor(&format!("{name}.tgt"), t.tgt());
        self.bundle.transformations.push(TransformationSpec {
            name: name.to_string(),
            src,
            tgt,
            components: t.components().iter().map(|m| vector(&m.coeffs)).collect(),
        });
        name.to_string()
    }

    fn adjuster(ts: &[NatTrans], strict: bool) -> Vec<Vec<Vector>> {
        if strict {
            return Vec::new();
        }
        ts.iter()
            .map(|t| t.components().iter().map(|m| vector(&m.coeffs)).collect())
            .collect()
    }

    pub fn equiv_functor(&mut self, name: &str, e: &EquivFunctor) -> String {
        if let Some((n, _)) = self.equiv_functors.iter().find(|(_, f)| f == e) {
            return n.clone();
        }
        let dom = self.gcategory(&format!("{name}.dom"), e.dom());
        let cod = self.gcategory(&format!("{name}.cod"), e.cod());
        let functor = self.functor(&format!("{name}.functor"), e.functor());
        self.equiv_functors.push((name.to_string(), e.clone()));
        self.bundle.equiv_functors.push(EquivFunctorSpec {
            name: name.to_string(),
            dom,
            cod,
            functor,
            adjuster: Self::adjuster(e.adjuster(), e.is_strict()),
        });
        name.to_string()
    }

    pub fn inv_functor(
        &mut self,
        name: &str,
        f: &InvFunctor,
        witnesses: &[DensityWitness],
    ) -> String {
        if let Some((n, _)) = self.inv_functors.iter().find(|(_, g)| g == f) {
            return n.clone();
        }
        let dom = self.gcategory(&format!("{name}.dom"), f.dom());
        let cod = self.category(&format!("{name}.cod"), f.cod());
        let functor = self.functor(&format!("{name}.functor"), f.functor());
        self.inv_functors.push((name.to_string(), f.clone()));
        let strict = f.adjuster().iter().all(NatTrans::is_identity);
        self.bundle.inv_functors.push(InvFunctorSpec {
            name: name.to_string(),
            dom,
            cod,
            functor,
            adjuster: Self::adjuster(f.adjuster(), strict),
            witnesses: witnesses
                .iter()
                .map(|w| WitnessSpec {
                    source: w.source,
                    target: w.target,
                    forward: vector(&w.forward.coeffs),
                    backward: vector(&w.backward.coeffs),
                })
                .collect(),
        });
        name.to_string()
    }

    pub fn deg_functor(&mut self, name: &str, h: &DegFunctor) -> String {
        if let Some((n, _)) = self.deg_functors.iter().find(|(_, g)| g == h) {
            return n.clone();
        }
        let dom = self.graded(&format!("{name}.dom"), h.dom());
        let cod = self.graded(&format!("{name}.cod"), h.cod());
        let functor = self.functor(&format!("{name}.functor"), h.functor());
        self.deg_functors.push((name.to_string(), h.clone()));
        self.bundle.deg_functors.push(DegFunctorSpec {
            name: name.to_string(),
            dom,
            cod,
            functor,
            adjuster: if h.is_strict() {
                Vec::new()
            } else {
                h.adjuster().to_vec()
            },
        });
        name.to_string()
    }

    pub fn equiv_cell(&mut self, name: &str, m: &EquivMorphism) -> String {
        let src = self.equiv_functor(&format!("{name}.src"), m.src());
        let tgt = self.equiv_functor(&format!("{name}.tgt"), m.tgt());
        self.bundle.equiv_cells.push(CellSpec {
            name: name.to_string(),
            src,
            tgt,
            components: m
                .eta()
                .components()
                .iter()
                .map(|c| vector(&c.coeffs))
                .collect(),
        });
        name.to_string()
    }

    pub fn deg_cell(&mut self, name: &str, m: &DegMorphism) -> String {
        let src = self.deg_functor(&format!("{name}.src"), m.src());
        let tgt = self.deg_functor(&format!("{name}.tgt"), m.tgt());
        self.bundle.deg_cells.push(CellSpec {
            name: name.to_string(),
            src,
            tgt,
            components: m
                .theta()
                .components()
                .iter()
                .map(|c| vector(&c.coeffs))
                .collect(),
        });
        name.to_string()
    }

    /// `C/G` with `(P, psi)` and the block index; the carrier is named `name`.
    pub fn orbit(&mut self, name: &str, source: &str, o: &OrbitCat) -> String {
        let src = self.gcategory(source, o.source());
        self.category(name, o.category());
        let graded = self.graded(name, o.carrier());
        let covering = self.inv_functor(&format!("{name}.P"), o.p(), &[]);
        let n = o.category().num_objects();
        let block_index = (0..n * n)
            .filter(|k| o.category().dim(k / n, k % n) > 0)
            .map(|k| BlockIndex {
                src: k / n,
                tgt: k % n,
                blocks: o.block_table(k / n, k % n),
            })
            .collect();
        self.bundle.orbit = Some(OrbitInfo {
            source: src,
            graded,
            covering,
            block_index,
        });
        name.to_string()
    }

    /// `B#G` with `(Q, id)` and the object table; the carrier is named `name`.
    pub fn smash(&mut self, name: &str, source: &str, s: &SmashCat) -> String {
        let src = self.graded(source, s.source());
        self.category(name, s.category());
        let gcategory = self.gcategory(name, s.carrier());
        let covering = self.inv_functor(&format!("{name}.Q"), s.q(), &[]);
        self.bundle.smash = Some(SmashInfo {
            source: src,
            gcategory,
            covering,
            objects: s.object_table(),
        });
        name.to_string()
    }
}

impl Model {
    /// The canonical bundle of this model. `emit(load(b))` is stable under
    /// another round of `load` and `emit`.
    pub fn emit(&self) -> Bundle {
        let mut w = BundleWriter::new(self.ring);
        for (n, g) in &self.groups {
            w.group(n, g);
        }
        for (n, c) in &self.categories {
            w.category(n, c);
        }
        for (n, c) in &self.gcategories {
            w.gcategory(n, c);
        }
        for (n, b) in &self.graded {
            w.graded(n, b);
        }
        for (n, f) in &self.functors {
            w.functor(n, f);
        }
        for (n, t) in &self.transformations {
            w.transformation(n, t);
        }
        for (n, e) in &self.equiv_functors {
            w.equiv_functor(n, e);
        }
        for (n, f, ws) in &self.inv_functors {
            w.inv_functor(n, f, ws);
        }
        for (n, h) in &self.deg_functors {
            w.deg_functor(n, h);
        }
        for (n, m) in &self.equiv_cells {
            w.equiv_cell(n, m);
        }
        for (n, m) in &self.deg_cells {
            w.deg_cell(n, m);
        }
        let mut b = w.finish();
        b.orbit = self.orbit.clone();
        b.smash = self.smash.clone();
        b
    }

    pub fn gcategory(&self, name: &str) -> Result<&Arc<GCategory>> {
        lookup(&self.gcategories, name, "gcategory")
    }

    pub fn graded_cat(&self, name: &str) -> Result<&Arc<GradedCat>> {
        lookup(&self.graded, name, "graded")
    }
}

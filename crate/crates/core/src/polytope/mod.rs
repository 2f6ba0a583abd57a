//! Exact rational convex polyhedra of dimension at most four.
//!
//! A [`Polyhedron`] is stored as an irredundant, canonically ordered list of
//! [`HalfSpace`]s together with its vertices and extreme rays. Vertex
//! enumeration is exhaustive over facet subsets, which is plenty for the
//! handful of facets that local toric models have.

mod face;

pub use face::{Face, FaceChart, FaceLattice};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    display_int_vec, display_rat_vec, dot_int_rat, json, linalg, primitive, primitive_from_rational,
    to_rat_vec, Int, IntVec, RatVec, Rational,
};

pub const MAX_DIM: usize = 4;
pub const MAX_HALFSPACES: usize = 64;

/// `{x : ⟨normal, x⟩ ≥ level}` with a primitive inward normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawHalfSpace")]
pub struct HalfSpace {
    #[serde(with = "json::int_vec")]
    normal: IntVec,
    #[serde(with = "json::rational")]
    level: Rational,
}

#[derive(Deserialize)]
struct RawHalfSpace {
    #[serde(with = "json::int_vec")]
    normal: IntVec,
    #[serde(with = "json::rational")]
    level: Rational,
}

impl TryFrom<RawHalfSpace> for HalfSpace {
    type Error = Error;
    fn try_from(raw: RawHalfSpace) -> Result<Self> {
        HalfSpace::new(raw.normal, raw.level)
    }
}

impl HalfSpace {
    /// Normalizes the normal to be primitive, rescaling the level to describe
    /// the same set.
    pub fn new(normal: IntVec, level: Rational) -> Result<Self> {
        let g = crate::exactnum::gcd_all(&normal);
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        let normal = primitive(&normal)?;
        let level = level / Rational::from_integer(g);
        Ok(HalfSpace { normal, level })
    }

    pub fn from_i64(normal: &[i64], level: Rational) -> Self {
        HalfSpace::new(crate::exactnum::ivec(normal), level).expect("nonzero normal")
    }

    pub fn normal(&self) -> &[Int] {
        &self.normal
    }

    pub fn level(&self) -> &Rational {
        &self.level
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        dot_int_rat(&self.normal, x)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.evaluate(x) >= self.level
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.evaluate(x) == self.level
    }

    /// Pairing of the normal with a direction.
    pub fn pair_direction(&self, d: &[Int]) -> Int {
        crate::exactnum::dot_int(&self.normal, d)
    }
}

impl fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{}, x> >= {}",
            display_int_vec(&self.normal),
            crate::exactnum::display_rational(&self.level)
        )
    }
}

/// Vertices and extreme rays, each list sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VRepresentation {
    #[serde(with = "json::rational_vec_list")]
    pub vertices: Vec<RatVec>,
    #[serde(with = "json::int_vec_list")]
    pub rays: Vec<IntVec>,
}

impl VRepresentation {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }
}

/// A pointed, full-dimensional rational polyhedron.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawPolyhedron", into = "RawPolyhedron")]
pub struct Polyhedron {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
    vrep: VRepresentation,
}

#[derive(Serialize, Deserialize)]
struct RawPolyhedron {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
}

impl TryFrom<RawPolyhedron> for Polyhedron {
    type Error = Error;
    fn try_from(raw: RawPolyhedron) -> Result<Self> {
        Polyhedron::new(raw.dim, raw.halfspaces)
    }
}

impl From<Polyhedron> for RawPolyhedron {
    fn from(p: Polyhedron) -> Self {
        RawPolyhedron { dim: p.dim, halfspaces: p.halfspaces }
    }
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.halfspaces == other.halfspaces
    }
}

impl Eq for Polyhedron {}

impl Polyhedron {
    /// Builds the polyhedron, dropping redundant halfspaces and sorting the
    /// rest lexicographically by normal.
    pub fn new(dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Capacity(format!("ambient dimension {dim} outside 1..={MAX_DIM}")));
        }
        for h in &halfspaces {
            if h.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: h.dim() });
            }
        }
        // same normal: only the largest level matters
        let mut by_normal: BTreeMap<IntVec, Rational> = BTreeMap::new();
        for h in halfspaces {
            by_normal
                .entry(h.normal)
                .and_modify(|l| {
                    if h.level > *l {
                        *l = h.level.clone();
                    }
                })
                .or_insert(h.level);
        }
        let hs: Vec<HalfSpace> = by_normal
            .into_iter()
            .map(|(normal, level)| HalfSpace { normal, level })
            .collect();
        if hs.len() > MAX_HALFSPACES {
            return Err(Error::Capacity(format!(
                "{} halfspaces exceed the limit of {MAX_HALFSPACES}",
                hs.len()
            )));
        }
        let normals: Vec<RatVec> = hs.iter().map(|h| to_rat_vec(&h.normal)).collect();
        if linalg::rank(&normals, dim) < dim {
            return Err(Error::NotPointed);
        }

        let vrep = enumerate_generators(dim, &hs);
        if vrep.vertices.is_empty() {
            return Err(Error::Empty);
        }
        let affine = affine_dimension(&vrep.vertices, &vrep.rays).unwrap_or(0);
        if affine < dim {
            return Err(Error::NotFullDimensional { affine, ambient: dim });
        }

        let halfspaces: Vec<HalfSpace> = hs
            .into_iter()
            .filter(|h| {
                let verts: Vec<RatVec> =
                    vrep.vertices.iter().filter(|v| h.is_tight(v)).cloned().collect();
                let rays: Vec<IntVec> = vrep
                    .rays
                    .iter()
                    .filter(|r| h.pair_direction(r).is_zero())
                    .cloned()
                    .collect();
                affine_dimension(&verts, &rays) == Some(dim - 1)
            })
            .collect();

        Ok(Polyhedron { dim, halfspaces, vrep })
    }

    /// Polyhedron from `{x : ⟨nᵢ, x⟩ ≥ cᵢ}` written with small integer data.
    pub fn from_i64(dim: usize, rows: &[(&[i64], i64)]) -> Result<Self> {
        let hs = rows
            .iter()
            .map(|(n, c)| HalfSpace::new(crate::exactnum::ivec(n), Rational::from_integer(Int::from(*c))))
            .collect::<Result<Vec<_>>>()?;
        Polyhedron::new(dim, hs)
    }

    /// Convex hull of `vertices` plus the cone generated by `rays`.
    pub fn from_generators(vertices: &[RatVec], rays: &[IntVec]) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::Empty);
        };
        let dim = first.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Capacity(format!("ambient dimension {dim} outside 1..={MAX_DIM}")));
        }
        for v in vertices {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
            }
        }
        for r in rays {
            if r.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: r.len() });
            }
        }
        let verts: Vec<RatVec> = vertices.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let ray_dirs: Vec<RatVec> = rays.iter().map(|r| to_rat_vec(r)).collect();
        let affine = affine_dimension(&verts, rays).unwrap_or(0);
        if affine < dim {
            return Err(Error::NotFullDimensional { affine, ambient: dim });
        }

        // generator g < nv is a point, otherwise a ray
        let nv = verts.len();
        let total = nv + ray_dirs.len();
        let mut candidates: BTreeSet<HalfSpace> = BTreeSet::new();
        for combo in combinations(total, dim) {
            let Some(&anchor) = combo.iter().find(|&&g| g < nv) else {
                continue;
            };
            let p0 = &verts[anchor];
            let dirs: Vec<RatVec> = combo
                .iter()
                .filter(|&&g| g != anchor)
                .map(|&g| {
                    if g < nv {
                        verts[g].iter().zip(p0).map(|(a, b)| a - b).collect()
                    } else {
                        ray_dirs[g - nv].clone()
                    }
                })
                .collect();
            let ns = linalg::nullspace(&dirs, dim);
            if ns.len() != 1 {
                continue;
            }
            let normal = primitive_from_rational(&ns[0])?;
            let level = dot_int_rat(&normal, p0);
            let mut pos = false;
            let mut neg = false;
            for v in &verts {
                let s = dot_int_rat(&normal, v) - &level;
                pos |= s.is_positive();
                neg |= s.is_negative();
            }
            for r in rays {
                let s = crate::exactnum::dot_int(&normal, r);
                pos |= s.is_positive();
                neg |= s.is_negative();
            }
            match (pos, neg) {
                (_, false) => {
                    candidates.insert(HalfSpace { normal, level });
                }
                (false, true) => {
                    candidates.insert(HalfSpace { normal: normal.iter().map(|x| -x).collect(), level: -level });
                }
                _ => {}
            }
        }
        Polyhedron::new(dim, candidates.into_iter().collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn vrep(&self) -> &VRepresentation {
        &self.vrep
    }

    /// Exact vertices and extreme rays.
    pub fn v_representation(&self) -> VRepresentation {
        self.vrep.clone()
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vrep.vertices
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.vrep.rays
    }

    pub fn is_bounded(&self) -> bool {
        self.vrep.is_bounded()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// Index of the facet with this normal, if any.
    pub fn facet_index(&self, normal: &[Int]) -> Option<usize> {
        self.halfspaces.iter().position(|h| h.normal == normal)
    }

    /// Facets tight at a point.
    pub fn active_at(&self, x: &[Rational]) -> Vec<usize> {
        (0..self.halfspaces.len())
            .filter(|&i| self.halfspaces[i].is_tight(x))
            .collect()
    }

    /// Intersection with further halfspaces.
    pub fn intersect(&self, extra: &[HalfSpace]) -> Result<Polyhedron> {
        let mut hs = self.halfspaces.clone();
        hs.extend(extra.iter().cloned());
        Polyhedron::new(self.dim, hs)
    }

    /// Minimum of `⟨normal, x⟩` over the polyhedron with a minimizing vertex,
    /// or `None` when the functional is unbounded below.
    pub fn minimize(&self, normal: &[Int]) -> Option<(Rational, RatVec)> {
        if self.vrep.rays.iter().any(|r| crate::exactnum::dot_int(normal, r).is_negative()) {
            return None;
        }
        self.vrep
            .vertices
            .iter()
            .map(|v| (dot_int_rat(normal, v), v.clone()))
            .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
    }

    /// Complete face lattice.
    pub fn face_lattice(&self) -> FaceLattice {
        FaceLattice::build(self)
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.halfspaces.iter().map(|h| h.to_string()).collect();
        write!(f, "{{{}}}", parts.join("; "))?;
        let verts: Vec<String> = self.vrep.vertices.iter().map(|v| display_rat_vec(v)).collect();
        write!(f, " vertices [{}]", verts.join(" "))
    }
}

/// Rank of `{pᵢ − p₀} ∪ dirs`; `None` when there are no points.
pub fn affine_dimension(points: &[RatVec], dirs: &[IntVec]) -> Option<usize> {
    let p0 = points.first()?;
    let n = p0.len();
    let mut rows: Vec<RatVec> = points[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    rows.extend(dirs.iter().map(|d| to_rat_vec(d)));
    Some(linalg::rank(&rows, n))
}

fn enumerate_generators(dim: usize, hs: &[HalfSpace]) -> VRepresentation {
    let normals: Vec<RatVec> = hs.iter().map(|h| to_rat_vec(&h.normal)).collect();

    let vertex_combos = combinations(hs.len(), dim);
    let vertices: BTreeSet<RatVec> = vertex_combos
        .par_iter()
        .filter_map(|combo| {
            let a: Vec<RatVec> = combo.iter().map(|&i| normals[i].clone()).collect();
            let b: Vec<Rational> = combo.iter().map(|&i| hs[i].level.clone()).collect();
            let x = linalg::solve_square(&a, &b)?;
            hs.iter().all(|h| h.contains(&x)).then_some(x)
        })
        .collect();

    let ray_combos = combinations(hs.len(), dim - 1);
    let rays: BTreeSet<IntVec> = ray_combos
        .par_iter()
        .flat_map_iter(|combo| {
            let a: Vec<RatVec> = combo.iter().map(|&i| normals[i].clone()).collect();
            let ns = linalg::nullspace(&a, dim);
            let mut found = Vec::new();
            if ns.len() == 1 {
                if let Ok(d) = primitive_from_rational(&ns[0]) {
                    let neg: IntVec = d.iter().map(|x| -x).collect();
                    for cand in [d, neg] {
                        if hs.iter().all(|h| !h.pair_direction(&cand).is_negative()) {
                            found.push(cand);
                        }
                    }
                }
            }
            found
        })
        .collect();

    VRepresentation { vertices: vertices.into_iter().collect(), rays: rays.into_iter().collect() }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

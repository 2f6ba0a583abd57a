use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::cone::Fan;
use crate::error::{Error, Result};
use crate::exactnum::{
    display_int_vec, json, linalg, primitive_from_rational, Int, IntVec, RatVec,
    Rational,
};
use crate::polytope::Polyhedron;

/// `u₃ + u₄ + a·u₁ + b·u₂ = 0` for the wall `cone(u₁, u₂)` between the
/// maximal cones `cone(u₁, u₂, u₃)` and `cone(u₁, u₂, u₄)`. The torus-invariant
/// curve dual to the wall has normal bundle `O(a) ⊕ O(b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallRelation {
    #[serde(with = "json::int_vec_list")]
    pub wall: Vec<IntVec>,
    #[serde(with = "json::int_vec_list")]
    pub flanking: Vec<IntVec>,
    #[serde(with = "json::integer")]
    pub a: Int,
    #[serde(with = "json::integer")]
    pub b: Int,
}

impl WallRelation {
    pub fn holds(&self) -> bool {
        (0..self.wall[0].len()).all(|i| {
            let s = &self.flanking[0][i] + &self.flanking[1][i] + &self.a * &self.wall[0][i] + &self.b * &self.wall[1][i];
            s.is_zero()
        })
    }

    /// Same relation with the wall rays listed in the other order.
    pub fn swapped(&self) -> WallRelation {
        WallRelation {
            wall: vec![self.wall[1].clone(), self.wall[0].clone()],
            flanking: self.flanking.clone(),
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

/// Wall relation of the interior wall spanned by `u1, u2` (in that order) in
/// a smooth rank-three fan.
pub fn curve_normal_bundle(fan: &Fan, u1: &[Int], u2: &[Int]) -> Result<WallRelation> {
    if fan.rank() != 3 {
        return Err(Error::InvalidWall(format!("fan has rank {}, expected 3", fan.rank())));
    }
    let wall = vec![u1.to_vec(), u2.to_vec()];
    let containing = fan.cones_with_rays(&wall);
    if containing.len() != 2 {
        return Err(Error::InvalidWall(format!(
            "cone({}, {}) lies in {} maximal cones",
            display_int_vec(u1),
            display_int_vec(u2),
            containing.len()
        )));
    }
    let mut flanking = Vec::with_capacity(2);
    for &ci in &containing {
        let c = &fan.cones()[ci];
        if !c.is_smooth() {
            return Err(Error::NonSmooth(format!("{c} is not a smooth cone")));
        }
        let other = c.rays().iter().find(|r| !wall.contains(r)).expect("simplicial cone of rank 3").clone();
        flanking.push(other);
    }
    let sum: RatVec = (0..3).map(|i| Rational::from_integer(&flanking[0][i] + &flanking[1][i])).collect();
    let a_mat: Vec<RatVec> = (0..3)
        .map(|i| vec![Rational::from_integer(u1[i].clone()), Rational::from_integer(u2[i].clone())])
        .collect();
    let coeffs = linalg::solve(&a_mat, &sum, 2)
        .ok_or_else(|| Error::NonSmooth("flanking rays do not close up over the wall".into()))?;
    if !coeffs.iter().all(|c| c.is_integer()) {
        return Err(Error::NonSmooth("wall relation has fractional coefficients".into()));
    }
    let a = -coeffs[0].to_integer();
    let b = -coeffs[1].to_integer();
    Ok(WallRelation { wall, flanking, a, b })
}

/// A compact torus-invariant curve on a toric surface, seen as a bounded edge
/// of its moment polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCurve {
    /// Endpoints in ambient coordinates.
    #[serde(with = "json::rational_vec_list")]
    pub endpoints: Vec<RatVec>,
    #[serde(with = "json::integer")]
    pub self_intersection: Int,
    #[serde(with = "json::rational")]
    pub lattice_length: Rational,
}

fn det2(a: &[Int], b: &[Int]) -> Int {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// `s` with `prev + next + s·v = 0`.
fn self_intersection(prev: &[Int], v: &[Int], next: &[Int]) -> Result<Int> {
    let sum = [&prev[0] + &next[0], &prev[1] + &next[1]];
    let k = if !v[0].is_zero() { 0 } else { 1 };
    if !(&sum[k] % &v[k]).is_zero() {
        return Err(Error::NonSmooth(format!("{} + {} is not a multiple of {}", display_int_vec(prev), display_int_vec(next), display_int_vec(v))));
    }
    let s = -(&sum[k] / &v[k]);
    if (0..2).any(|i| !(&sum[i] + &s * &v[i]).is_zero()) {
        return Err(Error::NonSmooth(format!("{} + {} is not parallel to {}", display_int_vec(prev), display_int_vec(next), display_int_vec(v))));
    }
    Ok(s)
}

/// Self-intersections and lattice lengths of the compact curves on the toric
/// surface of facet `facet` of a smooth 3-dimensional polyhedron, in the
/// order of the facets of the restricted polygon.
pub fn surface_face_analysis(p: &Polyhedron, facet: usize) -> Result<Vec<EdgeCurve>> {
    let face = p.face_from_active(&[facet])?;
    if face.dim != 2 {
        return Err(Error::NotAFace(format!("facet {facet} restricts to a face of dimension {}", face.dim)));
    }
    let (q, chart) = p.restrict_with_chart(&face)?;
    let hs = q.halfspaces();
    let mut out = Vec::new();
    for (ei, h) in hs.iter().enumerate() {
        let ends: Vec<&RatVec> = q.vertices().iter().filter(|v| h.is_tight(v)).collect();
        if ends.len() != 2 {
            continue;
        }
        let mut neighbours = Vec::with_capacity(2);
        for v in &ends {
            let active = q.active_at(v);
            if active.len() != 2 {
                return Err(Error::NonSimpleVertex { vertex: crate::exactnum::display_rat_vec(v), facets: active.len() });
            }
            let other = active.into_iter().find(|&i| i != ei).expect("two facets");
            if !det2(h.normal(), hs[other].normal()).abs().is_one() {
                return Err(Error::NonSmooth(format!("polygon vertex {} is singular", crate::exactnum::display_rat_vec(v))));
            }
            neighbours.push(hs[other].normal().to_vec());
        }
        let s = self_intersection(&neighbours[0], h.normal(), &neighbours[1])?;
        let d: RatVec = ends[1].iter().zip(ends[0]).map(|(a, b)| a - b).collect();
        let u = primitive_from_rational(&d)?;
        let k = u.iter().position(|x| !x.is_zero()).expect("nonzero direction");
        let lattice_length = &d[k] / Rational::from_integer(u[k].clone());
        out.push(EdgeCurve {
            endpoints: ends.iter().map(|v| chart.embed(v)).collect(),
            self_intersection: s,
            lattice_length,
        });
    }
    Ok(out)
}

fn half(v: &[Int]) -> u8 {
    if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
        0
    } else {
        1
    }
}

/// Sorts nonzero plane vectors by angle from the positive first axis,
/// counterclockwise, using exact comparisons.
pub fn sort_rays_counterclockwise(rays: &mut [IntVec]) {
    rays.sort_by(|a, b| {
        half(a).cmp(&half(b)).then_with(|| match det2(a, b).cmp(&Int::zero()) {
            Ordering::Greater => Ordering::Less,
            Ordering::Less => Ordering::Greater,
            Ordering::Equal => Ordering::Equal,
        })
    });
}

/// Self-intersections `sᵢ` with `vᵢ₋₁ + vᵢ₊₁ + sᵢ·vᵢ = 0` for a complete
/// smooth fan in the plane, given by its rays in any order. The output
/// follows counterclockwise order starting from the first axis.
pub fn fan2d_self_intersections(rays: &[IntVec]) -> Result<Vec<Int>> {
    if rays.len() < 3 {
        return Err(Error::InvalidInput(format!("a complete fan needs at least 3 rays, got {}", rays.len())));
    }
    let mut sorted: Vec<IntVec> = Vec::with_capacity(rays.len());
    for r in rays {
        if r.len() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: r.len() });
        }
        sorted.push(crate::exactnum::primitive(r)?);
    }
    sort_rays_counterclockwise(&mut sorted);
    let n = sorted.len();
    for i in 0..n {
        let d = det2(&sorted[i], &sorted[(i + 1) % n]);
        if !d.is_one() {
            return Err(Error::NonSmooth(format!(
                "consecutive rays {} and {} have determinant {d}",
                display_int_vec(&sorted[i]),
                display_int_vec(&sorted[(i + 1) % n])
            )));
        }
    }
    (0..n)
        .map(|i| self_intersection(&sorted[(i + n - 1) % n], &sorted[i], &sorted[(i + 1) % n]))
        .collect()
}

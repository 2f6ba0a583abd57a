use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{display_rat_vec, json, smith_normal_form, IntVec, LatticeMatrix, RatVec};
use crate::polytope::{Face, Polyhedron};

/// Lattice smoothness of a vertex cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Smooth,
    /// Invariant factors greater than one of the matrix of active normals.
    Orbifold {
        #[serde(with = "json::int_vec")]
        factors: IntVec,
    },
}

impl Verdict {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Verdict::Smooth)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexVerdict {
    #[serde(with = "json::rational_vec")]
    pub vertex: RatVec,
    #[serde(with = "json::int_vec_list")]
    pub normals: Vec<IntVec>,
    pub verdict: Verdict,
}

fn verdict_for(normals: &[IntVec], dim: usize) -> Verdict {
    let m = LatticeMatrix::from_rows(normals, dim).expect("consistent rows");
    let factors = smith_normal_form(&m).torsion_factors();
    if factors.is_empty() {
        Verdict::Smooth
    } else {
        Verdict::Orbifold { factors }
    }
}

/// Smoothness of every vertex, in vertex order. Each vertex must be simple.
pub fn vertex_smoothness(p: &Polyhedron) -> Result<Vec<VertexVerdict>> {
    p.vertices()
        .iter()
        .map(|v| {
            let active = p.active_at(v);
            if active.len() != p.dim() {
                return Err(Error::NonSimpleVertex { vertex: display_rat_vec(v), facets: active.len() });
            }
            let normals: Vec<IntVec> = active.iter().map(|&i| p.halfspaces()[i].normal().to_vec()).collect();
            let verdict = verdict_for(&normals, p.dim());
            Ok(VertexVerdict { vertex: v.clone(), normals, verdict })
        })
        .collect()
}

/// Torsion of `ℤⁿ` modulo the span of the facet normals tight on the face,
/// as invariant factors greater than one (empty when the face is smooth).
pub fn face_orbifold_group(p: &Polyhedron, face: &Face) -> Result<IntVec> {
    let codim = p.dim() - face.dim;
    if face.active.len() != codim {
        return Err(Error::NonSimplicialFace(format!(
            "{} facets meet along a face of codimension {codim}",
            face.active.len()
        )));
    }
    if codim == 0 {
        return Ok(IntVec::new());
    }
    let normals: Vec<IntVec> = face.active.iter().map(|&i| p.halfspaces()[i].normal().to_vec()).collect();
    let m = LatticeMatrix::from_rows(&normals, p.dim())?;
    Ok(smith_normal_form(&m).torsion_factors())
}

/// A proper face with nontrivial orbifold group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularFace {
    pub face: Face,
    pub factors: IntVec,
}

/// Proper faces with nontrivial orbifold group, by increasing codimension.
pub fn singular_faces(p: &Polyhedron) -> Result<Vec<SingularFace>> {
    let lattice = p.face_lattice();
    let mut out = Vec::new();
    for k in (0..p.dim()).rev() {
        for face in lattice.faces(k) {
            let factors = face_orbifold_group(p, face)?;
            if !factors.is_empty() {
                out.push(SingularFace { face: face.clone(), factors });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{ivec, rvec};
    use crate::toric::fixtures::*;

    #[test]
    fn model_p_vertex_is_z2_z2() {
        let v = vertex_smoothness(&model_p()).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].vertex, rvec(&[0, 0, 0]));
        assert_eq!(v[0].verdict, Verdict::Orbifold { factors: ivec(&[2, 2]) });
    }

    #[test]
    fn model_p_rays_are_z2() {
        let p = model_p();
        let lattice = p.face_lattice();
        let edges = lattice.faces(1);
        assert_eq!(edges.len(), 3);
        for e in edges {
            assert_eq!(face_orbifold_group(&p, e).unwrap(), ivec(&[2]));
        }
        for f in lattice.faces(2) {
            assert!(face_orbifold_group(&p, f).unwrap().is_empty());
        }
        let sing = singular_faces(&p).unwrap();
        assert_eq!(sing.len(), 4);
        assert_eq!(sing[0].face.dim, 1);
        assert_eq!(sing[3].face.dim, 0);
    }

    #[test]
    fn model_r_is_smooth() {
        let v = vertex_smoothness(&model_r()).unwrap();
        assert_eq!(v.len(), 4);
        assert!(v.iter().all(|x| x.verdict.is_smooth()));
        assert!(singular_faces(&model_r()).unwrap().is_empty());
    }

    #[test]
    fn non_simple_vertex_is_an_error() {
        let pyramid = Polyhedron::from_i64(3, &[(&[1, 0, 1], 0), (&[-1, 0, 1], 0), (&[0, 1, 1], 0), (&[0, -1, 1], 0)])
            .unwrap();
        assert!(matches!(vertex_smoothness(&pyramid), Err(Error::NonSimpleVertex { facets: 4, .. })));
    }

    #[test]
    fn a1_singular_edge() {
        let p = a1_model();
        let sing = singular_faces(&p).unwrap();
        assert_eq!(sing.len(), 2);
        assert_eq!(sing[0].factors, ivec(&[2]));
        assert!(vertex_smoothness(&a1_resolved()).unwrap().iter().all(|v| v.verdict.is_smooth()));
    }
}

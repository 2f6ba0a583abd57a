use serde::Serialize;
use serde_json::json;

use cytoric::exactnum::{display_int_vec, format_rational, json as exjson, IntVec, RatVec, Rational};
use cytoric::polytope::{HalfSpace, Polyhedron};
use cytoric::toric::{
    blowup_cut, crepancy_certificate, curve_normal_bundle, singular_faces, surface_face_analysis,
    validate_resolution_cut, vertex_smoothness, Cone, Crepancy, CutSpec, EdgeCurve, Fan, VertexVerdict,
    WallRelation,
};

use crate::{CliResult, Check, Report};

#[derive(Clone, Debug)]
pub struct ResolveOptions {
    pub epsilon: Rational,
    /// Explicit cut; the symmetric blow-up at level `epsilon` otherwise.
    pub cut: Option<CutSpec>,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions { epsilon: Rational::from_integer(1.into()), cut: None }
    }
}

#[derive(Serialize)]
struct SingularFaceOut {
    dim: usize,
    #[serde(with = "exjson::rational_vec_list")]
    vertices: Vec<RatVec>,
    #[serde(with = "exjson::int_vec")]
    factors: IntVec,
}

#[derive(Serialize)]
struct CutOut {
    halfspaces: Vec<HalfSpace>,
    #[serde(with = "exjson::rational_vec")]
    offsets: Vec<Rational>,
    asymmetric: bool,
    vacuous: Vec<HalfSpace>,
}

#[derive(Serialize)]
struct CertificateOut {
    #[serde(with = "exjson::int_vec_list")]
    old_rays: Vec<IntVec>,
    #[serde(with = "exjson::int_vec_list")]
    new_rays: Vec<IntVec>,
    result: Crepancy,
}

#[derive(Serialize)]
struct FaceOut {
    facet: HalfSpace,
    curves: Vec<EdgeCurve>,
}

/// Wall relations of every interior wall, oriented so that `a ≤ b`.
pub fn oriented_walls(p: &Polyhedron) -> CliResult<Vec<WallRelation>> {
    if p.dim() != 3 {
        return Ok(Vec::new());
    }
    let fan = Fan::normal_fan(p);
    fan.interior_walls()
        .iter()
        .map(|w| {
            let rel = curve_normal_bundle(&fan, &w.rays()[0], &w.rays()[1])?;
            Ok(if rel.a > rel.b { rel.swapped() } else { rel })
        })
        .collect()
}

fn smooth_count(v: &[VertexVerdict]) -> usize {
    v.iter().filter(|x| x.verdict.is_smooth()).count()
}

/// Smoothness audit, cut, re-audit, crepancy certificates, wall invariants
/// and the curves on the exceptional divisors.
pub fn run_resolve(p: &Polyhedron, opts: &ResolveOptions) -> CliResult<Report> {
    let mut report = Report::new("resolve");
    let before = vertex_smoothness(p)?;
    let sing = singular_faces(p)?;

    let (result, cut_out, cut_spec) = if sing.is_empty() && opts.cut.is_none() {
        report.note("already Delzant, no cut applied");
        (p.clone(), None, CutSpec::default())
    } else {
        let spec = match &opts.cut {
            Some(s) => s.clone(),
            None => blowup_cut(p, &opts.epsilon)?,
        };
        let res = validate_resolution_cut(p, &spec)?;
        if res.asymmetric {
            report.note("cut levels are asymmetric");
        }
        for h in &res.outcome.vacuous {
            report.note(format!("vacuous halfspace {h}"));
        }
        let out = CutOut {
            halfspaces: spec.halfspaces.clone(),
            offsets: res.offsets.clone(),
            asymmetric: res.asymmetric,
            vacuous: res.outcome.vacuous.clone(),
        };
        (res.outcome.polyhedron, Some(out), spec)
    };

    let after = vertex_smoothness(&result)?;
    report.push(Check::new("after.smooth_vertices", after.len(), smooth_count(&after)));

    let mut certificates = Vec::new();
    for (i, s) in sing.iter().enumerate() {
        let old: Vec<IntVec> = s.face.active.iter().map(|&i| p.halfspaces()[i].normal().to_vec()).collect();
        let cone = Cone::new(old.clone())?;
        let new: Vec<IntVec> = cut_spec
            .halfspaces
            .iter()
            .map(|h| h.normal().to_vec())
            .filter(|n| cone.contains(n) && !old.contains(n))
            .collect();
        let result = crepancy_certificate(&old, &new)?;
        let computed = match &result {
            Crepancy::Certified { m } => format!("certified m={}", display_int_vec(m)),
            Crepancy::Failed { ray, pairing, .. } => format!("fails at {} with pairing {pairing}", display_int_vec(ray)),
        };
        report.push(Check::with_outcome(
            format!("crepancy.singular_face_{i}"),
            "certified",
            computed,
            result.is_certified(),
        ));
        certificates.push(CertificateOut { old_rays: old, new_rays: new, result });
    }

    let walls = oriented_walls(&result)?;
    report.push(Check::new("walls.relations_hold", walls.len(), walls.iter().filter(|w| w.holds()).count()));

    let mut faces = Vec::new();
    if result.dim() == 3 {
        for h in &cut_spec.halfspaces {
            if let Some(idx) = result.facet_index(h.normal()) {
                if result.halfspaces()[idx] == *h {
                    faces.push(FaceOut { facet: h.clone(), curves: surface_face_analysis(&result, idx)? });
                }
            }
        }
    }

    let sing_out: Vec<SingularFaceOut> = sing
        .iter()
        .map(|s| SingularFaceOut {
            dim: s.face.dim,
            vertices: s.face.vertices.iter().map(|&v| p.vertices()[v].clone()).collect(),
            factors: s.factors.clone(),
        })
        .collect();
    report.data = json!({
        "epsilon": format_rational(&opts.epsilon),
        "input": p,
        "before": before,
        "singular_faces": sing_out,
        "cut": cut_out,
        "result": result,
        "result_vertices": result.vertices().iter().map(|v| v.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "result_rays": result.rays().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "after": after,
        "certificates": certificates,
        "walls": walls,
        "exceptional_faces": faces,
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(rows: &[(&[i64], i64)]) -> Polyhedron {
        Polyhedron::from_i64(3, rows).unwrap()
    }

    #[test]
    fn model_p_report() {
        let p = poly(&[(&[1, 1, -1], 0), (&[1, -1, 1], 0), (&[-1, 1, 1], 0)]);
        let r = run_resolve(&p, &ResolveOptions::default()).unwrap();
        assert_eq!(r.failed(), 0, "{}", r.render_table());
        let walls = r.data["walls"].as_array().unwrap();
        assert_eq!(walls.len(), 3);
        assert!(walls.iter().all(|w| w["a"] == -1 && w["b"] == -1));
        let certs = r.data["certificates"].as_array().unwrap();
        assert!(certs.iter().any(|c| c["result"]["m"] == json!([1, 1, 1])));
        assert_eq!(r.data["result_vertices"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn a1_report() {
        let p = poly(&[(&[2, -1, 0], 0), (&[0, 1, 0], 0), (&[0, 0, 1], 0)]);
        let r = run_resolve(&p, &ResolveOptions::default()).unwrap();
        assert_eq!(r.failed(), 0);
        let walls = r.data["walls"].as_array().unwrap();
        assert_eq!(walls.len(), 1);
        assert_eq!((walls[0]["a"].clone(), walls[0]["b"].clone()), (json!(-2), json!(0)));
    }

    #[test]
    fn cube_is_left_alone() {
        let cube = poly(&[
            (&[1, 0, 0], 0),
            (&[0, 1, 0], 0),
            (&[0, 0, 1], 0),
            (&[-1, 0, 0], -1),
            (&[0, -1, 0], -1),
            (&[0, 0, -1], -1),
        ]);
        let r = run_resolve(&cube, &ResolveOptions::default()).unwrap();
        assert!(r.notes.iter().any(|n| n == "already Delzant, no cut applied"));
        assert_eq!(r.failed(), 0);
    }

    #[test]
    fn infeasible_epsilon_is_an_error() {
        let p = poly(&[(&[1, 1, -1], 0), (&[1, -1, 1], 0), (&[-1, 1, 1], 0)]);
        let opts = ResolveOptions { epsilon: Rational::from_integer(0.into()), cut: None };
        assert!(run_resolve(&p, &opts).is_err());
    }
}

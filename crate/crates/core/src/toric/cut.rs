use serde::{Deserialize, Serialize};

use num_traits::Signed;

use super::smooth::{singular_faces, vertex_smoothness};
use crate::error::{Error, Result};
use crate::exactnum::{display_int_vec, display_rat_vec, format_rational, primitive, Int, Rational};
use crate::polytope::{HalfSpace, Polyhedron};

/// Halfspaces `⟨u, x⟩ ≥ c` added to a moment polytope.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutSpec {
    pub halfspaces: Vec<HalfSpace>,
}

impl CutSpec {
    pub fn new(halfspaces: Vec<HalfSpace>) -> Self {
        CutSpec { halfspaces }
    }

    pub fn len(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halfspaces.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutOutcome {
    pub polyhedron: Polyhedron,
    /// Halfspaces already implied by the original polyhedron.
    pub vacuous: Vec<HalfSpace>,
}

fn implied(p: &Polyhedron, h: &HalfSpace) -> Option<Rational> {
    p.minimize(h.normal()).map(|(m, _)| m).filter(|m| m >= h.level())
}

/// Intersects `p` with the cut halfspaces, recording those that change nothing.
pub fn apply_cut(p: &Polyhedron, spec: &CutSpec) -> Result<CutOutcome> {
    for h in &spec.halfspaces {
        if h.dim() != p.dim() {
            return Err(Error::DimensionMismatch { expected: p.dim(), got: h.dim() });
        }
    }
    let vacuous: Vec<HalfSpace> = spec.halfspaces.iter().filter(|h| implied(p, h).is_some()).cloned().collect();
    let polyhedron = p.intersect(&spec.halfspaces)?;
    Ok(CutOutcome { polyhedron, vacuous })
}

/// Drops the halfspaces holding strictly on all of `p`; those touching `p`
/// along a face are kept.
pub fn compatibility_reduction(p: &Polyhedron, spec: &CutSpec) -> CutSpec {
    let kept = spec
        .halfspaces
        .iter()
        .filter(|h| !matches!(p.minimize(h.normal()), Some((m, _)) if &m > h.level()))
        .cloned()
        .collect();
    CutSpec { halfspaces: kept }
}

/// Minimal resolution by cutting every `ℤ₂` codimension-two stratum at
/// distance `epsilon` from it. The normal of the cut is the primitive vector
/// along `u₁ + u₂`, where `u₁, u₂` are the facet normals meeting there.
///
/// Deeper strata must lie on such a stratum; anything else is rejected.
pub fn blowup_cut(p: &Polyhedron, epsilon: &Rational) -> Result<CutSpec> {
    if !epsilon.is_positive() {
        return Err(Error::InfeasibleCut(format!("cut level {} is not positive", format_rational(epsilon))));
    }
    let sing = singular_faces(p)?;
    let codim2: Vec<_> = sing.iter().filter(|s| p.dim() - s.face.dim == 2).collect();
    let mut out: Vec<HalfSpace> = Vec::new();
    for s in &codim2 {
        if s.factors != [Int::from(2)] {
            return Err(Error::UnsupportedSingularity(format!(
                "codimension-two stratum with group factors {}",
                display_int_vec(&s.factors)
            )));
        }
        let (u1, u2) = (p.halfspaces()[s.face.active[0]].normal(), p.halfspaces()[s.face.active[1]].normal());
        let sum: Vec<Int> = u1.iter().zip(u2).map(|(a, b)| a + b).collect();
        let normal = primitive(&sum)?;
        let v = &p.vertices()[s.face.vertices[0]];
        let level = crate::exactnum::dot_int_rat(&normal, v) + epsilon;
        let h = HalfSpace::new(normal, level)?;
        if !out.iter().any(|o| o.normal() == h.normal()) {
            out.push(h);
        }
    }
    for s in sing.iter().filter(|s| p.dim() - s.face.dim > 2) {
        let on_stratum = codim2.iter().any(|c| s.face.vertices.iter().all(|v| c.face.vertices.contains(v)));
        if !on_stratum {
            let vertex = s.face.vertices.first().map(|&v| display_rat_vec(&p.vertices()[v]));
            return Err(Error::UnsupportedSingularity(format!(
                "isolated singular stratum of dimension {} at {}",
                s.face.dim,
                vertex.unwrap_or_default()
            )));
        }
    }
    out.sort();
    Ok(CutSpec { halfspaces: out })
}

/// A validated resolving cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionCut {
    pub outcome: CutOutcome,
    /// `c − min_P ⟨u, ·⟩` for each cut halfspace, in spec order.
    pub offsets: Vec<Rational>,
    /// Offsets differ between halfspaces.
    pub asymmetric: bool,
}

/// Checks that a cut resolves `p`: every halfspace removes a neighbourhood of
/// some face (positive offset), the result is a nonempty full-dimensional
/// polyhedron, and all of its vertices are smooth.
pub fn validate_resolution_cut(p: &Polyhedron, spec: &CutSpec) -> Result<ResolutionCut> {
    let mut offsets = Vec::with_capacity(spec.len());
    for h in &spec.halfspaces {
        let Some((m, _)) = p.minimize(h.normal()) else {
            return Err(Error::InfeasibleCut(format!("{h} is unbounded below on the polyhedron")));
        };
        let off = h.level() - m;
        if !off.is_positive() {
            return Err(Error::InfeasibleCut(format!("{h} does not cut the polyhedron")));
        }
        offsets.push(off);
    }
    let outcome = apply_cut(p, spec).map_err(|e| Error::InfeasibleCut(e.to_string()))?;
    for v in vertex_smoothness(&outcome.polyhedron).map_err(|e| Error::InfeasibleCut(e.to_string()))? {
        if let super::Verdict::Orbifold { factors } = v.verdict {
            return Err(Error::InfeasibleCut(format!(
                "vertex {} keeps orbifold factors {}",
                display_rat_vec(&v.vertex),
                display_int_vec(&factors)
            )));
        }
    }
    let asymmetric = offsets.windows(2).any(|w| w[0] != w[1]);
    Ok(ResolutionCut { outcome, offsets, asymmetric })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::toric::fixtures::*;

    fn hs(n: &[i64], c: i64) -> HalfSpace {
        HalfSpace::from_i64(n, rat(c, 1))
    }

    #[test]
    fn model_p_cut_gives_model_r() {
        let spec = CutSpec::new(vec![hs(&[1, 0, 0], 1), hs(&[0, 1, 0], 1), hs(&[0, 0, 1], 1)]);
        let out = apply_cut(&model_p(), &spec).unwrap();
        assert!(out.vacuous.is_empty());
        assert_eq!(out.polyhedron, model_r());
    }

    #[test]
    fn vacuous_cut_is_reported() {
        let spec = CutSpec::new(vec![hs(&[1, 0, 0], -1)]);
        let out = apply_cut(&model_r(), &spec).unwrap();
        assert_eq!(out.vacuous, spec.halfspaces);
        assert_eq!(out.polyhedron, model_r());
    }

    #[test]
    fn emptying_cut_is_an_error() {
        let spec = CutSpec::new(vec![hs(&[-1, 0, 0], 0)]);
        assert_eq!(apply_cut(&model_r(), &spec), Err(Error::Empty));
    }

    #[test]
    fn reduction_drops_strict_and_keeps_touching() {
        let r = model_r();
        let strict = CutSpec::new(vec![hs(&[1, 0, 0], -3)]);
        assert!(compatibility_reduction(&r, &strict).is_empty());
        let touching = CutSpec::new(vec![hs(&[1, 0, 0], 1)]);
        assert_eq!(compatibility_reduction(&r, &touching), touching);
        let cutting = CutSpec::new(vec![hs(&[1, 1, 1], 4)]);
        assert_eq!(compatibility_reduction(&r, &cutting), cutting);
    }

    #[test]
    fn reduction_on_shifted_orthant_and_cube() {
        let p = Polyhedron::from_i64(3, &[(&[1, 0, 0], 2), (&[0, 1, 0], 0), (&[0, 0, 1], 0)]).unwrap();
        let spec = CutSpec::new(vec![hs(&[1, 0, 0], 1), hs(&[0, 1, 0], 1)]);
        assert_eq!(compatibility_reduction(&p, &spec), CutSpec::new(vec![hs(&[0, 1, 0], 1)]));

        let cube = unit_cube();
        let y_half = HalfSpace::from_i64(&[0, 1, 0], rat(1, 2));
        let spec = CutSpec::new(vec![hs(&[1, 0, 0], -3), y_half.clone()]);
        let reduced = compatibility_reduction(&cube, &spec);
        assert_eq!(reduced, CutSpec::new(vec![y_half]));
        assert_eq!(apply_cut(&cube, &reduced).unwrap().polyhedron, apply_cut(&cube, &spec).unwrap().polyhedron);
    }

    #[test]
    fn default_cut_of_p() {
        let spec = blowup_cut(&model_p(), &rat(1, 1)).unwrap();
        assert_eq!(spec.halfspaces, vec![hs(&[0, 0, 1], 1), hs(&[0, 1, 0], 1), hs(&[1, 0, 0], 1)]);
        let res = validate_resolution_cut(&model_p(), &spec).unwrap();
        assert_eq!(res.outcome.polyhedron, model_r());
        assert!(!res.asymmetric);
    }

    #[test]
    fn default_cut_of_a1() {
        let spec = blowup_cut(&a1_model(), &rat(1, 1)).unwrap();
        assert_eq!(spec.halfspaces, vec![hs(&[1, 0, 0], 1)]);
        let res = validate_resolution_cut(&a1_model(), &spec).unwrap();
        assert_eq!(res.outcome.polyhedron, a1_resolved());
    }

    #[test]
    fn asymmetric_levels_are_flagged() {
        let spec = CutSpec::new(vec![
            HalfSpace::from_i64(&[1, 0, 0], rat(1, 1)),
            HalfSpace::from_i64(&[0, 1, 0], rat(1, 1)),
            HalfSpace::from_i64(&[0, 0, 1], rat(1, 2)),
        ]);
        let res = validate_resolution_cut(&model_p(), &spec).unwrap();
        assert!(res.asymmetric);
        assert_eq!(res.offsets[2], rat(1, 2));
        assert!(res.outcome.polyhedron.contains(&[rat(1, 1), rat(1, 1), rat(1, 2)]));
    }

    #[test]
    fn infeasible_cuts_are_rejected() {
        assert!(matches!(blowup_cut(&model_p(), &rat(0, 1)), Err(Error::InfeasibleCut(_))));
        let partial = CutSpec::new(vec![hs(&[1, 0, 0], 1)]);
        assert!(matches!(validate_resolution_cut(&model_p(), &partial), Err(Error::InfeasibleCut(_))));
        let idle = CutSpec::new(vec![hs(&[1, 0, 0], 0)]);
        assert!(matches!(validate_resolution_cut(&model_p(), &idle), Err(Error::InfeasibleCut(_))));
    }

    #[test]
    fn non_z2_strata_are_unsupported() {
        // ℂ²/ℤ₃ × ℂ
        let p = Polyhedron::from_i64(3, &[(&[3, -1, 0], 0), (&[0, 1, 0], 0), (&[0, 0, 1], 0)]).unwrap();
        assert!(matches!(blowup_cut(&p, &rat(1, 1)), Err(Error::UnsupportedSingularity(_))));
    }

    #[test]
    fn cut_spec_json() {
        let spec: CutSpec = serde_json::from_str(r#"{"halfspaces":[{"normal":[2,0,0],"level":"1"}]}"#).unwrap();
        assert_eq!(spec.halfspaces[0], HalfSpace::from_i64(&[1, 0, 0], rat(1, 2)));
    }
}

use std::collections::BTreeSet;
use std::fmt;

use serde::Deserialize;
use serde_json::json;

use cytoric::betti::{double_to_singular_locus, doubled_polytope_base_betti, resolution_deltas, resolved_betti_doubled};
use cytoric::coxeter::chain_of_120_cells;
use cytoric::exactnum::{display_int_vec, display_rat_vec, ivec, parse_rational, rat, IntVec, RatVec};
use cytoric::polytope::{HalfSpace, Polyhedron};
use cytoric::toric::{
    apply_cut, blowup_cut, compatibility_reduction, crepancy_certificate, fan2d_self_intersections, singular_faces,
    surface_face_analysis, validate_semilocal_cover, vertex_smoothness, CoverCondition, CoverVerdict, Crepancy,
    CutSpec, CuttingChart, Hamiltonian, Verdict,
};

use crate::resolve::oriented_walls;
use crate::{coxeter_cmd, fiber, CliError, CliResult, Check, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Topic {
    OrbifoldModels,
    Resolution,
    Crepancy,
    Curves,
    Semilocal,
    TwistorFiber,
    Coxeter,
    Betti,
}

impl Topic {
    pub const ALL: [Topic; 8] = [
        Topic::OrbifoldModels,
        Topic::Resolution,
        Topic::Crepancy,
        Topic::Curves,
        Topic::Semilocal,
        Topic::TwistorFiber,
        Topic::Coxeter,
        Topic::Betti,
    ];
}

impl fmt::Display for Topic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Topic::OrbifoldModels => "orbifold-models",
            Topic::Resolution => "resolution",
            Topic::Crepancy => "crepancy",
            Topic::Curves => "curves",
            Topic::Semilocal => "semilocal",
            Topic::TwistorFiber => "twistor-fiber",
            Topic::Coxeter => "coxeter",
            Topic::Betti => "betti",
        })
    }
}

/// Replacement inputs and reference values, used to perturb the suite.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    /// Input model in place of the `ℂ³/(ℤ₂⊕ℤ₂)` cone.
    pub model_p: Option<Polyhedron>,
    /// Expected vertices of the resolved polytope, as rational strings.
    pub model_r_vertices: Option<Vec<Vec<String>>>,
}

struct Models {
    p: Polyhedron,
    a1: Polyhedron,
    r_expected: Vec<RatVec>,
}

fn poly(rows: &[(&[i64], i64)]) -> Polyhedron {
    Polyhedron::from_i64(3, rows).expect("fixed model is a valid polyhedron")
}

/// `x, y, z ≥ 1`, sorted.
fn unit_cut() -> CutSpec {
    let mut hs: Vec<HalfSpace> = (0..3)
        .map(|i| {
            let mut e = [0i64; 3];
            e[i] = 1;
            HalfSpace::from_i64(&e, rat(1, 1))
        })
        .collect();
    hs.sort();
    CutSpec::new(hs)
}

fn vertex_set(v: &[RatVec]) -> String {
    let set: BTreeSet<String> = v.iter().map(|x| display_rat_vec(x)).collect();
    set.into_iter().collect::<Vec<_>>().join(" ")
}

impl Models {
    fn new(ov: &Overrides) -> CliResult<Self> {
        let p = ov.model_p.clone().unwrap_or_else(|| poly(&[(&[1, 1, -1], 0), (&[1, -1, 1], 0), (&[-1, 1, 1], 0)]));
        let a1 = poly(&[(&[2, -1, 0], 0), (&[0, 1, 0], 0), (&[0, 0, 1], 0)]);
        let r_expected = match &ov.model_r_vertices {
            Some(vs) => vs
                .iter()
                .map(|v| v.iter().map(|s| parse_rational(s)).collect::<Result<RatVec, _>>())
                .collect::<Result<Vec<_>, _>>()?,
            None => [[1, 1, 1], [1, 1, 2], [1, 2, 1], [2, 1, 1]]
                .iter()
                .map(|v| v.iter().map(|&x| rat(x, 1)).collect())
                .collect(),
        };
        Ok(Models { p, a1, r_expected })
    }

    fn r(&self) -> CliResult<Polyhedron> {
        Ok(apply_cut(&self.p, &unit_cut())?.polyhedron)
    }

    fn a1_resolved(&self) -> CliResult<Polyhedron> {
        Ok(apply_cut(&self.a1, &blowup_cut(&self.a1, &rat(1, 1))?)?.polyhedron)
    }
}

fn factors_of(v: &Verdict) -> String {
    match v {
        Verdict::Smooth => "()".into(),
        Verdict::Orbifold { factors } => display_int_vec(factors),
    }
}

fn orbifold_models(m: &Models, out: &mut Vec<Check>) -> CliResult<()> {
    let verdicts = vertex_smoothness(&m.p)?;
    let vf: Vec<String> = verdicts.iter().map(|v| factors_of(&v.verdict)).collect();
    out.push(Check::new("vertex_group", "(2,2)", vf.join(" ")));
    let sing = singular_faces(&m.p)?;
    let rays: Vec<String> = sing.iter().filter(|s| s.face.dim == 1).map(|s| display_int_vec(&s.factors)).collect();
    out.push(Check::new("ray_groups", "(2) (2) (2)", rays.join(" ")));
    let a1: Vec<String> = singular_faces(&m.a1)?.iter().map(|s| format!("{}:{}", s.face.dim, display_int_vec(&s.factors))).collect();
    out.push(Check::new("a1_singular_locus", "1:(2) 0:(2)", a1.join(" ")));
    Ok(())
}

fn resolution(m: &Models, out: &mut Vec<Check>) -> CliResult<()> {
    let r = m.r()?;
    out.push(Check::new("vertices", vertex_set(&m.r_expected), vertex_set(r.vertices())));
    let smooth = vertex_smoothness(&r)?.iter().filter(|v| v.verdict.is_smooth()).count();
    out.push(Check::new("delzant_vertices", r.vertices().len(), smooth));
    out.push(Check::new("blowup_is_unit_cut", true, blowup_cut(&m.p, &rat(1, 1))? == unit_cut()));
    let reduced = compatibility_reduction(&m.p, &unit_cut());
    out.push(Check::new("compatibility_reduction", true, apply_cut(&m.p, &reduced)?.polyhedron == r));
    Ok(())
}

fn certificate(old: &[&[i64]], new: &[&[i64]]) -> CliResult<Crepancy> {
    let old: Vec<IntVec> = old.iter().map(|v| ivec(v)).collect();
    let new: Vec<IntVec> = new.iter().map(|v| ivec(v)).collect();
    Ok(crepancy_certificate(&old, &new)?)
}

fn describe(c: &Crepancy) -> String {
    match c {
        Crepancy::Certified { m } => format!("m={}", display_int_vec(m)),
        Crepancy::Failed { ray, pairing, .. } => format!("fails at {} with pairing {pairing}", display_int_vec(ray)),
    }
}

fn crepancy(m: &Models, out: &mut Vec<Check>) -> CliResult<()> {
    let p_normals: Vec<IntVec> = m.p.halfspaces().iter().map(|h| h.normal().to_vec()).collect();
    let new: Vec<IntVec> = unit_cut().halfspaces.iter().map(|h| h.normal().to_vec()).collect();
    out.push(Check::new("model_p", "m=(1,1,1)", describe(&crepancy_certificate(&p_normals, &new)?)));
    let a1 = certificate(&[&[2, -1, 0], &[0, 1, 0]], &[&[1, 0, 0]])?;
    out.push(Check::new("a1", "m=(1,1,0)", describe(&a1)));
    let star = certificate(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[&[1, 1, 1]])?;
    out.push(Check::new("smooth_corner_star", "fails at (1,1,1) with pairing 3", describe(&star)));
    Ok(())
}

fn curves(m: &Models, out: &mut Vec<Check>) -> CliResult<()> {
    let r = m.r()?;
    let walls: Vec<String> = oriented_walls(&r)?.iter().map(|w| format!("({},{})", w.a, w.b)).collect();
    out.push(Check::new("resolution_walls", "(-1,-1) (-1,-1) (-1,-1)", walls.join(" ")));
    let a1: Vec<String> = oriented_walls(&m.a1_resolved()?)?.iter().map(|w| format!("({},{})", w.a, w.b)).collect();
    out.push(Check::new("a1_exceptional_wall", "(-2,0)", a1.join(" ")));

    let mut faces = Vec::new();
    for h in &unit_cut().halfspaces {
        let idx = r.facet_index(h.normal()).ok_or_else(|| CliError::Usage(format!("no facet with normal {h}")))?;
        let curves = surface_face_analysis(&r, idx)?;
        let parts: Vec<String> = curves.iter().map(|c| format!("{}/{}", c.self_intersection, c.lattice_length)).collect();
        faces.push(format!("[{}]", parts.join(" ")));
    }
    out.push(Check::new("exceptional_faces", "[-1/1 -1/1] [-1/1 -1/1] [-1/1 -1/1]", faces.join(" ")));

    // Hirzebruch surface F_1 seen through its fan
    let f1: Vec<IntVec> = [[1, 0], [0, 1], [-1, 1], [0, -1]].iter().map(|v| ivec(v)).collect();
    let s: Vec<String> = fan2d_self_intersections(&f1)?.iter().map(|x| x.to_string()).collect();
    out.push(Check::new("hirzebruch_f1", "0 -1 0 1", s.join(" ")));
    Ok(())
}

fn semilocal(out: &mut Vec<Check>) -> CliResult<()> {
    let eps = rat(1, 4);
    let ham = |label: &str, v: &[i64]| Hamiltonian { label: label.into(), covector: ivec(v) };
    let region = |y_low: (i64, i64)| -> CliResult<Polyhedron> {
        Ok(Polyhedron::new(
            3,
            vec![
                HalfSpace::from_i64(&[1, 0, 0], rat(0, 1)),
                HalfSpace::from_i64(&[0, 1, 0], rat(y_low.0, y_low.1)),
                HalfSpace::from_i64(&[0, 0, 1], rat(1, 2)),
            ],
        )?)
    };
    let charts = |edge_level, y_low| -> CliResult<Vec<CuttingChart>> {
        let vertex = CuttingChart::new(
            "vertex",
            vec![ham("x", &[1, 0, 0]), ham("y", &[0, 1, 0]), ham("z", &[0, 0, 1])],
            vec![eps.clone(), eps.clone(), eps.clone()],
        )?
        .with_overlap("edge", region(y_low)?);
        let edge = CuttingChart::new("edge", vec![ham("x", &[1, 0, 0])], vec![edge_level])?;
        Ok(vec![vertex, edge])
    };
    let verdict = |v: CoverVerdict| match v {
        CoverVerdict::Valid => "valid".to_string(),
        CoverVerdict::Violation(v) => v.condition.to_string(),
    };
    out.push(Check::new("compatible", "valid", verdict(validate_semilocal_cover(&charts(rat(1, 4), (1, 2))?)?)));
    out.push(Check::new(
        "level_mismatch",
        CoverCondition::LevelAgreement,
        verdict(validate_semilocal_cover(&charts(rat(1, 3), (1, 2))?)?),
    ));
    out.push(Check::new(
        "touching_overlap",
        CoverCondition::Strictness,
        verdict(validate_semilocal_cover(&charts(rat(1, 4), (1, 4))?)?),
    ));
    Ok(())
}

fn coxeter(out: &mut Vec<Check>) -> CliResult<()> {
    out.extend(coxeter_cmd::run_selftest()?.checks);
    let one = chain_of_120_cells(1)?.f_vector();
    out.push(Check::new("chain.k1", "[600, 1200, 720, 120]", format!("{:?}", one.as_array())));
    let two = chain_of_120_cells(2)?.f_vector();
    out.push(Check::new("chain.k2", "[1160, 2320, 1386, 226]", format!("{:?}", two.as_array())));
    out.push(Check::new("chain.k2.euler", 0, two.euler()));
    Ok(())
}

fn betti(out: &mut Vec<Check>) -> CliResult<()> {
    let doubled = resolved_betti_doubled(600, 720)?;
    out.push(Check::new("doubled_120_cell.b2", 2041, doubled.b[2]));
    out.push(Check::new("doubled_120_cell.b3", 0, doubled.b[3]));
    let via_locus = doubled_polytope_base_betti().resolved(&double_to_singular_locus(600, 720)?)?;
    out.push(Check::new("doubled_120_cell.via_locus", format!("{:?}", doubled.b), format!("{:?}", via_locus.b)));
    let d = resolution_deltas(&double_to_singular_locus(600, 720)?)?;
    out.push(Check::new("doubled_120_cell.deltas", "2040 0 4080", format!("{} {} {}", d.db2, d.db3, d.dchi)));

    let mut b2s = Vec::new();
    let mut chi_ok = true;
    for k in 1..=5 {
        let f = chain_of_120_cells(k)?.f_vector();
        let b = resolved_betti_doubled(f.v as u64, f.f as u64)?;
        chi_ok &= b.euler_characteristic() == 4 + 2 * (f.v as i128 + 2 * f.f as i128);
        b2s.push(b.b[2]);
    }
    out.push(Check::new("chains.euler_consistency", true, chi_ok));
    out.push(Check::new("chains.b2_increasing", true, b2s.windows(2).all(|w| w[0] < w[1])));
    Ok(())
}

/// Runs the reference checks of the selected topics, all topics when
/// `topics` is empty.
pub fn run_verify(topics: &[Topic], overrides: &Overrides) -> CliResult<Report> {
    let mut report = Report::new("verify");
    let selected: BTreeSet<Topic> = if topics.is_empty() { Topic::ALL.into_iter().collect() } else { topics.iter().copied().collect() };
    let models = Models::new(overrides)?;
    if overrides.model_p.is_some() || overrides.model_r_vertices.is_some() {
        report.note("reference values overridden by fixture");
    }
    for topic in &selected {
        let mut checks = Vec::new();
        match topic {
            Topic::OrbifoldModels => orbifold_models(&models, &mut checks)?,
            Topic::Resolution => resolution(&models, &mut checks)?,
            Topic::Crepancy => crepancy(&models, &mut checks)?,
            Topic::Curves => curves(&models, &mut checks)?,
            Topic::Semilocal => semilocal(&mut checks)?,
            Topic::TwistorFiber => checks.extend(fiber::run_fiber(None)?.checks),
            Topic::Coxeter => coxeter(&mut checks)?,
            Topic::Betti => betti(&mut checks)?,
        }
        for mut c in checks {
            c.name = format!("{topic}.{}", c.name);
            report.push(c);
        }
    }
    report.data = json!({ "topics": selected.iter().map(|t| t.to_string()).collect::<Vec<_>>() });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_topics_pass() {
        let topics = [Topic::OrbifoldModels, Topic::Resolution, Topic::Crepancy, Topic::Curves, Topic::Semilocal];
        let r = run_verify(&topics, &Overrides::default()).unwrap();
        assert_eq!(r.failed(), 0, "{}", r.render_table());
    }

    #[test]
    fn altered_vertex_list_fails_by_name() {
        let ov: Overrides =
            serde_json::from_str(r#"{"model_r_vertices": [["1","1","1"],["1","1","3"],["1","2","1"],["2","1","1"]]}"#).unwrap();
        let r = run_verify(&[Topic::Resolution], &ov).unwrap();
        let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert_eq!(failed, ["resolution.vertices"]);
    }

    #[test]
    fn unknown_override_is_rejected() {
        assert!(serde_json::from_str::<Overrides>(r#"{"model_q": null}"#).is_err());
    }
}

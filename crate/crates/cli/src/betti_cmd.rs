use serde::Deserialize;
use serde_json::json;

use cytoric::betti::{
    double_to_singular_locus, doubled_polytope_base_betti, resolution_deltas, resolved_betti_doubled, BettiVector,
    SingularComponent, SingularLocusDescription,
};

use crate::{CliResult, Check, Report};

/// A singular locus, optionally with the Betti numbers of the space it sits
/// in (those of `ℂP³` when omitted).
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BettiInput {
    pub components: Vec<SingularComponent>,
    #[serde(default)]
    pub base: Option<[u64; 7]>,
}

pub enum BettiRequest {
    Description(BettiInput),
    /// Doubled right-angled polytope with `v` vertices and `f` two-faces.
    Doubled { v: u64, f: u64 },
}

fn betti_json(b: &BettiVector) -> serde_json::Value {
    json!({ "b": b.b, "euler": b.euler_characteristic().to_string() })
}

pub fn run_betti(req: &BettiRequest) -> CliResult<Report> {
    let mut report = Report::new("betti");
    let (base, desc, closed_form) = match req {
        BettiRequest::Description(input) => {
            let base = match input.base {
                Some(b) => BettiVector { b, closed_oriented: true },
                None => doubled_polytope_base_betti(),
            };
            (base, SingularLocusDescription::new(input.components.clone()), None)
        }
        BettiRequest::Doubled { v, f } => {
            (doubled_polytope_base_betti(), double_to_singular_locus(*v, *f)?, Some(resolved_betti_doubled(*v, *f)?))
        }
    };
    let deltas = resolution_deltas(&desc)?;
    let resolved = base.resolved(&desc)?;

    report.push(Check::new("base.duality", true, base.duality_ok()));
    report.push(Check::new("resolved.duality", true, resolved.duality_ok()));
    report.push(Check::new(
        "resolved.euler",
        base.euler_characteristic() + i128::from(deltas.dchi),
        resolved.euler_characteristic(),
    ));
    if let Some(cf) = &closed_form {
        report.push(Check::new("resolved.closed_form", format!("{:?}", cf.b), format!("{:?}", resolved.b)));
    }

    report.data = json!({
        "n": desc.n(),
        "m": desc.m()?,
        "z2z2_points": desc.z2z2_total(),
        "deltas": deltas,
        "base": betti_json(&base),
        "resolved": betti_json(&resolved),
    });
    Ok(report)
}

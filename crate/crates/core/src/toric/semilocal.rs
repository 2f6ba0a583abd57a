use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{display_int_vec, display_rational, dot_int, dot_int_rat, json, IntVec, RatVec, Rational};
use crate::polytope::Polyhedron;

/// Moment-map component: a label and its integral covector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hamiltonian {
    pub label: String,
    #[serde(with = "json::int_vec")]
    pub covector: IntVec,
}

/// Region of moment space on which a chart overlaps chart `with`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartOverlap {
    pub with: String,
    pub region: Polyhedron,
}

/// Local cutting data: the chart cuts at `hᵢ ≥ levels[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuttingChart {
    pub id: String,
    pub hamiltonians: Vec<Hamiltonian>,
    #[serde(with = "json::rational_vec")]
    pub levels: Vec<Rational>,
    #[serde(default)]
    pub overlaps: Vec<ChartOverlap>,
}

impl CuttingChart {
    pub fn new(id: impl Into<String>, hamiltonians: Vec<Hamiltonian>, levels: Vec<Rational>) -> Result<Self> {
        if hamiltonians.len() != levels.len() {
            return Err(Error::DimensionMismatch { expected: hamiltonians.len(), got: levels.len() });
        }
        Ok(CuttingChart { id: id.into(), hamiltonians, levels, overlaps: Vec::new() })
    }

    pub fn with_overlap(mut self, with: impl Into<String>, region: Polyhedron) -> Self {
        self.overlaps.push(ChartOverlap { with: with.into(), region });
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverCondition {
    /// Every Hamiltonian of the smaller chart appears in the larger one.
    Matching,
    /// Matched Hamiltonians are cut at the same level.
    LevelAgreement,
    /// Unmatched Hamiltonians stay strictly above their level on the overlap.
    Strictness,
}

impl fmt::Display for CoverCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoverCondition::Matching => "matching",
            CoverCondition::LevelAgreement => "level agreement",
            CoverCondition::Strictness => "strictness",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverViolation {
    pub condition: CoverCondition,
    /// Larger chart first.
    pub charts: (String, String),
    #[serde(with = "json::rational_vec")]
    pub witness: RatVec,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CoverVerdict {
    Valid,
    Violation(CoverViolation),
}

/// Greedy matching of `small` into `large` by covector, preferring partners
/// with equal level. Returns `Err(i)` for the first unmatched index of `small`.
fn match_charts(large: &CuttingChart, small: &CuttingChart) -> std::result::Result<Vec<usize>, usize> {
    let mut used = vec![false; large.hamiltonians.len()];
    let mut out = Vec::with_capacity(small.hamiltonians.len());
    for (i, h) in small.hamiltonians.iter().enumerate() {
        let candidates: Vec<usize> = (0..large.hamiltonians.len())
            .filter(|&j| !used[j] && large.hamiltonians[j].covector == h.covector)
            .collect();
        let pick = candidates
            .iter()
            .copied()
            .find(|&j| large.levels[j] == small.levels[i])
            .or_else(|| candidates.first().copied())
            .ok_or(i)?;
        used[pick] = true;
        out.push(pick);
    }
    Ok(out)
}

/// A point of `region` where `⟨u, x⟩ ≤ c`, if any.
fn point_at_or_below(region: &Polyhedron, u: &[crate::exactnum::Int], c: &Rational) -> Option<RatVec> {
    match region.minimize(u) {
        Some((m, v)) => (m <= *c).then_some(v),
        None => {
            let v0 = region.vertices()[0].clone();
            let r = region.rays().iter().find(|r| dot_int(u, r).is_negative()).expect("unbounded direction");
            let excess = dot_int_rat(u, &v0) - c;
            let t = if excess.is_positive() {
                excess / Rational::from_integer(-dot_int(u, r))
            } else {
                Rational::zero()
            };
            Some(v0.iter().zip(r).map(|(x, ri)| x + &t * Rational::from_integer(ri.clone())).collect())
        }
    }
}

/// Checks the three compatibility conditions on every declared overlap, in
/// chart order and then overlap order, stopping at the first violation.
pub fn validate_semilocal_cover(charts: &[CuttingChart]) -> Result<CoverVerdict> {
    let by_id: HashMap<&str, &CuttingChart> = charts.iter().map(|c| (c.id.as_str(), c)).collect();
    if by_id.len() != charts.len() {
        return Err(Error::InvalidInput("chart ids are not unique".into()));
    }
    for chart in charts {
        if chart.hamiltonians.len() != chart.levels.len() {
            return Err(Error::DimensionMismatch { expected: chart.hamiltonians.len(), got: chart.levels.len() });
        }
        for ov in &chart.overlaps {
            let other = by_id
                .get(ov.with.as_str())
                .ok_or_else(|| Error::InvalidInput(format!("chart {} overlaps unknown chart {}", chart.id, ov.with)))?;
            let (large, small) =
                if chart.hamiltonians.len() >= other.hamiltonians.len() { (chart, *other) } else { (*other, chart) };
            let pair = (large.id.clone(), small.id.clone());
            let region = &ov.region;
            let any_point = region.vertices()[0].clone();
            for h in large.hamiltonians.iter().chain(&small.hamiltonians) {
                if h.covector.len() != region.dim() {
                    return Err(Error::DimensionMismatch { expected: region.dim(), got: h.covector.len() });
                }
            }

            let matched = match match_charts(large, small) {
                Ok(m) => m,
                Err(i) => {
                    let h = &small.hamiltonians[i];
                    return Ok(CoverVerdict::Violation(CoverViolation {
                        condition: CoverCondition::Matching,
                        charts: pair,
                        witness: any_point,
                        detail: format!("{} = {} has no partner in chart {}", h.label, display_int_vec(&h.covector), large.id),
                    }));
                }
            };

            for (i, &j) in matched.iter().enumerate() {
                if small.levels[i] != large.levels[j] {
                    return Ok(CoverVerdict::Violation(CoverViolation {
                        condition: CoverCondition::LevelAgreement,
                        charts: pair,
                        witness: any_point,
                        detail: format!(
                            "{} is cut at {} in {} but at {} in {}",
                            small.hamiltonians[i].label,
                            display_rational(&small.levels[i]),
                            small.id,
                            display_rational(&large.levels[j]),
                            large.id
                        ),
                    }));
                }
            }

            for j in (0..large.hamiltonians.len()).filter(|j| !matched.contains(j)) {
                let h = &large.hamiltonians[j];
                if let Some(witness) = point_at_or_below(region, &h.covector, &large.levels[j]) {
                    return Ok(CoverVerdict::Violation(CoverViolation {
                        condition: CoverCondition::Strictness,
                        charts: pair,
                        witness,
                        detail: format!(
                            "{} reaches its level {} on the overlap",
                            h.label,
                            display_rational(&large.levels[j])
                        ),
                    }));
                }
            }
        }
    }
    Ok(CoverVerdict::Valid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{ivec, rat};
    use crate::polytope::HalfSpace;

    fn ham(label: &str, v: &[i64]) -> Hamiltonian {
        Hamiltonian { label: label.into(), covector: ivec(v) }
    }

    fn region(bounds: [(i64, i64); 3]) -> Polyhedron {
        let hs = bounds
            .iter()
            .enumerate()
            .map(|(i, &(n, d))| {
                let mut e = vec![0; 3];
                e[i] = 1;
                HalfSpace::from_i64(&e, rat(n, d))
            })
            .collect();
        Polyhedron::new(3, hs).unwrap()
    }

    fn cover(eps_b: Rational, overlap: Polyhedron) -> Vec<CuttingChart> {
        let eps = rat(1, 4);
        let a = CuttingChart::new(
            "vertex",
            vec![ham("x", &[1, 0, 0]), ham("y", &[0, 1, 0]), ham("z", &[0, 0, 1])],
            vec![eps.clone(), eps.clone(), eps],
        )
        .unwrap()
        .with_overlap("edge", overlap);
        let b = CuttingChart::new("edge", vec![ham("x", &[1, 0, 0])], vec![eps_b]).unwrap();
        vec![a, b]
    }

    #[test]
    fn compatible_cover() {
        let charts = cover(rat(1, 4), region([(0, 1), (1, 2), (1, 2)]));
        assert_eq!(validate_semilocal_cover(&charts).unwrap(), CoverVerdict::Valid);
    }

    #[test]
    fn level_mismatch() {
        let charts = cover(rat(1, 3), region([(0, 1), (1, 2), (1, 2)]));
        let CoverVerdict::Violation(v) = validate_semilocal_cover(&charts).unwrap() else { panic!() };
        assert_eq!(v.condition, CoverCondition::LevelAgreement);
        assert_eq!(v.charts, ("vertex".to_string(), "edge".to_string()));
    }

    #[test]
    fn touching_overlap_breaks_strictness() {
        let charts = cover(rat(1, 4), region([(0, 1), (1, 4), (1, 2)]));
        let CoverVerdict::Violation(v) = validate_semilocal_cover(&charts).unwrap() else { panic!() };
        assert_eq!(v.condition, CoverCondition::Strictness);
        assert_eq!(v.witness[1], rat(1, 4));
        assert!(v.detail.starts_with('y'));
    }

    #[test]
    fn missing_partner() {
        let mut charts = cover(rat(1, 4), region([(0, 1), (1, 2), (1, 2)]));
        charts[1].hamiltonians[0].covector = ivec(&[1, 1, 0]);
        let CoverVerdict::Violation(v) = validate_semilocal_cover(&charts).unwrap() else { panic!() };
        assert_eq!(v.condition, CoverCondition::Matching);
    }

    #[test]
    fn unbounded_violation_has_a_witness_in_region() {
        let charts = cover(rat(1, 4), region([(0, 1), (1, 2), (1, 2)]));
        let mut a = charts[0].clone();
        a.hamiltonians[2] = ham("w", &[0, -1, 0]);
        let verdict = validate_semilocal_cover(&[a, charts[1].clone()]).unwrap();
        let CoverVerdict::Violation(v) = verdict else { panic!() };
        assert_eq!(v.condition, CoverCondition::Strictness);
        let r = region([(0, 1), (1, 2), (1, 2)]);
        assert!(r.contains(&v.witness));
        assert!(-v.witness[1].clone() <= rat(1, 4));
    }

    #[test]
    fn unknown_chart_is_an_error() {
        let charts = cover(rat(1, 4), region([(0, 1), (1, 2), (1, 2)]));
        assert!(validate_semilocal_cover(&charts[..1]).is_err());
    }
}

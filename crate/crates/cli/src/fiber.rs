use std::collections::BTreeSet;

use serde_json::json;

use cytoric::twistorfiber::{
    fiber_action, fiber_report, fixed_points, octahedron_points, plane_lift_fiber_points, stabilizer, CoordinatePlane,
    FiberPoint, FiberRotation, FixedPoints, SignFlip,
};

use crate::{CliResult, Check, Report};

/// The sign-flip action on the twistor fiber: homomorphism, kernel, fixed
/// points, orbits, stabilizers and the fiber points of coordinate planes.
/// With `element`, the row for that element is reported separately.
pub fn run_fiber(element: Option<&SignFlip>) -> CliResult<Report> {
    let mut report = Report::new("fiber-action");
    let all = SignFlip::all();

    let hom_ok = all
        .iter()
        .flat_map(|g| all.iter().map(move |h| (g, h)))
        .filter(|(g, h)| fiber_action(&g.compose(h)) == fiber_action(g).compose(&fiber_action(h)))
        .count();
    report.push(Check::new("homomorphism.pairs", all.len() * all.len(), hom_ok));
    report.push(Check::new(
        "rotations.special_orthogonal",
        all.len(),
        all.iter().map(fiber_action).filter(|r| r.is_orthogonal() && r.determinant() == 1).count(),
    ));

    let full = fiber_report();
    let kernel: Vec<String> = full.kernel.iter().map(|g| g.to_string()).collect();
    report.push(Check::new("kernel", "(-,-,-,-) (+,+,+,+)", kernel.join(" ")));
    report.push(Check::new("image.order", 4, full.image_order));

    let octa = octahedron_points();
    let fixed: BTreeSet<FiberPoint> = all
        .iter()
        .filter_map(|g| match fixed_points(g) {
            FixedPoints::Pair(p) => Some(p),
            FixedPoints::All => None,
        })
        .flatten()
        .collect();
    report.push(Check::new("fixed_points.count", 6, fixed.len()));
    report.push(Check::new("fixed_points.octahedral", true, fixed.iter().eq(octa.iter())));
    report.push(Check::new(
        "octahedron.stabilizer_orders",
        "4 4 4 4 4 4",
        octa.iter().map(|p| stabilizer(p).len().to_string()).collect::<Vec<_>>().join(" "),
    ));
    let orbit_shape: Vec<String> = full
        .orbits
        .iter()
        .map(|o| format!("{}{}", o.len(), if o.len() == 2 && o[0] == o[1].antipode() { "a" } else { "" }))
        .collect();
    report.push(Check::new("octahedron.orbits", "2a 2a 2a", orbit_shape.join(" ")));
    let generic = FiberPoint::from_i64([1, 2, 3])?;
    report.push(Check::new("generic.stabilizer_order", 2, stabilizer(&generic).len()));

    let planes = CoordinatePlane::all();
    let lifts: Vec<(CoordinatePlane, [FiberPoint; 2])> = planes.iter().map(|p| (*p, plane_lift_fiber_points(p))).collect();
    let hit: BTreeSet<&FiberPoint> = lifts.iter().flat_map(|(_, pts)| pts.iter()).collect();
    report.push(Check::new("plane_lifts.oriented", 12, 2 * lifts.len()));
    report.push(Check::new("plane_lifts.fiber_points", 6, hit.len()));
    let paired = lifts.iter().all(|(p, pts)| {
        let c = p.complement();
        lifts.iter().find(|(q, _)| *q == c).is_some_and(|(_, other)| {
            pts.iter().collect::<BTreeSet<_>>() == other.iter().collect::<BTreeSet<_>>()
        })
    });
    let distinct_otherwise = lifts.iter().all(|(p, pts)| {
        lifts.iter().filter(|(q, _)| *q != *p && *q != p.complement()).all(|(_, other)| pts.iter().all(|x| !other.contains(x)))
    });
    report.push(Check::new("plane_lifts.complements_share_points", true, paired && distinct_otherwise));

    let selected = element.map(|g| {
        let r: FiberRotation = fiber_action(g);
        json!({ "element": g, "display": g.to_string(), "rotation": r, "fixed": fixed_points(g) })
    });
    report.data = json!({ "report": full, "element": selected });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        let r = run_fiber(None).unwrap();
        assert_eq!(r.failed(), 0, "{}", r.render_table());
    }

    #[test]
    fn selected_element_is_reported() {
        let g: SignFlip = "+--+".parse().unwrap();
        let r = run_fiber(Some(&g)).unwrap();
        assert_eq!(r.data["element"]["display"], "(+,-,-,+)");
        assert_eq!(r.data["element"]["fixed"]["kind"], "pair");
    }
}

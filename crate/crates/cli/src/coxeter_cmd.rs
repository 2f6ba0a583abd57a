use serde_json::json;

use cytoric::betti::resolved_betti_doubled;
use cytoric::coxeter::{build_600_cell, chain_of_120_cells, glue_chain, hundred_twenty_cell, hypercube, ChainSpec};

use crate::{CliResult, Check, Report};

/// Face counts of a chain of `k` right-angled 120-cells and the `b₂` of the
/// resolved twistor space of its double.
pub fn run_chain(k: usize) -> CliResult<Report> {
    let mut report = Report::new("coxeter");
    let chain = chain_of_120_cells(k)?;
    let f = chain.f_vector();
    let b2 = resolved_betti_doubled(f.v as u64, f.f as u64)?.b[2];
    report.push(Check::new("euler", 0, f.euler()));
    report.push(Check::new("boundary_closed", true, chain.is_closed_3_manifold_like()));
    if k >= 2 {
        report.note("face counts for k >= 2 depend on the choice of gluing facets and maps");
    }
    report.data = json!({
        "k": k,
        "V": f.v,
        "E": f.e,
        "F": f.f,
        "C": f.c,
        "euler": f.euler(),
        "b2_of_resolution": b2,
        "convention_dependent": k >= 2,
    });
    Ok(report)
}

/// Regression checks: 600-cell, its dual and cube chains.
pub fn run_selftest() -> CliResult<Report> {
    let mut report = Report::new("coxeter");
    let six = build_600_cell();
    report.push(Check::new("600-cell.f_vector", "[120, 720, 1200, 600]", format!("{:?}", six.f_vector().as_array())));
    let dual = hundred_twenty_cell();
    report.push(Check::new("120-cell.f_vector", "[600, 1200, 720, 120]", format!("{:?}", dual.f_vector().as_array())));
    report.push(Check::new("120-cell.euler", 0, dual.f_vector().euler()));
    let regular = (0..dual.count(3)).all(|c| dual.subfaces(3, c, 0).len() == 20 && dual.boundary(3, c).len() == 12);
    report.push(Check::new("120-cell.dodecahedral_facets", true, regular));
    let cube = hypercube();
    for k in 1..=4 {
        let chain = glue_chain(&cube, &ChainSpec::new(k)?)?;
        report.push(Check::new(format!("cube_chain.k{k}"), "[16, 32, 24, 8]", format!("{:?}", chain.f_vector().as_array())));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell_chain() {
        let r = run_chain(1).unwrap();
        assert_eq!(r.failed(), 0);
        assert_eq!(r.data["b2_of_resolution"], 2041);
        assert_eq!(r.data["convention_dependent"], false);
    }

    #[test]
    fn selftest_passes() {
        let r = run_selftest().unwrap();
        assert_eq!(r.failed(), 0, "{}", r.render_table());
    }
}

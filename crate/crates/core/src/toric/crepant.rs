use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{dot_int, json, solve_integer, Int, IntVec, LatticeMatrix};

/// Outcome of looking for `m ∈ ℤⁿ` with `⟨m, ρ⟩ = 1` on every ray.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Crepancy {
    Certified {
        #[serde(with = "json::int_vec")]
        m: IntVec,
    },
    /// First ray (old rays first, then new) that cannot be added; `pairing` is
    /// its value under the certificate `m` for the rays before it.
    Failed {
        #[serde(with = "json::int_vec")]
        ray: IntVec,
        #[serde(with = "json::integer")]
        pairing: Int,
        #[serde(with = "json::int_vec")]
        m: IntVec,
    },
}

impl Crepancy {
    pub fn is_certified(&self) -> bool {
        matches!(self, Crepancy::Certified { .. })
    }
}

fn solve_ones(rays: &[IntVec], n: usize) -> Option<IntVec> {
    let a = LatticeMatrix::from_rows(rays, n).ok()?;
    solve_integer(&a, &vec![Int::from(1); rays.len()])
}

/// Gorenstein certificate for the fan with rays `old ∪ new`: the subdivision
/// adding `new` is crepant iff some integral `m` pairs to one with all rays.
pub fn crepancy_certificate(old: &[IntVec], new: &[IntVec]) -> Result<Crepancy> {
    let all: Vec<IntVec> = old.iter().chain(new).cloned().collect();
    let Some(n) = all.first().map(Vec::len) else {
        return Err(Error::InvalidInput("no rays".into()));
    };
    if let Some(bad) = all.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: bad.len() });
    }
    if let Some(m) = solve_ones(&all, n) {
        return Ok(Crepancy::Certified { m });
    }
    for k in 1..=all.len() {
        if solve_ones(&all[..k], n).is_none() {
            if k == 1 {
                return Err(Error::InvalidInput("first ray is not primitive".into()));
            }
            let m = solve_ones(&all[..k - 1], n).expect("prefix solvable");
            let pairing = dot_int(&m, &all[k - 1]);
            return Ok(Crepancy::Failed { ray: all[k - 1].clone(), pairing, m });
        }
    }
    unreachable!("full system unsolvable but every prefix solvable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, ivec};

    fn rays(v: &[&[i64]]) -> Vec<IntVec> {
        v.iter().map(|r| ivec(r)).collect()
    }

    #[test]
    fn model_p_blowup_is_crepant() {
        let old = rays(&[&[1, 1, -1], &[1, -1, 1], &[-1, 1, 1]]);
        let new = rays(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(crepancy_certificate(&old, &new).unwrap(), Crepancy::Certified { m: ivec(&[1, 1, 1]) });
    }

    #[test]
    fn a1_blowup_is_crepant() {
        let old = rays(&[&[2, -1, 0], &[0, 1, 0]]);
        let new = rays(&[&[1, 0, 0]]);
        assert_eq!(crepancy_certificate(&old, &new).unwrap(), Crepancy::Certified { m: ivec(&[1, 1, 0]) });
    }

    #[test]
    fn star_subdivision_of_octant_is_not() {
        let old = rays(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let new = rays(&[&[1, 1, 1]]);
        let Crepancy::Failed { ray, pairing, m } = crepancy_certificate(&old, &new).unwrap() else { panic!() };
        assert_eq!(ray, ivec(&[1, 1, 1]));
        assert_eq!(pairing, int(3));
        assert_eq!(m, ivec(&[1, 1, 1]));
    }

    #[test]
    fn certificate_pairs_to_one() {
        let old = rays(&[&[1, 0, 0], &[1, 2, 0], &[0, 0, 1]]);
        let new = rays(&[&[1, 1, 0]]);
        let Crepancy::Certified { m } = crepancy_certificate(&old, &new).unwrap() else { panic!() };
        for r in old.iter().chain(&new) {
            assert_eq!(dot_int(&m, r), int(1));
        }
    }
}

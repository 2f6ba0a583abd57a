use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::complex::CellComplex4;
use crate::error::{Error, Result};

/// Which facets of the base polytope the chain is glued along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum GluingRule {
    /// `facet` and the facet farthest from it in the facet adjacency graph.
    Opposite { facet: usize },
    Explicit { first: usize, second: usize },
}

impl Default for GluingRule {
    fn default() -> Self {
        GluingRule::Opposite { facet: 0 }
    }
}

/// `k` copies of a polytope, copy `i` glued to copy `i + 1` along the first
/// gluing facet when `i` is even and along the second when `i` is odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub k: usize,
    #[serde(default)]
    pub gluing: GluingRule,
}

impl ChainSpec {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidChain("a chain needs at least one cell".into()));
        }
        Ok(ChainSpec { k, gluing: GluingRule::default() })
    }

    /// The two gluing facets of `base`.
    pub fn facets(&self, base: &CellComplex4) -> Result<(usize, usize)> {
        let (a, b) = match self.gluing {
            GluingRule::Opposite { facet } => {
                if facet >= base.count(3) {
                    return Err(Error::InvalidChain(format!("facet {facet} out of range")));
                }
                (facet, base.opposite_facet(facet))
            }
            GluingRule::Explicit { first, second } => (first, second),
        };
        if a >= base.count(3) || b >= base.count(3) {
            return Err(Error::InvalidChain(format!("facets ({a}, {b}) out of range")));
        }
        Ok((a, b))
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller id as root so class order is stable
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Faces of a facet by dimension, including the facet itself at dimension 3.
fn faces_in(base: &CellComplex4, facet: usize) -> [BTreeSet<usize>; 4] {
    std::array::from_fn(|d| base.subfaces(3, facet, d).into_iter().collect())
}

/// Glues copies of `base` across facets, flattening the right angles along
/// each glued facet: the facet and its faces disappear, and for every face
/// `g` of the facet the two faces of dimension `dim g + 1` meeting the facet
/// in `g` merge into one.
pub fn glue_chain(base: &CellComplex4, spec: &ChainSpec) -> Result<CellComplex4> {
    if spec.k == 0 {
        return Err(Error::InvalidChain("a chain needs at least one cell".into()));
    }
    let (g1, g2) = spec.facets(base)?;
    let in_g = [faces_in(base, g1), faces_in(base, g2)];
    if spec.k >= 3 && (g1 == g2 || !in_g[0][0].is_disjoint(&in_g[1][0])) {
        return Err(Error::InvalidChain(format!("gluing facets {g1} and {g2} are not disjoint")));
    }

    // the face of dimension d + 1 through a d-face of the facet, off the facet
    let mut transverse: [HashMap<(usize, usize), usize>; 2] = Default::default();
    let cof: Vec<Vec<Vec<usize>>> = (1..4).map(|k| base.coface_table(k)).collect();
    for (s, faces) in in_g.iter().enumerate() {
        if spec.k < 2 || (s == 1 && spec.k < 3) {
            break;
        }
        for d in 0..3 {
            for &g in &faces[d] {
                let off: Vec<usize> = cof[d][g].iter().copied().filter(|t| !faces[d + 1].contains(t)).collect();
                if off.len() != 1 {
                    return Err(Error::InvalidChain(format!(
                        "{d}-face {g} of the gluing facet has {} transverse faces, expected 1",
                        off.len()
                    )));
                }
                transverse[s].insert((d, g), off[0]);
            }
        }
    }
    let transverse_of = |s: usize, d: usize, g: usize| transverse[s][&(d, g)];

    let mut offset = [0usize; 4];
    for d in 1..4 {
        offset[d] = offset[d - 1] + base.count(d - 1);
    }
    let per_copy = offset[3] + base.count(3);
    let id = |copy: usize, d: usize, i: usize| copy * per_copy + offset[d] + i;
    let mut uf = UnionFind((0..spec.k * per_copy).collect());
    let mut removed = vec![false; spec.k * per_copy];

    for junction in 0..spec.k.saturating_sub(1) {
        let s = junction % 2;
        for copy in [junction, junction + 1] {
            for d in 0..4 {
                for &g in &in_g[s][d] {
                    removed[id(copy, d, g)] = true;
                }
            }
        }
        for d in 0..3 {
            for &g in &in_g[s][d] {
                let t = transverse_of(s, d, g);
                uf.union(id(junction, d + 1, t), id(junction + 1, d + 1, t));
            }
        }
    }

    // number surviving classes per dimension, in order of first member
    let mut class_index: HashMap<usize, usize> = HashMap::new();
    let mut counts = [0usize; 4];
    let mut members: [Vec<Vec<(usize, usize)>>; 4] = Default::default();
    for copy in 0..spec.k {
        for d in 0..4 {
            for i in 0..base.count(d) {
                let x = id(copy, d, i);
                if removed[x] {
                    continue;
                }
                let root = uf.find(x);
                let idx = *class_index.entry(root).or_insert_with(|| {
                    counts[d] += 1;
                    members[d].push(Vec::new());
                    counts[d] - 1
                });
                members[d][idx].push((copy, i));
            }
        }
    }
    let mut boundary: [Vec<Vec<usize>>; 3] = Default::default();
    for d in 1..4 {
        boundary[d - 1] = members[d]
            .iter()
            .map(|ms| {
                let mut b: Vec<usize> = ms
                    .iter()
                    .flat_map(|&(copy, i)| base.boundary(d, i).iter().map(move |&j| (copy, j)))
                    .filter(|&(copy, j)| !removed[id(copy, d - 1, j)])
                    .map(|(copy, j)| {
                        let root = uf.find(id(copy, d - 1, j));
                        class_index[&root]
                    })
                    .collect();
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
    }
    CellComplex4::new(counts[0], boundary)
}

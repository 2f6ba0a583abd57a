use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

/// Boundary complex of a 4-polytope as a graded incidence structure.
///
/// `boundary[k][i]` lists, sorted, the `(k−1)`-faces of the `i`-th `k`-face;
/// `boundary[0]` holds one empty list per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex4 {
    boundary: [Vec<Vec<usize>>; 4],
}

/// Face counts `(V, E, F, C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FVector {
    #[serde(rename = "V")]
    pub v: usize,
    #[serde(rename = "E")]
    pub e: usize,
    #[serde(rename = "F")]
    pub f: usize,
    #[serde(rename = "C")]
    pub c: usize,
}

impl FVector {
    pub fn as_array(&self) -> [usize; 4] {
        [self.v, self.e, self.f, self.c]
    }

    /// `V − E + F − C`.
    pub fn euler(&self) -> i64 {
        self.v as i64 - self.e as i64 + self.f as i64 - self.c as i64
    }
}

impl From<[usize; 4]> for FVector {
    fn from(a: [usize; 4]) -> Self {
        FVector { v: a[0], e: a[1], f: a[2], c: a[3] }
    }
}

impl CellComplex4 {
    /// Checks index ranges and sorts the boundary lists.
    pub fn new(vertices: usize, mut boundary: [Vec<Vec<usize>>; 3]) -> Result<Self> {
        let mut counts = [vertices, 0, 0, 0];
        for k in 1..4 {
            counts[k] = boundary[k - 1].len();
        }
        for k in 1..4 {
            for (i, b) in boundary[k - 1].iter_mut().enumerate() {
                b.sort_unstable();
                b.dedup();
                if b.is_empty() {
                    return Err(Error::InvalidInput(format!("{k}-face {i} has empty boundary")));
                }
                if let Some(&bad) = b.iter().find(|&&j| j >= counts[k - 1]) {
                    return Err(Error::InvalidInput(format!("{k}-face {i} refers to missing {}-face {bad}", k - 1)));
                }
            }
        }
        let [e, f, c] = boundary;
        Ok(CellComplex4 { boundary: [vec![Vec::new(); vertices], e, f, c] })
    }

    pub fn count(&self, k: usize) -> usize {
        self.boundary[k].len()
    }

    pub fn f_vector(&self) -> FVector {
        FVector::from([0, 1, 2, 3].map(|k| self.count(k)))
    }

    pub fn boundary(&self, k: usize, i: usize) -> &[usize] {
        &self.boundary[k][i]
    }

    /// For each `(k−1)`-face, the sorted `k`-faces containing it.
    pub fn coface_table(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count(k - 1)];
        for (i, b) in self.boundary[k].iter().enumerate() {
            for &j in b {
                out[j].push(i);
            }
        }
        out
    }

    /// Sorted indices of the `j`-faces contained in the `k`-face `i`, `j ≤ k`.
    pub fn subfaces(&self, k: usize, i: usize, j: usize) -> Vec<usize> {
        assert!(j <= k);
        let mut cur: BTreeSet<usize> = BTreeSet::from([i]);
        for d in (j + 1..=k).rev() {
            cur = cur.iter().flat_map(|&x| self.boundary[d][x].iter().copied()).collect();
        }
        cur.into_iter().collect()
    }

    /// Order-reversing dual: `k`-faces become `(3−k)`-faces, indices kept.
    pub fn dualize(&self) -> CellComplex4 {
        let mut boundary: [Vec<Vec<usize>>; 4] = Default::default();
        boundary[0] = vec![Vec::new(); self.count(3)];
        for k in 1..4 {
            // new k-faces are old (3−k)-faces; their boundary is the old
            // (4−k)-faces containing them
            boundary[k] = self.coface_table(4 - k);
        }
        CellComplex4 { boundary }
    }

    /// Pairs of facets sharing a 2-face.
    pub fn facet_adjacency(&self) -> Vec<Vec<usize>> {
        let cof = self.coface_table(3);
        let mut adj = vec![BTreeSet::new(); self.count(3)];
        for cells in cof {
            for &a in &cells {
                for &b in &cells {
                    if a != b {
                        adj[a].insert(b);
                    }
                }
            }
        }
        adj.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Facet at maximal adjacency distance from `facet`, smallest index first.
    pub fn opposite_facet(&self, facet: usize) -> usize {
        let adj = self.facet_adjacency();
        let mut dist = vec![usize::MAX; self.count(3)];
        dist[facet] = 0;
        let mut queue = std::collections::VecDeque::from([facet]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        let far = dist.iter().filter(|&&d| d != usize::MAX).max().copied().unwrap_or(0);
        dist.iter().position(|&d| d == far).expect("facet reachable")
    }

    /// Every face lies in at least two faces of the next dimension, every
    /// 2-face in exactly two facets, and `V − E + F − C = 0`.
    pub fn is_closed_3_manifold_like(&self) -> bool {
        (1..4).all(|k| self.coface_table(k).iter().all(|c| c.len() >= 2))
            && self.coface_table(3).iter().all(|c| c.len() == 2)
            && self.f_vector().euler() == 0
    }
}

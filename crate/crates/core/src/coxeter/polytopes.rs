use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use super::complex::CellComplex4;
use crate::exactnum::{rat, Golden};

/// Point of `ℝ⁴` with coordinates in `ℚ(φ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoldenPoint(pub [Golden; 4]);

impl GoldenPoint {
    pub fn dot(&self, other: &GoldenPoint) -> Golden {
        self.0.iter().zip(&other.0).fold(Golden::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_squared(&self) -> Golden {
        self.dot(self)
    }
}

impl Serialize for GoldenPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        parts.serialize(s)
    }
}

const EVEN_PERMUTATIONS: [[usize; 4]; 12] = [
    [0, 1, 2, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
    [1, 0, 3, 2],
    [1, 2, 0, 3],
    [1, 3, 2, 0],
    [2, 0, 1, 3],
    [2, 1, 3, 0],
    [2, 3, 0, 1],
    [3, 0, 2, 1],
    [3, 1, 0, 2],
    [3, 2, 1, 0],
];

/// The 120 vertices of the 600-cell on the unit sphere, sorted.
pub fn six_hundred_cell_vertices() -> Vec<GoldenPoint> {
    let half = rat(1, 2);
    let mut pts = Vec::with_capacity(120);
    for axis in 0..4 {
        for s in [-1, 1] {
            let mut c: [Golden; 4] = std::array::from_fn(|_| Golden::zero());
            c[axis] = Golden::from_ints(s, 0);
            pts.push(GoldenPoint(c));
        }
    }
    for bits in 0..16u32 {
        let c = std::array::from_fn(|i| {
            let s = if bits >> i & 1 == 1 { -1 } else { 1 };
            Golden::rational(rat(s, 2))
        });
        pts.push(GoldenPoint(c));
    }
    let base = [Golden::phi(), Golden::one(), Golden::phi_inv(), Golden::zero()].map(|g| g.scale(&half));
    for perm in EVEN_PERMUTATIONS {
        for bits in 0..8u32 {
            // signs on the three nonzero entries
            let signed: [Golden; 4] = std::array::from_fn(|i| {
                if i < 3 && bits >> i & 1 == 1 {
                    -&base[i]
                } else {
                    base[i].clone()
                }
            });
            // entry i of the pattern goes to coordinate perm[i]
            let mut c: [Golden; 4] = std::array::from_fn(|_| Golden::zero());
            for i in 0..4 {
                c[perm[i]] = signed[i].clone();
            }
            pts.push(GoldenPoint(c));
        }
    }
    pts.sort();
    pts
}

/// All cliques of the given size as sorted vertex lists, from sorted
/// neighbour lists.
fn cliques(adj: &[Vec<usize>], size: usize) -> Vec<Vec<usize>> {
    fn extend(adj: &[Vec<usize>], clique: &mut Vec<usize>, cands: &[usize], size: usize, out: &mut Vec<Vec<usize>>) {
        if clique.len() == size {
            out.push(clique.clone());
            return;
        }
        for (i, &c) in cands.iter().enumerate() {
            let next: Vec<usize> = cands[i + 1..].iter().copied().filter(|x| adj[c].binary_search(x).is_ok()).collect();
            clique.push(c);
            extend(adj, clique, &next, size, out);
            clique.pop();
        }
    }
    let mut per_vertex: Vec<Vec<Vec<usize>>> = (0..adj.len())
        .into_par_iter()
        .map(|v| {
            let higher: Vec<usize> = adj[v].iter().copied().filter(|&u| u > v).collect();
            let mut out = Vec::new();
            extend(adj, &mut vec![v], &higher, size, &mut out);
            out
        })
        .collect();
    per_vertex.iter_mut().flat_map(std::mem::take).collect()
}

/// Simplicial boundary complex of the 600-cell: edges join vertices at the
/// largest inner product below one, triangles and tetrahedra are the 3- and
/// 4-cliques of that graph.
pub fn build_600_cell() -> CellComplex4 {
    let pts = six_hundred_cell_vertices();
    let n = pts.len();
    let one = Golden::one();
    let dots: Vec<Vec<Golden>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| if i == j { one.clone() } else { pts[i].dot(&pts[j]) }).collect())
        .collect();
    let edge_dot = dots.iter().flatten().filter(|d| **d < one).max().expect("distinct points").clone();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && dots[i][j] == edge_dot).collect())
        .collect();
    simplicial_complex(&adj)
}

fn simplicial_complex(adj: &[Vec<usize>]) -> CellComplex4 {
    let edges = cliques(adj, 2);
    let tris = cliques(adj, 3);
    let tets = cliques(adj, 4);
    let edge_index: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, e)| ((e[0], e[1]), i)).collect();
    let tri_index: HashMap<(usize, usize, usize), usize> =
        tris.iter().enumerate().map(|(i, t)| ((t[0], t[1], t[2]), i)).collect();
    let e_b: Vec<Vec<usize>> = edges.clone();
    let t_b: Vec<Vec<usize>> = tris
        .iter()
        .map(|t| vec![edge_index[&(t[0], t[1])], edge_index[&(t[0], t[2])], edge_index[&(t[1], t[2])]])
        .collect();
    let c_b: Vec<Vec<usize>> = tets
        .iter()
        .map(|q| {
            vec![
                tri_index[&(q[0], q[1], q[2])],
                tri_index[&(q[0], q[1], q[3])],
                tri_index[&(q[0], q[2], q[3])],
                tri_index[&(q[1], q[2], q[3])],
            ]
        })
        .collect();
    CellComplex4::new(adj.len(), [e_b, t_b, c_b]).expect("clique complex is consistent")
}

/// The 120-cell, as the dual of [`build_600_cell`]; built once.
pub fn hundred_twenty_cell() -> &'static CellComplex4 {
    static CELL: OnceLock<CellComplex4> = OnceLock::new();
    CELL.get_or_init(|| build_600_cell().dualize())
}

/// Boundary of the 4-cube `[0,1]⁴`. Faces are the patterns in `{0, 1, *}⁴`,
/// ordered by dimension and then lexicographically.
pub fn hypercube() -> CellComplex4 {
    // digit 2 stands for a free coordinate
    let patterns: Vec<[u8; 4]> = (0..81u32)
        .map(|mut x| {
            std::array::from_fn(|_| {
                let d = (x % 3) as u8;
                x /= 3;
                d
            })
        })
        .collect();
    let dim = |p: &[u8; 4]| p.iter().filter(|&&d| d == 2).count();
    let mut by_dim: Vec<Vec<[u8; 4]>> = vec![Vec::new(); 4];
    for p in &patterns {
        let k = dim(p);
        if k < 4 {
            by_dim[k].push(*p);
        }
    }
    for v in &mut by_dim {
        v.sort();
    }
    let index: Vec<HashMap<[u8; 4], usize>> =
        by_dim.iter().map(|v| v.iter().enumerate().map(|(i, p)| (*p, i)).collect()).collect();
    let boundary: [Vec<Vec<usize>>; 3] = std::array::from_fn(|k0| {
        let k = k0 + 1;
        by_dim[k]
            .iter()
            .map(|p| {
                let mut b = Vec::new();
                for i in (0..4).filter(|&i| p[i] == 2) {
                    for fixed in [0u8, 1] {
                        let mut q = *p;
                        q[i] = fixed;
                        b.push(index[k - 1][&q]);
                    }
                }
                b
            })
            .collect()
    });
    CellComplex4::new(16, boundary).expect("cube complex is consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn vertices_lie_on_unit_sphere() {
        let pts = six_hundred_cell_vertices();
        assert_eq!(pts.len(), 120);
        assert_eq!(pts.iter().collect::<BTreeSet<_>>().len(), 120);
        assert!(pts.iter().all(|p| p.norm_squared() == Golden::one()));
    }

    #[test]
    fn six_hundred_cell_counts() {
        let c = build_600_cell();
        assert_eq!(c.f_vector().as_array(), [120, 720, 1200, 600]);
        assert_eq!(c.f_vector().euler(), 0);
        let cof = c.coface_table(1);
        assert!(cof.iter().all(|e| e.len() == 12));
        assert!(c.is_closed_3_manifold_like());
    }

    #[test]
    fn edge_inner_product_is_half_phi() {
        let pts = six_hundred_cell_vertices();
        let c = build_600_cell();
        let e = c.boundary(1, 0);
        assert_eq!(pts[e[0]].dot(&pts[e[1]]), Golden::phi().scale(&rat(1, 2)));
    }

    #[test]
    fn hundred_twenty_cell_regularity() {
        let c = hundred_twenty_cell();
        assert_eq!(c.f_vector().as_array(), [600, 1200, 720, 120]);
        for f in 0..c.count(3) {
            assert_eq!(c.subfaces(3, f, 0).len(), 20);
            assert_eq!(c.subfaces(3, f, 1).len(), 30);
            assert_eq!(c.boundary(3, f).len(), 12);
        }
        for p in 0..c.count(2) {
            assert_eq!(c.boundary(2, p).len(), 5);
        }
        let vertex_edges = c.coface_table(1);
        assert!(vertex_edges.iter().all(|e| e.len() == 4));
        let mut cells_at_vertex = vec![0usize; c.count(0)];
        for f in 0..c.count(3) {
            for v in c.subfaces(3, f, 0) {
                cells_at_vertex[v] += 1;
            }
        }
        assert!(cells_at_vertex.iter().all(|&n| n == 4));
    }
}

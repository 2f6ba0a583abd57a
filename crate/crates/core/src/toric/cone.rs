use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{
    display_int_vec, linalg, primitive, smith_normal_form, to_rat_vec, Int, IntVec, LatticeMatrix,
    Rational,
};
use crate::polytope::{combinations, Polyhedron};

/// Rational polyhedral cone generated by primitive lattice vectors.
///
/// Rays are stored primitive and in the order given; duplicates are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    rays: Vec<IntVec>,
}

impl Cone {
    pub fn new(rays: Vec<IntVec>) -> Result<Self> {
        let Some(n) = rays.first().map(Vec::len) else {
            return Err(Error::InvalidInput("cone needs at least one ray".into()));
        };
        let mut out: Vec<IntVec> = Vec::with_capacity(rays.len());
        for r in rays {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: r.len() });
            }
            let p = primitive(&r)?;
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(Cone { rays: out })
    }

    pub fn from_i64(rays: &[&[i64]]) -> Result<Self> {
        Cone::new(rays.iter().map(|r| r.iter().copied().map(Int::from).collect()).collect())
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn ambient_dim(&self) -> usize {
        self.rays[0].len()
    }

    pub fn dim(&self) -> usize {
        let rows: Vec<Vec<Rational>> = self.rays.iter().map(|r| to_rat_vec(r)).collect();
        linalg::rank(&rows, self.ambient_dim())
    }

    pub fn is_simplicial(&self) -> bool {
        self.dim() == self.rays.len()
    }

    /// Index of the sublattice spanned by the rays inside its saturation,
    /// as Smith invariant factors different from one.
    pub fn torsion(&self) -> IntVec {
        let m = LatticeMatrix::from_rows(&self.rays, self.ambient_dim()).expect("consistent rows");
        smith_normal_form(&m).torsion_factors()
    }

    /// Simplicial with rays forming part of a lattice basis.
    pub fn is_smooth(&self) -> bool {
        self.is_simplicial() && self.torsion().is_empty()
    }

    /// Order of the torsion group; one for smooth cones.
    pub fn multiplicity(&self) -> Int {
        self.torsion().iter().fold(Int::one(), |acc, x| acc * x)
    }

    pub fn has_ray(&self, r: &[Int]) -> bool {
        self.rays.iter().any(|x| x == r)
    }

    /// Membership of an integer vector, by trying every linearly independent
    /// subset of rays.
    pub fn contains(&self, v: &[Int]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let n = self.ambient_dim();
        let target = to_rat_vec(v);
        let d = self.dim();
        for k in 1..=d {
            for subset in combinations(self.rays.len(), k) {
                // columns are the chosen rays
                let a: Vec<Vec<Rational>> = (0..n)
                    .map(|row| subset.iter().map(|&i| Rational::from_integer(self.rays[i][row].clone())).collect())
                    .collect();
                let cols: Vec<Vec<Rational>> = subset.iter().map(|&i| to_rat_vec(&self.rays[i])).collect();
                if linalg::rank(&cols, n) != k {
                    continue;
                }
                if let Some(l) = linalg::solve(&a, &target, k) {
                    if l.iter().all(|x| !x.is_negative()) {
                        return true;
                    }
                }
            }
        }
        false
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rays.iter().map(|r| display_int_vec(r)).collect();
        write!(f, "cone[{}]", parts.join(", "))
    }
}

/// Fan given by its maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    cones: Vec<Cone>,
}

impl Fan {
    pub fn new(rank: usize, cones: Vec<Cone>) -> Result<Self> {
        for c in &cones {
            if c.ambient_dim() != rank {
                return Err(Error::DimensionMismatch { expected: rank, got: c.ambient_dim() });
            }
        }
        Ok(Fan { rank, cones })
    }

    /// Inward normal fan: one maximal cone per vertex, spanned by the normals
    /// of the facets through it. Cones follow the vertex order.
    pub fn normal_fan(p: &Polyhedron) -> Fan {
        let cones = p
            .vertices()
            .iter()
            .map(|v| {
                let rays = p.active_at(v).into_iter().map(|i| p.halfspaces()[i].normal().to_vec()).collect();
                Cone::new(rays).expect("facet normals are primitive")
            })
            .collect();
        Fan { rank: p.dim(), cones }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    /// Distinct rays, sorted.
    pub fn rays(&self) -> Vec<IntVec> {
        let set: BTreeSet<IntVec> = self.cones.iter().flat_map(|c| c.rays.iter().cloned()).collect();
        set.into_iter().collect()
    }

    /// Maximal cones having every listed vector as a ray.
    pub fn cones_with_rays(&self, rays: &[IntVec]) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&i| rays.iter().all(|r| self.cones[i].has_ray(r)))
            .collect()
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones.iter().all(Cone::is_simplicial)
    }

    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(Cone::is_smooth)
    }

    /// Codimension-one faces of simplicial maximal cones lying in exactly two
    /// maximal cones, with sorted rays, in sorted order.
    pub fn interior_walls(&self) -> Vec<Cone> {
        let mut walls: BTreeSet<Vec<IntVec>> = BTreeSet::new();
        for c in self.cones.iter().filter(|c| c.is_simplicial() && c.rays.len() == self.rank) {
            for subset in combinations(c.rays.len(), self.rank - 1) {
                let mut w: Vec<IntVec> = subset.iter().map(|&i| c.rays[i].clone()).collect();
                w.sort();
                walls.insert(w);
            }
        }
        walls
            .into_iter()
            .filter(|w| self.cones_with_rays(w).len() == 2)
            .map(|rays| Cone { rays })
            .collect()
    }
}

use std::collections::BTreeSet;

use num_traits::Zero;

use super::{affine_dimension, HalfSpace, Polyhedron};
use crate::error::{Error, Result};
use crate::exactnum::{
    dot_int_rat, hermite_normal_form, rat_int, IntVec, LatticeMatrix, RatVec, Rational,
};

/// A nonempty face, described by the facets that are tight on it and the
/// generators (vertices and extreme rays) it contains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub dim: usize,
    /// Indices into `Polyhedron::halfspaces`.
    pub active: Vec<usize>,
    /// Indices into the vertex list.
    pub vertices: Vec<usize>,
    /// Indices into the ray list.
    pub rays: Vec<usize>,
}

impl Face {
    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    fn generators(&self, nv: usize) -> Vec<usize> {
        self.vertices
            .iter()
            .copied()
            .chain(self.rays.iter().map(|r| r + nv))
            .collect()
    }
}

/// Graded face lattice; `faces[k]` holds the `k`-dimensional faces and
/// `covers[k]` the pairs `(i, j)` with `faces[k][i] ⊂ faces[k + 1][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    pub faces: Vec<Vec<Face>>,
    pub covers: Vec<Vec<(usize, usize)>>,
}

impl FaceLattice {
    pub(super) fn build(p: &Polyhedron) -> FaceLattice {
        let dim = p.dim();
        let vrep = p.vrep();
        let nv = vrep.vertices.len();

        let facet_sets: Vec<BTreeSet<usize>> = p
            .halfspaces()
            .iter()
            .map(|h| generators_on(h, &vrep.vertices, &vrep.rays))
            .collect();

        let top: BTreeSet<usize> = (0..nv + vrep.rays.len()).collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut queue: Vec<BTreeSet<usize>> = vec![top];
        queue.extend(facet_sets.iter().cloned());
        while let Some(s) = queue.pop() {
            if !s.iter().any(|&g| g < nv) || !seen.insert(s.clone()) {
                continue;
            }
            for f in &facet_sets {
                let meet: BTreeSet<usize> = s.intersection(f).copied().collect();
                if meet.len() < s.len() && !seen.contains(&meet) {
                    queue.push(meet);
                }
            }
        }

        let mut faces: Vec<Vec<Face>> = vec![Vec::new(); dim + 1];
        for gens in &seen {
            let face = face_from_generators(p, &facet_sets, gens);
            faces[face.dim].push(face);
        }
        for level in faces.iter_mut() {
            level.sort_by(|a, b| (&a.vertices, &a.rays, &a.active).cmp(&(&b.vertices, &b.rays, &b.active)));
        }

        let mut covers = vec![Vec::new(); dim];
        for k in 0..dim {
            for (i, lo) in faces[k].iter().enumerate() {
                let lo_g: BTreeSet<usize> = lo.generators(nv).into_iter().collect();
                for (j, hi) in faces[k + 1].iter().enumerate() {
                    let hi_g: BTreeSet<usize> = hi.generators(nv).into_iter().collect();
                    if lo_g.is_subset(&hi_g) {
                        covers[k].push((i, j));
                    }
                }
            }
        }
        FaceLattice { faces, covers }
    }

    pub fn faces(&self, k: usize) -> &[Face] {
        self.faces.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(|v| v.len()).collect()
    }

    /// Edges with two endpoints.
    pub fn bounded_edges(&self) -> Vec<&Face> {
        self.faces(1).iter().filter(|f| f.is_bounded()).collect()
    }

    pub fn facets(&self) -> &[Face] {
        let d = self.faces.len() - 1;
        self.faces(d.saturating_sub(1))
    }

    /// Faces `j` of dimension `k + 1` containing face `i` of dimension `k`.
    pub fn cofaces(&self, k: usize, i: usize) -> Vec<usize> {
        self.covers
            .get(k)
            .map(|c| c.iter().filter(|(a, _)| *a == i).map(|&(_, b)| b).collect())
            .unwrap_or_default()
    }
}

fn generators_on(h: &HalfSpace, vertices: &[RatVec], rays: &[IntVec]) -> BTreeSet<usize> {
    let nv = vertices.len();
    let mut s: BTreeSet<usize> = (0..nv).filter(|&i| h.is_tight(&vertices[i])).collect();
    s.extend((0..rays.len()).filter(|&i| h.pair_direction(&rays[i]).is_zero()).map(|i| i + nv));
    s
}

fn face_from_generators(p: &Polyhedron, facet_sets: &[BTreeSet<usize>], gens: &BTreeSet<usize>) -> Face {
    let vrep = p.vrep();
    let nv = vrep.vertices.len();
    let vertices: Vec<usize> = gens.iter().copied().filter(|&g| g < nv).collect();
    let rays: Vec<usize> = gens.iter().copied().filter(|&g| g >= nv).map(|g| g - nv).collect();
    let pts: Vec<RatVec> = vertices.iter().map(|&i| vrep.vertices[i].clone()).collect();
    let dirs: Vec<IntVec> = rays.iter().map(|&i| vrep.rays[i].clone()).collect();
    let dim = affine_dimension(&pts, &dirs).expect("face has a vertex");
    let active = (0..facet_sets.len()).filter(|&i| gens.is_subset(&facet_sets[i])).collect();
    Face { dim, active, vertices, rays }
}

/// Lattice-affine coordinates on the affine span of a face:
/// `x = offset + Σ yᵢ · basis[i]`, with `basis` a basis of the integer
/// points of the face's direction space and `y = projection · x` recovering
/// the coordinates of points on the face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceChart {
    pub basis: Vec<IntVec>,
    pub projection: LatticeMatrix,
    pub offset: RatVec,
}

impl FaceChart {
    pub fn coordinates(&self, x: &[Rational]) -> RatVec {
        (0..self.projection.rows())
            .map(|r| dot_int_rat(self.projection.row(r), x))
            .collect()
    }

    pub fn embed(&self, y: &[Rational]) -> RatVec {
        let mut x = self.offset.clone();
        for (b, yi) in self.basis.iter().zip(y) {
            for (xj, bj) in x.iter_mut().zip(b) {
                *xj += yi * rat_int(bj);
            }
        }
        x
    }

    /// Image of a direction lying in the face.
    pub fn direction(&self, d: &[crate::exactnum::Int]) -> IntVec {
        self.projection.mul_vec(d)
    }
}

impl Polyhedron {
    /// The face cut out by making the given facets tight, in canonical form.
    pub fn face_from_active(&self, active: &[usize]) -> Result<Face> {
        for &i in active {
            if i >= self.halfspaces().len() {
                return Err(Error::NotAFace(format!("facet index {i} out of range")));
            }
        }
        let vrep = self.vrep();
        let facet_sets: Vec<BTreeSet<usize>> = self
            .halfspaces()
            .iter()
            .map(|h| generators_on(h, &vrep.vertices, &vrep.rays))
            .collect();
        let mut gens: BTreeSet<usize> = (0..vrep.vertices.len() + vrep.rays.len()).collect();
        for &i in active {
            gens = gens.intersection(&facet_sets[i]).copied().collect();
        }
        if !gens.iter().any(|&g| g < vrep.vertices.len()) {
            return Err(Error::NotAFace(format!("facets {active:?} have empty intersection")));
        }
        Ok(face_from_generators(self, &facet_sets, &gens))
    }

    /// The smallest face containing the given vertex indices and ray indices.
    pub fn face_spanned_by(&self, vertices: &[usize], rays: &[usize]) -> Result<Face> {
        let vrep = self.vrep();
        let active: Vec<usize> = (0..self.halfspaces().len())
            .filter(|&i| {
                let h = &self.halfspaces()[i];
                vertices.iter().all(|&v| h.is_tight(&vrep.vertices[v]))
                    && rays.iter().all(|&r| h.pair_direction(&vrep.rays[r]).is_zero())
            })
            .collect();
        self.face_from_active(&active)
    }

    /// Coordinates on the affine span of a positive-dimensional face.
    pub fn face_chart(&self, face: &Face) -> Result<FaceChart> {
        if face.dim == 0 {
            return Err(Error::ZeroDimensionalFace);
        }
        let n = self.dim();
        let k = face.dim;
        let r = n - k;
        let normals: Vec<IntVec> = face.active.iter().map(|&i| self.halfspaces()[i].normal().to_vec()).collect();
        // U · Nᵀ = H; the last k rows of U span the integer kernel of N.
        let nt = LatticeMatrix::from_rows(&normals, n)?.transpose();
        let hnf = hermite_normal_form(&nt);
        if hnf.rank() != r {
            return Err(Error::NotAFace(format!(
                "active normals have rank {} but the face has codimension {r}",
                hnf.rank()
            )));
        }
        let basis: Vec<IntVec> = (r..n).map(|i| hnf.u.row(i).to_vec()).collect();
        let ut_inv = hnf.u.transpose().inverse_unimodular().expect("unimodular");
        let projection = LatticeMatrix::from_rows(&(r..n).map(|i| ut_inv.row(i).to_vec()).collect::<Vec<_>>(), n)?;

        // offset = Uᵀ (w, 0) where (w, y) are the full coordinates of a vertex
        let v0 = &self.vertices()[face.vertices[0]];
        let z: RatVec = (0..n).map(|i| dot_int_rat(ut_inv.row(i), v0)).collect();
        let mut offset = vec![Rational::zero(); n];
        for (i, zi) in z.iter().enumerate().take(r) {
            for (j, oj) in offset.iter_mut().enumerate() {
                *oj += zi * rat_int(&hnf.u[(i, j)]);
            }
        }
        Ok(FaceChart { basis, projection, offset })
    }

    /// The face as a full-dimensional polyhedron in its own lattice-affine
    /// coordinates (see [`FaceChart`]).
    pub fn restrict_to_face(&self, face: &Face) -> Result<Polyhedron> {
        Ok(self.restrict_with_chart(face)?.0)
    }

    pub fn restrict_with_chart(&self, face: &Face) -> Result<(Polyhedron, FaceChart)> {
        let chart = self.face_chart(face)?;
        let mut hs = Vec::new();
        for (i, h) in self.halfspaces().iter().enumerate() {
            if face.active.contains(&i) {
                continue;
            }
            let normal: IntVec = chart.basis.iter().map(|b| h.pair_direction(b)).collect();
            if normal.iter().all(|x| x.is_zero()) {
                continue;
            }
            let level = h.level() - h.evaluate(&chart.offset);
            hs.push(HalfSpace::new(normal, level)?);
        }
        let q = Polyhedron::new(face.dim, hs)?;
        Ok((q, chart))
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{model_p, model_r, unit_cube};
    use super::*;
    use crate::exactnum::{ivec, rat, rvec};

    fn unit_square() -> Polyhedron {
        Polyhedron::from_i64(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[-1, 0], -1), (&[0, -1], -1)]).unwrap()
    }

    /// Brute-force oracle: every subset of facets, kept when its tight set is
    /// a nonempty face; returns the number of distinct faces per dimension.
    fn brute_force_f_vector(p: &Polyhedron) -> Vec<usize> {
        let m = p.halfspaces().len();
        let mut seen = BTreeSet::new();
        for mask in 0u64..(1 << m) {
            let active: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            if let Ok(face) = p.face_from_active(&active) {
                seen.insert(face);
            }
        }
        let mut f = vec![0; p.dim() + 1];
        for face in seen {
            f[face.dim] += 1;
        }
        f
    }

    #[test]
    fn square_lattice() {
        let fl = unit_square().face_lattice();
        assert_eq!(fl.f_vector(), vec![4, 4, 1]);
        assert_eq!(fl.covers[0].len(), 8);
        assert_eq!(fl.covers[1].len(), 4);
    }

    #[test]
    fn cone_p_lattice() {
        let p = model_p();
        let fl = p.face_lattice();
        assert_eq!(fl.f_vector(), vec![1, 3, 3, 1]);
        assert!(fl.faces(1).iter().all(|f| !f.is_bounded()));
        assert_eq!(brute_force_f_vector(&p), fl.f_vector());
    }

    #[test]
    fn resolution_r_bounded_edges() {
        let r = model_r();
        let fl = r.face_lattice();
        assert_eq!(fl.faces(0).len(), 4);
        let mut edges: Vec<(RatVec, RatVec)> = fl
            .bounded_edges()
            .iter()
            .map(|e| (r.vertices()[e.vertices[0]].clone(), r.vertices()[e.vertices[1]].clone()))
            .collect();
        edges.sort();
        assert_eq!(
            edges,
            vec![
                (rvec(&[1, 1, 1]), rvec(&[1, 1, 2])),
                (rvec(&[1, 1, 1]), rvec(&[1, 2, 1])),
                (rvec(&[1, 1, 1]), rvec(&[2, 1, 1])),
            ]
        );
        assert_eq!(brute_force_f_vector(&r), fl.f_vector());
    }

    #[test]
    fn cube_euler_relation() {
        let f = unit_cube().face_lattice().f_vector();
        assert_eq!(f, vec![8, 12, 6, 1]);
        assert_eq!(f[0] as i64 - f[1] as i64 + f[2] as i64, 2);
    }

    #[test]
    fn restrict_r_to_facet_x_equals_one() {
        let r = model_r();
        let i = r.facet_index(&ivec(&[1, 0, 0])).unwrap();
        let face = r.face_from_active(&[i]).unwrap();
        let q = r.restrict_to_face(&face).unwrap();
        let expected = Polyhedron::from_i64(
            2,
            &[(&[1, 0], 1), (&[0, 1], 1), (&[1, -1], -1), (&[-1, 1], -1)],
        )
        .unwrap();
        assert_eq!(q, expected);
    }

    #[test]
    fn restrict_cube_to_facet_gives_square() {
        let c = unit_cube();
        for i in 0..c.halfspaces().len() {
            let face = c.face_from_active(&[i]).unwrap();
            let q = c.restrict_to_face(&face).unwrap();
            assert_eq!(q.vertices().len(), 4);
            assert!(q.is_bounded());
            // every unit square in lattice coordinates has area-1 edges
            let fl = q.face_lattice();
            assert_eq!(fl.f_vector(), vec![4, 4, 1]);
        }
    }

    #[test]
    fn restrict_cone_to_facet_projects_rays() {
        let p = model_p();
        let i = p.facet_index(&ivec(&[1, 1, -1])).unwrap();
        let face = p.face_from_active(&[i]).unwrap();
        let (q, chart) = p.restrict_with_chart(&face).unwrap();
        // direct projection oracle: the rays of the facet are (1,0,1), (0,1,1)
        let mut projected: Vec<IntVec> =
            [ivec(&[1, 0, 1]), ivec(&[0, 1, 1])].iter().map(|d| chart.direction(d)).collect();
        projected.sort();
        assert_eq!(q.rays(), &projected[..]);
        assert_eq!(q.vertices().len(), 1);
        for y in q.vertices() {
            assert!(p.contains(&chart.embed(y)));
            assert_eq!(chart.embed(y), rvec(&[0, 0, 0]));
        }
        // embedding the restricted rays recovers the originals
        for r in q.rays() {
            let back: IntVec = (0..3)
                .map(|j| chart.basis.iter().zip(r).map(|(b, c)| &b[j] * c).sum())
                .collect();
            assert!(back == ivec(&[1, 0, 1]) || back == ivec(&[0, 1, 1]));
        }
    }

    #[test]
    fn vertex_cannot_be_restricted() {
        let r = model_r();
        let face = &r.face_lattice().faces(0)[0].clone();
        assert_eq!(r.restrict_to_face(face), Err(Error::ZeroDimensionalFace));
    }

    #[test]
    fn chart_roundtrip_on_rational_face() {
        let p = Polyhedron::from_i64(3, &[(&[2, 0, 0], 1), (&[0, 1, 0], 0), (&[0, 0, 1], 0), (&[-1, -1, -1], -4)])
            .unwrap();
        let i = p.facet_index(&ivec(&[1, 0, 0])).unwrap();
        assert_eq!(p.halfspaces()[i].level(), &rat(1, 2));
        let face = p.face_from_active(&[i]).unwrap();
        let (q, chart) = p.restrict_with_chart(&face).unwrap();
        for v in &face.vertices {
            let x = &p.vertices()[*v];
            let y = chart.coordinates(x);
            assert_eq!(&chart.embed(&y), x);
            assert!(q.vertices().contains(&y));
        }
    }
}

//! The `ℤ₂³` sign-flip group acting on the twistor fiber over a fixed point.
//!
//! Points of `ℍ = ℝ⁴` are written in the basis `1, i, j, k`. Complex
//! structures compatible with the orientation are left multiplications by unit
//! imaginary quaternions, so the fiber is the unit sphere in `span(i, j, k)`;
//! a sign flip `R = diag(g)` acts on it by `L_q ↦ R L_q R⁻¹`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{json, linalg, primitive, rat, Int, IntVec, Rational};

type Mat4 = [[i64; 4]; 4];

/// Hamilton product in the basis `1, i, j, k`.
fn quat_mul(a: [i64; 4], b: [i64; 4]) -> [i64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn unit(i: usize) -> [i64; 4] {
    let mut e = [0; 4];
    e[i] = 1;
    e
}

/// Matrix of `x ↦ q·x`.
fn left_mul(q: [i64; 4]) -> Mat4 {
    let mut m = [[0; 4]; 4];
    for c in 0..4 {
        let col = quat_mul(q, unit(c));
        for r in 0..4 {
            m[r][c] = col[r];
        }
    }
    m
}

/// Element of `ℤ₂³ ⊂ SO(4)`: a diagonal sign matrix with an even number of
/// minus signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignFlip([i8; 4]);

impl SignFlip {
    pub fn new(signs: [i8; 4]) -> Result<Self> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidInput(format!("sign pattern {signs:?} has entries other than ±1")));
        }
        if signs.iter().filter(|&&s| s < 0).count() % 2 == 1 {
            return Err(Error::OddSignFlip(signs));
        }
        Ok(SignFlip(signs))
    }

    pub fn identity() -> Self {
        SignFlip([1; 4])
    }

    /// All eight elements, in sorted order.
    pub fn all() -> Vec<SignFlip> {
        let mut out: Vec<SignFlip> = (0u8..16)
            .filter_map(|bits| {
                let s = std::array::from_fn(|i| if bits >> i & 1 == 1 { -1 } else { 1 });
                SignFlip::new(s).ok()
            })
            .collect();
        out.sort();
        out
    }

    pub fn signs(&self) -> [i8; 4] {
        self.0
    }

    pub fn compose(&self, other: &SignFlip) -> SignFlip {
        SignFlip(std::array::from_fn(|i| self.0[i] * other.0[i]))
    }

    /// Acts trivially on the fiber.
    pub fn is_kernel(&self) -> bool {
        fiber_action(self).is_identity()
    }
}

impl fmt::Display for SignFlip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self.0.iter().map(|&x| if x > 0 { "+" } else { "-" }).collect();
        write!(f, "({})", s.join(","))
    }
}

impl std::str::FromStr for SignFlip {
    type Err = Error;

    /// `"+,-,-,+"`, `"+--+"` or `"1,-1,-1,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace() && !"()[]".contains(*c)).collect();
        let tokens: Vec<&str> = if cleaned.contains(',') {
            cleaned.split(',').collect()
        } else {
            cleaned.char_indices().map(|(i, c)| &cleaned[i..i + c.len_utf8()]).collect()
        };
        let bad = || Error::Parse(format!("malformed sign pattern {s:?}"));
        if tokens.len() != 4 {
            return Err(bad());
        }
        let mut signs = [0i8; 4];
        for (slot, t) in signs.iter_mut().zip(&tokens) {
            *slot = match *t {
                "+" | "1" | "+1" => 1,
                "-" | "-1" => -1,
                _ => return Err(bad()),
            };
        }
        SignFlip::new(signs)
    }
}

impl Serialize for SignFlip {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Rotation of the fiber sphere in the basis `(I, J, K) = (L_i, L_j, L_k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiberRotation(pub [[i64; 3]; 3]);

impl FiberRotation {
    pub fn identity() -> Self {
        FiberRotation([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn is_identity(&self) -> bool {
        *self == FiberRotation::identity()
    }

    pub fn compose(&self, other: &FiberRotation) -> FiberRotation {
        FiberRotation(std::array::from_fn(|r| {
            std::array::from_fn(|c| (0..3).map(|k| self.0[r][k] * other.0[k][c]).sum())
        }))
    }

    pub fn determinant(&self) -> i64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn is_orthogonal(&self) -> bool {
        let t = FiberRotation(std::array::from_fn(|r| std::array::from_fn(|c| self.0[c][r])));
        self.compose(&t).is_identity()
    }

    pub fn apply(&self, v: &[Int]) -> IntVec {
        (0..3)
            .map(|r| (0..3).map(|c| Int::from(self.0[r][c]) * &v[c]).sum())
            .collect()
    }
}

/// Conjugation action of `g` on the complex structures `L_i, L_j, L_k`.
pub fn fiber_action(g: &SignFlip) -> FiberRotation {
    let r: [i64; 4] = g.0.map(i64::from);
    let basis: Vec<Mat4> = (1..4).map(|a| left_mul(unit(a))).collect();
    let mut out = [[0i64; 3]; 3];
    for (c, l) in basis.iter().enumerate() {
        // R L R⁻¹ with R = R⁻¹ diagonal
        let conj: Mat4 = std::array::from_fn(|i| std::array::from_fn(|j| r[i] * l[i][j] * r[j]));
        for (row, m) in basis.iter().enumerate() {
            let frob: i64 = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| conj[i][j] * m[i][j]).sum();
            out[row][c] = frob / 4;
        }
    }
    FiberRotation(out)
}

/// A point of the fiber sphere with rational direction, stored as the
/// primitive integer vector pointing at it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FiberPoint(#[serde(with = "json::int_vec")] IntVec);

impl FiberPoint {
    pub fn new(direction: IntVec) -> Result<Self> {
        if direction.len() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, got: direction.len() });
        }
        Ok(FiberPoint(primitive(&direction)?))
    }

    pub fn from_i64(v: [i64; 3]) -> Result<Self> {
        FiberPoint::new(v.iter().copied().map(Int::from).collect())
    }

    pub fn direction(&self) -> &[Int] {
        &self.0
    }

    pub fn antipode(&self) -> FiberPoint {
        FiberPoint(self.0.iter().map(|x| -x).collect())
    }

    /// Representative with positive leading entry, and the sign relating it
    /// to this point.
    pub fn canonical(&self) -> (IntVec, i8) {
        let lead = self.0.iter().find(|x| !x.is_zero()).expect("nonzero");
        if lead.is_positive() {
            (self.0.clone(), 1)
        } else {
            (self.antipode().0, -1)
        }
    }

    fn act(&self, g: &SignFlip) -> FiberPoint {
        FiberPoint(fiber_action(g).apply(&self.0))
    }
}

impl fmt::Display for FiberPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::exactnum::display_int_vec(&self.0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "points", rename_all = "snake_case")]
pub enum FixedPoints {
    /// The element acts trivially.
    All,
    Pair([FiberPoint; 2]),
}

pub fn fixed_points(g: &SignFlip) -> FixedPoints {
    let a = fiber_action(g);
    let rows: Vec<Vec<Rational>> = (0..3)
        .map(|r| (0..3).map(|c| rat(a.0[r][c] - i64::from(r == c), 1)).collect())
        .collect();
    let kernel = linalg::nullspace(&rows, 3);
    match kernel.len() {
        3 => FixedPoints::All,
        1 => {
            let p = FiberPoint::new(crate::exactnum::primitive_from_rational(&kernel[0]).expect("nonzero")).expect("3-vector");
            let (canon, _) = p.canonical();
            let p = FiberPoint(canon);
            FixedPoints::Pair([p.clone(), p.antipode()])
        }
        n => unreachable!("rotation with {n}-dimensional fixed space"),
    }
}

/// Elements fixing `p`, in sorted order.
pub fn stabilizer(p: &FiberPoint) -> Vec<SignFlip> {
    SignFlip::all().into_iter().filter(|g| p.act(g) == *p).collect()
}

/// Orbit of `p`, sorted.
pub fn orbit(p: &FiberPoint) -> Vec<FiberPoint> {
    let set: BTreeSet<FiberPoint> = SignFlip::all().iter().map(|g| p.act(g)).collect();
    set.into_iter().collect()
}

/// The six vertices `±eₐ` of the octahedron.
pub fn octahedron_points() -> Vec<FiberPoint> {
    let mut pts = Vec::with_capacity(6);
    for a in 0..3 {
        let mut e = [0i64; 3];
        e[a] = 1;
        let p = FiberPoint::from_i64(e).expect("unit vector");
        pts.push(p.antipode());
        pts.push(p);
    }
    pts.sort();
    pts
}

/// Orbits of the octahedron vertices, ordered by the axis they lie on.
pub fn octahedron_orbits() -> Vec<Vec<FiberPoint>> {
    let mut seen: BTreeSet<FiberPoint> = BTreeSet::new();
    let mut out = Vec::new();
    for a in 0..3 {
        let mut e = [0i64; 3];
        e[a] = 1;
        let p = FiberPoint::from_i64(e).expect("unit vector");
        if seen.contains(&p) {
            continue;
        }
        let orb = orbit(&p);
        seen.extend(orb.iter().cloned());
        out.push(orb);
    }
    out
}

/// Coordinate 2-plane `Π_ij = span(e_i, e_j)` of `ℝ⁴`, indices `1..=4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoordinatePlane(usize, usize);

impl CoordinatePlane {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if !(1..=4).contains(&i) || !(1..=4).contains(&j) || i == j {
            return Err(Error::InvalidPlane(i, j));
        }
        Ok(CoordinatePlane(i.min(j), i.max(j)))
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.0, self.1)
    }

    pub fn complement(&self) -> CoordinatePlane {
        let rest: Vec<usize> = (1..=4).filter(|&k| k != self.0 && k != self.1).collect();
        CoordinatePlane(rest[0], rest[1])
    }

    /// All six planes, sorted.
    pub fn all() -> Vec<CoordinatePlane> {
        let mut out = Vec::with_capacity(6);
        for i in 1..=4 {
            for j in i + 1..=4 {
                out.push(CoordinatePlane(i, j));
            }
        }
        out
    }
}

impl fmt::Display for CoordinatePlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}{}", self.0, self.1)
    }
}

/// The two complex structures `L_q`, `q ∈ span(i, j, k)`, preserving `Π`.
pub fn plane_lift_fiber_points(plane: &CoordinatePlane) -> [FiberPoint; 2] {
    let (i, j) = (plane.0 - 1, plane.1 - 1);
    let others: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
    // L_q e_i and L_q e_j must have no component along the complement:
    // four linear conditions on (a, b, c).
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let imag: Vec<Mat4> = (1..4).map(|a| left_mul(unit(a))).collect();
    for &src in &[i, j] {
        for &dst in &others {
            rows.push(imag.iter().map(|l| rat(l[dst][src], 1)).collect());
        }
    }
    let kernel = linalg::nullspace(&rows, 3);
    assert_eq!(kernel.len(), 1, "a coordinate plane is preserved by exactly one line of structures");
    let dir = crate::exactnum::primitive_from_rational(&kernel[0]).expect("nonzero");
    let p = FiberPoint(FiberPoint::new(dir).expect("3-vector").canonical().0);
    [p.clone(), p.antipode()]
}

/// Everything the fiber model determines, in a serializable form.
#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub group: Vec<GroupRow>,
    pub kernel: Vec<SignFlip>,
    pub image_order: usize,
    pub orbits: Vec<Vec<FiberPoint>>,
    pub stabilizer_orders: Vec<(FiberPoint, usize)>,
    pub plane_lifts: Vec<PlaneLift>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupRow {
    pub element: SignFlip,
    pub rotation: FiberRotation,
    pub fixed: FixedPoints,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaneLift {
    pub plane: String,
    pub complement: String,
    pub points: [FiberPoint; 2],
}

pub fn fiber_report() -> FiberReport {
    let all = SignFlip::all();
    let group: Vec<GroupRow> = all
        .iter()
        .map(|g| GroupRow { element: *g, rotation: fiber_action(g), fixed: fixed_points(g) })
        .collect();
    let kernel: Vec<SignFlip> = all.iter().copied().filter(SignFlip::is_kernel).collect();
    let image: BTreeSet<[[i64; 3]; 3]> = all.iter().map(|g| fiber_action(g).0).collect();
    let mut probes = octahedron_points();
    probes.push(FiberPoint::from_i64([1, 1, 1]).expect("nonzero"));
    let stabilizer_orders = probes.into_iter().map(|p| {
        let n = stabilizer(&p).len();
        (p, n)
    });
    let plane_lifts = CoordinatePlane::all()
        .iter()
        .map(|p| PlaneLift { plane: p.to_string(), complement: p.complement().to_string(), points: plane_lift_fiber_points(p) })
        .collect();
    FiberReport {
        group,
        kernel,
        image_order: image.len(),
        orbits: octahedron_orbits(),
        stabilizer_orders: stabilizer_orders.collect(),
        plane_lifts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flip(s: &str) -> SignFlip {
        s.parse().unwrap()
    }

    fn pt(v: [i64; 3]) -> FiberPoint {
        FiberPoint::from_i64(v).unwrap()
    }

    fn diag(d: [i64; 3]) -> FiberRotation {
        FiberRotation(std::array::from_fn(|r| std::array::from_fn(|c| if r == c { d[r] } else { 0 })))
    }

    /// Independent route: `R L_q R⁻¹ = L_{q'}` with `q' = R L_q R⁻¹ (1) = g₁ · R q`.
    fn oracle(g: &SignFlip) -> FiberRotation {
        let s = g.signs().map(i64::from);
        diag([s[0] * s[1], s[0] * s[2], s[0] * s[3]])
    }

    #[test]
    fn left_multiplications_are_structures() {
        for a in 1..4 {
            let l = left_mul(unit(a));
            let sq: Mat4 = std::array::from_fn(|r| std::array::from_fn(|c| (0..4).map(|k| l[r][k] * l[k][c]).sum()));
            let minus_id: Mat4 = std::array::from_fn(|r| std::array::from_fn(|c| if r == c { -1 } else { 0 }));
            assert_eq!(sq, minus_id);
        }
        assert_eq!(quat_mul(unit(1), unit(2)), unit(3));
    }

    #[test]
    fn action_matches_oracle() {
        for g in SignFlip::all() {
            let a = fiber_action(&g);
            assert_eq!(a, oracle(&g), "{g}");
            assert!(a.is_orthogonal());
            assert_eq!(a.determinant(), 1);
        }
    }

    #[test]
    fn action_examples() {
        assert_eq!(fiber_action(&flip("++--")), diag([1, -1, -1]));
        assert!(fiber_action(&flip("----")).is_identity());
        assert_eq!(fiber_action(&flip("+-+-")), diag([-1, 1, -1]));
        assert_eq!(fiber_action(&flip("+--+")), diag([-1, -1, 1]));
    }

    #[test]
    fn odd_flips_are_rejected() {
        assert_eq!(SignFlip::new([1, 1, 1, -1]), Err(Error::OddSignFlip([1, 1, 1, -1])));
        assert!("+,+,+".parse::<SignFlip>().is_err());
        assert_eq!(flip("+,-,-,+"), flip("1,-1,-1,1"));
    }

    #[test]
    fn homomorphism_and_kernel() {
        let all = SignFlip::all();
        assert_eq!(all.len(), 8);
        for g in &all {
            for h in &all {
                assert_eq!(fiber_action(&g.compose(h)), fiber_action(g).compose(&fiber_action(h)));
            }
        }
        let kernel: Vec<SignFlip> = all.iter().copied().filter(SignFlip::is_kernel).collect();
        assert_eq!(kernel, vec![flip("----"), flip("++++")]);
        assert_eq!(fiber_report().image_order, 4);
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(fixed_points(&flip("++--")), FixedPoints::Pair([pt([1, 0, 0]), pt([-1, 0, 0])]));
        assert_eq!(fixed_points(&SignFlip::identity()), FixedPoints::All);
        assert_eq!(fixed_points(&flip("+--+")), FixedPoints::Pair([pt([0, 0, 1]), pt([0, 0, -1])]));
    }

    #[test]
    fn fixed_points_cover_the_octahedron() {
        let mut union: BTreeSet<FiberPoint> = BTreeSet::new();
        for g in SignFlip::all().iter().filter(|g| !g.is_kernel()) {
            if let FixedPoints::Pair(ps) = fixed_points(g) {
                union.extend(ps);
            }
        }
        assert_eq!(union.into_iter().collect::<Vec<_>>(), octahedron_points());
    }

    #[test]
    fn stabilizers() {
        assert_eq!(stabilizer(&pt([1, 0, 0])).len(), 4);
        assert_eq!(stabilizer(&pt([1, 1, 1])), vec![flip("----"), flip("++++")]);
        assert_eq!(stabilizer(&pt([0, 0, 1])).len(), 4);
        for g in stabilizer(&pt([1, 0, 0])) {
            let s = g.signs();
            assert_eq!(s[0] * s[1], 1);
        }
        for p in [pt([1, 0, 0]), pt([0, -1, 0]), pt([1, 1, 1]), pt([2, -1, 3]), pt([0, 1, 1])] {
            assert_eq!(orbit(&p).len() * stabilizer(&p).len(), 8, "{p}");
        }
    }

    #[test]
    fn octahedron_orbit_partition() {
        let orbits = octahedron_orbits();
        assert_eq!(orbits.len(), 3);
        assert_eq!(orbits[0], vec![pt([-1, 0, 0]), pt([1, 0, 0])]);
        let mut all: Vec<FiberPoint> = orbits.into_iter().flatten().collect();
        all.sort();
        assert_eq!(all, octahedron_points());
    }

    #[test]
    fn plane_lifts() {
        let lift = |i, j| plane_lift_fiber_points(&CoordinatePlane::new(i, j).unwrap());
        assert_eq!(lift(1, 2), [pt([1, 0, 0]), pt([-1, 0, 0])]);
        assert_eq!(lift(3, 4), [pt([1, 0, 0]), pt([-1, 0, 0])]);
        assert_eq!(lift(1, 3), [pt([0, 1, 0]), pt([0, -1, 0])]);
        let mut hits: BTreeSet<FiberPoint> = BTreeSet::new();
        for p in CoordinatePlane::all() {
            assert_eq!(plane_lift_fiber_points(&p), plane_lift_fiber_points(&p.complement()));
            hits.extend(plane_lift_fiber_points(&p));
        }
        assert_eq!(hits.len(), 6);
        assert!(CoordinatePlane::new(2, 2).is_err());
        assert!(CoordinatePlane::new(0, 5).is_err());
    }
}

//! Betti numbers of orbifold twistor spaces and of their crepant resolutions.
//!
//! Resolving a curve of `ℤ₂` singularities of genus `g` adds one class in
//! degrees 2 and 4 and `2g` classes in degree 3, so a singular locus with `n`
//! components of total genus `m` changes `(b₂, b₃, χ)` by `(n, 2m, 2(n − m))`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An irreducible component of the singular locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SingularComponent {
    pub genus: u64,
    /// `ℤ₂ ⊕ ℤ₂` points lying on the component; not used by the formulas.
    #[serde(default, alias = "z2z2_count")]
    pub z2z2: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularLocusDescription {
    pub components: Vec<SingularComponent>,
}

impl SingularLocusDescription {
    pub fn new(components: Vec<SingularComponent>) -> Self {
        SingularLocusDescription { components }
    }

    /// Number of components.
    pub fn n(&self) -> u64 {
        self.components.len() as u64
    }

    /// Sum of the genera.
    pub fn m(&self) -> Result<u64> {
        self.components
            .iter()
            .try_fold(0u64, |acc, c| acc.checked_add(c.genus))
            .ok_or_else(|| Error::Capacity("total genus overflows u64".into()))
    }

    pub fn z2z2_total(&self) -> u64 {
        self.components.iter().map(|c| c.z2z2).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionDeltas {
    pub db2: i64,
    pub db3: i64,
    pub dchi: i64,
}

fn to_i64(x: u64) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Capacity(format!("{x} does not fit in i64")))
}

fn overflow() -> Error {
    Error::Capacity("Betti arithmetic overflow".into())
}

pub fn resolution_deltas(desc: &SingularLocusDescription) -> Result<ResolutionDeltas> {
    let n = to_i64(desc.n())?;
    let m = to_i64(desc.m()?)?;
    let db3 = m.checked_mul(2).ok_or_else(overflow)?;
    let dchi = n.checked_sub(m).and_then(|d| d.checked_mul(2)).ok_or_else(overflow)?;
    Ok(ResolutionDeltas { db2: n, db3, dchi })
}

/// `(b₀, …, b₆)` of a 6-dimensional space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BettiVector {
    pub b: [u64; 7],
    /// The space is a closed oriented orbifold or manifold, so Poincaré
    /// duality `bᵢ = b₆₋ᵢ` is expected.
    pub closed_oriented: bool,
}

impl BettiVector {
    pub fn euler_characteristic(&self) -> i128 {
        self.b
            .iter()
            .enumerate()
            .map(|(i, &x)| if i % 2 == 0 { i128::from(x) } else { -i128::from(x) })
            .sum()
    }

    /// Duality holds, or is not expected.
    pub fn duality_ok(&self) -> bool {
        !self.closed_oriented || (0..7).all(|i| self.b[i] == self.b[6 - i])
    }

    /// Betti numbers after crepantly resolving the given singular locus.
    pub fn resolved(&self, desc: &SingularLocusDescription) -> Result<BettiVector> {
        let n = desc.n();
        let m2 = desc.m()?.checked_mul(2).ok_or_else(overflow)?;
        let mut b = self.b;
        b[2] = b[2].checked_add(n).ok_or_else(overflow)?;
        b[4] = b[4].checked_add(n).ok_or_else(overflow)?;
        b[3] = b[3].checked_add(m2).ok_or_else(overflow)?;
        Ok(BettiVector { b, closed_oriented: self.closed_oriented })
    }
}

/// Twistor space of the doubled right-angled polytope orbifold, which has the
/// rational cohomology of `ℂP³`.
pub fn doubled_polytope_base_betti() -> BettiVector {
    BettiVector { b: [1, 0, 1, 0, 1, 0, 1], closed_oriented: true }
}

/// Genus-zero singular locus of the doubled polytope with `v` vertices and
/// `f` two-faces: one sphere over each vertex and two over each 2-face.
///
/// Each vertex sphere carries the three `ℤ₂ ⊕ ℤ₂` points of its fiber; every
/// such point is attributed to that sphere only.
pub fn double_to_singular_locus(v: u64, f: u64) -> Result<SingularLocusDescription> {
    let faces = f.checked_mul(2).ok_or_else(overflow)?;
    let total = v.checked_add(faces).ok_or_else(overflow)?;
    if total > 1 << 32 {
        return Err(Error::Capacity(format!("{total} components")));
    }
    let mut components = Vec::with_capacity(total as usize);
    components.extend((0..v).map(|_| SingularComponent { genus: 0, z2z2: 3 }));
    components.extend((0..faces).map(|_| SingularComponent { genus: 0, z2z2: 0 }));
    Ok(SingularLocusDescription { components })
}

/// `(1, 0, 1 + V + 2F, 0, 1 + V + 2F, 0, 1)`.
pub fn resolved_betti_doubled(v: u64, f: u64) -> Result<BettiVector> {
    let b2 = f
        .checked_mul(2)
        .and_then(|x| x.checked_add(v))
        .and_then(|x| x.checked_add(1))
        .ok_or_else(overflow)?;
    Ok(BettiVector { b: [1, 0, b2, 0, b2, 0, 1], closed_oriented: true })
}

/// `c` curves of genus `g`.
pub fn theorem_b3_description(c: u64, g: u64) -> Result<SingularLocusDescription> {
    if c == 0 {
        return Err(Error::InvalidInput("at least one curve is required".into()));
    }
    if c > 1 << 32 {
        return Err(Error::Capacity(format!("{c} components")));
    }
    Ok(SingularLocusDescription { components: vec![SingularComponent { genus: g, z2z2: 0 }; c as usize] })
}

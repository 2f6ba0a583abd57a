//! Toric reading of rational polyhedra.
//!
//! The normal fan of a moment polytope is formed by the inward facet normals;
//! everything here works on that fan or on the polytope directly: lattice
//! smoothness of vertices and faces, resolution by additional halfspaces,
//! crepancy of the resulting subdivision, and the intersection numbers of the
//! torus-invariant curves.

mod cone;
mod crepant;
mod curves;
mod cut;
mod semilocal;
mod smooth;

pub use cone::{Cone, Fan};
pub use crepant::{crepancy_certificate, Crepancy};
pub use curves::{
    curve_normal_bundle, fan2d_self_intersections, sort_rays_counterclockwise, surface_face_analysis,
    EdgeCurve, WallRelation,
};
pub use cut::{
    apply_cut, blowup_cut, compatibility_reduction, validate_resolution_cut, CutOutcome, CutSpec,
    ResolutionCut,
};
pub use semilocal::{
    validate_semilocal_cover, ChartOverlap, CoverCondition, CoverVerdict, CoverViolation,
    CuttingChart, Hamiltonian,
};
pub use smooth::{face_orbifold_group, singular_faces, vertex_smoothness, SingularFace, Verdict, VertexVerdict};

//! Weierstrass models over k(t): invariants, the group law, division
//! polynomials, minimality and coarse fiber types.

mod curve;
pub mod divpoly;
pub mod local;

pub use curve::{
    invariants_of, Invariants, NormalizedTriple, Point, Weierstrass, WeierstrassModel,
};
pub use divpoly::{psi_polys, psi_symbolic, psi_values, SymPoly};
pub use local::{
    component_of_section, fiber_type, minimal_model, minimality_gap, ComponentKind, KodairaType,
    MinimalityGap,
};

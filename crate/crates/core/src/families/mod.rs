//! The explicit families: the nodal witness, the Kummer construction, the
//! nodal 𝔾ₘ coordinate, the random sampler and the geography calculator.

mod geography;
mod kummer;
mod nodal;
mod sampler;
mod witness;

pub use geography::{geography, geography_search, GeographyReport};
pub use kummer::{cubic_discriminant, kummer_family, KummerFamily, KummerInput};
pub use nodal::{
    nodal_gm_coordinate, random_nodal_input, root_of_unity_order, root_of_unity_order_quad,
    NodalFiberData,
};
pub use sampler::{sample_v_delta, BadFiberFinding, SampleReport, TrialRecord};
pub use witness::{in_v_delta, witness_family};

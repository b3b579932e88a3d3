//! Checks of the analytic, mapping and fractal properties of digit maps.

pub mod boxcount;
pub mod identities;
pub mod integral;
pub mod levelset;
pub mod limits;
pub mod mapping;
pub mod random;

pub use boxcount::{graph_boxcount, BoxCountReport, Cells};
pub use identities::{check_all, check_identity, Identity, IdentityCheck};
pub use integral::{integral, Method};
pub use levelset::{levelset_enumerate, levelset_frequency_sweep, LevelSetReport, PositionRule};
pub use limits::{continuity_bound, one_sided_limits, quotient_probe, JumpReport, QuotientProbe};
pub use mapping::{
    fixed_points, injectivity_families, monotonicity_check, range_membership, CollisionPair,
    Family, MonotonicityReport, RangeMembership,
};

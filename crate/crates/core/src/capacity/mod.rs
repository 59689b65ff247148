//! The logarithmic kernel `k_σ(z, ξ) = |log‖z−ξ‖|^σ / ‖z−ξ‖^{2n−2}` and the
//! constructions built on it: slice integrals, hyperplane measures and their
//! potentials, the log-map comparison, gauge covers and discrete energies.

pub mod energy;
pub mod geometry;
pub mod hausdorff;
pub mod hyperplane;
pub mod kernel;
pub mod logmap;
pub mod slice;

pub use energy::{capacity_lower, energy, BallEnergy, EnergyReport};
pub use hausdorff::{h_gauge, tube_cover_sum, TubeCover};
pub use hyperplane::{
    ineq_check, measure_family, nearest_point, potential, slice_mass, substitution, HyperplaneMeasureFamily,
    IneqReport, PotentialConfig, Substitution,
};
pub use kernel::{kernel, kernel_of_distance, KernelParams, KernelValue};
pub use logmap::{equivalence_bound_check, equivalence_ratio, exp_map, log_map, EquivalenceReport};
pub use slice::{lemma22_bounds, slice_integral, SliceBoundConstants, SliceIntegral};

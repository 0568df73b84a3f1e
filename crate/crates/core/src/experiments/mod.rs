//! Orchestrated studies: smoothing ratios, delta -> 0 convergence ladders,
//! pullback ensembles and their geometry.
//!
//! Every comparison drives all of its arms with one [`WienerPath`]; the
//! path checksum travels with each result so reports can show it.
//!
//! [`WienerPath`]: crate::noise::WienerPath

mod attractor;
mod convergence;
mod geometry;
mod smoothing;

pub use attractor::{
    default_cloud, pullback_ensemble, semicontinuity_curve, AttractorMode, EnsembleState,
    SemicontinuityCurve, SemicontinuityRow,
};
pub use convergence::{delta_convergence, ConvergenceRow, ConvergenceTable};
pub use geometry::{
    box_counting_dim, diameter, hausdorff_semidist, sample_ladder, BoxDimension, MIN_BOX_MEMBERS,
};
pub use smoothing::{smoothing_ratio, smoothing_ratios};

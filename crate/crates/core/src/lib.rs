//! Decentralized flocking built on convex cell decompositions.
//!
//! Each robot repeatedly carves a convex region of free, safe, flock-connected
//! space out of its sensing disc (weighted bisectors against neighbors and
//! obstacles, reshaped when bodies get close, intersected with proximity
//! discs), then steers toward an exponentially weighted centroid of that
//! region. A scalar greediness parameter and a moving attractor adapt the
//! weighting online so robots squeeze through clutter, rotate around
//! blockages, and still keep a tunable clearance margin that absorbs
//! measurement and tracking uncertainty.
//!
//! Modules mirror the pipeline:
//! - [`geometry`]: points, half-planes, convex polygon clipping.
//! - [`cells`]: per-robot safety and proximity cell construction.
//! - [`weighting`]: weighted centroids, greediness dynamics, clearance search.
//! - [`agent`]: the per-robot decision step and velocity tracking.
//! - [`simulator`]: headless multi-agent runs, trace checking, metrics.

pub mod agent;
pub mod cells;
pub mod geometry;
pub mod simulator;
pub mod weighting;

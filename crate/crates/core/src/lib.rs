//! Exact solvers, certifiers and searches for discrete necklace splitting.
//!
//! A necklace is a grid of coloured beads; a splitting cuts it with
//! axis-aligned hyperplanes between beads, and it is fair when the resulting
//! boxes can be shared between two families so that each family receives
//! exactly half of the beads of every colour.
//!
//! * [`model`] holds the data model, the fairness predicate and the metrics.
//! * [`solve1d`] and [`solvend`] find fair splittings with the fewest cuts.
//! * [`stringing`] splits a 2-D necklace through a boustrophedon 1-D string.
//! * [`gadgets`] certifies lower bounds on the number of lines for point sets.
//! * [`avoidance`] searches for colourings without small fair splittings.
//! * [`measures`] checks fairness equations over formally independent measures.

pub mod avoidance;
pub mod bounds;
pub mod error;
pub mod gadgets;
pub mod measures;
pub mod model;
pub mod partition;
pub mod search;
pub mod solve1d;
pub mod solvend;
pub mod stringing;

pub use error::{Error, Result};
pub use model::{
    box_color_vectors, boxes, color_vector, is_fair, ColorId, ColorVector, Cuboid, Fairness,
    FamilyAssignment, NecklaceGrid, Outcome, Point, PointSet, Splitting,
};

//! Distance-sensitive planar point location.
//!
//! Faces of a planar subdivision are decomposed into convex pieces with the
//! alpha-distance property (a point at distance `d` from its face boundary lies
//! in a piece of area at least `alpha * d^2`). The pieces feed a weight-biased
//! trapezoidal search structure, so query cost shrinks as the query point moves
//! away from the boundary. A depth-bounded quadtree covers the special case of
//! a subdivision of the unit square.

pub mod convex;
pub mod decomp;
pub mod error;
pub mod geom;
pub mod grid;
pub mod harness;
pub mod quad;
pub mod quadtree;
pub mod sevengon;
pub mod subdivision;
pub mod weighted;

pub use error::{Error, Result};
pub use geom::{orient, Location, Orientation, Point, Segment, SimplePolygon};

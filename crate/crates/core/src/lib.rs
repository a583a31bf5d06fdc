//! Triangulations of polygons with prescribed face areas.
//!
//! Given a polygon, a combinatorial triangulation type and an area for each
//! face, the crate builds the polynomial area equations, solves them with a
//! total-degree homotopy, classifies the solutions, certifies algebraicity by
//! exact elimination, and explains diverging paths as degenerations.

pub mod combo;
pub mod degen;
pub mod error;
pub mod exact;
pub mod geom;
pub mod homotopy;
pub mod poly;
pub mod problem;
pub mod report;
pub mod solve;
pub mod svg;

pub use combo::{
    canonical_form, enumerate_types, BoundarySymmetry, CombinatorialType, EnumerateOptions, Face,
};
pub use error::{Error, Result};
pub use geom::{AffinePoint, Polygon, ProjectivePoint, RationalPoint, C64};
pub use homotopy::{PathResult, PathStatus, SquareStrategy, TrackerSettings};
pub use poly::{build_system, AreaAssignment, Instance, PolynomialSystem};
pub use problem::ProblemFile;
pub use solve::{solve, Solution, SolutionSet, SolveConfig};

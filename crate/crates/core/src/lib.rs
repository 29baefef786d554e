//! Discrete Fréchet distance under translation for planar point sequences.
//!
//! The decision procedure walks the arrangement of radius-δ disks around the
//! difference points `π_i − σ_j`, turns the walk into a stream of free-space
//! bit flips and answers reachability for every prefix with an offline
//! dynamic grid reachability structure. The value is found by binary search
//! over an explicit set of critical radii.

pub mod arrangement;
pub mod error;
pub mod frechet;
pub mod geometry;
pub mod gridreach;
pub mod hardness;
pub mod io;
pub mod offline;
pub mod orthorange;
pub mod scalar;
pub mod solver;

pub use error::{Error, Result};
pub use frechet::{
    frechet_decide, frechet_value, free_space_matrix, monotone_path_exists, FreeSpaceMatrix,
};
pub use geometry::{difference_points, euclidean_distance, translate_curve, Curve, Point2};
pub use scalar::{Scalar, Tolerance};

pub type Point = Point2<f64>;
pub type Curve64 = Curve<f64>;
pub type Curve32 = Curve<f32>;

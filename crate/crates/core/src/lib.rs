//! Exact computational dynamics for piecewise-affine interval and circle
//! maps and for shift spaces: images, preimages, Bowen balls, locally
//! eventually onto certification, a generic specification-shadowing solver
//! with periodic extension, beta-expansions, and the worked counterexample
//! constructions (deleted-periodic-point Cantor sets, the graph shift with
//! no uniform gap, the Rome first-return encoding, and the 0-suppression
//! pullback of Thue-Morse).
//!
//! All set and orbit arithmetic is exact over arbitrary-precision rationals;
//! irrational bases enter only as directed rational approximations with a
//! stated precision. Every value is immutable and every operation is a pure
//! function, so anything here may be used freely across threads.

pub mod beta;
pub mod constructions;
pub mod dynamics;
pub mod interval;
pub mod json;
pub mod map;
pub mod rational;
pub mod region;
pub mod report;
pub mod shadowing;
pub mod symbolic;

pub use interval::{Interval, IntervalSet};
pub use map::{PiecewiseAffineMap, Topology};
pub use rational::Q;

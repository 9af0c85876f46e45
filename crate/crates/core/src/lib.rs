//! Fuchsian groups of zero-twist tight flute surfaces and of hyperbolic Loch
//! Ness monsters in the upper half-plane.
//!
//! - [`moebius`]: `PSL(2, ℝ)` algebra, trace classification, fixed points.
//! - [`geodesic`]: half-circles, vertical rays, exteriors and the explicit
//!   half-circle pairing map.
//! - [`flute`]: the groups `Γ_x` from a positive sequence, their length
//!   parameters and the type classification by `∑ x_n`.
//! - [`monster`]: the groups `G_y` from windows `(a, b, c, d, e)`.
//! - [`tess`] and [`render`]: orbit tiles, limit-set samples and SVG output.
//! - [`check`]: the invariant suite behind `fuchsia check`.
//!
//! Independent work items (generators, orbit frontiers, sample points) run on
//! rayon when the default `parallel` feature is on; see [`exec::Execution`].

// `!(x > y)` is used on purpose so that NaN fails the test.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod check;
pub mod cli;
pub mod exec;
pub mod flute;
pub mod geodesic;
pub mod moebius;
pub mod monster;
pub mod render;
pub mod tess;
pub mod tol;

pub use exec::Execution;
pub use flute::{build_flute, FluteGroup, SequenceSpec, Tail, TypeVerdict};
pub use geodesic::{Geodesic, HalfCircle, Region, Side};
pub use moebius::{Boundary, MapClass, Moebius, Point, UhPoint};
pub use monster::{build_monster, MonsterGroup, MonsterSpec, MonsterWindow, TailFlags};
pub use tess::{enumerate_orbit, GroupPresentation, OrbitTile};

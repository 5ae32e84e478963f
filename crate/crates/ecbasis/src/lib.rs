//! Normalized B-bases of extended Chebyshev (EC) spaces and the exact
//! transformation matrix from a B-basis to the ordinary basis.
//!
//! The crate is organised along the pipeline
//!
//! * [`space`]: EC-space families and analytic derivatives of their ordinary bases,
//! * [`bbasis`]: closed-form B-bases, the LU-based construction for mixed spaces,
//!   and critical-length estimation,
//! * [`endpoint`]: endpoint derivative tables of both bases,
//! * [`transform`]: the transformation matrix, flop counting and cost formulas,
//! * [`geometry`]: control polygons, control nets and rational curves,
//! * [`cli`]: the `ecb` command-line front end.
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! * `bernstein_transform`: monomial to Bernstein conversion, exact rational check
//! * `trig_transform`, `hyperbolic_transform`: closed-form m = 2 matrices
//! * `exp_trig_spiral`: the LU construction and the spiral control polygon
//! * `rational_curve`: weight signs and order elevation
//! * `surface`: helicoid control net
//! * `critical_length`: Wronskian zero scans
//! * `cost_table`: flop counts against LU-based conversion
//! * `endpoint_tables`: derivative tables from every source
//!
//! ```
//! use ecbasis::{space::SpaceSpec, transform::transform_for};
//!
//! let space = SpaceSpec::polynomial(3, 0.0, 1.0).unwrap();
//! let t = transform_for(&space).unwrap();
//! assert!((t.get(1, 1) - 1.0 / 3.0).abs() < 1e-15);
//! ```

pub mod bbasis;
pub mod cli;
pub mod combinatorics;
pub mod endpoint;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod space;
pub mod transform;

pub use error::{EcError, Result};

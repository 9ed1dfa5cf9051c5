//! Exact computation for interval exchange transformations.
//!
//! Everything in this crate is decided in exact arithmetic: points are
//! rational coefficient vectors over a declared real basis, and every
//! comparison, orbit step, induction and certification reduces to integer
//! arithmetic (with interval enclosures used only to decide signs of nonzero
//! values). Floating point appears solely in display helpers.

pub mod cocycle;
pub mod connections;
pub mod exact;
pub mod iet;
pub mod induction;
pub mod io;
pub mod presets;
pub mod report;
pub mod rigidity;
pub mod symmetry;
pub mod unwinding;

pub use exact::{Basis, ExactError, ExactScalar, Rat};
pub use iet::{CenterId, Iet, IetError, Interval};
pub use report::{CheckItem, CheckReport, CheckStatus};

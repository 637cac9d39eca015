//! Mixed multiplicities of ideal families in graded local models.

pub mod context;
pub mod error;
pub mod fc;
pub mod field;
pub mod free_algebra;
pub mod groebner;
pub mod ideal;
pub mod local;
pub mod mixed;
pub mod monomial;
pub mod monomial_ideal;
pub mod order;
pub mod poly;
pub mod rng;
pub mod sample;

pub use context::RingContext;
pub use error::{Error, Result};
pub use ideal::Ideal;
pub use order::MonomialOrder;
pub use poly::{PolyRing, Polynomial};

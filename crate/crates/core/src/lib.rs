//! Exact computations with geometric lattices, Orlik–Solomon algebras,
//! the Gerstenhaber operad and Kazhdan–Lusztig–Stanley complexes.

pub mod bar;
pub mod error;
pub mod gerst;
pub mod kls;
pub mod linalg;
pub mod os;
pub mod poly;
pub mod poset;

pub use error::{Error, Result};
pub use poly::Poly;

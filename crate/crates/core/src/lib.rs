//! Combinatorics and commutative algebra of c-bounded t-spread Veronese ideals and
//! t-spread ideals of bounded block type.
//!
//! Closed-form invariants live next to brute-force oracles in [`oracle`], and every
//! formula can be checked against them.

pub mod blocktype;
pub mod cli;

pub mod error;
pub mod families;
pub mod ideal;
pub mod monomial;
pub mod multiset;
pub mod oracle;
pub mod quotients;
pub mod sorting;
pub mod spread;

pub use error::{Error, Result};
pub use families::{BlockType, CBounded, IdealSpec};
pub use ideal::MonomialIdeal;
pub use monomial::Monomial;
pub use multiset::{Block, Multiset};

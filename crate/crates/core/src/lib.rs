//! Steiner triple systems and their Steiner loops: normal subloops and
//! quotients, Veblen points, isomorphism, Schreier extensions by elementary
//! abelian 2-groups and Steiner operators.

pub mod catalog;
pub mod census;
pub mod error;
pub mod format;
pub mod gf2;
pub mod iso;
pub mod loops;
pub mod operator;
pub mod schreier;
pub mod system;
pub mod veblen;

pub use error::{Error, Result};
pub use loops::{SteinerLoop, Subloop};
pub use operator::SteinerOperator;
pub use schreier::FactorSystem;
pub use system::TripleSystem;

//! Reference oracles and the acceptance criteria.

pub mod acceptance;
pub mod oracles;

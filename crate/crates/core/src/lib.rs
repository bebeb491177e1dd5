pub mod error;
pub mod goursat;
pub mod groups;
pub mod linalg;
pub mod burnside;
pub mod verify;
pub mod rep;
pub mod essential;
pub mod sigma;
pub mod functor;
pub mod analysis;
pub mod report;
pub mod cache;

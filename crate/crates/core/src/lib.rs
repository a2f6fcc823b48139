//! Integer solutions of three-monomial Diophantine equations.

pub mod dispatch;
pub mod eqparse;
pub mod fixtures;
pub mod intcore;
pub mod lindioph;
pub mod oracle;
pub mod repro;
pub mod solset;
pub mod backend;
pub mod basesolve;
pub mod multivar;
pub mod twovar;

//! Equations in three or more variables.

pub mod classify;
pub mod montecarlo;
pub mod prop;
pub mod reduce;
pub mod structural;
pub mod twomono;

pub use prop::{check_prop4, direct_formula, prop4_feasible, Prop4Certificate, Roles};
pub use reduce::{display_reduction, reduce_to_independent, reduce_with_roles, ReducedEquation, Reduction};
pub use structural::{solve_separated_linear, solve_structural, solve_x1k_x2};
pub use twomono::{solve_le2, solve_two_monomial, trivial_solutions};
pub use classify::{classify_cyclic, classify_family, degree3_report, parse_family, Classification, CyclicCase, Family};
pub use montecarlo::{monte_carlo_matrix, monte_carlo_prop4, MonteCarlo};

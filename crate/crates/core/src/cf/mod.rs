//! Generalized continued fractions: coefficient rules, exact convergents,
//! evaluation to a digit target, and equivalence transformations.

pub mod convergents;
pub mod eval;
pub mod extrapolate;
pub mod poly;
pub mod rule;
pub mod spec;
pub mod transform;

pub use convergents::{
    bracket_check, convergents, determinant_identity, raw_recurrence, BracketCheck, Convergent, ConvergentStream,
    DeterminantCheck, Reduction,
};
pub use eval::{eval_cf, evaluate, Evaluation, Method, Strategy};
pub use poly::Poly;
pub use rule::CoeffRule;
pub use spec::CfSpec;
pub use transform::equivalence_transform;

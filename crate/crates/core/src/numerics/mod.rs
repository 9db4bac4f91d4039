//! Exact rationals, error-tracked decimal reals, symbolic constants and the
//! reference oracles everything else is checked against.

pub mod accel;
pub mod const_expr;
pub mod constants;
pub mod gamma;
pub mod hpreal;
pub mod rational;

pub use const_expr::{const_expr_eval, Atom, ConstExpr, Linear};
pub use constants::{
    catalan_reference, guard_digits, pi_reference, sqrt3_reference, ConstantSource, Perturbed,
    Reference,
};
pub use gamma::gamma_hp;
pub use hpreal::HpReal;
pub use rational::{double_factorial, factorial, format_rational, int, parse_rational, rat, Rational};

//! Exact rationals, directed-rounding reals and symbolic constants.

pub mod expr;
pub mod rational;
pub mod real;

pub use expr::{eval_const, ConstExpr};
pub use rational::{format_rational, parse_rational, rat, ExactRational};
pub(crate) use real::check_precision;
pub use real::{
    compare_bound, decimal_digits, BoundOrdering, BoundedReal, Direction, Enclosure,
    DEFAULT_PRECISION, MIN_PRECISION,
};

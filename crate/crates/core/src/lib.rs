//! Exact arithmetic for planar power series.
//!
//! Monomials are `{x, y}`-labelled planar reduced rooted trees; series are
//! finitely supported maps from monomials to rationals, truncated by
//! x-degree. On top of the grafting products the crate provides
//! substitution homomorphisms, the universal derivation `d` with `dx = y`,
//! the derivative `d/dx`, the k-ary planar exponential and logarithm, and
//! verifiers for the identities relating them.

pub mod calculus;
pub mod cli;
pub mod error;
pub mod expr;
pub mod report;
pub mod series;
pub mod special_series;
pub mod substitution;
pub mod trees;

pub use calculus::{
    derivation_apply, derivative, differential, differential_substituted, verify_chain_rule,
    verify_special_chain_rule,
};
pub use error::{Error, Result};
pub use expr::{
    format, format_canonical, format_json, format_pretty, parse, pretty_monomial, Style,
};
pub use report::{Report, Status};
pub use series::{distance, product, Distance, Order, Rational, Series};
pub use special_series::{
    exp_k, h4_discrepancy_report, h_closed_form, log_k, reversion, verify_exp_derivative,
    verify_exp_functional_equation, verify_h_recurrence, verify_log_ode, verify_omega_equation,
    BracketInteger,
};
pub use substitution::{composite, eval_y_one, substitute, substitute_x};
pub use trees::{
    decompositions, delete_leaf_and_reduce, enumerate_monomials, graft, orbit_sum, relabel_leaf,
    Label, Monomial, OrbitKey,
};

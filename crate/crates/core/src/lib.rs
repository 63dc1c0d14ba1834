//! Post-quantum `(p,q)`-calculus and approximation operators.
//!
//! The crate builds up in layers:
//!
//! * [`arith`]: `(p,q)`-numbers, factorials, binomial coefficients and the
//!   power basis, with sign/log-domain paths for extreme magnitudes;
//! * [`calculus`]: the two-point `(p,q)`-derivative and the geometric-node
//!   series integral with a controlled truncation policy;
//! * [`special`]: the `(p,q)`-Gamma function and both Beta variants
//!   (standard and commutative), closed form and integral form;
//! * [`operators`]: `(p,q)`-Bernstein polynomials, the Bernstein-Durrmeyer
//!   integral operators built on the Beta function, and their King-type
//!   modification, all evaluated in underflow-safe normalized form;
//! * [`moments`]: closed-form operator moments, central moments and the
//!   second-moment bounds;
//! * [`moduli`]: empirical moduli of continuity (plain, second-order, and
//!   step-weighted) by grid maximization.
//!
//! All values are plain `f64` at the boundary; products with huge dynamic
//! range run through [`SignedLogValue`] or ratio-normalized forms internally.
//! Every operation is a pure function of its arguments; values are immutable
//! and freely shareable across threads.

pub mod arith;
pub mod calculus;
pub mod error;
pub mod function;
pub mod moduli;
pub mod moments;
pub mod operators;
pub mod params;
pub mod signed_log;
pub mod special;

pub use arith::{
    ln_pq_binomial, ln_pq_factorial, pq_binomial, pq_factorial, pq_number, pq_number_ratio,
    pq_power_basis,
};
pub use calculus::{pq_derivative, pq_integral, IntegrationPolicy};
pub use error::{PqError, Result};
pub use function::{Builtin, FunctionForm, FunctionParseError, FunctionSpec};
pub use moduli::{
    empirical_modulus, empirical_second_modulus, empirical_second_modulus_literal,
    weighted_first_modulus, weighted_second_modulus,
};
pub use moments::{
    central_moments, combined_bound, combined_second_moment, delta_sq, durrmeyer_moments,
    king_delta, king_moments, phi_sq, second_moment_bound, BoundProfile, MomentTable,
};
pub use operators::{
    bernstein_apply, bernstein_basis, bernstein_node, durrmeyer_apply, durrmeyer_kernel,
    king_apply, king_interval_end, king_positivity_end, king_rescale, DurrmeyerOperator,
    IntegralBackend, KingOperator, OperatorKind,
};
pub use params::PqParams;
pub use signed_log::SignedLogValue;
pub use special::{
    ln_pq_beta_closed, ln_pq_beta_commutative, ln_pq_gamma, pq_beta, pq_beta_closed,
    pq_beta_commutative, pq_beta_integral, pq_gamma, BetaVariant,
};

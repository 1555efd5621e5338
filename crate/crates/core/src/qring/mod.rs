//! Exact arithmetic in `Q(u)`: integer polynomials, reduced rational functions, values carrying
//! opaque residual classes, and truncated zeta series.
//!
//! Invariants:
//! - every `RatFunc` is stored in reduced canonical form, so `==` is value equality
//! - geometric sums are built term by term, never as quotients

mod poly;
mod ratfunc;
mod series;
mod value;

pub use poly::{gsum, Coeff, IntPoly};
pub use ratfunc::RatFunc;
pub use series::{atom_conditions, series_compare, AtomCondition, Channel, SeriesComparison, Tail, ZetaSeries};
pub use value::{Atom, AtomTemplate, AtomVariant, SeriesValue};

/// `sum_{t=0}^{count-1} u^{base + t*step}` for any integer `base` and `step`.
pub fn laurent_gsum(base: i64, step: i64, count: u32) -> RatFunc {
    (0..count as i64).fold(RatFunc::zero(), |acc, t| &acc + &RatFunc::u_pow(base + t * step))
}

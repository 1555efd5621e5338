//! Equivariant zeta functions of simple real singularity germs under the involution
//! `x1 -> -x1`, and the classification verdicts they support.
//!
//! Layers, bottom up:
//! - [`qring`]: exact arithmetic in `Q(u)` with opaque residual classes
//! - [`grim`]: equivariant virtual Poincare series of the basic varieties
//! - [`germs`]: parsing and canonical normal forms
//! - [`arccoef`]: closed-form arc-space coefficients and truncated zeta series
//! - [`oracle`]: independent stratification recursions for cross-checking
//! - [`classify`]: pairwise verdicts and the rule table they are checked against

pub mod arccoef;
pub mod classify;
pub mod error;
pub mod germs;
pub mod grim;
pub mod oracle;
pub mod qring;
mod sign;

pub use error::{Error, Result};
pub use germs::{Family, GermNormalForm};
pub use qring::{Atom, Channel, RatFunc, SeriesValue, ZetaSeries};
pub use sign::Sign;

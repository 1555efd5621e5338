//! Arc-space coefficients of a germ: the classes of `A_m^0`, `A_m^xi`, their lifts and net
//! differences, and the truncated zeta series built from them.
//!
//! Invariants:
//! - a coefficient is only produced for `1 <= m <= validity_bound`; anything else is `OutOfRange`
//! - `[A_1^0] = [L_1]` and `[A_1^xi] = 0` for every germ of multiplicity two
//! - the lift of degree `m` is `u^n [A_{m-1}^0]`, with `[A_0^0]` the class of a point
//! - a zeta coefficient is the arc class times `u^{-mn}`

mod formulas;
pub mod tails;

pub use formulas::{
    ab_sign, ab_sign_generic, ab_top, ab_zero, ab_zero_generic, cd_sign, cd_sign_generic, cd_top_even, cd_top_odd,
    cd_zero, cd_zero_generic, ef_four, ef_three, ef_two,
};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::germs::{Family, GermNormalForm};
use crate::grim::{
    beta_curve_zero, beta_cusp_level, beta_diagonal_zero, beta_level_set, beta_point, beta_y, beta_y_fiber,
    beta_y_punctured, Action, PointKind, QuadSig,
};
use crate::qring::{Channel, RatFunc, SeriesValue, ZetaSeries};
use crate::sign::Sign;

/// Which arc class to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffChannel {
    /// `[A_m^0]`: arcs with `ord f(gamma) > m`.
    Zero,
    /// `[A_m^xi]`: arcs with `f(gamma) = xi t^m + ...`.
    Sign(Sign),
    /// `u^n [A_{m-1}^0]`: arcs with `ord f(gamma) >= m`.
    Lift,
    /// `u^n [A_{m-1}^0] - [A_m^0]`: arcs with `ord f(gamma) = m`.
    Net,
}

impl fmt::Display for CoeffChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffChannel::Zero => f.write_str("zero"),
            CoeffChannel::Sign(Sign::Plus) => f.write_str("plus"),
            CoeffChannel::Sign(Sign::Minus) => f.write_str("minus"),
            CoeffChannel::Lift => f.write_str("lift"),
            CoeffChannel::Net => f.write_str("net"),
        }
    }
}

impl From<Channel> for CoeffChannel {
    fn from(c: Channel) -> Self {
        match c {
            Channel::Naive => CoeffChannel::Net,
            Channel::Plus => CoeffChannel::Sign(Sign::Plus),
            Channel::Minus => CoeffChannel::Sign(Sign::Minus),
        }
    }
}

/// Where the involution acts, for the sets met along the arc computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    /// Signature of the quadratic part `Q` that the formulas are written in.
    pub sig: QuadSig,
    /// Action on `Q`.
    pub quad: Action,
    /// Action on the top-degree set `{eps x^e + Q = c}`.
    pub top: Action,
    /// Whether the involution flips `x` on the plane curve `{x^2 z + eps z^{2l+1} = c}`.
    pub curve_flip: bool,
    /// Degree at which the top-degree set appears, if any.
    pub top_degree: Option<u32>,
}

pub fn shape(g: &GermNormalForm) -> Shape {
    let sig = g.sig();
    let acted = g.eta().map(Action::flip_square);
    let (quad, top) = match g.family {
        Family::B | Family::F4 => (Action::Trivial, Action::FlipPower),
        Family::C => (Action::Trivial, Action::Trivial),
        _ => (acted.unwrap(), acted.unwrap()),
    };
    let top_degree = match g.family {
        Family::A if g.k >= 3 && g.k % 2 == 1 => Some(g.k + 1),
        Family::B => Some(2 * g.k),
        Family::C => Some(g.k),
        Family::D => Some(g.k - 1),
        Family::E6 | Family::F4 => Some(4),
        _ => None,
    };
    Shape {
        sig,
        quad,
        top,
        curve_flip: g.family == Family::C,
        top_degree,
    }
}

/// Largest degree the formulas cover; `None` when every degree is covered.
pub fn validity_bound(g: &GermNormalForm) -> Option<u32> {
    match g.family {
        Family::A => match g.k {
            0 => None,
            1 => Some(2),
            k if k % 2 == 0 => Some(k),
            k => Some(k + 1),
        },
        Family::B => Some(2 * g.k),
        Family::C => Some(g.k),
        Family::D => Some(g.k - 1),
        Family::E6 | Family::F4 => Some(4),
        Family::E7 | Family::E8 => Some(1),
    }
}

/// Default number of coefficients for a germ whose formulas cover every degree.
pub const UNBOUNDED_DEFAULT_ORDER: u32 = 4;

/// The order a truncated series is computed to when none is requested.
pub fn default_order(g: &GermNormalForm) -> u32 {
    validity_bound(g).unwrap_or(UNBOUNDED_DEFAULT_ORDER)
}

fn check_range(g: &GermNormalForm, m: u32) -> Result<()> {
    let bound = validity_bound(g);
    if m == 0 || bound.is_some_and(|b| m > b) {
        return Err(Error::OutOfRange {
            germ: g.to_string(),
            m,
            bound: bound.unwrap_or(u32::MAX),
        });
    }
    Ok(())
}

fn jet_space(n: u32, m: u32) -> RatFunc {
    RatFunc::u_pow_over_u_minus_one((m * n) as i64 + 1)
}

/// Class of the full quadratic form of A_1, merged with its `x2^2`.
fn a1_quadric(g: &GermNormalForm) -> (QuadSig, Action) {
    (g.quadratic_signature(), Action::flip_square(g.eta().unwrap()))
}

/// `[A_m^0]`.
pub fn coeff0(g: &GermNormalForm, m: u32) -> Result<SeriesValue> {
    check_range(g, m)?;
    let n = g.n;
    if g.family == Family::A && g.k == 0 {
        return Ok(RatFunc::u_pow_over_u_minus_one((m * n - m + 1) as i64).into());
    }
    if m == 1 {
        return Ok(jet_space(n, 1).into());
    }
    if g.family == Family::A && g.k == 1 {
        let (s, a) = a1_quadric(g);
        return Ok((&beta_y(s, a)? * &RatFunc::u_pow(n as i64)).into());
    }
    let sh = shape(g);
    let pp = sh.sig.rank() as i64;
    let y = beta_y(sh.sig, sh.quad)?;
    let yp = beta_y_punctured(sh.sig, sh.quad)?;
    let at_top = sh.top_degree == Some(m);
    Ok(match g.family {
        Family::A | Family::B if at_top => {
            let zero = beta_diagonal_zero(m, sh.sig, g.eps, sh.top)?;
            ab_top(pp, m / 2, &yp, &zero.into())
        }
        Family::A | Family::B => ab_zero(sh.sig, m, &y, &yp).into(),
        Family::C | Family::D if at_top && m % 2 == 1 => {
            let curve = beta_curve_zero(m / 2, g.eps, sh.curve_flip)?;
            cd_top_odd(pp, m / 2, &yp, &curve.into())
        }
        Family::C | Family::D if at_top => {
            let zero = beta_diagonal_zero(m, sh.sig, g.eps, sh.top)?;
            cd_top_even(pp, m / 2, &yp, &zero.into())
        }
        Family::C | Family::D => cd_zero(sh.sig, m, &y, &yp).into(),
        _ => match m {
            2 => ef_two(pp, &y).into(),
            3 => ef_three(pp, &yp).into(),
            _ => ef_four(pp, &yp, &beta_diagonal_zero(4, sh.sig, g.eps, sh.top)?.into()),
        },
    })
}

/// `[A_m^xi]`.
pub fn coeffxi(g: &GermNormalForm, m: u32, xi: Sign) -> Result<SeriesValue> {
    check_range(g, m)?;
    let n = g.n;
    if g.family == Family::A && g.k == 0 {
        return Ok(RatFunc::u_pow_over_u_minus_one((m * n - m + 1) as i64).into());
    }
    if m == 1 {
        return Ok(SeriesValue::zero());
    }
    if g.family == Family::A && g.k == 1 {
        let (s, a) = a1_quadric(g);
        return Ok((&beta_y_fiber(s, xi, a)? * &RatFunc::u_pow(n as i64)).into());
    }
    let sh = shape(g);
    let pp = sh.sig.rank() as i64;
    let yp = beta_y_punctured(sh.sig, sh.quad)?;
    let yf = beta_y_fiber(sh.sig, xi, sh.quad)?;
    let at_top = sh.top_degree == Some(m);
    Ok(match g.family {
        Family::A | Family::B if at_top => {
            let level = beta_level_set(m, g.eps, sh.sig, xi, sh.top)?;
            ab_top(pp, m / 2, &yp, &level)
        }
        Family::A | Family::B => ab_sign(sh.sig, m, &yp, &yf).into(),
        Family::C | Family::D if at_top && m % 2 == 1 => {
            let curve = beta_cusp_level(m / 2, g.eps, sh.curve_flip);
            cd_top_odd(pp, m / 2, &yp, &curve)
        }
        Family::C | Family::D if at_top => {
            let level = beta_level_set(m, g.eps, sh.sig, xi, sh.top)?;
            cd_top_even(pp, m / 2, &yp, &level)
        }
        Family::C | Family::D => cd_sign(sh.sig, m, &yp, &yf).into(),
        _ => match m {
            2 => ef_two(pp, &yf).into(),
            3 => ef_three(pp, &yp).into(),
            _ => ef_four(pp, &yp, &beta_level_set(4, g.eps, sh.sig, xi, sh.top)?),
        },
    })
}

/// `u^n [A_{m-1}^0]`.
pub fn lift_coeff(g: &GermNormalForm, m: u32) -> Result<SeriesValue> {
    check_range(g, m)?;
    let below = if m == 1 {
        beta_point(PointKind::Single).into()
    } else {
        coeff0(g, m - 1)?
    };
    Ok(below.scale(&RatFunc::u_pow(g.n as i64)))
}

/// The arc class selected by `ch`.
pub fn coefficient(g: &GermNormalForm, m: u32, ch: CoeffChannel) -> Result<SeriesValue> {
    match ch {
        CoeffChannel::Zero => coeff0(g, m),
        CoeffChannel::Sign(xi) => coeffxi(g, m, xi),
        CoeffChannel::Lift => lift_coeff(g, m),
        CoeffChannel::Net => Ok(lift_coeff(g, m)? - coeff0(g, m)?),
    }
}

/// Coefficient of `T^m` in one channel of the zeta function.
pub fn zeta_coefficient(g: &GermNormalForm, ch: Channel, m: u32) -> Result<SeriesValue> {
    Ok(coefficient(g, m, ch.into())?.laurent_shift(-((m * g.n) as i64)))
}

/// Coefficients `1..=order` of one channel, with the tail the pair rules give at the critical
/// degree.
pub fn zeta_truncated(g: &GermNormalForm, ch: Channel, order: u32) -> Result<ZetaSeries> {
    check_range(g, order)?;
    let coeffs = (1..=order)
        .map(|m| Ok((m, zeta_coefficient(g, ch, m)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(ZetaSeries {
        n: g.n,
        channel: ch,
        coeffs,
        valid_to: order,
        tail: tails::tail_for(g, ch, order)?,
    })
}

/// Class of the zero set met at the top degree: `{f = 0}` restricted to the power variable and
/// `Q`, or the plane curve of the C/D families.
pub fn beta_germ_zero(g: &GermNormalForm) -> Result<RatFunc> {
    let sh = shape(g);
    let e = top_degree_or_err(g, &sh)?;
    if matches!(g.family, Family::C | Family::D) && e % 2 == 1 {
        return beta_curve_zero(e / 2, g.eps, sh.curve_flip);
    }
    beta_diagonal_zero(e, sh.sig, g.eps, sh.top)
}

/// Class of the level set `{f = xi}` met at the top degree.
pub fn beta_germ_fiber(g: &GermNormalForm, xi: Sign) -> Result<SeriesValue> {
    let sh = shape(g);
    let e = top_degree_or_err(g, &sh)?;
    if matches!(g.family, Family::C | Family::D) && e % 2 == 1 {
        return Ok(beta_cusp_level(e / 2, g.eps, sh.curve_flip));
    }
    beta_level_set(e, g.eps, sh.sig, xi, sh.top)
}

fn top_degree_or_err(g: &GermNormalForm, sh: &Shape) -> Result<u32> {
    sh.top_degree
        .ok_or_else(|| Error::InvalidParameter(format!("{g} has no top-degree set")))
}

//! Closed forms for the arc classes of the A/B, C/D and E/F pairs.
//!
//! Every function takes the rank `P = p + q` of the quadratic part and the classes of its zero
//! set `Y`, punctured zero set `Y \ 0` and level set `Y^xi`, already evaluated for the right
//! action. Geometric sums are expanded term by term.

use crate::grim::QuadSig;
use crate::qring::{laurent_gsum, RatFunc, SeriesValue};

fn u(e: i64) -> RatFunc {
    RatFunc::u_pow(e)
}

fn affine_tail(e: i64) -> RatFunc {
    RatFunc::u_pow_over_u_minus_one(e)
}

/// `1 + u^d + ... + u^{(count-1)d}`.
fn g(d: i64, count: i64) -> RatFunc {
    laurent_gsum(0, d, count.max(0) as u32)
}

fn split(m: u32) -> (bool, i64) {
    (m % 2 == 1, (m / 2) as i64)
}

/// `[A_m^0]` below the top degree for `eps x^e + Q`, with the three cases `pq = 0`, `(1, 1)` and
/// general kept apart.
pub fn ab_zero(sig: QuadSig, m: u32, y: &RatFunc, yp: &RatFunc) -> RatFunc {
    let (odd, r) = split(m);
    let (mm, pp) = (m as i64, sig.rank() as i64);
    if sig.p * sig.q == 0 {
        return if odd {
            affine_tail(mm + (r + 1) * pp + 1)
        } else {
            affine_tail(mm + r * pp + 1)
        };
    }
    if (sig.p, sig.q) == (1, 1) {
        return if odd {
            &(&yp.scale(r as i128) * &u(2 * mm)) + &affine_tail(4 * (r + 1))
        } else {
            &(&yp.scale(r as i128 - 1) * &u(2 * mm)) + &(y * &u(4 * r))
        };
    }
    ab_zero_generic(pp, m, y, yp)
}

/// The general-position formula for `[A_m^0]`, applied for every rank.
pub fn ab_zero_generic(pp: i64, m: u32, y: &RatFunc, yp: &RatFunc) -> RatFunc {
    let (odd, r) = split(m);
    let mm = m as i64;
    if odd {
        &(&(yp * &g(pp - 2, r)) * &u(mm + (r + 1) * pp - 1)) + &affine_tail((r + 1) * (2 + pp))
    } else {
        &(&(yp * &g(pp - 2, r - 1)) * &u(mm + (r + 1) * pp - 2)) + &(y * &u(r * (2 + pp)))
    }
}

/// `[A_m^xi]` below the top degree, same three cases.
pub fn ab_sign(sig: QuadSig, m: u32, yp: &RatFunc, yfib: &RatFunc) -> RatFunc {
    let (odd, r) = split(m);
    let (mm, pp) = (m as i64, sig.rank() as i64);
    if sig.p * sig.q == 0 {
        return if odd { RatFunc::zero() } else { yfib * &u(mm + r * pp) };
    }
    if (sig.p, sig.q) == (1, 1) {
        return if odd {
            &yp.scale(r as i128) * &u(2 * mm)
        } else {
            &(&yp.scale(r as i128 - 1) * &u(2 * mm)) + &(yfib * &u(4 * r))
        };
    }
    ab_sign_generic(pp, m, yp, yfib)
}

pub fn ab_sign_generic(pp: i64, m: u32, yp: &RatFunc, yfib: &RatFunc) -> RatFunc {
    let (odd, r) = split(m);
    let mm = m as i64;
    if odd {
        &(yp * &g(pp - 2, r)) * &u(mm + (r + 1) * pp - 1)
    } else {
        &(&(yp * &g(pp - 2, r - 1)) * &u(mm + (r + 1) * pp - 2)) + &(yfib * &u(r * (2 + pp)))
    }
}

/// Top degree `m = 2k` of `eps x^{2k} + Q`; `top_set` is the zero set or level set of the germ.
pub fn ab_top(pp: i64, k: u32, yp: &RatFunc, top_set: &SeriesValue) -> SeriesValue {
    let k = k as i64;
    let first = &(yp * &g(pp - 2, k - 1)) * &u(2 * k - 2 + (k + 1) * pp);
    &SeriesValue::from(first) + &top_set.scale(&u(k * pp + 2 * k - 1))
}

/// `[A_m^0]` below the top degree for `x^2 z + eps z^k + Q`, with `P = 1` kept apart.
pub fn cd_zero(sig: QuadSig, m: u32, y: &RatFunc, yp: &RatFunc) -> RatFunc {
    let (odd, r) = split(m);
    let mm = m as i64;
    if sig.rank() == 1 {
        return if odd {
            &u(2 * mm + 1).scale(r as i128) + &affine_tail(4 * r + 4)
        } else {
            &u(2 * mm + 1).scale(r as i128 - 1) + &affine_tail(4 * r + 2)
        };
    }
    cd_zero_generic(sig.rank() as i64, m, y, yp)
}

pub fn cd_zero_generic(pp: i64, m: u32, y: &RatFunc, yp: &RatFunc) -> RatFunc {
    let (odd, r) = split(m);
    let yp1 = yp + &RatFunc::one();
    if odd {
        &(&(&yp1 * &g(pp - 1, r)) * &u(3 * r + 2 + (r + 1) * pp)) + &affine_tail(3 * r + 3 + (r + 1) * pp)
    } else {
        &(&(&yp1 * &g(pp - 1, r - 1)) * &u(3 * r + (r + 1) * pp)) + &(y * &u(3 * r + 1 + r * pp))
    }
}

/// `[A_m^xi]` below the top degree for `x^2 z + eps z^k + Q`.
pub fn cd_sign(sig: QuadSig, m: u32, yp: &RatFunc, yfib: &RatFunc) -> RatFunc {
    let (odd, r) = split(m);
    let mm = m as i64;
    if sig.rank() == 1 {
        return if odd {
            u(2 * mm + 1).scale(r as i128)
        } else {
            &u(2 * mm + 1).scale(r as i128 - 1) + &(yfib * &u(4 * r + 1))
        };
    }
    cd_sign_generic(sig.rank() as i64, m, yp, yfib)
}

pub fn cd_sign_generic(pp: i64, m: u32, yp: &RatFunc, yfib: &RatFunc) -> RatFunc {
    let (odd, r) = split(m);
    let yp1 = yp + &RatFunc::one();
    if odd {
        &(&yp1 * &g(pp - 1, r)) * &u(3 * r + 2 + (r + 1) * pp)
    } else {
        &(&(&yp1 * &g(pp - 1, r - 1)) * &u(3 * r + (r + 1) * pp)) + &(yfib * &u(3 * r + 1 + r * pp))
    }
}

/// Top degree `m = 2l + 1`; `curve` is the class of the plane curve (zero set or level set).
pub fn cd_top_odd(pp: i64, l: u32, yp: &RatFunc, curve: &SeriesValue) -> SeriesValue {
    let l = l as i64;
    let first = &(yp * &g(pp - 1, l)) * &u(3 * l + 2 + (l + 1) * pp);
    let middle = &g(pp - 1, l - 1) * &u(3 * l + 1 + (l + 2) * pp);
    &SeriesValue::from(&first + &middle) + &curve.scale(&u(3 * l + 1 + (l + 1) * pp))
}

/// Top degree `m = 2l`; `top_set` is `{eps z^{2l} + Q = 0}` or its level set.
pub fn cd_top_even(pp: i64, l: u32, yp: &RatFunc, top_set: &SeriesValue) -> SeriesValue {
    let l = l as i64;
    let yp1 = yp + &RatFunc::one();
    let first = &(&yp1 * &g(pp - 1, l - 1)) * &u(3 * l + (l + 1) * pp);
    &SeriesValue::from(first) + &top_set.scale(&u(3 * l + l * pp))
}

/// Degree two for `x^3 + ... + Q`: `u^{4+P}` times the class of `Y` or `Y^xi`.
pub fn ef_two(pp: i64, quadric: &RatFunc) -> RatFunc {
    quadric * &u(4 + pp)
}

/// Degree three, identical in every channel.
pub fn ef_three(pp: i64, yp: &RatFunc) -> RatFunc {
    &(yp * &u(2 * pp + 5)) + &affine_tail(2 * pp + 6)
}

/// Degree four; `top_set` is `{eps z^4 + Q = 0}` or its level set.
pub fn ef_four(pp: i64, yp: &RatFunc, top_set: &SeriesValue) -> SeriesValue {
    &SeriesValue::from(yp * &u(3 * pp + 6)) + &top_set.scale(&u(2 * pp + 6))
}

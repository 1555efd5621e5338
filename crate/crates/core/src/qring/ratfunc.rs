//! Reduced rational functions in `u` over the integers.
//!
//! Invariants:
//! - `gcd(num, den)` is a unit in `Q[u]`
//! - the integer contents of `num` and `den` are coprime
//! - `den` has a positive leading coefficient
//! - zero is `0/1`
//!
//! Together these make the representation unique, so structural equality is value equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::{igcd, Coeff, IntPoly};
use crate::error::{Error, Result};

/// An element of `Q(u)` stored as a reduced integer fraction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_int(1)
    }

    pub fn from_int(c: Coeff) -> Self {
        RatFunc::from_poly(IntPoly::constant(c))
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFunc {
            num: p,
            den: IntPoly::one(),
        }
    }

    /// `u^e` for any integer `e`.
    pub fn u_pow(e: i64) -> Self {
        RatFunc::one().laurent_shift(e)
    }

    /// `u^e / (u - 1)`, the shape of every affine-space class.
    pub fn u_pow_over_u_minus_one(e: i64) -> Self {
        RatFunc::new(IntPoly::one(), IntPoly::u_minus_one()).laurent_shift(e)
    }

    /// Builds and reduces `num / den`. Panics when `den` is zero.
    pub fn new(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (num, den) = cancel_common(num, den);
        let c = igcd(num.content(), den.content());
        let (mut num, mut den) = (num.div_content(c), den.div_content(c));
        if den.leading() < 0 {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Multiply by `u^k`, `k` of either sign.
    pub fn laurent_shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return RatFunc::zero();
        }
        if k >= 0 {
            RatFunc::new(self.num.shift(k as usize), self.den.clone())
        } else {
            RatFunc::new(self.num.clone(), self.den.shift((-k) as usize))
        }
    }

    pub fn scale(&self, c: Coeff) -> Self {
        RatFunc::new(self.num.scale(c), self.den.clone())
    }

    /// Divide by a nonzero polynomial.
    pub fn div_poly(&self, d: &IntPoly) -> Self {
        RatFunc::new(self.num.clone(), &self.den * d)
    }

    /// Multiply by a polynomial.
    pub fn mul_poly(&self, p: &IntPoly) -> Self {
        RatFunc::new(&self.num * p, self.den.clone())
    }

    /// Coefficients of `u^-1, ..., u^-depth` in the expansion at `u = infinity`.
    ///
    /// Fails with `NotExpandable` when some coefficient is not an integer.
    pub fn tail_expand(&self, depth: usize) -> Result<Vec<Coeff>> {
        if self.is_zero() {
            return Ok(vec![0; depth]);
        }
        let n = self.num.degree().unwrap() as i64;
        let d = self.den.degree().unwrap() as i64;
        let lc = self.den.leading();
        let top = n - d + depth as i64;
        let mut c: Vec<Coeff> = Vec::new();
        if top >= 0 {
            for j in 0..=top {
                // c_j multiplies u^{n-d-j}
                let mut acc = if n - j >= 0 {
                    self.num.coeff((n - j) as usize)
                } else {
                    0
                };
                for i in 1..=j.min(d) {
                    acc -= c[(j - i) as usize] * self.den.coeff((d - i) as usize);
                }
                if acc % lc != 0 {
                    return Err(Error::NotExpandable);
                }
                c.push(acc / lc);
            }
        }
        Ok((1..=depth as i64)
            .map(|i| {
                let j = n - d + i;
                if j >= 0 {
                    c[j as usize]
                } else {
                    0
                }
            })
            .collect())
    }
}

trait DivContent {
    fn div_content(&self, c: Coeff) -> IntPoly;
}

impl DivContent for IntPoly {
    fn div_content(&self, c: Coeff) -> IntPoly {
        if c <= 1 {
            return self.clone();
        }
        IntPoly::from_coeffs(self.coeffs().iter().map(|&a| a / c).collect())
    }
}

/// Removes the polynomial gcd of `num` and `den`.
///
/// Denominators built by this library are products of `u`, `u - 1` and constants, so the common
/// factor is found by stripping those two roots; anything else goes through the general gcd.
fn cancel_common(num: IntPoly, den: IntPoly) -> (IntPoly, IntPoly) {
    let a = den.u_valuation();
    let den1 = den.unshift(a);
    let (b, rest) = den1.split_u_minus_one();
    if rest.degree() == Some(0) {
        let nu = num.u_valuation().min(a);
        let mut n = num.unshift(nu);
        let mut nb = 0;
        while nb < b {
            match n.div_u_minus_one() {
                Some(q) => {
                    n = q;
                    nb += 1;
                }
                None => break,
            }
        }
        let d = (&IntPoly::u_minus_one_pow(b - nb) * &rest).shift(a - nu);
        return (n, d);
    }
    let g = num.gcd(&den);
    if g.degree() == Some(0) {
        return (num, den);
    }
    (
        num.div_exact(&g).expect("gcd divides numerator"),
        den.div_exact(&g).expect("gcd divides denominator"),
    )
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

fn is_single_term(p: &IntPoly) -> bool {
    p.coeffs().iter().filter(|&&c| c != 0).count() == 1
}

impl fmt::Display for RatFunc {
    /// `(2u^2-u)/(u-1)`, `u^2/(u-1)`, `(u+1)/u`, `1`; a denominator that is a power of `u - 1`
    /// prints as `(u-1)^e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == IntPoly::one() {
            return write!(f, "{}", self.num);
        }
        if is_single_term(&self.num) {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        let (e, rest) = self.den.split_u_minus_one();
        if e >= 1 && rest == IntPoly::one() {
            if e == 1 {
                write!(f, "/(u-1)")
            } else {
                write!(f, "/(u-1)^{e}")
            }
        } else if is_single_term(&self.den) {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[Coeff]) -> IntPoly {
        IntPoly::from_coeffs(v.to_vec())
    }

    fn r(n: &[Coeff], d: &[Coeff]) -> RatFunc {
        RatFunc::new(p(n), p(d))
    }

    #[test]
    fn reduces_to_lowest_terms() {
        // (u^2 - 1)/(u - 1) = u + 1
        assert_eq!(r(&[-1, 0, 1], &[-1, 1]), r(&[1, 1], &[1]));
        // 2u/(2u - 2) = u/(u - 1)
        assert_eq!(r(&[0, 2], &[-2, 2]), r(&[0, 1], &[-1, 1]));
        // sign moves to the numerator
        assert_eq!(r(&[1], &[1, -1]), r(&[-1], &[-1, 1]));
    }

    #[test]
    fn renders_standard_shapes() {
        assert_eq!(r(&[0, -1, 2], &[-1, 1]).to_string(), "(2u^2-u)/(u-1)");
        assert_eq!(r(&[0, 0, 1], &[-1, 1]).to_string(), "u^2/(u-1)");
        assert_eq!(r(&[1, 1], &[0, 1]).to_string(), "(u+1)/u");
        assert_eq!(RatFunc::one().to_string(), "1");
        assert_eq!(RatFunc::zero().to_string(), "0");
        let sq = RatFunc::new(p(&[0, 1]), IntPoly::u_minus_one_pow(2));
        assert_eq!(sq.to_string(), "u/(u-1)^2");
        assert_eq!(r(&[1], &[0, -1, 1]).to_string(), "1/(u^2-u)");
    }

    #[test]
    fn general_gcd_path() {
        // (u^2 + 3u + 2)/(u^2 + 4u + 3) = (u + 2)/(u + 3)
        assert_eq!(r(&[2, 3, 1], &[3, 4, 1]), r(&[2, 1], &[3, 1]));
    }

    #[test]
    fn laurent_shift_negative() {
        let a = r(&[1, 1], &[1]).laurent_shift(-3);
        assert_eq!(a.to_string(), "(u+1)/u^3");
        assert_eq!(a.laurent_shift(3), r(&[1, 1], &[1]));
    }

    #[test]
    fn tail_of_affine_class() {
        // u/(u-1) = 1 + u^-1 + u^-2 + ...
        let a = RatFunc::u_pow_over_u_minus_one(1);
        assert_eq!(a.tail_expand(3).unwrap(), vec![1, 1, 1]);
        // u^3/(u-1) has tail 1, 1, ...
        assert_eq!(RatFunc::u_pow_over_u_minus_one(3).tail_expand(2).unwrap(), vec![1, 1]);
        assert_eq!(RatFunc::from_int(5).tail_expand(2).unwrap(), vec![0, 0]);
        assert_eq!(r(&[1], &[0, 0, 1]).tail_expand(3).unwrap(), vec![0, 1, 0]);
        assert_eq!(r(&[1], &[1, 2]).tail_expand(2), Err(Error::NotExpandable));
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-4i128..=4, 0..4).prop_map(IntPoly::from_coeffs)
    }

    fn small_den() -> impl Strategy<Value = IntPoly> {
        prop_oneof![
            (0usize..3, 0usize..3).prop_map(|(a, b)| IntPoly::u_minus_one_pow(b).shift(a)),
            small_poly().prop_filter("nonzero", |d| !d.is_zero()),
        ]
    }

    fn small_rat() -> impl Strategy<Value = RatFunc> {
        (small_poly(), small_den()).prop_map(|(n, d)| RatFunc::new(n, d))
    }

    proptest! {
        #[test]
        fn field_laws(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, RatFunc::zero());
            prop_assert_eq!(&a * &RatFunc::one(), a.clone());
        }

        #[test]
        fn canonical_form_is_unique(n in small_poly(), d in small_den(), k in prop_oneof![Just(1i128), Just(-1), Just(3), Just(-2)]) {
            let a = RatFunc::new(n.clone(), d.clone());
            let b = RatFunc::new(n.scale(k), d.scale(k));
            let c = RatFunc::new(&n * &IntPoly::from_coeffs(vec![2, 1]), &d * &IntPoly::from_coeffs(vec![2, 1]));
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(&a, &c);
            prop_assert!(a.denominator().leading() > 0);
            prop_assert_eq!(a.numerator().gcd(a.denominator()).degree().unwrap_or(0), 0);
        }

        #[test]
        fn shift_composes(a in small_rat(), i in -5i64..5, j in -5i64..5) {
            prop_assert_eq!(a.laurent_shift(i).laurent_shift(j), a.laurent_shift(i + j));
        }
    }
}

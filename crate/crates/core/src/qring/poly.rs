//! Dense univariate integer polynomials in `u`.
//!
//! Invariants:
//! - no trailing zero coefficients; the zero polynomial is the empty vector
//! - coefficient `i` multiplies `u^i`
//! - arithmetic is checked; overflow panics instead of wrapping

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficient type. Wide enough that none of the library's computations come close to overflowing.
pub type Coeff = i128;

fn cadd(a: Coeff, b: Coeff) -> Coeff {
    a.checked_add(b).expect("polynomial coefficient overflow")
}

fn cmul(a: Coeff, b: Coeff) -> Coeff {
    a.checked_mul(b).expect("polynomial coefficient overflow")
}

pub(crate) fn igcd(mut a: Coeff, mut b: Coeff) -> Coeff {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Polynomial with integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<Coeff>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(1)
    }

    pub fn constant(c: Coeff) -> Self {
        IntPoly::from_coeffs(vec![c])
    }

    /// `c * u^e`.
    pub fn monomial(c: Coeff, e: usize) -> Self {
        if c == 0 {
            return IntPoly::zero();
        }
        let mut v = vec![0; e + 1];
        v[e] = c;
        IntPoly { coeffs: v }
    }

    /// `u - 1`.
    pub fn u_minus_one() -> Self {
        IntPoly { coeffs: vec![-1, 1] }
    }

    pub fn from_coeffs(mut coeffs: Vec<Coeff>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Coeff {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Coeff {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Largest `e` with `u^e` dividing `self`; zero polynomial gives 0.
    pub fn u_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|&&c| c == 0).count()
    }

    pub fn eval_at_one(&self) -> Coeff {
        self.coeffs.iter().fold(0, |acc, &c| cadd(acc, c))
    }

    /// Multiply by `u^e`.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![0; e];
        v.extend_from_slice(&self.coeffs);
        IntPoly { coeffs: v }
    }

    /// Divide by `u^e`; caller guarantees `e <= u_valuation()`.
    pub fn unshift(&self, e: usize) -> Self {
        debug_assert!(self.is_zero() || e <= self.u_valuation());
        IntPoly::from_coeffs(self.coeffs.iter().skip(e).copied().collect())
    }

    pub fn scale(&self, c: Coeff) -> Self {
        IntPoly::from_coeffs(self.coeffs.iter().map(|&a| cmul(a, c)).collect())
    }

    /// Gcd of the coefficients, nonnegative; 0 for the zero polynomial.
    pub fn content(&self) -> Coeff {
        self.coeffs.iter().fold(0, |g, &c| igcd(g, c))
    }

    fn div_scalar(&self, c: Coeff) -> Self {
        IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .map(|&a| {
                    debug_assert_eq!(a % c, 0);
                    a / c
                })
                .collect(),
        )
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let c = self.content();
        let p = self.div_scalar(c);
        if p.leading() < 0 {
            -p
        } else {
            p
        }
    }

    /// Quotient by `u - 1` when `self(1) == 0`.
    pub fn div_u_minus_one(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.eval_at_one() != 0 {
            return None;
        }
        // synthetic division from the top
        let n = self.coeffs.len();
        let mut q = vec![0; n - 1];
        let mut carry = 0;
        for i in (1..n).rev() {
            carry = cadd(carry, self.coeffs[i]);
            q[i - 1] = carry;
        }
        Some(IntPoly::from_coeffs(q))
    }

    /// Multiplicity of the root `u = 1`, with the cofactor.
    pub fn split_u_minus_one(&self) -> (usize, IntPoly) {
        let mut e = 0;
        let mut p = self.clone();
        if p.is_zero() {
            return (0, p);
        }
        while let Some(q) = p.div_u_minus_one() {
            p = q;
            e += 1;
        }
        (e, p)
    }

    /// `(u - 1)^e`.
    pub fn u_minus_one_pow(e: usize) -> Self {
        let mut p = IntPoly::one();
        let f = IntPoly::u_minus_one();
        for _ in 0..e {
            p = &p * &f;
        }
        p
    }

    /// Exact quotient `self / d`, `None` when `d` does not divide `self` in `Z[u]`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<Self> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let sd = self.degree().unwrap();
        if sd < dd {
            return None;
        }
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        let mut q = vec![0; sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let top = rem[i + dd];
            if top % lc != 0 {
                return None;
            }
            let c = top / lc;
            q[i] = c;
            if c != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] = cadd(rem[i + j], -cmul(c, dc));
                }
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return None;
        }
        Some(IntPoly::from_coeffs(q))
    }

    /// Primitive part of a pseudo-remainder of `self` by `d`, defined up to a nonzero scalar.
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo-remainder by zero");
        let lc = d.leading();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = r.leading();
            let g = igcd(lc, c);
            r = (&r.scale(lc / g) - &d.scale(c / g).shift(rd - dd)).primitive();
        }
        r
    }

    /// Primitive gcd with positive leading coefficient (primitive remainder sequence).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// `u^0 + u^1 + ... + u^{count-1}` with each power multiplied by `u^{step}`:
    /// `sum_{t=0}^{count-1} u^{t*step}`.
    pub fn geometric(step: usize, count: usize) -> IntPoly {
        let mut v = vec![0; if count == 0 { 0 } else { (count - 1) * step + 1 }];
        for t in 0..count {
            v[t * step] = cadd(v[t * step], 1);
        }
        IntPoly::from_coeffs(v)
    }
}

/// `sum_{t=0}^{count-1} u^{t*d}`, the explicit geometric sum. Never a quotient.
pub fn gsum(d: usize, count: usize) -> IntPoly {
    IntPoly::geometric(d, count)
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| cadd(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = cadd(v[i + j], cmul(a, b));
            }
        }
        IntPoly::from_coeffs(v)
    }
}

impl fmt::Display for IntPoly {
    /// Decreasing powers, e.g. `2u^2-u+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.abs();
            if c < 0 {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            match (mag, i) {
                (_, 0) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "u")?,
                (1, _) => write!(f, "u^{i}")?,
                (_, 1) => write!(f, "{mag}u")?,
                _ => write!(f, "{mag}u^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[Coeff]) -> IntPoly {
        IntPoly::from_coeffs(v.to_vec())
    }

    #[test]
    fn canonical_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs(), &[1, 2]);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0, 0]).degree(), None);
    }

    #[test]
    fn renders_decreasing_powers() {
        assert_eq!(p(&[0, -1, 2]).to_string(), "2u^2-u");
        assert_eq!(p(&[1, -1, 1]).to_string(), "u^2-u+1");
        assert_eq!(p(&[-3]).to_string(), "-3");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn synthetic_division_by_u_minus_one() {
        let q = p(&[-1, 0, 1]).div_u_minus_one().unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(p(&[1, 1]).div_u_minus_one().is_none());
        let (e, rest) = IntPoly::u_minus_one_pow(3).scale(5).split_u_minus_one();
        assert_eq!((e, rest), (3, IntPoly::constant(5)));
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = &p(&[1, 1]) * &p(&[-2, 0, 1]);
        let b = &p(&[1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(p(&[2, 4]).gcd(&IntPoly::zero()), p(&[1, 2]));
    }

    #[test]
    fn exact_division() {
        let a = &p(&[1, 2, 3]) * &p(&[-1, 2]);
        assert_eq!(a.div_exact(&p(&[-1, 2])).unwrap(), p(&[1, 2, 3]));
        assert!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])).is_none());
    }

    #[test]
    fn geometric_sum_is_explicit() {
        assert_eq!(gsum(2, 3), p(&[1, 0, 1, 0, 1]));
        assert_eq!(gsum(0, 4), IntPoly::constant(4));
        assert!(gsum(3, 0).is_zero());
    }
}

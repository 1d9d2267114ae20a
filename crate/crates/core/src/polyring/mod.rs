//! Exact Laurent polynomials over the rationals.
//!
//! [`LaurentPoly`] is the carrier for every polynomial in the crate: reduced
//! Alexander polynomials, matrix entries, Chebyshev transforms (as ordinary
//! polynomials in `w`), cyclotomic polynomials.

mod circle;
mod factor;
mod parse;
mod sturm;

pub use circle::eval_on_circle;
pub(crate) use circle::horner_circle;
pub use factor::{cyclotomic, euler_phi, squarefree_decompose, PolyFactorization};
pub use parse::parse_poly;
pub use sturm::{isolate_real_roots, refine_root, sturm_count, IsolatingInterval, SturmChain};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};

pub type Q = BigRational;

pub(crate) fn q_int(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// `sum_j coeffs[j] * z^(min_exp + j)`.
///
/// Stored canonically: no zero coefficient at either end, and the zero
/// polynomial is the empty sequence with `min_exp == 0`. Structural equality
/// is therefore mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<Q>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { min_exp: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(0, vec![c])
    }

    /// The variable `z`.
    pub fn z() -> Self {
        Self::monomial(Q::one(), 1)
    }

    pub fn monomial(c: Q, exp: i64) -> Self {
        Self::new(exp, vec![c])
    }

    pub fn new(min_exp: i64, coeffs: Vec<Q>) -> Self {
        let mut p = LaurentPoly { min_exp, coeffs };
        p.trim();
        p
    }

    pub fn from_ints(min_exp: i64, coeffs: &[i64]) -> Self {
        Self::new(min_exp, coeffs.iter().map(|&c| q_int(c)).collect())
    }

    pub fn from_bigints(min_exp: i64, coeffs: Vec<BigInt>) -> Self {
        Self::new(min_exp, coeffs.into_iter().map(Q::from_integer).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.min_exp += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for nonzero constants times a power of `z`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Highest exponent; `min_exp - 1` for zero.
    pub fn max_exp(&self) -> i64 {
        self.min_exp + self.coeffs.len() as i64 - 1
    }

    /// Width of the exponent range, which is the degree after shifting to
    /// `min_exp == 0`. Zero for constants and for the zero polynomial.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> Q {
        let idx = exp - self.min_exp;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Q::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Coefficient of the highest power.
    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficient of the lowest power.
    pub fn trailing(&self) -> Q {
        self.coeffs.first().cloned().unwrap_or_else(Q::zero)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { min_exp: self.min_exp, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(other.min_exp);
        let hi = self.max_exp().max(other.max_exp());
        let coeffs = (lo..=hi).map(|e| self.coeff(e) + other.coeff(e)).collect();
        Self::new(lo, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(self.min_exp + other.min_exp, out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { min_exp: self.min_exp, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { min_exp: self.min_exp + k, coeffs: self.coeffs.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `p(z^{-1})`.
    pub fn reverse(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly { min_exp: -self.max_exp(), coeffs }
    }

    /// Formal derivative `d/dz`.
    pub fn derivative(&self) -> Self {
        let coeffs: Vec<Q> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * q_int(self.min_exp + j as i64))
            .collect();
        Self::new(self.min_exp - 1, coeffs)
    }

    /// Exact value at a rational point (nonzero if negative powers occur).
    pub fn eval(&self, x: &Q) -> Result<Q> {
        if self.is_zero() {
            return Ok(Q::zero());
        }
        if x.is_zero() && self.min_exp < 0 {
            return domain("evaluating a Laurent polynomial with negative powers at 0");
        }
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        if self.min_exp >= 0 {
            Ok(acc * pow_q(x, self.min_exp as u64))
        } else {
            Ok(acc / pow_q(x, (-self.min_exp) as u64))
        }
    }

    pub fn eval_i64(&self, x: i64) -> Result<Q> {
        self.eval(&q_int(x))
    }

    /// Coefficients as integers if they all are.
    pub fn int_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    pub fn f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Largest absolute coefficient.
    pub fn height(&self) -> Q {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(Q::zero)
    }

    /// Shift so the lowest power is `z^0`.
    pub fn to_ordinary(&self) -> Self {
        self.shift(-self.min_exp)
    }

    /// Content: a positive rational `c` with `p / c` integral and primitive.
    pub fn content(&self) -> Q {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in &self.coeffs {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            Q::one()
        } else {
            Q::new(num, den)
        }
    }

    /// The unique associate `a * z^m * p` with integer coefficients of gcd 1,
    /// lowest power `z^0`, and positive leading coefficient.
    pub fn normalize_primitive(&self) -> Result<Self> {
        if self.is_zero() {
            return domain("cannot normalize the zero polynomial");
        }
        Ok(self.normalize_unchecked())
    }

    pub(crate) fn normalize_unchecked(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        LaurentPoly { min_exp: 0, coeffs: self.coeffs.iter().map(|x| x / &c).collect() }
    }

    pub fn is_normalized(&self) -> bool {
        !self.is_zero() && self.normalize_unchecked() == *self
    }

    /// Equal to its reversal up to a unit `+-c z^m`.
    pub fn is_palindromic(&self) -> Result<bool> {
        let a = self.normalize_primitive()?;
        let b = self.reverse().normalize_primitive()?;
        Ok(a == b)
    }

    /// Division with remainder of ordinary polynomials (both shifted to
    /// `min_exp == 0` first); the quotient is returned with the shift difference
    /// reapplied so that `self = q * d + r` holds as Laurent polynomials.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return domain("division by the zero polynomial");
        }
        if self.is_zero() {
            return Ok((Self::zero(), Self::zero()));
        }
        let a = self.to_ordinary();
        let b = d.to_ordinary();
        let (q, r) = ordinary_div_rem(&a.coeffs, &b.coeffs);
        let shift = self.min_exp - d.min_exp;
        let q = Self::new(0, q).shift(shift);
        let r = Self::new(0, r).shift(self.min_exp);
        Ok((q, r))
    }

    /// Division with remainder of ordinary polynomials (no negative powers),
    /// where `z` is not a unit: `self = q * d + r` with `deg r < deg d`.
    pub fn poly_div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return domain("division by the zero polynomial");
        }
        if self.min_exp < 0 || d.min_exp < 0 {
            return domain("ordinary division needs polynomials without negative powers");
        }
        let (q, r) = ordinary_div_rem(&self.dense(), &d.dense());
        Ok((Self::new(0, q), Self::new(0, r)))
    }

    /// Coefficients of `z^0, z^1, ..., z^max_exp` for an ordinary polynomial.
    pub fn dense(&self) -> Vec<Q> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut v = vec![Q::zero(); self.min_exp.max(0) as usize];
        v.extend(self.coeffs.iter().cloned());
        v
    }

    /// Degree as an ordinary polynomial (`max_exp`); `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.max_exp())
    }

    /// True if `self` divides `other` in the Laurent ring over the rationals.
    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        match other.div_rem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// `self / d`, failing unless the division is exact.
    pub fn exact_divide(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Domain(format!("{d} does not divide {self}; remainder {r}")))
        }
    }

    /// Greatest common divisor in normalized primitive form. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize_unchecked();
        }
        if other.is_zero() {
            return self.normalize_unchecked();
        }
        let mut a = self.normalize_unchecked().coeffs;
        let mut b = other.normalize_unchecked().coeffs;
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let (_, r) = ordinary_div_rem(&a, &b);
            a = b;
            b = Self::new(0, r).normalize_unchecked().coeffs;
        }
        Self::new(0, a).normalize_unchecked()
    }
}

fn pow_q(x: &Q, e: u64) -> Q {
    num_traits::pow::pow(x.clone(), e as usize)
}

/// Long division of dense coefficient vectors (lowest power first).
fn ordinary_div_rem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r: Vec<Q> = a.to_vec();
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b[db].recip();
    let mut q = vec![Q::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] * &lead_inv;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    (q, r)
}

impl fmt::Display for LaurentPoly {
    /// Compact form accepted by the parser, highest power first, e.g. `2z^2-3z+2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.min_exp + j as i64;
            let neg = c.is_negative();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let a = c.abs();
            if e == 0 {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}")?;
            }
            match e {
                1 => write!(f, "z")?,
                _ => write!(f, "z^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_poly(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(p("z^2-z+1").normalize_primitive().unwrap(), p("z^2-z+1"));
        assert_eq!(p("1/2z^-1 - 3/4").normalize_primitive().unwrap(), p("3z-2"));
        assert_eq!(p("-6z^3+9z^2").normalize_primitive().unwrap(), p("2z-3"));
        assert!(LaurentPoly::zero().normalize_primitive().is_err());
    }

    #[test]
    fn palindromy() {
        assert!(p("2z^2-3z+2").is_palindromic().unwrap());
        assert!(!p("z-2").is_palindromic().unwrap());
        assert!(p("1").is_palindromic().unwrap());
    }

    #[test]
    fn gcd_and_division() {
        let a = p("(z^2-z+1)^2");
        let b = p("(z^2-z+1)(z^2-3z+1)");
        assert_eq!(a.gcd(&b), p("z^2-z+1"));
        assert!(p("z^2-z+1").divides(&p("(z^2-z+1)^3")));
        let delta = p("(z^2-z+1)^2(z^2-3z+1)");
        assert_eq!(delta.exact_divide(&p("z^2-z+1")).unwrap(), b);
        assert!(p("z^2-3z+1").exact_divide(&p("z-2")).is_err());
    }

    #[test]
    fn laurent_division_tracks_shift() {
        let a = p("z^-1 + 1 - z");
        let d = p("z^-3");
        let q = a.exact_divide(&d).unwrap();
        assert_eq!(q.mul(&d), a);
    }

    #[test]
    fn display_round_trips() {
        for s in ["2z^2-3z+2", "z^-1+1-z", "1/2z^3-7/3", "-z", "0"] {
            let x = p(s);
            assert_eq!(p(&x.to_string()), x, "{s}");
        }
    }

    #[test]
    fn eval_and_reverse() {
        let x = p("z^2-z+1");
        assert_eq!(x.eval_i64(-1).unwrap(), q_int(3));
        assert_eq!(p("z-2").reverse().normalize_primitive().unwrap(), p("2z-1"));
    }
}

//! Fixed-point ball arithmetic with outward rounding.
//!
//! A [`Ball`] at precision `p` is a pair of integers `(mid, rad)` standing for
//! the closed interval `[(mid - rad) / 2^p, (mid + rad) / 2^p]`. Every
//! operation rounds so that the true result of applying the operation to any
//! members of the input balls lies in the output ball. Binary operations
//! require both operands to share the same precision.
//!
//! Only what the rest of the crate needs is here: ring operations, square
//! roots, reciprocals, `pi`, and cosine/sine of rational fractions of a full
//! turn (every angle this crate evaluates is of the form `2 pi k / n`).

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    mid: BigInt,
    rad: BigInt,
    prec: u32,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

/// `ceil(x / 2^s)` for non-negative `x`.
fn shr_ceil(x: &BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x.clone();
    }
    let q: BigInt = x >> s as usize;
    if (&q << s as usize) == *x {
        q
    } else {
        q + 1
    }
}

impl Ball {
    pub fn zero(prec: u32) -> Self {
        Ball { mid: BigInt::zero(), rad: BigInt::zero(), prec }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        Self::from_bigint(&BigInt::from(v), prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Ball { mid: v << prec as usize, rad: BigInt::zero(), prec }
    }

    /// Encloses an exact rational; the radius is zero when it is dyadic enough.
    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let scaled = q.numer() << prec as usize;
        let (mid, rem) = scaled.div_mod_floor(q.denom());
        let rad = if rem.is_zero() { BigInt::zero() } else { BigInt::one() };
        Ball { mid, rad, prec }
    }

    /// Exact enclosure of a finite double (rounded outward if it has more
    /// fractional bits than `prec`).
    pub fn from_f64(x: f64, prec: u32) -> Self {
        let q = BigRational::from_float(x).expect("finite float");
        Self::from_rational(&q, prec)
    }

    /// Ball spanning the integer ulp interval `[lo, hi]`.
    pub fn from_ulps(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        debug_assert!(lo <= hi);
        let sum = &lo + &hi;
        let mid = sum.div_floor(&BigInt::from(2));
        let rad = &hi - &mid;
        Ball { mid, rad, prec }
    }

    /// Enclosure of the rational interval `[lo, hi]`.
    pub fn from_rational_bounds(lo: &BigRational, hi: &BigRational, prec: u32) -> Self {
        let l = (lo * BigRational::from_integer(pow2(prec))).floor().to_integer();
        let h = (hi * BigRational::from_integer(pow2(prec))).ceil().to_integer();
        Self::from_ulps(l, h, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mid_ulps(&self) -> &BigInt {
        &self.mid
    }

    pub fn rad_ulps(&self) -> &BigInt {
        &self.rad
    }

    pub fn lo_ulps(&self) -> BigInt {
        &self.mid - &self.rad
    }

    pub fn hi_ulps(&self) -> BigInt {
        &self.mid + &self.rad
    }

    pub fn lo(&self) -> BigRational {
        BigRational::new(self.lo_ulps(), pow2(self.prec))
    }

    pub fn hi(&self) -> BigRational {
        BigRational::new(self.hi_ulps(), pow2(self.prec))
    }

    pub fn mid(&self) -> BigRational {
        BigRational::new(self.mid.clone(), pow2(self.prec))
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo_ulps().sign() != Sign::Plus && self.hi_ulps().sign() != Sign::Minus
    }

    pub fn is_positive(&self) -> bool {
        self.lo_ulps().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi_ulps().is_negative()
    }

    /// Sign if it is certain, `None` when the ball straddles zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.is_exact() && self.mid.is_zero() {
            Some(Ordering::Equal)
        } else if self.is_positive() {
            Some(Ordering::Greater)
        } else if self.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        let lo = self.lo();
        let hi = self.hi();
        &lo <= q && q <= &hi
    }

    /// True when every point of `self` is strictly below every point of `other`.
    pub fn certainly_lt(&self, other: &Ball) -> bool {
        self.assert_prec(other);
        self.hi_ulps() < other.lo_ulps()
    }

    /// Width `hi - lo` as a rational.
    pub fn width(&self) -> BigRational {
        BigRational::new(&self.rad * 2, pow2(self.prec))
    }

    /// Largest double not above the lower end.
    pub fn lo_f64(&self) -> f64 {
        rational_to_f64_down(&self.lo())
    }

    /// Smallest double not below the upper end.
    pub fn hi_f64(&self) -> f64 {
        rational_to_f64_up(&self.hi())
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }

    /// Upper bound on `|x|` over the ball, in ulps.
    pub fn mag_ulps(&self) -> BigInt {
        self.mid.abs() + &self.rad
    }

    fn assert_prec(&self, other: &Ball) {
        assert_eq!(self.prec, other.prec, "ball precision mismatch");
    }

    /// Re-encloses at a different precision.
    pub fn with_prec(&self, prec: u32) -> Ball {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = (prec - self.prec) as usize;
                Ball { mid: &self.mid << s, rad: &self.rad << s, prec }
            }
            Ordering::Less => {
                let s = self.prec - prec;
                let mid = &self.mid >> s as usize;
                let rad = shr_ceil(&self.rad, s) + 1;
                Ball { mid, rad, prec }
            }
        }
    }

    pub fn neg(&self) -> Ball {
        Ball { mid: -&self.mid, rad: self.rad.clone(), prec: self.prec }
    }

    pub fn add(&self, other: &Ball) -> Ball {
        self.assert_prec(other);
        Ball { mid: &self.mid + &other.mid, rad: &self.rad + &other.rad, prec: self.prec }
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        self.assert_prec(other);
        Ball { mid: &self.mid - &other.mid, rad: &self.rad + &other.rad, prec: self.prec }
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        self.assert_prec(other);
        let p = self.prec;
        let prod = &self.mid * &other.mid;
        let mid = &prod >> p as usize;
        let exact = (&mid << p as usize) == prod;
        let err = self.mid.abs() * &other.rad + other.mid.abs() * &self.rad + &self.rad * &other.rad;
        let mut rad = shr_ceil(&err, p);
        if !exact {
            rad += 1;
        }
        Ball { mid, rad, prec: p }
    }

    pub fn square(&self) -> Ball {
        let sq = self.mul(self);
        // A square is never negative; clip the lower end at zero.
        if sq.lo_ulps().is_negative() {
            Ball::from_ulps(BigInt::zero(), sq.hi_ulps(), sq.prec)
        } else {
            sq
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Ball {
        Ball { mid: &self.mid * k, rad: &self.rad * k.abs(), prec: self.prec }
    }

    pub fn mul_rational(&self, q: &BigRational) -> Ball {
        self.mul_int(q.numer()).div_int(q.denom())
    }

    pub fn div_int(&self, k: &BigInt) -> Ball {
        assert!(!k.is_zero(), "division by zero");
        let (mut mid, rem) = self.mid.div_mod_floor(k);
        let kabs = k.abs();
        let mut rad = self.rad.div_ceil(&kabs);
        if !rem.is_zero() {
            rad += 1;
        }
        if k.is_negative() {
            // floor division by a negative divisor already rounds consistently;
            // the extra ulp above absorbs the direction.
            mid = mid.clone();
        }
        Ball { mid, rad, prec: self.prec }
    }

    pub fn abs(&self) -> Ball {
        if self.contains_zero() {
            let hi = self.mag_ulps();
            Ball::from_ulps(BigInt::zero(), hi, self.prec)
        } else if self.mid.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Square root of the non-negative part of the ball.
    pub fn sqrt(&self) -> Ball {
        let p = self.prec as usize;
        let lo = self.lo_ulps().max(BigInt::zero());
        let hi = self.hi_ulps().max(BigInt::zero());
        let lo_s = (lo << p).sqrt();
        let hi_full = hi << p;
        let mut hi_s = hi_full.sqrt();
        if &hi_s * &hi_s != hi_full {
            hi_s += 1;
        }
        Ball::from_ulps(lo_s, hi_s, self.prec)
    }

    /// Reciprocal; `None` if the ball contains zero.
    pub fn recip(&self) -> Option<Ball> {
        if self.contains_zero() {
            return None;
        }
        let p2 = pow2(2 * self.prec);
        let lo = self.lo_ulps();
        let hi = self.hi_ulps();
        // 1/x is decreasing on each sign component.
        let a = p2.div_floor(&hi);
        let b = {
            let (q, r) = p2.div_mod_floor(&lo);
            if r.is_zero() {
                q
            } else {
                q + 1
            }
        };
        Some(Ball::from_ulps(a.clone().min(b.clone()), a.max(b), self.prec))
    }

    pub fn div(&self, other: &Ball) -> Option<Ball> {
        other.recip().map(|r| self.mul(&r))
    }

    /// Smallest interval containing both balls' "minimum": `[min lo, min hi]`.
    pub fn min_enclosure(&self, other: &Ball) -> Ball {
        self.assert_prec(other);
        let lo = self.lo_ulps().min(other.lo_ulps());
        let hi = self.hi_ulps().min(other.hi_ulps());
        Ball::from_ulps(lo, hi, self.prec)
    }

    /// Convex hull of two balls.
    pub fn union(&self, other: &Ball) -> Ball {
        self.assert_prec(other);
        let lo = self.lo_ulps().min(other.lo_ulps());
        let hi = self.hi_ulps().max(other.hi_ulps());
        Ball::from_ulps(lo, hi, self.prec)
    }

    /// `(hi - lo) <= 2^-bits * lo`, i.e. the relative width is at most `2^-bits`.
    /// Always false when the ball is not strictly positive.
    pub fn relative_width_le(&self, bits: u32) -> bool {
        if !self.is_positive() {
            return false;
        }
        (&self.rad * 2) << bits as usize <= self.lo_ulps()
    }
}

/// A closed interval of doubles, used where a certified bound is reported
/// at double precision.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

impl Enclosure {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "inverted enclosure [{lo}, {hi}]");
        Enclosure { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Enclosure { lo: x, hi: x }
    }

    pub fn from_ball(b: &Ball) -> Self {
        Enclosure { lo: b.lo_f64(), hi: b.hi_f64() }
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Natural logarithm, rounded outward by one ulp on each side.
    pub fn ln(&self) -> Self {
        Enclosure { lo: self.lo.ln().next_down(), hi: self.hi.ln().next_up() }
    }

    pub fn mul(&self, o: &Enclosure) -> Self {
        debug_assert!(self.lo >= 0.0 && o.lo >= 0.0);
        Enclosure { lo: (self.lo * o.lo).next_down().max(0.0), hi: (self.hi * o.hi).next_up() }
    }
}

/// Largest `f64` not exceeding `q`.
pub fn rational_to_f64_down(q: &BigRational) -> f64 {
    let mut x = q.to_f64().unwrap_or(if q.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY });
    if !x.is_finite() {
        return if q.is_negative() { f64::NEG_INFINITY } else { f64::MAX };
    }
    while BigRational::from_float(x).is_some_and(|r| &r > q) {
        x = x.next_down();
    }
    x
}

/// Smallest `f64` not below `q`.
pub fn rational_to_f64_up(q: &BigRational) -> f64 {
    let mut x = q.to_f64().unwrap_or(if q.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY });
    if !x.is_finite() {
        return if q.is_negative() { f64::MIN } else { f64::INFINITY };
    }
    while BigRational::from_float(x).is_some_and(|r| &r < q) {
        x = x.next_up();
    }
    x
}

const PI_CACHE_BITS: u32 = 4096;

/// `atan(1/x)` at precision `w` with an error bound in ulps.
fn atan_inv(x: u64, w: u32) -> (BigInt, BigInt) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut pow = pow2(w).div_floor(&x);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !pow.is_zero() {
        let term = pow.div_floor(&BigInt::from(2 * k + 1));
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        pow = pow.div_floor(&x2);
        k += 1;
    }
    (sum, BigInt::from(3 * k + 2))
}

fn compute_pi(prec: u32) -> Ball {
    let w = prec + 16;
    let (a, ea) = atan_inv(5, w);
    let (b, eb) = atan_inv(239, w);
    let mid = a * 16 - b * 4;
    let rad = ea * 16 + eb * 4;
    Ball { mid, rad, prec: w }.with_prec(prec)
}

/// Enclosure of pi at the given precision.
pub fn pi(prec: u32) -> Ball {
    static CACHE: OnceLock<Ball> = OnceLock::new();
    if prec > PI_CACHE_BITS {
        return compute_pi(prec);
    }
    CACHE.get_or_init(|| compute_pi(PI_CACHE_BITS)).with_prec(prec)
}

/// A complex ball (rectangular: independent real and imaginary balls).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexBall {
    pub fn zero(prec: u32) -> Self {
        ComplexBall { re: Ball::zero(prec), im: Ball::zero(prec) }
    }

    pub fn from_real(re: Ball) -> Self {
        let prec = re.prec();
        ComplexBall { re, im: Ball::zero(prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn add(&self, o: &ComplexBall) -> ComplexBall {
        ComplexBall { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &ComplexBall) -> ComplexBall {
        ComplexBall { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &ComplexBall) -> ComplexBall {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        ComplexBall { re, im }
    }

    pub fn add_real(&self, r: &Ball) -> ComplexBall {
        ComplexBall { re: self.re.add(r), im: self.im.clone() }
    }

    pub fn conj(&self) -> ComplexBall {
        ComplexBall { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn norm_sqr(&self) -> Ball {
        self.re.square().add(&self.im.square())
    }

    pub fn abs(&self) -> Ball {
        self.norm_sqr().sqrt()
    }

    pub fn with_prec(&self, prec: u32) -> ComplexBall {
        ComplexBall { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }
}

/// `(cos x, sin x)` for a ball `x` with `0 <= x <= 1`.
fn cos_sin_small(x: &Ball) -> (Ball, Ball) {
    let p = x.prec();
    let x2 = x.square();
    let one_ulp = BigInt::one();

    let mut cos = Ball::one(p);
    let mut term = Ball::one(p);
    let mut j: u64 = 1;
    loop {
        term = term.mul(&x2).div_int(&BigInt::from((2 * j - 1) * (2 * j)));
        if j % 2 == 1 {
            cos = cos.sub(&term);
        } else {
            cos = cos.add(&term);
        }
        let mag = term.mag_ulps();
        if mag <= one_ulp {
            cos.rad += mag;
            break;
        }
        j += 1;
    }

    let mut sin = x.clone();
    let mut term = x.clone();
    let mut j: u64 = 1;
    loop {
        term = term.mul(&x2).div_int(&BigInt::from((2 * j) * (2 * j + 1)));
        if j % 2 == 1 {
            sin = sin.sub(&term);
        } else {
            sin = sin.add(&term);
        }
        let mag = term.mag_ulps();
        if mag <= one_ulp {
            sin.rad += mag;
            break;
        }
        j += 1;
    }
    (cos, sin)
}

/// `e^{2 pi i f}` for a rational fraction of a turn `f`.
///
/// The fraction is reduced exactly to the first octant before any rounding,
/// so the cost does not depend on the size of `f`.
pub fn turn(frac: &BigRational, prec: u32) -> ComplexBall {
    let w = prec + 8;
    let mut f = frac - frac.floor();
    let one = BigRational::one();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let eighth = BigRational::new(BigInt::one(), BigInt::from(8));

    let mut neg_sin = false;
    if f > half {
        f = &one - &f;
        neg_sin = true;
    }
    let mut neg_cos = false;
    if f > quarter {
        f = &half - &f;
        neg_cos = true;
    }
    let mut swap = false;
    if f > eighth {
        f = &quarter - &f;
        swap = true;
    }
    let x = pi(w).mul_int(&BigInt::from(2)).mul_rational(&f);
    let (c, s) = cos_sin_small(&x);
    let (mut c, mut s) = if swap { (s, c) } else { (c, s) };
    if neg_cos {
        c = c.neg();
    }
    if neg_sin {
        s = s.neg();
    }
    ComplexBall { re: c.with_prec(prec), im: s.with_prec(prec) }
}

/// `e^{2 pi i k / n}`.
pub fn root_of_unity(k: i64, n: u64, prec: u32) -> ComplexBall {
    assert!(n > 0);
    turn(&BigRational::new(BigInt::from(k), BigInt::from(n)), prec)
}

/// `2 cos(pi t)` for rational `t`.
pub fn two_cos_pi(t: &BigRational, prec: u32) -> Ball {
    let half_turn = t / BigRational::from_integer(BigInt::from(2));
    let z = turn(&half_turn, prec + 2);
    z.re.mul_int(&BigInt::from(2)).with_prec(prec)
}

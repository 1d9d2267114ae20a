//! Roots of a reduced Alexander polynomial on the unit circle.
//!
//! Roots are tracked through the real quantity `w = ξ + ξ̄ = 2cos(πt)`: a
//! palindromic `g` of degree `2m` is `z^m ĝ(z + 1/z)`, and conjugate pairs of
//! unit-circle roots of `g` are exactly the roots of `ĝ` in `(-2, 2)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::ball::{two_cos_pi, Ball};
use crate::error::{domain, Error, Result};
use crate::polyring::{
    cyclotomic, euler_phi, isolate_real_roots, q_int, squarefree_decompose, IsolatingInterval, LaurentPoly, Q,
};

/// One conjugate pair `ξ, ξ̄` of unit-circle roots, `ξ = e^{πit}` with `0 < t < 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootCluster {
    /// Square-free factor of `Λ` owning the root.
    pub factor: LaurentPoly,
    pub multiplicity: u32,
    /// `Φ_N` for roots of unity, otherwise the part of `factor` whose roots
    /// lie on the circle and are not roots of unity (the polynomial handed to
    /// the Baker bounds).
    pub root_poly: LaurentPoly,
    /// Chebyshev transform of `root_poly`, a polynomial in `w`.
    pub w_poly: LaurentPoly,
    pub w_interval: IsolatingInterval,
    pub cyclotomic_order: Option<u64>,
    /// Certified enclosure `[t_lo, t_hi]` of `t`; a point for roots of unity.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub t_lo: Q,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub t_hi: Q,
    /// Double nearest to the midpoint of the enclosure.
    pub t: f64,
}

impl RootCluster {
    pub fn is_cyclotomic(&self) -> bool {
        self.cyclotomic_order.is_some()
    }

    /// Exact angle for roots of unity.
    pub fn t_exact(&self) -> Option<&Q> {
        (self.t_lo == self.t_hi).then_some(&self.t_lo)
    }

    pub fn t_width(&self) -> Q {
        &self.t_hi - &self.t_lo
    }

    /// A copy whose `t` enclosure has width at most `2^-bits`.
    pub fn refine_t(&self, bits: u32) -> Result<RootCluster> {
        let mut out = self.clone();
        if self.t_exact().is_some() {
            return Ok(out);
        }
        let (lo, hi) = refine_angle(&self.w_poly, &self.w_interval, &self.t_lo, &self.t_hi, bits)?;
        out.t = ((&lo + &hi) / q_int(2)).to_f64().unwrap_or(f64::NAN);
        out.t_lo = lo;
        out.t_hi = hi;
        Ok(out)
    }
}

/// `ĝ(w)` with `g(z) = z^m ĝ(z + 1/z)` for palindromic `g` of even degree `2m`.
pub fn chebyshev_transform(g: &LaurentPoly) -> Result<LaurentPoly> {
    let g = g.normalize_primitive()?;
    if g.reverse().normalize_unchecked() != g {
        return domain(format!("{g} is not palindromic"));
    }
    if g.eval_i64(1)?.is_zero() || g.eval_i64(-1)?.is_zero() {
        return domain(format!("{g} vanishes at z = ±1"));
    }
    let deg = g.span();
    debug_assert!(deg % 2 == 0);
    let m = (deg / 2) as i64;
    // g / z^m = c_0 + sum_j c_j (z^j + z^-j) and z^j + z^-j = D_j(w).
    let mut d_prev = LaurentPoly::constant(q_int(2));
    let mut d_cur = LaurentPoly::z();
    let mut acc = LaurentPoly::constant(g.coeff(m));
    for j in 1..=m {
        if j > 1 {
            let next = LaurentPoly::z().mul(&d_cur).sub(&d_prev);
            d_prev = d_cur;
            d_cur = next;
        }
        acc = acc.add(&d_cur.scale(&g.coeff(m + j)));
    }
    Ok(acc)
}

/// Splits off every cyclotomic divisor of a square-free `g`.
///
/// Returns the orders `N` with `Φ_N | g`, ascending, and `g / ∏ Φ_N`.
pub fn cyclotomic_split(g: &LaurentPoly) -> Result<(Vec<u64>, LaurentPoly)> {
    let mut rem = g.normalize_primitive()?;
    let d = rem.span() as u64;
    let mut orders = Vec::new();
    // φ(N) >= sqrt(N/2), so φ(N) <= d forces N <= 2d².
    for n in 1..=(2 * d * d).max(2) {
        if euler_phi(n) > rem.span() as u64 {
            continue;
        }
        let phi = cyclotomic(n)?;
        if phi.divides(&rem) {
            rem = rem.exact_divide(&phi)?.normalize_unchecked();
            orders.push(n);
        }
    }
    Ok((orders, rem))
}

/// The distinct roots on the upper half of the unit circle with multiplicities.
///
/// Clusters are sorted by increasing `t`.
pub fn unit_circle_roots(lambda: &LaurentPoly) -> Result<Vec<RootCluster>> {
    let lambda = lambda.normalize_primitive()?;
    if lambda.eval_i64(1)?.is_zero() || lambda.eval_i64(-1)?.is_zero() {
        return domain("Λ(1) and Λ(-1) must be nonzero; for a knot Λ(1) = ±1 and Λ(-1) is odd");
    }
    let mut clusters = Vec::new();
    for (factor, mult) in squarefree_decompose(&lambda)?.factors {
        let (orders, rem) = cyclotomic_split(&factor)?;
        for n in orders {
            clusters.extend(cyclotomic_clusters(&factor, mult, n)?);
        }
        if rem.span() > 0 {
            clusters.extend(generic_clusters(&factor, mult, &rem)?);
        }
    }
    clusters.sort_by(|a, b| a.t_lo.cmp(&b.t_lo));
    Ok(clusters)
}

fn cyclotomic_clusters(factor: &LaurentPoly, mult: u32, n: u64) -> Result<Vec<RootCluster>> {
    let phi = cyclotomic(n)?;
    let w_poly = chebyshev_transform(&phi)?;
    let ivs = isolate_real_roots(&w_poly, &q_int(-2), &q_int(2))?;
    // Upper-half roots e^{2πij/n}, t = 2j/n ascending; w = 2cos(πt) descends.
    let ts: Vec<Q> = (1..n)
        .filter(|&j| 2 * j < n && j.gcd(&n) == 1)
        .map(|j| Q::new(BigInt::from(2 * j), BigInt::from(n)))
        .collect();
    if ts.len() != ivs.len() {
        return Err(Error::Precision(format!("root count mismatch for Φ_{n}")));
    }
    Ok(ivs
        .into_iter()
        .zip(ts.into_iter().rev())
        .map(|(iv, t)| RootCluster {
            factor: factor.clone(),
            multiplicity: mult,
            root_poly: phi.clone(),
            w_poly: w_poly.clone(),
            w_interval: iv,
            cyclotomic_order: Some(n),
            t: t.to_f64().unwrap_or(f64::NAN),
            t_lo: t.clone(),
            t_hi: t,
        })
        .collect())
}

const INITIAL_T_BITS: u32 = 64;

fn generic_clusters(factor: &LaurentPoly, mult: u32, rem: &LaurentPoly) -> Result<Vec<RootCluster>> {
    // Unit-circle roots of rem are shared with its reversal.
    let h = rem.gcd(&rem.reverse());
    if h.span() == 0 {
        return Ok(Vec::new());
    }
    let w_poly = chebyshev_transform(&h)?;
    let ivs = isolate_real_roots(&w_poly, &q_int(-2), &q_int(2))?;
    let mut out = Vec::with_capacity(ivs.len());
    for iv in ivs {
        let (t_lo, t_hi) = refine_angle(&w_poly, &iv, &Q::zero(), &Q::one(), INITIAL_T_BITS)?;
        out.push(RootCluster {
            factor: factor.clone(),
            multiplicity: mult,
            root_poly: h.clone(),
            w_poly: w_poly.clone(),
            w_interval: iv,
            cyclotomic_order: None,
            t: ((&t_lo + &t_hi) / q_int(2)).to_f64().unwrap_or(f64::NAN),
            t_lo,
            t_hi,
        });
    }
    Ok(out)
}

fn exact_sign(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn eval_ball(p: &LaurentPoly, x: &Ball) -> Ball {
    let prec = x.prec();
    let mut acc = Ball::zero(prec);
    for c in p.dense().iter().rev() {
        acc = acc.mul(x).add(&Ball::from_rational(c, prec));
    }
    acc
}

const MAX_ANGLE_PREC: u32 = 1 << 16;

/// Bisects `[t_lo, t_hi]` (which must contain `t = arccos(w*/2)/π` for the
/// unique root `w*` of `w_poly` in `w_iv`) down to width `2^-bits`.
fn refine_angle(w_poly: &LaurentPoly, w_iv: &IsolatingInterval, t_lo: &Q, t_hi: &Q, bits: u32) -> Result<(Q, Q)> {
    let s_lo = exact_sign(&w_poly.eval(&w_iv.lo)?);
    if s_lo == 0 || s_lo == exact_sign(&w_poly.eval(&w_iv.hi)?) {
        return domain("w interval does not bracket a simple root");
    }
    let target = Q::new(BigInt::one(), BigInt::one() << bits as usize);
    let (mut a, mut b) = (t_lo.clone(), t_hi.clone());
    let mut prec = bits + 32;
    while &b - &a > target {
        let tm = (&a + &b) / q_int(2);
        loop {
            let c = two_cos_pi(&tm, prec);
            let side = if c.lo() >= w_iv.hi {
                1
            } else if c.hi() <= w_iv.lo {
                -1
            } else {
                match eval_ball(w_poly, &c).sign() {
                    Some(o) => {
                        let s = o as i8;
                        if s == s_lo {
                            -1
                        } else {
                            1
                        }
                    }
                    None => 0,
                }
            };
            match side {
                // 2cos(π tm) > w*, so tm < t.
                1 => {
                    a = tm;
                    break;
                }
                -1 => {
                    b = tm;
                    break;
                }
                _ => {
                    prec *= 2;
                    if prec > MAX_ANGLE_PREC {
                        return Err(Error::Precision("angle refinement did not separate".into()));
                    }
                }
            }
        }
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev_transform(&p("z^2-z+1")).unwrap(), p("z-1"));
        assert_eq!(chebyshev_transform(&p("2z^2-3z+2")).unwrap(), p("2z-3"));
        assert_eq!(chebyshev_transform(&p("z^4-3z^3+3z^2-3z+1")).unwrap(), p("z^2-3z+1"));
        assert!(chebyshev_transform(&p("z-2")).is_err());
        assert!(chebyshev_transform(&p("z^2-2z+1")).is_err());
    }

    #[test]
    fn cyclotomic_split_examples() {
        assert_eq!(cyclotomic_split(&p("(z^2-z+1)(2z^2-3z+2)")).unwrap(), (vec![6], p("2z^2-3z+2")));
        assert_eq!(cyclotomic_split(&p("z^4-z^2+1")).unwrap(), (vec![12], p("1")));
        let x = p("z^4-3z^3+3z^2-3z+1");
        assert_eq!(cyclotomic_split(&x).unwrap(), (vec![], x));
    }

    #[test]
    fn root_examples() {
        assert!(unit_circle_roots(&p("z^2-3z+1")).unwrap().is_empty());

        let c = unit_circle_roots(&p("z^2-z+1")).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].cyclotomic_order, Some(6));
        assert_eq!(c[0].t_exact(), Some(&Q::new(1.into(), 3.into())));

        let c = unit_circle_roots(&p("2z^2-3z+2")).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0].cyclotomic_order.is_none());
        assert!((c[0].t - (0.75f64).acos() / std::f64::consts::PI).abs() < 1e-15);
        assert!(c[0].t_width() <= Q::new(1.into(), BigInt::one() << 64));
    }

    #[test]
    fn roots_at_plus_minus_one_rejected() {
        assert!(unit_circle_roots(&p("(z-1)(z^2-z+1)")).is_err());
        assert!(unit_circle_roots(&p("z+1")).is_err());
    }

    #[test]
    fn refinement_nests() {
        let c = &unit_circle_roots(&p("2z^2-3z+2")).unwrap()[0];
        let r = c.refine_t(128).unwrap();
        assert!(r.t_lo >= c.t_lo && r.t_hi <= c.t_hi);
        let known: Q = "23005345616261588521378056770514289300991/100000000000000000000000000000000000000000".parse().unwrap();
        let slack = Q::new(1.into(), BigInt::from(10).pow(40));
        assert!(r.t_lo <= &known + &slack && &known - &slack <= r.t_hi);
    }

    #[test]
    fn mixed_factor_clusters() {
        // 8_5: a cyclotomic pair and a non-cyclotomic pair.
        let c = unit_circle_roots(&p("(z^2-z+1)(z^4-2z^3+z^2-2z+1)")).unwrap();
        assert_eq!(c.iter().filter(|x| x.is_cyclotomic()).count(), 1);
        assert_eq!(c.iter().filter(|x| !x.is_cyclotomic()).count(), 1);
    }
}

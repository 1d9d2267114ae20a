//! Mahler measures, torsion growth, explicit Baker constants, and continued
//! fraction convergents of root angles.

use std::f64::consts::PI;

use nalgebra::Complex;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::ball::{Ball, ComplexBall, Enclosure};
use crate::error::{domain, Error, Result};
use crate::polyring::{horner_circle, squarefree_decompose, LaurentPoly, Q};
use crate::unitcircle::RootCluster;

type C64 = Complex<f64>;

fn horner_f64(coeffs: &[f64], z: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of a polynomial given by coefficients (lowest first),
/// by simultaneous Aberth–Ehrlich iteration in double precision.
pub fn aberth_roots(coeffs: &[f64]) -> Vec<C64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let r = (coeffs[0] / lead).abs().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<C64> =
        (0..n).map(|k| C64::from_polar(r, 2.0 * PI * k as f64 / n as f64 + 0.4)).collect();
    for _ in 0..2000 {
        let mut done = true;
        for i in 0..n {
            let (p, dp) = horner_f64(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: C64 = (0..n).filter(|&j| j != i).map(|j| C64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let w = ratio / (C64::new(1.0, 0.0) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() > 4.0 * f64::EPSILON * z[i].norm().max(1e-300) {
                done = false;
            }
        }
        if done {
            break;
        }
    }
    z
}

const DISK_PREC: u32 = 192;

/// Inclusion disks `D(z_i, n|W_i|)` with `W_i` the Weierstrass corrections,
/// evaluated in ball arithmetic. Returns `(|z_i| enclosure, radius bound)`.
fn root_disks(p: &LaurentPoly, zs: &[C64]) -> Option<Vec<(Enclosure, f64, C64)>> {
    let n = zs.len();
    let lead = Ball::from_rational(&p.leading(), DISK_PREC);
    let balls: Vec<ComplexBall> = zs
        .iter()
        .map(|z| ComplexBall { re: Ball::from_f64(z.re, DISK_PREC), im: Ball::from_f64(z.im, DISK_PREC) })
        .collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let pv = horner_circle(p, &balls[i]).abs();
        let mut den = ComplexBall::from_real(lead.clone());
        for j in 0..n {
            if j != i {
                den = den.mul(&balls[i].sub(&balls[j]));
            }
        }
        let w = pv.div(&den.abs())?;
        let radius = w.mul_int(&BigInt::from(n as u64)).hi_f64();
        let modulus = Enclosure::from_ball(&balls[i].abs());
        out.push((modulus, radius, zs[i]));
    }
    Some(out)
}

/// `∏ max(1, |α|)` over the roots of a square-free integer polynomial,
/// enclosed via Gerschgorin components of the inclusion disks.
fn outer_root_product(p: &LaurentPoly) -> Enclosure {
    let n = p.span();
    if n == 0 {
        return Enclosure::point(1.0);
    }
    let zs = aberth_roots(&p.f64_coeffs());
    let Some(disks) = root_disks(p, &zs) else {
        return cauchy_fallback(p);
    };
    // Union-find over overlapping disks.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let gap = (disks[i].2 - disks[j].2).norm();
            if gap * (1.0 - 4.0 * f64::EPSILON) <= disks[i].1 + disks[j].1 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut lo = 1.0f64;
    let mut hi = 1.0f64;
    let mut seen = vec![false; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let members: Vec<usize> = (0..n).filter(|&j| find(&mut parent, j) == root).collect();
        let min_mod = members.iter().map(|&j| (disks[j].0.lo - disks[j].1).next_down()).fold(f64::INFINITY, f64::min);
        let max_mod = members.iter().map(|&j| (disks[j].0.hi + disks[j].1).next_up()).fold(0.0, f64::max);
        let m = members.len() as i32;
        lo = (lo * min_mod.max(1.0).powi(m)).next_down();
        hi = (hi * max_mod.max(1.0).powi(m)).next_up();
    }
    Enclosure::new(lo.max(1.0), hi)
}

/// Every root satisfies `|α| <= 1 + max |a_i / a_n|`.
fn cauchy_fallback(p: &LaurentPoly) -> Enclosure {
    let lead = p.leading().abs();
    let bound = p.coeffs().iter().map(|c| (c.abs() / &lead).to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max);
    Enclosure::new(1.0, (1.0 + bound).powi(p.span() as i32).next_up())
}

/// Certified enclosure of the Mahler measure
/// `M(p) = |lead| ∏ max(1, |α_i|)` (Jensen's formula).
pub fn mahler_measure(p: &LaurentPoly) -> Result<Enclosure> {
    let fac = squarefree_decompose(p)?;
    let c = fac.content.abs().to_f64().unwrap_or(f64::NAN);
    let mut acc = Enclosure::new(c.next_down().max(0.0), c.next_up());
    for (f, e) in &fac.factors {
        let lead = f.leading().to_f64().unwrap_or(f64::NAN);
        let inner = outer_root_product(f);
        let mf = Enclosure::new((lead * inner.lo).next_down(), (lead * inner.hi).next_up());
        for _ in 0..*e {
            acc = acc.mul(&mf);
        }
    }
    Ok(acc)
}

/// Logarithmic Mahler measure `m(Δ)`, the exponential growth rate of
/// `|τH_1|` of the cyclic covers.
pub fn torsion_growth_rate(delta: &LaurentPoly) -> Result<Enclosure> {
    Ok(mahler_measure(delta)?.ln())
}

/// Resultant of two ordinary polynomials by the Euclidean algorithm over
/// the rationals.
pub fn resultant(a: &LaurentPoly, b: &LaurentPoly) -> Result<Q> {
    if a.is_zero() || b.is_zero() {
        return Ok(Q::zero());
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = Q::one();
    loop {
        let da = a.degree().unwrap_or(0);
        let db = b.degree().unwrap_or(0);
        if db == 0 {
            return Ok(acc * num_traits::pow::pow(b.leading(), da as usize));
        }
        let (_, r) = a.poly_div_rem(&b)?;
        if r.is_zero() {
            return Ok(Q::zero());
        }
        let dr = r.degree().unwrap_or(0);
        // Res(A,B) = (-1)^{ab} lc(B)^{a-r} Res(B, R)
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow::pow(b.leading(), (da - dr) as usize);
        a = b;
        b = r;
    }
}

/// `|∏_{k=1}^{n-1} Δ(e^{2πik/n})|`, exactly, as `|Res((z^n-1)/(z-1), Δ)|`.
/// Zero exactly when `Δ` vanishes at a nontrivial `n`-th root of unity.
pub fn torsion_order(delta: &LaurentPoly, n: u64) -> Result<BigInt> {
    if n == 0 {
        return domain("cover degree must be positive");
    }
    if delta.is_zero() {
        return Ok(BigInt::zero());
    }
    let d = delta.to_ordinary();
    let geometric = LaurentPoly::from_ints(0, &vec![1; n as usize]);
    let r = resultant(&geometric, &d)?;
    if !r.is_integer() {
        return domain(format!("{delta} does not have integer coefficients"));
    }
    Ok(r.to_integer().abs())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BakerMethod {
    Gouillon,
    BakerWustholz,
}

/// An explicit Baker constant `C` for the linear form `β₁ log ξ + β₂ log(-1)`,
/// giving `ν(t) <= C + 1` for the angle `t` of the root `ξ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BakerBound {
    pub method: BakerMethod,
    /// The formula value.
    pub c: f64,
    /// `c` rounded up to an integer.
    pub c_rounded: f64,
    pub degree: usize,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub height: BigInt,
    pub log_mahler: Enclosure,
    /// `c_rounded + 1`.
    pub nu_upper: f64,
    /// The bound is stated for large covers only.
    pub asymptotic: bool,
}

fn baker_inputs(p: &LaurentPoly) -> Result<(LaurentPoly, usize, BigInt)> {
    let p = p.normalize_primitive()?;
    let d = p.span();
    if d < 2 {
        return domain("Baker constants need degree at least 2 (a rational root has ν = 1)");
    }
    if p.gcd(&p.derivative()).span() > 0 {
        return domain(format!("{p} is not square-free"));
    }
    let height = p.height().to_integer();
    Ok((p, d, height))
}

/// Gouillon's constant
/// `C = 550π d² (3.776 + 2.662 d + 0.946 d log d) max(2π, log M(p))`.
pub fn gouillon_constant(p: &LaurentPoly) -> Result<BakerBound> {
    let (p, d, height) = baker_inputs(p)?;
    let log_m = torsion_growth_rate(&p)?;
    let df = d as f64;
    let c = 550.0 * PI * df * df * (3.776 + 2.662 * df + 0.946 * df * df.ln()) * (2.0 * PI).max(log_m.hi);
    let c_rounded = c.ceil();
    Ok(BakerBound {
        method: BakerMethod::Gouillon,
        c,
        c_rounded,
        degree: d,
        height,
        log_mahler: log_m,
        nu_upper: c_rounded + 1.0,
        asymptotic: true,
    })
}

/// The Baker–Wüstholz choice `C = 2^40 d^8 log H`.
pub fn baker_wustholz_constant(p: &LaurentPoly) -> Result<BakerBound> {
    let (p, d, height) = baker_inputs(p)?;
    if height.is_one() {
        return domain("height 1 gives log H = 0");
    }
    let log_h = height.to_f64().unwrap_or(f64::INFINITY).ln();
    let c = 2f64.powi(40) * (d as f64).powi(8) * log_h;
    let c_rounded = c.ceil();
    Ok(BakerBound {
        method: BakerMethod::BakerWustholz,
        c,
        c_rounded,
        degree: d,
        height,
        log_mahler: torsion_growth_rate(&p)?,
        nu_upper: c_rounded + 1.0,
        asymptotic: false,
    })
}

/// Best available constant: Gouillon, falling back to Baker–Wüstholz when
/// Gouillon's inputs cannot be formed.
pub fn best_baker_bound(p: &LaurentPoly) -> Result<BakerBound> {
    gouillon_constant(p).or_else(|_| baker_wustholz_constant(p))
}

/// A continued fraction convergent `p/q` of a certified real.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Convergent {
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub p: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub q: BigInt,
    /// Certified upper bound on `|t - p/q|`.
    pub error_bound: f64,
}

/// A real number available as rational enclosures of any requested width.
pub trait CertifiedReal {
    /// `[lo, hi]` containing the number with `hi - lo <= 2^-bits`.
    fn enclosure(&self, bits: u32) -> Result<(Q, Q)>;
}

impl CertifiedReal for Q {
    fn enclosure(&self, _bits: u32) -> Result<(Q, Q)> {
        Ok((self.clone(), self.clone()))
    }
}

impl CertifiedReal for RootCluster {
    fn enclosure(&self, bits: u32) -> Result<(Q, Q)> {
        let r = self.refine_t(bits)?;
        Ok((r.t_lo, r.t_hi))
    }
}

fn cf_terms(x: &Q, max: usize) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut x = x.clone();
    while out.len() < max {
        let a = x.floor().to_integer();
        out.push(a.clone());
        let frac = &x - Q::from_integer(a);
        if frac.is_zero() {
            break;
        }
        x = frac.recip();
    }
    out
}

const MAX_CF_BITS: u32 = 1 << 15;

/// Continued fraction convergents with `q <= max_q`, excluding the integer
/// part `a_0/1`. Each one is certified against the enclosure it came from,
/// so the list does not depend on the working precision.
pub fn convergents_of<T: CertifiedReal + ?Sized>(t: &T, max_q: u64) -> Result<Vec<Convergent>> {
    let max_q = BigInt::from(max_q.max(1));
    let mut bits = 2 * max_q.bits() as u32 + 16;
    loop {
        let (lo, hi) = t.enclosure(bits)?;
        let exact = lo == hi;
        let limit = 4 * bits as usize + 8;
        let tl = cf_terms(&lo, limit);
        let th = cf_terms(&hi, limit);
        let mut out = Vec::new();
        let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
        let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
        let mut finished = false;
        for k in 0..tl.len().min(th.len()) {
            if tl[k] != th[k] {
                break;
            }
            // A term is only certified if the enclosure extends past it on both
            // sides or the number is exactly the rational.
            let last = k + 1 == tl.len() || k + 1 == th.len();
            if last && !exact {
                break;
            }
            let a = &tl[k];
            let p2 = a * &p1 + &p0;
            let q2 = a * &q1 + &q0;
            if q2 > max_q {
                finished = true;
                break;
            }
            if k > 0 {
                let c = Q::new(p2.clone(), q2.clone());
                let err = (&lo - &c).abs().max((&hi - &c).abs());
                out.push(Convergent {
                    p: p2.clone(),
                    q: q2.clone(),
                    error_bound: crate::ball::rational_to_f64_up(&err),
                });
            }
            p0 = std::mem::replace(&mut p1, p2);
            q0 = std::mem::replace(&mut q1, q2);
            if last {
                finished = true;
                break;
            }
        }
        if finished {
            return Ok(out);
        }
        bits *= 2;
        if bits > MAX_CF_BITS {
            return Err(Error::Precision(format!("could not certify convergents up to q = {max_q}")));
        }
    }
}

/// Heuristic irrationality-exponent estimate from consecutive convergent
/// denominators, `1 + log q_{k+1} / log q_k`.
///
/// This is an empirical lower-bound proxy for `ν`, never `ν` itself.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IrrationalityEstimate {
    /// Mean over the later half of the consecutive pairs.
    pub estimate: f64,
    /// Largest value over the same pairs.
    pub tail_max: f64,
    pub pairs: usize,
}

pub fn empirical_irrationality(convergents: &[Convergent]) -> Result<IrrationalityEstimate> {
    let qs: Vec<f64> = convergents
        .iter()
        .map(|c| c.q.to_f64().unwrap_or(f64::INFINITY))
        .filter(|&q| q >= 2.0)
        .collect();
    if qs.len() < 3 {
        return domain("need at least three convergents with q >= 2");
    }
    let ratios: Vec<f64> = qs.windows(2).map(|w| 1.0 + w[1].ln() / w[0].ln()).collect();
    let tail = &ratios[ratios.len() / 2..];
    let estimate = tail.iter().sum::<f64>() / tail.len() as f64;
    let tail_max = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(IrrationalityEstimate { estimate, tail_max, pairs: ratios.len() })
}

/// `gcd`-reduced check used in tests and reports: `|t - p/q| < 1/q²`.
pub fn is_good_approximation(c: &Convergent) -> bool {
    let q = c.q.to_f64().unwrap_or(f64::INFINITY);
    c.error_bound < 1.0 / (q * q) && c.p.gcd(&c.q).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitcircle::unit_circle_roots;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn mahler_examples() {
        let m = mahler_measure(&p("z^2-z+1")).unwrap();
        assert!(m.contains(1.0) && m.width() < 1e-12);
        let m = mahler_measure(&p("2z^2-3z+2")).unwrap();
        assert!(m.contains(2.0) && m.width() < 1e-12);
        let golden2 = (3.0 + 5f64.sqrt()) / 2.0;
        let m = mahler_measure(&p("z^2-3z+1")).unwrap();
        assert!((m.mid() - golden2).abs() < 1e-12);
    }

    #[test]
    fn mahler_handles_repeated_factors_and_content() {
        let m = mahler_measure(&p("-3z^-2(z^2-3z+1)^2(z-5)")).unwrap();
        let golden2 = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((m.mid() - 3.0 * golden2 * golden2 * 5.0).abs() < 1e-9);
    }

    #[test]
    fn lehmer_polynomial() {
        let lehmer = p("z^10+z^9-z^7-z^6-z^5-z^4-z^3+z+1");
        let m = mahler_measure(&lehmer).unwrap();
        assert!((m.mid() - 1.176_280_818_259_917_6).abs() < 1e-12, "{m:?}");
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(torsion_order(&p("z^2-z+1"), 2).unwrap(), BigInt::from(3));
        assert_eq!(torsion_order(&p("z^2-z+1"), 6).unwrap(), BigInt::zero());
        assert_eq!(torsion_order(&p("z^2-z+1"), 1).unwrap(), BigInt::one());
        let t = torsion_order(&p("z^2-3z+1"), 200).unwrap();
        let rate = t.to_f64().unwrap().ln() / 200.0;
        assert!((rate - 0.962_423_650_119_206_9).abs() < 0.02 * 0.9624);
    }

    #[test]
    fn resultant_matches_sylvester() {
        // Res(z^2 - 2, z - 3) = 3^2 - 2
        assert_eq!(resultant(&p("z^2-2"), &p("z-3")).unwrap(), Q::from_integer(7.into()));
        assert_eq!(resultant(&p("z-3"), &p("z^2-2")).unwrap(), Q::from_integer(7.into()));
        assert_eq!(resultant(&p("2z^2+1"), &p("z^2+1")).unwrap(), Q::from_integer(1.into()));
    }

    #[test]
    fn gouillon_matches_worked_value() {
        let b = gouillon_constant(&p("2z^2-3z+2")).unwrap();
        assert!((b.c - 452129.6535).abs() < 1e-3, "{}", b.c);
        assert_eq!(b.c_rounded, 452130.0);
        assert_eq!(b.nu_upper, 452131.0);
        assert!(gouillon_constant(&p("2z-3")).is_err());
    }

    #[test]
    fn baker_wustholz_formula() {
        let b = baker_wustholz_constant(&p("2z^2-3z+2")).unwrap();
        assert!((b.c / 309_231_868_366_896.7 - 1.0).abs() < 1e-12);
        assert!(baker_wustholz_constant(&p("z^2-z+1")).is_err());
    }

    #[test]
    fn convergents_of_rational() {
        let t = Q::new(1.into(), 3.into());
        let c = convergents_of(&t, 100).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].p.clone(), c[0].q.clone()), (BigInt::from(1), BigInt::from(3)));
        assert_eq!(c[0].error_bound, 0.0);
    }

    #[test]
    fn convergents_of_five_two_angle() {
        let cluster = &unit_circle_roots(&p("2z^2-3z+2")).unwrap()[0];
        let c = convergents_of(cluster, 10_000).unwrap();
        let qs: Vec<u64> = c.iter().map(|x| x.q.to_u64().unwrap()).collect();
        assert_eq!(qs, vec![4, 9, 13, 100, 113, 213, 539, 752, 4299, 5051]);
        assert!(c.iter().all(is_good_approximation));
    }

    #[test]
    fn estimator_on_synthetic_inputs() {
        // Fibonacci denominators: all partial quotients 1.
        let mut fib = vec![BigInt::from(2), BigInt::from(3)];
        while fib.len() < 40 {
            let n = &fib[fib.len() - 1] + &fib[fib.len() - 2];
            fib.push(n);
        }
        let conv: Vec<Convergent> =
            fib.iter().map(|q| Convergent { p: BigInt::one(), q: q.clone(), error_bound: 0.0 }).collect();
        let e = empirical_irrationality(&conv).unwrap();
        assert!((e.estimate - 2.0).abs() < 0.05);
        assert!(empirical_irrationality(&conv[..2]).is_err());
    }
}

//! Spectral-gap sequences.
//!
//! `σ̂ₙ` is the smallest positive value of `|Λ|` at the `n`-th roots of
//! unity. `σₙ` is the smallest positive singular value of the presentation
//! matrix with the cyclic shift substituted for `z`. The two sequences are
//! dilatationally equivalent, and the exponents `−log σₙ / log n` measure the
//! shrinkage rates.
//!
//! Zeros are always decided symbolically: `ζ` of order `N` is a root of
//! `Λ` exactly when `Φ_N | Λ`. Numerics only ever see nonzero values.

use std::f64::consts::TAU;
use std::io::Write;
use std::ops::RangeInclusive;

use nalgebra::{Complex, DMatrix};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::ball::{root_of_unity, Ball, Enclosure};
use crate::diophantine::Convergent;
use crate::error::{domain, Error, Result};
use crate::polyring::{cyclotomic, euler_phi, horner_circle, LaurentPoly};
use crate::smith::{smith_normal_form, LaurentMatrix};
use crate::unitcircle::RootCluster;

/// Default working precision for certified evaluations.
pub const DEFAULT_PRECISION_BITS: u32 = 192;

/// Default cap on `n · max(r, s)` for the matrix path.
pub const DEFAULT_DIMENSION_CAP: usize = 4096;

/// Largest `n` for which the dense circulant matrix is built as a cross-check.
pub const DENSE_CROSS_CHECK_MAX_N: u64 = 64;

const MAX_WORK_PREC: u32 = 1 << 16;
const ARC_COUNT: usize = 2048;

/// One term of a spectral-gap sequence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SigmaPoint {
    pub n: u64,
    /// Enclosure of the smallest positive value; `lo > 0`.
    pub sigma: Enclosure,
    /// `−log(mid σ)/log n`, and 0 for `n = 1`.
    pub exponent: f64,
    /// Exact zeros among the evaluated values or singular values.
    pub zero_count: u64,
}

impl SigmaPoint {
    fn new(n: u64, sigma: Enclosure, zero_count: u64) -> Self {
        // Adding 0.0 turns -0.0 into 0.0 when σ = 1.
        let exponent = if n < 2 { 0.0 } else { -sigma.mid().ln() / (n as f64).ln() + 0.0 };
        SigmaPoint { n, sigma, exponent, zero_count }
    }
}

/// How a scan distributes its independent evaluations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ScanMode {
    Sequential,
    /// Uses rayon when the `parallel` feature is on, else runs sequentially.
    #[default]
    Parallel,
}

/// Cyclotomic orders `N` with `Φ_N | p`.
pub fn cyclotomic_orders(p: &LaurentPoly) -> Vec<u64> {
    let d = p.span() as u64;
    if d == 0 {
        return Vec::new();
    }
    (1..=2 * d * d)
        .filter(|&n| euler_phi(n) <= d)
        .filter(|&n| cyclotomic(n).map(|phi| phi.divides(p)).unwrap_or(false))
        .collect()
}

/// Number of `n`-th roots of unity at which `p` vanishes.
pub fn roots_of_unity_zero_count(orders: &[u64], n: u64) -> u64 {
    orders.iter().filter(|&&m| n.is_multiple_of(m)).map(|&m| euler_phi(m)).sum()
}

#[derive(Clone, Debug)]
struct Arc {
    lo: f64,
    hi: f64,
    lower_bound: f64,
}

/// One polynomial prepared for repeated evaluation on the circle.
#[derive(Clone, Debug)]
struct CirclePoly {
    poly: LaurentPoly,
    coeffs: Vec<f64>,
    orders: Vec<u64>,
    /// Bound on the error of an `f64` evaluation of `|p(ζ)|`.
    err: f64,
    /// Arcs of the upper half circle, sorted by lower bound of `|p|`.
    arcs: Vec<Arc>,
}

fn horner_f64(coeffs: &[f64], x: f64) -> Complex<f64> {
    let (s, c) = (TAU * x).sin_cos();
    let z = Complex::new(c, s);
    coeffs.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &a| acc * z + a)
}

impl CirclePoly {
    fn new(poly: &LaurentPoly) -> Result<Self> {
        if poly.is_zero() {
            return domain("σ̂ of the zero polynomial");
        }
        if poly.eval_i64(1)?.is_zero() {
            return domain(format!("{poly} vanishes at z = 1"));
        }
        let coeffs = poly.f64_coeffs();
        let d = (coeffs.len() - 1) as f64;
        let l0: f64 = coeffs.iter().map(|c| c.abs()).sum();
        let l1: f64 = coeffs.iter().enumerate().map(|(k, c)| k as f64 * c.abs()).sum();
        let l2: f64 = coeffs.iter().enumerate().map(|(k, c)| (k * k) as f64 * c.abs()).sum();
        // Horner with |z| = 1 plus the error of sin_cos; a factor 4 of slack.
        let err = 4.0 * f64::EPSILON * ((4.0 * d + 8.0) * l0 + 8.0 * l1);
        let deriv: Vec<f64> = coeffs.iter().enumerate().map(|(k, c)| k as f64 * c).collect();
        let step = 0.5 / ARC_COUNT as f64;
        let h = TAU * step / 2.0;
        let mut arcs: Vec<Arc> = (0..ARC_COUNT)
            .map(|j| {
                let (lo, hi) = (j as f64 * step, (j + 1) as f64 * step);
                let xc = 0.5 * (lo + hi);
                let v = horner_f64(&coeffs, xc).norm();
                let dv = horner_f64(&deriv, xc).norm();
                let lower_bound = v - err - (dv + err * (d + 1.0)) * h - 0.5 * l2 * h * h;
                Arc { lo, hi, lower_bound }
            })
            .collect();
        arcs.sort_by(|a, b| a.lower_bound.total_cmp(&b.lower_bound));
        Ok(CirclePoly { poly: poly.clone(), coeffs, orders: cyclotomic_orders(poly), err, arcs })
    }

    fn vanishes(&self, k: u64, n: u64) -> bool {
        let order = n / k.gcd(&n);
        self.orders.contains(&order)
    }

    /// Indices `k <= n/2` whose `f64` value may attain the minimum, with those values.
    fn candidates(&self, n: u64) -> Vec<(u64, f64)> {
        let nf = n as f64;
        let half = n / 2;
        let mut seen: Vec<(u64, f64)> = Vec::new();
        let mut best = horner_f64(&self.coeffs, 0.0).norm();
        seen.push((0, best));
        for arc in &self.arcs {
            if arc.lower_bound > best + self.err {
                break;
            }
            let k_lo = ((arc.lo * nf).floor().max(0.0)) as u64;
            let k_hi = ((arc.hi * nf).ceil() as u64).min(half);
            for k in k_lo..=k_hi {
                if k == 0 || self.vanishes(k, n) {
                    continue;
                }
                let v = horner_f64(&self.coeffs, k as f64 / nf).norm();
                best = best.min(v);
                seen.push((k, v));
            }
        }
        let cut = best + 2.0 * self.err;
        seen.retain(|&(_, v)| v <= cut);
        seen.sort_by_key(|&(k, _)| k);
        seen.dedup_by_key(|&mut (k, _)| k);
        seen
    }
}

/// Certified `|p(e^{2πik/n})|` for a value known to be nonzero.
fn certified_abs(p: &LaurentPoly, k: u64, n: u64, bits: u32) -> Result<Ball> {
    let size_bits = p.height().numer().bits() as u32 + p.coeffs().len() as u32;
    let mut work = bits + 32 + size_bits;
    loop {
        let z = root_of_unity(k as i64, n, work);
        let v = horner_circle(p, &z).abs();
        if v.is_positive() && v.relative_width_le(bits.saturating_sub(1).max(8)) {
            return Ok(v);
        }
        work *= 2;
        if work > MAX_WORK_PREC {
            return Err(Error::Precision(format!("|{p}| at e^(2πi·{k}/{n}) not separated from zero")));
        }
    }
}

/// Prepared `σ̂ₙ` evaluator for a fixed list of polynomials.
#[derive(Clone, Debug)]
pub struct SigmaHat {
    polys: Vec<CirclePoly>,
    precision_bits: u32,
}

impl SigmaHat {
    pub fn new(lambdas: &[LaurentPoly], precision_bits: u32) -> Result<Self> {
        if lambdas.is_empty() {
            return domain("σ̂ needs at least one polynomial");
        }
        let polys = lambdas.iter().map(CirclePoly::new).collect::<Result<Vec<_>>>()?;
        Ok(SigmaHat { polys, precision_bits: precision_bits.max(16) })
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn point(&self, n: u64) -> Result<SigmaPoint> {
        if n == 0 {
            return domain("n must be positive");
        }
        let mut best: Option<Ball> = None;
        let mut zero_count = 0;
        for cp in &self.polys {
            zero_count += roots_of_unity_zero_count(&cp.orders, n);
            for (k, _) in cp.candidates(n) {
                let v = certified_abs(&cp.poly, k, n, self.precision_bits)?;
                best = Some(match best {
                    None => v,
                    Some(b) => {
                        let prec = b.prec().max(v.prec());
                        b.with_prec(prec).min_enclosure(&v.with_prec(prec))
                    }
                });
            }
        }
        let best = best.expect("z = 1 is always a candidate");
        Ok(SigmaPoint::new(n, Enclosure::from_ball(&best), zero_count))
    }

    /// `σ̂ₙ` for every `n` in the range, in order.
    pub fn scan(&self, range: RangeInclusive<u64>, mode: ScanMode) -> Result<Vec<SigmaPoint>> {
        map_ordered(range.collect(), mode, |n| self.point(n))
    }
}

fn map_ordered<T, F>(ns: Vec<u64>, mode: ScanMode, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    match mode {
        ScanMode::Sequential => ns.into_iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        ScanMode::Parallel => {
            use rayon::prelude::*;
            ns.into_par_iter().map(f).collect()
        }
        #[cfg(not(feature = "parallel"))]
        ScanMode::Parallel => ns.into_iter().map(f).collect(),
    }
}

/// `σ̂ₙ` of the list `Λ_1, ..., Λ_k`: the least nonzero `|Λᵢ(ζ)|` over all
/// `n`-th roots of unity `ζ`.
pub fn sigma_hat(lambdas: &[LaurentPoly], n: u64, precision_bits: u32) -> Result<SigmaPoint> {
    SigmaHat::new(lambdas, precision_bits)?.point(n)
}

/// Exponent sequence with its running extremes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentScan {
    pub points: Vec<SigmaPoint>,
    pub running_min: Vec<f64>,
    pub running_max: Vec<f64>,
}

impl ExponentScan {
    fn from_points(points: Vec<SigmaPoint>) -> Self {
        let mut running_min = Vec::with_capacity(points.len());
        let mut running_max = Vec::with_capacity(points.len());
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in &points {
            if p.n >= 2 {
                lo = lo.min(p.exponent);
                hi = hi.max(p.exponent);
            }
            running_min.push(lo);
            running_max.push(hi);
        }
        ExponentScan { points, running_min, running_max }
    }

    /// Minimum and maximum exponent over points with `n >= from`.
    pub fn extremes_from(&self, from: u64) -> Option<(f64, f64)> {
        self.points.iter().filter(|p| p.n >= from && p.n >= 2).fold(None, |acc, p| match acc {
            None => Some((p.exponent, p.exponent)),
            Some((a, b)) => Some((a.min(p.exponent), b.max(p.exponent))),
        })
    }
}

pub fn exponent_scan(lambdas: &[LaurentPoly], range: RangeInclusive<u64>, precision_bits: u32) -> Result<ExponentScan> {
    exponent_scan_with(lambdas, range, precision_bits, ScanMode::default())
}

pub fn exponent_scan_with(
    lambdas: &[LaurentPoly],
    range: RangeInclusive<u64>,
    precision_bits: u32,
    mode: ScanMode,
) -> Result<ExponentScan> {
    if range.is_empty() || *range.start() == 0 {
        return domain("scan range must be a nonempty range of positive integers");
    }
    let points = SigmaHat::new(lambdas, precision_bits)?.scan(range, mode)?;
    Ok(ExponentScan::from_points(points))
}

/// `σ̂` at `n = 2q` for each convergent `p/q` of the cluster's angle `t`.
///
/// There `e^{πip/q}` is a `2q`-th root of unity close to the root, which is
/// where the exponent is expected to spike.
pub fn spike_probe(
    lambda: &LaurentPoly,
    cluster: &RootCluster,
    convergents: &[Convergent],
    precision_bits: u32,
) -> Result<Vec<SigmaPoint>> {
    if cluster.is_cyclotomic() {
        return domain("spike probes need a cluster that is not a root of unity");
    }
    let ctx = SigmaHat::new(std::slice::from_ref(lambda), precision_bits)?;
    convergents
        .iter()
        .map(|c| {
            let q = c.q.to_u64().ok_or_else(|| Error::Resource(format!("denominator {} too large", c.q)))?;
            ctx.point(2 * q)
        })
        .collect()
}

/// Median exponent of the `count` scan points nearest to `n`, skipping `n`
/// itself and every index in `exclude` (other spike locations).
pub fn generic_median(scan: &[SigmaPoint], n: u64, count: usize, exclude: &[u64]) -> Option<f64> {
    let mut near: Vec<&SigmaPoint> = scan.iter().filter(|p| p.n != n && p.n >= 2 && !exclude.contains(&p.n)).collect();
    near.sort_by_key(|p| (p.n.abs_diff(n), p.n));
    near.truncate(count);
    if near.is_empty() {
        return None;
    }
    let mut e: Vec<f64> = near.iter().map(|p| p.exponent).collect();
    e.sort_by(f64::total_cmp);
    let m = e.len() / 2;
    Some(if e.len().is_multiple_of(2) { 0.5 * (e[m - 1] + e[m]) } else { e[m] })
}

/// `A(ζ)` for `ζ = e^{2πik/n}`, in double precision.
pub fn fourier_block(a: &LaurentMatrix, k: u64, n: u64) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        let p = a.get(i, j);
        let mut acc = Complex::new(0.0, 0.0);
        for (off, c) in p.coeffs().iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            if c == 0.0 {
                continue;
            }
            let e = (p.min_exp() + off as i64).rem_euclid(n as i64) as u64;
            let m = ((k as u128 * e as u128) % n as u128) as f64 / n as f64;
            let (s, co) = (TAU * m).sin_cos();
            acc += Complex::new(co, s) * c;
        }
        acc
    })
}

/// Singular values of `Aₙ` from its Fourier blocks, ascending.
pub fn block_singular_values(a: &LaurentMatrix, n: u64) -> Vec<f64> {
    let mut out: Vec<f64> = (0..n).flat_map(|k| fourier_block(a, k, n).singular_values().iter().copied().collect::<Vec<_>>()).collect();
    out.sort_by(f64::total_cmp);
    out
}

/// `Aₙ` with the `n × n` cyclic shift substituted for `z`, as a real `nr × ns` matrix.
pub fn dense_circulant(a: &LaurentMatrix, n: u64) -> DMatrix<f64> {
    let nn = n as usize;
    let mut m = DMatrix::zeros(a.rows() * nn, a.cols() * nn);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let p = a.get(i, j);
            for (off, c) in p.coeffs().iter().enumerate() {
                let c = c.to_f64().unwrap_or(f64::NAN);
                let e = (p.min_exp() + off as i64).rem_euclid(n as i64) as usize;
                // z^e acts as the shift sending basis vector b to b + e.
                for b in 0..nn {
                    m[(i * nn + b, j * nn + (b + e) % nn)] += c;
                }
            }
        }
    }
    m
}

/// Singular values of the dense circulant form, ascending.
pub fn dense_singular_values(a: &LaurentMatrix, n: u64) -> Vec<f64> {
    let mut out: Vec<f64> = dense_circulant(a, n).singular_values().iter().copied().collect();
    out.sort_by(f64::total_cmp);
    out
}

fn check_cap(a: &LaurentMatrix, n: u64, cap: usize) -> Result<()> {
    let dim = (n as u128) * a.rows().max(a.cols()) as u128;
    if dim > cap as u128 {
        return Err(Error::Resource(format!(
            "n·max(r,s) = {dim} exceeds the dimension cap {cap}"
        )));
    }
    Ok(())
}

/// Exact number of zero singular values of `Aₙ`: `n(min(r,s) − rank)` plus
/// one per invariant factor and `n`-th root of unity at which it vanishes.
pub fn matrix_zero_count(a: &LaurentMatrix, n: u64) -> u64 {
    let snf = smith_normal_form(a);
    let deficiency = (a.rows().min(a.cols()) - snf.rank) as u64;
    n * deficiency
        + snf
            .nonunit_factors()
            .iter()
            .map(|f| roots_of_unity_zero_count(&cyclotomic_orders(f), n))
            .sum::<u64>()
}

/// `σₙ` of a presentation matrix, with the zero count taken from its Smith form.
pub fn sigma_matrix(a: &LaurentMatrix, n: u64, numeric_tolerance: f64) -> Result<SigmaPoint> {
    sigma_matrix_capped(a, n, numeric_tolerance, DEFAULT_DIMENSION_CAP)
}

pub fn sigma_matrix_capped(a: &LaurentMatrix, n: u64, numeric_tolerance: f64, cap: usize) -> Result<SigmaPoint> {
    if a.is_zero() {
        return domain("presentation matrix is zero");
    }
    if n == 0 {
        return domain("n must be positive");
    }
    check_cap(a, n, cap)?;
    sigma_matrix_with_zero_count(a, n, numeric_tolerance, matrix_zero_count(a, n), cap)
}

/// `σₙ` when the number of exact zero singular values is supplied by the caller.
///
/// The enclosure is numeric, not certified: the SVD value plus or minus
/// `max(tol, 64 ε max(r,s) ‖A(ζ)‖_F)`.
pub fn sigma_matrix_with_zero_count(
    a: &LaurentMatrix,
    n: u64,
    numeric_tolerance: f64,
    zero_count: u64,
    cap: usize,
) -> Result<SigmaPoint> {
    check_cap(a, n, cap)?;
    let mut values = Vec::new();
    let mut frob: f64 = 0.0;
    for k in 0..n {
        let block = fourier_block(a, k, n);
        frob = frob.max(block.norm());
        values.extend(block.singular_values().iter().copied());
    }
    values.sort_by(f64::total_cmp);
    let slack = numeric_tolerance.max(64.0 * f64::EPSILON * a.rows().max(a.cols()) as f64 * frob);
    if n <= DENSE_CROSS_CHECK_MAX_N {
        let dense = dense_singular_values(a, n);
        let dense_slack = slack.max(64.0 * f64::EPSILON * (n as f64) * frob);
        if dense.len() != values.len() || dense.iter().zip(&values).any(|(x, y)| (x - y).abs() > dense_slack) {
            return Err(Error::Precision(format!("Fourier blocks and dense circulant disagree at n = {n}")));
        }
    }
    let idx = zero_count as usize;
    let Some(&s) = values.get(idx) else {
        return domain(format!("zero count {zero_count} leaves no positive singular value"));
    };
    let lo = s - slack;
    if lo <= 0.0 {
        return Err(Error::Precision(format!("σ_{n} ≈ {s:e} is not resolved above the tolerance {slack:e}")));
    }
    Ok(SigmaPoint::new(n, Enclosure::new(lo, s + slack), zero_count))
}

/// Ratio of `σₙ(A)` to `σ̂ₙ` of the invariant factors of `A` at one `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DilatationPoint {
    pub n: u64,
    pub sigma: SigmaPoint,
    pub sigma_hat: SigmaPoint,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DilatationReport {
    pub factors: Vec<LaurentPoly>,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub points: Vec<DilatationPoint>,
}

/// Spread of `σₙ(A) / σ̂ₙ(Λ_1, ..., Λ_k)` over a range of `n`.
pub fn dilatation_compare(a: &LaurentMatrix, range: RangeInclusive<u64>, numeric_tolerance: f64) -> Result<DilatationReport> {
    if range.is_empty() || *range.start() == 0 {
        return domain("range must be a nonempty range of positive integers");
    }
    let snf = smith_normal_form(a);
    let mut factors = snf.nonunit_factors();
    if factors.is_empty() {
        factors.push(LaurentPoly::one());
    }
    let hat = SigmaHat::new(&factors, DEFAULT_PRECISION_BITS)?;
    let points = map_ordered(range.collect(), ScanMode::default(), |n| {
        let sigma = sigma_matrix(a, n, numeric_tolerance)?;
        let sigma_hat = hat.point(n)?;
        let ratio = sigma.sigma.mid() / sigma_hat.sigma.mid();
        Ok(DilatationPoint { n, sigma, sigma_hat, ratio })
    })?;
    let min_ratio = points.iter().map(|p| p.ratio).fold(f64::INFINITY, f64::min);
    let max_ratio = points.iter().map(|p| p.ratio).fold(f64::NEG_INFINITY, f64::max);
    Ok(DilatationReport { factors, min_ratio, max_ratio, points })
}

/// Writes `n,sigma_lo,sigma_hi,exponent,zero_count` rows.
pub fn write_csv<W: Write>(points: &[SigmaPoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Input(e.to_string());
    w.write_record(["n", "sigma_lo", "sigma_hi", "exponent", "zero_count"]).map_err(io)?;
    for p in points {
        w.write_record([
            p.n.to_string(),
            format!("{:e}", p.sigma.lo),
            format!("{:e}", p.sigma.hi),
            format!("{}", p.exponent),
            p.zero_count.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Input(e.to_string()))
}

/// True if `v` lies in the enclosure up to a relative slack.
pub fn enclosure_contains_rel(e: &Enclosure, v: f64, rel: f64) -> bool {
    let s = rel * v.abs();
    e.lo - s <= v && v <= e.hi + s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diophantine::convergents_of;
    use crate::unitcircle::unit_circle_roots;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn trefoil_small_n() {
        let s = sigma_hat(&[p("z^2-z+1")], 2, 64).unwrap();
        assert!(s.sigma.contains(1.0));
        assert_eq!(s.zero_count, 0);
        let s = sigma_hat(&[p("z^2-z+1")], 6, 64).unwrap();
        assert!(s.sigma.contains(1.0));
        assert_eq!(s.zero_count, 2);
    }

    #[test]
    fn brute_force_agreement() {
        let x = p("2z^2-3z+2");
        for n in [9u64, 17, 64, 113, 1000] {
            let s = sigma_hat(std::slice::from_ref(&x), n, 128).unwrap();
            let brute = (0..n)
                .map(|k| {
                    let z = Complex::from_polar(1.0, TAU * k as f64 / n as f64);
                    (z * z * 2.0 - z * 3.0 + 2.0).norm()
                })
                .fold(f64::INFINITY, f64::min);
            assert!(
                s.sigma.lo - 1e-14 <= brute && brute <= s.sigma.hi + 1e-14,
                "n = {n}: {:?} vs {brute}",
                s.sigma
            );
        }
    }

    #[test]
    fn laurent_shift_is_irrelevant() {
        let a = sigma_hat(&[p("z^-1 - 1 + z")], 50, 64).unwrap();
        let b = sigma_hat(&[p("z^2-z+1")], 50, 64).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_root_at_one() {
        assert!(sigma_hat(&[p("z-1")], 5, 64).is_err());
    }

    #[test]
    fn scan_modes_agree() {
        let l = [p("2z^2-3z+2")];
        let a = exponent_scan_with(&l, 2..=300, 96, ScanMode::Sequential).unwrap();
        let b = exponent_scan_with(&l, 2..=300, 96, ScanMode::Parallel).unwrap();
        assert_eq!(a, b);
        assert!(a.running_min.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn matrix_examples() {
        let a = LaurentMatrix::from_strs(&[&["z-1"]]).unwrap();
        let s = sigma_matrix(&a, 4, 1e-12).unwrap();
        assert_eq!(s.zero_count, 1);
        assert!((s.sigma.mid() - 2f64.sqrt()).abs() < 1e-12);

        let a = LaurentMatrix::diagonal(&[p("z^2-z+1"), p("1")]);
        let s = sigma_matrix(&a, 2, 1e-12).unwrap();
        assert!((s.sigma.mid() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn block_and_dense_spectra_agree() {
        let a = LaurentMatrix::from_strs(&[&["z^2-z+1", "z"], &["2", "z^-1+3"]]).unwrap();
        for n in 1..=8 {
            let b = block_singular_values(&a, n);
            let d = dense_singular_values(&a, n);
            assert_eq!(b.len(), d.len());
            for (x, y) in b.iter().zip(&d) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn dimension_cap() {
        let a = LaurentMatrix::from_strs(&[&["z-2"]]).unwrap();
        assert!(matches!(sigma_matrix(&a, 5000, 1e-12), Err(Error::Resource(_))));
    }

    #[test]
    fn diagonal_ratio_is_one() {
        let a = LaurentMatrix::diagonal(&[p("2z^2-3z+2"), p("1")]);
        let r = dilatation_compare(&a, 2..=40, 1e-12).unwrap();
        assert!((r.min_ratio - 1.0).abs() < 1e-9 && (r.max_ratio - 1.0).abs() < 1e-9);
    }

    #[test]
    fn spikes_at_convergents() {
        let x = p("2z^2-3z+2");
        let c = &unit_circle_roots(&x).unwrap()[0];
        let conv = convergents_of(c, 100).unwrap();
        let spikes = spike_probe(&x, c, &conv[..1], 128).unwrap();
        assert_eq!(spikes[0].n, 8);
        // 9 is no generic neighbour: 2/9 is the next convergent, so e^{2πi/9} is close too.
        let near: Vec<f64> = [7u64, 10].iter().map(|&n| sigma_hat(std::slice::from_ref(&x), n, 128).unwrap().exponent).collect();
        assert!(near.iter().all(|&e| spikes[0].exponent > e));

        let cyc = &unit_circle_roots(&p("z^2-z+1")).unwrap()[0];
        assert!(spike_probe(&x, cyc, &conv, 128).is_err());
    }

    #[test]
    fn median_of_neighbours() {
        let pts: Vec<SigmaPoint> = (2..=20).map(|n| SigmaPoint::new(n, Enclosure::point(1.0 / n as f64), 0)).collect();
        assert_eq!(generic_median(&pts, 10, 4, &[11]), Some(1.0));
        assert_eq!(generic_median(&pts[..1], 2, 3, &[]), None);
    }

    #[test]
    fn csv_rows() {
        let pts = exponent_scan(&[p("z^2-3z+1")], 2..=3, 64).unwrap().points;
        let mut buf = Vec::new();
        write_csv(&pts, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,sigma_lo,sigma_hi,exponent,zero_count\n2,"));
        assert_eq!(text.lines().count(), 3);
    }
}

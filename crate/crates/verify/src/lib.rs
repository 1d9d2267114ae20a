//! Independent numerical oracles for cross-checking `knotgap`.
//!
//! Everything here works in plain `f64`/`Complex64` arithmetic and shares no
//! numerical code with the library: Mahler measures come from tanh-sinh
//! quadrature of `log |p|` over the circle, `σ̂ₙ` from evaluating every root of
//! unity, and circle minima from a Lipschitz branch and bound.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::f64::consts::TAU;

use knotgap::polyring::{cyclotomic, euler_phi, squarefree_decompose, LaurentPoly};
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

/// Coefficients as doubles, paired with their exponents.
fn terms(p: &LaurentPoly) -> Vec<(f64, f64)> {
    let lo = p.min_exp();
    p.f64_coeffs().into_iter().enumerate().map(|(j, c)| ((lo + j as i64) as f64, c)).collect()
}

/// `p(e^{iθ})` by direct summation.
pub fn eval_circle(p: &LaurentPoly, theta: f64) -> Complex64 {
    terms(p).into_iter().map(|(k, c)| Complex64::from_polar(c, k * theta)).sum()
}

/// All complex roots of an ordinary polynomial (coefficients from the
/// constant term up) by the Weierstrass–Durand–Kerner iteration.
pub fn durand_kerner(coeffs: &[f64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.last() == Some(&0.0) {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = c[deg];
    let monic: Vec<f64> = c.iter().map(|x| x / lead).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let radius = 1.0 + monic[..deg].iter().map(|a| a.abs()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32) * (radius / seed.norm().powi(k as i32).max(1.0))).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Mahler measure by tanh-sinh quadrature of `∫₀¹ log |p(e^{2πiθ})| dθ`.
///
/// The interval is cut at the angles of unit-circle roots so that every
/// logarithmic singularity sits at an endpoint, where the double-exponential
/// rule handles it.
pub fn mahler_quadrature(p: &LaurentPoly) -> f64 {
    let fac = squarefree_decompose(p).expect("nonzero polynomial");
    let radical = fac.radical();
    let mut cuts: Vec<f64> = durand_kerner(&radical.to_ordinary().f64_coeffs())
        .into_iter()
        .filter(|r| (r.norm() - 1.0).abs() < 1e-7)
        .map(|r| r.arg().rem_euclid(TAU) / TAU)
        .collect();
    cuts.extend((0..=16).map(|j| j as f64 / 16.0));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    // Each square-free factor is evaluated on its own, so a root of
    // multiplicity e costs no more accuracy than a simple one.
    let log_abs = |q: &LaurentPoly, x: f64| {
        let v = eval_circle(q, TAU * x).norm();
        if v > 0.0 {
            v.ln()
        } else {
            f64::MIN_POSITIVE.ln()
        }
    };
    let f = |x: f64| fac.factors.iter().map(|(q, e)| *e as f64 * log_abs(q, x)).sum::<f64>();
    let m: f64 = fac.content.abs().to_f64().expect("finite content").ln()
        + cuts.windows(2).map(|w| quadrature::integrate(f, w[0], w[1], 1e-14).integral).sum::<f64>();
    m.exp()
}

/// `σ̂ₙ(Λ)`: the least nonzero `|Λ(e^{2πik/n})|`, by evaluating all `n` roots.
///
/// A value is treated as an exact zero when `Φ_m` divides `Λ`, `m` being the
/// order of the root. Returns the minimum and the number of exact zeros.
pub fn sigma_hat_brute(p: &LaurentPoly, n: u64) -> (f64, u64) {
    let mut vanishes: HashMap<u64, bool> = HashMap::new();
    let mut best = f64::INFINITY;
    let mut zeros = 0;
    for k in 0..n {
        let m = n / gcd(k, n);
        // Φ_m has degree φ(m), so it can only divide Λ when φ(m) <= deg Λ.
        let zero = *vanishes
            .entry(m)
            .or_insert_with(|| euler_phi(m) as usize <= p.span() && cyclotomic(m).expect("positive order").divides(p));
        if zero {
            zeros += 1;
            continue;
        }
        best = best.min(eval_circle(p, TAU * k as f64 / n as f64).norm());
    }
    (best, zeros)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(PartialEq)]
struct Arc {
    bound: f64,
    a: f64,
    b: f64,
}

impl Eq for Arc {}

impl PartialOrd for Arc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Arc {
    // Smallest lower bound first.
    fn cmp(&self, other: &Self) -> Ordering {
        other.bound.total_cmp(&self.bound)
    }
}

/// Enclosure `[lo, hi]` of `min_{|z|=1} |Λ(z)|` with `hi - lo <= tol`.
///
/// On an arc of half-width `h` around `θ`, `|Λ| >= |Λ(e^{iθ})| - L h` with
/// `L = Σ |k c_k|` (exponents centred, which leaves `|Λ|` unchanged). The
/// rounding of each evaluation is charged against the lower bound.
pub fn circle_minimum(p: &LaurentPoly, tol: f64) -> (f64, f64) {
    let t = terms(p);
    let centre = 0.5 * (p.min_exp() + p.max_exp()) as f64;
    let centred: Vec<(f64, f64)> = t.iter().map(|&(k, c)| (k - centre, c)).collect();
    let lip: f64 = centred.iter().map(|(k, c)| (k * c).abs()).sum();
    let slack = 1e-13 * centred.iter().map(|(_, c)| c.abs()).sum::<f64>() * (centred.len() as f64 + 2.0);
    let val = |x: f64| -> f64 { centred.iter().map(|&(k, c)| Complex64::from_polar(c, k * x)).sum::<Complex64>().norm() };
    let arc = |a: f64, b: f64| {
        let m = 0.5 * (a + b);
        (Arc { bound: val(m) - lip * 0.5 * (b - a) - slack, a, b }, val(m))
    };
    let mut heap = BinaryHeap::new();
    let mut hi = f64::INFINITY;
    for j in 0..64 {
        let (a, v) = arc(TAU * j as f64 / 64.0, TAU * (j + 1) as f64 / 64.0);
        hi = hi.min(v);
        heap.push(a);
    }
    loop {
        let top = heap.pop().expect("arcs remain");
        if hi - top.bound <= tol || top.b - top.a < 1e-15 {
            return (top.bound.max(0.0).min(hi), hi);
        }
        let m = 0.5 * (top.a + top.b);
        for (a, b) in [(top.a, m), (m, top.b)] {
            let (next, v) = arc(a, b);
            hi = hi.min(v);
            heap.push(next);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn roots_of_quadratic() {
        let mut r = durand_kerner(&[1.0, -3.0, 1.0]);
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        let phi2 = (3.0 - 5f64.sqrt()) / 2.0;
        assert!((r[0].re - phi2).abs() < 1e-12 && r[0].im.abs() < 1e-12);
        assert!((r[1].re - 1.0 / phi2).abs() < 1e-12);
    }

    #[test]
    fn quadrature_of_figure_eight() {
        let m = mahler_quadrature(&p("z^2-3z+1"));
        assert!((m - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-10, "{m}");
    }

    #[test]
    fn quadrature_with_circle_roots() {
        // All roots on the circle: measure is the leading coefficient.
        assert!((mahler_quadrature(&p("2z^2-3z+2")) - 2.0).abs() < 1e-10);
        assert!((mahler_quadrature(&p("(z^2-z+1)^3")) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn brute_sigma_of_trefoil() {
        // z^2 - z + 1 vanishes at primitive sixth roots.
        let (s, zeros) = sigma_hat_brute(&p("z^2-z+1"), 6);
        assert_eq!(zeros, 2);
        assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn circle_minimum_of_figure_eight() {
        let (lo, hi) = circle_minimum(&p("z^2-3z+1"), 1e-10);
        assert!(lo <= 1.0 && 1.0 <= hi + 1e-12 && hi - lo <= 1e-10, "[{lo}, {hi}]");
    }

    #[test]
    fn circle_minimum_with_a_root() {
        let (lo, hi) = circle_minimum(&p("2z^2-3z+2"), 1e-9);
        assert!(lo == 0.0 && hi <= 1e-9);
    }
}

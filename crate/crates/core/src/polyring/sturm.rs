use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{q_int, LaurentPoly, Q};
use crate::error::{domain, Error, Result};

/// Open interval `(lo, hi)` containing exactly one real root of its polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolatingInterval {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lo: Q,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub hi: Q,
}

impl IsolatingInterval {
    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Q {
        (&self.lo + &self.hi) / q_int(2)
    }
}

/// Sturm chain of an ordinary polynomial. Each member is rescaled by a
/// positive constant to keep coefficients small; that does not change signs.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<LaurentPoly>,
}

fn positive_primitive(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return LaurentPoly::zero();
    }
    p.scale(&p.content().recip())
}

impl SturmChain {
    pub fn new(p: &LaurentPoly) -> Result<Self> {
        if p.is_zero() {
            return domain("Sturm chain of the zero polynomial");
        }
        if p.min_exp() < 0 {
            return domain("Sturm chain needs an ordinary polynomial");
        }
        let p0 = positive_primitive(p);
        let mut chain = vec![p0.clone()];
        let p1 = positive_primitive(&p0.derivative());
        if !p1.is_zero() {
            chain.push(p1);
            loop {
                let n = chain.len();
                let (_, r) = chain[n - 2].poly_div_rem(&chain[n - 1])?;
                if r.is_zero() {
                    break;
                }
                chain.push(positive_primitive(&r).neg());
            }
        }
        Ok(SturmChain { chain })
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.chain[0]
    }

    /// Number of sign changes at `x`, zeros skipped.
    pub fn variations(&self, x: &Q) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let v = p.eval(x).expect("ordinary polynomial");
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct real roots in `(lo, hi)`; both endpoints must be non-roots.
    pub fn count(&self, lo: &Q, hi: &Q) -> Result<usize> {
        if lo >= hi {
            return domain("Sturm count needs lo < hi");
        }
        for x in [lo, hi] {
            if self.chain[0].eval(x)?.is_zero() {
                return Err(Error::EndpointRoot(x.to_string()));
            }
        }
        Ok(self.variations(lo) - self.variations(hi))
    }
}

/// Exact number of distinct real roots of `p` in `(lo, hi)`.
pub fn sturm_count(p: &LaurentPoly, lo: &Q, hi: &Q) -> Result<usize> {
    SturmChain::new(p)?.count(lo, hi)
}

/// Picks a non-root splitting point strictly inside `(lo, hi)`, close to the middle.
fn split_point(p: &LaurentPoly, lo: &Q, hi: &Q) -> Q {
    let w = hi - lo;
    let mut k = 2i64;
    loop {
        for num in [1, k - 1] {
            let x = lo + &w * Q::new(num.into(), k.into());
            if !p.eval(&x).expect("ordinary polynomial").is_zero() {
                return x;
            }
        }
        k += 1;
    }
}

/// Isolating intervals for all real roots of square-free `p` in `(lo, hi)`,
/// sorted ascending. Endpoints must be non-roots.
pub fn isolate_real_roots(p: &LaurentPoly, lo: &Q, hi: &Q) -> Result<Vec<IsolatingInterval>> {
    let chain = SturmChain::new(p)?;
    let total = chain.count(lo, hi)?;
    let mut out = Vec::with_capacity(total);
    let mut stack = vec![(lo.clone(), hi.clone(), total)];
    while let Some((a, b, n)) = stack.pop() {
        match n {
            0 => {}
            1 => out.push(IsolatingInterval { lo: a, hi: b }),
            _ => {
                let m = split_point(chain.poly(), &a, &b);
                let left = chain.count(&a, &m)?;
                stack.push((m.clone(), b, n - left));
                stack.push((a, m, left));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Bisects an isolating interval of a simple root until its width is at most `width`.
pub fn refine_root(p: &LaurentPoly, iv: &IsolatingInterval, width: &Q) -> Result<IsolatingInterval> {
    let sign = |x: &Q| -> Result<i8> {
        let v = p.eval(x)?;
        Ok(if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        })
    };
    let (mut a, mut b) = (iv.lo.clone(), iv.hi.clone());
    let sa = sign(&a)?;
    if sa == 0 || sa == sign(&b)? {
        return domain("interval does not bracket a simple root");
    }
    while &(&b - &a) > width {
        let m = (&a + &b) / q_int(2);
        match sign(&m)? {
            0 => {
                let eps = (&b - &a) / q_int(8);
                let (l, h) = (&m - &eps, &m + &eps);
                a = l;
                b = h;
                break;
            }
            s if s == sa => a = m,
            _ => b = m,
        }
    }
    Ok(IsolatingInterval { lo: a, hi: b })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn counts() {
        let (lo, hi) = (q_int(-2), q_int(2));
        assert_eq!(sturm_count(&p("z-1"), &lo, &hi).unwrap(), 1);
        assert_eq!(sturm_count(&p("z^2-3z+1"), &lo, &hi).unwrap(), 1);
        assert_eq!(sturm_count(&p("2z-3"), &lo, &hi).unwrap(), 1);
        assert_eq!(sturm_count(&p("z^2+1"), &lo, &hi).unwrap(), 0);
    }

    #[test]
    fn endpoint_root_is_reported() {
        let r = sturm_count(&p("z-2"), &q_int(-2), &q_int(2));
        assert!(matches!(r, Err(Error::EndpointRoot(_))));
    }

    #[test]
    fn isolation_separates_close_roots() {
        let x = p("(1000z-1)(1001z-1)(z+1)");
        let ivs = isolate_real_roots(&x, &q_int(-2), &q_int(2)).unwrap();
        assert_eq!(ivs.len(), 3);
        for iv in &ivs {
            assert_eq!(sturm_count(&x, &iv.lo, &iv.hi).unwrap(), 1);
        }
    }

    #[test]
    fn isolation_survives_rational_midpoints() {
        // Roots at 0 and 1/2 sit exactly on naive bisection points.
        let x = p("z(2z-1)(z+1)");
        let ivs = isolate_real_roots(&x, &q_int(-2), &q_int(2)).unwrap();
        assert_eq!(ivs.len(), 3);
    }

    #[test]
    fn refinement_narrows() {
        let x = p("z^2-2");
        let ivs = isolate_real_roots(&x, &q_int(0), &q_int(2)).unwrap();
        let w = Q::new(1.into(), (1u64 << 40).into());
        let r = refine_root(&x, &ivs[0], &w).unwrap();
        assert!(r.width() <= w);
        assert!(&r.lo * &r.lo < q_int(2));
    }
}

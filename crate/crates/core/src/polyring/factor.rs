use num_traits::{One, Zero};
use serde::Serialize;

use super::{LaurentPoly, Q};
use crate::error::{domain, Result};

/// `content * z^unit_shift * prod(factor_i ^ e_i)` with pairwise coprime,
/// square-free, normalized primitive factors sorted by exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyFactorization {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub content: Q,
    pub unit_shift: i64,
    pub factors: Vec<(LaurentPoly, u32)>,
}

impl PolyFactorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::monomial(self.content.clone(), self.unit_shift);
        for (f, e) in &self.factors {
            acc = acc.mul(&f.pow(*e));
        }
        acc
    }

    /// Product of the distinct factors (the radical, up to content).
    pub fn radical(&self) -> LaurentPoly {
        self.factors.iter().fold(LaurentPoly::one(), |acc, (f, _)| acc.mul(f))
    }
}

/// Yun's square-free decomposition over the rationals.
pub fn squarefree_decompose(p: &LaurentPoly) -> Result<PolyFactorization> {
    if p.is_zero() {
        return domain("square-free decomposition of the zero polynomial");
    }
    let unit_shift = p.min_exp();
    let f = p.normalize_unchecked();
    let mut factors = Vec::new();
    if f.span() > 0 {
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_divide(&a0)?;
        let c = df.exact_divide(&a0)?;
        let mut d = c.sub(&b.derivative());
        let mut i = 1u32;
        while b.span() > 0 {
            let a = b.gcd(&d);
            let b_next = b.exact_divide(&a)?;
            let c_next = d.exact_divide(&a)?;
            d = c_next.sub(&b_next.derivative());
            if a.span() > 0 {
                factors.push((a, i));
            }
            b = b_next;
            i += 1;
        }
    }
    let mut lead = Q::one();
    for (g, e) in &factors {
        lead *= num_traits::pow::pow(g.leading(), *e as usize);
    }
    let content = p.leading() / lead;
    Ok(PolyFactorization { content, unit_shift, factors })
}

pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub(crate) fn mobius(n: u64) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The `n`-th cyclotomic polynomial via the Möbius product over divisors.
pub fn cyclotomic(n: u64) -> Result<LaurentPoly> {
    if n == 0 {
        return domain("cyclotomic polynomial of order 0");
    }
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for d in divisors(n) {
        let zd = LaurentPoly::z().pow(d as u32).sub(&LaurentPoly::one());
        match mobius(n / d) {
            1 => num = num.mul(&zd),
            -1 => den = den.mul(&zd),
            _ => {}
        }
    }
    let phi = num.exact_divide(&den)?;
    debug_assert!(!phi.leading().is_zero());
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn yun_examples() {
        let f = squarefree_decompose(&p("(z^2-z+1)^2(2z^2-3z+2)")).unwrap();
        assert_eq!(f.factors, vec![(p("2z^2-3z+2"), 1), (p("z^2-z+1"), 2)]);
        let g = squarefree_decompose(&p("z^2-3z+1")).unwrap();
        assert_eq!(g.factors, vec![(p("z^2-3z+1"), 1)]);
        let h = squarefree_decompose(&p("(z-1)^3")).unwrap();
        assert_eq!(h.factors, vec![(p("z-1"), 3)]);
    }

    #[test]
    fn yun_reassembles_with_content_and_shift() {
        let x = p("-3/2 z^-2 (z-1)^3 (z+2)^2 (z^2+1)");
        let f = squarefree_decompose(&x).unwrap();
        assert_eq!(f.expand(), x);
        assert_eq!(f.unit_shift, -2);
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1).unwrap(), p("z-1"));
        assert_eq!(cyclotomic(6).unwrap(), p("z^2-z+1"));
        assert_eq!(cyclotomic(12).unwrap(), p("z^4-z^2+1"));
        assert!(cyclotomic(0).is_err());
        for n in 1..40 {
            assert_eq!(cyclotomic(n).unwrap().span() as u64, euler_phi(n));
        }
    }

    #[test]
    fn arithmetic_helpers() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(euler_phi(36), 12);
    }
}

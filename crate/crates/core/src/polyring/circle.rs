use num_integer::Integer;

use super::{cyclotomic, euler_phi, LaurentPoly};
use crate::ball::{root_of_unity, Ball, ComplexBall};

/// Horner evaluation of the ordinary part of `p` at a complex ball. The
/// factor `z^min_exp` has modulus one on the circle and is dropped.
pub(crate) fn horner_circle(p: &LaurentPoly, z: &ComplexBall) -> ComplexBall {
    let prec = z.prec();
    let mut acc = ComplexBall::zero(prec);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z).add_real(&Ball::from_rational(c, prec));
    }
    acc
}

/// True if `e^{2 pi i k/n}` is an exact root of `p`.
pub(crate) fn vanishes_at_root_of_unity(p: &LaurentPoly, k: i64, n: u64) -> bool {
    let order = n / (k.rem_euclid(n as i64) as u64).gcd(&n);
    if euler_phi(order) as usize > p.span() {
        return false;
    }
    cyclotomic(order).map(|phi| phi.divides(p)).unwrap_or(false)
}

/// Certified enclosure of `|p(e^{2 pi i k/n})|`.
///
/// Exact zeros are detected symbolically and returned as the exact zero
/// ball. Otherwise the working precision is raised until the relative width
/// is at most `2^(1 - precision_bits)`; the ball is returned at that working
/// precision.
pub fn eval_on_circle(p: &LaurentPoly, k: i64, n: u64, precision_bits: u32) -> Ball {
    assert!(n > 0, "root of unity of order 0");
    let precision_bits = precision_bits.max(16);
    if p.is_zero() || vanishes_at_root_of_unity(p, k, n) {
        return Ball::zero(precision_bits);
    }
    let size_bits = p.height().numer().bits() as u32 + p.coeffs().len() as u32;
    let mut work = precision_bits + 32 + size_bits;
    loop {
        let z = root_of_unity(k, n, work);
        let v = horner_circle(p, &z).abs();
        if v.relative_width_le(precision_bits - 1) {
            return v;
        }
        work *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{q_int, Q};

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn small_values() {
        let x = p("z^2-z+1");
        assert!(eval_on_circle(&x, 0, 1, 64).contains_rational(&q_int(1)));
        assert!(eval_on_circle(&x, 1, 2, 64).contains_rational(&q_int(3)));
        assert!(eval_on_circle(&x, 1, 3, 64).contains_rational(&q_int(2)));
        let zero = eval_on_circle(&x, 1, 6, 64);
        assert!(zero.is_exact() && zero.contains_rational(&Q::from_integer(0.into())));
    }

    #[test]
    fn relative_width_contract() {
        let x = p("2z^2-3z+2");
        for bits in [16u32, 64, 200] {
            let v = eval_on_circle(&x, 1, 9, bits);
            assert!(v.relative_width_le(bits - 1));
        }
    }

    #[test]
    fn higher_precision_nests() {
        let x = p("z^4-3z^3+3z^2-3z+1");
        let lo = eval_on_circle(&x, 3, 17, 40);
        let hi = eval_on_circle(&x, 3, 17, 300);
        assert!(lo.contains_rational(&hi.mid()));
    }
}

use knotgap::polyring::{parse_poly, squarefree_decompose, LaurentPoly};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    (-3i64..=3, prop::collection::vec(-5i64..=5, 0..=7)).prop_map(|(e, c)| LaurentPoly::from_ints(e, &c))
}

fn nonzero() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(&a.mul(&LaurentPoly::one()), &a);
    }

    #[test]
    fn display_parses_back(a in poly()) {
        let text = a.to_string();
        prop_assert_eq!(parse_poly(&text).unwrap(), a, "via {}", text);
    }

    #[test]
    fn division_identity(a in poly(), d in nonzero()) {
        let (q, r) = a.div_rem(&d).unwrap();
        prop_assert_eq!(q.mul(&d).add(&r), a);
        prop_assert!(r.is_zero() || r.span() < d.span());
    }

    #[test]
    fn exact_division_of_products(a in nonzero(), b in nonzero()) {
        prop_assert_eq!(&a.mul(&b).exact_divide(&b).unwrap(), &a);
        prop_assert!(b.divides(&a.mul(&b)));
    }

    #[test]
    fn normalization_is_idempotent(a in nonzero()) {
        let n = a.normalize_primitive().unwrap();
        prop_assert!(n.is_normalized());
        prop_assert_eq!(&n.normalize_primitive().unwrap(), &n);
        prop_assert_eq!(a.neg().shift(2).normalize_primitive().unwrap(), n);
    }

    #[test]
    fn squarefree_decomposition_expands_back(a in nonzero(), b in nonzero()) {
        let p = a.mul(&b).mul(&b);
        let fac = squarefree_decompose(&p).unwrap();
        prop_assert_eq!(fac.expand(), p);
        for (f, _) in &fac.factors {
            prop_assert_eq!(f.gcd(&f.derivative()).span(), 0, "{} is not square-free", f);
        }
    }

    #[test]
    fn gcd_divides_both(a in nonzero(), b in nonzero(), c in nonzero()) {
        let g = a.mul(&c).gcd(&b.mul(&c));
        prop_assert!(g.divides(&a.mul(&c)) && g.divides(&b.mul(&c)));
        prop_assert!(c.divides(&g));
    }
}

use cyclo_hecke::cyclo::Cyclo;
use cyclo_hecke::laurent::{Bindings, Laurent, Monomial, VarSet};
use cyclo_hecke::ratfn::Frac;
use cyclo_hecke::BigRational;
use proptest::prelude::*;

type Q = BigRational;
type P = Laurent<Q>;
type F = Frac<Q>;
type Terms = Vec<(Vec<i64>, [i32; 3])>;

const ORDERS: [u32; 4] = [1, 3, 4, 6];

fn vars() -> VarSet {
    VarSet::new(&["q", "x", "y"])
}

fn cyclo(order: u32, coeffs: &[i64]) -> Cyclo<Q> {
    Cyclo::from_powers(order, coeffs.iter().map(|&c| Q::from_integer(c.into())).collect())
}

fn poly(order: u32, terms: &[(Vec<i64>, [i32; 3])]) -> P {
    let mut p = P::zero(&vars(), order);
    for (c, e) in terms {
        p = &p + &P::monomial(&vars(), order, Monomial::new(e.to_vec()), cyclo(order, c));
    }
    p
}

fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, 1..4), [-2i32..=2, -1i32..=1, 0i32..=1]), 0..4)
}

fn ring_element() -> impl Strategy<Value = (u32, Terms)> {
    (prop::sample::select(ORDERS.to_vec()), terms())
}

fn nonzero(order: u32, t: &[(Vec<i64>, [i32; 3])]) -> P {
    let p = poly(order, t);
    if p.is_zero() {
        &P::var(&vars(), order, "x").unwrap() + &P::one(&vars(), order)
    } else {
        p
    }
}

proptest! {
    #[test]
    fn roots_of_unity_are_periodic(n in 1u32..=12, k in -30i64..30) {
        let z = Cyclo::<Q>::root_of_unity(n, k);
        prop_assert!(z.pow(n as i64).unwrap().is_one());
        prop_assert_eq!(z, Cyclo::root_of_unity(n, k.rem_euclid(n as i64)));
    }

    #[test]
    fn serialization_round_trips((order, t) in ring_element(), d in terms()) {
        let p = poly(order, &t);
        prop_assert_eq!(P::parse(&vars(), order, &p.to_string()).unwrap(), p.clone());
        let f = F::new(p, nonzero(order, &d)).unwrap();
        let s = f.to_string();
        prop_assert_eq!(F::parse(&vars(), order, &s).unwrap().to_string(), s);
    }

    #[test]
    fn rf_equal_is_a_congruence(
        (order, a) in ring_element(),
        da in terms(),
        e in terms(),
        c in terms(),
        dc in terms(),
    ) {
        let x = F::new(poly(order, &a), nonzero(order, &da)).unwrap();
        // Same value written over a different denominator.
        let scale = nonzero(order, &e);
        let sq = &scale * &scale;
        let y = F::new(&poly(order, &a) * &scale, &nonzero(order, &da) * &scale).unwrap();
        let z = F::new(&poly(order, &a) * &sq, &nonzero(order, &da) * &sq).unwrap();
        prop_assert!(x.rf_equal(&x));
        prop_assert!(x.rf_equal(&y) && y.rf_equal(&x));
        prop_assert!(y.rf_equal(&z) && x.rf_equal(&z));
        let w = F::new(poly(order, &c), nonzero(order, &dc)).unwrap();
        prop_assert!((&x + &w).rf_equal(&(&y + &w)));
        prop_assert!((&x * &w).rf_equal(&(&y * &w)));
    }

    #[test]
    fn substitution_composes((order, t) in ring_element(), a in terms(), b in terms()) {
        let p = poly(order, &t);
        prop_assert_eq!(p.substitute(&Bindings::new()).unwrap(), p.clone());
        // Monomial images keep negative powers defined.
        let unit = |s: &[(Vec<i64>, [i32; 3])]| {
            let (k, e) = s.first().map_or((0, 1), |(c, e)| (c[0], e[0]));
            P::var_pow(&vars(), order, "q", e).unwrap().scale(&Cyclo::root_of_unity(order, k))
        };
        let (ax, by) = (unit(&a), unit(&b));
        let both = Bindings::new().bind("x", ax.clone()).bind("y", by.clone());
        let one_by_one = p
            .substitute(&Bindings::new().bind("x", ax))
            .and_then(|s| s.substitute(&Bindings::new().bind("y", by)))
            .unwrap();
        prop_assert_eq!(p.substitute(&both).unwrap(), one_by_one);
    }
}

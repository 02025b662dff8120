mod common;

use common::*;
use proptest::prelude::*;
use wordmap_core::literal::parse_scalar;
use wordmap_core::ring::{is_prime, RingDescriptor, Scalar};

fn rings() -> Vec<RingDescriptor> {
    vec![
        q(),
        fp(101),
        "Q[sqrt(2)]".parse().unwrap(),
        "Fp:103[i]".parse().unwrap(),
        "Fp:101[eps]".parse().unwrap(),
        "Q[eps]".parse().unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        for ring in rings() {
            let (a, b, c) = (ring.random(&mut r), ring.random(&mut r), ring.random(&mut r));
            prop_assert_eq!(ring.add(&a, &b), ring.add(&b, &a));
            prop_assert_eq!(ring.mul(&a, &b), ring.mul(&b, &a));
            prop_assert_eq!(ring.mul(&ring.mul(&a, &b), &c), ring.mul(&a, &ring.mul(&b, &c)));
            prop_assert_eq!(ring.add(&ring.add(&a, &b), &c), ring.add(&a, &ring.add(&b, &c)));
            prop_assert_eq!(ring.mul(&a, &ring.add(&b, &c)), ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c)));
            prop_assert_eq!(ring.sub(&a, &a), ring.zero());
            prop_assert_eq!(ring.mul(&a, &ring.one()), a.clone());
            if let Ok(ai) = ring.inv(&a) {
                prop_assert!(ring.is_one(&ring.mul(&a, &ai)));
            }
        }
    }

    #[test]
    fn dual_product_rule(seed in any::<u64>()) {
        let mut r = rng(seed);
        let base = fp(101);
        let dual = RingDescriptor::dual_numbers(base.clone());
        let v: Vec<Scalar> = (0..4).map(|_| base.random(&mut r)).collect();
        let x = Scalar::pair(v[0].clone(), v[1].clone());
        let y = Scalar::pair(v[2].clone(), v[3].clone());
        let real = base.mul(&v[0], &v[2]);
        let eps = base.add(&base.mul(&v[0], &v[3]), &base.mul(&v[1], &v[2]));
        prop_assert_eq!(dual.mul(&x, &y), Scalar::pair(real, eps));
    }

    #[test]
    fn render_parse_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        for ring in rings() {
            let a = ring.random(&mut r);
            prop_assert_eq!(parse_scalar(&ring, &ring.render(&a)).unwrap(), a);
        }
    }
}

#[test]
fn eps_squares_to_zero() {
    for ring in ["Q[eps]", "Fp:13[eps]", "Q[i][eps]"] {
        let d: RingDescriptor = ring.parse().unwrap();
        let e = d.eps();
        assert!(d.is_zero(&d.mul(&e, &e)), "{ring}");
        assert!(!d.is_zero(&e));
    }
}

#[test]
fn sqrt_minus_one_small_primes() {
    for p in (3..100).filter(|&p| is_prime(p)) {
        let f = fp(p);
        let brute = (0..p).any(|x| (x * x + 1) % p == 0);
        let found = f.sqrt_minus_one();
        assert_eq!(found.is_some(), p % 4 == 1, "p = {p}");
        assert_eq!(found.is_some(), brute, "p = {p}");
        if let Some(i) = found {
            assert_eq!(f.mul(&i, &i), f.from_int(-1));
        }
    }
    // -1 = 1 in F_2
    assert_eq!(fp(2).sqrt_minus_one(), Some(fp(2).one()));
}

#[test]
fn literals_and_ring_strings() {
    let f = fp(17);
    assert_eq!(parse_scalar(&f, "i").unwrap(), f.from_int(4));
    assert_eq!(parse_scalar(&f, "sqrt(2)").unwrap(), f.from_int(6));
    assert_eq!(parse_scalar(&f, "1/2").unwrap(), f.from_int(9));
    assert!(parse_scalar(&fp(7), "i").is_err());
    assert!("Fp:12".parse::<RingDescriptor>().is_err());
    assert!("Q[sqrt(4)]".parse::<RingDescriptor>().is_err());
    let qi: RingDescriptor = "Q[i]".parse().unwrap();
    let z = parse_scalar(&qi, "(1+i)*(1-i)").unwrap();
    assert_eq!(z, qi.from_int(2));
}

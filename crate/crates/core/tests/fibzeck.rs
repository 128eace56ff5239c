use fibonadic::fibzeck::{coboundary_pi, fib, j_shift, pi_shift, unzeck, zeck, FibTable};
use fibonadic::Error;
use num_bigint::BigUint;

#[test]
fn round_trip_to_a_million() {
    let table = FibTable::<u64>::covering(&1_000_000);
    for r in 0..=1_000_000u64 {
        assert_eq!(table.unzeck(&table.zeck(&r).unwrap()).unwrap(), r);
    }
}

#[test]
fn j_after_pi_restores_exactly_when_f1_is_absent() {
    for r in 1..=100_000u64 {
        let z = zeck(&r).unwrap();
        let back = j_shift(&pi_shift(&r).unwrap()).unwrap();
        assert_eq!(back == r, !z.contains(1), "R = {r}, zeck = {z}");
    }
}

#[test]
fn pi_is_order_preserving() {
    let values: Vec<u64> = (0..=10_000u64).map(|r| pi_shift(&r).unwrap()).collect();
    assert!(values.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn biguint_agrees_with_u64() {
    for r in (0..200_000u64).step_by(997) {
        let big = BigUint::from(r);
        assert_eq!(zeck(&big).unwrap(), zeck(&r).unwrap());
        assert_eq!(pi_shift(&big).unwrap(), BigUint::from(pi_shift(&r).unwrap()));
        assert_eq!(j_shift(&big).unwrap(), BigUint::from(j_shift(&r).unwrap()));
    }
}

#[test]
fn large_biguint_round_trip() {
    let r: BigUint = fib::<BigUint>(300).unwrap() * 7u32 + 12345u32;
    let z = zeck(&r).unwrap();
    assert_eq!(unzeck::<BigUint>(&z).unwrap(), r);
    assert_eq!(pi_shift(&j_shift(&r).unwrap()).unwrap(), r);
}

#[test]
fn coboundary_needs_positive_arguments() {
    assert!(matches!(coboundary_pi(&0u64, &3), Err(Error::Domain(_))));
}

mod common;

use common::*;
use proptest::prelude::*;

fn small_towers() -> Vec<(u64, usize)> {
    towers_upto(256)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn axioms_hold_on_random_triples(idx in any::<prop::sample::Index>(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let towers = small_towers();
        let (q, m) = towers[idx.index(towers.len())];
        let tw = tower(q, m);
        let n = tw.order();
        let e = |x: u64| tw.element(x % n).unwrap();
        let (x, y, z) = (e(a), e(b), e(c));
        prop_assert_eq!(tw.mul(tw.mul(x, y), z), tw.mul(x, tw.mul(y, z)));
        prop_assert_eq!(tw.mul(x, tw.add(y, z)), tw.add(tw.mul(x, y), tw.mul(x, z)));
        prop_assert_eq!(tw.sub(tw.add(x, y), y), x);
        if x != msrd::FieldElement::ZERO {
            prop_assert_eq!(tw.mul(tw.inv(x).unwrap(), x), msrd::FieldElement::ONE);
        }
    }

    #[test]
    fn frobenius_is_a_ring_map(idx in any::<prop::sample::Index>(), a in any::<u64>(), b in any::<u64>(), i in 0usize..4) {
        let towers: Vec<_> = small_towers().into_iter().filter(|&(_, m)| m > 1).collect();
        let (q, m) = towers[idx.index(towers.len())];
        let tw = tower(q, m);
        let n = tw.order();
        let (x, y) = (tw.element(a % n).unwrap(), tw.element(b % n).unwrap());
        prop_assert_eq!(tw.frobenius(tw.add(x, y), i), tw.add(tw.frobenius(x, i), tw.frobenius(y, i)));
        prop_assert_eq!(tw.frobenius(tw.mul(x, y), i), tw.mul(tw.frobenius(x, i), tw.frobenius(y, i)));
        prop_assert_eq!(tw.frobenius(x, m), x);
        prop_assert_eq!(tw.frobenius(x, i), tw.pow(x, q.pow(i as u32)));
    }

    #[test]
    fn norm_is_multiplicative(idx in any::<prop::sample::Index>(), a in any::<u64>(), b in any::<u64>()) {
        let towers: Vec<_> = small_towers().into_iter().filter(|&(_, m)| m > 1).collect();
        let (q, m) = towers[idx.index(towers.len())];
        let tw = tower(q, m);
        let n = tw.order();
        let (x, y) = (tw.element(a % n).unwrap(), tw.element(b % n).unwrap());
        prop_assert_eq!(tw.norm(tw.mul(x, y)), tw.mul(tw.norm(x), tw.norm(y)));
        prop_assert!(tw.subfield_value(tw.norm(x)).is_some());
    }
}

#[test]
fn exhaustive_pairs_and_small_triples() {
    let mut r = rng(1);
    for (q, m) in small_towers() {
        let tw = tower(q, m);
        let triples = triples_for(tw.order(), 5_000, &mut r);
        check_field(&tw, &triples).unwrap_or_else(|e| panic!("GF({q}^{m}): {e}"));
    }
}

#[test]
fn norm_fibers_are_even() {
    for (q, m) in small_towers().into_iter().filter(|&(q, m)| m > 1 && q.pow(m as u32) <= 81) {
        check_norm(&tower(q, m)).unwrap_or_else(|e| panic!("GF({q}^{m}): {e}"));
    }
}

#[test]
fn digits_round_trip() {
    for (q, m) in [(2, 3), (3, 2), (4, 2), (9, 2)] {
        let tw = tower(q, m);
        for x in tw.elements() {
            assert_eq!(tw.from_digits(&tw.digits(x)).unwrap(), x);
            assert_eq!(tw.from_coords(&tw.coords(x)), x);
        }
    }
}

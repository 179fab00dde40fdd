//! Big-integer products checked against schoolbook multiplication on
//! base-10 digit arrays.

use commdet_core::{RingDescriptor, RingValue};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Little-endian decimal digits of a nonnegative decimal string.
fn digits(s: &str) -> Vec<u32> {
    s.bytes().rev().map(|b| (b - b'0') as u32).collect()
}

fn schoolbook(a: &str, b: &str) -> String {
    let (x, y) = (digits(a), digits(b));
    let mut acc = vec![0u64; x.len() + y.len()];
    for (i, &dx) in x.iter().enumerate() {
        for (j, &dy) in y.iter().enumerate() {
            acc[i + j] += (dx * dy) as u64;
        }
    }
    let mut carry = 0;
    for slot in acc.iter_mut() {
        let v = *slot + carry;
        *slot = v % 10;
        carry = v / 10;
    }
    while carry > 0 {
        acc.push(carry % 10);
        carry /= 10;
    }
    while acc.len() > 1 && *acc.last().unwrap() == 0 {
        acc.pop();
    }
    acc.iter()
        .rev()
        .map(|d| char::from(b'0' + *d as u8))
        .collect()
}

fn signed_product(a: &str, b: &str) -> String {
    let (na, ma) = a.strip_prefix('-').map_or((false, a), |m| (true, m));
    let (nb, mb) = b.strip_prefix('-').map_or((false, b), |m| (true, m));
    let mag = schoolbook(ma, mb);
    if na != nb && mag != "0" {
        format!("-{mag}")
    } else {
        mag
    }
}

#[test]
fn large_witness_square() {
    let z = RingDescriptor::Integers;
    let r = z.parse("264638639242").unwrap();
    let expected = schoolbook("264638639242", "264638639242");
    assert_eq!(expected, "70033609379857422334564");
    assert_eq!((&r * &r).to_string(), expected);
    let s = z.parse("196660308201").unwrap();
    let form = &(&r * &r).scale(37) - &(&s * &s).scale(67);
    assert!(form.is_one());
}

#[test]
fn random_products_match_schoolbook() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let z = RingDescriptor::Integers;
    for _ in 0..300 {
        let mut rand_num = |len: usize| -> String {
            let mut s: String = (0..len)
                .map(|_| char::from(b'0' + rng.gen_range(0..10u8)))
                .collect();
            s = s.trim_start_matches('0').to_string();
            if s.is_empty() {
                s.push('0');
            }
            if rng.gen_bool(0.5) && s != "0" {
                s.insert(0, '-');
            }
            s
        };
        let a = rand_num(40);
        let b = rand_num(25);
        let prod = &z.parse(&a).unwrap() * &z.parse(&b).unwrap();
        assert_eq!(prod.to_string(), signed_product(&a, &b), "{a} * {b}");
    }
}

#[test]
fn residue_products_near_the_cap() {
    let ring = RingDescriptor::modular(u64::MAX).unwrap();
    let a = ring.int(-2);
    let b = &a * &a;
    assert_eq!(b, ring.int(4));
    if let RingValue::Mod { value, .. } = &a {
        assert_eq!(*value, u64::MAX - 2);
    } else {
        panic!("expected a residue");
    }
}

//! Brute-force oracles shared by the integration and acceptance tests.
//! None of these touch the elimination or convolution code under test.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rqcs::{Field, FieldElement};

/// Every element of the F_2-span of `gens`, by closure under addition.
pub fn span_elements(gens: &[FieldElement]) -> BTreeSet<FieldElement> {
    let mut set = BTreeSet::from([FieldElement::ZERO]);
    for &g in gens {
        let shifted: Vec<FieldElement> = set.iter().map(|&s| s + g).collect();
        set.extend(shifted);
    }
    set
}

/// log2 of the span size.
pub fn span_dim(gens: &[FieldElement]) -> usize {
    let size = span_elements(gens).len();
    assert!(size.is_power_of_two());
    size.trailing_zeros() as usize
}

/// Product in F_{2^m}[X]/(X^n - 1): full polynomial product, then fold the
/// coefficient of X^(n+t) onto X^t.
pub fn ring_product(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let n = a.len();
    let mut full = vec![FieldElement::ZERO; 2 * n];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            full[i + j] += field.mul(x, y);
        }
    }
    (0..n).map(|t| full[t] + full[t + n]).collect()
}

// ---- F_2[z] on u64 words (degree < 64), for small-degree factoring ----

pub fn deg64(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

pub fn rem64(mut a: u64, b: u64) -> u64 {
    let db = deg64(b);
    while a != 0 && deg64(a) >= db {
        a ^= b << (deg64(a) - db);
    }
    a
}

/// Smallest degree of a nontrivial factor, by trial division over every
/// polynomial of degree 1..=deg/2. `None` when irreducible.
pub fn smallest_factor_by_trial_division(f: u64) -> Option<u32> {
    let d = deg64(f) as u32;
    for k in 1..=d / 2 {
        for q in (1u64 << k)..(1u64 << (k + 1)) {
            if rem64(f, q) == 0 {
                return Some(k);
            }
        }
    }
    None
}

// ---- F_2[z] on bit vectors of arbitrary length, for a Rabin test ----

fn trim(mut p: Vec<bool>) -> Vec<bool> {
    while p.last() == Some(&false) {
        p.pop();
    }
    p
}

fn poly_rem(a: &[bool], b: &[bool]) -> Vec<bool> {
    let mut a = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    while a.len() > db {
        let shift = a.len() - 1 - db;
        for (k, &bit) in b.iter().enumerate() {
            if bit {
                a[shift + k] ^= true;
            }
        }
        a = trim(a);
    }
    a
}

fn poly_mulmod(a: &[bool], b: &[bool], f: &[bool]) -> Vec<bool> {
    let mut prod = vec![false; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x {
            for (j, &y) in b.iter().enumerate() {
                if y {
                    prod[i + j] ^= true;
                }
            }
        }
    }
    poly_rem(&prod, f)
}

fn poly_gcd(a: &[bool], b: &[bool]) -> Vec<bool> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// z^(2^k) mod f by k squarings.
fn frobenius_power(k: usize, f: &[bool]) -> Vec<bool> {
    let mut t = vec![false, true];
    for _ in 0..k {
        t = poly_mulmod(&t, &t, f);
    }
    t
}

fn minus_z(mut t: Vec<bool>) -> Vec<bool> {
    if t.len() < 2 {
        t.resize(2, false);
    }
    t[1] ^= true;
    trim(t)
}

fn prime_factors(mut m: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Rabin's test: f of degree m is irreducible iff z^(2^m) = z mod f and
/// gcd(z^(2^(m/p)) - z, f) = 1 for every prime p | m.
pub fn rabin_irreducible(f: &[bool]) -> bool {
    let f = trim(f.to_vec());
    let m = f.len() - 1;
    if !minus_z(frobenius_power(m, &f)).is_empty() {
        return false;
    }
    prime_factors(m).into_iter().all(|p| {
        let g = poly_gcd(&minus_z(frobenius_power(m / p, &f)), &f);
        g == vec![true]
    })
}

pub fn element_bits(e: FieldElement, len: usize) -> Vec<bool> {
    (0..len).map(|i| e.bit(i)).collect()
}

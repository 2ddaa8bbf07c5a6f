//! Arithmetic in F_{2^m} = F_2[z]/(f(z)).
//!
//! Elements are bit-packed polynomials of degree < m (bit i is the
//! coefficient of z^i). A [`Field`] carries the modulus and performs all
//! multiplicative operations; addition is XOR and needs no context.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign};
use std::sync::OnceLock;

use rand::RngCore;
use serde::Deserialize;

use crate::error::{Error, Result};

/// Largest supported extension degree (the full modulus must fit in three words).
pub const MAX_DEGREE: usize = 191;

pub(crate) const LIMBS: usize = 3;
const WIDE: usize = 2 * LIMBS;

/// An element of F_{2^m}, stored as the coefficient bits of its residue.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FieldElement([u64; LIMBS]);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement([0; LIMBS]);
    pub const ONE: FieldElement = FieldElement([1, 0, 0]);

    pub const fn from_limbs(limbs: [u64; LIMBS]) -> Self {
        FieldElement(limbs)
    }

    pub const fn from_u64(v: u64) -> Self {
        FieldElement([v, 0, 0])
    }

    /// The monomial z^i.
    pub fn monomial(i: usize) -> Self {
        assert!(i < 64 * LIMBS, "monomial degree {i} out of range");
        let mut l = [0; LIMBS];
        l[i / 64] = 1 << (i % 64);
        FieldElement(l)
    }

    pub fn limbs(&self) -> &[u64; LIMBS] {
        &self.0
    }

    #[inline]
    pub fn bit(&self, i: usize) -> bool {
        (self.0[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn flip_bit(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    /// Degree of the residue polynomial, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        (0..LIMBS)
            .rev()
            .find(|&i| self.0[i] != 0)
            .map(|i| 64 * i + 63 - self.0[i].leading_zeros() as usize)
    }

    /// Index of the lowest nonzero coefficient, `None` for zero.
    pub fn lowest_bit(&self) -> Option<usize> {
        (0..LIMBS)
            .find(|&i| self.0[i] != 0)
            .map(|i| 64 * i + self.0[i].trailing_zeros() as usize)
    }

    pub fn count_ones(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    /// Little-endian byte encoding: bit i of the byte stream is the
    /// coefficient of z^i.
    pub fn to_le_bytes(&self, len: usize) -> Vec<u8> {
        (0..len)
            .map(|k| {
                if k >= 8 * LIMBS {
                    0
                } else {
                    (self.0[k / 8] >> (8 * (k % 8))) as u8
                }
            })
            .collect()
    }

    pub fn from_le_bytes(bytes: &[u8]) -> Result<Self> {
        let mut l = [0u64; LIMBS];
        for (k, &b) in bytes.iter().enumerate() {
            if k >= 8 * LIMBS {
                if b != 0 {
                    return Err(Error::Format(format!(
                        "element encoding exceeds {} bits",
                        64 * LIMBS
                    )));
                }
                continue;
            }
            l[k / 8] |= (b as u64) << (8 * (k % 8));
        }
        Ok(FieldElement(l))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x")?;
        let top = self.degree().map_or(0, |d| d / 64);
        write!(f, "{:x}", self.0[top])?;
        for i in (0..top).rev() {
            write!(f, "{:016x}", self.0[i])?;
        }
        Ok(())
    }
}

impl Add for FieldElement {
    type Output = FieldElement;

    #[inline]
    fn add(mut self, rhs: FieldElement) -> FieldElement {
        self += rhs;
        self
    }
}

impl AddAssign for FieldElement {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: FieldElement) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a ^= b;
        }
    }
}

/// A binary extension field F_2[z]/(f) with f irreducible of degree m.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    m: usize,
    limbs: usize,
    /// Full modulus including the z^m term.
    poly: [u64; LIMBS],
    /// f - z^m.
    low: [u64; LIMBS],
}

impl Field {
    /// Builds the field after checking that `poly` has degree `m` and is
    /// irreducible.
    pub fn new(m: usize, poly: FieldElement) -> Result<Self> {
        let field = Self::ring(m, poly)?;
        if let Some(witness_degree) = smallest_factor_degree(&field) {
            return Err(Error::ReducibleModulus { witness_degree });
        }
        Ok(field)
    }

    /// The quotient ring F_2[z]/(poly) without the irreducibility check.
    /// Only multiplication and reduction are meaningful when `poly` is
    /// reducible.
    pub(crate) fn ring(m: usize, poly: FieldElement) -> Result<Self> {
        if !(2..=MAX_DEGREE).contains(&m) {
            return Err(Error::UnsupportedDegree(m));
        }
        if poly.degree() != Some(m) {
            return Err(Error::MalformedModulus(format!(
                "degree is {:?}, expected {m}",
                poly.degree()
            )));
        }
        let mut low = poly;
        low.flip_bit(m);
        Ok(Field {
            m,
            limbs: m.div_ceil(64),
            poly: poly.0,
            low: low.0,
        })
    }

    /// Field with the pinned low-weight modulus for degree `m`, falling back
    /// to a trinomial/pentanomial search for degrees outside the table.
    pub fn standard(m: usize) -> Result<Self> {
        static CACHE: OnceLock<std::sync::Mutex<HashMap<usize, Field>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().unwrap().get(&m) {
            return Ok(*f);
        }
        let field = match pinned_moduli().get(&m) {
            Some(hex) => Self::from_hex(m, hex)?,
            None => lowest_weight_irreducible(m)?,
        };
        cache.lock().unwrap().insert(m, field);
        Ok(field)
    }

    /// Parses the modulus from its little-endian hex encoding and validates it.
    pub fn from_hex(m: usize, hex_str: &str) -> Result<Self> {
        let bytes = hex::decode(hex_str)
            .map_err(|e| Error::MalformedModulus(format!("bad hex {hex_str:?}: {e}")))?;
        let poly = FieldElement::from_le_bytes(&bytes)
            .map_err(|e| Error::MalformedModulus(e.to_string()))?;
        Self::new(m, poly)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> FieldElement {
        FieldElement(self.poly)
    }

    /// Little-endian hex of the (m+1)-bit modulus word.
    pub fn modulus_hex(&self) -> String {
        hex::encode(self.modulus().to_le_bytes((self.m + 1).div_ceil(8)))
    }

    /// Bytes per element in the little-endian encoding.
    pub fn element_bytes(&self) -> usize {
        self.m.div_ceil(8)
    }

    #[inline]
    pub fn contains(&self, a: &FieldElement) -> bool {
        a.degree().is_none_or(|d| d < self.m)
    }

    /// Wraps raw coefficient bits, rejecting anything of degree >= m.
    pub fn element(&self, bits: FieldElement) -> Result<FieldElement> {
        match bits.degree() {
            Some(degree) if degree >= self.m => Err(Error::ElementOutOfField { degree, m: self.m }),
            _ => Ok(bits),
        }
    }

    /// The generator z (as a residue).
    pub fn z(&self) -> FieldElement {
        FieldElement::monomial(1)
    }

    pub fn checked_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.element(a)? + self.element(b)?)
    }

    pub fn checked_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(self.element(a)?, self.element(b)?))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let mut acc = [0u64; WIDE];
        for i in 0..self.limbs {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..self.limbs {
                let p = clmul(a.0[i], b.0[j]);
                acc[i + j] ^= p as u64;
                acc[i + j + 1] ^= (p >> 64) as u64;
            }
        }
        self.reduce(acc)
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// Exponentiation by square-and-multiply.
    pub fn pow(&self, a: FieldElement, mut exp: u128) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse via a^(2^m - 2) = prod_{i=1}^{m-1} a^(2^i).
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let mut t = a;
        let mut acc = FieldElement::ONE;
        for _ in 1..self.m {
            t = self.square(t);
            acc = self.mul(acc, t);
        }
        Ok(acc)
    }

    /// Uniformly random element.
    pub fn random<R: RngCore + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let mut l = [0u64; LIMBS];
        for w in l.iter_mut().take(self.limbs) {
            *w = rng.next_u64();
        }
        let rem = self.m % 64;
        if rem != 0 {
            l[self.limbs - 1] &= (1u64 << rem) - 1;
        }
        FieldElement(l)
    }

    fn reduce(&self, mut acc: [u64; WIDE]) -> FieldElement {
        let (ws, bs) = (self.m / 64, self.m % 64);
        loop {
            let mut hi = [0u64; WIDE];
            let mut any = false;
            for i in 0..WIDE - ws {
                let mut v = acc[i + ws] >> bs;
                if bs != 0 && i + ws + 1 < WIDE {
                    v |= acc[i + ws + 1] << (64 - bs);
                }
                hi[i] = v;
                any |= v != 0;
            }
            if !any {
                break;
            }
            // acc mod z^m
            if bs != 0 {
                acc[ws] &= (1u64 << bs) - 1;
                acc[ws + 1..].fill(0);
            } else {
                acc[ws..].fill(0);
            }
            for (li, &word) in self.low.iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let t = 64 * li + word.trailing_zeros() as usize;
                    word &= word - 1;
                    xor_shifted(&mut acc, &hi, t);
                }
            }
        }
        FieldElement([acc[0], acc[1], acc[2]])
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field(GF(2^{}), f = {})", self.m, self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = self.modulus();
        let mut first = true;
        for i in (0..=self.m).rev().filter(|&i| poly.bit(i)) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "1")?,
                1 => write!(f, "z")?,
                _ => write!(f, "z^{i}")?,
            }
        }
        Ok(())
    }
}

#[inline]
fn xor_shifted(acc: &mut [u64; WIDE], x: &[u64; WIDE], shift: usize) {
    let (ws, bs) = (shift / 64, shift % 64);
    for i in 0..WIDE - ws {
        let v = x[i];
        if v == 0 {
            continue;
        }
        acc[i + ws] ^= v << bs;
        if bs != 0 && i + ws + 1 < WIDE {
            acc[i + ws + 1] ^= v >> (64 - bs);
        }
    }
}

#[inline]
fn clmul(a: u64, b: u64) -> u128 {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: the feature was detected at runtime.
            return unsafe { clmul_pclmul(a, b) };
        }
    }
    clmul_portable(a, b)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq")]
unsafe fn clmul_pclmul(a: u64, b: u64) -> u128 {
    use std::arch::x86_64::{_mm_clmulepi64_si128, _mm_set_epi64x};
    let r = _mm_clmulepi64_si128(_mm_set_epi64x(0, a as i64), _mm_set_epi64x(0, b as i64), 0);
    std::mem::transmute::<_, u128>(r)
}

/// Carry-less 64x64 multiply with a 4-bit window table.
fn clmul_portable(a: u64, b: u64) -> u128 {
    let mut table = [0u128; 16];
    for i in 1..16 {
        table[i] = if i & 1 == 1 {
            table[i - 1] ^ a as u128
        } else {
            table[i / 2] << 1
        };
    }
    let mut r = 0u128;
    for nib in (0..16).rev() {
        r = (r << 4) ^ table[((b >> (4 * nib)) & 15) as usize];
    }
    r
}

// ---- irreducibility ----

fn poly_shl(a: &[u64; LIMBS], s: usize) -> [u64; LIMBS] {
    let (ws, bs) = (s / 64, s % 64);
    let mut out = [0u64; LIMBS];
    for i in (ws..LIMBS).rev() {
        out[i] = a[i - ws] << bs;
        if bs != 0 && i > ws {
            out[i] |= a[i - ws - 1] >> (64 - bs);
        }
    }
    out
}

fn poly_rem(mut a: FieldElement, b: FieldElement) -> FieldElement {
    let db = b.degree().expect("division by zero polynomial");
    while let Some(da) = a.degree() {
        if da < db {
            break;
        }
        let s = poly_shl(&b.0, da - db);
        for (x, y) in a.0.iter_mut().zip(s) {
            *x ^= y;
        }
    }
    a
}

pub(crate) fn poly_gcd(mut a: FieldElement, mut b: FieldElement) -> FieldElement {
    while !b.is_zero() {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: returns the degree of the smallest irreducible factor of the
/// ring modulus, or `None` if it is irreducible.
fn smallest_factor_degree(ring: &Field) -> Option<usize> {
    let f = ring.modulus();
    let z = FieldElement::monomial(1);
    let mut t = z;
    for d in 1..=ring.m / 2 {
        t = ring.square(t);
        if poly_gcd(f, t + z) != FieldElement::ONE {
            return Some(d);
        }
    }
    None
}

/// Checks `poly` (degree `m`) for irreducibility over F_2.
pub fn validate_modulus(m: usize, poly: FieldElement) -> Result<Field> {
    Field::new(m, poly)
}

/// Lowest-weight irreducible of degree m: the trinomial z^m + z^k + 1 with
/// smallest k, else the pentanomial z^m + z^a + z^b + z^c + 1 with
/// lexicographically smallest (a, b, c), a > b > c > 0.
pub fn lowest_weight_irreducible(m: usize) -> Result<Field> {
    if !(2..=MAX_DEGREE).contains(&m) {
        return Err(Error::UnsupportedDegree(m));
    }
    let base = FieldElement::monomial(m) + FieldElement::ONE;
    for k in 1..m {
        if let Ok(f) = Field::new(m, base + FieldElement::monomial(k)) {
            return Ok(f);
        }
    }
    for a in 3..m {
        for b in 2..a {
            for c in 1..b {
                let poly = base
                    + FieldElement::monomial(a)
                    + FieldElement::monomial(b)
                    + FieldElement::monomial(c);
                if let Ok(f) = Field::new(m, poly) {
                    return Ok(f);
                }
            }
        }
    }
    Err(Error::MalformedModulus(format!(
        "no trinomial or pentanomial of degree {m} is irreducible"
    )))
}

#[derive(Deserialize)]
struct ModulusEntry {
    m: usize,
    f: String,
}

const MODULI_JSON: &str = include_str!("moduli.json");

/// The pinned modulus table, keyed by degree (hex as stored in the table).
pub fn pinned_moduli() -> &'static HashMap<usize, String> {
    static TABLE: OnceLock<HashMap<usize, String>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let entries: Vec<ModulusEntry> =
            serde_json::from_str(MODULI_JSON).expect("moduli.json is well formed");
        entries.into_iter().map(|e| (e.m, e.f)).collect()
    })
}

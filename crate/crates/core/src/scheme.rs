//! Key generation, signing and verification.

use rand::RngCore;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::hash::hash_to_rank_vector;
use crate::params::Params;
use crate::quasi_cyclic::rot_product;
use crate::rank::{sample_rank_vector, RkVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicKey {
    pub h: RkVector,
    pub s: RkVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecretKey {
    pub x: RkVector,
    pub y: RkVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyPair {
    pub pk: PublicKey,
    pub sk: SecretKey,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub g: RkVector,
    pub u1: RkVector,
    pub u2: RkVector,
}

/// Why [`verify`] rejected a signature.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Rejection {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("H(I, msg) does not reproduce g")]
    HashMismatch,
    #[error("rank weight of u{index} is {weight}, above the bound {bound}")]
    WeightBound {
        index: u8,
        weight: usize,
        bound: usize,
    },
}

impl PublicKey {
    /// Whether s = x + h·y holds for `sk`.
    pub fn matches(&self, sk: &SecretKey) -> bool {
        rot_product(&self.h, &sk.y)
            .and_then(|hy| sk.x.add(&hy))
            .is_ok_and(|s| s == self.s)
    }

    /// Whether `sk` is an equivalent key: the key equation holds and both
    /// halves have rank weight at most w.
    pub fn accepts_equivalent(&self, params: &Params, sk: &SecretKey) -> bool {
        self.matches(sk) && sk.x.rank_weight() <= params.w && sk.y.rank_weight() <= params.w
    }
}

fn check_shape(params: &Params, v: &RkVector, what: &str) -> Result<()> {
    if *v.field() != params.field {
        return Err(Error::FieldMismatch);
    }
    if v.len() != params.n {
        return Err(Error::Format(format!(
            "{what} has length {}, expected {}",
            v.len(),
            params.n
        )));
    }
    Ok(())
}

pub fn keygen<R: RngCore + ?Sized>(params: &Params, rng: &mut R) -> KeyPair {
    let field = &params.field;
    let h = RkVector::random(field, params.n, rng);
    let x = sample_rank_vector(field, params.n, params.w, rng).expect("w < min(m, n)");
    let y = sample_rank_vector(field, params.n, params.w, rng).expect("w < min(m, n)");
    let s = x
        .add(&rot_product(&h, &y).expect("same shape"))
        .expect("same shape");
    KeyPair {
        pk: PublicKey { h, s },
        sk: SecretKey { x, y },
    }
}

/// Signs with fresh r = (r₁, r₂) of rank weight w_r each.
pub fn sign<R: RngCore + ?Sized>(
    params: &Params,
    sk: &SecretKey,
    pk: &PublicKey,
    msg: &[u8],
    rng: &mut R,
) -> Result<Signature> {
    let r1 = sample_rank_vector(&params.field, params.n, params.w_r, rng)?;
    let r2 = sample_rank_vector(&params.field, params.n, params.w_r, rng)?;
    sign_with_mask(params, sk, pk, msg, &r1, &r2)
}

/// Signing with caller-chosen masks: I = r₁ + h·r₂, g = H(I, msg),
/// u = (x·g + r₁, y·g + r₂).
pub fn sign_with_mask(
    params: &Params,
    sk: &SecretKey,
    pk: &PublicKey,
    msg: &[u8],
    r1: &RkVector,
    r2: &RkVector,
) -> Result<Signature> {
    for (v, what) in [
        (&sk.x, "x"),
        (&sk.y, "y"),
        (&pk.h, "h"),
        (r1, "r1"),
        (r2, "r2"),
    ] {
        check_shape(params, v, what)?;
    }
    let commitment = r1.add(&rot_product(&pk.h, r2)?)?;
    let g = hash_to_rank_vector(params, &commitment, msg);
    let u1 = rot_product(&sk.x, &g)?.add(r1)?;
    let u2 = rot_product(&sk.y, &g)?.add(r2)?;
    Ok(Signature { g, u1, u2 })
}

/// I = u₁ + h·u₂ − s·g; accept iff H(I, msg) = g and both ‖u_i‖ ≤ w·w_g + w_r.
pub fn verify(
    params: &Params,
    pk: &PublicKey,
    msg: &[u8],
    sig: &Signature,
) -> std::result::Result<(), Rejection> {
    for (v, what) in [
        (&pk.h, "h"),
        (&pk.s, "s"),
        (&sig.g, "g"),
        (&sig.u1, "u1"),
        (&sig.u2, "u2"),
    ] {
        check_shape(params, v, what).map_err(|e| Rejection::Malformed(e.to_string()))?;
    }
    let commitment = rot_product(&pk.h, &sig.u2)
        .and_then(|hu2| sig.u1.add(&hu2))
        .and_then(|t| rot_product(&pk.s, &sig.g).and_then(|sg| t.add(&sg)))
        .map_err(|e| Rejection::Malformed(e.to_string()))?;
    if hash_to_rank_vector(params, &commitment, msg) != sig.g {
        return Err(Rejection::HashMismatch);
    }
    let bound = params.weight_bound();
    for (index, u) in [(1u8, &sig.u1), (2, &sig.u2)] {
        let weight = u.rank_weight();
        if weight > bound {
            return Err(Rejection::WeightBound {
                index,
                weight,
                bound,
            });
        }
    }
    Ok(())
}

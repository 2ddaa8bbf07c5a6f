//! H: (I, msg) -> g with ‖g‖ = w_g.
//!
//! The input is absorbed into SHAKE256 as
//!
//! ```text
//! "RQCS-H/v1" || m || n || w || w_r || w_g || modulus || I_0 || ... || I_{n-1} || len(msg) || msg
//! ```
//!
//! (integers as u32/u64 little-endian, field elements as ⌈m/8⌉ little-endian
//! bytes) and the squeezed stream drives the exact-rank rejection sampler.

use rand::RngCore;
use sha3::digest::{ExtendableOutput, Update, XofReader};
use sha3::Shake256;

use crate::params::Params;
use crate::rank::{sample_rank_vector, RkVector};

const DOMAIN: &[u8] = b"RQCS-H/v1";

/// Adapts a SHAKE256 output stream to [`RngCore`].
pub struct XofRng<R: XofReader>(pub R);

impl<R: XofReader> RngCore for XofRng<R> {
    fn next_u32(&mut self) -> u32 {
        let mut b = [0u8; 4];
        self.0.read(&mut b);
        u32::from_le_bytes(b)
    }

    fn next_u64(&mut self) -> u64 {
        let mut b = [0u8; 8];
        self.0.read(&mut b);
        u64::from_le_bytes(b)
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.0.read(dst);
    }
}

pub fn hash_to_rank_vector(params: &Params, commitment: &RkVector, msg: &[u8]) -> RkVector {
    let field = &params.field;
    let mut shake = Shake256::default();
    shake.update(DOMAIN);
    for v in [params.m, params.n, params.w, params.w_r, params.w_g] {
        shake.update(&(v as u32).to_le_bytes());
    }
    shake.update(field.modulus_hex().as_bytes());
    let width = field.element_bytes();
    for c in commitment.coords() {
        shake.update(&c.to_le_bytes(width));
    }
    shake.update(&(msg.len() as u64).to_le_bytes());
    shake.update(msg);
    let mut rng = XofRng(shake.finalize_xof());
    sample_rank_vector(field, params.n, params.w_g, &mut rng)
        .expect("w_g < min(m, n) is a parameter invariant")
}

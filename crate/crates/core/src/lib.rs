//! The RQCS rank-metric quasi-cyclic signature scheme and a practical
//! key-recovery attack against it.
//!
//! The scheme lives in [`scheme`]: keys are `pk = (h, s = x + h·y)`,
//! `sk = (x, y)` with ‖x‖ = ‖y‖ = w, and a signature on `msg` is
//! `(g, u₁ = x·g + r₁, u₂ = y·g + r₂)` with `g = H(r₁ + h·r₂, msg)`.
//!
//! Because g is public and has small rank, one signature leaks the supports
//! of x and y ([`attack::recover_support`]); the public key then pins down
//! the binary support matrices through an overdetermined F_2 system
//! ([`attack::solve_support_matrices`]).
//!
//! ```
//! use rand::SeedableRng;
//! use rand_chacha::ChaCha20Rng;
//! use rqcs::{attack, scheme, Params};
//!
//! let params = Params::custom(24, 20, 2, 2, 2).unwrap();
//! let mut rng = ChaCha20Rng::seed_from_u64(7);
//! let keys = scheme::keygen(&params, &mut rng);
//! let mut oracle = attack::SelfOracle::new(&params, &keys, ChaCha20Rng::seed_from_u64(8));
//! let report = attack::recover_key(&params, &keys.pk, &mut oracle, 10, Some(&keys.sk)).unwrap();
//! let stolen = report.recovered_sk.unwrap();
//! let sig = attack::forge(&params, &stolen, &keys.pk, b"not signed by the owner", &mut rng).unwrap();
//! assert!(scheme::verify(&params, &keys.pk, b"not signed by the owner", &sig).is_ok());
//! ```

pub mod attack;
pub mod codec;
pub mod error;
pub mod experiment;
pub mod field;
pub mod hash;
pub mod linalg;
pub mod params;
pub mod quasi_cyclic;
pub mod rank;
pub mod scheme;
pub mod subspace;

pub use attack::{AttackReport, KeyMatch};
pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use linalg::BitMatrix;
pub use params::Params;
pub use rank::RkVector;
pub use scheme::{KeyPair, PublicKey, SecretKey, Signature};
pub use subspace::Subspace;

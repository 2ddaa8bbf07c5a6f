//! JSON envelopes for keys, signatures and attack reports.
//!
//! Every file carries the parameter header `{instance, m, n, w, w_r, w_g,
//! modulus}` followed by its payload vectors. A vector is a list of n hex
//! strings, one per coordinate, each ⌈m/8⌉ bytes little-endian (bit i of
//! the byte stream is the coefficient of z^i). The modulus uses the same
//! encoding over ⌈(m+1)/8⌉ bytes.

use serde::{Deserialize, Serialize};

use crate::attack::AttackReport;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::params::Params;
use crate::rank::RkVector;
use crate::scheme::{KeyPair, PublicKey, SecretKey, Signature};

pub const KIND_KEYPAIR: &str = "rqcs-keypair";
pub const KIND_PUBLIC_KEY: &str = "rqcs-public-key";
pub const KIND_SECRET_KEY: &str = "rqcs-secret-key";
pub const KIND_SIGNATURE: &str = "rqcs-signature";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Envelope {
    pub kind: String,
    pub instance: String,
    pub m: usize,
    pub n: usize,
    pub w: usize,
    pub w_r: usize,
    pub w_g: usize,
    pub modulus: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u1: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u2: Option<Vec<String>>,
}

impl Envelope {
    fn new(kind: &str, params: &Params) -> Self {
        Envelope {
            kind: kind.to_string(),
            instance: params.instance.clone(),
            m: params.m,
            n: params.n,
            w: params.w,
            w_r: params.w_r,
            w_g: params.w_g,
            modulus: params.field.modulus_hex(),
            h: None,
            s: None,
            x: None,
            y: None,
            g: None,
            u1: None,
            u2: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("envelopes always serialize");
        out.push('\n');
        out
    }

    /// Rebuilds and validates the parameters named in the header.
    pub fn params(&self) -> Result<Params> {
        let field = Field::from_hex(self.m, &self.modulus)?;
        let params = if self.instance == "custom" {
            Params::with_field("custom", 0, self.n, self.w, self.w_g, self.w_r, field)?
        } else {
            let p = Params::setup(&self.instance)?;
            if (p.m, p.n, p.w, p.w_r, p.w_g) != (self.m, self.n, self.w, self.w_r, self.w_g) {
                return Err(Error::Format(format!(
                    "header disagrees with the {} parameters",
                    p.instance
                )));
            }
            Params::with_field(&p.instance, p.lambda, p.n, p.w, p.w_g, p.w_r, field)?
        };
        Ok(params)
    }

    fn vector(&self, params: &Params, name: &str, data: &Option<Vec<String>>) -> Result<RkVector> {
        let data = data
            .as_ref()
            .ok_or_else(|| Error::Format(format!("{} has no field {name:?}", self.kind)))?;
        decode_vector(params, data).map_err(|e| Error::Format(format!("{name}: {e}")))
    }

    fn expect_kind(&self, allowed: &[&str]) -> Result<()> {
        if allowed.contains(&self.kind.as_str()) {
            Ok(())
        } else {
            Err(Error::Format(format!(
                "expected {}, found {:?}",
                allowed.join(" or "),
                self.kind
            )))
        }
    }
}

pub fn encode_vector(v: &RkVector) -> Vec<String> {
    let width = v.field().element_bytes();
    v.coords()
        .iter()
        .map(|c| hex::encode(c.to_le_bytes(width)))
        .collect()
}

pub fn decode_vector(params: &Params, data: &[String]) -> Result<RkVector> {
    if data.len() != params.n {
        return Err(Error::LengthMismatch {
            expected: params.n,
            found: data.len(),
        });
    }
    let width = params.field.element_bytes();
    let coords = data
        .iter()
        .map(|s| {
            let bytes = hex::decode(s).map_err(|e| Error::Format(format!("bad hex {s:?}: {e}")))?;
            if bytes.len() != width {
                return Err(Error::Format(format!(
                    "coordinate {s:?} has {} bytes, expected {width}",
                    bytes.len()
                )));
            }
            params.field.element(FieldElement::from_le_bytes(&bytes)?)
        })
        .collect::<Result<Vec<_>>>()?;
    RkVector::new(&params.field, coords)
}

pub fn encode_keypair(params: &Params, kp: &KeyPair) -> String {
    let mut e = Envelope::new(KIND_KEYPAIR, params);
    e.h = Some(encode_vector(&kp.pk.h));
    e.s = Some(encode_vector(&kp.pk.s));
    e.x = Some(encode_vector(&kp.sk.x));
    e.y = Some(encode_vector(&kp.sk.y));
    e.to_json()
}

pub fn encode_public_key(params: &Params, pk: &PublicKey) -> String {
    let mut e = Envelope::new(KIND_PUBLIC_KEY, params);
    e.h = Some(encode_vector(&pk.h));
    e.s = Some(encode_vector(&pk.s));
    e.to_json()
}

pub fn encode_secret_key(params: &Params, sk: &SecretKey) -> String {
    let mut e = Envelope::new(KIND_SECRET_KEY, params);
    e.x = Some(encode_vector(&sk.x));
    e.y = Some(encode_vector(&sk.y));
    e.to_json()
}

pub fn encode_signature(params: &Params, sig: &Signature) -> String {
    let mut e = Envelope::new(KIND_SIGNATURE, params);
    e.g = Some(encode_vector(&sig.g));
    e.u1 = Some(encode_vector(&sig.u1));
    e.u2 = Some(encode_vector(&sig.u2));
    e.to_json()
}

/// Reads a key pair; needs all four vectors.
pub fn decode_keypair(text: &str) -> Result<(Params, KeyPair)> {
    let e = Envelope::parse(text)?;
    e.expect_kind(&[KIND_KEYPAIR])?;
    let params = e.params()?;
    let pk = PublicKey {
        h: e.vector(&params, "h", &e.h)?,
        s: e.vector(&params, "s", &e.s)?,
    };
    let sk = SecretKey {
        x: e.vector(&params, "x", &e.x)?,
        y: e.vector(&params, "y", &e.y)?,
    };
    Ok((params, KeyPair { pk, sk }))
}

/// Reads the public half of a public-key or key-pair file.
pub fn decode_public_key(text: &str) -> Result<(Params, PublicKey)> {
    let e = Envelope::parse(text)?;
    e.expect_kind(&[KIND_PUBLIC_KEY, KIND_KEYPAIR])?;
    let params = e.params()?;
    let pk = PublicKey {
        h: e.vector(&params, "h", &e.h)?,
        s: e.vector(&params, "s", &e.s)?,
    };
    Ok((params, pk))
}

/// Reads the secret half of a secret-key or key-pair file.
pub fn decode_secret_key(text: &str) -> Result<(Params, SecretKey)> {
    let e = Envelope::parse(text)?;
    e.expect_kind(&[KIND_SECRET_KEY, KIND_KEYPAIR])?;
    let params = e.params()?;
    let sk = SecretKey {
        x: e.vector(&params, "x", &e.x)?,
        y: e.vector(&params, "y", &e.y)?,
    };
    Ok((params, sk))
}

pub fn decode_signature(text: &str) -> Result<(Params, Signature)> {
    let e = Envelope::parse(text)?;
    e.expect_kind(&[KIND_SIGNATURE])?;
    let params = e.params()?;
    let sig = Signature {
        g: e.vector(&params, "g", &e.g)?,
        u1: e.vector(&params, "u1", &e.u1)?,
        u2: e.vector(&params, "u2", &e.u2)?,
    };
    Ok((params, sig))
}

pub fn encode_report(report: &AttackReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("reports always serialize");
    out.push('\n');
    out
}

pub fn decode_report(text: &str) -> Result<AttackReport> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

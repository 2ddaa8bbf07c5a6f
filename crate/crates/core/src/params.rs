//! Public parameters and the published instances.

use crate::error::{Error, Result};
use crate::field::Field;

/// Public parameters (n, w, w_r, w_g) over F_{2^m}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    /// "RQCS-1", "RQCS-2", "RQCS-3" or "custom".
    pub instance: String,
    /// Claimed security level in bits (0 for custom parameters).
    pub lambda: u32,
    pub m: usize,
    pub n: usize,
    pub w: usize,
    pub w_r: usize,
    pub w_g: usize,
    pub field: Field,
}

/// A published parameter set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceSpec {
    pub name: &'static str,
    pub lambda: u32,
    pub m: usize,
    pub n: usize,
    /// w = w_r = w_g for every published instance.
    pub w: usize,
}

pub const INSTANCES: [InstanceSpec; 3] = [
    InstanceSpec {
        name: "RQCS-1",
        lambda: 128,
        m: 89,
        n: 67,
        w: 5,
    },
    InstanceSpec {
        name: "RQCS-2",
        lambda: 192,
        m: 121,
        n: 97,
        w: 6,
    },
    InstanceSpec {
        name: "RQCS-3",
        lambda: 256,
        m: 139,
        n: 101,
        w: 6,
    },
];

impl Params {
    /// Parameters for a published instance name (case-insensitive), or a
    /// custom set written `custom:m:n:w:w_g:w_r`.
    pub fn setup(name: &str) -> Result<Params> {
        if let Some(rest) = name.strip_prefix("custom:") {
            let nums: Vec<usize> = rest
                .split(':')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::UnknownInstance(name.to_string()))?;
            let [m, n, w, w_g, w_r] = nums[..] else {
                return Err(Error::UnknownInstance(name.to_string()));
            };
            return Params::custom(m, n, w, w_g, w_r);
        }
        let spec = INSTANCES
            .iter()
            .find(|i| i.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::UnknownInstance(name.to_string()))?;
        let field = Field::standard(spec.m)?;
        Params::with_field(
            spec.name,
            spec.lambda,
            spec.n,
            spec.w,
            spec.w,
            spec.w,
            field,
        )
    }

    /// Custom parameters over the pinned field of degree m.
    pub fn custom(m: usize, n: usize, w: usize, w_g: usize, w_r: usize) -> Result<Params> {
        Params::with_field("custom", 0, n, w, w_g, w_r, Field::standard(m)?)
    }

    pub fn with_field(
        instance: &str,
        lambda: u32,
        n: usize,
        w: usize,
        w_g: usize,
        w_r: usize,
        field: Field,
    ) -> Result<Params> {
        let params = Params {
            instance: instance.to_string(),
            lambda,
            m: field.m(),
            n,
            w,
            w_r,
            w_g,
            field,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let Params {
            m, n, w, w_r, w_g, ..
        } = *self;
        if m != self.field.m() {
            return Err(Error::InvalidParams(format!(
                "m = {m} but the field has degree {}",
                self.field.m()
            )));
        }
        if w == 0 || w_g == 0 || n == 0 {
            return Err(Error::InvalidParams(format!(
                "n, w and w_g must be positive (n = {n}, w = {w}, w_g = {w_g})"
            )));
        }
        let bound = w * w_g + w_r;
        if bound >= m.min(n) {
            return Err(Error::InvalidParams(format!(
                "w*w_g + w_r < min(m, n) fails: {w}*{w_g} + {w_r} = {bound} >= {}",
                m.min(n)
            )));
        }
        if m <= 2 * w {
            return Err(Error::InvalidParams(format!(
                "m > 2w fails: m = {m}, 2w = {}",
                2 * w
            )));
        }
        Ok(())
    }

    /// The verification bound w·w_g + w_r on ‖u₁‖ and ‖u₂‖.
    pub fn weight_bound(&self) -> usize {
        self.w * self.w_g + self.w_r
    }

    /// Short label such as "(2,89,67,5)" when w = w_r = w_g, else
    /// "(2,m,n,w,w_g,w_r)".
    pub fn label(&self) -> String {
        if self.w == self.w_r && self.w == self.w_g {
            format!("(2,{},{},{})", self.m, self.n, self.w)
        } else {
            format!(
                "(2,{},{},{},{},{})",
                self.m, self.n, self.w, self.w_g, self.w_r
            )
        }
    }

    /// Token accepted by [`Params::setup`] that reproduces these parameters.
    pub fn token(&self) -> String {
        if self.instance == "custom" {
            format!(
                "custom:{}:{}:{}:{}:{}",
                self.m, self.n, self.w, self.w_g, self.w_r
            )
        } else {
            self.instance.clone()
        }
    }
}

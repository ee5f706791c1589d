use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// An integrability exponent that may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinite,
}

impl Exponent {
    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinite)
    }

    /// Finite payload, if any.
    pub fn finite(self) -> Option<f64> {
        match self {
            Exponent::Finite(v) => Some(v),
            Exponent::Infinite => None,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(v) => write!(f, "{v}"),
            Exponent::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "inf" | "Inf" | "INF" | "infinity" | "oo" => Ok(Exponent::Infinite),
            other => {
                let v: f64 = other
                    .parse()
                    .map_err(|_| Error::Parse(format!("not an exponent: {other:?}")))?;
                Ok(Exponent::Finite(v))
            }
        }
    }
}

/// Index pair (p, r) for the Lorentz-scale norms.
///
/// Invariants: p finite with p >= 1; r infinite or finite with r >= 1.
#[derive(Debug, Clone, Copy)]
pub struct LorentzIndices {
    p: f64,
    r: Exponent,
}

impl LorentzIndices {
    pub fn new(p: f64, r: Exponent) -> Result<Self, Error> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::InvalidIndices(format!(
                "primary exponent p must be finite and >= 1, got {p}"
            )));
        }
        if let Exponent::Finite(rv) = r {
            if !rv.is_finite() || rv < 1.0 {
                return Err(Error::InvalidIndices(format!(
                    "secondary exponent r must be >= 1 or inf, got {rv}"
                )));
            }
        }
        Ok(LorentzIndices { p, r })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn r(&self) -> Exponent {
        self.r
    }

    /// Conjugate exponent p' = p/(p-1); infinite when p = 1.
    pub fn p_conjugate(&self) -> f64 {
        if self.p == 1.0 {
            f64::INFINITY
        } else {
            self.p / (self.p - 1.0)
        }
    }

    /// Conjugate of the secondary exponent, with the convention r' = 1 when
    /// r is infinite.
    pub fn r_conjugate(&self) -> f64 {
        match self.r {
            Exponent::Infinite => 1.0,
            Exponent::Finite(rv) => {
                if rv == 1.0 {
                    f64::INFINITY
                } else {
                    rv / (rv - 1.0)
                }
            }
        }
    }

    /// The factor (p'/r')^(1/r') controlling the decay of Hardy averages in
    /// terms of this norm. Requires p > 1 and r >= p.
    pub fn hardy_decay_constant(&self) -> Result<f64, Error> {
        if self.p <= 1.0 {
            return Err(Error::InvalidIndices(
                "decay constant undefined: fails when p=1".into(),
            ));
        }
        if let Exponent::Finite(rv) = self.r {
            if rv < self.p {
                return Err(Error::InvalidIndices(format!(
                    "decay constant needs r >= p, got r = {rv} < p = {}",
                    self.p
                )));
            }
        }
        let pc = self.p_conjugate();
        let rc = self.r_conjugate();
        Ok((pc / rc).powf(1.0 / rc))
    }
}

/// Evaluation route for the Lorentz norm: direct closed form over the
/// rearrangement pieces, or the level-set (layer cake) form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LorentzMethod {
    ClosedForm,
    LayerCake,
}

/// Norm flavor taken over a cube family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorreyFlavor {
    Morrey,
    WeakMorrey,
    LorentzMorrey,
    LorentzMorreyStar,
}

/// Index triple (p, kappa, r) for cube-family norms.
///
/// kappa is strictly inside (0,1): the endpoints collapse to the plain
/// integral and supremum norms and are rejected.
#[derive(Debug, Clone, Copy)]
pub struct MorreyIndices {
    p: f64,
    kappa: f64,
    r: Option<Exponent>,
}

impl MorreyIndices {
    pub fn new(p: f64, kappa: f64, r: Option<Exponent>) -> Result<Self, Error> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::InvalidIndices(format!(
                "primary exponent p must be finite and >= 1, got {p}"
            )));
        }
        if !kappa.is_finite() || kappa <= 0.0 || kappa >= 1.0 {
            return Err(Error::InvalidIndices(format!(
                "kappa must lie strictly inside (0,1), got {kappa}"
            )));
        }
        if let Some(Exponent::Finite(rv)) = r {
            if !rv.is_finite() || rv < 1.0 {
                return Err(Error::InvalidIndices(format!(
                    "secondary exponent r must be >= 1 or inf, got {rv}"
                )));
            }
        }
        Ok(MorreyIndices { p, kappa, r })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn r(&self) -> Option<Exponent> {
        self.r
    }

    /// The secondary exponent actually used by `flavor`, checking that any
    /// explicitly supplied r is consistent with it.
    pub fn secondary_for(&self, flavor: MorreyFlavor) -> Result<Exponent, Error> {
        match flavor {
            MorreyFlavor::Morrey => match self.r {
                None => Ok(Exponent::Finite(self.p)),
                Some(Exponent::Finite(rv)) if rv == self.p => Ok(Exponent::Finite(self.p)),
                Some(other) => Err(Error::InvalidIndices(format!(
                    "integral-flavor norm forces r = p = {}, got r = {other}",
                    self.p
                ))),
            },
            MorreyFlavor::WeakMorrey => match self.r {
                None | Some(Exponent::Infinite) => Ok(Exponent::Infinite),
                Some(other) => Err(Error::InvalidIndices(format!(
                    "weak-flavor norm forces r = inf, got r = {other}"
                ))),
            },
            MorreyFlavor::LorentzMorrey | MorreyFlavor::LorentzMorreyStar => {
                self.r.ok_or_else(|| {
                    Error::InvalidIndices("this flavor needs an explicit secondary exponent".into())
                })
            }
        }
    }
}

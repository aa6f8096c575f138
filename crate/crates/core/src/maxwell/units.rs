//! Planck-scale standards from c = a/t and ħ = m·a·c.

use crate::error::{Error, Result};
use serde::Serialize;

pub const C_LIGHT: f64 = 299_792_458.0;
pub const HBAR: f64 = 1.054_571_817e-34;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Anchor {
    Length(f64),
    Time(f64),
    Mass(f64),
}

/// SI length, time and mass standards.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlanckUnits {
    pub length: f64,
    pub time: f64,
    pub mass: f64,
}

impl PlanckUnits {
    pub fn from_anchor(anchor: Anchor) -> Result<Self> {
        let v = match anchor {
            Anchor::Length(v) | Anchor::Time(v) | Anchor::Mass(v) => v,
        };
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidArgument(format!("anchor must be positive, got {v}")));
        }
        let length = match anchor {
            Anchor::Length(a) => a,
            Anchor::Time(t) => t * C_LIGHT,
            Anchor::Mass(m) => HBAR / (m * C_LIGHT),
        };
        Ok(Self { length, time: length / C_LIGHT, mass: HBAR / (length * C_LIGHT) })
    }

    /// m ≈ ħk/(√3 (c(k) − c(0))) with k in units of 1/a and c normalized
    /// to c(0) = 1.
    pub fn mass_estimate(&self, k: f64, c_norm: f64) -> Result<f64> {
        let dc = c_norm - 1.0;
        if dc == 0.0 {
            return Err(Error::SingularPoint(0.0));
        }
        Ok(self.mass * k / (3f64.sqrt() * dc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_and_round_trip() {
        let u = PlanckUnits::from_anchor(Anchor::Length(1.0)).unwrap();
        assert_eq!(u.time, 1.0 / C_LIGHT);
        assert!((u.mass - HBAR / C_LIGHT).abs() <= 1e-15 * u.mass);
        let back = PlanckUnits::from_anchor(Anchor::Mass(u.mass)).unwrap();
        assert!((back.length - 1.0).abs() < 1e-12);
        assert!(PlanckUnits::from_anchor(Anchor::Time(-1.0)).is_err());
    }

    #[test]
    fn synthetic_speed_estimator() {
        let u = PlanckUnits::from_anchor(Anchor::Length(1.616e-35)).unwrap();
        let k = 1e-3;
        let m = u.mass_estimate(k, 1.0 + k / 3f64.sqrt()).unwrap();
        assert!((m / u.mass - 1.0).abs() < 0.01);
    }
}

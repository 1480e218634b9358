//! Intelligent Driver Model acceleration law.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

/// Car-following parameters. Defaults follow common CityFlow vehicle
/// settings so real flow files stay runnable without tuning.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IdmParams {
    /// Desired speed (m/s).
    pub desired_speed: f64,
    /// Maximum acceleration (m/s^2).
    pub max_accel: f64,
    /// Comfortable deceleration (m/s^2).
    pub comfort_decel: f64,
    /// Minimum bumper gap at standstill (m).
    pub min_gap: f64,
    /// Desired time headway (s).
    pub headway: f64,
    /// Acceleration exponent.
    pub exponent: f64,
    /// Vehicle length (m).
    pub length: f64,
}

impl Default for IdmParams {
    fn default() -> Self {
        IdmParams {
            desired_speed: 16.67,
            max_accel: 2.0,
            comfort_decel: 4.5,
            min_gap: 2.5,
            headway: 1.0,
            exponent: 4.0,
            length: 5.0,
        }
    }
}

impl IdmParams {
    pub fn validate(&self) -> Result<()> {
        let ok = self.desired_speed > 0.0
            && self.max_accel > 0.0
            && self.comfort_decel > 0.0
            && self.min_gap > 0.0
            && self.headway > 0.0
            && self.exponent >= 1.0
            && self.length > 0.0;
        if ok {
            Ok(())
        } else {
            Err(SimError::InvalidSpec(
                "IDM parameters must be strictly positive with exponent >= 1".into(),
            ))
        }
    }
}

/// Leader seen by a vehicle: its speed and the bumper-to-bumper gap.
#[derive(Debug, Clone, Copy)]
pub struct Leader {
    pub speed: f64,
    pub gap: f64,
}

/// IDM acceleration:
/// a = a_max * [1 - (v/v0)^delta - (s*/gap)^2],
/// s* = s0 + v*T + v*(v - v_lead) / (2*sqrt(a_max*b)).
/// Without a leader the interaction term is zero.
pub fn acceleration(speed: f64, leader: Option<Leader>, p: &IdmParams) -> Result<f64> {
    if let Some(l) = leader {
        if l.gap <= 0.0 {
            return Err(SimError::NonPositiveGap { gap: l.gap });
        }
    }
    Ok(acceleration_unchecked(speed, leader, p))
}

/// Same law with the gap floored to a small positive value; used on the
/// simulator hot path where transient zero gaps are clamped, not errors.
pub(crate) fn acceleration_clamped(speed: f64, leader: Option<Leader>, p: &IdmParams) -> f64 {
    let leader = leader.map(|l| Leader {
        speed: l.speed,
        gap: l.gap.max(1e-6),
    });
    acceleration_unchecked(speed, leader, p)
}

fn acceleration_unchecked(speed: f64, leader: Option<Leader>, p: &IdmParams) -> f64 {
    let free = (speed / p.desired_speed).powf(p.exponent);
    let interaction = match leader {
        Some(l) => {
            let desired_gap = p.min_gap
                + speed * p.headway
                + speed * (speed - l.speed) / (2.0 * (p.max_accel * p.comfort_decel).sqrt());
            (desired_gap / l.gap).powi(2)
        }
        None => 0.0,
    };
    p.max_accel * (1.0 - free - interaction)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_flow_equilibrium_is_zero() {
        let p = IdmParams::default();
        let a = acceleration(p.desired_speed, None, &p).unwrap();
        assert!(a.abs() < 1e-12);
    }

    #[test]
    fn standstill_accelerates_at_max() {
        let p = IdmParams::default();
        let a = acceleration(0.0, None, &p).unwrap();
        assert!((a - p.max_accel).abs() < 1e-12);
    }

    #[test]
    fn equal_speed_at_desired_gap_decelerates_below_desired_speed() {
        // v = 10, leader at same speed, gap = s0 + v*T. The dynamic term
        // vanishes, so a = a_max * [1 - (10/v0)^delta - 1] < 0 for v0 > 10.
        // Cross-checked against an independently written scalar evaluation.
        let p = IdmParams::default();
        let v = 10.0;
        let gap = p.min_gap + v * p.headway;
        let a = acceleration(v, Some(Leader { speed: v, gap }), &p).unwrap();

        let desired_gap =
            p.min_gap + v * p.headway + v * (v - v) / (2.0 * (p.max_accel * p.comfort_decel).sqrt());
        let oracle =
            p.max_accel * (1.0 - (v / p.desired_speed).powf(p.exponent) - (desired_gap / gap).powi(2));
        assert!((a - oracle).abs() < 1e-12);
        assert!(a < 0.0);
    }

    #[test]
    fn non_positive_gap_is_domain_error() {
        let p = IdmParams::default();
        assert!(acceleration(5.0, Some(Leader { speed: 0.0, gap: 0.0 }), &p).is_err());
        assert!(acceleration(5.0, Some(Leader { speed: 0.0, gap: -1.0 }), &p).is_err());
    }
}

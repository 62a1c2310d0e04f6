//! Closed-form normal geodesics of the Aff₊(2) structure 𝒳 = (x − 1)∂y,
//! Y₁ = X, starting on the singular line {x = 1}.
//!
//! With α = 2 arctan τ the geodesic is x = 1 + (ε/q) sin α and τ solves
//! τ̇ = ετ + ½q(1 + τ²), τ(0) = 0. The geodesic returns to {x = 1} when
//! τ → ∞.

use crate::error::{Error, Result};

/// |q − 1| below this routes to the q = 1 formulas.
pub const CRITICAL_Q_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Aff2Case {
    /// q < 1
    Below,
    /// q = 1
    Critical,
    /// q > 1
    Above,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormGeodesic {
    pub epsilon: f64,
    pub q: f64,
    pub case: Aff2Case,
    /// r = ε/q
    pub r: f64,
    /// arctan(1/√(q² − 1)), for q > 1 only.
    pub theta: Option<f64>,
    pub y0: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormPoint {
    pub x: f64,
    /// y − y₀
    pub dy: f64,
    pub tau: f64,
    pub alpha: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FirstReturn {
    pub t: f64,
    pub dy: f64,
}

impl ClosedFormGeodesic {
    pub fn new(epsilon: f64, q: f64, y0: f64) -> Result<Self> {
        if epsilon != 1.0 && epsilon != -1.0 {
            return Err(Error::validation(format!("ε must be ±1, got {epsilon}")));
        }
        if !(q > 0.0) || !q.is_finite() {
            return Err(Error::validation(format!("q must be positive, got {q}")));
        }
        let case = if (q - 1.0).abs() <= CRITICAL_Q_TOL {
            Aff2Case::Critical
        } else if q < 1.0 {
            Aff2Case::Below
        } else {
            Aff2Case::Above
        };
        let theta = (case == Aff2Case::Above).then(|| (1.0 / (q * q - 1.0).sqrt()).atan());
        Ok(Self {
            epsilon,
            q,
            case,
            r: epsilon / q,
            theta,
            y0,
        })
    }

    pub fn tau(&self, t: f64) -> f64 {
        let (e, q) = (self.epsilon, self.q);
        match self.case {
            Aff2Case::Below => {
                let s = (1.0 - q * q).sqrt();
                let est = (s * t).exp();
                q * (est - 1.0) / (e + s + (s - e) * est)
            }
            Aff2Case::Critical => t / (2.0 - e * t),
            Aff2Case::Above => {
                let k = (q * q - 1.0).sqrt();
                let theta = self.theta.expect("set for q > 1");
                k / q * (0.5 * t * k + e * theta).tan() - e / q
            }
        }
    }

    /// Chart point at time `t`, valid on `[0, t*)`.
    pub fn eval(&self, t: f64) -> ClosedFormPoint {
        let tau = self.tau(t);
        let w = 1.0 + tau * tau;
        ClosedFormPoint {
            x: 1.0 + self.r * 2.0 * tau / w,
            dy: self.q * t + self.r * 2.0 * tau * tau / w - 2.0 * tau.atan(),
            tau,
            alpha: 2.0 * tau.atan(),
        }
    }

    /// Time and vertical displacement of the return to {x = 1}, if any.
    pub fn first_return(&self) -> Option<FirstReturn> {
        let (e, q) = (self.epsilon, self.q);
        let pi = std::f64::consts::PI;
        match self.case {
            Aff2Case::Below => (e > 0.0).then(|| {
                let s = (1.0 - q * q).sqrt();
                let t = ((1.0 + s) / (1.0 - s)).ln() / s;
                FirstReturn {
                    t,
                    dy: q * t + 2.0 / q - pi,
                }
            }),
            Aff2Case::Critical => (e > 0.0).then_some(FirstReturn { t: 2.0, dy: 4.0 - pi }),
            Aff2Case::Above => {
                let k = (q * q - 1.0).sqrt();
                let theta = self.theta.expect("set for q > 1");
                let t = (pi - 2.0 * e * theta) / k;
                Some(FirstReturn {
                    t,
                    dy: q * t + 2.0 * e / q - pi,
                })
            }
        }
    }
}

pub fn aff2_closed_form(epsilon: f64, q: f64, t: f64) -> Result<ClosedFormPoint> {
    Ok(ClosedFormGeodesic::new(epsilon, q, 0.0)?.eval(t))
}

pub fn first_return(epsilon: f64, q: f64) -> Result<Option<FirstReturn>> {
    Ok(ClosedFormGeodesic::new(epsilon, q, 0.0)?.first_return())
}

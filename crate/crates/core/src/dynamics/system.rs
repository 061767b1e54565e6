use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::integrator::{Dop853, IntegrationError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("(j, h) = ({j}, {h}) is not a regular value")]
    NotRegular { j: f64, h: f64 },
    #[error("could not bracket the turning points for (j, h) = ({j}, {h})")]
    Bracketing { j: f64, h: f64 },
    #[error(transparent)]
    Integration(#[from] IntegrationError),
}

/// `V(r) = a r⁴ + b r²` plus the integration tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemSpec {
    pub a: f64,
    pub b: f64,
    pub tol: f64,
}

impl SystemSpec {
    pub fn new(a: f64, b: f64, tol: f64) -> Result<Self, DynamicsError> {
        if !(a.is_finite() && b.is_finite() && tol.is_finite()) {
            return Err(DynamicsError::InvalidSystem("coefficients must be finite".into()));
        }
        if a <= 0.0 {
            return Err(DynamicsError::InvalidSystem(format!("quartic coefficient must be positive, got {a}")));
        }
        if b >= 0.0 {
            return Err(DynamicsError::InvalidSystem(format!("quadratic coefficient must be negative, got {b}")));
        }
        if !(tol > 0.0 && tol < 1e-3) {
            return Err(DynamicsError::InvalidSystem(format!("tolerance must lie in (0, 1e-3), got {tol}")));
        }
        Ok(Self { a, b, tol })
    }

    pub fn champagne_bottle() -> Self {
        Self { a: 1.0, b: -1.0, tol: 1e-10 }
    }

    pub fn with_tol(self, tol: f64) -> Result<Self, DynamicsError> {
        Self::new(self.a, self.b, tol)
    }

    pub fn potential(&self, r: f64) -> f64 {
        let u = r * r;
        self.a * u * u + self.b * u
    }

    /// `V'(r) / r`, so that `∇V = f q`.
    pub fn radial_force_factor(&self, r2: f64) -> f64 {
        4.0 * self.a * r2 + 2.0 * self.b
    }

    /// Radius of the circle of minima of `V`.
    pub fn ring_radius(&self) -> f64 {
        (-self.b / (2.0 * self.a)).sqrt()
    }

    /// Local error control runs two decades below `tol`, which keeps the
    /// drift of H and J over `t ≤ 100` under `tol (1 + |H|)`.
    pub fn integrator(&self) -> Dop853 {
        Dop853::new(1e-2 * self.tol)
    }

    pub fn is_regular(&self, v: RegularValue) -> bool {
        v.j.is_finite() && v.h.is_finite() && !(v.j == 0.0 && v.h == 0.0) && v.h > well_bottom(v.j, self)
    }

    pub fn check_regular(&self, v: RegularValue) -> Result<(), DynamicsError> {
        if self.is_regular(v) {
            Ok(())
        } else {
            Err(DynamicsError::NotRegular { j: v.j, h: v.h })
        }
    }
}

impl Default for SystemSpec {
    fn default() -> Self {
        Self::champagne_bottle()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusPoint {
    pub q: [f64; 2],
    pub p: [f64; 2],
}

impl TorusPoint {
    pub fn new(x: f64, y: f64, px: f64, py: f64) -> Self {
        Self { q: [x, y], p: [px, py] }
    }

    pub fn from_array(s: [f64; 4]) -> Self {
        Self::new(s[0], s[1], s[2], s[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.q[0], self.q[1], self.p[0], self.p[1]]
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|x| x.is_finite())
    }
}

/// A point `(j, h)` of the image of the energy-momentum map.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularValue {
    pub j: f64,
    pub h: f64,
}

impl RegularValue {
    pub fn new(j: f64, h: f64) -> Self {
        Self { j, h }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EnergyMomentum {
    Regular(RegularValue),
    Critical(RegularValue),
}

impl EnergyMomentum {
    pub fn value(self) -> RegularValue {
        match self {
            Self::Regular(v) | Self::Critical(v) => v,
        }
    }

    pub fn is_regular(self) -> bool {
        matches!(self, Self::Regular(_))
    }
}

fn hamiltonian(s: &[f64; 4], sys: &SystemSpec) -> f64 {
    let r2 = s[0] * s[0] + s[1] * s[1];
    0.5 * (s[2] * s[2] + s[3] * s[3]) + sys.a * r2 * r2 + sys.b * r2
}

fn momentum(s: &[f64; 4]) -> f64 {
    s[0] * s[3] - s[1] * s[2]
}

/// `(j, h)` at a phase-space point. Points on circular orbits at the bottom
/// of the effective potential, and the origin at rest, are critical.
pub fn energy_momentum(state: &TorusPoint, sys: &SystemSpec) -> EnergyMomentum {
    let s = state.to_array();
    let v = RegularValue { j: momentum(&s), h: hamiltonian(&s, sys) };
    let floor = well_bottom(v.j, sys);
    if (v.j == 0.0 && v.h == 0.0) || v.h <= floor + 1e-14 * (1.0 + floor.abs()) {
        EnergyMomentum::Critical(v)
    } else {
        EnergyMomentum::Regular(v)
    }
}

/// Hamiltonian vector fields `(X_H, X_J)` in `(x, y, p_x, p_y)` order.
pub fn vector_fields(state: &TorusPoint, sys: &SystemSpec) -> ([f64; 4], [f64; 4]) {
    let [x, y, px, py] = state.to_array();
    let f = sys.radial_force_factor(x * x + y * y);
    ([px, py, -f * x, -f * y], [-y, x, -py, px])
}

/// `{H, J} = Σ ∂H/∂q ∂J/∂p - ∂H/∂p ∂J/∂q`.
pub fn poisson_bracket(state: &TorusPoint, sys: &SystemSpec) -> f64 {
    let [x, y, px, py] = state.to_array();
    let f = sys.radial_force_factor(x * x + y * y);
    let (dh_dq, dh_dp) = ([f * x, f * y], [px, py]);
    let (dj_dq, dj_dp) = ([py, -px], [-y, x]);
    dh_dq[0] * dj_dp[0] + dh_dq[1] * dj_dp[1] - dh_dp[0] * dj_dq[0] - dh_dp[1] * dj_dq[1]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Field {
    H,
    J,
    /// The flow of `c_h H + c_j J`.
    Mixed {
        c_h: f64,
        c_j: f64,
    },
}

/// Right-hand side of the H-flow with a fifth component accumulating
/// `∫ |p|² dt = ∫ p·dq`.
pub fn mixed_rhs(sys: &SystemSpec) -> impl Fn(&[f64; 5]) -> [f64; 5] + '_ {
    move |s| {
        let f = sys.radial_force_factor(s[0] * s[0] + s[1] * s[1]);
        [s[2], s[3], -f * s[0], -f * s[1], s[2] * s[2] + s[3] * s[3]]
    }
}

fn h_rhs(sys: &SystemSpec) -> impl Fn(&[f64; 4]) -> [f64; 4] + '_ {
    move |s| {
        let f = sys.radial_force_factor(s[0] * s[0] + s[1] * s[1]);
        [s[2], s[3], -f * s[0], -f * s[1]]
    }
}

fn rotate(s: [f64; 4], angle: f64) -> [f64; 4] {
    let (sn, cs) = angle.sin_cos();
    [cs * s[0] - sn * s[1], sn * s[0] + cs * s[1], cs * s[2] - sn * s[3], sn * s[2] + cs * s[3]]
}

/// Time-`t` map of the chosen field. The J-flow is the rigid rotation by
/// `t`; the two flows commute, so the mixed flow is their composition.
pub fn flow(state: &TorusPoint, field: Field, t: f64, sys: &SystemSpec) -> Result<TorusPoint, DynamicsError> {
    let s = state.to_array();
    let out = match field {
        Field::J => rotate(s, t),
        Field::H => sys.integrator().solve(&h_rhs(sys), s, t)?,
        Field::Mixed { c_h, c_j } => rotate(sys.integrator().solve(&h_rhs(sys), s, c_h * t)?, c_j * t),
    };
    Ok(TorusPoint::from_array(out))
}

pub fn effective_potential(j: f64, r: f64, sys: &SystemSpec) -> f64 {
    j * j / (2.0 * r * r) + sys.potential(r)
}

fn effective_potential_slope(j: f64, r: f64, sys: &SystemSpec) -> f64 {
    -j * j / (r * r * r) + 4.0 * sys.a * r.powi(3) + 2.0 * sys.b * r
}

/// Minimizer of the effective potential. For `j ≠ 0` this is the positive
/// root `u = r²` of `4a u³ + 2b u² - j² = 0`; for `j = 0` it is the ring.
pub fn r_star(j: f64, sys: &SystemSpec) -> f64 {
    if j == 0.0 {
        return sys.ring_radius();
    }
    let g = |u: f64| 4.0 * sys.a * u * u * u + 2.0 * sys.b * u * u - j * j;
    // g decreases up to u = -b/(3a) and increases afterwards, with g(0) < 0
    let mut lo = -sys.b / (3.0 * sys.a);
    let mut hi = lo.max(1.0);
    while g(hi) < 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    let mut u = 0.5 * (lo + hi);
    for _ in 0..3 {
        let dg = 12.0 * sys.a * u * u + 4.0 * sys.b * u;
        if dg != 0.0 {
            u -= g(u) / dg;
        }
    }
    u.sqrt()
}

/// Lowest energy reachable at angular momentum `j`.
pub fn well_bottom(j: f64, sys: &SystemSpec) -> f64 {
    effective_potential(j, r_star(j, sys), sys)
}

fn bisect(mut lo: f64, mut hi: f64, g: impl Fn(f64) -> f64) -> f64 {
    let glo = g(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0) == (glo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    0.5 * (lo + hi)
}

fn newton_polish(r: f64, j: f64, h: f64, sys: &SystemSpec) -> f64 {
    let mut r = r;
    for _ in 0..2 {
        let d = effective_potential_slope(j, r, sys);
        if d.abs() < 1e-300 {
            break;
        }
        let next = r - (effective_potential(j, r, sys) - h) / d;
        if !next.is_finite() || next <= 0.0 {
            break;
        }
        r = next;
    }
    r
}

/// Radial turning points `r_min ≤ r* ≤ r_max` with `V_eff(r) = h`. For
/// `j = 0` and `h ≥ 0` the motion passes through the origin and `r_min = 0`.
pub fn turning_points(v: RegularValue, sys: &SystemSpec) -> Result<(f64, f64), DynamicsError> {
    let RegularValue { j, h } = v;
    let rs = r_star(j, sys);
    // also rejects NaN
    if h.partial_cmp(&effective_potential(j, rs, sys)) != Some(std::cmp::Ordering::Greater) {
        return Err(DynamicsError::Bracketing { j, h });
    }
    let g = |r: f64| effective_potential(j, r, sys) - h;

    let mut outer = 2.0 * rs;
    while g(outer) <= 0.0 {
        outer *= 2.0;
        if !outer.is_finite() {
            return Err(DynamicsError::Bracketing { j, h });
        }
    }
    let r_max = newton_polish(bisect(rs, outer, g), j, h, sys);

    let r_min = if j == 0.0 && h >= 0.0 {
        0.0
    } else {
        let mut inner = 0.5 * rs;
        while g(inner) <= 0.0 {
            inner *= 0.5;
            if inner < 1e-300 {
                return Err(DynamicsError::Bracketing { j, h });
            }
        }
        newton_polish(bisect(inner, rs, g), j, h, sys)
    };
    Ok((r_min, r_max))
}

/// Deterministic point on the torus over `v`: on the positive x-axis at
/// `r*` moving outward, or at rest at the outer turning point when `j = 0`.
pub fn seed_torus_point(v: RegularValue, sys: &SystemSpec) -> Result<TorusPoint, DynamicsError> {
    sys.check_regular(v)?;
    if v.j == 0.0 {
        let (_, r_max) = turning_points(v, sys)?;
        return Ok(TorusPoint::new(r_max, 0.0, 0.0, 0.0));
    }
    let rs = r_star(v.j, sys);
    let pr = (2.0 * (v.h - effective_potential(v.j, rs, sys))).sqrt();
    Ok(TorusPoint::new(rs, 0.0, pr, v.j / rs))
}

/// Period of small radial oscillations at the bottom of the well.
pub fn harmonic_frequency(j: f64, sys: &SystemSpec) -> f64 {
    let r = r_star(j, sys);
    let second = 3.0 * j * j / r.powi(4) + 12.0 * sys.a * r * r + 2.0 * sys.b;
    debug_assert!(second > 0.0);
    second.sqrt()
}

use std::f64::consts::PI;
use std::ops::ControlFlow;

use serde::Serialize;

use super::{MonodromyError, RETURN_TIME_CAP};
use crate::dynamics::{
    effective_potential, mixed_rhs, seed_torus_point, turning_points, RegularValue, SystemSpec, TorusPoint,
};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FirstReturn {
    pub t_rad: f64,
    /// Polar-angle advance over one radial period, as a principal value in
    /// `(-π, π]`.
    pub theta: f64,
    /// `∫ |p|² dt = ∫ p·dq` along the H-flow segment.
    pub p_dot_dq: f64,
    pub seed: TorusPoint,
    pub end: TorusPoint,
}

#[derive(Clone, Copy, Debug)]
enum Event {
    /// `r² - r*²` crosses zero upwards.
    RadiusUp(f64),
    /// `q·p` crosses zero downwards (outer turning point).
    TurningDown,
}

impl Event {
    fn value(self, y: &[f64; 5]) -> f64 {
        match self {
            Self::RadiusUp(r2) => y[0] * y[0] + y[1] * y[1] - r2,
            Self::TurningDown => -(y[0] * y[2] + y[1] * y[3]),
        }
    }
}

/// Integrates the H-flow from the seed point until the radial state first
/// comes back to its starting value.
///
/// Both event functions are oriented to cross from negative to positive at
/// the return; the crossing is located by regula falsi on single steps taken
/// from the start of the bracketing step.
pub fn first_return(v: RegularValue, sys: &SystemSpec) -> Result<FirstReturn, MonodromyError> {
    let seed = seed_torus_point(v, sys)?;
    let event = if v.j == 0.0 { Event::TurningDown } else { Event::RadiusUp(seed.q[0] * seed.q[0]) };
    let f = mixed_rhs(sys);
    let integ = sys.integrator();
    let [x, y, px, py] = seed.to_array();
    let y0 = [x, y, px, py, 0.0];

    let mut armed = false;
    let mut bracket: Option<(f64, [f64; 5])> = None;
    let out = integ.integrate(&f, y0, RETURN_TIME_CAP, |st| {
        let (g0, g1) = (event.value(st.y0), event.value(st.y1));
        if armed && g0 < 0.0 && g1 >= 0.0 {
            bracket = Some((st.t0, *st.y0));
            return ControlFlow::Break(());
        }
        if g1 < 0.0 {
            armed = true;
        }
        ControlFlow::Continue(())
    })?;
    let Some((t0, ys)) = bracket else {
        debug_assert!(!out.stopped);
        return Err(MonodromyError::NoReturn { j: v.j, h: v.h, cap: RETURN_TIME_CAP });
    };

    let k1 = f(&ys);
    let at = |tau: f64| integ.step(&f, &ys, &k1, tau).0;
    let (mut lo, mut hi) = (0.0, out.t - t0);
    let (mut glo, mut ghi) = (event.value(&ys), event.value(&out.y));
    let mut side = 0i8;
    for _ in 0..100 {
        if hi - lo <= 1e-15 * (1.0 + t0) {
            break;
        }
        let mid = (lo * ghi - hi * glo) / (ghi - glo);
        let mid = if mid > lo && mid < hi { mid } else { 0.5 * (lo + hi) };
        let gm = event.value(&at(mid));
        if gm < 0.0 {
            lo = mid;
            glo = gm;
            if side == -1 {
                ghi *= 0.5;
            }
            side = -1;
        } else {
            hi = mid;
            ghi = gm;
            if side == 1 {
                glo *= 0.5;
            }
            side = 1;
        }
        if gm == 0.0 {
            lo = mid;
            break;
        }
    }
    let tau = if glo.abs() <= ghi.abs() { lo } else { hi };
    let ye = at(tau);

    let cross = seed.q[0] * ye[1] - seed.q[1] * ye[0];
    let dot = seed.q[0] * ye[0] + seed.q[1] * ye[1];
    Ok(FirstReturn {
        t_rad: t0 + tau,
        theta: cross.atan2(dot),
        p_dot_dq: ye[4],
        seed,
        end: TorusPoint::new(ye[0], ye[1], ye[2], ye[3]),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Actions {
    /// Action of the J-orbit.
    pub i1: f64,
    /// `(1/2π) ∮ p·dq` over the closed cycle, with the principal `Θ`.
    pub i2: f64,
    /// `(1/π) ∫ p_r dr` between the turning points.
    pub radial: f64,
}

/// `(1/π) ∫_{r_min}^{r_max} sqrt(2(h - V_eff(r))) dr`, by tanh-sinh
/// quadrature, which copes with the square-root endpoints directly.
pub fn radial_action(v: RegularValue, sys: &SystemSpec, target_error: f64) -> Result<f64, MonodromyError> {
    let (r_min, r_max) = turning_points(v, sys)?;
    let integrand = |r: f64| (2.0 * (v.h - effective_potential(v.j, r, sys))).max(0.0).sqrt();
    Ok(quadrature::integrate(integrand, r_min, r_max, target_error).integral / PI)
}

pub(crate) fn actions_from(v: RegularValue, fr: &FirstReturn, sys: &SystemSpec) -> Result<Actions, MonodromyError> {
    // the closing J-segment contributes -jΘ to ∮ p·dq
    let closing = -v.j * fr.theta;
    let i2 = (fr.p_dot_dq + closing) / (2.0 * PI);
    let radial = radial_action(v, sys, 1e-13)?;
    // with the principal Θ the angular parts cancel only up to a whole turn
    let wraps = if v.j.abs() > 1e-12 { ((i2 - radial) / v.j).round() } else { 0.0 };
    let residual = (i2 - radial - wraps * v.j).abs();
    if residual > 1e-7_f64.max(1e3 * sys.tol) * (1.0 + radial.abs()) {
        return Err(MonodromyError::Cancellation { orbit: i2, radial });
    }
    Ok(Actions { i1: v.j, i2, radial })
}

/// `(I₁, I₂)` on the torus over `v`.
pub fn actions(v: RegularValue, sys: &SystemSpec) -> Result<Actions, MonodromyError> {
    let fr = first_return(v, sys)?;
    actions_from(v, &fr, sys)
}

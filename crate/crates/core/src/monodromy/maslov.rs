use std::f64::consts::PI;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::cycles::{first_return, FirstReturn};
use super::{MonodromyError, INTEGER_SLACK};
use crate::dynamics::{flow, vector_fields, Dop853, Field, RegularValue, SystemSpec, TorusPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cycle {
    /// The J-orbit.
    Gamma1,
    /// One radial period of the H-flow, closed by the J-flow.
    Gamma2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Traversal {
    Forward,
    Reversed,
}

impl Traversal {
    fn sign(self) -> f64 {
        match self {
            Self::Forward => 1.0,
            Self::Reversed => -1.0,
        }
    }
}

/// `det(Q - iP)` for the frame `(X_H, X_J)`, as `(re, im)`.
fn frame_det(state: &TorusPoint, sys: &SystemSpec) -> (f64, f64) {
    let (xh, xj) = vector_fields(state, sys);
    let (q00, q10, p00, p10) = (xh[0], xh[1], xh[2], xh[3]);
    let (q01, q11, p01, p11) = (xj[0], xj[1], xj[2], xj[3]);
    // (a - ib)(c - id) = (ac - bd) - i(ad + bc)
    let re = (q00 * q11 - p00 * p11) - (q01 * q10 - p01 * p10);
    let im = -((q00 * p11 + p00 * q11) - (q01 * p10 + p01 * q10));
    (re, im)
}

fn phase(state: &TorusPoint, sys: &SystemSpec) -> f64 {
    let (re, im) = frame_det(state, sys);
    im.atan2(re)
}

fn wrap(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

const MAX_INCREMENT: f64 = PI / 4.0;
const MAX_DEPTH: u32 = 16;

/// Change of `arg det(Z)²` across one integrator step, subdividing until
/// every increment is small enough to be unambiguous.
fn step_phase<F>(
    integ: &Dop853,
    f: &F,
    y0: [f64; 4],
    h: f64,
    sys: &SystemSpec,
    depth: u32,
) -> Result<(f64, [f64; 4]), MonodromyError>
where
    F: Fn(&[f64; 4]) -> [f64; 4],
{
    let (y1, _) = integ.step(f, &y0, &f(&y0), h);
    let inc = 2.0 * wrap(phase(&TorusPoint::from_array(y1), sys) - phase(&TorusPoint::from_array(y0), sys));
    if inc.abs() <= MAX_INCREMENT {
        return Ok((inc, y1));
    }
    if depth == 0 {
        return Err(MonodromyError::Resolution { what: "Maslov phase increment", value: inc });
    }
    let (a, ym) = step_phase(integ, f, y0, 0.5 * h, sys, depth - 1)?;
    let (b, ye) = step_phase(integ, f, ym, 0.5 * h, sys, depth - 1)?;
    Ok((a + b, ye))
}

fn h_segment_phase(seed: &TorusPoint, t: f64, sys: &SystemSpec) -> Result<(f64, TorusPoint), MonodromyError> {
    let f = |s: &[f64; 4]| {
        let k = sys.radial_force_factor(s[0] * s[0] + s[1] * s[1]);
        [s[2], s[3], -k * s[0], -k * s[1]]
    };
    let integ = sys.integrator();
    let mut total = 0.0;
    let mut failure = None;
    let out = integ.integrate(&f, seed.to_array(), t, |st| {
        let inc = 2.0 * wrap(phase(&TorusPoint::from_array(*st.y1), sys) - phase(&TorusPoint::from_array(*st.y0), sys));
        if inc.abs() <= MAX_INCREMENT {
            total += inc;
            return ControlFlow::Continue(());
        }
        match step_phase(&integ, &f, *st.y0, st.t1 - st.t0, sys, MAX_DEPTH) {
            Ok((inc, _)) => {
                total += inc;
                ControlFlow::Continue(())
            }
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok((total, TorusPoint::from_array(out.y)))
}

fn j_segment_phase(start: &TorusPoint, angle: f64, sys: &SystemSpec) -> Result<f64, MonodromyError> {
    const PIECES: usize = 64;
    let mut prev = phase(start, sys);
    let mut total = 0.0;
    for i in 1..=PIECES {
        let s = flow(start, Field::J, angle * i as f64 / PIECES as f64, sys)?;
        let cur = phase(&s, sys);
        let inc = 2.0 * wrap(cur - prev);
        if inc.abs() > MAX_INCREMENT {
            return Err(MonodromyError::Resolution { what: "Maslov phase increment", value: inc });
        }
        total += inc;
        prev = cur;
    }
    Ok(total)
}

pub(crate) fn winding_from(
    fr: &FirstReturn,
    cycle: Cycle,
    traversal: Traversal,
    sys: &SystemSpec,
) -> Result<f64, MonodromyError> {
    let dir = traversal.sign();
    let total = match cycle {
        Cycle::Gamma1 => j_segment_phase(&fr.seed, dir * 2.0 * PI, sys)?,
        Cycle::Gamma2 => {
            let (a, end) = h_segment_phase(&fr.seed, dir * fr.t_rad, sys)?;
            a + j_segment_phase(&end, -dir * fr.theta, sys)?
        }
    };
    let w = total / (2.0 * PI);
    if (w - w.round()).abs() > INTEGER_SLACK {
        return Err(MonodromyError::Resolution { what: "Maslov winding", value: w });
    }
    Ok(w)
}

/// Winding of `arg det(Q - iP)²` along the cycle, in turns. `Q` and `P` are
/// the position and momentum parts of the frame `(X_H, X_J)`.
pub fn maslov_winding(
    v: RegularValue,
    cycle: Cycle,
    traversal: Traversal,
    sys: &SystemSpec,
) -> Result<f64, MonodromyError> {
    let fr = first_return(v, sys)?;
    winding_from(&fr, cycle, traversal, sys)
}

/// Signed number of caustics along `γ₂`: sign changes of `det Q`, each
/// counted positively in forward time.
pub fn caustic_count(v: RegularValue, traversal: Traversal, sys: &SystemSpec) -> Result<i64, MonodromyError> {
    let fr = first_return(v, sys)?;
    let det_q = |s: &[f64; 4]| {
        let (xh, xj) = vector_fields(&TorusPoint::from_array(*s), sys);
        xh[0] * xj[1] - xj[0] * xh[1]
    };
    let f = |s: &[f64; 4]| {
        let k = sys.radial_force_factor(s[0] * s[0] + s[1] * s[1]);
        [s[2], s[3], -k * s[0], -k * s[1]]
    };
    let mut signs = vec![det_q(&fr.seed.to_array())];
    sys.integrator().integrate(&f, fr.seed.to_array(), traversal.sign() * fr.t_rad, |st| {
        signs.push(det_q(st.y1));
        ControlFlow::Continue(())
    })?;
    // the closing J-segment leaves det Q unchanged, so the sequence is cyclic
    let nonzero: Vec<bool> = signs.iter().filter(|x| **x != 0.0).map(|x| *x > 0.0).collect();
    let changes = nonzero.windows(2).filter(|w| w[0] != w[1]).count()
        + usize::from(nonzero.len() > 1 && nonzero[0] != nonzero[nonzero.len() - 1]);
    Ok(traversal.sign() as i64 * changes as i64)
}

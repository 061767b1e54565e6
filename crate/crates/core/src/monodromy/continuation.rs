use std::f64::consts::PI;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cycles::{actions_from, first_return, Actions, FirstReturn};
use super::maslov::{winding_from, Cycle, Traversal};
use super::{MonodromyError, INTEGER_SLACK};
use crate::dynamics::{RegularValue, SystemSpec};
use crate::exact_int::IntMatrix;
use crate::normal_forms::{classify, verify_theorem1, ActionVector, Classification, MaslovVector, TheoremVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Ccw,
    Cw,
}

impl std::str::FromStr for Orientation {
    type Err = MonodromyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ccw" => Ok(Self::Ccw),
            "cw" => Ok(Self::Cw),
            other => Err(MonodromyError::InvalidLoop(format!("orientation must be ccw or cw, got {other:?}"))),
        }
    }
}

/// Ellipse `(j₀ + ρ_j cos 2πs, h₀ ± ρ_h sin 2πs)` sampled at `s = i/N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopSpec {
    pub center: [f64; 2],
    pub radii: [f64; 2],
    pub samples: usize,
    pub orientation: Orientation,
}

impl LoopSpec {
    pub const MIN_SAMPLES: usize = 16;

    pub fn new(
        center: [f64; 2],
        radii: [f64; 2],
        samples: usize,
        orientation: Orientation,
    ) -> Result<Self, MonodromyError> {
        if samples < Self::MIN_SAMPLES {
            return Err(MonodromyError::InvalidLoop(format!(
                "need at least {} samples, got {samples}",
                Self::MIN_SAMPLES
            )));
        }
        if !center.iter().all(|x| x.is_finite()) || !radii.iter().all(|r| r.is_finite() && *r > 0.0) {
            return Err(MonodromyError::InvalidLoop("center must be finite and radii positive".into()));
        }
        Ok(Self { center, radii, samples, orientation })
    }

    /// Circle of radius 0.1 around the focus-focus value, 64 samples.
    pub fn around_focus_focus() -> Self {
        Self { center: [0.0, 0.0], radii: [0.1, 0.1], samples: 64, orientation: Orientation::Ccw }
    }

    pub fn value_at(&self, s: f64) -> RegularValue {
        let (sn, cs) = (2.0 * PI * s).sin_cos();
        let sign = match self.orientation {
            Orientation::Ccw => 1.0,
            Orientation::Cw => -1.0,
        };
        RegularValue::new(self.center[0] + self.radii[0] * cs, self.center[1] + sign * self.radii[1] * sn)
    }

    /// The `N + 1` loop parameters, closing sample included.
    pub fn parameters(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.samples).map(|i| i as f64 / self.samples as f64)
    }
}

impl Default for LoopSpec {
    fn default() -> Self {
        Self::around_focus_focus()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CycleSample {
    pub s: f64,
    pub j: f64,
    pub h: f64,
    pub t_rad: f64,
    pub theta: f64,
    pub theta_unwrapped: f64,
    /// `I₁ = j`.
    pub i1: f64,
    /// `I₂` continued along the loop from `s = 0`.
    pub i2: f64,
    pub w1: f64,
    pub w2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonodromyReport {
    #[serde(rename = "loop")]
    pub loop_spec: LoopSpec,
    /// Acts on the column `(γ₁, γ₂)`: end-of-loop classes in terms of
    /// start-of-loop classes.
    pub monodromy: IntMatrix,
    pub maslov: MaslovVector,
    pub winding_k: i64,
    /// `max |I(1) - M I(0)|`.
    pub action_residual: f64,
    pub theorem: TheoremVerdict,
    pub classification: Classification,
    #[serde(skip)]
    pub samples: Vec<CycleSample>,
}

impl MonodromyReport {
    pub fn actions_start(&self) -> ActionVector {
        let s = &self.samples[0];
        ActionVector(vec![s.i1, s.i2])
    }

    pub fn actions_end(&self) -> ActionVector {
        let s = self.samples.last().expect("at least one sample");
        ActionVector(vec![s.i1, s.i2])
    }
}

struct RawSample {
    s: f64,
    v: RegularValue,
    fr: FirstReturn,
    actions: Actions,
    w1: f64,
    w2: f64,
}

fn compute_sample(s: f64, spec: &LoopSpec, sys: &SystemSpec) -> Result<RawSample, MonodromyError> {
    let v = spec.value_at(s);
    let run = || -> Result<RawSample, MonodromyError> {
        sys.check_regular(v)?;
        let fr = first_return(v, sys)?;
        let actions = actions_from(v, &fr, sys)?;
        let w1 = winding_from(&fr, Cycle::Gamma1, Traversal::Forward, sys)?;
        let w2 = winding_from(&fr, Cycle::Gamma2, Traversal::Forward, sys)?;
        Ok(RawSample { s, v, fr, actions, w1, w2 })
    };
    run().map_err(|e| MonodromyError::AtSample { s, source: Box::new(e) })
}

fn wrap(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Largest change of the rotation angle between neighbouring samples that
/// still unwraps unambiguously.
const THETA_JUMP: f64 = PI / 2.0;

/// Continues the basis `(γ₁, γ₂)`, its actions and Maslov windings around
/// the loop, and reads off the monodromy from the unwrapped rotation angle.
///
/// Samples are independent and may be evaluated in parallel; the unwrapping
/// is a sequential pass over them in loop order.
pub fn continue_loop(spec: &LoopSpec, sys: &SystemSpec) -> Result<MonodromyReport, MonodromyError> {
    let spec = LoopSpec::new(spec.center, spec.radii, spec.samples, spec.orientation)?;
    let params: Vec<f64> = spec.parameters().collect();
    #[cfg(feature = "parallel")]
    let raw: Vec<_> = params.par_iter().map(|&s| compute_sample(s, &spec, sys)).collect();
    #[cfg(not(feature = "parallel"))]
    let raw: Vec<_> = params.iter().map(|&s| compute_sample(s, &spec, sys)).collect();
    let raw = raw.into_iter().collect::<Result<Vec<_>, _>>()?;

    let mu0 = [raw[0].w1.round() as i64, raw[0].w2.round() as i64];
    let mut theta_u = Vec::with_capacity(raw.len());
    theta_u.push(raw[0].fr.theta);
    for pair in raw.windows(2) {
        let step = wrap(pair[1].fr.theta - pair[0].fr.theta);
        if step.abs() > THETA_JUMP {
            return Err(MonodromyError::AtSample {
                s: pair[1].s,
                source: Box::new(MonodromyError::Resolution { what: "rotation angle step", value: step }),
            });
        }
        theta_u.push(theta_u.last().expect("nonempty") + step);
    }
    for r in &raw {
        let mu = [r.w1.round() as i64, r.w2.round() as i64];
        if mu != mu0 {
            return Err(MonodromyError::MaslovNotConstant { first: mu0, other: mu, s: r.s });
        }
    }

    let turns = (theta_u[theta_u.len() - 1] - theta_u[0]) / (2.0 * PI);
    if (turns - turns.round()).abs() > INTEGER_SLACK {
        return Err(MonodromyError::Resolution { what: "rotation angle winding", value: turns });
    }
    let k = turns.round() as i64;

    let samples: Vec<CycleSample> = raw
        .iter()
        .zip(&theta_u)
        .map(|(r, &tu)| CycleSample {
            s: r.s,
            j: r.v.j,
            h: r.v.h,
            t_rad: r.fr.t_rad,
            theta: r.fr.theta,
            theta_unwrapped: tu,
            i1: r.actions.i1,
            i2: r.actions.i2 - r.v.j * (tu - r.fr.theta) / (2.0 * PI),
            w1: r.w1,
            w2: r.w2,
        })
        .collect();

    // γ₂ ↦ γ₂ - k γ₁, read through I(1) = M I(0)
    let monodromy = IntMatrix::from_rows(&[vec![1, 0], vec![-k, 1]]);
    let (first, last) = (&samples[0], &samples[samples.len() - 1]);
    let action_residual = (last.i1 - first.i1).abs().max((last.i2 - (first.i2 - k as f64 * first.i1)).abs());
    let maslov = MaslovVector::from_i64(&mu0);
    let theorem = verify_theorem1(&monodromy, &maslov)?;
    let classification = classify(&monodromy)?;

    Ok(MonodromyReport {
        loop_spec: spec,
        monodromy,
        maslov,
        winding_k: k,
        action_residual,
        theorem,
        classification,
        samples,
    })
}

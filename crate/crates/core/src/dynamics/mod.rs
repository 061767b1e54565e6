//! The champagne-bottle family `H = |p|²/2 + a r⁴ + b r²` on `T*R²`, its
//! angular momentum `J = x p_y - y p_x`, and their flows.

mod integrator;
mod system;

pub use integrator::{AcceptedStep, Dop853, IntegrationError, Outcome};
pub use system::{
    effective_potential, energy_momentum, flow, harmonic_frequency, mixed_rhs, poisson_bracket, r_star,
    seed_torus_point, turning_points, vector_fields, well_bottom, DynamicsError, EnergyMomentum, Field, RegularValue,
    SystemSpec, TorusPoint,
};

//! The representations `π_s` of `F` and `ρ_s` of `T` on step functions,
//! stabilizer characters, induced representations on finitely supported
//! vectors, and finite probes for the irreducibility arguments.

mod induced;
mod probes;
mod quasi_regular;

pub use induced::{
    conjugate_character, eval_character, induced_apply_f, induced_apply_t, section, CharacterF, CharacterR,
    InducedVector, Label,
};
pub use probes::{
    constancy_witness, invariance_check, orbit_witness, probe_nontrivial_action, rho0_one_orbit, ActionProbe,
    ConstancyProbe, OrbitWitness, Rho0Orbit,
};
pub use quasi_regular::{
    apply_pi, apply_rho, equivalence_check, half_density, matrix_coefficient, restriction_transport, rn_derivative,
    rn_derivative_circle, Equivalence, DEFAULT_TOLERANCE,
};

use num_rational::BigRational;

/// Reduces a rational angle into `[0, 1)`.
pub fn angle_mod1(q: &BigRational) -> BigRational {
    q - q.floor()
}

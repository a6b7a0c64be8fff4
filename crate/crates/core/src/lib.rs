//! Infrared-corrected Coulomb field of a nonrelativistic electron coupled to
//! soft vacuum and thermal photons.
//!
//! Natural units throughout: energies and momenta in eV, lengths and times
//! in eV⁻¹. [`params::PhysParams`] converts at the boundary.
//!
//! ```
//! use irfield_core::{ir_brackets, CutoffScheme, HierarchyPolicy, PhysParams, Tolerance};
//!
//! let params = PhysParams::electron(0.0);
//! let cutoffs = CutoffScheme::new(0.0, 1.0, 1000.0);
//! let e = ir_brackets(&params, &cutoffs, HierarchyPolicy::default(), Tolerance::default()).unwrap();
//! assert!((e.vacuum_bracket - 1000f64.ln()).abs() < 1e-12);
//! ```

pub mod eikonal;
pub mod error;
pub mod field;
pub mod formfactor;
pub mod params;
pub mod quadrature;
pub mod smearing;
pub mod timescale;
pub mod verify;

pub use eikonal::{
    eikonal_product, i_n_bruteforce, perm_sum, resummed_exponential, resummed_series,
    two_term_bracket, DstTriple, EikonalWeights,
};
pub use error::{Error, Inequality, Result};
pub use field::{
    enclosed_charge_fraction, field_profile, nullification_scan, screening_factor, GaussianPacket,
    NullificationPoint, ScreeningProfile, ScreeningSample,
};
pub use formfactor::{
    effective_rho_suppression, form_factor, ir_brackets, thermal_bracket_oracle, FormFactorValue,
    IRExponent,
};
pub use params::{
    minkowski_dot, validate_hierarchy, CutoffScheme, FourVector, HierarchyPolicy, HierarchyReport,
    PhysParams,
};
pub use quadrature::{IntegrationResult, Tolerance};
pub use smearing::{delta_lambda, delta_star, smeared_denominator, Prescription, SmearKernel};
pub use timescale::{
    cutoff_from_duration, finite_t_tau, spreading_dominance_ratio, zero_t_threshold_time, Regime,
    TimescaleReport,
};

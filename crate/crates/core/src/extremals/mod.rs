//! Normal and abnormal extremals of simple almost-Riemannian structures.

pub mod abnormal;
pub mod aff2;
pub mod frame;
pub mod hamiltonian;
pub mod integrate;
pub mod pendulum;
pub mod wavefront;

pub use abnormal::{abnormal_description, AbnormalDescription};
pub use aff2::{aff2_closed_form, first_return, Aff2Case, ClosedFormGeodesic, ClosedFormPoint, FirstReturn};
pub use frame::{covector_labels, ControlFrame};
pub use hamiltonian::{
    algebra_covector_rhs, extremal_rhs, hamiltonian_of_controls, maximized_hamiltonian, normal_controls, ExtremalState,
};
pub use integrate::{
    integrate, richardson_estimate, simpson, EventFn, EventHit, GeodesicTrajectory, IntegrateOptions, TrajectorySample,
};
pub use pendulum::{heisenberg_pendulum, PendulumReport};
pub use wavefront::{initial_covectors, sphere_points, wavefront, Wavefront, WavefrontRay};

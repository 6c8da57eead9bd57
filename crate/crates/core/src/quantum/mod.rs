//! Standard and completed quantum entities in finite dimension.

pub mod born;
pub mod density;
pub mod entity;
pub mod linalg;
pub mod machine;
pub mod random;
pub mod spectral;
pub mod subentity;
pub mod tensor;

pub use born::{cq_outcome_set, cq_probability, sq_outcome_set, sq_probability};
pub use density::{convex_combine, density_from_ray, is_extremal, validate_density, DensityOperator};
pub use entity::{completed_quantum_entity, standard_quantum_entity, QuantumEntity};
pub use linalg::{ComplexMatrix, Ket, MAX_DIMENSION, PROBABILITY_TOL, VALIDATION_TOL};
pub use machine::{qmachine_probability, qmachine_to_hilbert, ray_state, sphere_family, BallState, SphereExperiment};
pub use spectral::{spectral_family_from_hermitian, validate_spectral_family, SpectralFamily, SpectralValidation};
pub use subentity::{verify_cq_sub_entity, CqSubEntityReport};
pub use tensor::{lift_experiment, lift_outcome, partial_trace, partial_trace_operator, singlet};

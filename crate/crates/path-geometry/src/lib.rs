//! Timelike paths in Sp(2n) for the metric G = det^{1/2n}.

pub mod conjugate;
pub mod error;
pub mod geodesic;
pub mod integrate;
pub mod schedule;

pub use conjugate::{
    closed_form_multiplicity, coindex_discretized, conjugate_instants_closed_form,
    conjugate_multiplicity_numeric, index_form_matrix, sp_basis, standard_coindex, CoindexReport,
    ConjugateInstant, ConjugateReport, InstantSource,
};
pub use error::{Error, Result};
pub use geodesic::{geodesic, jacobi_field};
pub use integrate::{first_variation, integrate_path, length_g_path, length_g_schedule, STEPS_PER_UNIT_TIME};
pub use schedule::{Causality, GeneratorSchedule};
pub mod ads3;
pub mod bounds;

pub use ads3::{ads3_chart, ads3_differential, ads3_inverse, conformal_quadratic_form, long_path_construct, AdS3Point, LongPath};
pub use bounds::{elliptic_length_bound_check, in_closed_elliptic_region, krein_angle_tracks, EllipticBound};
pub mod timefn;

pub use timefn::{reference_generators, time_function, time_function_along, TimeFunctionParams};
pub mod sampling;

pub use sampling::{elliptic_prefix, random_timelike_schedule};

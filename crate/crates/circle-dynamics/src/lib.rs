//! Positive paths of circle diffeomorphisms and their Lorentz-Finsler geometry.

pub mod error;
pub mod flow;
pub mod hamiltonian;
pub mod lift;
pub mod trig;

pub use error::{Error, Result};
pub use flow::{flow, flow_points, flow_times, flow_with, FlowMethod, FlowOptions};
pub use hamiltonian::CircleHamiltonianPath;
pub use lift::{diff1_time_function, CircleLift};
pub use trig::{fejer_riesz, random_fejer_riesz, random_positive_trig, TrigPolynomial};
pub mod conjugate;
pub mod metric;
pub mod rotation;

pub use conjugate::{conjugate_instants_circle, conjugating_diffeo, conjugation_defect, fourier_kernel_gap, rational_instants, CircleConjugateInstant};
pub use metric::{length_v, length_v_with, metric_v, metric_v_slice};
pub use rotation::{translation_number, RotationEstimate};
pub mod jk;
pub mod nazarov;
pub mod secondvar;

pub use jk::jk_embed;
pub use nazarov::{nazarov_check, NazarovReport};
pub use secondvar::{second_variation_circle, SecondVariation};
pub mod leonid;
pub mod quantum;

pub use leonid::{long_circle_path, LongCirclePath};
pub use quantum::{quantum_bound_check, random_pk_path, rescale_to_displacement, QuantumReport};

//! The scattering side: the inverted harmonic oscillator and its far-field
//! phase, Krein quantization of a scatterer chain, the 1×1 KKR determinant,
//! and the Kronig–Penney chain with its integrated density of states.

mod iho;
mod krein;
mod kronig_penney;

pub use iho::{
    analytic_phase, default_window, fit_asymptotic, integrate_iho, outgoing_wave, verify_w_phase, w_initial_values,
    AsymptoticFit, IhoSolution, InitialCondition, WPhaseReport, GRID_SPACING, MAX_E_HAT, MAX_FIT_CONDITION,
    MIN_FIT_SAMPLES, MIN_FIT_XI, MIN_XI_MAX, W_PHASE_MAX_E_HAT, W_PHASE_MIN_E_HAT,
};
pub use krein::{
    kkr_det, kkr_det_roots, krein_quantization, physical_t_matrix, Quantization, QuantizationProblem, QuantizedLevel,
};
pub use kronig_penney::{
    kp_bands, kp_det, lloyd_integrated_dos, transfer_matrix_band, BandPoint, BandStructure, KronigPenneyParams,
    LloydDos, BAND_EDGE_TOLERANCE, POLE_TOLERANCE,
};

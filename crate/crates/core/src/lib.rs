//! Exact construction, verification and decoding of hybrid
//! oscillator-qudit stabilizer codes.

pub mod codes;
pub mod decoder;
pub mod exactmath;
pub mod heisenberg;
pub mod symplectic;

pub use exactmath::{
    alt_smith, bezout_pair, complete_unimodular, rational, rational_int, rational_sqrt,
    rational_to_f64, AltSmithDecomposition, BezoutPair, ExactMathError, Rational, RationalMatrix,
};
pub use codes::{
    build_general, build_general_with_transform, prep_symplectic, simple_code,
    standard_form_multi, CodeError, GeneralLcaCode, SimpleLcaCode, VerificationCheck,
    VerificationReport,
};
pub use decoder::{
    adjudicate, decode, decode_error, decode_pure, decode_qudit, region_of, run_grid_sweep,
    run_monte_carlo, syndrome, DecodeOutcome, DecoderError, ErrorSample, MonteCarloConfig,
    MonteCarloResult, Strategy, SweepRecord, SweepSpec, Syndrome,
};
pub use heisenberg::{
    lattice_member, logical_class, stabilizer_element, DisplacementFrame, HeisenbergError,
    HybridDisplacement, PhaseFraction, Scalar,
};
pub use symplectic::{MoritaElement, ScaledMatrix, SymplecticError, SymplecticForm};

//! Syndrome extraction and decoding for one-mode hybrid codes.
//!
//! All arithmetic happens in the code's `u′`-units, where the lattice
//! spacing is `c` and the qudit decision half-width is `δ = 1/2`: lattice
//! constants stay integral and floating point only carries the noise.
//!
//! Two strategies are implemented. The *pure* strategy treats the whole
//! syndrome as an oscillator shift and applies the minimal displacement,
//! correcting any shift of magnitude below `c/2` but no qudit errors. The
//! *qudit* strategy splits each syndrome axis into `c` regions of width
//! `2δ`, reads the region label as a qudit error, and corrects the
//! remaining sub-`δ` shift — correcting every qudit error combined with
//! shifts below `δ`, at the price of misreading larger shifts.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

use crate::codes::SimpleLcaCode;
use crate::heisenberg::{
    logical_class, DisplacementFrame, HeisenbergError, HybridDisplacement, PhaseFraction, Scalar,
};

/// Errors from decoding and simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecoderError {
    /// A simulation parameter is out of range.
    #[error("invalid parameter: {0}")]
    InvalidParameters(String),
    /// A syndrome coordinate fell outside `[0, c)`.
    #[error("syndrome value {0} outside [0, c)")]
    SyndromeOutOfRange(f64),
    /// The residual failed to snap onto the integer lattice — a decoder
    /// bug, not a noise event.
    #[error("residual coordinate {0} is not within 1e-9 of an integer")]
    SnapFailed(f64),
    /// The snapped residual does not commute with the stabilizers — a
    /// decoder bug, not a noise event.
    #[error("snapped residual is not in the dual lattice")]
    ResidualNotInDual,
    /// Underlying displacement-algebra failure.
    #[error(transparent)]
    Heisenberg(#[from] HeisenbergError),
}

/// Qudit decision half-width in `u′`-units.
const DELTA: f64 = 0.5;

/// Residual snap tolerance in `u′`-units.
const SNAP_TOLERANCE: f64 = 1e-9;

/// A sampled physical error: oscillator shifts in `u′`-units plus qudit
/// `X`/`Z` powers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorSample {
    /// Shift of the position-like quadrature.
    pub epsilon1: f64,
    /// Shift of the momentum-like quadrature.
    pub epsilon2: f64,
    /// Qudit `X` power.
    pub n: i64,
    /// Qudit `Z` power.
    pub w: i64,
}

impl ErrorSample {
    /// The error as a displacement operator.
    pub fn to_displacement(self) -> HybridDisplacement {
        HybridDisplacement {
            m_cv: vec![Scalar::Real(self.epsilon1)],
            s_cv: vec![Scalar::Real(self.epsilon2)],
            m_dv: vec![self.n],
            s_dv: vec![self.w],
            phase: PhaseFraction::zero(),
        }
    }
}

/// The measured syndrome pair, each coordinate in `[0, c)` (`u′`-units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Syndrome {
    /// Syndrome of the position-like axis: `(ε1 + n) mod c`.
    pub xi1: f64,
    /// Syndrome of the momentum-like axis: `(ε2 − w·d) mod c`.
    pub xi2: f64,
}

/// The decoding strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Correct the full syndrome as a minimal oscillator shift.
    Pure,
    /// Read each axis's region as a qudit error, then shift the remainder.
    Qudit,
}

impl Strategy {
    /// Stable lower-case name (used in CSV output).
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Pure => "pure",
            Strategy::Qudit => "qudit",
        }
    }
}

/// The adjudicated result of one decoding attempt.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodeOutcome {
    /// The syndrome that was decoded.
    pub syndrome: Syndrome,
    /// The correction that was applied.
    pub correction: HybridDisplacement,
    /// Logical class `(α, β)` of residual·error, each mod `K`.
    pub residual_class: (i64, i64),
    /// Whether the residual is a stabilizer, i.e. the class is `(0, 0)`.
    pub success: bool,
}

/// Measures the syndrome of an error through its commutation phases with
/// the stabilizer generators: `⟨e, S_Z⟩ = ξ1/c` and `⟨e, S_X⟩ = −ξ2/c`.
pub fn syndrome(code: &SimpleLcaCode, e: &ErrorSample) -> Syndrome {
    let frame = DisplacementFrame::from_simple(code);
    let displacement = e.to_displacement();
    let s_x = {
        let (cv, dv) = code.stabilizer_x();
        HybridDisplacement::from_simple_coords(cv, dv)
    };
    let s_z = {
        let (cv, dv) = code.stabilizer_z();
        HybridDisplacement::from_simple_coords(cv, dv)
    };
    let c = code.c as f64;
    let phase_z = frame
        .phase_inner(&displacement, &s_z)
        .expect("frame shapes match by construction")
        .to_f64();
    let phase_x = frame
        .phase_inner(&displacement, &s_x)
        .expect("frame shapes match by construction")
        .to_f64();
    let reduce = |v: f64| {
        let r = v.rem_euclid(c);
        if r >= c {
            0.0
        } else {
            r
        }
    };
    Syndrome {
        xi1: reduce(c * phase_z),
        xi2: reduce(-c * phase_x),
    }
}

/// The region label `r ∈ {1..c}` of a syndrome coordinate: region 1 covers
/// `[0, δ) ∪ [(2c−1)δ, 2cδ)` and region `r ≥ 2` covers
/// `[(2r−3)δ, (2r−1)δ)`; exact boundary values go to the smaller label.
pub fn region_of(code: &SimpleLcaCode, xi: f64) -> Result<i64, DecoderError> {
    let c = code.c as f64;
    if !(0.0..c).contains(&xi) || !xi.is_finite() {
        return Err(DecoderError::SyndromeOutOfRange(xi));
    }
    if xi <= DELTA || xi >= (2.0 * c - 1.0) * DELTA {
        return Ok(1);
    }
    // Centers sit at (2r−2)δ; ties round toward the smaller label.
    let r = (xi - DELTA).div_euclid(1.0) as i64 + if (xi - DELTA) % 1.0 == 0.0 { 1 } else { 2 };
    Ok(r.min(code.c))
}

/// Wraps a value into `(−half, half]`, ties keeping `+half`.
fn wrap_signed(value: f64, period: f64) -> f64 {
    let half = period / 2.0;
    let mut v = value.rem_euclid(period);
    if v > half {
        v -= period;
    }
    v
}

/// Pure-displacement decoding: the minimal shift `(−ε̂1, −ε̂2)` with `ε̂`
/// the syndrome wrapped into `(−c/2, c/2]`; no qudit correction.
pub fn decode_pure(code: &SimpleLcaCode, s: &Syndrome) -> HybridDisplacement {
    let c = code.c as f64;
    HybridDisplacement {
        m_cv: vec![Scalar::Real(-wrap_signed(s.xi1, c))],
        s_cv: vec![Scalar::Real(-wrap_signed(s.xi2, c))],
        m_dv: vec![0],
        s_dv: vec![0],
        phase: PhaseFraction::zero(),
    }
}

/// Region-based decoding: region `r` on the first axis yields `X^{−(r−1)}`
/// plus the shift `−(ξ1 − (2r−2)δ)` wrapped into `(−δ, δ]`; region `r` on
/// the second axis yields `Z^{−a(r−1)}` plus the analogous shift.
pub fn decode_qudit(
    code: &SimpleLcaCode,
    s: &Syndrome,
) -> Result<HybridDisplacement, DecoderError> {
    let c = code.c as f64;
    let r1 = region_of(code, s.xi1)?;
    let r2 = region_of(code, s.xi2)?;
    let off1 = wrap_signed(s.xi1 - (r1 - 1) as f64 * 2.0 * DELTA, c);
    let off2 = wrap_signed(s.xi2 - (r2 - 1) as f64 * 2.0 * DELTA, c);
    Ok(HybridDisplacement {
        m_cv: vec![Scalar::Real(-off1)],
        s_cv: vec![Scalar::Real(-off2)],
        m_dv: vec![-(r1 - 1)],
        s_dv: vec![-code.a * (r2 - 1)],
        phase: PhaseFraction::zero(),
    })
}

/// Decodes a syndrome with the chosen strategy.
pub fn decode(
    code: &SimpleLcaCode,
    strategy: Strategy,
    s: &Syndrome,
) -> Result<HybridDisplacement, DecoderError> {
    match strategy {
        Strategy::Pure => Ok(decode_pure(code, s)),
        Strategy::Qudit => decode_qudit(code, s),
    }
}

/// Composes error and correction, snaps the oscillator residual onto the
/// integer lattice, and classifies it.
pub fn adjudicate(
    code: &SimpleLcaCode,
    e: &ErrorSample,
    correction: &HybridDisplacement,
) -> Result<DecodeOutcome, DecoderError> {
    let frame = DisplacementFrame::from_simple(code);
    let residual = frame.compose(correction, &e.to_displacement())?;
    let snap = |s: &Scalar| -> Result<i64, DecoderError> {
        let v = s.to_f64();
        let rounded = v.round();
        if (v - rounded).abs() > SNAP_TOLERANCE {
            return Err(DecoderError::SnapFailed(v));
        }
        Ok(rounded as i64)
    };
    let exact = HybridDisplacement::from_simple_coords(
        [snap(&residual.m_cv[0])?, snap(&residual.s_cv[0])?],
        [residual.m_dv[0], residual.s_dv[0]],
    );
    let residual_class = match logical_class(code, &exact) {
        Ok(class) => class,
        Err(HeisenbergError::NotInDual) => return Err(DecoderError::ResidualNotInDual),
        Err(other) => return Err(other.into()),
    };
    Ok(DecodeOutcome {
        syndrome: syndrome(code, e),
        correction: correction.clone(),
        residual_class,
        success: residual_class == (0, 0),
    })
}

/// Runs a full decode of one error sample.
pub fn decode_error(
    code: &SimpleLcaCode,
    strategy: Strategy,
    e: &ErrorSample,
) -> Result<DecodeOutcome, DecoderError> {
    let s = syndrome(code, e);
    let correction = decode(code, strategy, &s)?;
    adjudicate(code, e, &correction)
}

/// Deterministic sweep layout: `grid` points per oscillator axis spanning
/// `(−emax, emax)`, offset by half a step so exact region boundaries are
/// avoided, optionally crossed with every qudit error pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    /// Half-width of the swept shift range.
    pub emax: f64,
    /// Number of grid points per axis.
    pub grid: usize,
    /// Whether to sweep all qudit error pairs `(n, w) ∈ ℤ_c²` too.
    pub include_dv: bool,
}

/// One adjudicated sweep cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    /// Sampled shift on the position-like axis.
    pub epsilon1: f64,
    /// Sampled shift on the momentum-like axis.
    pub epsilon2: f64,
    /// Sampled qudit `X` power.
    pub n: i64,
    /// Sampled qudit `Z` power.
    pub w: i64,
    /// Whether decoding succeeded.
    pub success: bool,
}

/// Sweeps a deterministic error grid and adjudicates every cell.
pub fn run_grid_sweep(
    code: &SimpleLcaCode,
    strategy: Strategy,
    spec: &SweepSpec,
) -> Result<Vec<SweepRecord>, DecoderError> {
    if spec.grid == 0 || !(spec.emax > 0.0) || !spec.emax.is_finite() {
        return Err(DecoderError::InvalidParameters(
            "sweep needs a positive grid and range".to_string(),
        ));
    }
    let step = 2.0 * spec.emax / spec.grid as f64;
    let point = |i: usize| -spec.emax + (i as f64 + 0.5) * step;
    let dv_range: Vec<i64> = if spec.include_dv {
        (0..code.c).collect()
    } else {
        vec![0]
    };
    let mut records = Vec::with_capacity(spec.grid * spec.grid * dv_range.len() * dv_range.len());
    for &n in &dv_range {
        for &w in &dv_range {
            for i in 0..spec.grid {
                for j in 0..spec.grid {
                    let e = ErrorSample {
                        epsilon1: point(i),
                        epsilon2: point(j),
                        n,
                        w,
                    };
                    let outcome = decode_error(code, strategy, &e)?;
                    records.push(SweepRecord {
                        epsilon1: e.epsilon1,
                        epsilon2: e.epsilon2,
                        n,
                        w,
                        success: outcome.success,
                    });
                }
            }
        }
    }
    Ok(records)
}

/// Monte-Carlo channel and harness parameters.
///
/// The noise channel: both quadrature shifts i.i.d. normal with standard
/// deviation `sigma` (in `u′`-units); independently, with probability
/// `p_x` an `X`-power uniform on `{1..c−1}`, and with probability `p_z` a
/// `Z`-power likewise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloConfig {
    /// Standard deviation of each quadrature shift, in `u′`-units.
    pub sigma: f64,
    /// Probability of a uniform nonidentity `X` error.
    pub p_x: f64,
    /// Probability of a uniform nonidentity `Z` error.
    pub p_z: f64,
    /// Number of trials.
    pub trials: u64,
    /// Base RNG seed; trial `t` uses stream `t` of this seed.
    pub seed: u64,
    /// Worker threads (statistics are identical for any value).
    pub threads: usize,
}

/// Aggregated Monte-Carlo statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloResult {
    /// Number of trials run.
    pub trials: u64,
    /// Number of trials whose residual class was not `(0, 0)`.
    pub failures: u64,
    /// Count of every residual class seen (successes under `(0, 0)`).
    pub histogram: BTreeMap<(i64, i64), u64>,
}

impl MonteCarloResult {
    /// Failure rate.
    pub fn rate(&self) -> f64 {
        self.failures as f64 / self.trials as f64
    }
}

fn sample_error(
    code: &SimpleLcaCode,
    config: &MonteCarloConfig,
    normal: &Normal<f64>,
    rng: &mut ChaCha12Rng,
) -> ErrorSample {
    let epsilon1 = normal.sample(rng);
    let epsilon2 = normal.sample(rng);
    let n = if config.p_x > 0.0 && rng.gen::<f64>() < config.p_x {
        rng.gen_range(1..code.c)
    } else {
        0
    };
    let w = if config.p_z > 0.0 && rng.gen::<f64>() < config.p_z {
        rng.gen_range(1..code.c)
    } else {
        0
    };
    ErrorSample { epsilon1, epsilon2, n, w }
}

/// Runs the Monte-Carlo harness. Trial `t` draws from an RNG stream
/// derived only from `(seed, t)`, so the statistics are independent of
/// the thread count and of scheduling.
pub fn run_monte_carlo(
    code: &SimpleLcaCode,
    strategy: Strategy,
    config: &MonteCarloConfig,
) -> Result<MonteCarloResult, DecoderError> {
    if !(config.sigma >= 0.0) || !config.sigma.is_finite() {
        return Err(DecoderError::InvalidParameters(
            "sigma must be finite and non-negative".to_string(),
        ));
    }
    for (name, p) in [("p_x", config.p_x), ("p_z", config.p_z)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(DecoderError::InvalidParameters(format!(
                "{name} must lie in [0, 1]"
            )));
        }
    }
    if config.trials == 0 {
        return Err(DecoderError::InvalidParameters(
            "trials must be positive".to_string(),
        ));
    }
    if config.threads == 0 {
        return Err(DecoderError::InvalidParameters(
            "threads must be positive".to_string(),
        ));
    }
    if code.c == 1 && (config.p_x > 0.0 || config.p_z > 0.0) {
        return Err(DecoderError::InvalidParameters(
            "c = 1 admits no nonidentity qudit errors".to_string(),
        ));
    }
    let normal = Normal::new(0.0, config.sigma)
        .map_err(|e| DecoderError::InvalidParameters(e.to_string()))?;

    let run_range = |trials: Box<dyn Iterator<Item = u64>>| -> Result<
        (u64, BTreeMap<(i64, i64), u64>),
        DecoderError,
    > {
        let mut failures = 0u64;
        let mut histogram = BTreeMap::new();
        for t in trials {
            let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
            rng.set_stream(t);
            let e = sample_error(code, config, &normal, &mut rng);
            let outcome = decode_error(code, strategy, &e)?;
            *histogram.entry(outcome.residual_class).or_insert(0) += 1;
            if !outcome.success {
                failures += 1;
            }
        }
        Ok((failures, histogram))
    };

    let (failures, histogram) = if config.threads == 1 {
        run_range(Box::new(0..config.trials))?
    } else {
        let threads = config.threads;
        let partials: Vec<Result<(u64, BTreeMap<(i64, i64), u64>), DecoderError>> =
            std::thread::scope(|scope| {
                let handles: Vec<_> = (0..threads)
                    .map(|tid| {
                        let run = &run_range;
                        let trials = config.trials;
                        scope.spawn(move || {
                            run(Box::new(
                                (tid as u64..trials).step_by(threads),
                            ))
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("worker threads do not panic"))
                    .collect()
            });
        let mut failures = 0u64;
        let mut histogram = BTreeMap::new();
        for partial in partials {
            let (f, h) = partial?;
            failures += f;
            for (class, count) in h {
                *histogram.entry(class).or_insert(0) += count;
            }
        }
        (failures, histogram)
    };

    Ok(MonteCarloResult {
        trials: config.trials,
        failures,
        histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::simple_code;

    fn code32() -> SimpleLcaCode {
        simple_code(3, 2, 0).unwrap()
    }

    #[test]
    fn syndrome_anchor_identities() {
        let code = code32();
        // A pure shift reads out directly.
        let s = syndrome(&code, &ErrorSample { epsilon1: 0.3, epsilon2: 0.0, n: 0, w: 0 });
        assert!((s.xi1 - 0.3).abs() < 1e-12);
        assert!(s.xi2.abs() < 1e-12);
        // A bare X error occupies the same error space as a 2δ shift.
        let s = syndrome(&code, &ErrorSample { epsilon1: 0.0, epsilon2: 0.0, n: 1, w: 0 });
        assert!((s.xi1 - 1.0).abs() < 1e-12);
        assert!(s.xi2.abs() < 1e-12);
        // Z^a likewise on the other axis.
        let s = syndrome(
            &code,
            &ErrorSample { epsilon1: 0.0, epsilon2: 0.0, n: 0, w: code.a },
        );
        assert!(s.xi1.abs() < 1e-12);
        assert!((s.xi2 - 1.0).abs() < 1e-12);
        // A momentum shift reads out on the second axis unchanged.
        let s = syndrome(&code, &ErrorSample { epsilon1: 0.0, epsilon2: 0.7, n: 0, w: 0 });
        assert!((s.xi2 - 0.7).abs() < 1e-12);
        // Stabilizer generators are invisible.
        for (cv, dv) in [code.stabilizer_x(), code.stabilizer_z()] {
            let s = syndrome(
                &code,
                &ErrorSample {
                    epsilon1: cv[0] as f64,
                    epsilon2: cv[1] as f64,
                    n: dv[0],
                    w: dv[1],
                },
            );
            assert!(s.xi1.abs() < 1e-12 && s.xi2.abs() < 1e-12);
        }
    }

    #[test]
    fn region_labels_and_boundaries() {
        let code = code32();
        let cases = [
            (0.3, 1),
            (1.2, 2),
            (2.5, 1),
            (0.5, 1),
            (1.5, 2),
            (1.0, 2),
            (2.0, 3),
            (2.49, 3),
            (0.0, 1),
        ];
        for (xi, expected) in cases {
            assert_eq!(region_of(&code, xi).unwrap(), expected, "ξ = {xi}");
        }
        assert!(matches!(
            region_of(&code, -0.1),
            Err(DecoderError::SyndromeOutOfRange(_))
        ));
        assert!(matches!(
            region_of(&code, 3.0),
            Err(DecoderError::SyndromeOutOfRange(_))
        ));
    }

    #[test]
    fn pure_decoding_minimal_shift() {
        let code = code32();
        let corr = decode_pure(&code, &Syndrome { xi1: 0.3, xi2: 0.0 });
        assert!((corr.m_cv[0].to_f64() + 0.3).abs() < 1e-12);
        // Wrap-around: 2.8 is closer to 3, so shift forward by 0.2.
        let corr = decode_pure(&code, &Syndrome { xi1: 2.8, xi2: 0.0 });
        assert!((corr.m_cv[0].to_f64() - 0.2).abs() < 1e-12);
        // Tie at c/2 breaks toward the negative correction.
        let corr = decode_pure(&code, &Syndrome { xi1: 1.5, xi2: 0.0 });
        assert!((corr.m_cv[0].to_f64() + 1.5).abs() < 1e-12);
        assert_eq!(corr.m_dv, vec![0]);
    }

    #[test]
    fn qudit_decoding_reads_regions() {
        let code = code32();
        let corr = decode_qudit(&code, &Syndrome { xi1: 0.3, xi2: 0.0 }).unwrap();
        assert!((corr.m_cv[0].to_f64() + 0.3).abs() < 1e-12);
        assert_eq!((corr.m_dv[0], corr.s_dv[0]), (0, 0));

        let corr = decode_qudit(&code, &Syndrome { xi1: 1.2, xi2: 0.0 }).unwrap();
        assert!((corr.m_cv[0].to_f64() + 0.2).abs() < 1e-12);
        assert_eq!(corr.m_dv[0], -1);

        // A bare X error: region 2, zero shift.
        let corr = decode_qudit(&code, &Syndrome { xi1: 1.0, xi2: 0.0 }).unwrap();
        assert!(corr.m_cv[0].to_f64().abs() < 1e-12);
        assert_eq!(corr.m_dv[0], -1);

        // Wrap-around region 1: upper segment shifts forward.
        let corr = decode_qudit(&code, &Syndrome { xi1: 2.7, xi2: 0.0 }).unwrap();
        assert!((corr.m_cv[0].to_f64() - 0.3).abs() < 1e-12);
        assert_eq!(corr.m_dv[0], 0);

        // The ξ2 axis corrects with Z^{−a(r−1)}.
        let corr = decode_qudit(&code, &Syndrome { xi1: 0.0, xi2: 1.0 }).unwrap();
        assert_eq!(corr.s_dv[0], -code.a);
    }

    #[test]
    fn adjudication_examples() {
        let code = code32();
        // Pure shift, pure strategy: corrected exactly.
        let outcome = decode_error(
            &code,
            Strategy::Pure,
            &ErrorSample { epsilon1: 0.3, epsilon2: 0.0, n: 0, w: 0 },
        )
        .unwrap();
        assert!(outcome.success);

        // Bare X error, qudit strategy: corrected.
        let outcome = decode_error(
            &code,
            Strategy::Qudit,
            &ErrorSample { epsilon1: 0.0, epsilon2: 0.0, n: 1, w: 0 },
        )
        .unwrap();
        assert!(outcome.success);
        // Same error under the pure strategy fails: the shift correction
        // cannot undo a qudit error.
        let outcome = decode_error(
            &code,
            Strategy::Pure,
            &ErrorSample { epsilon1: 0.0, epsilon2: 0.0, n: 1, w: 0 },
        )
        .unwrap();
        assert!(!outcome.success);

        // A shift of 1.2 under the qudit strategy is misread as an X
        // error: logical X̄-type failure.
        let outcome = decode_error(
            &code,
            Strategy::Qudit,
            &ErrorSample { epsilon1: 1.2, epsilon2: 0.0, n: 0, w: 0 },
        )
        .unwrap();
        assert!(!outcome.success);
        assert_eq!(outcome.residual_class, (1, 0));

        // Probe inside region 2: ε1 = 0.8 also fails with class (1, 0).
        let outcome = decode_error(
            &code,
            Strategy::Qudit,
            &ErrorSample { epsilon1: 0.8, epsilon2: 0.0, n: 0, w: 0 },
        )
        .unwrap();
        assert!(!outcome.success);
        assert_eq!(outcome.residual_class, (1, 0));

        // But the pure strategy corrects 0.8 < c/2.
        let outcome = decode_error(
            &code,
            Strategy::Pure,
            &ErrorSample { epsilon1: 0.8, epsilon2: 0.0, n: 0, w: 0 },
        )
        .unwrap();
        assert!(outcome.success);
    }

    #[test]
    fn sweep_correctable_sets() {
        let code = code32();
        // Pure strategy corrects the open box |ε| < c/2 (no qudit errors).
        let spec = SweepSpec { emax: 0.99 * 1.5, grid: 10, include_dv: false };
        let records = run_grid_sweep(&code, Strategy::Pure, &spec).unwrap();
        assert_eq!(records.len(), 100);
        assert!(records.iter().all(|r| r.success));

        // Qudit strategy corrects arbitrary qudit errors with |ε| < δ.
        let spec = SweepSpec { emax: 0.99 * 0.5, grid: 8, include_dv: true };
        let records = run_grid_sweep(&code, Strategy::Qudit, &spec).unwrap();
        assert_eq!(records.len(), 8 * 8 * 9);
        assert!(records.iter().all(|r| r.success));

        // The qudit strategy sacrifices shift protection beyond δ.
        let spec = SweepSpec { emax: 0.99 * 1.5, grid: 10, include_dv: false };
        let records = run_grid_sweep(&code, Strategy::Qudit, &spec).unwrap();
        assert!(records.iter().any(|r| !r.success));

        assert!(matches!(
            run_grid_sweep(&code, Strategy::Pure, &SweepSpec { emax: 0.0, grid: 4, include_dv: false }),
            Err(DecoderError::InvalidParameters(_))
        ));
    }

    #[test]
    fn monte_carlo_determinism_and_channels() {
        let code = code32();
        let base = MonteCarloConfig {
            sigma: 0.3,
            p_x: 0.2,
            p_z: 0.1,
            trials: 400,
            seed: 7,
            threads: 1,
        };
        let a = run_monte_carlo(&code, Strategy::Qudit, &base).unwrap();
        let b = run_monte_carlo(&code, Strategy::Qudit, &base).unwrap();
        assert_eq!(a, b);
        // Thread count never changes the statistics.
        let threaded = run_monte_carlo(
            &code,
            Strategy::Qudit,
            &MonteCarloConfig { threads: 3, ..base },
        )
        .unwrap();
        assert_eq!(a, threaded);
        assert_eq!(a.histogram.values().sum::<u64>(), a.trials);

        // No noise → no failures.
        let quiet = MonteCarloConfig {
            sigma: 0.0,
            p_x: 0.0,
            p_z: 0.0,
            trials: 50,
            seed: 1,
            threads: 1,
        };
        let result = run_monte_carlo(&code, Strategy::Pure, &quiet).unwrap();
        assert_eq!(result.failures, 0);
        assert_eq!(result.histogram.get(&(0, 0)), Some(&50));

        // Pure qudit noise is fully corrected by the qudit strategy...
        let qudit_noise = MonteCarloConfig { p_x: 1.0, p_z: 1.0, ..quiet };
        let result = run_monte_carlo(&code, Strategy::Qudit, &qudit_noise).unwrap();
        assert_eq!(result.failures, 0);
        // ...but defeats the pure strategy.
        let result = run_monte_carlo(&code, Strategy::Pure, &qudit_noise).unwrap();
        assert_eq!(result.failures, result.trials);
    }

    #[test]
    fn monte_carlo_failure_rate_grows_with_noise() {
        let code = code32();
        let config = |sigma: f64| MonteCarloConfig {
            sigma,
            p_x: 0.0,
            p_z: 0.0,
            trials: 4000,
            seed: 11,
            threads: 2,
        };
        for strategy in [Strategy::Pure, Strategy::Qudit] {
            let low = run_monte_carlo(&code, strategy, &config(0.05 * 3.0)).unwrap();
            let high = run_monte_carlo(&code, strategy, &config(0.25 * 3.0)).unwrap();
            assert!(
                low.failures < high.failures,
                "{}: {} !< {}",
                strategy.name(),
                low.failures,
                high.failures
            );
        }
    }

    #[test]
    fn monte_carlo_rejects_bad_parameters() {
        let code = code32();
        let ok = MonteCarloConfig {
            sigma: 0.1,
            p_x: 0.0,
            p_z: 0.0,
            trials: 10,
            seed: 0,
            threads: 1,
        };
        for bad in [
            MonteCarloConfig { sigma: -1.0, ..ok },
            MonteCarloConfig { p_x: 1.5, ..ok },
            MonteCarloConfig { trials: 0, ..ok },
            MonteCarloConfig { threads: 0, ..ok },
        ] {
            assert!(matches!(
                run_monte_carlo(&code, Strategy::Pure, &bad),
                Err(DecoderError::InvalidParameters(_))
            ));
        }
        let trivial = simple_code(1, 1, 1).unwrap();
        assert!(matches!(
            run_monte_carlo(
                &trivial,
                Strategy::Pure,
                &MonteCarloConfig { p_x: 0.5, ..ok }
            ),
            Err(DecoderError::InvalidParameters(_))
        ));
    }
}

//! Construction and verification of hybrid oscillator-qudit codes.
//!
//! A code here is a lattice of displacement operators on `p` oscillator
//! modes and `k` qudits. Two constructions are provided:
//!
//! * [`simple_code`] — one mode, one qudit of dimension `c`, parametrized
//!   by coprime `(c, d)` and an integer `θ`. The logical dimension is
//!   `K = |cθ + d|`.
//! * [`build_general`] — the general construction from an integer
//!   anti-symmetric `Θ` (the commutation matrix of the logical algebra) and
//!   a rational anti-symmetric `Z` (the qudit-induced part). The qudit
//!   dimensions, encoders, logical encoders, dual torus `Θ⊥` and the
//!   split-orthogonal element `g` with `Θ⊥ = g·Θ` are all derived from two
//!   alternating Smith normal forms.
//!
//! Every constructed record is verified against the full identity set
//! before it is returned; [`GeneralLcaCode::verify`] re-runs those checks
//! on demand and reports them one by one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactmath::{
    alt_smith, bezout_pair, rational_int, ExactMathError, Rational, RationalMatrix,
};
use crate::symplectic::{
    standard_j, MoritaElement, ScaledMatrix, SymplecticError, SymplecticForm,
};

/// Errors from code construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CodeError {
    /// Qudit dimension `c` must be a positive integer.
    #[error("qudit dimension must be at least 1, got {0}")]
    InvalidQuditDimension(i64),
    /// `(c, d)` must be coprime.
    #[error("{c} and {d} are not coprime")]
    NotCoprime { c: i64, d: i64 },
    /// `cθ + d = 0` gives an empty logical space.
    #[error("degenerate parameters: {c}·{theta} + {d} = 0")]
    DegenerateParameters { c: i64, d: i64, theta: i64 },
    /// `Θ` and `Z` must be square of the same even dimension.
    #[error("Θ and Z must be square matrices of equal even dimension")]
    ShapeMismatch,
    /// The named matrix must be anti-symmetric.
    #[error("{0} must be anti-symmetric")]
    NotAntiSymmetric(&'static str),
    /// The commutation matrix `Θ` must be integral.
    #[error("Θ must have integer entries")]
    NonIntegerTheta,
    /// The construction requires `Θ − Z` invertible.
    #[error("construction requires Θ − Z to be invertible")]
    SingularThetaMinusZ,
    /// Derived qudit parameters exceeded the machine-integer range.
    #[error("derived parameters exceed the supported integer range")]
    ParameterOverflow,
    /// Input vectors must share one length.
    #[error("parameter vectors must have equal lengths")]
    LengthMismatch,
    /// A caller-supplied change of basis must be integral and unimodular.
    #[error("supplied transform must be an integer unimodular matrix")]
    TransformNotUnimodular,
    /// A caller-supplied transform does not put `m·Z` into canonical form.
    #[error("supplied transform does not reduce m·Z to the canonical alternating form")]
    TransformNotCanonical,
    /// A replacement encoder must reproduce the pairing `Θ − Z`.
    #[error("replacement encoder does not satisfy Tᵀ J T = Θ − Z")]
    EncoderMismatch,
    /// Codes passed to `prep_symplectic` must share their canonical data.
    #[error("codes are not comparable: {0}")]
    MismatchedCodes(String),
    /// A preparation map would need irrational entries.
    #[error("preparation map requires irrational entries ({0} is not a perfect square)")]
    IrrationalPreparation(Rational),
    /// Construction self-check failed; this indicates a bug, not bad input.
    #[error("construction self-check failed: {}", .0.join("; "))]
    ConstructionInconsistent(Vec<String>),
    /// Underlying symplectic-layer failure.
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    /// Underlying exact-arithmetic failure.
    #[error(transparent)]
    Math(#[from] ExactMathError),
}

/// A one-mode, one-qudit code with coprime parameters `(c, d)` and integer
/// twist `θ`, in its canonical normalization `cθ + d > 0`.
///
/// Displacement coordinates for this code are expressed in multiples of the
/// base unit `u′` with `u′² = unit_sq = 1/(K·c)`; the physical unit is
/// `√(2π)·u′`. In these units the stabilizer generators are
/// `S_X = (K, 0 | −d, 0)` and `S_Z = (0, K | 0, 1)`, and the logical
/// operators are `X̄ = (1, 0 | −1, 0)` and `Z̄ = (0, −1 | 0, a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleLcaCode {
    /// Qudit dimension (`c ≥ 1`).
    pub c: i64,
    /// Coprime partner of `c`; any integer, not reduced into `[0, c)`.
    pub d: i64,
    /// Integer twist.
    pub theta: i64,
    /// Bézout coefficient: `b·c − a·d = 1`.
    pub a: i64,
    /// Bézout coefficient: `b·c − a·d = 1`.
    pub b: i64,
    /// Logical dimension `K = cθ + d` (positive after normalization).
    pub k: i64,
    /// Squared displacement unit `1/(K·c)`.
    pub unit_sq: Rational,
}

/// Builds a simple code, normalizing `(θ, d) → (−θ, −d)` when `cθ + d < 0`.
pub fn simple_code(c: i64, d: i64, theta: i64) -> Result<SimpleLcaCode, CodeError> {
    if c < 1 {
        return Err(CodeError::InvalidQuditDimension(c));
    }
    if num_integer::gcd(c, d.abs()) != 1 {
        return Err(CodeError::NotCoprime { c, d });
    }
    let k128 = i128::from(c) * i128::from(theta) + i128::from(d);
    if k128 == 0 {
        return Err(CodeError::DegenerateParameters { c, d, theta });
    }
    let (d, theta) = if k128 < 0 { (-d, -theta) } else { (d, theta) };
    let k = i64::try_from(k128.abs()).map_err(|_| CodeError::ParameterOverflow)?;
    let pair = bezout_pair(c, d)?;
    // gcd(aθ + b, K) = 1 always: any common divisor divides
    // c(aθ + b) − a(cθ + d) = bc − ad = 1.
    debug_assert_eq!(
        num_integer::gcd((i128::from(pair.a) * i128::from(theta) + i128::from(pair.b)).abs(), i128::from(k)),
        1
    );
    Ok(SimpleLcaCode {
        c,
        d,
        theta,
        a: pair.a,
        b: pair.b,
        k,
        unit_sq: Rational::new(BigInt::one(), BigInt::from(k) * BigInt::from(c)),
    })
}

impl SimpleLcaCode {
    /// The commutation matrix `Θ = [[0, θ], [−θ, 0]]` of the logical pair.
    pub fn theta_matrix(&self) -> RationalMatrix {
        let mut m = RationalMatrix::new(2, 2);
        m.set(0, 1, rational_int(self.theta));
        m.set(1, 0, rational_int(-self.theta));
        m
    }

    /// The qudit-induced matrix `Z = [[0, −d/c], [d/c, 0]]`.
    pub fn z_matrix(&self) -> RationalMatrix {
        let mut m = RationalMatrix::new(2, 2);
        m.set(0, 1, Rational::new(BigInt::from(-self.d), BigInt::from(self.c)));
        m.set(1, 0, Rational::new(BigInt::from(self.d), BigInt::from(self.c)));
        m
    }

    /// The equivalent general-construction record.
    pub fn to_general(&self) -> Result<GeneralLcaCode, CodeError> {
        build_general(&self.theta_matrix(), &self.z_matrix())
    }

    /// The dual torus `Θ⊥`, computed through the general construction.
    pub fn dual_torus(&self) -> Result<RationalMatrix, CodeError> {
        Ok(self.to_general()?.theta_perp)
    }

    /// Squared code distance in units of `2π`: `c/K`.
    ///
    /// The physical distance is `d = √(2πc/K)`; returning its square keeps
    /// the value rational. In `u′`-units the distance is exactly `c` (and
    /// the decision half-width `δ = d/(2c)` is `1/2`).
    pub fn distance_sq(&self) -> Rational {
        Rational::new(BigInt::from(self.c), BigInt::from(self.k))
    }

    /// Stabilizer generator coordinates `S_X = (K, 0 | −d, 0)` in `u′`-units.
    pub fn stabilizer_x(&self) -> ([i64; 2], [i64; 2]) {
        ([self.k, 0], [-self.d, 0])
    }

    /// Stabilizer generator coordinates `S_Z = (0, K | 0, 1)` in `u′`-units.
    pub fn stabilizer_z(&self) -> ([i64; 2], [i64; 2]) {
        ([0, self.k], [0, 1])
    }

    /// Logical `X̄ = (1, 0 | −1, 0)` in `u′`-units.
    pub fn logical_x(&self) -> ([i64; 2], [i64; 2]) {
        ([1, 0], [-1, 0])
    }

    /// Logical `Z̄ = (0, −1 | 0, a)` in `u′`-units.
    pub fn logical_z(&self) -> ([i64; 2], [i64; 2]) {
        ([0, -1], [0, self.a])
    }
}

/// A general hybrid code: `p` modes, `k` qudits, and all derived data.
///
/// The construction fixes the convention `m·Z = Rᵀ·[[0, H, 0], [−H, 0, 0],
/// [0, 0, 0]]·R` and `m·(Θ − Z) = Qᵀ·[[0, T], [−T, 0]]·Q` with `H = diag(h)`
/// and `T = diag(t)`; the encoders read
///
/// * `T_cv = [[0, Δ], [−Δ, 0]]·Q` with `Δ = diag(√(t_j/m))` (a
///   [`ScaledMatrix`] with radicands `t_j/m`),
/// * `T_dv = [[diag(d), 0, 0], [0, I_k, 0]]·R`,
/// * `S_dv = [[0, −I_k, 0], [diag(a), 0, 0]]`,
/// * `S_cv = −Δ̂⁻¹·Q⁻ᵀ·Rᵀ·C` with `C = diag(1/c, 1/c, −I)` blockwise,
///
/// where `(a_j, b_j)` solve `a_j·d_j + b_j·c_j = 1`. The dual torus is
/// `Θ⊥ = C·R·(Θ − Z)⁻¹·Rᵀ·C + [[0, −diag(a/c), 0], [diag(a/c), 0, 0],
/// [0, 0, 0]]`, equal to `g·Θ` for the stored split-orthogonal `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralLcaCode {
    /// Number of oscillator modes.
    pub p: usize,
    /// Number of qudits (hyperbolic pairs of `Z`); `k ≤ p`.
    pub k: usize,
    /// Least common denominator of `Z`.
    pub m: BigInt,
    /// Logical commutation matrix (integer anti-symmetric, `2p × 2p`).
    pub theta: RationalMatrix,
    /// Qudit-induced anti-symmetric matrix (`2p × 2p`, denominators divide `m`).
    pub z: RationalMatrix,
    /// Unimodular transform with `m(Θ − Z) = Qᵀ·[[0, T], [−T, 0]]·Q`.
    pub q: RationalMatrix,
    /// Unimodular transform with `m·Z = Rᵀ·[[0, H, 0], [−H, 0, 0], [0, 0, 0]]·R`.
    pub r: RationalMatrix,
    /// Invariant factors of `m(Θ − Z)`: `t_1 | … | t_p`, positive.
    pub t: Vec<BigInt>,
    /// Invariant factors of `m·Z`: `h_1 | … | h_k`, positive.
    pub h: Vec<BigInt>,
    /// Qudit dimensions `c_j = m / gcd(h_j, m)`.
    pub cvec: Vec<i64>,
    /// Qudit twists `d_j = h_j / gcd(h_j, m)` (coprime to `c_j`, unreduced).
    pub dvec: Vec<i64>,
    /// Bézout coefficients with `a_j·d_j + b_j·c_j = 1`.
    pub avec: Vec<i64>,
    /// Bézout coefficients with `a_j·d_j + b_j·c_j = 1`.
    pub bvec: Vec<i64>,
    /// Oscillator block of the stabilizer encoder.
    pub t_cv: ScaledMatrix,
    /// Qudit block of the stabilizer encoder (`2k × 2p`, integer).
    pub t_dv: RationalMatrix,
    /// Oscillator block of the logical encoder.
    pub s_cv: ScaledMatrix,
    /// Qudit block of the logical encoder (`2k × 2p`, integer).
    pub s_dv: RationalMatrix,
    /// The dual torus `Θ⊥`.
    pub theta_perp: RationalMatrix,
    /// Split-orthogonal element with `g·Θ = Θ⊥` (Möbius action).
    pub g: MoritaElement,
    /// Logical dimension `K = |Pf(Θ − Z)|·∏c_j`, a positive integer.
    pub logical_dim: BigInt,
}

/// Extracts `(k, h)` from a matrix that must already be in the canonical
/// alternating form `[[0, H, 0], [−H, 0, 0], [0, 0, 0]]` with a positive
/// divisibility chain.
fn extract_canonical(m: &RationalMatrix) -> Result<(usize, Vec<BigInt>), CodeError> {
    let rows = m.to_bigint_rows().map_err(|_| CodeError::TransformNotCanonical)?;
    let n = m.nrows;
    // Count leading nonzero entries on the (j, k+j) diagonal candidates.
    // k is determined by the rank; find it as the number of nonzero rows / 2.
    let nonzero_rows = rows.iter().filter(|r| r.iter().any(|e| !e.is_zero())).count();
    if nonzero_rows % 2 != 0 {
        return Err(CodeError::TransformNotCanonical);
    }
    let k = nonzero_rows / 2;
    if 2 * k > n {
        return Err(CodeError::TransformNotCanonical);
    }
    let mut h = Vec::with_capacity(k);
    for j in 0..k {
        let v = rows[j][k + j].clone();
        if !v.is_positive() {
            return Err(CodeError::TransformNotCanonical);
        }
        h.push(v);
    }
    // Validate the full pattern and the chain.
    for i in 0..n {
        for j in 0..n {
            let expected = if i < k && j >= k && j < 2 * k && j - k == i {
                h[i].clone()
            } else if i >= k && i < 2 * k && j < k && i - k == j {
                -h[j].clone()
            } else {
                BigInt::zero()
            };
            if rows[i][j] != expected {
                return Err(CodeError::TransformNotCanonical);
            }
        }
    }
    for w in h.windows(2) {
        if !w[1].mod_floor(&w[0]).is_zero() {
            return Err(CodeError::TransformNotCanonical);
        }
    }
    Ok((k, h))
}

fn bigint_to_i64(v: &BigInt) -> Result<i64, CodeError> {
    i64::try_from(v.clone()).map_err(|_| CodeError::ParameterOverflow)
}

/// Block-diagonal matrix `diag(vals)` as rationals.
fn diag(vals: &[Rational]) -> RationalMatrix {
    let mut m = RationalMatrix::new(vals.len(), vals.len());
    for (i, v) in vals.iter().enumerate() {
        m.set(i, i, v.clone());
    }
    m
}

/// The `2p × 2p` matrix `[[0, −diag(vals), 0], [diag(vals), 0, 0], [0, 0, 0]]`
/// in the canonical block layout (`k`, `k`, `2(p−k)`).
fn skew_pair_block(vals: &[Rational], p: usize) -> RationalMatrix {
    let k = vals.len();
    let mut m = RationalMatrix::new(2 * p, 2 * p);
    for (j, v) in vals.iter().enumerate() {
        m.set(j, k + j, -v.clone());
        m.set(k + j, j, v.clone());
    }
    m
}

/// Builds a general code from the commutation matrix `Θ` and the
/// qudit-induced matrix `Z`, choosing the change of basis internally.
pub fn build_general(
    theta: &RationalMatrix,
    z: &RationalMatrix,
) -> Result<GeneralLcaCode, CodeError> {
    let m = z.denominator_lcm();
    let mz = z.scale(&Rational::from_integer(m.clone()));
    let dec = alt_smith(&mz)?;
    let r = dec
        .transform
        .inverse()
        .expect("unimodular transforms are invertible");
    build_general_with_transform(theta, z, &r)
}

/// Builds a general code with a caller-supplied change of basis `R`
/// (satisfying `m·Z = Rᵀ·canonical·R`).
///
/// This is how derived constructions keep control of the qudit encoder:
/// `T_dv = [[diag(d), 0, 0], [0, I_k, 0]]·R` depends on `R`, so a caller
/// that needs specific encoder rows supplies the transform instead of
/// letting the normal form pick one.
pub fn build_general_with_transform(
    theta: &RationalMatrix,
    z: &RationalMatrix,
    r: &RationalMatrix,
) -> Result<GeneralLcaCode, CodeError> {
    if !theta.is_square() || theta.nrows != z.nrows || theta.nrows % 2 != 0 || theta.nrows == 0 {
        return Err(CodeError::ShapeMismatch);
    }
    let p = theta.nrows / 2;
    if !theta.is_anti_symmetric() {
        return Err(CodeError::NotAntiSymmetric("Θ"));
    }
    if !z.is_anti_symmetric() {
        return Err(CodeError::NotAntiSymmetric("Z"));
    }
    if !theta.is_integer() {
        return Err(CodeError::NonIntegerTheta);
    }
    let theta_minus_z = theta.sub(z);
    if theta_minus_z.det().is_zero() {
        return Err(CodeError::SingularThetaMinusZ);
    }
    if !(r.is_square() && r.nrows == 2 * p && r.is_integer() && r.det().abs().is_one()) {
        return Err(CodeError::TransformNotUnimodular);
    }

    let m = z.denominator_lcm();
    let m_rat = Rational::from_integer(m.clone());
    let mz = z.scale(&m_rat);

    // Qudit structure from m·Z = Rᵀ·canonical·R.
    let r_inv = r.inverse().expect("unimodular transforms are invertible");
    let canonical_z = r_inv.transpose().mul(&mz).mul(&r_inv);
    let (k, h) = extract_canonical(&canonical_z)?;

    let mut cvec = Vec::with_capacity(k);
    let mut dvec = Vec::with_capacity(k);
    let mut avec = Vec::with_capacity(k);
    let mut bvec = Vec::with_capacity(k);
    for h_j in &h {
        let g_j = h_j.gcd(&m);
        let c_j = bigint_to_i64(&(&m / &g_j))?;
        let d_j = bigint_to_i64(&(h_j / &g_j))?;
        // bezout_pair solves b·c − a·d = 1; the construction wants
        // a·d + b·c = 1, so negate a.
        let pair = bezout_pair(c_j, d_j)?;
        cvec.push(c_j);
        dvec.push(d_j);
        avec.push(-pair.a);
        bvec.push(pair.b);
    }

    // Oscillator structure from m·(Θ − Z) = Qᵀ·[[0, T], [−T, 0]]·Q.
    let mtz = theta_minus_z.scale(&m_rat);
    let dec_t = alt_smith(&mtz)?;
    debug_assert_eq!(dec_t.ranks, p, "Θ − Z invertible forces full rank");
    let t = dec_t.invariants.clone();
    let q = dec_t
        .transform
        .inverse()
        .expect("unimodular transforms are invertible");

    // Encoders.
    let radicands_t: Vec<Rational> = (0..2 * p)
        .map(|i| Rational::new(t[i % p].clone(), m.clone()))
        .collect();
    let t_cv = ScaledMatrix::new(radicands_t, standard_j(p).mul(&q))?;

    let mut selector = RationalMatrix::new(2 * k, 2 * p);
    for (j, &d_j) in dvec.iter().enumerate() {
        selector.set(j, j, rational_int(d_j));
        selector.set(k + j, k + j, Rational::one());
    }
    let t_dv = selector.mul(r);

    let mut s_dv = RationalMatrix::new(2 * k, 2 * p);
    for (j, &a_j) in avec.iter().enumerate() {
        s_dv.set(j, k + j, -Rational::one());
        s_dv.set(k + j, j, rational_int(a_j));
    }

    // C = diag(1/c, 1/c, −I) in the canonical block layout.
    let mut c_diag_entries: Vec<Rational> = Vec::with_capacity(2 * p);
    for &c_j in &cvec {
        c_diag_entries.push(Rational::new(BigInt::one(), BigInt::from(c_j)));
    }
    for &c_j in &cvec {
        c_diag_entries.push(Rational::new(BigInt::one(), BigInt::from(c_j)));
    }
    for _ in 0..2 * (p - k) {
        c_diag_entries.push(-Rational::one());
    }
    // Reorder: layout is (u-block k, v-block k, kernel), and the entries
    // above were pushed as (u, v, kernel) already.
    let c_m = diag(&c_diag_entries);

    let q_inv_t = q
        .inverse()
        .expect("unimodular transforms are invertible")
        .transpose();
    let radicands_s: Vec<Rational> = (0..2 * p)
        .map(|i| Rational::new(m.clone(), t[i % p].clone()))
        .collect();
    let s_cv_base = q_inv_t.mul(&r.transpose()).mul(&c_m).neg();
    let s_cv = ScaledMatrix::new(radicands_s, s_cv_base)?;

    // Dual torus.
    let a_over_c: Vec<Rational> = avec
        .iter()
        .zip(&cvec)
        .map(|(&a_j, &c_j)| Rational::new(BigInt::from(a_j), BigInt::from(c_j)))
        .collect();
    let tmz_inv = theta_minus_z
        .inverse()
        .expect("invertibility was checked above");
    let theta_perp = c_m
        .mul(r)
        .mul(&tmz_inv)
        .mul(&r.transpose())
        .mul(&c_m)
        .add(&skew_pair_block(&a_over_c, p));

    // The split-orthogonal element realizing Θ ↦ Θ⊥.
    let r_inv_t = r_inv.transpose();
    let a_rats: Vec<Rational> = avec.iter().map(|&v| rational_int(v)).collect();
    let d_rats: Vec<Rational> = dvec.iter().map(|&v| rational_int(v)).collect();
    let mut bdiag: Vec<Rational> = Vec::with_capacity(2 * p);
    let mut cdiag: Vec<Rational> = Vec::with_capacity(2 * p);
    for pass in 0..2 {
        let _ = pass;
        for j in 0..k {
            bdiag.push(rational_int(bvec[j]));
            cdiag.push(rational_int(cvec[j]));
        }
    }
    for _ in 0..2 * (p - k) {
        bdiag.push(-Rational::one());
        cdiag.push(-Rational::one());
    }
    let g = MoritaElement::new(
        skew_pair_block(&a_rats, p).mul(&r_inv_t),
        diag(&bdiag).mul(r),
        diag(&cdiag).mul(&r_inv_t),
        skew_pair_block(&d_rats, p).mul(r),
    )?;

    // Logical dimension, with its two independent expressions.
    let pf = theta_minus_z.pfaffian()?;
    let mut prod_c = Rational::one();
    for &c_j in &cvec {
        prod_c *= rational_int(c_j);
    }
    let k_dim_rat = pf.abs() * &prod_c;
    let mut t_based = prod_c;
    for t_i in &t {
        t_based *= Rational::from_integer(t_i.clone());
    }
    for _ in 0..p {
        t_based /= Rational::from_integer(m.clone());
    }
    if !k_dim_rat.is_integer() || !k_dim_rat.is_positive() || k_dim_rat != t_based {
        return Err(CodeError::ConstructionInconsistent(vec![format!(
            "logical dimension {k_dim_rat} is not a positive integer matching {t_based}"
        )]));
    }

    let code = GeneralLcaCode {
        p,
        k,
        m,
        theta: theta.clone(),
        z: z.clone(),
        q,
        r: r.clone(),
        t,
        h,
        cvec,
        dvec,
        avec,
        bvec,
        t_cv,
        t_dv,
        s_cv,
        s_dv,
        theta_perp,
        g,
        logical_dim: k_dim_rat.to_integer(),
    };
    let report = code.verify();
    if !report.is_ok() {
        return Err(CodeError::ConstructionInconsistent(report.failures()));
    }
    Ok(code)
}

/// One named identity check on a constructed code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationCheck {
    /// What was checked.
    pub name: &'static str,
    /// Whether it held exactly.
    pub passed: bool,
}

/// The result of re-verifying a code record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// All checks, in a fixed order.
    pub checks: Vec<VerificationCheck>,
}

impl VerificationReport {
    /// Whether every check passed.
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Names of the failed checks.
    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.to_string())
            .collect()
    }
}

impl GeneralLcaCode {
    /// The symplectic form of this code's phase space.
    pub fn form(&self) -> SymplecticForm {
        SymplecticForm::new(self.p, self.cvec.clone())
            .expect("constructed codes have valid qudit dimensions")
    }

    /// Per-mode squared displacement units `t_j/m` (the radicands of the
    /// encoder rows).
    pub fn unit_squares(&self) -> Vec<Rational> {
        (0..self.p)
            .map(|j| Rational::new(self.t[j].clone(), self.m.clone()))
            .collect()
    }

    /// The logical dimension, recomputed from both closed forms as a
    /// consistency check.
    pub fn logical_dimension(&self) -> Result<BigInt, CodeError> {
        let pf = self.theta.sub(&self.z).pfaffian()?;
        let mut k_dim = pf.abs();
        for &c_j in &self.cvec {
            k_dim *= rational_int(c_j);
        }
        let mut t_based = Rational::one();
        for &c_j in &self.cvec {
            t_based *= rational_int(c_j);
        }
        for t_i in &self.t {
            t_based *= Rational::from_integer(t_i.clone());
        }
        for _ in 0..self.p {
            t_based /= Rational::from_integer(self.m.clone());
        }
        if !k_dim.is_integer() || k_dim != t_based || k_dim.to_integer() != self.logical_dim {
            return Err(CodeError::ConstructionInconsistent(vec![
                "logical dimension cross-check failed".to_string(),
            ]));
        }
        Ok(self.logical_dim.clone())
    }

    /// Re-runs every construction identity on this record.
    pub fn verify(&self) -> VerificationReport {
        let mut checks = Vec::new();
        let mut push = |name: &'static str, passed: bool| {
            checks.push(VerificationCheck { name, passed });
        };
        let form = self.form();
        let j_cv = &form.j_cv;
        let j_dv = &form.j_dv;
        let theta_minus_z = self.theta.sub(&self.z);
        let m_rat = Rational::from_integer(self.m.clone());

        push(
            "theta-integer-anti-symmetric",
            self.theta.is_integer() && self.theta.is_anti_symmetric(),
        );
        push("z-anti-symmetric", self.z.is_anti_symmetric());
        push(
            "transforms-unimodular",
            self.r.is_integer()
                && self.q.is_integer()
                && self.r.det().abs().is_one()
                && self.q.det().abs().is_one(),
        );

        let canon_h = {
            let mut mtx = RationalMatrix::new(2 * self.p, 2 * self.p);
            for (j, h_j) in self.h.iter().enumerate() {
                mtx.set(j, self.k + j, Rational::from_integer(h_j.clone()));
                mtx.set(self.k + j, j, Rational::from_integer(-h_j.clone()));
            }
            mtx
        };
        push(
            "z-normal-form",
            self.z.scale(&m_rat) == self.r.transpose().mul(&canon_h).mul(&self.r),
        );
        let canon_t = {
            let mut mtx = RationalMatrix::new(2 * self.p, 2 * self.p);
            for (j, t_j) in self.t.iter().enumerate() {
                mtx.set(j, self.p + j, Rational::from_integer(t_j.clone()));
                mtx.set(self.p + j, j, Rational::from_integer(-t_j.clone()));
            }
            mtx
        };
        push(
            "theta-minus-z-normal-form",
            theta_minus_z.scale(&m_rat) == self.q.transpose().mul(&canon_t).mul(&self.q),
        );

        push(
            "invariant-chains",
            self.h.windows(2).all(|w| w[1].mod_floor(&w[0]).is_zero())
                && self.t.windows(2).all(|w| w[1].mod_floor(&w[0]).is_zero())
                && self.h.iter().all(|v| v.is_positive())
                && self.t.iter().all(|v| v.is_positive()),
        );
        push(
            "bezout-rows",
            (0..self.k).all(|j| {
                self.cvec[j] >= 1
                    && num_integer::gcd(self.cvec[j], self.dvec[j].abs()) == 1
                    && i128::from(self.avec[j]) * i128::from(self.dvec[j])
                        + i128::from(self.bvec[j]) * i128::from(self.cvec[j])
                        == 1
            }),
        );

        let expected_radicands: Vec<Rational> = (0..2 * self.p)
            .map(|i| Rational::new(self.t[i % self.p].clone(), self.m.clone()))
            .collect();
        push("encoder-radicands", self.t_cv.radicands == expected_radicands);

        push(
            "encoder-pairing-cv",
            self.t_cv
                .pair(&self.t_cv, j_cv)
                .map(|pairing| pairing == theta_minus_z)
                .unwrap_or(false),
        );
        push(
            "encoder-pairing-dv",
            self.t_dv.is_integer()
                && self.t_dv.transpose().mul(j_dv).mul(&self.t_dv) == self.z,
        );
        let s_dv_pairing = self.s_dv.transpose().mul(j_dv).mul(&self.s_dv);
        push(
            "logical-pairing",
            self.s_cv
                .pair(&self.s_cv, j_cv)
                .map(|cv| cv.add(&s_dv_pairing) == self.theta_perp.neg())
                .unwrap_or(false),
        );
        let mixed_dv = self.t_dv.transpose().mul(j_dv).mul(&self.s_dv);
        push(
            "mixed-pairing-integer",
            self.t_cv
                .pair(&self.s_cv, j_cv)
                .map(|cv| cv.add(&mixed_dv).is_integer())
                .unwrap_or(false),
        );

        push("g-split-orthogonal", self.g.is_so_nn());
        push(
            "g-mobius-action",
            self.g
                .mobius(&self.theta)
                .map(|image| image == self.theta_perp)
                .unwrap_or(false),
        );
        push("logical-dimension", self.logical_dimension().is_ok());

        VerificationReport { checks }
    }

    /// Replaces the oscillator encoder with `t_cv_new` (which must satisfy
    /// `Tᵀ J T = Θ − Z` with the same radicands) and recomputes the
    /// logical encoder to match.
    pub fn with_cv_encoder(&self, t_cv_new: ScaledMatrix) -> Result<GeneralLcaCode, CodeError> {
        let form = self.form();
        let pairing_ok = t_cv_new
            .pair(&t_cv_new, &form.j_cv)
            .map(|pairing| pairing == self.theta.sub(&self.z))
            .unwrap_or(false);
        if !pairing_ok || t_cv_new.radicands != self.t_cv.radicands {
            return Err(CodeError::EncoderMismatch);
        }
        // S_cv = Δ̂⁻¹ · (J_cv · B⁻ᵀ · Rᵀ · C) for T_cv = Δ̂·B.
        let base_inv_t = t_cv_new
            .base
            .transpose()
            .inverse()
            .map_err(|_| CodeError::EncoderMismatch)?;
        let mut c_diag_entries: Vec<Rational> = Vec::with_capacity(2 * self.p);
        for pass in 0..2 {
            let _ = pass;
            for &c_j in &self.cvec {
                c_diag_entries.push(Rational::new(BigInt::one(), BigInt::from(c_j)));
            }
        }
        for _ in 0..2 * (self.p - self.k) {
            c_diag_entries.push(-Rational::one());
        }
        let c_m = diag(&c_diag_entries);
        let s_cv_base = standard_j(self.p)
            .mul(&base_inv_t)
            .mul(&self.r.transpose())
            .mul(&c_m);
        let s_cv = ScaledMatrix::new(self.s_cv.radicands.clone(), s_cv_base)?;
        let mut out = self.clone();
        out.t_cv = t_cv_new;
        out.s_cv = s_cv;
        let report = out.verify();
        if !report.is_ok() {
            return Err(CodeError::ConstructionInconsistent(report.failures()));
        }
        Ok(out)
    }
}

/// The Gaussian preparation map between two codes sharing canonical data.
///
/// Both codes must have the same `Θ`, `Z`, transform `R`, invariants and
/// qudit encoder; they may differ in the oscillator encoder (e.g. one built
/// canonically, one squeezed). Returns the `2p × 2p` symplectic `S` with
/// `S·T_from = T_to` exactly.
pub fn prep_symplectic(
    from: &GeneralLcaCode,
    to: &GeneralLcaCode,
) -> Result<RationalMatrix, CodeError> {
    if from.theta != to.theta || from.z != to.z {
        return Err(CodeError::MismatchedCodes("Θ or Z differ".to_string()));
    }
    if from.r != to.r || from.t != to.t || from.m != to.m || from.t_dv != to.t_dv {
        return Err(CodeError::MismatchedCodes(
            "canonical invariants differ".to_string(),
        ));
    }
    let x = to
        .t_cv
        .base
        .mul(&from.t_cv.base.inverse().expect("encoder bases are invertible"));
    // S = Δ̂ · X · Δ̂⁻¹ entrywise: S_ij = √(ρ_i/ρ_j) · X_ij.
    let mut s = RationalMatrix::new(2 * from.p, 2 * from.p);
    for i in 0..2 * from.p {
        for j in 0..2 * from.p {
            if x.get(i, j).is_zero() {
                continue;
            }
            let ratio = &from.t_cv.radicands[i] / &from.t_cv.radicands[j];
            let root = crate::exactmath::rational_sqrt(&ratio)
                .ok_or(CodeError::IrrationalPreparation(ratio))?;
            s.set(i, j, x.get(i, j) * &root);
        }
    }
    let j_cv = standard_j(from.p);
    if s.transpose().mul(&j_cv).mul(&s) != j_cv {
        return Err(CodeError::ConstructionInconsistent(vec![
            "preparation map is not symplectic".to_string(),
        ]));
    }
    Ok(s)
}

/// Builds the product of `p` independent one-mode codes as one general
/// record: mode `j` carries `(c_j, d_j, θ_j)`.
///
/// The construction canonicalizes the qudit group: coprime dimensions merge
/// by the divisibility chain (e.g. dimensions `(2, 3)` become `(6, 1)`,
/// the same group by the Chinese remainder theorem), so the recorded
/// `cvec` may differ from the input while the logical dimension
/// `K = ∏|c_jθ_j + d_j|` is preserved.
pub fn standard_form_multi(
    cvec: &[i64],
    dvec: &[i64],
    thetavec: &[i64],
) -> Result<GeneralLcaCode, CodeError> {
    let p = cvec.len();
    if dvec.len() != p || thetavec.len() != p || p == 0 {
        return Err(CodeError::LengthMismatch);
    }
    let mut theta = RationalMatrix::new(2 * p, 2 * p);
    let mut z = RationalMatrix::new(2 * p, 2 * p);
    for j in 0..p {
        // Normalize each mode like the one-mode constructor does.
        let mode = simple_code(cvec[j], dvec[j], thetavec[j])?;
        theta.set(j, p + j, rational_int(mode.theta));
        theta.set(p + j, j, rational_int(-mode.theta));
        z.set(j, p + j, Rational::new(BigInt::from(-mode.d), BigInt::from(mode.c)));
        z.set(p + j, j, Rational::new(BigInt::from(mode.d), BigInt::from(mode.c)));
    }
    build_general(&theta, &z)
}

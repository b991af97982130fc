//! Logical Clifford gates from lattice automorphisms.
//!
//! A Gaussian-Clifford gate acts block-diagonally: an oscillator
//! symplectic `V_cv` and an integer qudit symplectic `V_dv`, with no
//! mixing between the two sectors. On a one-mode code, an integer
//! automorphism `W` of the commutation matrix `Θ` lifts to a gate exactly
//! when `W` lies in the congruence group `Γ₀(d)` (lower-left entry
//! divisible by `d`): the oscillator side is `W` itself in code units, and
//! the qudit side is `T_dv·W·T_dv⁻¹` with `T_dv = diag(−d, 1)`.
//!
//! The induced logical action is `(W⁻¹)ᵀ mod K`, acting on logical
//! exponent columns ordered `(Z-power, X-power)`; every constructed gate
//! is checked against the classes of the pushed-through logical
//! generators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::codes::{GeneralLcaCode, SimpleLcaCode};
use crate::exactmath::{rational_int, rational_sqrt, ExactMathError, Rational, RationalMatrix};
use crate::heisenberg::{logical_class, HeisenbergError, HybridDisplacement};
use crate::symplectic::{
    is_mod_symplectic, mod_reduce, standard_j, symplectic_pauli_action, ScaledMatrix,
    SymplecticError, SymplecticForm,
};

/// Errors from gate synthesis and verification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GateError {
    /// The candidate matrix does not preserve the commutation matrix.
    #[error("matrix is not an automorphism of the commutation matrix")]
    NotAutomorphism,
    /// The candidate matrix is unimodular but orientation-reversing.
    #[error("matrix has determinant −1 and cannot act as a Gaussian")]
    NotSymplectic,
    /// The automorphism fails the qudit divisibility condition.
    #[error("automorphism is not realizable as a qudit Clifford")]
    NotRealizable,
    /// The code shape is outside the supported synthesis families.
    #[error("unsupported code for gate synthesis: {0}")]
    UnsupportedCode(String),
    /// A mod-c lift was requested for a non-symplectic residue.
    #[error("matrix is not symplectic modulo {0}")]
    NotModSymplectic(i64),
    /// The gate does not fit the code's mode/qudit counts.
    #[error("gate blocks have the wrong shape for this code")]
    ShapeMismatch,
    /// Construction self-check failed; indicates a bug, not bad input.
    #[error("gate self-check failed: {0}")]
    Internal(String),
    /// Underlying displacement-algebra failure.
    #[error(transparent)]
    Heisenberg(#[from] HeisenbergError),
    /// Underlying symplectic-layer failure.
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    /// Underlying exact-arithmetic failure.
    #[error(transparent)]
    Math(#[from] ExactMathError),
}

/// A block-diagonal Gaussian-Clifford gate.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianClifford {
    /// Oscillator block (`2p × 2p`), symplectic for the oscillator form.
    pub v_cv: ScaledMatrix,
    /// Qudit block (`2k × 2k`), integer and symplectic for the qudit form.
    pub v_dv: RationalMatrix,
}

/// Whether `W` is an automorphism of the anti-symmetric integer matrix
/// `Θ`: integer, `|det W| = 1`, and `Wᵀ·Θ·W = Θ`.
pub fn is_automorphism(w: &RationalMatrix, theta: &RationalMatrix) -> bool {
    w.is_square()
        && w.nrows == theta.nrows
        && w.is_integer()
        && w.det().abs().is_one()
        && w.transpose().mul(theta).mul(w) == *theta
}

/// Whether a `2×2` integer symplectic matrix lies in `Γ₀(d)`: lower-left
/// entry divisible by `d` (with `Γ₀(0)` requiring it to vanish).
pub fn in_gamma0(w: &RationalMatrix, d: i64) -> Result<bool, GateError> {
    if !(w.is_square() && w.nrows == 2 && w.is_integer() && w.det().is_one()) {
        return Err(GateError::NotSymplectic);
    }
    let lower_left = w.get(1, 0).to_integer();
    Ok(if d == 0 {
        lower_left.is_zero()
    } else {
        lower_left.mod_floor(&BigInt::from(d.abs())).is_zero()
    })
}

/// Synthesizes the gate of an automorphism `W` on a one-mode code.
///
/// In code units the stabilizer encoder is the scalar `K·I` on the
/// oscillator and `diag(−d, 1)` on the qudit, so `V_cv = W` and
/// `V_dv = diag(−d, 1)·W·diag(−d, 1)⁻¹ = [[w₁₁, −d·w₁₂], [−w₂₁/d, w₂₂]]`,
/// which is integral exactly on `Γ₀(d)`.
pub fn synthesize(code: &SimpleLcaCode, w: &RationalMatrix) -> Result<GaussianClifford, GateError> {
    if !(w.is_square() && w.nrows == 2 && w.is_integer()) {
        return Err(GateError::ShapeMismatch);
    }
    if !is_automorphism(w, &code.theta_matrix()) {
        return Err(GateError::NotAutomorphism);
    }
    if !w.det().is_one() {
        return Err(GateError::NotSymplectic);
    }
    let v_dv = if code.c == 1 {
        RationalMatrix::identity(2)
    } else {
        let t_dv = RationalMatrix::from_i64_rows(&[&[-code.d, 0], &[0, 1]]);
        let candidate = t_dv.mul(w).mul(&t_dv.inverse().expect("d ≠ 0 when c > 1"));
        if !candidate.is_integer() {
            return Err(GateError::NotRealizable);
        }
        candidate
    };
    Ok(GaussianClifford {
        v_cv: ScaledMatrix::from_rational(w.clone())?,
        v_dv,
    })
}

/// Synthesizes the gate of an automorphism on a multi-mode code with all
/// qudit twists equal to one (the only multi-mode family with a
/// guaranteed integer qudit action).
pub fn synthesize_general(
    code: &GeneralLcaCode,
    w: &RationalMatrix,
) -> Result<GaussianClifford, GateError> {
    if !(w.is_square() && w.nrows == 2 * code.p && w.is_integer()) {
        return Err(GateError::ShapeMismatch);
    }
    if code.dvec.iter().any(|&d| d != 1) {
        return Err(GateError::UnsupportedCode(
            "multi-mode synthesis requires every qudit twist to equal 1".to_string(),
        ));
    }
    if !is_automorphism(w, &code.theta) {
        return Err(GateError::NotAutomorphism);
    }

    // Oscillator side: V_cv = T_cv·W·T_cv⁻¹ = Δ·(B W B⁻¹)·Δ⁻¹ entrywise;
    // rational exactly when the coupled unit ratios are perfect squares.
    let base_conj = code
        .t_cv
        .base
        .mul(w)
        .mul(&code.t_cv.base.inverse().expect("encoder bases are unimodular"));
    let n = 2 * code.p;
    let mut v_cv = RationalMatrix::new(n, n);
    for i in 0..n {
        for j in 0..n {
            if base_conj.get(i, j).is_zero() {
                continue;
            }
            let ratio = &code.t_cv.radicands[i] / &code.t_cv.radicands[j];
            let root = rational_sqrt(&ratio).ok_or(GateError::NotRealizable)?;
            v_cv.set(i, j, base_conj.get(i, j) * &root);
        }
    }
    let j_cv = standard_j(code.p);
    if v_cv.transpose().mul(&j_cv).mul(&v_cv) != j_cv {
        return Err(GateError::NotSymplectic);
    }

    // Qudit side: with unit twists T_dv = P·R for the plain selector P,
    // whose integer right inverse is R⁻¹·Pᵀ.
    let k = code.k;
    let mut selector_t = RationalMatrix::new(n, 2 * k);
    for j in 0..k {
        selector_t.set(j, j, Rational::one());
        selector_t.set(k + j, k + j, Rational::one());
    }
    let right_inv = code
        .r
        .inverse()
        .expect("transforms are unimodular")
        .mul(&selector_t);
    let v_dv = code.t_dv.mul(w).mul(&right_inv);
    let form = code.form();
    if !v_dv.is_integer()
        || v_dv.transpose().mul(&form.j_dv).mul(&v_dv) != form.j_dv
    {
        return Err(GateError::NotRealizable);
    }
    // The qudit action must agree with the pushed-through encoder mod c.
    let pushed = code.t_dv.mul(w);
    let acted = v_dv.mul(&code.t_dv);
    for j in 0..2 * k {
        let c_j = BigInt::from(code.cvec[j % k]);
        for l in 0..n {
            let diff = (pushed.get(j, l) - acted.get(j, l)).to_integer();
            if !diff.mod_floor(&c_j).is_zero() {
                return Err(GateError::Internal(
                    "qudit action disagrees with the encoder image".to_string(),
                ));
            }
        }
    }
    Ok(GaussianClifford {
        v_cv: ScaledMatrix::from_rational(v_cv)?,
        v_dv,
    })
}

/// Applies a gate to a one-mode displacement's coordinates (phases are
/// not tracked; gates are verified at lattice level only).
pub fn apply_simple(
    gate: &GaussianClifford,
    x: &HybridDisplacement,
) -> Result<HybridDisplacement, GateError> {
    let v_cv = gate.v_cv.rational_value().ok_or(GateError::ShapeMismatch)?;
    if v_cv.nrows != 2 || gate.v_dv.nrows != 2 || x.m_cv.len() != 1 || x.m_dv.len() != 1 {
        return Err(GateError::ShapeMismatch);
    }
    let m = x.m_cv[0]
        .as_exact()
        .ok_or(HeisenbergError::InexactCoordinates)
        .map_err(GateError::from)?;
    let s = x.s_cv[0]
        .as_exact()
        .ok_or(HeisenbergError::InexactCoordinates)
        .map_err(GateError::from)?;
    let m_new = v_cv.get(0, 0) * m + v_cv.get(0, 1) * s;
    let s_new = v_cv.get(1, 0) * m + v_cv.get(1, 1) * s;
    let (m_dv, s_dv) = symplectic_pauli_action(&gate.v_dv, &x.m_dv, &x.s_dv);
    Ok(HybridDisplacement::exact(
        vec![m_new],
        vec![s_new],
        m_dv,
        s_dv,
    ))
}

/// The verification report of a gate against a one-mode code.
#[derive(Debug, Clone, PartialEq)]
pub struct GateReport {
    /// `V_cvᵀ·J_cv·V_cv = J_cv` exactly.
    pub cv_symplectic: bool,
    /// `V_dv` integer with `V_dvᵀ·J_dv·V_dv = J_dv` exactly.
    pub dv_symplectic: bool,
    /// Both stabilizer generator images have logical class `(0, 0)`.
    pub stabilizers_preserved: bool,
    /// Induced action on `(Z-power, X-power)` logical exponent columns,
    /// mod `K`; present only when the stabilizers are preserved.
    pub logical_action: Option<RationalMatrix>,
}

impl GateReport {
    /// Whether every check passed.
    pub fn is_ok(&self) -> bool {
        self.cv_symplectic && self.dv_symplectic && self.stabilizers_preserved
    }
}

/// Verifies a gate against a one-mode code: both symplectic conditions,
/// stabilizer preservation, and the induced logical action.
pub fn verify_gate(code: &SimpleLcaCode, gate: &GaussianClifford) -> Result<GateReport, GateError> {
    let v_cv = gate.v_cv.rational_value().ok_or(GateError::ShapeMismatch)?;
    if v_cv.nrows != 2 || gate.v_dv.nrows != 2 {
        return Err(GateError::ShapeMismatch);
    }
    let j = standard_j(1);
    let cv_symplectic = v_cv.transpose().mul(&j).mul(&v_cv) == j;
    let form = SymplecticForm::new(1, vec![code.c])?;
    let dv_symplectic =
        gate.v_dv.is_integer() && gate.v_dv.transpose().mul(&form.j_dv).mul(&gate.v_dv) == form.j_dv;

    let class_of = |cv: [i64; 2], dv: [i64; 2]| -> Result<Option<(i64, i64)>, GateError> {
        let image = apply_simple(gate, &HybridDisplacement::from_simple_coords(cv, dv))?;
        match logical_class(code, &image) {
            Ok(class) => Ok(Some(class)),
            Err(HeisenbergError::NotInDual) => Ok(None),
            Err(other) => Err(other.into()),
        }
    };

    let (sx_cv, sx_dv) = code.stabilizer_x();
    let (sz_cv, sz_dv) = code.stabilizer_z();
    let stabilizers_preserved = matches!(class_of(sx_cv, sx_dv)?, Some((0, 0)))
        && matches!(class_of(sz_cv, sz_dv)?, Some((0, 0)));

    let logical_action = if stabilizers_preserved {
        let (lx_cv, lx_dv) = code.logical_x();
        let (lz_cv, lz_dv) = code.logical_z();
        match (class_of(lx_cv, lx_dv)?, class_of(lz_cv, lz_dv)?) {
            (Some((ax, bx)), Some((az, bz))) => {
                // Columns in (X̄, Z̄) order give the class action; the
                // reported matrix uses (Z-power, X-power) ordering, i.e.
                // both indices swapped.
                Some(RationalMatrix::from_i64_rows(&[&[bz, bx], &[az, ax]]))
            }
            _ => None,
        }
    } else {
        None
    };

    Ok(GateReport {
        cv_symplectic,
        dv_symplectic,
        stabilizers_preserved,
        logical_action,
    })
}

/// The logical action `(W⁻¹)ᵀ mod K` of an automorphism that synthesizes
/// on this code, consistency-checked against the classified images of the
/// logical generators.
pub fn logical_action(code: &SimpleLcaCode, w: &RationalMatrix) -> Result<RationalMatrix, GateError> {
    let gate = synthesize(code, w)?;
    let report = verify_gate(code, &gate)?;
    if !report.is_ok() {
        return Err(GateError::Internal(
            "synthesized gate failed verification".to_string(),
        ));
    }
    let expected = mod_reduce(
        &w.inverse().expect("automorphisms are invertible").transpose(),
        code.k,
    );
    if report.logical_action.as_ref() != Some(&expected) {
        return Err(GateError::Internal(
            "classified logical action disagrees with (W⁻¹)ᵀ".to_string(),
        ));
    }
    Ok(expected)
}

/// The Fourier-Hadamard gate of a one-mode code: the quarter rotation on
/// the oscillator and the qudit map `X ↦ Zᵃ`, `Z ↦ Xᵈ`.
///
/// Verified to send `S_X ↦ S_Z`, `S_Z ↦ S_X†` (coordinate level) and
/// `X̄ ↦ Z̄†`, `Z̄ ↦ X̄` (class level).
pub fn hadamard(code: &SimpleLcaCode) -> Result<GaussianClifford, GateError> {
    let v_cv = RationalMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
    let raw = RationalMatrix::from_i64_rows(&[&[0, code.d], &[code.a, 0]]);
    let v_dv = if code.c == 1 {
        RationalMatrix::identity(2)
    } else if raw.det().is_one() {
        raw
    } else {
        // det(raw) = −ad = 1 − bc ≡ 1 (mod c): lift the residue to an
        // exact integer symplectic.
        lift_sp2_modc(&mod_reduce(&raw, code.c), code.c, 1)?
    };
    let gate = GaussianClifford {
        v_cv: ScaledMatrix::from_rational(v_cv)?,
        v_dv,
    };

    let report = verify_gate(code, &gate)?;
    let mut failures = Vec::new();
    if !report.is_ok() {
        failures.push("symplectic or stabilizer check failed".to_string());
    }
    // S_X ↦ S_Z and S_Z ↦ S_X† hold at coordinate level up to qudit
    // stabilizers.
    let (sx_cv, sx_dv) = code.stabilizer_x();
    let image = apply_simple(&gate, &HybridDisplacement::from_simple_coords(sx_cv, sx_dv))?;
    let (sz_cv, sz_dv) = code.stabilizer_z();
    if image.m_cv[0].as_exact() != Some(&rational_int(sz_cv[0]))
        || image.s_cv[0].as_exact() != Some(&rational_int(sz_cv[1]))
        || (image.m_dv[0] - sz_dv[0]).rem_euclid(code.c) != 0
        || (image.s_dv[0] - sz_dv[1]).rem_euclid(code.c) != 0
    {
        failures.push("S_X does not map to S_Z".to_string());
    }
    let image = apply_simple(&gate, &HybridDisplacement::from_simple_coords(sz_cv, sz_dv))?;
    if image.m_cv[0].as_exact() != Some(&rational_int(-sx_cv[0]))
        || image.s_cv[0].as_exact() != Some(&rational_int(-sx_cv[1]))
        || (image.m_dv[0] + sx_dv[0]).rem_euclid(code.c) != 0
        || (image.s_dv[0] + sx_dv[1]).rem_euclid(code.c) != 0
    {
        failures.push("S_Z does not map to S_X†".to_string());
    }
    // X̄ ↦ Z̄† and Z̄ ↦ X̄ at class level.
    let class_of = |cv: [i64; 2], dv: [i64; 2]| -> Result<(i64, i64), GateError> {
        let image = apply_simple(&gate, &HybridDisplacement::from_simple_coords(cv, dv))?;
        logical_class(code, &image).map_err(GateError::from)
    };
    let (lx_cv, lx_dv) = code.logical_x();
    if class_of(lx_cv, lx_dv)? != (0, (code.k - 1).rem_euclid(code.k)) {
        failures.push("X̄ does not map to Z̄†".to_string());
    }
    let (lz_cv, lz_dv) = code.logical_z();
    if class_of(lz_cv, lz_dv)? != (1.rem_euclid(code.k), 0) {
        failures.push("Z̄ does not map to X̄".to_string());
    }
    if !failures.is_empty() {
        return Err(GateError::Internal(failures.join("; ")));
    }
    Ok(gate)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        let sign = if a < 0 { -1 } else { 1 };
        (a.abs(), sign, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

/// Lifts a symplectic residue `W̃ ∈ Sp(2, ℤ_c)` to an exact integer
/// matrix `W ∈ Γ₀(d)` with `det W = 1` and `W ≡ W̃ (mod c)`.
///
/// The lower-left entry is fixed first by the Chinese remainder theorem
/// (`≡ W̃₂₁ mod c`, `≡ 0 mod d`), the diagonal is adjusted by multiples
/// of `c` until it is coprime to the lower-left, and the remaining two
/// entries come from a Bézout solution shifted into the right residue
/// class — each step preserving the class mod `c`.
pub fn lift_sp2_modc(
    w_tilde: &RationalMatrix,
    c: i64,
    d: i64,
) -> Result<RationalMatrix, GateError> {
    if !(w_tilde.is_square() && w_tilde.nrows == 2 && w_tilde.is_integer()) {
        return Err(GateError::ShapeMismatch);
    }
    if c < 1 {
        return Err(GateError::NotModSymplectic(c));
    }
    if !is_mod_symplectic(w_tilde, c) {
        return Err(GateError::NotModSymplectic(c));
    }
    let entry = |i: usize, j: usize| -> i128 {
        w_tilde
            .get(i, j)
            .to_integer()
            .to_i128()
            .expect("mod-c residues fit machine integers")
            .rem_euclid(i128::from(c))
    };
    let (alpha, beta, gamma, delta) = (entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1));
    let c = i128::from(c);
    let e = i128::from(d.abs()).max(1);

    // Lower-left entry: ≡ γ (mod c) and ≡ 0 (mod |d|).
    let c_entry = {
        let (_, x, _) = ext_gcd(e, c);
        // u = e·x ≡ 1 (mod c), ≡ 0 (mod e).
        let u = (e * x).rem_euclid(c * e);
        let c0 = (gamma * u).rem_euclid(c * e);
        if c0 == 0 && !(alpha.rem_euclid(c) == 1 || (alpha + 1).rem_euclid(c) == 0) {
            // A zero lower-left forces A = ±1; fall back to a nonzero
            // multiple of both moduli when α cannot reach ±1.
            c * e
        } else {
            c0
        }
    };

    // Upper-left entry: α + t·c with gcd(A, C) = 1 (gcd(·, 0) = |·|).
    let mut a_entry = alpha;
    let mut guard = 0;
    while ext_gcd(a_entry, c_entry).0 != 1 {
        a_entry += c;
        guard += 1;
        if guard > 100_000 {
            return Err(GateError::Internal(
                "no coprime diagonal representative found".to_string(),
            ));
        }
    }

    // Bézout: A·D₀ − B₀·C = 1.
    let (_, x, y) = ext_gcd(a_entry, c_entry);
    let (d0, b0) = (x, -y);
    // Shift (B, D) → (B₀ + tA, D₀ + tC) into the right class mod c.
    let t = (x * (beta - b0) + y * (delta - d0)).rem_euclid(c);
    let b_entry = b0 + t * a_entry;
    let d_entry = d0 + t * c_entry;

    let lifted = RationalMatrix::from_bigint_rows(&[
        &[BigInt::from(a_entry), BigInt::from(b_entry)],
        &[BigInt::from(c_entry), BigInt::from(d_entry)],
    ]);
    let ok = lifted.det().is_one()
        && (d == 0 && c_entry == 0 || d != 0 && c_entry.rem_euclid(i128::from(d.abs())) == 0)
        && mod_reduce(&lifted, c as i64) == mod_reduce(w_tilde, c as i64);
    if !ok {
        return Err(GateError::Internal(
            "lifted matrix violates a postcondition".to_string(),
        ));
    }
    Ok(lifted)
}

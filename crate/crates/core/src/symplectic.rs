//! Symplectic forms of mixed continuous/finite type, matrices carrying
//! per-row square-root scales, and the split orthogonal group acting on
//! tori by Möbius transformations.
//!
//! A hybrid phase space couples `p` oscillator modes with `k` qudits of
//! dimensions `c_1, …, c_k`. Its symplectic form is block diagonal: the
//! continuous block is the standard `[[0, I], [−I, 0]]` on `2p`
//! coordinates, while each qudit contributes a `1/c_j` weight, reflecting
//! commutation phases that are fractions with denominator `c_j`.
//!
//! Encoders for hybrid codes are not rational matrices — their rows carry
//! square-root normalizations `√ρ_i`. [`ScaledMatrix`] keeps those
//! radicands symbolic so that pairings `Xᵀ J Y`, where the radicands meet
//! in perfect-square products, stay exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactmath::{
    rational_sqrt, rational_to_f64, ExactMathError, Rational, RationalMatrix,
};

/// Errors from symplectic-layer operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    /// Qudit dimensions must be at least 1.
    #[error("qudit dimension must be at least 1, got {0}")]
    InvalidQuditDimension(i64),
    /// Moduli for modular reduction must be positive.
    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(i64),
    /// Scale radicands must be strictly positive.
    #[error("scale radicand must be positive, got {0}")]
    NonPositiveRadicand(Rational),
    /// One radicand per row is required.
    #[error("expected {expected} radicands, got {got}")]
    RadicandCount { expected: usize, got: usize },
    /// Row scales must agree between the position and momentum blocks.
    #[error("radicands must repeat across the two coordinate blocks")]
    RadicandsNotBlockPaired,
    /// Scaled matrices describe phase-space maps, so rows come in pairs.
    #[error("scaled matrix must have an even number of rows, got {0}")]
    OddRowCount(usize),
    /// A pairing required `√(ρ_x · ρ_y)` to be rational and it was not.
    #[error("pairing mixes incompatible radicands: {0} is not a perfect square")]
    IncompatibleRadicands(Rational),
    /// A Möbius transformation hit a singular denominator.
    #[error("Möbius denominator C·Θ + D is singular")]
    SingularDenominator,
    /// Blocks of a split-orthogonal element must be square and equal-sized.
    #[error("blocks must be square matrices of equal dimension")]
    BlockShapeMismatch,
    /// Underlying exact-arithmetic failure.
    #[error(transparent)]
    Math(#[from] ExactMathError),
}

/// The standard symplectic form `[[0, I_p], [−I_p, 0]]` on `2p` coordinates.
pub fn standard_j(p: usize) -> RationalMatrix {
    let mut j = RationalMatrix::new(2 * p, 2 * p);
    for i in 0..p {
        j.set(i, p + i, Rational::one());
        j.set(p + i, i, -Rational::one());
    }
    j
}

/// The symplectic form of a hybrid phase space: `p` oscillator modes plus
/// one qudit of dimension `c_j` per entry of `cvec`.
///
/// The full form is block diagonal, `J = J_cv ⊕ J_dv`: displacements never
/// pair continuous against finite coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticForm {
    /// Number of oscillator modes.
    pub p: usize,
    /// Qudit dimensions `c_1, …, c_k`.
    pub cvec: Vec<i64>,
    /// Continuous block `[[0, I_p], [−I_p, 0]]`, dimension `2p`.
    pub j_cv: RationalMatrix,
    /// Finite block `[[0, diag(1/c)], [−diag(1/c), 0]]`, dimension `2k`.
    pub j_dv: RationalMatrix,
    /// Full form `J_cv ⊕ J_dv`, dimension `2p + 2k`.
    pub j: RationalMatrix,
}

impl SymplecticForm {
    /// Builds the form for `p` modes and qudit dimensions `cvec`.
    pub fn new(p: usize, cvec: Vec<i64>) -> Result<Self, SymplecticError> {
        if let Some(&bad) = cvec.iter().find(|&&c| c < 1) {
            return Err(SymplecticError::InvalidQuditDimension(bad));
        }
        let k = cvec.len();
        let j_cv = standard_j(p);
        let mut j_dv = RationalMatrix::new(2 * k, 2 * k);
        for (j, &c) in cvec.iter().enumerate() {
            j_dv.set(j, k + j, Rational::new(BigInt::one(), BigInt::from(c)));
            j_dv.set(k + j, j, Rational::new(-BigInt::one(), BigInt::from(c)));
        }
        let zero_tr = RationalMatrix::new(2 * p, 2 * k);
        let zero_bl = RationalMatrix::new(2 * k, 2 * p);
        let j = RationalMatrix::from_blocks(&[&[&j_cv, &zero_tr], &[&zero_bl, &j_dv]]);
        Ok(SymplecticForm { p, cvec, j_cv, j_dv, j })
    }

    /// Number of qudits.
    pub fn k(&self) -> usize {
        self.cvec.len()
    }
}

/// A matrix `diag(√ρ_1, …, √ρ_{2p}) · base` with the radicands kept
/// symbolic.
///
/// Invariants: one positive rational radicand per row, an even row count
/// `2p`, and block-paired scales `ρ_i = ρ_{i+p}` (each mode's position and
/// momentum rows carry the same normalization).
///
/// Equality is structural; `(ρ, row)` and `(ρ/4, 2·row)` compare unequal
/// even though they denote the same matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledMatrix {
    /// Per-row radicands `ρ_i` (the row scale is `√ρ_i`).
    pub radicands: Vec<Rational>,
    /// The rational part of the matrix.
    pub base: RationalMatrix,
}

impl ScaledMatrix {
    /// Builds a scaled matrix, enforcing the radicand invariants.
    pub fn new(radicands: Vec<Rational>, base: RationalMatrix) -> Result<Self, SymplecticError> {
        if radicands.len() != base.nrows {
            return Err(SymplecticError::RadicandCount {
                expected: base.nrows,
                got: radicands.len(),
            });
        }
        if base.nrows % 2 != 0 {
            return Err(SymplecticError::OddRowCount(base.nrows));
        }
        if let Some(bad) = radicands.iter().find(|r| !r.is_positive()) {
            return Err(SymplecticError::NonPositiveRadicand(bad.clone()));
        }
        let p = base.nrows / 2;
        if (0..p).any(|i| radicands[i] != radicands[i + p]) {
            return Err(SymplecticError::RadicandsNotBlockPaired);
        }
        Ok(ScaledMatrix { radicands, base })
    }

    /// Wraps a plain rational matrix (all radicands 1).
    ///
    /// # Panics
    ///
    /// Panics if the row count is odd.
    pub fn from_rational(base: RationalMatrix) -> Self {
        let radicands = vec![Rational::one(); base.nrows];
        ScaledMatrix::new(radicands, base).expect("unit radicands always satisfy the invariants")
    }

    /// Row count.
    pub fn nrows(&self) -> usize {
        self.base.nrows
    }

    /// Column count.
    pub fn ncols(&self) -> usize {
        self.base.ncols
    }

    /// The exact value as a rational matrix, when every radicand is a
    /// perfect square.
    pub fn rational_value(&self) -> Option<RationalMatrix> {
        let mut out = self.base.clone();
        for (i, rho) in self.radicands.iter().enumerate() {
            let root = rational_sqrt(rho)?;
            for j in 0..out.ncols {
                let v = out.get(i, j) * &root;
                out.set(i, j, v);
            }
        }
        Some(out)
    }

    /// The value in floating point, `√ρ_i · base[i][j]`.
    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.base.nrows)
            .map(|i| {
                let scale = rational_to_f64(&self.radicands[i]).sqrt();
                (0..self.base.ncols)
                    .map(|j| scale * rational_to_f64(self.base.get(i, j)))
                    .collect()
            })
            .collect()
    }

    /// Right multiplication by a rational matrix; the radicands ride along.
    pub fn mul_right(&self, rhs: &RationalMatrix) -> Self {
        ScaledMatrix {
            radicands: self.radicands.clone(),
            base: self.base.mul(rhs),
        }
    }

    /// The exact pairing `selfᵀ · J · other`.
    ///
    /// Each nonzero `J[i][l]` couples a row of `self` with a row of
    /// `other`; the product of their radicands must be a perfect square for
    /// the result to be rational. Fails with
    /// [`SymplecticError::IncompatibleRadicands`] otherwise (unless one of
    /// the coupled rows is entirely zero and contributes nothing).
    pub fn pair(
        &self,
        other: &ScaledMatrix,
        j: &RationalMatrix,
    ) -> Result<RationalMatrix, SymplecticError> {
        assert_eq!(j.nrows, self.nrows(), "form dimension must match left rows");
        assert_eq!(j.ncols, other.nrows(), "form dimension must match right rows");
        let mut weighted = RationalMatrix::new(j.nrows, j.ncols);
        for i in 0..j.nrows {
            for l in 0..j.ncols {
                if j.get(i, l).is_zero() {
                    continue;
                }
                let product = &self.radicands[i] * &other.radicands[l];
                match rational_sqrt(&product) {
                    Some(root) => weighted.set(i, l, j.get(i, l) * &root),
                    None => {
                        let row_zero = self.base.row(i).iter().all(Rational::is_zero);
                        let col_zero = other.base.row(l).iter().all(Rational::is_zero);
                        if !(row_zero || col_zero) {
                            return Err(SymplecticError::IncompatibleRadicands(product));
                        }
                    }
                }
            }
        }
        Ok(self.base.transpose().mul(&weighted).mul(&other.base))
    }
}

/// Whether `v` is an integer matrix with `vᵀ J v = J`.
pub fn is_integer_symplectic(v: &RationalMatrix, j: &RationalMatrix) -> bool {
    v.is_integer() && v.is_square() && v.nrows == j.nrows && &v.transpose().mul(j).mul(v) == j
}

/// Whether `w` (an integer `2k × 2k` matrix) is symplectic modulo `c`:
/// `wᵀ J₀ w ≡ J₀ (mod c)` for the standard form `J₀`.
///
/// For `2 × 2` matrices this is exactly `det w ≡ 1 (mod c)`.
pub fn is_mod_symplectic(w: &RationalMatrix, c: i64) -> Result<bool, SymplecticError> {
    if c < 1 {
        return Err(SymplecticError::NonPositiveModulus(c));
    }
    if !w.is_square() || w.nrows % 2 != 0 || !w.is_integer() {
        return Ok(false);
    }
    let j0 = standard_j(w.nrows / 2);
    let defect = w.transpose().mul(&j0).mul(w).sub(&j0);
    let c_big = BigInt::from(c);
    let rows = defect.to_bigint_rows()?;
    Ok(rows
        .iter()
        .all(|row| row.iter().all(|e| e.mod_floor(&c_big).is_zero())))
}

/// Reduces every entry of an integer matrix into `[0, c)`.
pub fn mod_reduce(m: &RationalMatrix, c: i64) -> Result<RationalMatrix, SymplecticError> {
    if c < 1 {
        return Err(SymplecticError::NonPositiveModulus(c));
    }
    let c_big = BigInt::from(c);
    let rows = m.to_bigint_rows()?;
    let reduced: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| row.iter().map(|e| e.mod_floor(&c_big)).collect())
        .collect();
    Ok(RationalMatrix::from_bigint_rows(&reduced))
}

/// Applies an integer symplectic matrix to qudit Pauli exponents.
///
/// The exponent vector `(m_1, …, m_k, s_1, …, s_k)` of
/// `X_1^{m_1}⋯Z_k^{s_k}` transforms by left multiplication, so e.g.
/// `[[0, d], [a, 0]]` sends `X = (1, 0)` to `(0, a) = Zᵃ`.
pub fn symplectic_pauli_action(
    v_dv: &RationalMatrix,
    m_dv: &[i64],
    s_dv: &[i64],
) -> Result<(Vec<i64>, Vec<i64>), SymplecticError> {
    let k = m_dv.len();
    assert_eq!(s_dv.len(), k, "exponent vectors must have equal length");
    assert_eq!(v_dv.nrows, 2 * k, "matrix dimension must be twice the qudit count");
    if !v_dv.is_integer() {
        return Err(SymplecticError::Math(ExactMathError::NonIntegerEntries));
    }
    let mut vec = RationalMatrix::new(2 * k, 1);
    for (i, &m) in m_dv.iter().enumerate() {
        vec.set(i, 0, Rational::from_integer(BigInt::from(m)));
    }
    for (i, &s) in s_dv.iter().enumerate() {
        vec.set(k + i, 0, Rational::from_integer(BigInt::from(s)));
    }
    let image = v_dv.mul(&vec);
    let to_i64 = |r: &Rational| -> i64 {
        i64::try_from(r.to_integer()).expect("Pauli exponent exceeds i64")
    };
    let m_out = (0..k).map(|i| to_i64(image.get(i, 0))).collect();
    let s_out = (0..k).map(|i| to_i64(image.get(k + i, 0))).collect();
    Ok((m_out, s_out))
}

/// An element of the split orthogonal group `O(2p, 2p | ℤ)` in block form
/// `[[A, B], [C, D]]`, acting on anti-symmetric `2p × 2p` matrices by
/// Möbius transformations `Θ ↦ (AΘ + B)(CΘ + D)⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoritaElement {
    /// Upper-left block.
    pub a: RationalMatrix,
    /// Upper-right block.
    pub b: RationalMatrix,
    /// Lower-left block.
    pub c: RationalMatrix,
    /// Lower-right block.
    pub d: RationalMatrix,
}

impl MoritaElement {
    /// Builds an element from four equal-sized square blocks.
    pub fn new(
        a: RationalMatrix,
        b: RationalMatrix,
        c: RationalMatrix,
        d: RationalMatrix,
    ) -> Result<Self, SymplecticError> {
        let n = a.nrows;
        let square = |m: &RationalMatrix| m.is_square() && m.nrows == n;
        if !(square(&a) && square(&b) && square(&c) && square(&d)) {
            return Err(SymplecticError::BlockShapeMismatch);
        }
        Ok(MoritaElement { a, b, c, d })
    }

    /// Block dimension (`2p` for an element acting on `2p × 2p` tori).
    pub fn block_dim(&self) -> usize {
        self.a.nrows
    }

    /// The full `4p × 4p` matrix `[[A, B], [C, D]]`.
    pub fn full_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_blocks(&[&[&self.a, &self.b], &[&self.c, &self.d]])
    }

    /// Membership test for `SO(2p, 2p | ℤ)`: integer blocks satisfying
    /// `AᵀC + CᵀA = 0`, `BᵀD + DᵀB = 0`, `AᵀD + CᵀB = I`, and
    /// `det [[A, B], [C, D]] = 1`.
    pub fn is_so_nn(&self) -> bool {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        if !(a.is_integer() && b.is_integer() && c.is_integer() && d.is_integer()) {
            return false;
        }
        let ac = a.transpose().mul(c).add(&c.transpose().mul(a));
        let bd = b.transpose().mul(d).add(&d.transpose().mul(b));
        let ad = a.transpose().mul(d).add(&c.transpose().mul(b));
        ac.is_zero() && bd.is_zero() && ad.is_identity() && self.full_matrix().det().is_one()
    }

    /// The Möbius transformation `Θ ↦ (AΘ + B)(CΘ + D)⁻¹`.
    pub fn mobius(&self, theta: &RationalMatrix) -> Result<RationalMatrix, SymplecticError> {
        assert_eq!(theta.nrows, self.block_dim(), "torus dimension must match blocks");
        let num = self.a.mul(theta).add(&self.b);
        let den = self.c.mul(theta).add(&self.d);
        let den_inv = den.inverse().map_err(|e| match e {
            ExactMathError::Singular => SymplecticError::SingularDenominator,
            other => SymplecticError::Math(other),
        })?;
        Ok(num.mul(&den_inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rational, rational_int};

    fn rm(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows)
    }

    #[test]
    fn hybrid_form_has_weighted_finite_block() {
        let form = SymplecticForm::new(1, vec![3]).unwrap();
        assert_eq!(form.j_cv, rm(&[&[0, 1], &[-1, 0]]));
        assert_eq!(form.j_dv.get(0, 1), &rational(1, 3));
        assert_eq!(form.j_dv.get(1, 0), &rational(-1, 3));
        assert_eq!(form.j.nrows, 4);
        assert_eq!(form.j.get(0, 1), &rational_int(1));
        assert_eq!(form.j.get(2, 3), &rational(1, 3));
        assert!(form.j.get(0, 2).is_zero());
    }

    #[test]
    fn hybrid_form_allows_no_qudits_and_rejects_bad_dimensions() {
        let form = SymplecticForm::new(2, vec![]).unwrap();
        assert_eq!(form.j_dv.nrows, 0);
        assert_eq!(form.j, form.j_cv);
        assert_eq!(
            SymplecticForm::new(1, vec![0]),
            Err(SymplecticError::InvalidQuditDimension(0))
        );
    }

    #[test]
    fn scaled_matrix_enforces_invariants() {
        let base = rm(&[&[0, 1], &[-1, 0]]);
        assert!(ScaledMatrix::new(vec![rational(5, 3), rational(5, 3)], base.clone()).is_ok());
        assert_eq!(
            ScaledMatrix::new(vec![rational(5, 3), rational(1, 3)], base.clone()),
            Err(SymplecticError::RadicandsNotBlockPaired)
        );
        assert_eq!(
            ScaledMatrix::new(vec![rational_int(0), rational_int(0)], base.clone()),
            Err(SymplecticError::NonPositiveRadicand(rational_int(0)))
        );
        assert_eq!(
            ScaledMatrix::new(vec![rational_int(1)], base),
            Err(SymplecticError::RadicandCount { expected: 2, got: 1 })
        );
    }

    #[test]
    fn scaled_pairing_reproduces_commutation_matrix() {
        // Encoder of the one-mode code with (c, d, θ) = (3, 2, 1):
        // T_cv = √(5/3) · [[0, 1], [−1, 0]], and Tᵀ J T = [[0, 5/3], [−5/3, 0]].
        let t = ScaledMatrix::new(
            vec![rational(5, 3), rational(5, 3)],
            rm(&[&[0, 1], &[-1, 0]]),
        )
        .unwrap();
        let j = standard_j(1);
        let pairing = t.pair(&t, &j).unwrap();
        let expected = RationalMatrix::from_rows(vec![
            vec![rational_int(0), rational(5, 3)],
            vec![rational(-5, 3), rational_int(0)],
        ])
        .unwrap();
        assert_eq!(pairing, expected);
    }

    #[test]
    fn scaled_pairing_rejects_irrational_products() {
        let x = ScaledMatrix::new(vec![rational_int(2); 2], rm(&[&[1, 0], &[0, 1]])).unwrap();
        let y = ScaledMatrix::new(vec![rational_int(3); 2], rm(&[&[1, 0], &[0, 1]])).unwrap();
        let j = standard_j(1);
        assert_eq!(
            x.pair(&y, &j),
            Err(SymplecticError::IncompatibleRadicands(rational_int(6)))
        );
        // The same radicands are fine when the coupled rows vanish.
        let y_zero = ScaledMatrix::new(vec![rational_int(3); 2], rm(&[&[0, 0], &[0, 0]])).unwrap();
        assert!(x.pair(&y_zero, &j).unwrap().is_zero());
    }

    #[test]
    fn scaled_matrix_values_and_products() {
        let t = ScaledMatrix::new(vec![rational(9, 4); 2], rm(&[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(
            t.rational_value().unwrap(),
            RationalMatrix::from_rows(vec![
                vec![rational_int(3), rational_int(0)],
                vec![rational_int(0), rational_int(3)],
            ])
            .unwrap()
        );
        let irr = ScaledMatrix::new(vec![rational_int(2); 2], rm(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(irr.rational_value().is_none());
        let f = irr.to_f64_rows();
        assert!((f[0][0] - 2.0_f64.sqrt()).abs() < 1e-12);
        assert_eq!(f[0][1], 0.0);

        let shifted = irr.mul_right(&rm(&[&[0, 1], &[-1, 0]]));
        assert_eq!(shifted.base, rm(&[&[0, 1], &[-1, 0]]));
        assert_eq!(shifted.radicands, irr.radicands);
    }

    #[test]
    fn integer_symplectic_checks() {
        let j = standard_j(1);
        assert!(is_integer_symplectic(&rm(&[&[1, 1], &[0, 1]]), &j));
        assert!(is_integer_symplectic(&rm(&[&[0, 1], &[-1, 0]]), &j));
        assert!(!is_integer_symplectic(&rm(&[&[2, 0], &[0, 1]]), &j));
        let half = RationalMatrix::from_rows(vec![
            vec![rational(1, 2), rational_int(0)],
            vec![rational_int(0), rational_int(2)],
        ])
        .unwrap();
        assert!(!is_integer_symplectic(&half, &j));
    }

    #[test]
    fn mod_symplectic_is_det_one_mod_c_in_dim_two() {
        let w = rm(&[&[0, 2], &[1, 0]]); // det = −2
        assert!(is_mod_symplectic(&w, 3).unwrap()); // −2 ≡ 1 (mod 3)
        assert!(!is_mod_symplectic(&w, 5).unwrap());
        assert!(is_mod_symplectic(&rm(&[&[1, 0], &[0, 1]]), 7).unwrap());
        assert_eq!(
            is_mod_symplectic(&w, 0),
            Err(SymplecticError::NonPositiveModulus(0))
        );
    }

    #[test]
    fn mod_reduce_maps_into_canonical_range() {
        let m = rm(&[&[-1, 3], &[5, -2]]);
        assert_eq!(mod_reduce(&m, 3).unwrap(), rm(&[&[2, 0], &[2, 1]]));
        let fractional = RationalMatrix::from_rows(vec![vec![rational(1, 2)]]).unwrap();
        assert_eq!(
            mod_reduce(&fractional, 3),
            Err(SymplecticError::Math(ExactMathError::NonIntegerEntries))
        );
    }

    #[test]
    fn pauli_action_sends_x_to_z_power() {
        // X ↦ Zᵃ, Z ↦ Xᵈ for the one-qudit block [[0, d], [a, 0]].
        let (a, d) = (1, 2);
        let v = rm(&[&[0, d], &[a, 0]]);
        assert_eq!(
            symplectic_pauli_action(&v, &[1], &[0]).unwrap(),
            (vec![0], vec![1])
        );
        assert_eq!(
            symplectic_pauli_action(&v, &[0], &[1]).unwrap(),
            (vec![2], vec![0])
        );
    }

    #[test]
    fn swap_element_is_split_orthogonal_and_inverts_torus() {
        let zero = RationalMatrix::new(2, 2);
        let id = RationalMatrix::identity(2);
        let g = MoritaElement::new(zero.clone(), id.clone(), id, zero).unwrap();
        assert!(g.is_so_nn());
        let theta = rm(&[&[0, 2], &[-2, 0]]);
        let image = g.mobius(&theta).unwrap();
        let expected = RationalMatrix::from_rows(vec![
            vec![rational_int(0), rational(-1, 2)],
            vec![rational(1, 2), rational_int(0)],
        ])
        .unwrap();
        assert_eq!(image, expected); // Θ ↦ Θ⁻¹
    }

    #[test]
    fn one_mode_element_from_bezout_data_acts_as_expected() {
        // Blocks assembled from (a, b, c, d) = (1, 1, 3, 2):
        // A = [[0, −1], [1, 0]], B = I, C = 3I, D = [[0, 2], [−2, 0]].
        let g = MoritaElement::new(
            rm(&[&[0, -1], &[1, 0]]),
            RationalMatrix::identity(2),
            rm(&[&[3, 0], &[0, 3]]),
            rm(&[&[0, 2], &[-2, 0]]),
        )
        .unwrap();
        assert!(g.is_so_nn());
        let theta = rm(&[&[0, 1], &[-1, 0]]);
        let image = g.mobius(&theta).unwrap();
        let expected = RationalMatrix::from_rows(vec![
            vec![rational_int(0), rational(-2, 5)],
            vec![rational(2, 5), rational_int(0)],
        ])
        .unwrap();
        assert_eq!(image, expected);
        // The same element hits a singular denominator at Θ = −D/3… pick the
        // actual kernel case: C·Θ + D = 0 when Θ = [[0, −2/3], [2/3, 0]].
        let singular_at = RationalMatrix::from_rows(vec![
            vec![rational_int(0), rational(-2, 3)],
            vec![rational(2, 3), rational_int(0)],
        ])
        .unwrap();
        assert_eq!(
            g.mobius(&singular_at),
            Err(SymplecticError::SingularDenominator)
        );
    }
}

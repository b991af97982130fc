//! Displacement operators on hybrid phase space and their phase algebra.
//!
//! A displacement is indexed by oscillator shift/momentum coordinates
//! (per-mode, in multiples of that mode's base unit `u′_i`) together with
//! integer qudit `X`/`Z` exponents, and carries an overall phase that is a
//! fraction of a full turn. Composition follows the convention
//!
//! ```text
//! D(x)·D(y) = e^{2πi·φ(x,y)}·D(x + y),   φ(x,y) = −Σ_i w_i·x_m,i·y_s,i,
//! ```
//!
//! where the weight `w_i` is `u′_i²` for an oscillator coordinate and
//! `1/c_j` for a qudit exponent. The antisymmetrized exponent
//! [`DisplacementFrame::phase_inner`] then satisfies
//! `D(x)·D(y) = e^{2πi·⟨y, x⟩}·D(y)·D(x)` with `⟨y, x⟩ = phase_inner(y, x)`.
//!
//! Coordinates are exact rationals whenever possible; measured noise enters
//! as floating-point values and poisons any quantity derived from it, which
//! the [`Scalar`] type tracks explicitly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::codes::{GeneralLcaCode, SimpleLcaCode};
use crate::exactmath::{rational_to_f64, ExactMathError, Rational, RationalMatrix};

/// Errors from displacement algebra.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HeisenbergError {
    /// The displacement does not match the frame's mode/qudit counts.
    #[error("displacement has wrong shape for this frame")]
    FrameMismatch,
    /// The operation needs exact coordinates but got floating-point ones.
    #[error("operation requires exact coordinates")]
    InexactCoordinates,
    /// The displacement does not commute with the stabilizer lattice.
    #[error("displacement is not in the dual lattice")]
    NotInDual,
    /// A derived integer exceeded the machine range.
    #[error("derived value exceeds the supported integer range")]
    Overflow,
    /// Underlying exact-arithmetic failure.
    #[error(transparent)]
    Math(#[from] ExactMathError),
}

/// An exact-or-measured number: exact rationals survive arithmetic
/// unchanged, while any floating-point operand makes the result
/// floating-point.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    /// An exact rational value.
    Exact(Rational),
    /// A measured (floating-point) value.
    Real(f64),
}

impl Scalar {
    /// Exact zero.
    pub fn zero() -> Self {
        Scalar::Exact(Rational::zero())
    }

    /// Exact integer.
    pub fn from_int(v: i64) -> Self {
        Scalar::Exact(Rational::from_integer(BigInt::from(v)))
    }

    /// Whether the value is exact.
    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    /// The exact value, if any.
    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Real(_) => None,
        }
    }

    /// The value as a float (exact in the rational case up to rounding).
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => rational_to_f64(q),
            Scalar::Real(v) => *v,
        }
    }

    /// Sum; exact only when both operands are.
    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            _ => Scalar::Real(self.to_f64() + other.to_f64()),
        }
    }

    /// Product; exact only when both operands are.
    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            _ => Scalar::Real(self.to_f64() * other.to_f64()),
        }
    }

    /// Negation.
    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(-q.clone()),
            Scalar::Real(v) => Scalar::Real(-v),
        }
    }
}

/// A phase expressed as a fraction of a full turn, reduced into `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseFraction {
    /// The reduced fraction of a turn.
    pub value: Scalar,
}

impl PhaseFraction {
    /// The zero phase.
    pub fn zero() -> Self {
        PhaseFraction { value: Scalar::zero() }
    }

    /// Reduces any scalar phase into `[0, 1)`.
    pub fn new(value: Scalar) -> Self {
        let reduced = match value {
            Scalar::Exact(q) => Scalar::Exact(&q - q.floor()),
            Scalar::Real(v) => Scalar::Real(v.rem_euclid(1.0)),
        };
        PhaseFraction { value: reduced }
    }

    /// Adds two phases mod 1.
    pub fn add(&self, other: &PhaseFraction) -> PhaseFraction {
        PhaseFraction::new(self.value.add(&other.value))
    }

    /// Whether this is exactly the zero phase.
    pub fn is_zero(&self) -> bool {
        matches!(&self.value, Scalar::Exact(q) if q.is_zero())
    }

    /// The multiplicative order of `e^{2πi·value}`: the reduced
    /// denominator of an exact phase, or `None` for measured phases.
    pub fn order(&self) -> Option<BigInt> {
        match &self.value {
            Scalar::Exact(q) => {
                if q.is_zero() {
                    Some(BigInt::one())
                } else {
                    Some(q.denom().clone())
                }
            }
            Scalar::Real(_) => None,
        }
    }

    /// The phase as a float in `[0, 1)`.
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

/// A displacement operator: oscillator coordinates in per-mode base units,
/// integer qudit exponents, and an overall phase.
///
/// Coordinate layout for mode `i` / qudit `j`: `m_cv[i]` is the shift
/// component, `s_cv[i]` the momentum component, `m_dv[j]` the `X` exponent,
/// `s_dv[j]` the `Z` exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridDisplacement {
    /// Oscillator shift coordinates, one per mode.
    pub m_cv: Vec<Scalar>,
    /// Oscillator momentum coordinates, one per mode.
    pub s_cv: Vec<Scalar>,
    /// Qudit `X` exponents, one per qudit.
    pub m_dv: Vec<i64>,
    /// Qudit `Z` exponents, one per qudit.
    pub s_dv: Vec<i64>,
    /// Overall phase, as a fraction of a turn.
    pub phase: PhaseFraction,
}

impl HybridDisplacement {
    /// The identity displacement on `p` modes and `k` qudits.
    pub fn identity(p: usize, k: usize) -> Self {
        HybridDisplacement {
            m_cv: vec![Scalar::zero(); p],
            s_cv: vec![Scalar::zero(); p],
            m_dv: vec![0; k],
            s_dv: vec![0; k],
            phase: PhaseFraction::zero(),
        }
    }

    /// A phase-free displacement with exact rational coordinates.
    pub fn exact(
        m_cv: Vec<Rational>,
        s_cv: Vec<Rational>,
        m_dv: Vec<i64>,
        s_dv: Vec<i64>,
    ) -> Self {
        HybridDisplacement {
            m_cv: m_cv.into_iter().map(Scalar::Exact).collect(),
            s_cv: s_cv.into_iter().map(Scalar::Exact).collect(),
            m_dv,
            s_dv,
            phase: PhaseFraction::zero(),
        }
    }

    /// A one-mode, one-qudit displacement from integer coordinate pairs
    /// `(m₁, s₁)` (oscillator) and `(m₂, s₂)` (qudit), as produced by the
    /// generator accessors on [`SimpleLcaCode`].
    pub fn from_simple_coords(cv: [i64; 2], dv: [i64; 2]) -> Self {
        HybridDisplacement {
            m_cv: vec![Scalar::from_int(cv[0])],
            s_cv: vec![Scalar::from_int(cv[1])],
            m_dv: vec![dv[0]],
            s_dv: vec![dv[1]],
            phase: PhaseFraction::zero(),
        }
    }

    /// Whether all coordinates are exact.
    pub fn is_exact(&self) -> bool {
        self.m_cv.iter().all(Scalar::is_exact) && self.s_cv.iter().all(Scalar::is_exact)
    }

    fn shape(&self) -> (usize, usize) {
        (self.m_cv.len(), self.m_dv.len())
    }
}

/// The phase-space weights of a code: per-mode squared base units and
/// qudit dimensions. All phase computations happen relative to a frame.
#[derive(Debug, Clone, PartialEq)]
pub struct DisplacementFrame {
    /// Squared oscillator base units `u′_i²`, one per mode.
    pub unit_sq: Vec<Rational>,
    /// Qudit dimensions, one per qudit.
    pub cvec: Vec<i64>,
}

impl DisplacementFrame {
    /// The frame of a one-mode code: `u′² = 1/(K·c)`.
    pub fn from_simple(code: &SimpleLcaCode) -> Self {
        DisplacementFrame {
            unit_sq: vec![code.unit_sq.clone()],
            cvec: vec![code.c],
        }
    }

    /// The frame of a general code: `u′_i² = t_i/m`.
    pub fn from_general(code: &GeneralLcaCode) -> Self {
        DisplacementFrame {
            unit_sq: code.unit_squares(),
            cvec: code.cvec.clone(),
        }
    }

    /// Number of oscillator modes.
    pub fn p(&self) -> usize {
        self.unit_sq.len()
    }

    /// Number of qudits.
    pub fn k(&self) -> usize {
        self.cvec.len()
    }

    fn check(&self, x: &HybridDisplacement) -> Result<(), HeisenbergError> {
        if x.shape() == (self.p(), self.k())
            && x.s_cv.len() == self.p()
            && x.s_dv.len() == self.k()
        {
            Ok(())
        } else {
            Err(HeisenbergError::FrameMismatch)
        }
    }

    /// The antisymmetrized commutation exponent
    /// `⟨x, y⟩ = Σ_i w_i·(x_m,i·y_s,i − x_s,i·y_m,i)`, so that
    /// `D(x)·D(y) = e^{2πi·⟨y, x⟩}·D(y)·D(x)`.
    ///
    /// Two displacements commute exactly when the result is an integer.
    pub fn phase_inner(
        &self,
        x: &HybridDisplacement,
        y: &HybridDisplacement,
    ) -> Result<Scalar, HeisenbergError> {
        self.check(x)?;
        self.check(y)?;
        let mut acc = Scalar::zero();
        for i in 0..self.p() {
            let w = Scalar::Exact(self.unit_sq[i].clone());
            let cross = x.m_cv[i]
                .mul(&y.s_cv[i])
                .add(&x.s_cv[i].mul(&y.m_cv[i]).neg());
            acc = acc.add(&cross.mul(&w));
        }
        for j in 0..self.k() {
            let cross = i128::from(x.m_dv[j]) * i128::from(y.s_dv[j])
                - i128::from(x.s_dv[j]) * i128::from(y.m_dv[j]);
            let term = Rational::new(BigInt::from(cross), BigInt::from(self.cvec[j]));
            acc = acc.add(&Scalar::Exact(term));
        }
        Ok(acc)
    }

    /// Composes two displacements: coordinates add, and the phase picks up
    /// the cocycle `φ(x, y) = −Σ_i w_i·x_m,i·y_s,i`.
    pub fn compose(
        &self,
        x: &HybridDisplacement,
        y: &HybridDisplacement,
    ) -> Result<HybridDisplacement, HeisenbergError> {
        self.check(x)?;
        self.check(y)?;
        let mut cocycle = Scalar::zero();
        for i in 0..self.p() {
            let w = Scalar::Exact(self.unit_sq[i].clone());
            cocycle = cocycle.add(&x.m_cv[i].mul(&y.s_cv[i]).mul(&w).neg());
        }
        for j in 0..self.k() {
            let cross = i128::from(x.m_dv[j]) * i128::from(y.s_dv[j]);
            let term = Rational::new(BigInt::from(-cross), BigInt::from(self.cvec[j]));
            cocycle = cocycle.add(&Scalar::Exact(term));
        }
        let phase = x
            .phase
            .add(&y.phase)
            .add(&PhaseFraction::new(cocycle));
        Ok(HybridDisplacement {
            m_cv: (0..self.p()).map(|i| x.m_cv[i].add(&y.m_cv[i])).collect(),
            s_cv: (0..self.p()).map(|i| x.s_cv[i].add(&y.s_cv[i])).collect(),
            m_dv: (0..self.k()).map(|j| x.m_dv[j] + y.m_dv[j]).collect(),
            s_dv: (0..self.k()).map(|j| x.s_dv[j] + y.s_dv[j]).collect(),
            phase,
        })
    }

    /// Raises a displacement to an integer power.
    pub fn power(
        &self,
        x: &HybridDisplacement,
        n: i64,
    ) -> Result<HybridDisplacement, HeisenbergError> {
        self.check(x)?;
        let mut acc = HybridDisplacement::identity(self.p(), self.k());
        let (base, count) = if n < 0 {
            (self.inverse(x)?, n.unsigned_abs())
        } else {
            (x.clone(), n as u64)
        };
        for _ in 0..count {
            acc = self.compose(&acc, &base)?;
        }
        Ok(acc)
    }

    /// The inverse displacement: `D(x)·D(x)⁻¹ = 1` including the phase.
    pub fn inverse(&self, x: &HybridDisplacement) -> Result<HybridDisplacement, HeisenbergError> {
        self.check(x)?;
        let neg = HybridDisplacement {
            m_cv: x.m_cv.iter().map(Scalar::neg).collect(),
            s_cv: x.s_cv.iter().map(Scalar::neg).collect(),
            m_dv: x.m_dv.iter().map(|v| -v).collect(),
            s_dv: x.s_dv.iter().map(|v| -v).collect(),
            phase: PhaseFraction::zero(),
        };
        // D(x)·D(−x) = e^{2πi·φ(x,−x)}·D(0): cancel that phase and x's own.
        let mut cocycle = Scalar::zero();
        for i in 0..self.p() {
            let w = Scalar::Exact(self.unit_sq[i].clone());
            cocycle = cocycle.add(&x.m_cv[i].mul(&neg.s_cv[i]).mul(&w).neg());
        }
        for j in 0..self.k() {
            let cross = i128::from(x.m_dv[j]) * i128::from(neg.s_dv[j]);
            cocycle = cocycle.add(&Scalar::Exact(Rational::new(
                BigInt::from(-cross),
                BigInt::from(self.cvec[j]),
            )));
        }
        let phase = PhaseFraction::new(
            x.phase.value.neg().add(&cocycle.neg()),
        );
        Ok(HybridDisplacement { phase, ..neg })
    }
}

/// The stabilizer-lattice element at integer combination `l` of the
/// encoder columns, with the canonical phase
/// `A(l) = −½·Σ_i w_i·m_i(l)·s_i(l)` that makes inverses phase-free.
pub fn stabilizer_element(
    code: &GeneralLcaCode,
    l: &[i64],
) -> Result<HybridDisplacement, HeisenbergError> {
    if l.len() != 2 * code.p {
        return Err(HeisenbergError::FrameMismatch);
    }
    let l_col = {
        let mut m = RationalMatrix::new(2 * code.p, 1);
        for (i, &v) in l.iter().enumerate() {
            m.set(i, 0, Rational::from_integer(BigInt::from(v)));
        }
        m
    };
    let cv = code.t_cv.base.mul(&l_col);
    let dv = code.t_dv.mul(&l_col);
    let k = code.k;
    let m_cv: Vec<Rational> = (0..code.p).map(|i| cv.get(i, 0).clone()).collect();
    let s_cv: Vec<Rational> = (0..code.p).map(|i| cv.get(code.p + i, 0).clone()).collect();
    let to_i64 = |q: &Rational| -> Result<i64, HeisenbergError> {
        debug_assert!(q.is_integer());
        q.to_integer().to_i64().ok_or(HeisenbergError::Overflow)
    };
    let m_dv: Vec<i64> = (0..k).map(|j| to_i64(dv.get(j, 0))).collect::<Result<_, _>>()?;
    let s_dv: Vec<i64> = (0..k)
        .map(|j| to_i64(dv.get(k + j, 0)))
        .collect::<Result<_, _>>()?;

    let units = code.unit_squares();
    let mut accum = Rational::zero();
    for i in 0..code.p {
        accum += &m_cv[i] * &s_cv[i] * &units[i];
    }
    for j in 0..k {
        accum += Rational::new(
            BigInt::from(m_dv[j]) * BigInt::from(s_dv[j]),
            BigInt::from(code.cvec[j]),
        );
    }
    let phase = PhaseFraction::new(Scalar::Exact(-accum / Rational::from_integer(BigInt::from(2))));
    Ok(HybridDisplacement {
        m_cv: m_cv.into_iter().map(Scalar::Exact).collect(),
        s_cv: s_cv.into_iter().map(Scalar::Exact).collect(),
        m_dv,
        s_dv,
        phase,
    })
}

/// Whether an exact displacement lies in the code's stabilizer lattice
/// (up to phase): its oscillator part must be an integer combination of
/// encoder columns `l`, and its qudit exponents must match `T_dv·l`
/// modulo the qudit dimensions.
pub fn lattice_member(
    code: &GeneralLcaCode,
    x: &HybridDisplacement,
) -> Result<bool, HeisenbergError> {
    if x.shape() != (code.p, code.k) {
        return Err(HeisenbergError::FrameMismatch);
    }
    if !x.is_exact() {
        return Err(HeisenbergError::InexactCoordinates);
    }
    let mut coords = RationalMatrix::new(2 * code.p, 1);
    for i in 0..code.p {
        coords.set(i, 0, x.m_cv[i].as_exact().unwrap().clone());
        coords.set(code.p + i, 0, x.s_cv[i].as_exact().unwrap().clone());
    }
    let l = code
        .t_cv
        .base
        .inverse()
        .expect("encoder bases are unimodular")
        .mul(&coords);
    if !l.is_integer() {
        return Ok(false);
    }
    let dv = code.t_dv.mul(&l);
    for j in 0..code.k {
        let c_j = BigInt::from(code.cvec[j]);
        let diff_m = dv.get(j, 0).to_integer() - BigInt::from(x.m_dv[j]);
        let diff_s = dv.get(code.k + j, 0).to_integer() - BigInt::from(x.s_dv[j]);
        if !diff_m.mod_floor(&c_j).is_zero() || !diff_s.mod_floor(&c_j).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The logical class of an exact displacement on a one-mode code.
///
/// Membership in the dual lattice (everything commuting with both
/// stabilizer generators) requires integer oscillator coordinates
/// `(m₁, s₁)` with `m₁ + m₂ ≡ 0` and `s₂ + a·s₁ ≡ 0` modulo `c`; the class
/// `(m₁ mod K, −s₁ mod K)` then indexes the logical operator
/// `X̄^{m₁}·Z̄^{−s₁}` up to stabilizers: `X̄ ↦ (1, 0)`, `Z̄ ↦ (0, 1)`,
/// stabilizer elements `↦ (0, 0)`.
pub fn logical_class(
    code: &SimpleLcaCode,
    x: &HybridDisplacement,
) -> Result<(i64, i64), HeisenbergError> {
    if x.shape() != (1, 1) {
        return Err(HeisenbergError::FrameMismatch);
    }
    if !x.is_exact() {
        return Err(HeisenbergError::InexactCoordinates);
    }
    let m1_rat = x.m_cv[0].as_exact().unwrap();
    let s1_rat = x.s_cv[0].as_exact().unwrap();
    if !m1_rat.is_integer() || !s1_rat.is_integer() {
        return Err(HeisenbergError::NotInDual);
    }
    let m1 = m1_rat.to_integer().to_i64().ok_or(HeisenbergError::Overflow)?;
    let s1 = s1_rat.to_integer().to_i64().ok_or(HeisenbergError::Overflow)?;
    let m2 = x.m_dv[0];
    let s2 = x.s_dv[0];
    let c = i128::from(code.c);
    if (i128::from(m1) + i128::from(m2)).mod_floor(&c) != 0 {
        return Err(HeisenbergError::NotInDual);
    }
    if (i128::from(s2) + i128::from(code.a) * i128::from(s1)).mod_floor(&c) != 0 {
        return Err(HeisenbergError::NotInDual);
    }
    let k = i128::from(code.k);
    let x_class = i128::from(m1).mod_floor(&k);
    let z_class = (-i128::from(s1)).mod_floor(&k);
    Ok((x_class as i64, z_class as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::simple_code;
    use crate::exactmath::rational;

    fn generators(
        code: &SimpleLcaCode,
    ) -> (
        HybridDisplacement,
        HybridDisplacement,
        HybridDisplacement,
        HybridDisplacement,
    ) {
        let (sx_cv, sx_dv) = code.stabilizer_x();
        let (sz_cv, sz_dv) = code.stabilizer_z();
        let (lx_cv, lx_dv) = code.logical_x();
        let (lz_cv, lz_dv) = code.logical_z();
        (
            HybridDisplacement::from_simple_coords(sx_cv, sx_dv),
            HybridDisplacement::from_simple_coords(sz_cv, sz_dv),
            HybridDisplacement::from_simple_coords(lx_cv, lx_dv),
            HybridDisplacement::from_simple_coords(lz_cv, lz_dv),
        )
    }

    #[test]
    fn stabilizer_generators_commute_and_logicals_do_not() {
        for (c, d, theta) in [(3, 2, 0), (3, 2, 1), (5, 3, 1), (7, 4, 2), (1, 1, 1)] {
            let code = simple_code(c, d, theta).unwrap();
            let frame = DisplacementFrame::from_simple(&code);
            let (sx, sz, lx, lz) = generators(&code);

            // ⟨S_X, S_Z⟩ = θ, an integer: the generators commute.
            let inner = frame.phase_inner(&sx, &sz).unwrap();
            assert_eq!(inner.as_exact().unwrap(), &rational(code.theta, 1));

            // Logicals commute with both stabilizer generators:
            // ⟨S_X, Z̄⟩ = −b and the other three pairings are integers too.
            let sx_lz = frame.phase_inner(&sx, &lz).unwrap();
            assert_eq!(sx_lz.as_exact().unwrap(), &rational(-code.b, 1));
            for (g, l) in [(&sx, &lx), (&sz, &lx), (&sz, &lz)] {
                let v = frame.phase_inner(g, l).unwrap();
                assert!(v.as_exact().unwrap().is_integer(), "c={c} d={d} θ={theta}");
            }

            // ⟨Z̄, X̄⟩ = (aθ + b)/K generates a cyclic group of order
            // exactly K.
            let lz_lx = frame.phase_inner(&lz, &lx).unwrap();
            let expected = rational(code.a * code.theta + code.b, code.k);
            assert_eq!(lz_lx.as_exact().unwrap(), &expected);
            let order = PhaseFraction::new(lz_lx).order().unwrap();
            assert_eq!(order, BigInt::from(code.k));
        }
    }

    #[test]
    fn composition_cocycle_is_ordered() {
        let code = simple_code(3, 2, 0).unwrap();
        let frame = DisplacementFrame::from_simple(&code);
        let (_, _, lx, lz) = generators(&code);

        // X̄ then Z̄ picks up half a turn; the reverse order none.
        let xz = frame.compose(&lx, &lz).unwrap();
        assert_eq!(xz.phase.value.as_exact().unwrap(), &rational(1, 2));
        let zx = frame.compose(&lz, &lx).unwrap();
        assert!(zx.phase.is_zero());

        // The phase gap between the two orders is ⟨Z̄, X̄⟩ mod 1.
        let gap = PhaseFraction::new(
            xz.phase.value.add(&zx.phase.value.neg()),
        );
        let inner = PhaseFraction::new(frame.phase_inner(&lz, &lx).unwrap());
        assert_eq!(gap, inner);

        // Coordinates always add.
        assert_eq!(xz.m_cv, zx.m_cv);
        assert_eq!(xz.s_dv, zx.s_dv);
    }

    #[test]
    fn inverse_and_power_close_the_group() {
        let code = simple_code(5, 3, 1).unwrap();
        let frame = DisplacementFrame::from_simple(&code);
        let (_, _, lx, lz) = generators(&code);
        let word = frame.compose(&lx, &lz).unwrap();
        let inv = frame.inverse(&word).unwrap();
        let product = frame.compose(&word, &inv).unwrap();
        assert_eq!(product, HybridDisplacement::identity(1, 1));

        // K-th power of X̄ has oscillator coordinate K and trivial class.
        let xk = frame.power(&lx, code.k).unwrap();
        assert_eq!(xk.m_cv[0].as_exact().unwrap(), &rational(code.k, 1));
        assert_eq!(logical_class(&code, &xk).unwrap(), (0, 0));
        let x_neg = frame.power(&lx, -1).unwrap();
        assert_eq!(logical_class(&code, &x_neg).unwrap(), (code.k - 1, 0));
    }

    #[test]
    fn real_coordinates_poison_results() {
        let code = simple_code(3, 2, 0).unwrap();
        let frame = DisplacementFrame::from_simple(&code);
        let noisy = HybridDisplacement {
            m_cv: vec![Scalar::Real(0.25)],
            s_cv: vec![Scalar::zero()],
            m_dv: vec![0],
            s_dv: vec![0],
            phase: PhaseFraction::zero(),
        };
        let (_, _, lx, _) = generators(&code);
        let inner = frame.phase_inner(&noisy, &lx).unwrap();
        assert!(!inner.is_exact());
        assert!(logical_class(&code, &noisy).is_err());

        let general = code.to_general().unwrap();
        assert_eq!(
            lattice_member(&general, &noisy),
            Err(HeisenbergError::InexactCoordinates)
        );
    }

    #[test]
    fn stabilizer_elements_lie_in_the_lattice() {
        let code = simple_code(3, 2, 1).unwrap().to_general().unwrap();
        for l in [[1, 0], [0, 1], [1, 1], [-2, 3], [5, -1]] {
            let elem = stabilizer_element(&code, &l).unwrap();
            assert!(lattice_member(&code, &elem).unwrap(), "l = {l:?}");
        }
        // Worked example: l = (1, 1) has coordinates (1, −1 | −2, 1) and
        // phase −½·[1·(−1)·(5/3) + (−2)·1/3] = 7/6 ≡ 1/6.
        let elem = stabilizer_element(&code, &[1, 1]).unwrap();
        assert_eq!(elem.m_cv[0].as_exact().unwrap(), &rational(1, 1));
        assert_eq!(elem.s_cv[0].as_exact().unwrap(), &rational(-1, 1));
        assert_eq!(elem.m_dv, vec![-2]);
        assert_eq!(elem.s_dv, vec![1]);
        assert_eq!(elem.phase.value.as_exact().unwrap(), &rational(1, 6));
    }

    #[test]
    fn logical_encoder_columns_pair_to_the_dual_torus() {
        let code = simple_code(3, 2, 1).unwrap().to_general().unwrap();
        let frame = DisplacementFrame::from_general(&code);
        // Columns of the logical encoder, expressed in frame units: the
        // oscillator rows of S_cv carry radicands m/t, i.e. (m/t)·base in
        // units of √(t/m).
        let mut logicals = Vec::new();
        for col in 0..2 {
            let scale = rational(3, 5);
            let m_cv = vec![Scalar::Exact(code.s_cv.base.get(0, col) * &scale)];
            let s_cv = vec![Scalar::Exact(code.s_cv.base.get(1, col) * &scale)];
            let m_dv = vec![code.s_dv.get(0, col).to_integer().to_i64().unwrap()];
            let s_dv = vec![code.s_dv.get(1, col).to_integer().to_i64().unwrap()];
            logicals.push(HybridDisplacement {
                m_cv,
                s_cv,
                m_dv,
                s_dv,
                phase: PhaseFraction::zero(),
            });
        }
        let inner = frame.phase_inner(&logicals[0], &logicals[1]).unwrap();
        // ⟨S·e₁, S·e₂⟩ = −Θ⊥₀₁ = −2/5.
        assert_eq!(inner.as_exact().unwrap(), &rational(-2, 5));
        // Logical displacements are not stabilizer-lattice members, but
        // their K-th multiples are.
        assert!(!lattice_member(&code, &logicals[0]).unwrap());
        let mut fifth = logicals[0].clone();
        for q in fifth.m_cv.iter_mut().chain(fifth.s_cv.iter_mut()) {
            *q = Scalar::Exact(q.as_exact().unwrap() * rational(5, 1));
        }
        for v in fifth.m_dv.iter_mut().chain(fifth.s_dv.iter_mut()) {
            *v *= 5;
        }
        assert!(lattice_member(&code, &fifth).unwrap());
    }

    #[test]
    fn logical_classes_of_generators() {
        for (c, d, theta) in [(3, 2, 0), (3, 2, 1), (5, 3, 1)] {
            let code = simple_code(c, d, theta).unwrap();
            let (sx, sz, lx, lz) = generators(&code);
            assert_eq!(logical_class(&code, &sx).unwrap(), (0, 0));
            assert_eq!(logical_class(&code, &sz).unwrap(), (0, 0));
            assert_eq!(logical_class(&code, &lx).unwrap(), (1, 0));
            assert_eq!(logical_class(&code, &lz).unwrap(), (0, 1));

            let frame = DisplacementFrame::from_simple(&code);
            let xx = frame.compose(&lx, &lx).unwrap();
            assert_eq!(
                logical_class(&code, &xx).unwrap(),
                (2_i64.mod_floor(&code.k), 0)
            );
        }
    }

    #[test]
    fn non_dual_displacements_are_rejected() {
        let code = simple_code(3, 2, 0).unwrap();
        // Fractional oscillator coordinate.
        let frac = HybridDisplacement::exact(vec![rational(1, 2)], vec![rational(0, 1)], vec![0], vec![0]);
        assert_eq!(logical_class(&code, &frac), Err(HeisenbergError::NotInDual));
        // Integer coordinates failing the congruence m₁ + m₂ ≡ 0 (mod c).
        let bad = HybridDisplacement::from_simple_coords([1, 0], [0, 0]);
        assert_eq!(logical_class(&code, &bad), Err(HeisenbergError::NotInDual));
        // Wrong shape.
        let wide = HybridDisplacement::identity(2, 1);
        assert_eq!(logical_class(&code, &wide), Err(HeisenbergError::FrameMismatch));
    }

    #[test]
    fn phase_fraction_reduction_and_order() {
        assert_eq!(
            PhaseFraction::new(Scalar::Exact(rational(7, 6))).value,
            Scalar::Exact(rational(1, 6))
        );
        assert_eq!(
            PhaseFraction::new(Scalar::Exact(rational(-1, 4))).value,
            Scalar::Exact(rational(3, 4))
        );
        assert_eq!(
            PhaseFraction::new(Scalar::Exact(rational(3, 1))).order(),
            Some(BigInt::one())
        );
        assert_eq!(
            PhaseFraction::new(Scalar::Exact(rational(2, 5))).order(),
            Some(BigInt::from(5))
        );
        assert_eq!(PhaseFraction::new(Scalar::Real(0.3)).order(), None);
        let half = PhaseFraction::new(Scalar::Real(1.75));
        assert!((half.to_f64() - 0.75).abs() < 1e-12);
    }
}

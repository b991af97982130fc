//! Exact rational linear algebra and the integer normal forms used by the
//! code constructions.
//!
//! All numbers are arbitrary-precision rationals ([`Rational`], an alias for
//! `num_rational::BigRational`): reduced fractions with a positive
//! denominator. On top of them sits [`RationalMatrix`], a dense row-major
//! matrix with exact arithmetic, determinants, inverses and Pfaffians.
//!
//! Three integer algorithms live here as free functions:
//!
//! * [`bezout_pair`] — the canonical solution `(a, b)` of `b·c − a·d = 1`
//!   for coprime `(c, d)`, with ties broken toward small `|b|`, then small
//!   `|a|`, then positive `a`.
//! * [`alt_smith`] — the alternating Smith normal form of an integer
//!   anti-symmetric matrix: a unimodular `R` with
//!   `Rᵀ A R = [[0, H, 0], [−H, 0, 0], [0, 0, 0]]`, `H = diag(h_1, …, h_k)`,
//!   `h_1 | h_2 | … | h_k`, all positive.
//! * [`complete_unimodular`] — extension of an integer row basis to a full
//!   unimodular matrix, when possible.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number: reduced, positive denominator.
pub type Rational = num_rational::BigRational;

/// Errors from exact-arithmetic operations.
///
/// Dimension *misuse* (multiplying incompatible shapes, indexing out of
/// bounds) is a caller bug and panics; these variants cover data-dependent
/// failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactMathError {
    /// A square matrix was required.
    #[error("matrix is not square ({nrows}x{ncols})")]
    NotSquare { nrows: usize, ncols: usize },
    /// Row lengths disagree.
    #[error("ragged rows: row {row} has {got} entries, expected {expected}")]
    RaggedRows { row: usize, got: usize, expected: usize },
    /// The matrix has no inverse.
    #[error("matrix is singular")]
    Singular,
    /// An anti-symmetric matrix was required (`Aᵀ = −A`, zero diagonal).
    #[error("matrix is not anti-symmetric")]
    NotAntiSymmetric,
    /// Pfaffians are defined for even dimension only.
    #[error("Pfaffian requires even dimension, got {0}")]
    OddDimension(usize),
    /// Integer entries were required.
    #[error("matrix entries must be integers")]
    NonIntegerEntries,
    /// `bezout_pair` needs coprime arguments.
    #[error("{c} and {d} are not coprime")]
    NotCoprime { c: i64, d: i64 },
    /// `bezout_pair` needs a positive first argument.
    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(i64),
    /// The rows cannot be extended to a unimodular matrix.
    #[error("rows cannot be completed to a unimodular matrix: {0}")]
    NotCompletable(String),
}

/// Shorthand constructor: the rational `num / den`.
///
/// # Panics
///
/// Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> Rational {
    assert!(den != 0, "rational denominator must be nonzero");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand constructor: the integer `n` as a rational.
pub fn rational_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Nearest `f64` to a rational (numerator over denominator in floating
/// point). Used only where analog data leaves the exact layer.
pub fn rational_to_f64(value: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    value
        .to_f64()
        .expect("BigRational-to-f64 conversion is total")
}

/// Exact square root of a non-negative rational, if it is a perfect square.
///
/// Returns `None` for negative input and for values whose numerator or
/// denominator is not a perfect square.
pub fn rational_sqrt(value: &Rational) -> Option<Rational> {
    if value.is_negative() {
        return None;
    }
    let num = value.numer();
    let den = value.denom();
    let num_root = num.sqrt();
    let den_root = den.sqrt();
    if &(&num_root * &num_root) == num && &(&den_root * &den_root) == den {
        Some(Rational::new(num_root, den_root))
    } else {
        None
    }
}

/// Dense matrix of [`Rational`] entries, stored row-major.
///
/// Invariant: `entries.len() == nrows * ncols`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    /// Number of rows (may be zero for block bookkeeping).
    pub nrows: usize,
    /// Number of columns (may be zero for block bookkeeping).
    pub ncols: usize,
    /// Row-major entries; `entries[i * ncols + j]` is the `(i, j)` entry.
    pub entries: Vec<Rational>,
}

impl RationalMatrix {
    /// The `nrows × ncols` zero matrix.
    pub fn new(nrows: usize, ncols: usize) -> Self {
        RationalMatrix {
            nrows,
            ncols,
            entries: vec![Rational::zero(); nrows * ncols],
        }
    }

    /// The `n × n` identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows, rejecting ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, ExactMathError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(ExactMathError::RaggedRows {
                    row: i,
                    got: row.len(),
                    expected: ncols,
                });
            }
            entries.extend(row);
        }
        Ok(RationalMatrix { nrows, ncols, entries })
    }

    /// Builds a matrix from integer rows.
    ///
    /// # Panics
    ///
    /// Panics on ragged rows; intended for literal matrices.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let converted = rows
            .iter()
            .map(|row| row.iter().map(|&v| rational_int(v)).collect())
            .collect();
        Self::from_rows(converted).expect("literal rows must be rectangular")
    }

    /// Builds a matrix from big-integer rows.
    ///
    /// # Panics
    ///
    /// Panics on ragged rows; intended for internally generated data.
    pub fn from_bigint_rows(rows: &[Vec<BigInt>]) -> Self {
        let converted = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| Rational::from_integer(v.clone()))
                    .collect()
            })
            .collect();
        Self::from_rows(converted).expect("generated rows must be rectangular")
    }

    /// Entry accessor.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        assert!(i < self.nrows && j < self.ncols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.ncols + j]
    }

    /// Entry mutator.
    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        assert!(i < self.nrows && j < self.ncols, "index ({i}, {j}) out of bounds");
        self.entries[i * self.ncols + j] = value;
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[Rational] {
        assert!(i < self.nrows, "row {i} out of bounds");
        &self.entries[i * self.ncols..(i + 1) * self.ncols]
    }

    /// Column `j` as an owned vector.
    pub fn col(&self, j: usize) -> Vec<Rational> {
        assert!(j < self.ncols, "column {j} out of bounds");
        (0..self.nrows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Whether the matrix is square.
    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    /// Whether every entry is an integer.
    pub fn is_integer(&self) -> bool {
        self.entries.iter().all(Rational::is_integer)
    }

    /// Whether every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    /// Whether the matrix is a (square) identity.
    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.nrows).all(|i| {
                (0..self.ncols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    /// Whether `Aᵀ = −A` (which forces a zero diagonal).
    pub fn is_anti_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.nrows).all(|i| {
                (i..self.ncols).all(|j| self.get(i, j) == &(-self.get(j, i).clone()))
            })
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        let mut out = RationalMatrix::new(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Matrix product `self · rhs`.
    ///
    /// # Panics
    ///
    /// Panics if `self.ncols != rhs.nrows`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.ncols, rhs.nrows,
            "cannot multiply {}x{} by {}x{}",
            self.nrows, self.ncols, rhs.nrows, rhs.ncols
        );
        let mut out = RationalMatrix::new(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for j in 0..rhs.ncols {
                let mut acc = Rational::zero();
                for l in 0..self.ncols {
                    let a = self.get(i, l);
                    let b = rhs.get(l, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Entry-wise sum.
    ///
    /// # Panics
    ///
    /// Panics on shape mismatch.
    pub fn add(&self, rhs: &Self) -> Self {
        assert!(
            self.nrows == rhs.nrows && self.ncols == rhs.ncols,
            "cannot add {}x{} and {}x{}",
            self.nrows, self.ncols, rhs.nrows, rhs.ncols
        );
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        RationalMatrix { nrows: self.nrows, ncols: self.ncols, entries }
    }

    /// Entry-wise difference.
    ///
    /// # Panics
    ///
    /// Panics on shape mismatch.
    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Entry-wise negation.
    pub fn neg(&self) -> Self {
        let entries = self.entries.iter().map(|a| -a).collect();
        RationalMatrix { nrows: self.nrows, ncols: self.ncols, entries }
    }

    /// Entry-wise multiplication by a scalar.
    pub fn scale(&self, factor: &Rational) -> Self {
        let entries = self.entries.iter().map(|a| a * factor).collect();
        RationalMatrix { nrows: self.nrows, ncols: self.ncols, entries }
    }

    /// Horizontal concatenation `[self | rhs]`.
    ///
    /// # Panics
    ///
    /// Panics if row counts differ.
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.nrows, rhs.nrows, "hstack requires equal row counts");
        let mut out = RationalMatrix::new(self.nrows, self.ncols + rhs.ncols);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.ncols {
                out.set(i, self.ncols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Vertical concatenation of `self` on top of `rhs`.
    ///
    /// # Panics
    ///
    /// Panics if column counts differ.
    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.ncols, rhs.ncols, "vstack requires equal column counts");
        let mut entries = self.entries.clone();
        entries.extend(rhs.entries.iter().cloned());
        RationalMatrix { nrows: self.nrows + rhs.nrows, ncols: self.ncols, entries }
    }

    /// Assembles a block matrix from rows of blocks.
    ///
    /// Each inner slice is one row of blocks: heights must agree within a
    /// block row and every block row's total width must match. Zero-dimension
    /// blocks are allowed, so degenerate block structures (no qudits, no
    /// kernel) work without special cases.
    ///
    /// # Panics
    ///
    /// Panics on inconsistent block shapes.
    pub fn from_blocks(blocks: &[&[&RationalMatrix]]) -> Self {
        assert!(!blocks.is_empty(), "block grid must be nonempty");
        let total_width: usize = blocks[0].iter().map(|b| b.ncols).sum();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for block_row in blocks {
            let width: usize = block_row.iter().map(|b| b.ncols).sum();
            assert_eq!(width, total_width, "block row widths disagree");
            let height = block_row.first().map_or(0, |b| b.nrows);
            for block in *block_row {
                assert_eq!(block.nrows, height, "block heights disagree in a row");
            }
            for i in 0..height {
                let mut row = Vec::with_capacity(total_width);
                for block in *block_row {
                    row.extend(block.row(i).iter().cloned());
                }
                rows.push(row);
            }
        }
        Self::from_rows(rows).expect("block assembly produces rectangular rows")
    }

    /// The submatrix selecting `rows` and `cols` in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = RationalMatrix::new(rows.len(), cols.len());
        for (oi, &i) in rows.iter().enumerate() {
            for (oj, &j) in cols.iter().enumerate() {
                out.set(oi, oj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Exact determinant by fraction-free-ordered Gaussian elimination.
    ///
    /// # Panics
    ///
    /// Panics if the matrix is not square.
    pub fn det(&self) -> Rational {
        assert!(self.is_square(), "determinant requires a square matrix");
        let n = self.nrows;
        let mut work = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let pivot_row = match (col..n).find(|&r| !work.get(r, col).is_zero()) {
                Some(r) => r,
                None => return Rational::zero(),
            };
            if pivot_row != col {
                for j in 0..n {
                    let tmp = work.get(col, j).clone();
                    let moved = work.get(pivot_row, j).clone();
                    work.set(col, j, moved);
                    work.set(pivot_row, j, tmp);
                }
                det = -det;
            }
            let pivot = work.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                if work.get(r, col).is_zero() {
                    continue;
                }
                let factor = work.get(r, col) / &pivot;
                for j in col..n {
                    let delta = &factor * work.get(col, j);
                    let updated = work.get(r, j) - delta;
                    work.set(r, j, updated);
                }
            }
        }
        det
    }

    /// Exact inverse by Gauss-Jordan elimination.
    ///
    /// # Panics
    ///
    /// Panics if the matrix is not square.
    pub fn inverse(&self) -> Result<Self, ExactMathError> {
        assert!(self.is_square(), "inverse requires a square matrix");
        let n = self.nrows;
        let mut work = self.clone();
        let mut inv = RationalMatrix::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !work.get(r, col).is_zero())
                .ok_or(ExactMathError::Singular)?;
            if pivot_row != col {
                for j in 0..n {
                    let (a, b) = (work.get(col, j).clone(), work.get(pivot_row, j).clone());
                    work.set(col, j, b);
                    work.set(pivot_row, j, a);
                    let (a, b) = (inv.get(col, j).clone(), inv.get(pivot_row, j).clone());
                    inv.set(col, j, b);
                    inv.set(pivot_row, j, a);
                }
            }
            let pivot = work.get(col, col).clone();
            for j in 0..n {
                let w = work.get(col, j) / &pivot;
                work.set(col, j, w);
                let v = inv.get(col, j) / &pivot;
                inv.set(col, j, v);
            }
            for r in 0..n {
                if r == col || work.get(r, col).is_zero() {
                    continue;
                }
                let factor = work.get(r, col).clone();
                for j in 0..n {
                    let w = work.get(r, j) - &factor * work.get(col, j);
                    work.set(r, j, w);
                    let v = inv.get(r, j) - &factor * inv.get(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }

    /// Exact Pfaffian of an anti-symmetric matrix of even dimension.
    ///
    /// Computed by congruence elimination to a block form; each congruence
    /// step multiplies the Pfaffian by the determinant of the elementary
    /// transform, which is tracked explicitly. `Pf(A)² = det(A)`.
    pub fn pfaffian(&self) -> Result<Rational, ExactMathError> {
        if !self.is_square() {
            return Err(ExactMathError::NotSquare { nrows: self.nrows, ncols: self.ncols });
        }
        if !self.is_anti_symmetric() {
            return Err(ExactMathError::NotAntiSymmetric);
        }
        let n = self.nrows;
        if n % 2 != 0 {
            return Err(ExactMathError::OddDimension(n));
        }
        let mut b = self.clone();
        let mut sign_flips = 0usize;
        let mut pf = Rational::one();
        for t in (0..n).step_by(2) {
            let pivot_row = match (t + 1..n).find(|&i| !b.get(i, t).is_zero()) {
                Some(r) => r,
                None => return Ok(Rational::zero()),
            };
            if pivot_row != t + 1 {
                b.congruence_swap(pivot_row, t + 1);
                sign_flips += 1;
            }
            let pivot = b.get(t, t + 1).clone();
            for i in t + 2..n {
                if !b.get(i, t + 1).is_zero() {
                    let q = b.get(i, t + 1) / &pivot;
                    b.congruence_add(t, i, &(-q));
                }
                if !b.get(i, t).is_zero() {
                    // b[t+1][t] = −pivot, so the multiplier flips sign.
                    let q = b.get(i, t) / &pivot;
                    b.congruence_add(t + 1, i, &q);
                }
            }
            pf *= &pivot;
        }
        if sign_flips % 2 == 1 {
            pf = -pf;
        }
        Ok(pf)
    }

    /// Entries as big integers, failing if any entry is fractional.
    pub fn to_bigint_rows(&self) -> Result<Vec<Vec<BigInt>>, ExactMathError> {
        let mut rows = Vec::with_capacity(self.nrows);
        for i in 0..self.nrows {
            let mut row = Vec::with_capacity(self.ncols);
            for j in 0..self.ncols {
                let e = self.get(i, j);
                if !e.is_integer() {
                    return Err(ExactMathError::NonIntegerEntries);
                }
                row.push(e.to_integer());
            }
            rows.push(row);
        }
        Ok(rows)
    }

    /// Positive least common multiple of all entry denominators (1 if empty).
    pub fn denominator_lcm(&self) -> BigInt {
        let mut acc = BigInt::one();
        for e in &self.entries {
            acc = acc.lcm(e.denom());
        }
        acc.abs()
    }

    /// Congruence row/column swap: `A ← Pᵀ A P` for the transposition `P`.
    fn congruence_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for col in 0..self.ncols {
            let (a, b) = (self.get(i, col).clone(), self.get(j, col).clone());
            self.set(i, col, b);
            self.set(j, col, a);
        }
        for row in 0..self.nrows {
            let (a, b) = (self.get(row, i).clone(), self.get(row, j).clone());
            self.set(row, i, b);
            self.set(row, j, a);
        }
    }

    /// Congruence shear: row `dst` += `q`·row `src` and column `dst` +=
    /// `q`·column `src` (`A ← Eᵀ A E` with `E = I + q·e_src e_dstᵀ`).
    fn congruence_add(&mut self, src: usize, dst: usize, q: &Rational) {
        assert_ne!(src, dst, "congruence shear requires distinct indices");
        for col in 0..self.ncols {
            let delta = q * self.get(src, col);
            let updated = self.get(dst, col) + delta;
            self.set(dst, col, updated);
        }
        for row in 0..self.nrows {
            let delta = q * self.get(row, src);
            let updated = self.get(row, dst) + delta;
            self.set(row, dst, updated);
        }
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<Vec<String>> = (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        let width = rendered
            .iter()
            .flatten()
            .map(String::len)
            .max()
            .unwrap_or(0);
        for row in &rendered {
            write!(f, "[")?;
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{cell:>width$}")?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// The canonical Bézout pair for coprime `(c, d)`: `b·c − a·d = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BezoutPair {
    /// Coefficient multiplying `d`.
    pub a: i64,
    /// Coefficient multiplying `c`.
    pub b: i64,
}

/// Canonical solution of `b·c − a·d = 1` for `c ≥ 1` and `gcd(c, d) = 1`.
///
/// Among all solutions, picks the one with minimal `|b|`; within that, the
/// minimal `|a|`; within that, positive `a`. For `d = 0` (which forces
/// `c = 1`) the result is `(a, b) = (0, 1)`.
pub fn bezout_pair(c: i64, d: i64) -> Result<BezoutPair, ExactMathError> {
    if c < 1 {
        return Err(ExactMathError::NonPositiveModulus(c));
    }
    if num_integer::gcd(c, d.abs()) != 1 {
        return Err(ExactMathError::NotCoprime { c, d });
    }
    if d == 0 {
        return Ok(BezoutPair { a: 0, b: 1 });
    }
    let (c128, d128) = (i128::from(c), i128::from(d));
    for b_abs in 0..=d.abs() {
        let mut candidates: Vec<(i128, i128)> = Vec::new();
        let signs: &[i64] = if b_abs == 0 { &[1] } else { &[1, -1] };
        for sign in signs {
            let b = i128::from(sign * b_abs);
            let num = b * c128 - 1;
            if num % d128 == 0 {
                candidates.push(((num / d128), b));
            }
        }
        if let Some(&(a, b)) = candidates
            .iter()
            .min_by_key(|&&(a, _)| (a.abs(), if a > 0 { 0 } else { 1 }))
        {
            let a = i64::try_from(a).expect("Bézout coefficient exceeds i64");
            let b = i64::try_from(b).expect("Bézout coefficient exceeds i64");
            return Ok(BezoutPair { a, b });
        }
    }
    unreachable!("a Bézout pair exists for every coprime (c, d)")
}

/// Result of [`alt_smith`]: `transformᵀ · A · transform` is the canonical
/// alternating form.
///
/// The canonical form is `[[0, H, 0], [−H, 0, 0], [0, 0, 0]]` with blocks of
/// sizes `ranks`, `ranks` and `n − 2·ranks`, and
/// `H = diag(invariants)` satisfying `h_1 | h_2 | … | h_k`, all positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltSmithDecomposition {
    /// Unimodular integer change of basis `R` (applied as `Rᵀ A R`).
    pub transform: RationalMatrix,
    /// Number `k` of hyperbolic pairs (half the rank of `A`).
    pub ranks: usize,
    /// The invariant factors `h_1 | h_2 | … | h_k`, all positive.
    pub invariants: Vec<BigInt>,
}

impl AltSmithDecomposition {
    /// The canonical form `[[0, H, 0], [−H, 0, 0], [0, 0, 0]]` this
    /// decomposition reduces to, as an explicit matrix of dimension `n`.
    pub fn canonical_form(&self, n: usize) -> RationalMatrix {
        let k = self.ranks;
        let mut out = RationalMatrix::new(n, n);
        for (j, h) in self.invariants.iter().enumerate() {
            out.set(j, k + j, Rational::from_integer(h.clone()));
            out.set(k + j, j, Rational::from_integer(-h.clone()));
        }
        out
    }
}

/// Integer matrix workspace for congruence reductions, accumulating the
/// change of basis.
struct SkewWorkspace {
    n: usize,
    b: Vec<Vec<BigInt>>,
    r: Vec<Vec<BigInt>>,
}

impl SkewWorkspace {
    fn new(b: Vec<Vec<BigInt>>) -> Self {
        let n = b.len();
        let mut r = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in r.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        SkewWorkspace { n, b, r }
    }

    /// Swap basis vectors `i` and `j`.
    fn swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.b.swap(i, j);
        for row in &mut self.b {
            row.swap(i, j);
        }
        for row in &mut self.r {
            row.swap(i, j);
        }
    }

    /// Negate basis vector `i`.
    fn flip(&mut self, i: usize) {
        for col in 0..self.n {
            let v = -self.b[i][col].clone();
            self.b[i][col] = v;
        }
        for row in 0..self.n {
            let v = -self.b[row][i].clone();
            self.b[row][i] = v;
        }
        for row in &mut self.r {
            let v = -row[i].clone();
            row[i] = v;
        }
    }

    /// Basis vector `dst` += `q` · basis vector `src`.
    fn add_multiple(&mut self, src: usize, dst: usize, q: &BigInt) {
        assert_ne!(src, dst);
        for col in 0..self.n {
            let delta = q * &self.b[src][col];
            self.b[dst][col] += delta;
        }
        for row in 0..self.n {
            let delta = q * &self.b[row][src];
            self.b[row][dst] += delta;
        }
        for row in &mut self.r {
            let delta = q * &row[src];
            row[dst] += delta;
        }
    }

    /// Position of a minimal-magnitude nonzero entry in the upper triangle
    /// of the trailing submatrix starting at `t`, if any.
    fn min_entry_from(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.n {
            for j in i + 1..self.n {
                if self.b[i][j].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if self.b[i][j].abs() < self.b[bi][bj].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }
}

/// Alternating Smith normal form of an integer anti-symmetric matrix.
///
/// Returns a unimodular `R` with `Rᵀ A R = [[0, H, 0], [−H, 0, 0], [0, 0, 0]]`
/// where `H = diag(h_1, …, h_k)`, each `h_j` positive and `h_1 | h_2 | … | h_k`.
/// The algorithm is the classical one made constructive: repeated
/// gcd-reduction of a leading skew pair by unimodular row/column pairs, a
/// divisibility sweep that folds any non-multiple of the current pivot back
/// into the active pair, and sign-flip columns to force each `h_j` positive.
pub fn alt_smith(a: &RationalMatrix) -> Result<AltSmithDecomposition, ExactMathError> {
    if !a.is_square() {
        return Err(ExactMathError::NotSquare { nrows: a.nrows, ncols: a.ncols });
    }
    if !a.is_anti_symmetric() {
        return Err(ExactMathError::NotAntiSymmetric);
    }
    let rows = a.to_bigint_rows()?;
    let n = a.nrows;
    let mut ws = SkewWorkspace::new(rows);

    let mut t = 0;
    while t + 1 < n {
        if ws.min_entry_from(t).is_none() {
            break;
        }
        loop {
            let (i, j) = ws
                .min_entry_from(t)
                .expect("loop invariant: trailing block is nonzero");
            ws.swap(i, t);
            ws.swap(j, t + 1);
            if ws.b[t][t + 1].is_negative() {
                ws.flip(t);
            }
            let pivot = ws.b[t][t + 1].clone();

            // Euclidean clearing of the two pivot rows beyond the pair.
            let mut cleared = true;
            for col in t + 2..n {
                if !ws.b[t][col].is_zero() {
                    let (q, rem) = ws.b[t][col].div_mod_floor(&pivot);
                    ws.add_multiple(t + 1, col, &-q);
                    if !rem.is_zero() {
                        cleared = false;
                    }
                }
                if !ws.b[t + 1][col].is_zero() {
                    let (q, rem) = ws.b[t + 1][col].div_mod_floor(&pivot);
                    ws.add_multiple(t, col, &q);
                    if !rem.is_zero() {
                        cleared = false;
                    }
                }
            }
            if !cleared {
                continue;
            }

            // Divisibility sweep: the pivot must divide the whole trailing
            // block, or the divisibility chain could fail downstream. Fold
            // one offending basis vector into the pair and reduce again.
            let offender = (t + 2..n)
                .flat_map(|i2| (i2 + 1..n).map(move |j2| (i2, j2)))
                .find(|&(i2, j2)| !ws.b[i2][j2].mod_floor(&pivot).is_zero());
            match offender {
                Some((i2, _)) => {
                    ws.add_multiple(i2, t, &BigInt::one());
                    continue;
                }
                None => break,
            }
        }
        t += 2;
    }

    let k = t / 2;
    let invariants: Vec<BigInt> = (0..k).map(|j| ws.b[2 * j][2 * j + 1].clone()).collect();

    // Permute the interleaved pairs (u_1, v_1, u_2, v_2, …) into block
    // layout (u_1, …, u_k, v_1, …, v_k, kernel).
    let old_col_for_new = |new: usize| -> usize {
        if new < k {
            2 * new
        } else if new < 2 * k {
            2 * (new - k) + 1
        } else {
            new
        }
    };
    let mut transform_rows = vec![vec![BigInt::zero(); n]; n];
    for (row, transform_row) in transform_rows.iter_mut().enumerate() {
        for (new, entry) in transform_row.iter_mut().enumerate() {
            *entry = ws.r[row][old_col_for_new(new)].clone();
        }
    }
    let transform = RationalMatrix::from_bigint_rows(&transform_rows);
    let result = AltSmithDecomposition { transform, ranks: k, invariants };

    debug_assert!(
        result
            .transform
            .transpose()
            .mul(a)
            .mul(&result.transform)
            == result.canonical_form(n),
        "alternating Smith reconstruction failed"
    );
    debug_assert!(result.transform.det().abs().is_one(), "transform must be unimodular");
    Ok(result)
}

/// Extends integer rows to a unimodular matrix whose first rows are the input.
///
/// Fails when the rows are not integral, exceed the dimension, are linearly
/// dependent, or have a nontrivial elementary divisor (e.g. a single row
/// `(2, 0)` has content 2 and cannot appear in any unimodular matrix).
pub fn complete_unimodular(m: &RationalMatrix) -> Result<RationalMatrix, ExactMathError> {
    let r = m.nrows;
    let n = m.ncols;
    if r > n {
        return Err(ExactMathError::NotCompletable(format!(
            "{r} rows exceed dimension {n}"
        )));
    }
    let mut w = m.to_bigint_rows()?;
    let mut v: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    let swap_cols = |w: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, a: usize, b: usize| {
        if a == b {
            return;
        }
        for row in w.iter_mut() {
            row.swap(a, b);
        }
        for row in v.iter_mut() {
            row.swap(a, b);
        }
    };
    let add_col = |w: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, src: usize, dst: usize, q: &BigInt| {
        for row in w.iter_mut() {
            let delta = q * &row[src];
            row[dst] += delta;
        }
        for row in v.iter_mut() {
            let delta = q * &row[src];
            row[dst] += delta;
        }
    };

    for i in 0..r {
        loop {
            let pivot_col = (i..n)
                .filter(|&j| !w[i][j].is_zero())
                .min_by_key(|&j| w[i][j].abs());
            let pivot_col = match pivot_col {
                Some(j) => j,
                None => {
                    return Err(ExactMathError::NotCompletable(format!(
                        "row {i} is linearly dependent on earlier rows"
                    )))
                }
            };
            swap_cols(&mut w, &mut v, pivot_col, i);
            let pivot = w[i][i].clone();
            let mut done = true;
            for j in i + 1..n {
                if w[i][j].is_zero() {
                    continue;
                }
                let q = w[i][j].div_floor(&pivot);
                add_col(&mut w, &mut v, i, j, &-q);
                if !w[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !w[i][i].abs().is_one() {
            return Err(ExactMathError::NotCompletable(format!(
                "elementary divisor {} at row {i} (content obstruction)",
                w[i][i].abs()
            )));
        }
    }

    let v_matrix = RationalMatrix::from_bigint_rows(&v);
    let v_inv = v_matrix
        .inverse()
        .expect("column operations keep the transform unimodular");
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for i in 0..r {
        rows.push(m.row(i).to_vec());
    }
    for i in r..n {
        rows.push(v_inv.row(i).to_vec());
    }
    let completed = RationalMatrix::from_rows(rows).expect("completion rows are rectangular");
    debug_assert!(completed.det().abs().is_one(), "completion must be unimodular");
    Ok(completed)
}

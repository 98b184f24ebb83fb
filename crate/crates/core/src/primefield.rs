//! Arithmetic modulo a 62-bit prime and an incrementally maintained, fully
//! reduced row space.
//!
//! Every rigidity question in this crate is a rank question about a matrix
//! whose entries are differences of random field elements. [`RowBasis`] keeps
//! the span of the rows inserted so far in reduced row-echelon form, which
//! makes a span-membership query for a sparse row cost one sparse
//! combination of at most `nnz(row)` stored rows.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::Rng;

use crate::error::{Error, Result};

/// The field modulus, `2^62 - 57`, the largest prime below `2^62`.
pub const MODULUS: u64 = (1 << 62) - 57;

const LOW62: u128 = (1 << 62) - 1;

/// A residue modulo [`MODULUS`], always kept in `[0, MODULUS)`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub fn new(value: u64) -> Self {
        Self(value % MODULUS)
    }

    pub fn from_i64(value: i64) -> Self {
        let r = value.rem_euclid(MODULUS as i64);
        Self(r as u64)
    }

    /// Uniform draw from the whole field.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self(rng.random_range(0..MODULUS))
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base *= base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(MODULUS - 2))
    }
}

// 2^62 = 57 (mod q), so a 124-bit product folds twice into [0, 2q).
#[inline(always)]
fn reduce_wide(x: u128) -> u64 {
    let y = (x >> 62) * 57 + (x & LOW62);
    let z = ((y >> 62) * 57 + (y & LOW62)) as u64;
    if z >= MODULUS {
        z - MODULUS
    } else {
        z
    }
}

impl Add for FieldElement {
    type Output = Self;
    #[inline(always)]
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Self(if s >= MODULUS { s - MODULUS } else { s })
    }
}

impl Sub for FieldElement {
    type Output = Self;
    #[inline(always)]
    fn sub(self, rhs: Self) -> Self {
        Self(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + MODULUS - rhs.0
        })
    }
}

impl Mul for FieldElement {
    type Output = Self;
    #[inline(always)]
    fn mul(self, rhs: Self) -> Self {
        Self(reduce_wide(self.0 as u128 * rhs.0 as u128))
    }
}

impl Neg for FieldElement {
    type Output = Self;
    #[inline(always)]
    fn neg(self) -> Self {
        Self(if self.0 == 0 { 0 } else { MODULUS - self.0 })
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for FieldElement {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
}

/// Applies `op`; the unary operations ignore `b`.
pub fn field_arith(a: FieldElement, b: FieldElement, op: ArithOp) -> Result<FieldElement> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Neg => -a,
        ArithOp::Inv => a.inv()?,
    })
}

type Entry = (u32, FieldElement);

/// A sparse row of a fixed width. Entries are sorted by column, with no
/// explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseVector {
    width: usize,
    entries: Vec<Entry>,
}

impl SparseVector {
    /// Builds a row from `(column, value)` pairs in any order. Repeated
    /// columns are summed.
    pub fn new<I>(width: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, FieldElement)>,
    {
        let mut raw: Vec<Entry> = Vec::new();
        for (col, val) in entries {
            if col >= width {
                return Err(Error::InvalidArgument(format!(
                    "column {col} out of range for width {width}"
                )));
            }
            raw.push((col as u32, val));
        }
        raw.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<Entry> = Vec::with_capacity(raw.len());
        for (col, val) in raw {
            match merged.last_mut() {
                Some(last) if last.0 == col => last.1 += val,
                _ => merged.push((col, val)),
            }
        }
        merged.retain(|e| !e.1.is_zero());
        Ok(Self {
            width,
            entries: merged,
        })
    }

    pub fn zero(width: usize) -> Self {
        Self {
            width,
            entries: Vec::new(),
        }
    }

    pub fn from_dense(values: &[FieldElement]) -> Self {
        Self {
            width: values.len(),
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, &v)| (c as u32, v))
                .collect(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, col: usize) -> FieldElement {
        self.entries
            .binary_search_by_key(&(col as u32), |e| e.0)
            .map(|i| self.entries[i].1)
            .unwrap_or(FieldElement::ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, FieldElement)> + '_ {
        self.entries.iter().map(|&(c, v)| (c as usize, v))
    }

    pub fn to_dense(&self) -> Vec<FieldElement> {
        let mut out = vec![FieldElement::ZERO; self.width];
        for &(c, v) in &self.entries {
            out[c as usize] = v;
        }
        out
    }
}

/// Outcome of [`RowBasis::try_insert`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Insertion {
    Increased,
    Dependent,
}

const NO_PIVOT: u32 = u32::MAX;

/// Reduced row-echelon basis of the span of all rows inserted so far.
///
/// Each stored row starts with its pivot entry, equal to one, and every
/// pivot column is zero in all other stored rows. Rows are kept sparse: a
/// stored row has nonzeros only at its pivot and at non-pivot columns to the
/// right of it, so the basis gets sparser as the rank approaches the width.
#[derive(Clone, Debug)]
pub struct RowBasis {
    width: usize,
    rows: Vec<Vec<Entry>>,
    pivot_of: Vec<u32>,
    // Rows that may hold a nonzero in a non-pivot column. Entries go stale
    // when a coefficient cancels; readers re-check the row.
    col_rows: Vec<Vec<u32>>,
}

impl RowBasis {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
            pivot_of: vec![NO_PIVOT; width],
            col_rows: vec![Vec::new(); width],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot column of each stored row, in insertion order.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0 as usize).collect()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of[col] != NO_PIVOT
    }

    /// The stored reduced rows, in insertion order.
    pub fn rows(&self) -> impl Iterator<Item = SparseVector> + '_ {
        self.rows.iter().map(|r| SparseVector {
            width: self.width,
            entries: r.clone(),
        })
    }

    /// Visits the stored rows without copying them.
    pub fn for_each_row<F: FnMut(&[(u32, FieldElement)])>(&self, mut f: F) {
        for r in &self.rows {
            f(r);
        }
    }

    fn check_width(&self, row: &SparseVector) -> Result<()> {
        if row.width != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                got: row.width,
            });
        }
        Ok(())
    }

    /// Remainder of `row` after elimination against the basis.
    ///
    /// Pivot columns of a reduced basis are untouched by the other stored
    /// rows, so a single pass over the row's own pivot hits is enough.
    fn remainder(&self, row: &SparseVector) -> Vec<Entry> {
        let mut acc: Vec<Entry> = row
            .entries
            .iter()
            .copied()
            .filter(|&(c, _)| self.pivot_of[c as usize] == NO_PIVOT)
            .collect();
        let mut scratch = Vec::new();
        for &(c, v) in &row.entries {
            let j = self.pivot_of[c as usize];
            if j == NO_PIVOT {
                continue;
            }
            // The pivot entry itself cancels exactly against `v`.
            let stored = &self.rows[j as usize][1..];
            axpy(&acc, -v, stored, &mut scratch);
            std::mem::swap(&mut acc, &mut scratch);
        }
        acc
    }

    /// Reduced form of `row` against the current basis.
    pub fn reduce(&self, row: &SparseVector) -> Result<SparseVector> {
        self.check_width(row)?;
        Ok(SparseVector {
            width: self.width,
            entries: self.remainder(row),
        })
    }

    /// Whether `row` lies in the span of the basis. Never mutates.
    pub fn in_span(&self, row: &SparseVector) -> Result<bool> {
        self.check_width(row)?;
        Ok(self.remainder(row).is_empty())
    }

    /// Adds `row` to the basis if it is independent of the stored rows.
    pub fn try_insert(&mut self, row: &SparseVector) -> Result<Insertion> {
        self.check_width(row)?;
        let rem = self.remainder(row);
        let Some(&(pivot, lead)) = rem.first() else {
            return Ok(Insertion::Dependent);
        };
        let scale = lead.inv()?;
        let new_row: Vec<Entry> = rem.iter().map(|&(c, v)| (c, v * scale)).collect();

        let candidates = std::mem::take(&mut self.col_rows[pivot as usize]);
        let mut scratch = Vec::new();
        let mut gained = Vec::new();
        for j in candidates {
            let stored = &self.rows[j as usize];
            let Ok(pos) = stored.binary_search_by_key(&pivot, |e| e.0) else {
                continue;
            };
            let coef = stored[pos].1;
            gained.clear();
            axpy_tracking(stored, -coef, &new_row, &mut scratch, &mut gained);
            std::mem::swap(&mut self.rows[j as usize], &mut scratch);
            for &c in &gained {
                self.col_rows[c as usize].push(j);
            }
        }

        let idx = self.rows.len() as u32;
        for &(c, _) in &new_row[1..] {
            self.col_rows[c as usize].push(idx);
        }
        self.pivot_of[pivot as usize] = idx;
        self.rows.push(new_row);
        Ok(Insertion::Increased)
    }
}

/// `out = a + coef * b` over sorted sparse entries, dropping zeros.
fn axpy(a: &[Entry], coef: FieldElement, b: &[Entry], out: &mut Vec<Entry>) {
    out.clear();
    out.reserve(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ca, va) = a[i];
        let (cb, vb) = b[j];
        if ca < cb {
            out.push((ca, va));
            i += 1;
        } else if cb < ca {
            out.push((cb, coef * vb));
            j += 1;
        } else {
            let v = va + coef * vb;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|&(c, v)| (c, coef * v)));
}

/// Like [`axpy`], also recording the columns present in `b` but not in `a`.
fn axpy_tracking(
    a: &[Entry],
    coef: FieldElement,
    b: &[Entry],
    out: &mut Vec<Entry>,
    gained: &mut Vec<u32>,
) {
    out.clear();
    out.reserve(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ca, va) = a[i];
        let (cb, vb) = b[j];
        if ca < cb {
            out.push((ca, va));
            i += 1;
        } else if cb < ca {
            out.push((cb, coef * vb));
            gained.push(cb);
            j += 1;
        } else {
            let v = va + coef * vb;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    for &(c, v) in &b[j..] {
        out.push((c, coef * v));
        gained.push(c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fe(v: u64) -> FieldElement {
        FieldElement::new(v)
    }

    fn row(width: usize, vals: &[u64]) -> SparseVector {
        SparseVector::new(width, vals.iter().enumerate().map(|(c, &v)| (c, fe(v)))).unwrap()
    }

    // Extended Euclid over i128, independent of the Fermat inverse.
    fn egcd_inverse(a: u64) -> u64 {
        let (mut old_r, mut r) = (a as i128, MODULUS as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        assert_eq!(old_r, 1);
        old_s.rem_euclid(MODULUS as i128) as u64
    }

    #[test]
    fn modulus_is_a_62_bit_prime() {
        const { assert!(MODULUS >= 1 << 60 && MODULUS < 1 << 62) };
        // Miller-Rabin with the deterministic base set for 64-bit inputs.
        let n = MODULUS;
        let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
        let powmod = |mut b: u64, mut e: u64| {
            let mut acc = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(acc, b);
                }
                b = mulmod(b, b);
                e >>= 1;
            }
            acc
        };
        let (mut d, mut s) = (n - 1, 0);
        while d % 2 == 0 {
            d /= 2;
            s += 1;
        }
        for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            let mut x = powmod(a, d);
            if x == 1 || x == n - 1 {
                continue;
            }
            let mut witness = true;
            for _ in 1..s {
                x = mulmod(x, x);
                if x == n - 1 {
                    witness = false;
                    break;
                }
            }
            assert!(!witness, "{a} witnesses compositeness");
        }
    }

    #[test]
    fn small_arithmetic() {
        assert_eq!(field_arith(fe(1), fe(1), ArithOp::Add).unwrap(), fe(2));
        let a = fe(123_456_789);
        assert_eq!(field_arith(a, a, ArithOp::Sub).unwrap(), FieldElement::ZERO);
        assert_eq!(-FieldElement::ZERO, FieldElement::ZERO);
        assert_eq!(a + (-a), FieldElement::ZERO);
        assert_eq!(fe(MODULUS - 1) + fe(5), fe(4));
        assert_eq!(fe(3) - fe(5), fe(MODULUS - 2));
        assert_eq!(FieldElement::from_i64(-1), fe(MODULUS - 1));
        assert!(matches!(
            field_arith(FieldElement::ZERO, a, ArithOp::Inv),
            Err(Error::ZeroInverse)
        ));
    }

    #[test]
    fn multiplication_matches_wide_remainder() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10_000 {
            let a = FieldElement::random(&mut rng);
            let b = FieldElement::random(&mut rng);
            let expect = (a.value() as u128 * b.value() as u128 % MODULUS as u128) as u64;
            assert_eq!((a * b).value(), expect);
        }
        let top = fe(MODULUS - 1);
        assert_eq!(top * top, FieldElement::ONE);
    }

    #[test]
    fn inverse_agrees_with_extended_euclid() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut checked = 0;
        while checked < 1000 {
            let a = FieldElement::random(&mut rng);
            if a.is_zero() {
                continue;
            }
            let inv = a.inv().unwrap();
            assert_eq!(inv.value(), egcd_inverse(a.value()));
            assert_eq!(a * inv, FieldElement::ONE);
            checked += 1;
        }
    }

    #[test]
    fn sparse_vector_normalizes_entries() {
        let v = SparseVector::new(5, [(3, fe(2)), (1, fe(4)), (3, fe(MODULUS - 2))]).unwrap();
        assert_eq!(v.nnz(), 1);
        assert_eq!(v.get(1), fe(4));
        assert_eq!(v.get(3), FieldElement::ZERO);
        assert!(SparseVector::new(3, [(3, fe(1))]).is_err());
    }

    #[test]
    fn zero_row_is_dependent() {
        let mut b = RowBasis::new(4);
        assert_eq!(b.try_insert(&SparseVector::zero(4)).unwrap(), Insertion::Dependent);
        assert_eq!(b.rank(), 0);
        assert!(b.in_span(&SparseVector::zero(4)).unwrap());
    }

    #[test]
    fn explicit_dependence() {
        let mut b = RowBasis::new(3);
        assert_eq!(b.try_insert(&row(3, &[1, 0, 0])).unwrap(), Insertion::Increased);
        assert_eq!(b.try_insert(&row(3, &[0, 1, 0])).unwrap(), Insertion::Increased);
        assert_eq!(b.try_insert(&row(3, &[1, 1, 0])).unwrap(), Insertion::Dependent);
        assert_eq!(b.rank(), 2);
        assert!(!b.in_span(&row(3, &[0, 0, 1])).unwrap());
    }

    #[test]
    fn width_mismatch_is_rejected() {
        let mut b = RowBasis::new(3);
        assert!(matches!(
            b.try_insert(&SparseVector::zero(4)),
            Err(Error::WidthMismatch { expected: 3, got: 4 })
        ));
        assert!(b.in_span(&SparseVector::zero(2)).is_err());
    }

    #[test]
    fn stored_rows_stay_reduced() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let width = 12;
        let mut b = RowBasis::new(width);
        for _ in 0..30 {
            let mut entries = Vec::new();
            for c in 0..width {
                if rng.random_bool(0.3) {
                    entries.push((c, FieldElement::random(&mut rng)));
                }
            }
            b.try_insert(&SparseVector::new(width, entries).unwrap()).unwrap();
            let pivots = b.pivot_columns();
            for (i, r) in b.rows().enumerate() {
                let lead = r.iter().next().unwrap();
                assert_eq!(lead, (pivots[i], FieldElement::ONE));
                for (k, &p) in pivots.iter().enumerate() {
                    if k != i {
                        assert!(r.get(p).is_zero());
                    }
                }
            }
        }
        assert!(b.rank() <= width);
    }

    #[test]
    fn stored_rows_are_in_span() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let width = 9;
        let mut b = RowBasis::new(width);
        let mut inserted = Vec::new();
        for _ in 0..5 {
            let dense: Vec<_> = (0..width).map(|_| FieldElement::random(&mut rng)).collect();
            let r = SparseVector::from_dense(&dense);
            b.try_insert(&r).unwrap();
            inserted.push(r);
        }
        for r in &inserted {
            assert!(b.in_span(r).unwrap());
        }
        for r in b.rows() {
            assert!(b.in_span(&r).unwrap());
        }
        let fresh: Vec<_> = (0..width).map(|_| FieldElement::random(&mut rng)).collect();
        assert!(!b.in_span(&SparseVector::from_dense(&fresh)).unwrap());
    }
}

//! Exact sparse linear algebra over `Z` and `Z/m`: Smith normal form with
//! unimodular transforms, solving, kernels, and a bit-packed GF(2) rank.
//!
//! Elimination runs on `i128` with overflow checks and transparently restarts
//! on arbitrary-precision integers if any operation would overflow, so results
//! are always exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Sparse integer matrix with arbitrary-precision entries.
///
/// No zero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(1));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for (r, c, v) in self.iter() {
            t.set(c, r, v.clone());
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        // row-major sparse product
        let mut other_rows: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); other.rows];
        for (r, c, v) in other.iter() {
            other_rows[r].push((c, v));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        let mut current_row = usize::MAX;
        let flush = |row: usize, acc: &mut BTreeMap<usize, BigInt>, out: &mut IntMatrix| {
            for (c, v) in std::mem::take(acc) {
                if !v.is_zero() {
                    out.entries.insert((row, c), v);
                }
            }
        };
        for (r, c, v) in self.iter() {
            if r != current_row {
                if current_row != usize::MAX {
                    flush(current_row, &mut acc, &mut out);
                }
                current_row = r;
            }
            for &(oc, ov) in &other_rows[c] {
                *acc.entry(oc).or_insert_with(BigInt::zero) += v * ov;
            }
        }
        if current_row != usize::MAX {
            flush(current_row, &mut acc, &mut out);
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        let mut out = vec![BigInt::zero(); self.rows];
        for (r, c, e) in self.iter() {
            out[r] += e * &v[c];
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.rows];
        for (r, cc, v) in self.iter() {
            if cc == c {
                out[r] = v.clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero_mod(&self, m: u64) -> bool {
        let m = BigInt::from(m);
        self.entries.values().all(|v| (v % &m).is_zero())
    }

    /// Row-major sparse triplets `(row, col, value)`, for debug reports.
    pub fn to_triplets(&self) -> Vec<(usize, usize, String)> {
        self.iter().map(|(r, c, v)| (r, c, v.to_string())).collect()
    }
}

/// Smith normal form `A = U * D * V` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfResult {
    /// Diagonal entries, padded with zeros to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i)).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

// ---------------------------------------------------------------------------
// scalar abstraction: i128 fast path with BigInt fallback
// ---------------------------------------------------------------------------

trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn sc_zero() -> Self;
    fn sc_one() -> Self;
    fn sc_is_zero(&self) -> bool;
    fn sc_neg(&self) -> Self;
    fn sc_checked_add(&self, other: &Self) -> Option<Self>;
    fn sc_checked_mul(&self, other: &Self) -> Option<Self>;
    /// Balanced division: `self = q * d + r` with `|r| <= |d| / 2`
    /// (`r` may equal `|d|/2` for even `|d|`).
    fn sc_balanced_divmod(&self, d: &Self) -> Option<(Self, Self)>;
    fn sc_divides(&self, other: &Self) -> bool;
    fn sc_abs_lt(&self, other: &Self) -> bool;
    fn sc_is_negative(&self) -> bool;
    fn sc_from_bigint(v: &BigInt) -> Option<Self>;
    fn sc_to_bigint(&self) -> BigInt;
}

impl Scalar for i128 {
    fn sc_zero() -> Self {
        0
    }
    fn sc_one() -> Self {
        1
    }
    fn sc_is_zero(&self) -> bool {
        *self == 0
    }
    fn sc_neg(&self) -> Self {
        -*self
    }
    fn sc_checked_add(&self, other: &Self) -> Option<Self> {
        i128::checked_add(*self, *other)
    }
    fn sc_checked_mul(&self, other: &Self) -> Option<Self> {
        i128::checked_mul(*self, *other)
    }
    fn sc_balanced_divmod(&self, d: &Self) -> Option<(Self, Self)> {
        let mut q = self.checked_div(*d)?;
        let mut r = self - q.checked_mul(*d)?;
        let ad = d.checked_abs()?;
        let sign = if *d > 0 { 1 } else { -1 };
        // pull the remainder into (-|d|/2, |d|/2]
        if r.checked_mul(2)? > ad {
            r -= ad;
            q += sign;
        } else if r.checked_mul(2)? <= -ad {
            r += ad;
            q -= sign;
        }
        Some((q, r))
    }
    fn sc_divides(&self, other: &Self) -> bool {
        *self != 0 && other % self == 0
    }
    fn sc_abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn sc_is_negative(&self) -> bool {
        *self < 0
    }
    fn sc_from_bigint(v: &BigInt) -> Option<Self> {
        use num_traits::ToPrimitive;
        v.to_i128()
    }
    fn sc_to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn sc_zero() -> Self {
        BigInt::zero()
    }
    fn sc_one() -> Self {
        BigInt::from(1)
    }
    fn sc_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sc_neg(&self) -> Self {
        -self
    }
    fn sc_checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn sc_checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sc_balanced_divmod(&self, d: &Self) -> Option<(Self, Self)> {
        let (mut q, mut r) = self.div_rem(d);
        let ad = d.abs();
        let sign: BigInt = if d.is_negative() {
            BigInt::from(-1)
        } else {
            BigInt::from(1)
        };
        // truncated remainder has |r| < |d|; shift into (-|d|/2, |d|/2]
        if &r * 2 > ad {
            r -= &ad;
            q += &sign;
        } else if &r * 2 <= -&ad {
            r += &ad;
            q -= &sign;
        }
        debug_assert_eq!(self, &(&q * d + &r));
        Some((q, r))
    }
    fn sc_divides(&self, other: &Self) -> bool {
        !Zero::is_zero(self) && Zero::is_zero(&(other % self))
    }
    fn sc_abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn sc_is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn sc_from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn sc_to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Sparse working matrix: rows as maps, plus per-column occupancy.
struct Work<T> {
    rows: Vec<BTreeMap<usize, T>>,
    col_occ: Vec<std::collections::BTreeSet<usize>>,
}

impl<T: Scalar> Work<T> {
    fn from_matrix(a: &IntMatrix) -> Option<Work<T>> {
        let mut rows: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); a.rows()];
        let mut col_occ = vec![std::collections::BTreeSet::new(); a.cols()];
        for (r, c, v) in a.iter() {
            let t = T::sc_from_bigint(v)?;
            if !t.sc_is_zero() {
                rows[r].insert(c, t);
                col_occ[c].insert(r);
            }
        }
        Some(Work { rows, col_occ })
    }

    fn identity(n: usize) -> Work<T> {
        let mut w = Work {
            rows: vec![BTreeMap::new(); n],
            col_occ: vec![std::collections::BTreeSet::new(); n],
        };
        for i in 0..n {
            w.rows[i].insert(i, T::sc_one());
            w.col_occ[i].insert(i);
        }
        w
    }

    fn get(&self, r: usize, c: usize) -> T {
        self.rows[r].get(&c).cloned().unwrap_or_else(T::sc_zero)
    }

    fn set(&mut self, r: usize, c: usize, v: T) {
        if v.sc_is_zero() {
            self.rows[r].remove(&c);
            self.col_occ[c].remove(&r);
        } else {
            self.rows[r].insert(c, v);
            self.col_occ[c].insert(r);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let cols: Vec<usize> = self.rows[i]
            .keys()
            .chain(self.rows[j].keys())
            .copied()
            .collect();
        self.rows.swap(i, j);
        for c in cols {
            let has_i = self.rows[i].contains_key(&c);
            let has_j = self.rows[j].contains_key(&c);
            if has_i {
                self.col_occ[c].insert(i);
            } else {
                self.col_occ[c].remove(&i);
            }
            if has_j {
                self.col_occ[c].insert(j);
            } else {
                self.col_occ[c].remove(&j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let rows: Vec<usize> = self.col_occ[i].union(&self.col_occ[j]).copied().collect();
        for r in rows {
            let vi = self.rows[r].remove(&i);
            let vj = self.rows[r].remove(&j);
            self.col_occ[i].remove(&r);
            self.col_occ[j].remove(&r);
            if let Some(v) = vi {
                self.rows[r].insert(j, v);
                self.col_occ[j].insert(r);
            }
            if let Some(v) = vj {
                self.rows[r].insert(i, v);
                self.col_occ[i].insert(r);
            }
        }
    }

    /// row_i += c * row_t
    fn add_row_multiple(&mut self, i: usize, t: usize, c: &T) -> Option<()> {
        debug_assert!(i != t);
        let updates: Vec<(usize, T)> = self.rows[t]
            .iter()
            .map(|(&col, v)| Some((col, v.sc_checked_mul(c)?)))
            .collect::<Option<Vec<_>>>()?;
        for (col, add) in updates {
            let cur = self.get(i, col);
            let new = cur.sc_checked_add(&add)?;
            self.set(i, col, new);
        }
        Some(())
    }

    /// col_j += c * col_t
    fn add_col_multiple(&mut self, j: usize, t: usize, c: &T) -> Option<()> {
        debug_assert!(j != t);
        let rows: Vec<usize> = self.col_occ[t].iter().copied().collect();
        for r in rows {
            let add = self.get(r, t).sc_checked_mul(c)?;
            let cur = self.get(r, j);
            let new = cur.sc_checked_add(&add)?;
            self.set(r, j, new);
        }
        Some(())
    }

    fn negate_row(&mut self, i: usize) {
        for v in self.rows[i].values_mut() {
            *v = v.sc_neg();
        }
    }


    fn to_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(rows, cols);
        for (r, row) in self.rows.iter().enumerate() {
            for (&c, v) in row {
                m.set(r, c, v.sc_to_bigint());
            }
        }
        m
    }
}

struct Elimination<T> {
    m: Work<T>,
    /// row-op accumulator: `p * a_original * q = m`
    p: Work<T>,
    /// transpose of `p^{-1}`
    p_inv_t: Work<T>,
    /// transpose of `q`
    q_t: Work<T>,
    q_inv: Work<T>,
    nrows: usize,
    ncols: usize,
}

impl<T: Scalar> Elimination<T> {
    fn new(a: &IntMatrix) -> Option<Elimination<T>> {
        Some(Elimination {
            m: Work::from_matrix(a)?,
            p: Work::identity(a.rows()),
            p_inv_t: Work::identity(a.rows()),
            q_t: Work::identity(a.cols()),
            q_inv: Work::identity(a.cols()),
            nrows: a.rows(),
            ncols: a.cols(),
        })
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.m.swap_rows(i, j);
        self.p.swap_rows(i, j);
        self.p_inv_t.swap_rows(i, j); // swapping columns of p^{-1}
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.m.swap_cols(i, j);
        self.q_t.swap_rows(i, j);
        self.q_inv.swap_rows(i, j);
    }

    /// m: row_i += c * row_t
    fn row_op(&mut self, i: usize, t: usize, c: &T) -> Option<()> {
        self.m.add_row_multiple(i, t, c)?;
        self.p.add_row_multiple(i, t, c)?;
        // p^{-1}: col_t -= c * col_i, i.e. on the transpose: row_t -= c * row_i
        self.p_inv_t.add_row_multiple(t, i, &c.sc_neg())?;
        Some(())
    }

    /// m: col_j += c * col_t
    fn col_op(&mut self, j: usize, t: usize, c: &T) -> Option<()> {
        self.m.add_col_multiple(j, t, c)?;
        // q: col_j += c * col_t, i.e. on the transpose: row_j += c * row_t
        self.q_t.add_row_multiple(j, t, c)?;
        // q^{-1}: row_t -= c * row_j
        self.q_inv.add_row_multiple(t, j, &c.sc_neg())?;
        Some(())
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        self.p.negate_row(i);
        self.p_inv_t.negate_row(i);
    }

    /// Pivot selection per the fixed rule: among active entries (both indices
    /// >= t), the nonzero of minimal absolute value; ties broken by lowest
    /// (row, col).
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        for r in t..self.nrows {
            for (&c, v) in &self.m.rows[r] {
                if c < t {
                    continue;
                }
                match &best {
                    None => best = Some((r, c, v.clone())),
                    Some((br, bc, bv)) => {
                        if v.sc_abs_lt(bv)
                            || (!bv.sc_abs_lt(v) && (r, c) < (*br, *bc))
                        {
                            best = Some((r, c, v.clone()));
                        }
                    }
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }

    fn run(&mut self) -> Option<usize> {
        let bound = self.nrows.min(self.ncols);
        let mut t = 0;
        while t < bound {
            let Some((pr, pc)) = self.find_pivot(t) else {
                break;
            };
            self.swap_rows(t, pr);
            self.swap_cols(t, pc);
            'pivot: loop {
                // clear the pivot column
                loop {
                    let pivot = self.m.get(t, t);
                    debug_assert!(!pivot.sc_is_zero());
                    let candidates: Vec<usize> = self.m.col_occ[t]
                        .iter()
                        .copied()
                        .filter(|&r| r > t)
                        .collect();
                    if candidates.is_empty() {
                        break;
                    }
                    let mut swapped = false;
                    for r in candidates {
                        let v = self.m.get(r, t);
                        if v.sc_is_zero() {
                            continue;
                        }
                        let (q, rem) = v.sc_balanced_divmod(&pivot)?;
                        if !q.sc_is_zero() {
                            self.row_op(r, t, &q.sc_neg())?;
                        }
                        if !rem.sc_is_zero() {
                            // strictly smaller remainder becomes the new pivot
                            self.swap_rows(t, r);
                            swapped = true;
                            break;
                        }
                    }
                    if !swapped {
                        break;
                    }
                }
                // clear the pivot row
                loop {
                    let pivot = self.m.get(t, t);
                    let candidates: Vec<usize> = self.m.rows[t]
                        .keys()
                        .copied()
                        .filter(|&c| c > t)
                        .collect();
                    if candidates.is_empty() {
                        break;
                    }
                    let mut swapped = false;
                    for c in candidates {
                        let v = self.m.get(t, c);
                        if v.sc_is_zero() {
                            continue;
                        }
                        let (q, rem) = v.sc_balanced_divmod(&pivot)?;
                        if !q.sc_is_zero() {
                            self.col_op(c, t, &q.sc_neg())?;
                        }
                        if !rem.sc_is_zero() {
                            self.swap_cols(t, c);
                            swapped = true;
                            break;
                        }
                    }
                    if !swapped {
                        break;
                    }
                }
                // column may have been refilled by column swaps
                if self.m.col_occ[t].iter().any(|&r| r > t) {
                    continue 'pivot;
                }
                // enforce divisibility of the remaining block by the pivot
                let pivot = self.m.get(t, t);
                let mut fix: Option<usize> = None;
                'scan: for r in (t + 1)..self.nrows {
                    for (&c, v) in &self.m.rows[r] {
                        if c > t && !pivot.sc_divides(v) {
                            fix = Some(r);
                            break 'scan;
                        }
                    }
                }
                match fix {
                    Some(r) => {
                        // fold the offending row into the pivot row; the next
                        // sweep strictly shrinks the pivot
                        self.row_op(t, r, &T::sc_one())?;
                    }
                    None => break 'pivot,
                }
            }
            t += 1;
        }
        // normalize diagonal signs
        for i in 0..t {
            if self.m.get(i, i).sc_is_negative() {
                self.negate_row(i);
            }
        }
        Some(t)
    }

    fn into_result(self) -> SnfResult {
        let d = self.m.to_matrix(self.nrows, self.ncols);
        let u = self.p_inv_t.to_matrix(self.nrows, self.nrows).transpose();
        let u_inv = self.p.to_matrix(self.nrows, self.nrows);
        let v = self.q_inv.to_matrix(self.ncols, self.ncols);
        let v_inv = self.q_t.to_matrix(self.ncols, self.ncols).transpose();
        SnfResult {
            u,
            d,
            v,
            u_inv,
            v_inv,
        }
    }
}

/// Smith normal form of an integer matrix: `A = U * D * V` with unimodular
/// `U`, `V`, nonnegative diagonal `D` and divisibility chain
/// `d_1 | d_2 | ...`. Deterministic: pivots are chosen by minimal absolute
/// value with ties broken by lowest (row, col).
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    if let Some(mut elim) = Elimination::<i128>::new(a) {
        if elim.run().is_some() {
            return elim.into_result();
        }
    }
    // fall back to arbitrary precision; this cannot fail
    let mut elim = Elimination::<BigInt>::new(a).expect("BigInt conversion is total");
    elim.run().expect("BigInt elimination cannot overflow");
    elim.into_result()
}

/// Solve `A x = b` over the ring (`Z` or `Z/m`).
///
/// Returns the deterministic solution obtained by back-substitution through
/// the Smith normal form with all free parameters set to zero, or `None` when
/// no solution exists.
pub fn solve_mod(a: &IntMatrix, b: &[BigInt], ring: Ring) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "solve_mod: matrix has {} rows, vector has {}",
            a.rows(),
            b.len()
        )));
    }
    match ring {
        Ring::Z => {
            let snf = smith_normal_form(a);
            Ok(solve_via_snf(&snf, b))
        }
        Ring::Mod(m) => {
            // lift to Z by adjoining m * identity columns
            let mut aug = IntMatrix::zero(a.rows(), a.cols() + a.rows());
            for (r, c, v) in a.iter() {
                aug.set(r, c, v.clone());
            }
            for r in 0..a.rows() {
                aug.set(r, a.cols() + r, BigInt::from(m));
            }
            let snf = smith_normal_form(&aug);
            let sol = solve_via_snf(&snf, b);
            Ok(sol.map(|x| {
                let m = BigInt::from(m);
                x[..a.cols()]
                    .iter()
                    .map(|v| v.mod_floor(&m))
                    .collect()
            }))
        }
    }
}

/// Back-substitution through a precomputed SNF. Free parameters are zero.
pub(crate) fn solve_via_snf(snf: &SnfResult, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = snf.u_inv.mul_vec(b);
    let diag = snf.diagonal();
    let cols = snf.v.rows();
    let mut y = vec![BigInt::zero(); cols];
    for (i, ci) in c.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !ci.is_zero() {
                return None;
            }
        } else {
            let (q, r) = ci.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.v_inv.mul_vec(&y))
}

/// A generating set for `{x : A x = 0}` over the ring, as matrix columns.
///
/// Over `Z/2^n` this is the standard SNF-derived set: the scaled columns
/// `(m / gcd(d_i, m)) * V^{-1} e_i` together with the free columns of
/// `V^{-1}`.
pub fn kernel_mod(a: &IntMatrix, ring: Ring) -> IntMatrix {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let cols = a.cols();
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    match ring {
        Ring::Z => {
            for i in snf.rank()..cols {
                gens.push(snf.v_inv.column(i));
            }
        }
        Ring::Mod(m) => {
            let m_big = BigInt::from(m);
            for i in 0..cols {
                let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
                let g = d.gcd(&m_big); // gcd(0, m) = m
                let scale = &m_big / &g;
                if scale == m_big {
                    // unit diagonal entry: only the zero vector
                    continue;
                }
                let col = snf.v_inv.column(i);
                gens.push(col.iter().map(|v| (v * &scale).mod_floor(&m_big)).collect());
            }
        }
    }
    let mut out = IntMatrix::zero(cols, gens.len());
    for (j, g) in gens.iter().enumerate() {
        for (i, v) in g.iter().enumerate() {
            if !v.is_zero() {
                out.set(i, j, v.clone());
            }
        }
    }
    out
}

/// Rank of a matrix over GF(2).
///
/// Uses dense bit-packed rows when the mod-2 density exceeds 5% (or the
/// matrix is small) and sparse elimination otherwise.
pub fn rank_gf2(a: &IntMatrix) -> usize {
    let rows = a.rows();
    let cols = a.cols();
    if rows == 0 || cols == 0 {
        return 0;
    }
    let two = BigInt::from(2);
    let nnz2 = a.iter().filter(|(_, _, v)| !(*v % &two).is_zero()).count();
    let density = nnz2 as f64 / (rows as f64 * cols as f64);
    if density > 0.05 || rows * cols <= 64 * 64 {
        rank_gf2_dense(a)
    } else {
        rank_gf2_sparse(a)
    }
}

fn rank_gf2_dense(a: &IntMatrix) -> usize {
    let words = a.cols().div_ceil(64);
    let two = BigInt::from(2);
    let mut rows: Vec<Vec<u64>> = vec![vec![0u64; words]; a.rows()];
    for (r, c, v) in a.iter() {
        if !(v % &two).is_zero() {
            rows[r][c / 64] ^= 1u64 << (c % 64);
        }
    }
    let mut rank = 0;
    for c in 0..a.cols() {
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if row[w] & b != 0 {
                for (x, p) in row.iter_mut().zip(prow.iter()) {
                    *x ^= p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rank_gf2_sparse(a: &IntMatrix) -> usize {
    use std::collections::BTreeSet;
    let two = BigInt::from(2);
    let mut rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.rows()];
    for (r, c, v) in a.iter() {
        if !(v % &two).is_zero() {
            rows[r].insert(c);
        }
    }
    // column -> pivot row
    let mut pivot_of: std::collections::HashMap<usize, BTreeSet<usize>> =
        std::collections::HashMap::new();
    let mut rank = 0;
    for r in 0..a.rows() {
        let mut row = std::mem::take(&mut rows[r]);
        loop {
            let Some(&lead) = row.iter().next() else {
                break;
            };
            match pivot_of.get(&lead) {
                None => {
                    pivot_of.insert(lead, row);
                    rank += 1;
                    break;
                }
                Some(p) => {
                    row = row.symmetric_difference(p).copied().collect();
                }
            }
        }
    }
    rank
}

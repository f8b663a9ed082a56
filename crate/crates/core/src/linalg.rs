//! Exact integer and rational matrix kernels.
//!
//! Nothing here touches floating point. Determinants use fraction-free
//! (Bareiss) elimination, run in `i128` while the intermediate minors fit and
//! continued in `BigInt` from the same state once they do not.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational, always normalized with a positive denominator.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.row_vecs()).finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        IntMatrix { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        assert!(rows.iter().all(|r| r.as_ref().len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| rows[i].as_ref()[j].into())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    /// Panics if the entry does not fit in `i64`.
    pub fn get_i64(&self, i: usize, j: usize) -> i64 {
        self.get(i, j).to_i64().expect("entry fits in i64")
    }

    pub fn set(&mut self, i: usize, j: usize, v: impl Into<BigInt>) {
        self.data[i * self.cols + j] = v.into();
    }

    pub fn entries(&self) -> impl Iterator<Item = &BigInt> {
        self.data.iter()
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// `P M P^T` for the permutation sending index `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert!(self.is_square() && perm.len() == self.rows);
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(perm[i], perm[j], self.get(i, j).clone());
            }
        }
        out
    }

    /// Matrix with row `r` and column `c` deleted.
    pub fn minor_matrix(&self, r: usize, c: usize) -> Self {
        Self::from_fn(self.rows - 1, self.cols - 1, |i, j| {
            self.get(i + usize::from(i >= r), j + usize::from(j >= c)).clone()
        })
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::Shape { rows: self.rows, cols: self.cols })
        }
    }

    fn to_i128(&self) -> Option<Vec<i128>> {
        self.data.iter().map(ToPrimitive::to_i128).collect()
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        IntMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols)
                .filter(|&k| !self.get(i, k).is_zero())
                .map(|k| self.get(i, k) * rhs.get(k, j))
                .sum()
        })
    }
}

/// Bareiss elimination state, shared between the `i128` and `BigInt` runs.
/// During step `step`, rows `step + 1 .. row` are already updated.
struct Elimination<T> {
    n: usize,
    a: Vec<T>,
    step: usize,
    row: usize,
    prev: T,
    negate: bool,
}

enum Outcome {
    Det(BigInt),
    /// Overflowed `i128` before finishing; resume in `BigInt`.
    Overflow(Elimination<BigInt>),
}

/// Swaps a nonzero pivot into place at the start of a step. Returns false
/// when the column below the diagonal is entirely zero.
fn select_pivot<T>(st: &mut Elimination<T>, is_zero: impl Fn(&T) -> bool) -> bool {
    let (n, k) = (st.n, st.step);
    if !is_zero(&st.a[k * n + k]) {
        return true;
    }
    match (k + 1..n).find(|&i| !is_zero(&st.a[i * n + k])) {
        Some(i) => {
            for j in 0..n {
                st.a.swap(k * n + j, i * n + j);
            }
            st.negate = !st.negate;
            true
        }
        None => false,
    }
}

fn bareiss_i128(n: usize, a: Vec<i128>) -> Outcome {
    let mut st = Elimination { n, a, step: 0, row: 1, prev: 1i128, negate: false };
    let mut scratch = vec![0i128; n];
    while st.step + 1 < n {
        let k = st.step;
        if st.row == k + 1 && !select_pivot(&mut st, |x| *x == 0) {
            return Outcome::Det(BigInt::zero());
        }
        let pivot = st.a[k * n + k];
        while st.row < n {
            let i = st.row;
            let lead = st.a[i * n + k];
            // Stage the row so an overflow leaves it untouched.
            for j in k + 1..n {
                let v = st.a[i * n + j]
                    .checked_mul(pivot)
                    .and_then(|x| lead.checked_mul(st.a[k * n + j]).and_then(|y| x.checked_sub(y)));
                match v {
                    Some(v) => scratch[j] = v / st.prev,
                    None => return Outcome::Overflow(widen(st)),
                }
            }
            st.a[i * n + (k + 1)..(i + 1) * n].copy_from_slice(&scratch[k + 1..n]);
            st.a[i * n + k] = 0;
            st.row += 1;
        }
        st.prev = pivot;
        st.step += 1;
        st.row = st.step + 1;
    }
    let d = BigInt::from(st.a[n * n - 1]);
    Outcome::Det(if st.negate { -d } else { d })
}

fn widen(st: Elimination<i128>) -> Elimination<BigInt> {
    Elimination {
        n: st.n,
        a: st.a.into_iter().map(BigInt::from).collect(),
        step: st.step,
        row: st.row,
        prev: BigInt::from(st.prev),
        negate: st.negate,
    }
}

fn bareiss_big(mut st: Elimination<BigInt>) -> BigInt {
    let n = st.n;
    while st.step + 1 < n {
        let k = st.step;
        if st.row == k + 1 && !select_pivot(&mut st, Zero::is_zero) {
            return BigInt::zero();
        }
        let pivot = st.a[k * n + k].clone();
        for i in st.row..n {
            let lead = std::mem::take(&mut st.a[i * n + k]);
            for j in k + 1..n {
                let mut v = &st.a[i * n + j] * &pivot;
                if !lead.is_zero() {
                    v -= &lead * &st.a[k * n + j];
                }
                st.a[i * n + j] = if st.prev.is_one() { v } else { v / &st.prev };
            }
        }
        st.prev = pivot;
        st.step += 1;
        st.row = st.step + 1;
    }
    let d = st.a[n * n - 1].clone();
    if st.negate {
        -d
    } else {
        d
    }
}

/// Exact determinant. The 0x0 determinant is 1.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let outcome = match m.to_i128() {
        Some(a) => bareiss_i128(n, a),
        None => Outcome::Overflow(Elimination {
            n,
            a: m.data.clone(),
            step: 0,
            row: 1,
            prev: BigInt::one(),
            negate: false,
        }),
    };
    Ok(match outcome {
        Outcome::Det(d) => d,
        Outcome::Overflow(st) => bareiss_big(st),
    })
}

/// Exact inverse of a unimodular matrix, via fraction-free Gauss-Jordan on
/// `[M | I]`. Fails with the actual determinant when `|det(M)| != 1`.
pub fn adjugate_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    let n = m.require_square()?;
    let w = 2 * n;
    let mut a = vec![BigInt::zero(); n * w];
    for i in 0..n {
        for j in 0..n {
            a[i * w + j] = m.get(i, j).clone();
        }
        a[i * w + n + i] = BigInt::one();
    }
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        if a[k * w + k].is_zero() {
            match (k + 1..n).find(|&i| !a[i * w + k].is_zero()) {
                Some(i) => {
                    for j in 0..w {
                        a.swap(k * w + j, i * w + j);
                    }
                    negate = !negate;
                }
                None => return Err(Error::Unimodularity { det: BigInt::zero() }),
            }
        }
        let pivot = a[k * w + k].clone();
        for i in (0..n).filter(|&i| i != k) {
            let lead = a[i * w + k].clone();
            for j in (0..w).filter(|&j| j != k) {
                let mut v = &a[i * w + j] * &pivot;
                if !lead.is_zero() {
                    v -= &lead * &a[k * w + j];
                }
                a[i * w + j] = v / &prev;
            }
            a[i * w + k] = BigInt::zero();
        }
        prev = pivot;
    }
    // Every diagonal entry now equals det of the row-permuted matrix and the
    // right half is its adjugate.
    let det = if negate { -prev.clone() } else { prev.clone() };
    if !det.abs().is_one() {
        return Err(Error::Unimodularity { det });
    }
    let inv = IntMatrix::from_fn(n, n, |i, j| &a[i * w + n + j] * &prev);
    debug_assert_eq!(&inv * m, IntMatrix::identity(n));
    Ok(inv)
}

/// Coefficients of `det(xI - M)` in ascending degree; the last entry is 1.
/// Faddeev-LeVerrier with exact integer division.
pub fn charpoly(m: &IntMatrix) -> Result<Vec<BigInt>> {
    let n = m.require_square()?;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut acc = IntMatrix::zeros(n, n);
    for k in 1..=n {
        // acc <- M * acc + c_{n-k+1} I
        let mut next = m * &acc;
        for i in 0..n {
            let d = next.get(i, i) + &coeffs[n - k + 1];
            next.set(i, i, d);
        }
        let tr = (m * &next).trace();
        let (q, r) = tr.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        coeffs[n - k] = -q;
        acc = next;
    }
    Ok(coeffs)
}

/// Default upper bound on the size accepted by [`permanent`].
pub const PERMANENT_LIMIT: usize = 20;

/// Ryser's formula with Gray-code column toggling.
pub fn permanent(m: &IntMatrix) -> Result<BigInt> {
    let n = m.require_square()?;
    if n > PERMANENT_LIMIT {
        return Err(Error::Resource { what: "permanent size", limit: PERMANENT_LIMIT, actual: n });
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let small: Option<Vec<i64>> = m.data.iter().map(ToPrimitive::to_i64).collect();
    if let Some(a) = small {
        if let Some(p) = ryser_i128(n, &a) {
            return Ok(p);
        }
    }
    Ok(ryser_big(m))
}

fn ryser_i128(n: usize, a: &[i64]) -> Option<BigInt> {
    let mut sums = vec![0i128; n];
    let mut total: i128 = 0;
    let mut gray: u64 = 0;
    for step in 1u64..(1u64 << n) {
        let col = step.trailing_zeros() as usize;
        let adding = gray & (1 << col) == 0;
        gray ^= 1 << col;
        for (i, s) in sums.iter_mut().enumerate() {
            let x = a[i * n + col] as i128;
            *s = if adding { s.checked_add(x)? } else { s.checked_sub(x)? };
        }
        let mut prod: i128 = 1;
        for s in &sums {
            prod = prod.checked_mul(*s)?;
            if prod == 0 {
                break;
            }
        }
        if gray.count_ones() % 2 == 1 {
            total = total.checked_sub(prod)?;
        } else {
            total = total.checked_add(prod)?;
        }
    }
    let total = BigInt::from(total);
    Some(if n % 2 == 1 { -total } else { total })
}

fn ryser_big(m: &IntMatrix) -> BigInt {
    let n = m.rows;
    let mut sums = vec![BigInt::zero(); n];
    let mut total = BigInt::zero();
    let mut gray: u64 = 0;
    for step in 1u64..(1u64 << n) {
        let col = step.trailing_zeros() as usize;
        let adding = gray & (1 << col) == 0;
        gray ^= 1 << col;
        for (i, s) in sums.iter_mut().enumerate() {
            if adding {
                *s += m.get(i, col);
            } else {
                *s -= m.get(i, col);
            }
        }
        let prod: BigInt = sums.iter().product();
        if gray.count_ones() % 2 == 1 {
            total -= prod;
        } else {
            total += prod;
        }
    }
    if n % 2 == 1 {
        -total
    } else {
        total
    }
}

/// `det(I - zM)` for rational `z`, as `det(qI - pM) / q^n` with `z = p/q`.
pub fn det_rational_shift(m: &IntMatrix, z: &Rat) -> Result<Rat> {
    let n = m.require_square()?;
    let (p, q) = (z.numer(), z.denom());
    let shifted = shifted_matrix(m, p, q);
    Ok(Rat::new(det(&shifted)?, num_traits::pow(q.clone(), n)))
}

/// Second route for [`det_rational_shift`]: `z^n p(1/z)` from the
/// characteristic polynomial `p`.
pub fn det_rational_shift_via_charpoly(m: &IntMatrix, z: &Rat) -> Result<Rat> {
    // sum_k c_k z^(n-k): Horner over the coefficients in ascending order.
    let c = charpoly(m)?;
    Ok(c.iter().fold(Rat::zero(), |acc, ck| acc * z + Rat::from_integer(ck.clone())))
}

/// `qI - pM`.
pub(crate) fn shifted_matrix(m: &IntMatrix, p: &BigInt, q: &BigInt) -> IntMatrix {
    IntMatrix::from_fn(m.rows, m.cols, |i, j| {
        let off = -(p * m.get(i, j));
        if i == j {
            off + q
        } else {
            off
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Cofactor expansion along the first row.
    fn cofactor_det(m: &IntMatrix) -> BigInt {
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        (0..n)
            .map(|j| {
                let c = m.get(0, j) * cofactor_det(&m.minor_matrix(0, j));
                if j % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    /// Sum over all permutations of the entry products.
    fn brute_permanent(m: &IntMatrix) -> BigInt {
        fn rec(m: &IntMatrix, row: usize, used: &mut Vec<bool>) -> BigInt {
            if row == m.rows() {
                return BigInt::one();
            }
            let mut s = BigInt::zero();
            for j in 0..m.cols() {
                if !used[j] && !m.get(row, j).is_zero() {
                    used[j] = true;
                    s += m.get(row, j) * rec(m, row + 1, used);
                    used[j] = false;
                }
            }
            s
        }
        rec(m, 0, &mut vec![false; m.cols()])
    }

    fn matrix(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(lo..=hi, n * n).prop_map(move |v| {
            IntMatrix::from_fn(n, n, |i, j| big(v[i * n + j]))
        })
    }

    fn sized_matrix(max: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
        (0..=max).prop_flat_map(move |n| matrix(n, lo, hi))
    }

    #[test]
    fn fixed_determinants() {
        assert_eq!(det(&IntMatrix::zeros(0, 0)).unwrap(), big(1));
        assert_eq!(det(&IntMatrix::from_rows(&[[0, 1], [1, 0]])).unwrap(), big(-1));
        assert_eq!(det(&IntMatrix::from_rows(&[[2, 3], [4, 6]])).unwrap(), big(0));
        assert!(matches!(
            det(&IntMatrix::zeros(2, 3)),
            Err(Error::Shape { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn overflow_resumes_in_bigint() {
        // Entries near 2^40 push the first Bareiss products past i128.
        let n = 6;
        let m = IntMatrix::from_fn(n, n, |i, j| {
            BigInt::from(1i64 << 40) * BigInt::from((i * 7 + j * 3) % 11) + BigInt::from((i + 2 * j) as i64)
        });
        assert_eq!(det(&m).unwrap(), cofactor_det(&m));
        let huge = IntMatrix::from_fn(3, 3, |i, j| BigInt::from(10).pow(40) * big((i * 3 + j) as i64 % 4) + big(i as i64));
        assert_eq!(det(&huge).unwrap(), cofactor_det(&huge));
    }

    #[test]
    fn inverse_cases() {
        let id = IntMatrix::identity(4);
        assert_eq!(adjugate_inverse(&id).unwrap(), id);
        let e = IntMatrix::from_rows(&[[1, 1], [0, 1]]);
        assert_eq!(adjugate_inverse(&e).unwrap(), IntMatrix::from_rows(&[[1, -1], [0, 1]]));
        let p = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert_eq!(adjugate_inverse(&p).unwrap(), p);
        match adjugate_inverse(&IntMatrix::from_rows(&[[2, 0], [0, 1]])) {
            Err(Error::Unimodularity { det }) => assert_eq!(det, big(2)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            adjugate_inverse(&IntMatrix::from_rows(&[[1, 1], [1, 1]])),
            Err(Error::Unimodularity { .. })
        ));
    }

    #[test]
    fn charpoly_cases() {
        let z = charpoly(&IntMatrix::zeros(3, 3)).unwrap();
        assert_eq!(z, vec![big(0), big(0), big(0), big(1)]);
        // Path on three vertices: x^3 - 2x.
        let p3 = IntMatrix::from_rows(&[[0, 1, 0], [1, 0, 1], [0, 1, 0]]);
        assert_eq!(charpoly(&p3).unwrap(), vec![big(0), big(-2), big(0), big(1)]);
        assert_eq!(charpoly(&IntMatrix::zeros(0, 0)).unwrap(), vec![big(1)]);
    }

    #[test]
    fn permanent_cases() {
        let ones = |n: usize| IntMatrix::from_fn(n, n, |_, _| big(1));
        assert_eq!(permanent(&ones(3)).unwrap(), big(6));
        let mut adj = ones(4);
        for i in 0..4 {
            adj.set(i, i, 0);
        }
        assert_eq!(permanent(&adj).unwrap(), big(9));
        assert_eq!(permanent(&IntMatrix::zeros(0, 0)).unwrap(), big(1));
        assert!(matches!(
            permanent(&IntMatrix::zeros(21, 21)),
            Err(Error::Resource { .. })
        ));
        let wide = IntMatrix::from_fn(3, 3, |i, j| BigInt::from(10).pow(30) + big((i + j) as i64));
        assert_eq!(permanent(&wide).unwrap(), brute_permanent(&wide));
    }

    #[test]
    fn rational_shift_routes_agree() {
        let c4 = IntMatrix::from_rows(&[[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]]);
        for z in [rat(0, 1), rat(1, 1), rat(-1, 1), rat(3, 7), rat(-5, 2)] {
            assert_eq!(
                det_rational_shift(&c4, &z).unwrap(),
                det_rational_shift_via_charpoly(&c4, &z).unwrap(),
                "z = {z}"
            );
        }
        assert_eq!(det_rational_shift(&c4, &rat(0, 1)).unwrap(), rat(1, 1));
        let mut f = c4.clone();
        for i in 0..4 {
            f.set(i, i, 1);
        }
        assert_eq!(
            det_rational_shift(&c4, &rat(-1, 1)).unwrap(),
            Rat::from_integer(det(&f).unwrap())
        );
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(m in sized_matrix(6, -4, 4)) {
            prop_assert_eq!(det(&m).unwrap(), cofactor_det(&m));
        }

        #[test]
        fn det_invariant_under_permutation_similarity(
            m in matrix(7, -2, 2),
            perm in Just((0..7).collect::<Vec<usize>>()).prop_shuffle(),
        ) {
            prop_assert_eq!(det(&m).unwrap(), det(&m.permuted(&perm)).unwrap());
        }

        #[test]
        fn inverse_is_exact_when_it_returns(m in sized_matrix(5, -1, 1)) {
            if let Ok(inv) = adjugate_inverse(&m) {
                prop_assert_eq!(&inv * &m, IntMatrix::identity(m.rows()));
                prop_assert_eq!(&m * &inv, IntMatrix::identity(m.rows()));
            } else {
                prop_assert!(!det(&m).unwrap().abs().is_one());
            }
        }

        #[test]
        fn charpoly_constant_term(m in sized_matrix(6, -3, 3)) {
            let c = charpoly(&m).unwrap();
            let n = m.rows();
            let sign = if n % 2 == 0 { big(1) } else { big(-1) };
            prop_assert_eq!(&c[0], &(sign * det(&m).unwrap()));
            prop_assert_eq!(&c[n], &big(1));
        }

        #[test]
        fn ryser_matches_brute_force(m in sized_matrix(7, 0, 1)) {
            prop_assert_eq!(permanent(&m).unwrap(), brute_permanent(&m));
        }

        #[test]
        fn ryser_with_signed_entries(m in sized_matrix(5, -3, 3)) {
            prop_assert_eq!(permanent(&m).unwrap(), brute_permanent(&m));
        }
    }
}

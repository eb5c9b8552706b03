//! Exact dense linear algebra over big integers and rationals.
//!
//! Everything here is exact: determinants use fraction-free (Bareiss)
//! elimination, Pfaffians use skew-symmetric elimination over the rationals,
//! and Smith normal forms are computed with unimodular row and column
//! operations that are tracked so the factorisation can be checked.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::poly::Polynomial;

/// Default soft limit on matrix dimension.
pub const SOFT_LIMIT: usize = 600;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Clone + Zero> Matrix<T>
where
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    /// Matrix product; panics on dimension mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        let cell = &mut out[(i, j)];
                        *cell = cell.clone() + p;
                    }
                }
            }
        }
        out
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Converts an integer matrix to a rational one.
pub fn to_rational(m: &IntMatrix) -> RatMatrix {
    m.map(|x| BigRational::from_integer(x.clone()))
}

/// Returns the integer matrix if every entry of `m` is integral.
pub fn to_integer(m: &RatMatrix) -> Option<IntMatrix> {
    if m.data.iter().all(|x| x.is_integer()) {
        Some(m.map(|x| x.to_integer()))
    } else {
        None
    }
}

fn check_square<T>(m: &Matrix<T>, what: &str) -> Result<()> {
    if m.rows != m.cols {
        return domain(format!("{what} needs a square matrix, got {}x{}", m.rows, m.cols));
    }
    Ok(())
}

/// Determinant of an integer matrix by Bareiss fraction-free elimination.
///
/// Zero entries are skipped: for the sparse band-like matrices produced by
/// lattice regions this avoids most of the cubic cost.
pub fn det_int(m: &IntMatrix) -> BigInt {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            // Prefer the sparsest available pivot row to limit fill-in.
            let pivot = (k + 1..n)
                .filter(|&i| !a[(i, k)].is_zero())
                .min_by_key(|&i| (k..n).filter(|&j| !a[(i, j)].is_zero()).count());
            match pivot {
                Some(p) => {
                    a.swap_rows(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        let pivot = a[(k, k)].clone();
        let pivot_row: Vec<(usize, BigInt)> =
            (k + 1..n).filter(|&j| !a[(k, j)].is_zero()).map(|j| (j, a[(k, j)].clone())).collect();
        for i in k + 1..n {
            let aik = std::mem::take(&mut a[(i, k)]);
            let trivial_prev = prev.is_one();
            if aik.is_zero() {
                // Entries only get scaled by pivot/prev.
                if !(pivot == prev) {
                    for j in k + 1..n {
                        let x = &mut a[(i, j)];
                        if !x.is_zero() {
                            let v = &*x * &pivot;
                            *x = if trivial_prev { v } else { v / &prev };
                        }
                    }
                }
                continue;
            }
            // a_ij <- (pivot*a_ij - a_ik*a_kj) / prev
            let mut touched = vec![false; n];
            for (j, akj) in &pivot_row {
                touched[*j] = true;
                let x = &mut a[(i, *j)];
                let v = &*x * &pivot - &aik * akj;
                *x = if trivial_prev { v } else { v / &prev };
            }
            if !(pivot == prev) {
                for j in k + 1..n {
                    if !touched[j] {
                        let x = &mut a[(i, j)];
                        if !x.is_zero() {
                            let v = &*x * &pivot;
                            *x = if trivial_prev { v } else { v / &prev };
                        }
                    }
                }
            }
        }
        prev = pivot;
    }
    sign * a[(n - 1, n - 1)].clone()
}

/// Clears denominators row by row: returns an integer matrix `M` and the
/// product of the row multipliers `d`, with `m = M / d` row-wise.
fn clear_row_denominators(m: &RatMatrix) -> (IntMatrix, Vec<BigInt>) {
    let mut scales = Vec::with_capacity(m.rows);
    let mut out = IntMatrix::zeros(m.rows, m.cols);
    for i in 0..m.rows {
        let l = m.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        for j in 0..m.cols {
            let x = &m[(i, j)];
            out[(i, j)] = x.numer() * (&l / x.denom());
        }
        scales.push(l);
    }
    (out, scales)
}

/// Exact determinant of a rational matrix.
pub fn det(m: &RatMatrix) -> Result<BigRational> {
    check_square(m, "determinant")?;
    let (im, scales) = clear_row_denominators(m);
    let d = det_int(&im);
    let s = scales.iter().fold(BigInt::one(), |acc, x| acc * x);
    Ok(BigRational::new(d, s))
}

/// Determinant by cofactor expansion along the first row. Exponential; used
/// as an independent reference for small matrices.
pub fn det_cofactor(m: &RatMatrix) -> BigRational {
    assert!(m.is_square());
    fn rec(m: &RatMatrix, rows: &[usize], cols: &mut Vec<usize>) -> BigRational {
        if rows.is_empty() {
            return BigRational::one();
        }
        let r = rows[0];
        let mut total = BigRational::zero();
        for idx in 0..cols.len() {
            let c = cols[idx];
            let x = &m[(r, c)];
            if x.is_zero() {
                continue;
            }
            cols.remove(idx);
            let minor = rec(m, &rows[1..], cols);
            cols.insert(idx, c);
            let term = x * minor;
            if idx % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }
    let rows: Vec<usize> = (0..m.rows).collect();
    let mut cols: Vec<usize> = (0..m.cols).collect();
    rec(m, &rows, &mut cols)
}

fn check_skew(s: &RatMatrix) -> Result<()> {
    check_square(s, "Pfaffian")?;
    for i in 0..s.rows {
        for j in 0..=i {
            if s[(i, j)] != -s[(j, i)].clone() {
                return domain(format!("matrix is not skew-symmetric at ({i},{j})"));
            }
        }
    }
    Ok(())
}

/// Pfaffian of a skew-symmetric rational matrix, by skew elimination.
///
/// In debug builds (and for modest sizes) the identity Pf² = det is asserted.
pub fn pfaffian(s: &RatMatrix) -> Result<BigRational> {
    check_skew(s)?;
    let n = s.rows;
    if n % 2 == 1 {
        return Ok(BigRational::zero());
    }
    let pf = pfaffian_unchecked(s);
    if cfg!(debug_assertions) && n <= 40 {
        let d = det(s)?;
        assert_eq!(&pf * &pf, d, "Pf^2 != det");
    }
    Ok(pf)
}

fn pfaffian_unchecked(s: &RatMatrix) -> BigRational {
    let n = s.rows;
    let mut a = s.clone();
    let mut pf = BigRational::one();
    let mut k = 0;
    while k < n {
        // Find a nonzero entry in row k to the right of the diagonal.
        let Some(p) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) else {
            return BigRational::zero();
        };
        if p != k + 1 {
            a.swap_rows(k + 1, p);
            a.swap_cols(k + 1, p);
            pf = -pf;
        }
        let piv = a[(k, k + 1)].clone();
        pf *= &piv;
        // S' <- S' + (v u^T - u v^T) / piv where u = row k, v = row k+1.
        let u: Vec<(usize, BigRational)> =
            (k + 2..n).filter(|&j| !a[(k, j)].is_zero()).map(|j| (j, &a[(k, j)] / &piv)).collect();
        let v: Vec<(usize, BigRational)> =
            (k + 2..n).filter(|&j| !a[(k + 1, j)].is_zero()).map(|j| (j, a[(k + 1, j)].clone())).collect();
        for (i, vi) in &v {
            for (j, uj) in &u {
                let t = vi * uj;
                a[(*i, *j)] += &t;
                a[(*j, *i)] -= &t;
            }
        }
        k += 2;
    }
    pf
}

/// Exact inverse of a nonsingular rational matrix.
///
/// Denominators are cleared row by row and the integer system is solved by
/// fraction-free Gauss–Jordan elimination, which yields `det * inverse`
/// without intermediate fractions.
pub fn invert(m: &RatMatrix) -> Result<RatMatrix> {
    check_square(m, "inverse")?;
    let n = m.rows;
    let (im, scales) = clear_row_denominators(m);
    // Augmented [M | I].
    let w = 2 * n;
    let mut a = IntMatrix::zeros(n, w);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = im[(i, j)].clone();
        }
        a[(i, n + i)] = BigInt::one();
    }
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(p) => a.swap_rows(k, p),
                None => return domain("matrix is singular"),
            }
        }
        let pivot = a[(k, k)].clone();
        let pivot_row: Vec<(usize, BigInt)> =
            (0..w).filter(|&j| j != k && !a[(k, j)].is_zero()).map(|j| (j, a[(k, j)].clone())).collect();
        for i in 0..n {
            if i == k {
                continue;
            }
            let aik = a[(i, k)].clone();
            let mut touched = vec![false; w];
            for (j, akj) in &pivot_row {
                touched[*j] = true;
                let x = &mut a[(i, *j)];
                *x = (&*x * &pivot - &aik * akj) / &prev;
            }
            for j in 0..w {
                if j != k && !touched[j] {
                    let x = &mut a[(i, j)];
                    if !x.is_zero() {
                        *x = &*x * &pivot / &prev;
                    }
                }
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = pivot;
    }
    // Every row is rescaled by all later steps, so each diagonal entry now
    // equals ±det(M) and the right block is det(M)·M⁻¹.
    let mut inv = RatMatrix::zeros(n, n);
    for i in 0..n {
        let d = a[(i, i)].clone();
        for j in 0..n {
            // (M^{-1})_{ij} = a[i][n+j] / d ; inverse of m = M^{-1} * diag(scales)
            inv[(i, j)] = BigRational::new(&a[(i, n + j)] * &scales[j], d.clone());
        }
    }
    Ok(inv)
}

/// Result of a Smith normal form computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    /// Nonzero invariant factors d₁ | d₂ | … | d_r, all positive.
    pub factors: Vec<BigInt>,
    pub rank: usize,
    /// Unimodular transforms with `u * m * v = diag(factors)` (padded).
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// The factors different from 1: the cokernel's torsion part.
    pub fn nontrivial(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|x| !x.is_one()).cloned().collect()
    }
}

/// Smith normal form of an integer matrix with tracked transforms.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    fn row_op(a: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
        // row dst -= q * row src
        for j in 0..a.cols {
            let t = q * &a[(src, j)];
            if !t.is_zero() {
                a[(dst, j)] -= t;
            }
        }
    }
    fn col_op(a: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
        for i in 0..a.rows {
            let t = q * &a[(i, src)];
            if !t.is_zero() {
                a[(i, dst)] -= t;
            }
        }
    }
    fn row_neg(a: &mut IntMatrix, i: usize) {
        for j in 0..a.cols {
            let x = std::mem::take(&mut a[(i, j)]);
            a[(i, j)] = -x;
        }
    }

    let mut t = 0;
    while t < r.min(c) {
        // Choose the smallest nonzero entry in the remaining block as pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !a[(i, j)].is_zero() && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut changed = false;
            // Clear column t.
            for i in t + 1..r {
                if !a[(i, t)].is_zero() {
                    let q = a[(i, t)].div_floor(&a[(t, t)]);
                    row_op(&mut a, i, t, &q);
                    row_op(&mut u, i, t, &q);
                    if !a[(i, t)].is_zero() {
                        // Remainder smaller than pivot: swap it in.
                        a.swap_rows(t, i);
                        u.swap_rows(t, i);
                        changed = true;
                    }
                }
            }
            // Clear row t.
            for j in t + 1..c {
                if !a[(t, j)].is_zero() {
                    let q = a[(t, j)].div_floor(&a[(t, t)]);
                    col_op(&mut a, j, t, &q);
                    col_op(&mut v, j, t, &q);
                    if !a[(t, j)].is_zero() {
                        a.swap_cols(t, j);
                        v.swap_cols(t, j);
                        changed = true;
                    }
                }
            }
            if changed {
                continue;
            }
            // Divisibility: pivot must divide every remaining entry.
            let mut fix = None;
            'outer: for i in t + 1..r {
                for j in t + 1..c {
                    if !(&a[(i, j)] % &a[(t, t)]).is_zero() {
                        fix = Some(i);
                        break 'outer;
                    }
                }
            }
            match fix {
                Some(i) => {
                    // row t += row i, then re-clear.
                    let neg_one = -BigInt::one();
                    row_op(&mut a, t, i, &neg_one);
                    row_op(&mut u, t, i, &neg_one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            row_neg(&mut a, t);
            row_neg(&mut u, t);
        }
        t += 1;
    }
    let factors: Vec<BigInt> = (0..r.min(c)).map(|i| a[(i, i)].clone()).filter(|x| !x.is_zero()).collect();
    let rank = factors.len();
    Snf { factors, rank, u, v }
}

/// Characteristic polynomial det(xI − M), by exact evaluation at n+1 integer
/// points followed by interpolation.
pub fn charpoly(m: &RatMatrix) -> Result<Polynomial> {
    check_square(m, "characteristic polynomial")?;
    let n = m.rows;
    let mut pts = Vec::with_capacity(n + 1);
    for x in 0..=n as i64 {
        let xr = BigRational::from_integer(BigInt::from(x));
        let shifted = Matrix::from_fn(n, n, |i, j| {
            let e = -m[(i, j)].clone();
            if i == j {
                e + &xr
            } else {
                e
            }
        });
        pts.push((xr, det(&shifted)?));
    }
    Ok(Polynomial::interpolate(&pts))
}

/// det(K Kᵀ) for a matrix with no more rows than columns.
pub fn gram_det(k: &RatMatrix) -> Result<BigRational> {
    if k.rows > k.cols {
        return Err(Error::Domain(format!("gram determinant needs rows <= cols, got {}x{}", k.rows, k.cols)));
    }
    let g = k.mul(&k.transpose());
    det(&g)
}

/// The b×b matrix with (i,j) entry binom(a+c, a+i−j).
pub fn carlitz_matrix(a: usize, b: usize, c: usize) -> IntMatrix {
    IntMatrix::from_fn(b, b, |i, j| {
        let k = a as i64 + i as i64 - j as i64;
        binomial((a + c) as u64, k)
    })
}

/// Binomial coefficient, zero outside 0 ≤ k ≤ n.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Checks `u * m * v` equals the diagonal of the SNF factors.
pub fn snf_verifies(m: &IntMatrix, snf: &Snf) -> bool {
    let d = snf.u.mul(m).mul(&snf.v);
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            let expect = if i == j && i < snf.rank { snf.factors[i].clone() } else { BigInt::zero() };
            if d[(i, j)] != expect {
                return false;
            }
        }
    }
    snf.factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    fn rat(rows: &[&[i64]]) -> RatMatrix {
        to_rational(&im(rows))
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det_int(&im(&[&[2]])), BigInt::from(2));
        assert_eq!(det_int(&carlitz_matrix(2, 2, 2)), BigInt::from(20));
        assert_eq!(det_int(&im(&[&[0, 1], [1, 0].as_slice()])), BigInt::from(-1));
        assert_eq!(det_int(&IntMatrix::zeros(0, 0)), BigInt::one());
    }

    #[test]
    fn rational_det_matches_cofactor() {
        let m = RatMatrix::from_rows(vec![
            vec![r(1, 2), r(2, 3), r(0, 1)],
            vec![r(-1, 1), r(5, 7), r(3, 2)],
            vec![r(4, 1), r(0, 1), r(-2, 9)],
        ]);
        assert_eq!(det(&m).unwrap(), det_cofactor(&m));
    }

    #[test]
    fn pfaffian_four_by_four() {
        // Pf = af - be + cd
        let (a, b, c, d, e, f) = (2, 3, 5, 7, 11, 13);
        let s = rat(&[&[0, a, b, c], &[-a, 0, d, e], &[-b, -d, 0, f], &[-c, -e, -f, 0]]);
        assert_eq!(pfaffian(&s).unwrap(), r(a * f - b * e + c * d, 1));
        assert_eq!(pfaffian(&rat(&[&[0, 1], &[-1, 0]])).unwrap(), r(1, 1));
        assert!(pfaffian(&rat(&[&[0, 1], &[1, 0]])).is_err());
    }

    #[test]
    fn inverse_two_by_two() {
        let m = rat(&[&[6, 4], &[4, 6]]);
        let inv = invert(&m).unwrap();
        assert_eq!(inv, RatMatrix::from_rows(vec![vec![r(6, 20), r(-4, 20)], vec![r(-4, 20), r(6, 20)]]));
        assert_eq!(invert(&RatMatrix::identity(3)).unwrap(), RatMatrix::identity(3));
        assert!(invert(&rat(&[&[1, 2], &[2, 4]])).is_err());
    }

    #[test]
    fn inverse_with_row_swaps() {
        let m = rat(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        let inv = invert(&m).unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(3));
    }

    #[test]
    fn smith_forms() {
        let s = smith_normal_form(&carlitz_matrix(2, 2, 2));
        assert_eq!(s.factors, vec![BigInt::from(2), BigInt::from(10)]);
        let id = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).factors, vec![BigInt::one(); 3]);
        let m = im(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.factors, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        assert!(snf_verifies(&m, &s));
    }

    #[test]
    fn characteristic_polynomials() {
        let p = charpoly(&RatMatrix::zeros(2, 2)).unwrap();
        assert_eq!(p.to_string(), "x^2");
        let p = charpoly(&rat(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(p.to_string(), "x^2 - 1");
    }

    #[test]
    fn gram_determinant() {
        let k = rat(&[&[1, 1, 0], &[0, 1, 1]]);
        // KK^T = [[2,1],[1,2]] -> 3
        assert_eq!(gram_det(&k).unwrap(), r(3, 1));
        assert!(gram_det(&k.transpose()).is_err());
    }

    #[test]
    fn carlitz_entries() {
        assert_eq!(carlitz_matrix(1, 1, 1), im(&[&[2]]));
        assert_eq!(carlitz_matrix(2, 2, 2), im(&[&[6, 4], &[4, 6]]));
    }
}

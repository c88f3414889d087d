//! Dense exact integer matrices and the fraction-free kernels the rest of
//! the crate is built on: Bareiss determinants, rank over Q, Hermite and
//! Smith reduction, and unimodular inversion.
//!
//! Entries are stored as `i64`; intermediate products are carried in `i128`
//! and every narrowing step is checked, so overflow surfaces as
//! [`Error::Overflow`] instead of wrapping.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Greatest common divisor, always non-negative.
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a as i64
}

/// gcd of a slice, 0 for an empty or all-zero slice.
pub fn slice_gcd(xs: &[i64]) -> i64 {
    xs.iter().fold(0, |g, &x| gcd_i64(g, x))
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn narrow(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

/// A dense row-major integer matrix.
///
/// Serializes as a row-major array of arrays (`[[a, b], [c, d]]`).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IntMatrix{:?}", self.to_rows())
    }
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        IntMatrix::from_rows(&rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
    }
}

impl IntMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Dimension("matrix must be non-empty".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows in matrix".into()));
        }
        let data = rows.iter().flatten().copied().collect();
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
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

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc = acc
                        .checked_add(self.get(r, k) as i128 * rhs.get(k, c) as i128)
                        .ok_or(Error::Overflow("matrix product"))?;
                }
                out.set(r, c, narrow(acc, "matrix product")?);
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension("shape mismatch in subtraction".into()));
        }
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(rhs.data.iter()) {
            *o = o.checked_sub(*r).ok_or(Error::Overflow("matrix difference"))?;
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        (0..self.rows)
            .map(|r| {
                let mut acc: i128 = 0;
                for c in 0..self.cols {
                    acc = acc
                        .checked_add(self.get(r, c) as i128 * v[c] as i128)
                        .ok_or(Error::Overflow("matrix-vector product"))?;
                }
                narrow(acc, "matrix-vector product")
            })
            .collect()
    }

    fn to_working(&self) -> Vec<Vec<i128>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|&x| x as i128).collect())
            .collect()
    }

    /// Exact determinant by the Bareiss fraction-free algorithm.
    pub fn det(&self) -> Result<i128> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.to_working();
        let mut sign: i128 = 1;
        let mut prev: i128 = 1;
        for k in 0..n.saturating_sub(1) {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = a[i][j]
                        .checked_mul(a[k][k])
                        .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                        .ok_or(Error::Overflow("determinant"))?;
                    // Bareiss guarantees exact divisibility by the previous pivot.
                    a[i][j] = t / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        Ok(sign * a[n - 1][n - 1])
    }

    /// Rank over the rationals, by fraction-free elimination with row-gcd
    /// normalization to keep intermediates small.
    pub fn rank(&self) -> Result<usize> {
        let mut a = self.to_working();
        let (m, n) = (self.rows, self.cols);
        let mut r = 0usize;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| a[i][c] != 0) else { continue };
            a.swap(r, p);
            for i in r + 1..m {
                if a[i][c] == 0 {
                    continue;
                }
                let (num, den) = (a[i][c], a[r][c]);
                for j in 0..n {
                    let t = a[i][j]
                        .checked_mul(den)
                        .and_then(|x| x.checked_sub(a[r][j].checked_mul(num)?))
                        .ok_or(Error::Overflow("rank elimination"))?;
                    a[i][j] = t;
                }
                let g = a[i].iter().fold(0i128, |g, &x| gcd_i128(g, x));
                if g > 1 {
                    for x in a[i].iter_mut() {
                        *x /= g;
                    }
                }
            }
            r += 1;
        }
        Ok(r)
    }

    /// Row-style Hermite normal form: pivots positive, zero entries below
    /// each pivot, entries above each pivot reduced into `[0, pivot)`.
    ///
    /// The nonzero rows are the unique Hermite basis of the row lattice, so
    /// equal row lattices yield byte-identical results; this is the crate's
    /// canonical encoding for sublattices.
    pub fn hnf(&self) -> Result<IntMatrix> {
        let mut a = self.to_working();
        let (m, n) = (self.rows, self.cols);
        let mut pivot_row = 0usize;
        for col in 0..n {
            if pivot_row == m {
                break;
            }
            loop {
                let mut best: Option<usize> = None;
                for i in pivot_row..m {
                    if a[i][col] != 0
                        && best.is_none_or(|b| a[i][col].abs() < a[b][col].abs())
                    {
                        best = Some(i);
                    }
                }
                let Some(b) = best else { break };
                a.swap(pivot_row, b);
                let mut settled = true;
                for i in pivot_row + 1..m {
                    if a[i][col] != 0 {
                        let q = a[i][col] / a[pivot_row][col];
                        for j in 0..n {
                            let t = a[pivot_row][j]
                                .checked_mul(q)
                                .and_then(|x| a[i][j].checked_sub(x))
                                .ok_or(Error::Overflow("Hermite reduction"))?;
                            a[i][j] = t;
                        }
                        if a[i][col] != 0 {
                            settled = false;
                        }
                    }
                }
                if settled {
                    break;
                }
            }
            if a[pivot_row][col] != 0 {
                if a[pivot_row][col] < 0 {
                    for x in a[pivot_row].iter_mut() {
                        *x = -*x;
                    }
                }
                let p = a[pivot_row][col];
                for i in 0..pivot_row {
                    let q = a[i][col].div_euclid(p);
                    if q != 0 {
                        for j in 0..n {
                            let t = a[pivot_row][j]
                                .checked_mul(q)
                                .and_then(|x| a[i][j].checked_sub(x))
                                .ok_or(Error::Overflow("Hermite reduction"))?;
                            a[i][j] = t;
                        }
                    }
                }
                pivot_row += 1;
            }
        }
        let rows: Vec<Vec<i64>> = a
            .iter()
            .map(|row| row.iter().map(|&x| narrow(x, "Hermite normal form")).collect())
            .collect::<Result<_>>()?;
        IntMatrix::from_rows(&rows)
    }

    /// Diagonal of the Smith normal form: non-negative invariant factors
    /// `d_1 | d_2 | ...`, padded with zeros when the rank is deficient.
    pub fn snf_diagonal(&self) -> Result<Vec<i64>> {
        let mut a = self.to_working();
        let (m, n) = (self.rows, self.cols);
        let k = m.min(n);
        let mut t = 0usize;
        'outer: while t < k {
            // Find the smallest nonzero entry in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            // Clear column t below and row t to the right of the pivot.
            let mut dirty = false;
            for i in t + 1..m {
                if a[i][t] != 0 {
                    let q = a[i][t] / a[t][t];
                    for j in 0..n {
                        let x = a[t][j]
                            .checked_mul(q)
                            .and_then(|x| a[i][j].checked_sub(x))
                            .ok_or(Error::Overflow("Smith reduction"))?;
                        a[i][j] = x;
                    }
                    if a[i][t] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..n {
                if a[t][j] != 0 {
                    let q = a[t][j] / a[t][t];
                    for i in 0..m {
                        let x = a[i][t]
                            .checked_mul(q)
                            .and_then(|x| a[i][j].checked_sub(x))
                            .ok_or(Error::Overflow("Smith reduction"))?;
                        a[i][j] = x;
                    }
                    if a[t][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'outer;
            }
            // Pivot must divide every remaining entry; fold a violating row in.
            for i in t + 1..m {
                for j in t + 1..n {
                    if a[i][j] % a[t][t] != 0 {
                        for jj in 0..n {
                            let x = a[t][jj]
                                .checked_add(a[i][jj])
                                .ok_or(Error::Overflow("Smith reduction"))?;
                            a[t][jj] = x;
                        }
                        continue 'outer;
                    }
                }
            }
            t += 1;
        }
        let mut diag: Vec<i64> = (0..k)
            .map(|i| narrow(a[i][i].abs(), "Smith normal form"))
            .collect::<Result<_>>()?;
        // The elimination above already enforces the divisibility chain.
        for i in 0..k.saturating_sub(1) {
            let (d, e) = (diag[i], diag[i + 1]);
            if d != 0 && e % d != 0 {
                return Err(Error::Arithmetic(format!(
                    "Smith diagonal {diag:?} violates the divisibility chain"
                )));
            }
            if d == 0 && e != 0 {
                diag.swap(i, i + 1);
            }
        }
        Ok(diag)
    }

    /// Exact inverse of a matrix with determinant ±1, via the adjugate.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let d = self.det()?;
        if d != 1 && d != -1 {
            return Err(Error::Precondition(format!(
                "matrix has determinant {d}, expected +1 or -1"
            )));
        }
        let mut inv = IntMatrix::zero(n, n);
        if n == 1 {
            inv.set(0, 0, narrow(d, "unimodular inverse")?);
            return Ok(inv);
        }
        for i in 0..n {
            for j in 0..n {
                // Cofactor expansion: inv[i][j] = (-1)^{i+j} det(minor(j, i)) / det.
                let rows: Vec<Vec<i64>> = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| {
                        (0..n).filter(|&c| c != i).map(|c| self.get(r, c)).collect()
                    })
                    .collect();
                let minor = IntMatrix::from_rows(&rows)?.det()?;
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                inv.set(i, j, narrow(sign as i128 * minor * d, "unimodular inverse")?);
            }
        }
        debug_assert_eq!(self.checked_mul(&inv)?, IntMatrix::identity(n));
        Ok(inv)
    }

    /// Solve `self * x = b` exactly for a matrix with determinant ±1.
    pub fn solve_unimodular(&self, b: &[i64]) -> Result<Vec<i64>> {
        self.inverse_unimodular()?.mul_vec(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Independent determinant oracle: cofactor expansion along the first row.
    fn det_cofactor(a: &IntMatrix) -> i128 {
        let n = a.rows();
        if n == 1 {
            return a.get(0, 0) as i128;
        }
        let mut acc: i128 = 0;
        for c in 0..n {
            if a.get(0, c) == 0 {
                continue;
            }
            let rows: Vec<Vec<i64>> = (1..n)
                .map(|r| (0..n).filter(|&cc| cc != c).map(|cc| a.get(r, cc)).collect())
                .collect();
            let minor = det_cofactor(&IntMatrix::from_rows(&rows).unwrap());
            let sign = if c % 2 == 0 { 1 } else { -1 };
            acc += sign * a.get(0, c) as i128 * minor;
        }
        acc
    }

    fn seeded_matrix(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> IntMatrix {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.random_range(-bound..=bound)).collect())
            .collect();
        IntMatrix::from_rows(&rows).unwrap()
    }

    /// Seeded unimodular matrix: a product of elementary row operations.
    fn seeded_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
        let mut u = IntMatrix::identity(n);
        for _ in 0..3 * n {
            let i = rng.random_range(0..n);
            let mut j = rng.random_range(0..n);
            while j == i {
                j = rng.random_range(0..n);
            }
            let k = rng.random_range(-2..=2i64);
            let mut e = IntMatrix::identity(n);
            e.set(i, j, k);
            u = e.checked_mul(&u).unwrap();
        }
        u
    }

    #[test]
    fn shape_validation() {
        assert!(IntMatrix::from_rows(&[]).is_err());
        assert!(IntMatrix::from_rows(&[vec![1, 2], vec![3]]).is_err());
        assert!(IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]).is_ok());
    }

    #[test]
    fn determinant_known_values() {
        assert_eq!(m(&[&[2, 3], &[1, 2]]).det().unwrap(), 1);
        assert_eq!(m(&[&[0, 1], &[-1, 0]]).det().unwrap(), 1);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det().unwrap(), 0);
        assert_eq!(
            m(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]]).det().unwrap(),
            -6
        );
        assert_eq!(m(&[&[7]]).det().unwrap(), 7);
    }

    #[test]
    fn determinant_matches_cofactor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let a = seeded_matrix(&mut rng, 5, 4);
            assert_eq!(a.det().unwrap(), det_cofactor(&a), "on {a:?}");
        }
    }

    #[test]
    fn rank_known_values() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank().unwrap(), 1);
        assert_eq!(IntMatrix::identity(3).rank().unwrap(), 3);
        assert_eq!(IntMatrix::zero(2, 5).rank().unwrap(), 0);
        assert_eq!(
            m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).rank().unwrap(),
            2
        );
    }

    #[test]
    fn hermite_known_value() {
        let h = m(&[&[2, 4], &[1, 1]]).hnf().unwrap();
        assert_eq!(h, m(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn hermite_is_canonical_for_the_row_lattice() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let a = {
                let rows: Vec<Vec<i64>> = (0..2)
                    .map(|_| (0..4).map(|_| rng.random_range(-3..=3)).collect())
                    .collect();
                IntMatrix::from_rows(&rows).unwrap()
            };
            let u = seeded_unimodular(&mut rng, 2);
            let h1 = a.hnf().unwrap();
            let h2 = u.checked_mul(&a).unwrap().hnf().unwrap();
            assert_eq!(h1, h2, "HNF not invariant under unimodular row change");
            assert_eq!(h1.hnf().unwrap(), h1, "HNF not idempotent");
        }
    }

    #[test]
    fn smith_known_values() {
        assert_eq!(m(&[&[2, 0], &[0, 3]]).snf_diagonal().unwrap(), vec![1, 6]);
        assert_eq!(m(&[&[2, 4], &[6, 8]]).snf_diagonal().unwrap(), vec![2, 4]);
        assert_eq!(m(&[&[2, 0], &[0, 2]]).snf_diagonal().unwrap(), vec![2, 2]);
        assert_eq!(IntMatrix::identity(4).snf_diagonal().unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).snf_diagonal().unwrap(), vec![1, 0]);
    }

    #[test]
    fn smith_diagonal_product_matches_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..25 {
            let a = seeded_matrix(&mut rng, 4, 3);
            let d = a.det().unwrap().abs();
            let prod: i128 = a
                .snf_diagonal()
                .unwrap()
                .iter()
                .map(|&x| x as i128)
                .product();
            assert_eq!(prod, d, "on {a:?}");
        }
    }

    #[test]
    fn unimodular_inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let u = seeded_unimodular(&mut rng, 4);
            let inv = u.inverse_unimodular().unwrap();
            assert_eq!(u.checked_mul(&inv).unwrap(), IntMatrix::identity(4));
            assert_eq!(inv.checked_mul(&u).unwrap(), IntMatrix::identity(4));
        }
        assert!(m(&[&[2, 0], &[0, 1]]).inverse_unimodular().is_err());
    }

    #[test]
    fn solve_unimodular_round_trip() {
        let u = m(&[&[1, 2], &[1, 3]]);
        let x = u.solve_unimodular(&[5, 7]).unwrap();
        assert_eq!(u.mul_vec(&x).unwrap(), vec![5, 7]);
    }

    #[test]
    fn serde_round_trip_and_shape() {
        let a = m(&[&[1, -2], &[0, 3]]);
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, "[[1,-2],[0,3]]");
        let back: IntMatrix = serde_json::from_str(&js).unwrap();
        assert_eq!(a, back);
        assert!(serde_json::from_str::<IntMatrix>("[[1,2],[3]]").is_err());
    }

    #[test]
    fn gcd_helpers() {
        assert_eq!(gcd_i64(12, -18), 6);
        assert_eq!(gcd_i64(0, 0), 0);
        assert_eq!(gcd_i64(0, -7), 7);
        assert_eq!(slice_gcd(&[4, 6, 10]), 2);
        assert_eq!(slice_gcd(&[]), 0);
    }
}

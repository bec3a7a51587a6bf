//! Integer matrices and Smith normal form with transformation matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{CellError, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(CellError::InvalidInput("ragged matrix rows".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.iter().flatten().map(|&v| BigInt::from(v)).collect() })
    }

    /// A `rows × cols` matrix given row-major.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(CellError::InvalidInput("matrix data has the wrong length".into()));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(CellError::mismatch(format!(
                "matrix product {}x{} · {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| &self[(r, c)] * &v[c]).sum()).collect()
    }

    /// Rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> IntMatrix {
        let mut out = IntMatrix::zeros(r1 - r0, c1 - c0);
        for r in r0..r1 {
            for c in c0..c1 {
                out[(r - r0, c - c0)] = self[(r, c)].clone();
            }
        }
        out
    }

    /// Plain row-major text, one row per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| i64::try_from(&self[(r, c)]).unwrap_or(i64::MAX)).collect())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] += k · row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = &self[(src, c)] * k;
            self[(dst, c)] += v;
        }
    }

    /// `col[dst] += k · col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = &self[(r, src)] * k;
            self[(r, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self[(r, c)];
            self[(r, c)] = v;
        }
    }

    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(CellError::mismatch("determinant of a non-square matrix"));
        }
        // fraction-free Bareiss elimination
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }
}

/// `u · m · v = d` with `d` diagonal, each diagonal entry dividing the next,
/// and `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row(dst, src, k);
        self.u.add_row(dst, src, k);
        self.u_inv.add_col(src, dst, &-k);
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col(dst, src, k);
        self.v.add_col(dst, src, k);
        self.v_inv.add_row(src, dst, &-k);
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        self.u.negate_row(r);
        let n = self.u_inv.rows;
        for i in 0..n {
            let v = -&self.u_inv[(i, r)];
            self.u_inv[(i, r)] = v;
        }
    }

    /// Smallest nonzero |entry| in the block from `t`, ties to the lowest
    /// row then column.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.a.rows {
            for c in t..self.a.cols {
                let v = &self.a[(r, c)];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(br, bc)| v.abs() < self.a[(br, bc)].abs()) {
                    best = Some((r, c));
                }
            }
        }
        best
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows, m.cols);
    let mut st = Reducer {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = st.pivot(t) else { break };
        st.swap_rows(t, pr);
        st.swap_cols(t, pc);
        loop {
            let p = st.a[(t, t)].clone();
            let mut dirty = false;
            for r in t + 1..rows {
                if !st.a[(r, t)].is_zero() {
                    let q = st.a[(r, t)].div_floor(&p);
                    st.add_row(r, t, &-q);
                    dirty |= !st.a[(r, t)].is_zero();
                }
            }
            for c in t + 1..cols {
                if !st.a[(t, c)].is_zero() {
                    let q = st.a[(t, c)].div_floor(&p);
                    st.add_col(c, t, &-q);
                    dirty |= !st.a[(t, c)].is_zero();
                }
            }
            if dirty {
                // a smaller remainder appeared in row or column t
                let (pr, pc) = st.pivot_in_cross(t);
                st.swap_rows(t, pr);
                st.swap_cols(t, pc);
                continue;
            }
            let bad = (t + 1..rows).find_map(|r| {
                (t + 1..cols).find(|&c| !st.a[(r, c)].is_multiple_of(&p)).map(|_| r)
            });
            match bad {
                Some(r) => st.add_row(t, r, &BigInt::one()),
                None => break,
            }
        }
        if st.a[(t, t)].is_negative() {
            st.negate_row(t);
        }
        t += 1;
    }
    Smith { d: st.a, u: st.u, v: st.v, u_inv: st.u_inv, v_inv: st.v_inv, rank: t }
}

impl Reducer {
    fn pivot_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let cand = (t..self.a.rows).map(|r| (r, t)).chain((t..self.a.cols).map(|c| (t, c)));
        for (r, c) in cand {
            let v = &self.a[(r, c)];
            if !v.is_zero() && (self.a[best].is_zero() || v.abs() < self.a[best].abs()) {
                best = (r, c);
            }
        }
        best
    }
}

/// Checks `u · m · v = d`, unimodularity, the inverse pairs, diagonal shape
/// and divisibility.
pub fn check_smith(m: &IntMatrix, s: &Smith) -> Result<()> {
    let fail = |msg: &str| Err(CellError::Invariant(format!("Smith form: {msg}")));
    if s.u.mul(m)?.mul(&s.v)? != s.d {
        return fail("u·m·v ≠ d");
    }
    if s.u.mul(&s.u_inv)? != IntMatrix::identity(m.rows) || s.v.mul(&s.v_inv)? != IntMatrix::identity(m.cols) {
        return fail("stored inverses are wrong");
    }
    if s.u.determinant()?.abs() != BigInt::one() || s.v.determinant()?.abs() != BigInt::one() {
        return fail("transformation is not unimodular");
    }
    for r in 0..m.rows {
        for c in 0..m.cols {
            if r != c && !s.d[(r, c)].is_zero() {
                return fail("off-diagonal entry");
            }
        }
    }
    let diag: Vec<BigInt> = (0..m.rows.min(m.cols)).map(|i| s.d[(i, i)].clone()).collect();
    for w in diag.windows(2) {
        if w[0].is_zero() && !w[1].is_zero() {
            return fail("zero before a nonzero diagonal entry");
        }
        if !w[0].is_zero() && !w[1].is_multiple_of(&w[0]) {
            return fail("divisibility chain broken");
        }
    }
    if diag.iter().any(|d| d.is_negative()) {
        return fail("negative diagonal entry");
    }
    Ok(())
}

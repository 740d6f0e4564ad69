//! Dense integer matrices with exact normal-form algorithms.
//!
//! Everything in this crate works with small matrices (rank at most 8, tiny
//! entries), so the implementations favour clarity over asymptotics:
//! column-style Hermite normal form for kernels, images and lattice
//! membership, Smith normal form for quotient invariants, Bareiss for
//! determinants and Faddeev–LeVerrier for characteristic polynomials.

use std::fmt;

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: Vec<Vec<i64>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
        let mut m = IntMat::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn row(&self, i: usize) -> Vec<i64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self) -> IntMat {
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> IntMat {
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| k * a).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -self[(i, j)];
        }
    }

    /// col[to] -= q * col[from]
    fn addmul_col(&mut self, to: usize, from: usize, q: i64) {
        for i in 0..self.rows {
            let v = self[(i, from)];
            self[(i, to)] -= q * v;
        }
    }

    /// Determinant by fraction-free Bareiss elimination over i128.
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let at = |a: &Vec<i128>, i: usize, j: usize| a[i * n + j];
        let mut sign: i128 = 1;
        let mut prev: i128 = 1;
        for k in 0..n - 1 {
            if at(&a, k, k) == 0 {
                let Some(p) = (k + 1..n).find(|&i| at(&a, i, k) != 0) else {
                    return 0;
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = at(&a, i, j) * at(&a, k, k) - at(&a, i, k) * at(&a, k, j);
                    a[i * n + j] = v / prev;
                }
            }
            prev = at(&a, k, k);
        }
        let d = sign * at(&a, n - 1, n - 1);
        i64::try_from(d).expect("determinant overflow")
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs() == 1
    }

    /// Exact inverse of a unimodular matrix (via the adjugate).
    pub fn inverse_unimodular(&self) -> IntMat {
        let n = self.rows;
        let d = self.det();
        assert!(d.abs() == 1, "inverse_unimodular needs det ±1");
        let mut adj = IntMat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j).det();
                let cof = if (i + j) % 2 == 0 { minor } else { -minor };
                adj[(j, i)] = cof * d; // divide by det = multiply, since d = ±1
            }
        }
        adj
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> IntMat {
        let mut m = IntMat::zero(self.rows - 1, self.cols - 1);
        let mut r = 0;
        for i in 0..self.rows {
            if i == skip_row {
                continue;
            }
            let mut c = 0;
            for j in 0..self.cols {
                if j == skip_col {
                    continue;
                }
                m[(r, c)] = self[(i, j)];
                c += 1;
            }
            r += 1;
        }
        m
    }

    /// Column-style Hermite normal form.
    ///
    /// Returns (H, U) with H = self · U, U unimodular. H is in column echelon
    /// form: pivot columns first (pivot rows strictly increasing, pivots
    /// positive, entries left of a pivot in its row reduced into [0, pivot)),
    /// zero columns last. Dropping zero columns gives the canonical basis of
    /// the column lattice, so two matrices span the same lattice iff their
    /// pruned H agree.
    pub fn hnf_cols(&self) -> (IntMat, IntMat) {
        let mut h = self.clone();
        let mut u = IntMat::identity(self.cols);
        let mut pivot_col = 0;
        for row in 0..self.rows {
            if pivot_col >= h.cols {
                break;
            }
            if (pivot_col..h.cols).all(|j| h[(row, j)] == 0) {
                continue;
            }
            // gcd-reduce the row among columns >= pivot_col
            loop {
                let mut best: Option<usize> = None;
                for j in pivot_col..h.cols {
                    if h[(row, j)] != 0
                        && best.is_none_or(|b| h[(row, j)].abs() < h[(row, b)].abs())
                    {
                        best = Some(j);
                    }
                }
                let b = best.unwrap();
                h.swap_cols(pivot_col, b);
                u.swap_cols(pivot_col, b);
                let p = h[(row, pivot_col)];
                let mut done = true;
                for j in pivot_col + 1..h.cols {
                    if h[(row, j)] != 0 {
                        let q = h[(row, j)].div_euclid(p);
                        h.addmul_col(j, pivot_col, q);
                        u.addmul_col(j, pivot_col, q);
                        if h[(row, j)] != 0 {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if h[(row, pivot_col)] < 0 {
                h.negate_col(pivot_col);
                u.negate_col(pivot_col);
            }
            let p = h[(row, pivot_col)];
            for j in 0..pivot_col {
                let q = h[(row, j)].div_euclid(p);
                if q != 0 {
                    h.addmul_col(j, pivot_col, q);
                    u.addmul_col(j, pivot_col, q);
                }
            }
            pivot_col += 1;
        }
        (h, u)
    }

    /// Canonical basis matrix of the column lattice (HNF with zero columns dropped).
    pub fn column_lattice_basis(&self) -> IntMat {
        let (h, _) = self.hnf_cols();
        let nonzero: Vec<Vec<i64>> = (0..h.cols)
            .filter(|&j| (0..h.rows).any(|i| h[(i, j)] != 0))
            .map(|j| h.col(j))
            .collect();
        IntMat::from_cols(nonzero).with_rows(h.rows)
    }

    // from_cols of an empty list loses the row count; patch it back.
    fn with_rows(mut self, rows: usize) -> IntMat {
        if self.cols == 0 {
            self.rows = rows;
            self.data.clear();
        }
        self
    }

    /// Basis of the integer kernel {x : self·x = 0}, as matrix columns.
    pub fn kernel_basis(&self) -> IntMat {
        let (h, u) = self.hnf_cols();
        let zero_cols: Vec<Vec<i64>> = (0..h.cols)
            .filter(|&j| (0..h.rows).all(|i| h[(i, j)] == 0))
            .map(|j| u.col(j))
            .collect();
        IntMat::from_cols(zero_cols).with_rows(self.cols)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let (h, _) = self.hnf_cols();
        (0..h.cols)
            .filter(|&j| (0..h.rows).any(|i| h[(i, j)] != 0))
            .count()
    }

    /// Solve self·x = b over the integers. `None` when no integral solution exists.
    pub fn solve(&self, b: &[i64]) -> Option<Vec<i64>> {
        assert_eq!(self.rows, b.len());
        let (h, u) = self.hnf_cols();
        let mut residual = b.to_vec();
        let mut y = vec![0i64; h.cols];
        for j in 0..h.cols {
            let Some(pivot_row) = (0..h.rows).find(|&i| h[(i, j)] != 0) else {
                continue;
            };
            let p = h[(pivot_row, j)];
            if residual[pivot_row] % p != 0 {
                return None;
            }
            let c = residual[pivot_row] / p;
            y[j] = c;
            for i in 0..h.rows {
                residual[i] -= c * h[(i, j)];
            }
        }
        if residual.iter().any(|&v| v != 0) {
            return None;
        }
        Some(u.mul_vec(&y))
    }

    /// Does the column lattice contain v?
    pub fn lattice_contains(&self, v: &[i64]) -> bool {
        self.solve(v).is_some()
    }

    /// Do the columns of self and other span the same sublattice?
    pub fn same_column_lattice(&self, other: &IntMat) -> bool {
        assert_eq!(self.rows, other.rows);
        let a = self.column_lattice_basis();
        let b = other.column_lattice_basis();
        a == b
    }

    /// Smith normal form: the non-negative invariant factors d_1 | d_2 | ...,
    /// padded with zeros up to min(rows, cols).
    pub fn snf_diagonal(&self) -> Vec<i64> {
        let mut a = self.clone();
        let n = self.rows.min(self.cols);
        let mut k = 0;
        while k < n {
            let mut pivot = None;
            'find: for i in k..a.rows {
                for j in k..a.cols {
                    if a[(i, j)] != 0 {
                        pivot = Some((i, j));
                        break 'find;
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            a.swap_rows(k, pi);
            a.swap_cols(k, pj);
            loop {
                // improve the pivot until it divides its row and column
                let mut again = false;
                for i in k + 1..a.rows {
                    if a[(i, k)] != 0 {
                        let q = a[(i, k)].div_euclid(a[(k, k)]);
                        a.addmul_row(i, k, q);
                        if a[(i, k)] != 0 {
                            a.swap_rows(k, i);
                            again = true;
                        }
                    }
                }
                for j in k + 1..a.cols {
                    if a[(k, j)] != 0 {
                        let q = a[(k, j)].div_euclid(a[(k, k)]);
                        a.addmul_col(j, k, q);
                        if a[(k, j)] != 0 {
                            a.swap_cols(k, j);
                            again = true;
                        }
                    }
                }
                if !again {
                    break;
                }
            }
            // pivot must divide every remaining entry; if not, fold the bad row in
            let p = a[(k, k)];
            let mut fixed = true;
            'scan: for i in k + 1..a.rows {
                for j in k + 1..a.cols {
                    if a[(i, j)] % p != 0 {
                        for jj in 0..a.cols {
                            let v = a[(i, jj)];
                            a[(k, jj)] += v;
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                if a[(k, k)] < 0 {
                    for j in 0..a.cols {
                        a[(k, j)] = -a[(k, j)];
                    }
                }
                k += 1;
            }
        }
        let mut d: Vec<i64> = (0..n).map(|i| a[(i, i)].abs()).collect();
        d.sort_by_key(|&x| if x == 0 { i64::MAX } else { x });
        d
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row[to] -= q * row[from]
    fn addmul_row(&mut self, to: usize, from: usize, q: i64) {
        for j in 0..self.cols {
            let v = self[(from, j)];
            self[(to, j)] -= q * v;
        }
    }

    /// Coefficients of det(q·I − self), highest power first (monic).
    /// Faddeev–LeVerrier; all divisions are exact over the integers.
    pub fn charpoly(&self) -> Vec<i64> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![0i64; n + 1];
        coeffs[0] = 1;
        let mut m = IntMat::identity(n);
        for (k, slot) in coeffs.iter_mut().enumerate().skip(1) {
            m = self.mul(&m);
            let trace: i64 = (0..n).map(|i| m[(i, i)]).sum();
            let c = -trace / (k as i64);
            debug_assert_eq!(
                -trace % (k as i64),
                0,
                "Faddeev-LeVerrier division not exact"
            );
            *slot = c;
            for i in 0..n {
                m[(i, i)] += c;
            }
        }
        coeffs
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// |image of the column map in (Z/n)^rows|, computed from the invariant factors.
pub fn image_order_mod(a: &IntMat, n: i64) -> i64 {
    assert!(n >= 1);
    a.snf_diagonal().iter().map(|&d| n / gcd(d, n)).product()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn random_mat(rng: &mut SplitMix64, rows: usize, cols: usize, bound: i64) -> IntMat {
        let mut m = IntMat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = rng.range(-bound, bound);
            }
        }
        m
    }

    /// Independent SNF oracle: d_k = D_k / D_{k-1} where D_k is the gcd of all
    /// k×k minors (determinantal divisors).
    fn snf_by_minor_gcds(a: &IntMat) -> Vec<i64> {
        let n = a.nrows().min(a.ncols());
        let mut out = Vec::new();
        let mut prev = 1i64;
        for k in 1..=n {
            let mut g = 0i64;
            for rows in combinations(a.nrows(), k) {
                for cols in combinations(a.ncols(), k) {
                    let mut sub = IntMat::zero(k, k);
                    for (ri, &r) in rows.iter().enumerate() {
                        for (ci, &c) in cols.iter().enumerate() {
                            sub[(ri, ci)] = a[(r, c)];
                        }
                    }
                    g = gcd(g, sub.det());
                }
            }
            if g == 0 {
                out.push(0);
            } else {
                out.push(g / prev);
                prev = g;
            }
        }
        // zeros (rank deficiencies) sort to the end, like snf_diagonal
        let rank = out.iter().take_while(|&&d| d != 0).count();
        out.truncate(rank);
        while out.len() < n {
            out.push(0);
        }
        out
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }

    #[test]
    fn snf_agrees_with_minor_gcd_oracle() {
        let mut rng = SplitMix64::new(0x5eed_0001);
        for _ in 0..60 {
            let m = random_mat(&mut rng, 4, 4, 5);
            assert_eq!(m.snf_diagonal(), snf_by_minor_gcds(&m), "matrix {m:?}");
        }
        for _ in 0..40 {
            let m = random_mat(&mut rng, 3, 5, 4);
            assert_eq!(m.snf_diagonal(), snf_by_minor_gcds(&m), "matrix {m:?}");
        }
    }

    /// Random unimodular matrix as a short product of elementary shears,
    /// swaps and sign flips.
    fn random_unimodular(rng: &mut SplitMix64, n: usize) -> IntMat {
        let mut u = IntMat::identity(n);
        for _ in 0..8 {
            let mut e = IntMat::identity(n);
            let i = rng.index(n);
            let mut j = rng.index(n);
            match rng.index(3) {
                0 => {
                    if i != j {
                        e[(i, j)] = rng.range(-2, 2);
                    }
                }
                1 => {
                    if i == j {
                        j = (j + 1) % n;
                    }
                    e[(i, i)] = 0;
                    e[(j, j)] = 0;
                    e[(i, j)] = 1;
                    e[(j, i)] = 1;
                }
                _ => e[(i, i)] = -1,
            }
            u = u.mul(&e);
        }
        debug_assert!(u.is_unimodular());
        u
    }

    #[test]
    fn hnf_is_canonical_and_unimodular() {
        let mut rng = SplitMix64::new(0x5eed_0002);
        for _ in 0..60 {
            let m = random_mat(&mut rng, 4, 4, 5);
            let (h, u) = m.hnf_cols();
            assert!(u.is_unimodular());
            assert_eq!(m.mul(&u), h);
            // post-composing with any unimodular matrix leaves the canonical basis fixed
            let w = random_unimodular(&mut rng, 4);
            let m2 = m.mul(&w);
            assert!(m.same_column_lattice(&m2));
        }
        for _ in 0..40 {
            let m = random_mat(&mut rng, 3, 5, 4);
            let w = random_unimodular(&mut rng, 5);
            assert!(m.same_column_lattice(&m.mul(&w)));
        }
    }

    #[test]
    fn kernel_and_solve() {
        let a = IntMat::from_rows(vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1], vec![-1, -1, 0, 0]]);
        let k = a.kernel_basis();
        assert_eq!(k.ncols(), 1);
        let v = k.col(0);
        assert!(a.mul_vec(&v).iter().all(|&x| x == 0));
        // (1,-1,-1,1) spans the kernel
        assert!(k.lattice_contains(&[1, -1, -1, 1]));
        assert!(!k.lattice_contains(&[1, 0, -1, 0]));

        let b = vec![2, 3, -5];
        let x = a.solve(&b).expect("solvable");
        assert_eq!(a.mul_vec(&x), b);
    }

    #[test]
    fn solve_fuzz() {
        // solve(A, A·x) always succeeds and solutions really solve; kernel
        // vectors really lie in the kernel
        let mut rng = SplitMix64::new(0x5eed_0004);
        for _ in 0..80 {
            let rows = 2 + rng.index(3);
            let cols = 2 + rng.index(3);
            let a = random_mat(&mut rng, rows, cols, 4);
            let x: Vec<i64> = (0..cols).map(|_| rng.range(-4, 4)).collect();
            let b = a.mul_vec(&x);
            let x2 = a.solve(&b).expect("constructed system is solvable");
            assert_eq!(a.mul_vec(&x2), b);
            let k = a.kernel_basis();
            for j in 0..k.ncols() {
                assert!(a.mul_vec(&k.col(j)).iter().all(|&v| v == 0));
            }
            // rank-nullity over the rationals
            assert_eq!(a.rank() + k.ncols(), cols);
        }
    }

    #[test]
    fn charpoly_matches_direct_expansion() {
        let mut rng = SplitMix64::new(0x5eed_0003);
        for _ in 0..40 {
            let m = random_mat(&mut rng, 3, 3, 4);
            let cp = m.charpoly();
            // evaluate det(q I - m) at a few points and compare
            for q in -4..=4i64 {
                let mut qi = IntMat::identity(3).scale(q);
                qi = qi.add(&m.neg());
                let direct = qi.det();
                let horner = cp.iter().fold(0i64, |acc, &c| acc * q + c);
                assert_eq!(direct, horner);
            }
        }
    }

    #[test]
    fn det_and_inverse() {
        let m = IntMat::from_rows(vec![vec![1, 1, 0], vec![0, 1, 0], vec![2, 0, 1]]);
        assert_eq!(m.det(), 1);
        let inv = m.inverse_unimodular();
        assert_eq!(m.mul(&inv), IntMat::identity(3));
        assert_eq!(IntMat::identity(0).det(), 1);
    }

    #[test]
    fn image_order() {
        // surjective 3x4 map: image mod n has order n^3
        let a = IntMat::from_rows(vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1], vec![-1, -1, 0, 0]]);
        assert_eq!(image_order_mod(&a, 2), 8);
        assert_eq!(image_order_mod(&a, 6), 216);
        let b = IntMat::from_rows(vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(image_order_mod(&b, 6), 3 * 2);
    }
}

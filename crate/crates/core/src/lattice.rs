//! Exact integer linear algebra: Hermite and Smith normal forms with
//! unimodular transform certificates, kernels of bicharacters mod `l`,
//! lattice indices and PI degrees, and compatible-pair checking.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

use crate::torus::{Bicharacter, IndexProfile};
use crate::{Error, Result};

/// Dense matrix with arbitrary-precision integer entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let data = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * other.get(k, j);
                    out.data[i * other.cols + j] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        i64::try_from(self.get(i, j)).expect("matrix entry exceeds i64")
                    })
                    .collect()
            })
            .collect()
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
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// col_target += factor * col_src
    fn add_col_multiple(&mut self, target: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let t = self.get(i, src) * factor;
            self.data[i * self.cols + target] += t;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    fn add_row_multiple(&mut self, target: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let t = self.get(src, j) * factor;
            self.data[target * self.cols + j] += t;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num.div_rem(&prev).0;
                }
            }
            for i in k + 1..n {
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }
}

/// Column-style Hermite normal form: returns `(H, U)` with `M * U = H`,
/// `U` unimodular, `H` in column echelon form with positive pivots and
/// reduced entries to the left of each pivot.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.cols);
    let mut c = 0;
    for r in 0..h.rows {
        if c >= h.cols {
            break;
        }
        if (c..h.cols).all(|j| h.get(r, j).is_zero()) {
            continue;
        }
        // Euclidean reduction across columns c.. on row r
        loop {
            let mut best: Option<usize> = None;
            for j in c..h.cols {
                if !h.get(r, j).is_zero()
                    && best.is_none_or(|b| h.get(r, j).abs() < h.get(r, b).abs())
                {
                    best = Some(j);
                }
            }
            let b = best.unwrap();
            h.swap_cols(c, b);
            u.swap_cols(c, b);
            let pivot = h.get(r, c).clone();
            let mut cleared = true;
            for j in c + 1..h.cols {
                if h.get(r, j).is_zero() {
                    continue;
                }
                let q = h.get(r, j).div_rem(&pivot).0;
                if !q.is_zero() {
                    let neg_q = -q;
                    h.add_col_multiple(j, c, &neg_q);
                    u.add_col_multiple(j, c, &neg_q);
                }
                if !h.get(r, j).is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if h.get(r, c).is_negative() {
            h.negate_col(c);
            u.negate_col(c);
        }
        // reduce entries to the left of the pivot into [0, pivot)
        let pivot = h.get(r, c).clone();
        for j in 0..c {
            let q = h.get(r, j).div_mod_floor(&pivot).0;
            if !q.is_zero() {
                let neg_q = -q;
                h.add_col_multiple(j, c, &neg_q);
                u.add_col_multiple(j, c, &neg_q);
            }
        }
        c += 1;
    }
    (h, u)
}

/// Number of nonzero columns of a column-echelon matrix.
fn echelon_rank(h: &IntMatrix) -> usize {
    (0..h.cols)
        .filter(|&j| (0..h.rows).any(|i| !h.get(i, j).is_zero()))
        .count()
}

pub fn rank(m: &IntMatrix) -> usize {
    echelon_rank(&hnf(m).0)
}

/// Basis of the integer right kernel `{x : M x = 0}`, as matrix columns.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf(m);
    let zero_cols: Vec<usize> = (0..h.cols)
        .filter(|&j| (0..h.rows).all(|i| h.get(i, j).is_zero()))
        .collect();
    let mut k = IntMatrix::zero(m.cols, zero_cols.len());
    for (out_j, &j) in zero_cols.iter().enumerate() {
        for i in 0..m.cols {
            k.set(i, out_j, u.get(i, j).clone());
        }
    }
    k
}

/// Smith normal form: returns `(S, L, R)` with `L * M * R = S`, `L` and `R`
/// unimodular, `S` diagonal with nonnegative entries in a divisor chain.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = m.clone();
    let mut l = IntMatrix::identity(m.rows);
    let mut r = IntMatrix::identity(m.cols);
    let dim = m.rows.min(m.cols);
    for t in 0..dim {
        'pivot: loop {
            // locate a minimal nonzero entry in the trailing submatrix
            let mut best: Option<(usize, usize)> = None;
            for i in t..s.rows {
                for j in t..s.cols {
                    if !s.get(i, j).is_zero()
                        && best.is_none_or(|(bi, bj)| s.get(i, j).abs() < s.get(bi, bj).abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish_snf(s, l, r, t);
            };
            s.swap_rows(t, bi);
            l.swap_rows(t, bi);
            s.swap_cols(t, bj);
            r.swap_cols(t, bj);
            let pivot = s.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..s.rows {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = -s.get(i, t).div_rem(&pivot).0;
                s.add_row_multiple(i, t, &q);
                l.add_row_multiple(i, t, &q);
                if !s.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..s.cols {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = -s.get(t, j).div_rem(&pivot).0;
                s.add_col_multiple(j, t, &q);
                r.add_col_multiple(j, t, &q);
                if !s.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }
            // divisor-chain repair: fold in any entry the pivot misses
            for i in t + 1..s.rows {
                for j in t + 1..s.cols {
                    if !s.get(i, j).is_divisible_by(&pivot) {
                        s.add_row_multiple(t, i, &BigInt::one());
                        l.add_row_multiple(t, i, &BigInt::one());
                        continue 'pivot;
                    }
                }
            }
            break;
        }
    }
    finish_snf(s, l, r, dim)
}

fn finish_snf(
    mut s: IntMatrix,
    mut l: IntMatrix,
    r: IntMatrix,
    upto: usize,
) -> (IntMatrix, IntMatrix, IntMatrix) {
    for t in 0..upto.min(s.rows).min(s.cols) {
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            l.negate_row(t);
        }
    }
    (s, l, r)
}

/// Kernel lattice of a bicharacter mod `l`, with the lattice index in `Z^N`
/// and the PI degree (the integer square root of the index).
#[derive(Debug, Clone)]
pub struct KernelData {
    /// Column basis of the kernel lattice in ambient coordinates, in column
    /// Hermite normal form.
    pub basis: IntMatrix,
    /// Index of the kernel lattice in the relevant lattice (`Z^N` for the
    /// full kernel, the sublattice for a restricted kernel).
    pub index: BigInt,
    /// `d = sqrt(index)`.
    pub pi_degree: BigInt,
}

impl KernelData {
    /// Does the kernel lattice contain `f`? Forward substitution on the
    /// column-HNF basis followed by an exactness check.
    pub fn contains(&self, f: &[i64]) -> bool {
        assert_eq!(f.len(), self.basis.rows, "vector rank mismatch");
        let mut rem: Vec<BigInt> = f.iter().map(|&x| BigInt::from(x)).collect();
        for j in 0..self.basis.cols {
            let Some(p) = (0..self.basis.rows).find(|&i| !self.basis.get(i, j).is_zero()) else {
                continue;
            };
            let (q, r) = rem[p].div_rem(self.basis.get(p, j));
            if !r.is_zero() {
                return false;
            }
            for i in 0..self.basis.rows {
                let t = self.basis.get(i, j) * &q;
                rem[i] -= t;
            }
        }
        rem.iter().all(|x| x.is_zero())
    }
}

fn lift(lam: &Bicharacter) -> IntMatrix {
    IntMatrix::from_rows(lam.entries())
}

/// `Ker(L) = {f in Z^N : L(f, g) = 0 mod l for all g}`, computed integrally
/// as the projection to the first `N` coordinates of the kernel of the block
/// `[L_lift | l * Id]`.
pub fn kernel_mod_ell(lam: &Bicharacter) -> KernelData {
    let n = lam.n;
    let mut block = IntMatrix::zero(n, 2 * n);
    let l = lift(lam);
    for i in 0..n {
        for j in 0..n {
            block.set(i, j, l.get(i, j).clone());
        }
        block.set(i, n + i, BigInt::from(lam.ell));
    }
    let k = kernel_basis(&block);
    // project to the first n coordinates
    let mut proj = IntMatrix::zero(n, k.cols);
    for j in 0..k.cols {
        for i in 0..n {
            proj.set(i, j, k.get(i, j).clone());
        }
    }
    let (h, _) = hnf(&proj);
    let r = echelon_rank(&h);
    assert_eq!(r, n, "kernel lattice must have full rank");
    let mut basis = IntMatrix::zero(n, n);
    for j in 0..n {
        for i in 0..n {
            basis.set(i, j, h.get(i, j).clone());
        }
    }
    let index: BigInt = (0..n).map(|j| basis.get(j, j).clone()).product();
    let pi = index.sqrt();
    assert_eq!(
        &pi * &pi,
        index,
        "kernel index of an alternating form must be a perfect square"
    );
    KernelData {
        basis,
        index,
        pi_degree: pi,
    }
}

/// Kernel of the restriction of `lam` to the sublattice spanned by the
/// columns of `sub`; the index is taken inside the sublattice, and the
/// returned basis is expressed in ambient coordinates.
pub fn restricted_kernel(lam: &Bicharacter, sub: &IntMatrix) -> Result<KernelData> {
    if sub.rows != lam.n {
        return Err(Error::RankMismatch {
            expected: lam.n,
            got: sub.rows,
        });
    }
    let r = sub.cols;
    if rank(sub) != r {
        return Err(Error::BadInput("sublattice columns are dependent".into()));
    }
    let restricted = sub.transpose().mul(&lift(lam)).mul(sub);
    let m = lam.ell as i64;
    let entries: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let v = restricted.get(i, j).mod_floor(&BigInt::from(m));
                    i64::try_from(&v).expect("reduced entry fits i64")
                })
                .collect()
        })
        .collect();
    let lam_sub = Bicharacter::new(r, lam.ell, entries)?;
    let inner = kernel_mod_ell(&lam_sub);
    let ambient = sub.mul(&inner.basis);
    let (h, _) = hnf(&ambient);
    let rk = echelon_rank(&h);
    let mut basis = IntMatrix::zero(lam.n, rk);
    for j in 0..rk {
        for i in 0..lam.n {
            basis.set(i, j, h.get(i, j).clone());
        }
    }
    Ok(KernelData {
        basis,
        index: inner.index,
        pi_degree: inner.pi_degree,
    })
}

/// The l-compatibility condition: `L^T * Btilde = [D; 0]` entrywise mod `l`,
/// rows indexed so that row `ex[j]` carries `d_j`. Validates that `D` is
/// diagonal with positive entries and that `D B` is skew-symmetric over `Z`.
pub fn check_compatible(
    lam: &Bicharacter,
    btilde: &IntMatrix,
    dmat: &IntMatrix,
    idx: &IndexProfile,
) -> Result<bool> {
    let n = lam.n;
    let ne = idx.ex.len();
    if btilde.rows != n || btilde.cols != ne {
        return Err(Error::BadInput(format!(
            "exchange matrix must be {n}x{ne}"
        )));
    }
    validate_skew_symmetrizer(btilde, dmat, idx)?;
    let prod = lift(lam).transpose().mul(btilde);
    let ell = BigInt::from(lam.ell);
    for i in 0..n {
        for j in 0..ne {
            let expected = if i == idx.ex[j] {
                dmat.get(j, j).clone()
            } else {
                BigInt::zero()
            };
            if !(prod.get(i, j) - expected).is_divisible_by(&ell) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `D` diagonal positive and `D B` skew-symmetric over the integers, where
/// `B` is the principal part of the exchange matrix.
pub fn validate_skew_symmetrizer(
    btilde: &IntMatrix,
    dmat: &IntMatrix,
    idx: &IndexProfile,
) -> Result<()> {
    let ne = idx.ex.len();
    if dmat.rows != ne || dmat.cols != ne {
        return Err(Error::BadInput(format!("D must be {ne}x{ne}")));
    }
    for i in 0..ne {
        for j in 0..ne {
            if i == j {
                if !dmat.get(i, i).is_positive() {
                    return Err(Error::BadInput("D diagonal must be positive".into()));
                }
            } else if !dmat.get(i, j).is_zero() {
                return Err(Error::BadInput("D must be diagonal".into()));
            }
        }
    }
    for a in 0..ne {
        for b in 0..ne {
            let lhs = dmat.get(a, a) * btilde.get(idx.ex[a], b);
            let rhs = dmat.get(b, b) * btilde.get(idx.ex[b], a);
            if lhs != -rhs {
                return Err(Error::BadInput(
                    "D does not skew-symmetrize the principal part".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Condition (Coprime): `l` odd and coprime to every diagonal entry of `D`.
pub fn check_coprime_condition(ell: u64, dmat: &IntMatrix) -> bool {
    if ell % 2 == 0 {
        return false;
    }
    let ell = BigInt::from(ell);
    (0..dmat.rows).all(|j| dmat.get(j, j).gcd(&ell).is_one())
}

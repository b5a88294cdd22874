//! Root-of-unity quantum seeds and their mutation.
//!
//! A seed couples an exchange matrix, a skew-symmetrizer, its own
//! bicharacter, and the toric-frame generator values expressed as exact
//! Laurent elements of the initial ambient torus. Mutation of the frame
//! variable is realized as the exact left quotient of the element `Q_1` by
//! the current variable, which exists by the root-of-unity Laurent
//! phenomenon; mutation of the bicharacter uses an elementary-matrix
//! congruence that is certified after the fact by frame quasi-commutation.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycContext;
use crate::lattice::{check_compatible, check_coprime_condition, IntMatrix};
use crate::torus::{exact_left_divide, frame_value, Bicharacter, IndexProfile, TorusElement};
use crate::{Error, Result};

/// A root-of-unity quantum seed. Frame values live in the coordinates of the
/// initial (root) torus, whose bicharacter is `ambient`.
#[derive(Debug, Clone)]
pub struct Seed {
    pub ctx: Arc<CycContext>,
    pub ambient: Bicharacter,
    pub idx: IndexProfile,
    pub btilde: IntMatrix,
    pub lambda: Bicharacter,
    pub dmat: IntMatrix,
    pub frame: Vec<TorusElement>,
    pub path: Vec<usize>,
}

impl Seed {
    /// Root seed: frame generators are the basis monomials of the torus.
    pub fn new_root(
        ctx: Arc<CycContext>,
        idx: IndexProfile,
        btilde: IntMatrix,
        lambda: Bicharacter,
        dmat: IntMatrix,
    ) -> Result<Seed> {
        if lambda.n != idx.n {
            return Err(Error::RankMismatch {
                expected: idx.n,
                got: lambda.n,
            });
        }
        if lambda.ell != ctx.ell {
            return Err(Error::BadInput("bicharacter modulus differs from context".into()));
        }
        if !check_compatible(&lambda, &btilde, &dmat, &idx)? {
            return Err(Error::InvariantViolated(
                "seed data is not l-compatible".into(),
            ));
        }
        let n = idx.n;
        let frame = (0..n)
            .map(|i| {
                let mut f = vec![0i64; n];
                f[i] = 1;
                TorusElement::monomial(&ctx, f, ctx.one().to_rat())
            })
            .collect();
        Ok(Seed {
            ambient: lambda.clone(),
            ctx,
            idx,
            btilde,
            lambda,
            dmat,
            frame,
            path: vec![],
        })
    }

    pub fn rank(&self) -> usize {
        self.idx.n
    }

    pub fn ell(&self) -> u64 {
        self.ctx.ell
    }

    /// The `k`-th exchange column `b^k` as a length-`N` vector.
    pub fn exchange_column(&self, k: usize) -> Result<Vec<i64>> {
        let pos = self.idx.ex_position(k).ok_or(Error::FrozenIndex(k))?;
        Ok((0..self.rank())
            .map(|i| i64::try_from(self.btilde.get(i, pos)).expect("exchange entry fits i64"))
            .collect())
    }

    /// Frame value `M(f)` expanded in root coordinates. Negative exponents
    /// are allowed only at positions with monomial frame values.
    pub fn frame_monomial(&self, f: &[i64]) -> Result<TorusElement> {
        frame_value(&self.frame, f, &self.lambda, &self.ambient)
    }

    /// Frame quasi-commutation against the seed's own bicharacter, checked
    /// exactly in root coordinates.
    pub fn validate_frame(&self) -> Result<()> {
        let n = self.rank();
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = self.frame[i].mul(&self.frame[j], &self.ambient);
                let rhs = self.frame[j]
                    .mul(&self.frame[i], &self.ambient)
                    .scale_zeta(2 * self.lambda.entry(i, j));
                if lhs != rhs {
                    return Err(Error::InvariantViolated(format!(
                        "frame quasi-commutation fails at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Deterministic key identifying the seed up to nothing (exact identity):
    /// exchange matrix, bicharacter, and frame values.
    pub fn identity_key(&self) -> String {
        let mut s = String::new();
        for i in 0..self.btilde.rows {
            for j in 0..self.btilde.cols {
                s.push_str(&format!("{},", self.btilde.get(i, j)));
            }
        }
        s.push('|');
        for row in self.lambda.entries() {
            s.push_str(&format!("{row:?}"));
        }
        s.push('|');
        for f in &self.frame {
            s.push_str(&f.key());
            s.push('#');
        }
        s
    }
}

/// Matrix mutation in direction `k` (a 0-based exchangeable index).
pub fn mutate_btilde(btilde: &IntMatrix, idx: &IndexProfile, k: usize) -> Result<IntMatrix> {
    let pos_k = idx.ex_position(k).ok_or(Error::FrozenIndex(k))?;
    let mut out = IntMatrix::zero(btilde.rows, btilde.cols);
    for i in 0..btilde.rows {
        for j in 0..btilde.cols {
            let col_index = idx.ex[j];
            let v = if i == k || col_index == k {
                -btilde.get(i, j).clone()
            } else {
                let b_ik = btilde.get(i, pos_k);
                let b_kj = btilde.get(k, j);
                let corr = (b_ik.clone().abs() * b_kj + b_ik * b_kj.clone().abs()) / 2
                    + btilde.get(i, j);
                corr
            };
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Bicharacter mutation as the congruence `E^T L E` mod `l`, where `E` fixes
/// `e_j` for `j != k` and has `k`-th column `[b_{ik}]_+` off the diagonal and
/// `-1` at `(k, k)`. Certified downstream by frame quasi-commutation.
pub fn mutate_lambda(
    lambda: &Bicharacter,
    btilde: &IntMatrix,
    idx: &IndexProfile,
    k: usize,
) -> Result<Bicharacter> {
    let pos_k = idx.ex_position(k).ok_or(Error::FrozenIndex(k))?;
    let n = lambda.n;
    let mut e = IntMatrix::identity(n);
    for i in 0..n {
        if i == k {
            e.set(k, k, num_bigint::BigInt::from(-1));
        } else {
            let b_ik = btilde.get(i, pos_k).clone();
            e.set(i, k, b_ik.max(num_bigint::BigInt::ZERO));
        }
    }
    let lam_lift = IntMatrix::from_rows(lambda.entries());
    let prod = e.transpose().mul(&lam_lift).mul(&e);
    let entries: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i64::try_from(prod.get(i, j)).expect("mutated entry fits i64"))
                .collect()
        })
        .collect();
    Bicharacter::new(n, lambda.ell, entries)
}

/// `Q_n` for the seed at direction `k`, in the seed's own coordinates:
/// `zeta^{n L'(e_k, [b^k]_+)} X^{[b^k]_+} + zeta^{-n L'(e_k, [b^k]_-)} X^{-[b^k]_-}`.
/// The result lies in the no-`k` subtorus since `b_{kk} = 0`.
pub fn q_element(seed: &Seed, k: usize, n: i64) -> Result<TorusElement> {
    let bk = seed.exchange_column(k)?;
    let (bplus, bminus_neg): (Vec<i64>, Vec<i64>) =
        bk.iter().map(|&x| (x.max(0), (-x).max(0))).unzip();
    let lam = &seed.lambda;
    let s_plus = (n as i128 * lam.eval_basis(k, &bplus) as i128).rem_euclid(lam.ell as i128) as i64;
    // L'(e_k, [b^k]_-) = -L'(e_k, -[b^k]_-), so the - sign cancels
    let s_minus =
        (n as i128 * lam.eval_basis(k, &bminus_neg) as i128).rem_euclid(lam.ell as i128) as i64;
    let ctx = &seed.ctx;
    let a = TorusElement::monomial(ctx, bplus, ctx.zeta_pow(s_plus).to_rat());
    let b = TorusElement::monomial(ctx, bminus_neg, ctx.zeta_pow(s_minus).to_rat());
    Ok(a.add(&b))
}

/// `Q_1` expanded in root coordinates through the seed's frame.
pub fn q1_in_root(seed: &Seed, k: usize) -> Result<TorusElement> {
    let bk = seed.exchange_column(k)?;
    let (bplus, bminus_neg): (Vec<i64>, Vec<i64>) =
        bk.iter().map(|&x| (x.max(0), (-x).max(0))).unzip();
    let lam = &seed.lambda;
    let s_plus = lam.eval_basis(k, &bplus);
    let s_minus = lam.eval_basis(k, &bminus_neg);
    let a = seed.frame_monomial(&bplus)?.scale_zeta(s_plus);
    let b = seed.frame_monomial(&bminus_neg)?.scale_zeta(s_minus);
    Ok(a.add(&b))
}

/// Seed mutation in direction `k`. The new frame variable is the exact left
/// quotient of `Q_1` by the current variable (`Q_1 = x_k y_k`); a division
/// failure here means a broken invariant and is escalated.
pub fn mutate(seed: &Seed, k: usize) -> Result<Seed> {
    if !seed.idx.is_exchangeable(k) {
        return Err(Error::FrozenIndex(k));
    }
    let q1 = q1_in_root(seed, k)?;
    let y = exact_left_divide(&seed.frame[k], &q1, &seed.ambient).map_err(|e| {
        Error::InvariantViolated(format!(
            "mutated variable is not Laurent in the initial torus: {e}"
        ))
    })?;
    let new_btilde = mutate_btilde(&seed.btilde, &seed.idx, k)?;
    let new_lambda = mutate_lambda(&seed.lambda, &seed.btilde, &seed.idx, k)?;
    let mut frame = seed.frame.clone();
    frame[k] = y;
    let mut path = seed.path.clone();
    path.push(k);
    let out = Seed {
        ctx: Arc::clone(&seed.ctx),
        ambient: seed.ambient.clone(),
        idx: seed.idx.clone(),
        btilde: new_btilde,
        lambda: new_lambda,
        dmat: seed.dmat.clone(),
        frame,
        path,
    };
    if !check_compatible(&out.lambda, &out.btilde, &out.dmat, &out.idx)? {
        return Err(Error::InvariantViolated(
            "mutated pair lost l-compatibility".into(),
        ));
    }
    out.validate_frame()?;
    Ok(out)
}

/// Apply a mutation word left to right.
pub fn mutate_word(seed: &Seed, word: &[usize]) -> Result<Seed> {
    let mut s = seed.clone();
    for &k in word {
        s = mutate(&s, k)?;
    }
    Ok(s)
}

/// The l-th power exchange identity at seed and direction `k`:
/// `x_k^l y_k^l = prod_{b_ik > 0} (x_i^l)^{b_ik} + prod_{b_ik < 0} (x_i^l)^{-b_ik}`,
/// verified exactly in the initial torus. Requires condition (Coprime).
pub fn ell_power_check(seed: &Seed, k: usize) -> Result<bool> {
    if !check_coprime_condition(seed.ell(), &seed.dmat) {
        return Err(Error::CoprimeViolated(format!(
            "l = {} must be odd and coprime to the skew-symmetrizer",
            seed.ell()
        )));
    }
    let ell = seed.ell();
    let mutated = mutate(seed, k)?;
    let lam = &seed.ambient;
    let lhs = seed.frame[k]
        .pow(ell, lam)
        .mul(&mutated.frame[k].pow(ell, lam), lam);
    let bk = seed.exchange_column(k)?;
    let mut pos = TorusElement::one(&seed.ctx, seed.rank());
    let mut neg = TorusElement::one(&seed.ctx, seed.rank());
    for (i, &b) in bk.iter().enumerate() {
        if b > 0 {
            pos = pos.mul(&seed.frame[i].pow(ell, lam).pow(b as u64, lam), lam);
        } else if b < 0 {
            neg = neg.mul(&seed.frame[i].pow(ell, lam).pow((-b) as u64, lam), lam);
        }
    }
    Ok(lhs == pos.add(&neg))
}

/// The type `A2` system: `Btilde = [[0,1],[-1,0]]`, `Lambda` its reduction
/// mod `l`, trivial skew-symmetrizer, no frozen indices.
pub fn a2_seed(ell: u64) -> Result<Seed> {
    let ctx = CycContext::new(ell)?;
    let idx = IndexProfile::all_exchangeable(2);
    let btilde = IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]);
    let lambda = Bicharacter::new(2, ell, vec![vec![0, 1], vec![-1, 0]])?;
    let dmat = IntMatrix::identity(2);
    Seed::new_root(ctx, idx, btilde, lambda, dmat)
}

/// A rank-2 system of type `B2`: `Btilde = [[0,2],[-1,0]]` with
/// skew-symmetrizer `diag(1,2)` and `Lambda = [[0,1],[-1,0]]` mod `l`.
pub fn b2_seed(ell: u64) -> Result<Seed> {
    let ctx = CycContext::new(ell)?;
    let idx = IndexProfile::all_exchangeable(2);
    let btilde = IntMatrix::from_rows(&[vec![0, 2], vec![-1, 0]]);
    let lambda = Bicharacter::new(2, ell, vec![vec![0, 1], vec![-1, 0]])?;
    let dmat = IntMatrix::from_rows(&[vec![1, 0], vec![0, 2]]);
    Seed::new_root(ctx, idx, btilde, lambda, dmat)
}

/// Commutative seed for the classical shadow: cluster variables as Laurent
/// polynomials in the zero-bicharacter torus.
#[derive(Debug, Clone)]
pub struct ClassicalSeed {
    pub ctx: Arc<CycContext>,
    pub idx: IndexProfile,
    pub btilde: IntMatrix,
    pub vars: Vec<TorusElement>,
    pub path: Vec<usize>,
}

impl ClassicalSeed {
    pub fn new_root(ctx: Arc<CycContext>, idx: IndexProfile, btilde: IntMatrix) -> ClassicalSeed {
        let n = idx.n;
        let vars = (0..n)
            .map(|i| {
                let mut f = vec![0i64; n];
                f[i] = 1;
                TorusElement::monomial(&ctx, f, ctx.one().to_rat())
            })
            .collect();
        ClassicalSeed {
            ctx,
            idx,
            btilde,
            vars,
            path: vec![],
        }
    }

    pub fn identity_key(&self) -> String {
        let mut s = String::new();
        for i in 0..self.btilde.rows {
            for j in 0..self.btilde.cols {
                s.push_str(&format!("{},", self.btilde.get(i, j)));
            }
        }
        s.push('|');
        for v in &self.vars {
            s.push_str(&v.key());
            s.push('#');
        }
        s
    }
}

/// Classical exchange: `x_k x_k' = prod_{b_ik>0} x_i^{b_ik} + prod_{b_ik<0} x_i^{-b_ik}`.
pub fn classical_mutate(seed: &ClassicalSeed, k: usize) -> Result<ClassicalSeed> {
    let pos_k = seed.idx.ex_position(k).ok_or(Error::FrozenIndex(k))?;
    let n = seed.idx.n;
    let zero = Bicharacter::zero(n, seed.ctx.ell);
    let mut pos = TorusElement::one(&seed.ctx, n);
    let mut neg = TorusElement::one(&seed.ctx, n);
    for i in 0..n {
        let b = i64::try_from(seed.btilde.get(i, pos_k)).expect("entry fits i64");
        if b > 0 {
            pos = pos.mul(&seed.vars[i].pow(b as u64, &zero), &zero);
        } else if b < 0 {
            neg = neg.mul(&seed.vars[i].pow((-b) as u64, &zero), &zero);
        }
    }
    let rhs = pos.add(&neg);
    let new_var = exact_left_divide(&seed.vars[k], &rhs, &zero).map_err(|e| {
        Error::InvariantViolated(format!("classical mutation not Laurent: {e}"))
    })?;
    let mut vars = seed.vars.clone();
    vars[k] = new_var;
    let mut path = seed.path.clone();
    path.push(k);
    Ok(ClassicalSeed {
        ctx: Arc::clone(&seed.ctx),
        idx: seed.idx.clone(),
        btilde: mutate_btilde(&seed.btilde, &seed.idx, k)?,
        vars,
        path,
    })
}

/// JSON document describing a root seed. Indices are 1-based on the wire.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeedDocument {
    pub ell: u64,
    pub n: usize,
    pub ex: Vec<usize>,
    #[serde(default)]
    pub inv: Vec<usize>,
    /// Row-major `n x |ex|` exchange matrix.
    pub btilde: Vec<Vec<i64>>,
    /// Row-major `n x n` bicharacter.
    pub lambda: Vec<Vec<i64>>,
    /// Diagonal of the skew-symmetrizer, one entry per exchangeable index.
    pub d: Vec<i64>,
}

impl SeedDocument {
    pub fn to_seed(&self) -> Result<Seed> {
        let ctx = CycContext::new(self.ell)?;
        let to_zero_based = |v: &[usize]| -> Result<Vec<usize>> {
            v.iter()
                .map(|&i| {
                    if i == 0 || i > self.n {
                        Err(Error::BadInput(format!("index {i} out of range 1..={}", self.n)))
                    } else {
                        Ok(i - 1)
                    }
                })
                .collect()
        };
        let idx = IndexProfile::new(self.n, to_zero_based(&self.ex)?, to_zero_based(&self.inv)?)?;
        let btilde = IntMatrix::from_rows(&self.btilde);
        let lambda = Bicharacter::new(self.n, self.ell, self.lambda.clone())?;
        if self.d.len() != idx.ex.len() {
            return Err(Error::BadInput("d must have one entry per exchangeable index".into()));
        }
        let mut dmat = IntMatrix::zero(idx.ex.len(), idx.ex.len());
        for (j, &v) in self.d.iter().enumerate() {
            dmat.set(j, j, num_bigint::BigInt::from(v));
        }
        Seed::new_root(ctx, idx, btilde, lambda, dmat)
    }

    pub fn a2(ell: u64) -> SeedDocument {
        SeedDocument {
            ell,
            n: 2,
            ex: vec![1, 2],
            inv: vec![],
            btilde: vec![vec![0, 1], vec![-1, 0]],
            lambda: vec![vec![0, 1], vec![-1, 0]],
            d: vec![1, 1],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycRat;
    use num_bigint::BigInt;

    fn xf(seed: &Seed, f: &[i64]) -> TorusElement {
        TorusElement::monomial(&seed.ctx, f.to_vec(), seed.ctx.one().to_rat())
    }

    fn zeta_term(seed: &Seed, f: &[i64], k: i64) -> TorusElement {
        TorusElement::monomial(&seed.ctx, f.to_vec(), seed.ctx.zeta_pow(k).to_rat())
    }

    #[test]
    fn btilde_mutation_a2() {
        let s = a2_seed(3).unwrap();
        let m = mutate_btilde(&s.btilde, &s.idx, 0).unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]));
        let back = mutate_btilde(&m, &s.idx, 0).unwrap();
        assert_eq!(back, s.btilde);
    }

    #[test]
    fn btilde_mutation_b2() {
        let s = b2_seed(3).unwrap();
        let m = mutate_btilde(&s.btilde, &s.idx, 0).unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[vec![0, -2], vec![1, 0]]));
    }

    #[test]
    fn lambda_mutation_a2() {
        let s = a2_seed(3).unwrap();
        let l = mutate_lambda(&s.lambda, &s.btilde, &s.idx, 0).unwrap();
        let expected = Bicharacter::new(2, 3, vec![vec![0, -1], vec![1, 0]]).unwrap();
        assert_eq!(l, expected);
        // involutive on the mutated data
        let b1 = mutate_btilde(&s.btilde, &s.idx, 0).unwrap();
        let l2 = mutate_lambda(&l, &b1, &s.idx, 0).unwrap();
        assert_eq!(l2, s.lambda);
    }

    #[test]
    fn q_element_a2() {
        let s = a2_seed(3).unwrap();
        // Q_1 = 1 + zeta X^(0,1)
        let q1 = q_element(&s, 0, 1).unwrap();
        let expected = xf(&s, &[0, 0]).add(&zeta_term(&s, &[0, 1], 1));
        assert_eq!(q1, expected);
        // Q_{-1} = 1 + zeta^{-1} X^(0,1)
        let qm1 = q_element(&s, 0, -1).unwrap();
        let expected = xf(&s, &[0, 0]).add(&zeta_term(&s, &[0, 1], -1));
        assert_eq!(qm1, expected);
        // Q_1 = x_k y_k
        let mutated = mutate(&s, 0).unwrap();
        let prod = s.frame[0].mul(&mutated.frame[0], &s.ambient);
        assert_eq!(prod, q1_in_root(&s, 0).unwrap());
        assert_eq!(prod, q1);
    }

    #[test]
    fn q_element_zero_column() {
        // rank-2 seed with a zero exchange column: Q_n = 2
        let ctx = CycContext::new(3).unwrap();
        let idx = IndexProfile::new(2, vec![0], vec![]).unwrap();
        let btilde = IntMatrix::from_rows(&[vec![0], vec![0]]);
        let lambda = Bicharacter::zero(2, 3);
        let dmat = IntMatrix::identity(1);
        let s = Seed::new_root(ctx, idx, btilde, lambda, dmat).unwrap();
        let q = q_element(&s, 0, 5).unwrap();
        let two = TorusElement::monomial(
            &s.ctx,
            vec![0, 0],
            CycRat::new(s.ctx.int(2), BigInt::from(1)),
        );
        assert_eq!(q, two);
    }

    #[test]
    fn mutation_first_direction_gives_y1() {
        let s = a2_seed(3).unwrap();
        let m = mutate(&s, 0).unwrap();
        // Y1 = M(-e1) + M(-e1+e2) = X^(-1,0) + X^(-1,1)
        let y1 = xf(&s, &[-1, 0]).add(&xf(&s, &[-1, 1]));
        assert_eq!(m.frame[0], y1);
        assert_eq!(m.frame[1], s.frame[1]);
        assert_eq!(m.path, vec![0]);
    }

    #[test]
    fn mutation_second_direction_gives_y2() {
        let s = a2_seed(3).unwrap();
        let m = mutate(&s, 1).unwrap();
        // Y2 = M(e1-e2) + M(-e2) = X^(1,-1) + X^(0,-1)
        let y2 = xf(&s, &[1, -1]).add(&xf(&s, &[0, -1]));
        assert_eq!(m.frame[1], y2);
    }

    #[test]
    fn mutation_involutive() {
        for ell in [3, 5] {
            let s = a2_seed(ell).unwrap();
            let back = mutate(&mutate(&s, 0).unwrap(), 0).unwrap();
            assert_eq!(back.frame, s.frame);
            assert_eq!(back.btilde, s.btilde);
            assert_eq!(back.lambda, s.lambda);
            assert_eq!(back.path, vec![0, 0]);
        }
    }

    #[test]
    fn frozen_direction_rejected() {
        let ctx = CycContext::new(3).unwrap();
        let idx = IndexProfile::new(2, vec![0], vec![]).unwrap();
        let btilde = IntMatrix::from_rows(&[vec![0], vec![0]]);
        let lambda = Bicharacter::zero(2, 3);
        let dmat = IntMatrix::identity(1);
        let s = Seed::new_root(ctx, idx, btilde, lambda, dmat).unwrap();
        assert!(matches!(mutate(&s, 1), Err(Error::FrozenIndex(1))));
    }

    #[test]
    fn ell_power_identity_a2() {
        for ell in [3, 5] {
            let s = a2_seed(ell).unwrap();
            assert!(ell_power_check(&s, 0).unwrap(), "ell = {ell}, k = 1");
            assert!(ell_power_check(&s, 1).unwrap(), "ell = {ell}, k = 2");
        }
    }

    #[test]
    fn ell_power_requires_coprime() {
        let s = a2_seed(4).unwrap();
        assert!(matches!(
            ell_power_check(&s, 0),
            Err(Error::CoprimeViolated(_))
        ));
    }

    #[test]
    fn classical_mutation_matches_exchange() {
        let ctx = CycContext::new(3).unwrap();
        let idx = IndexProfile::all_exchangeable(2);
        let btilde = IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]);
        let root = ClassicalSeed::new_root(ctx, idx, btilde);
        let m = classical_mutate(&root, 0).unwrap();
        // x1' = (1 + x2)/x1 = x1^{-1} + x1^{-1} x2
        let zero = Bicharacter::zero(2, 3);
        let expected = TorusElement::monomial(&root.ctx, vec![-1, 0], root.ctx.one().to_rat())
            .add(&TorusElement::monomial(
                &root.ctx,
                vec![-1, 1],
                root.ctx.one().to_rat(),
            ));
        assert_eq!(m.vars[0], expected);
        // x_k x_k' reproduces the exchange binomial
        let prod = root.vars[0].mul(&m.vars[0], &zero);
        let rhs = TorusElement::one(&root.ctx, 2).add(&TorusElement::monomial(
            &root.ctx,
            vec![0, 1],
            root.ctx.one().to_rat(),
        ));
        assert_eq!(prod, rhs);
    }

    #[test]
    fn seed_document_round_trip() {
        let doc = SeedDocument::a2(3);
        let s = doc.to_seed().unwrap();
        let direct = a2_seed(3).unwrap();
        assert_eq!(s.identity_key(), direct.identity_key());
        let json = serde_json::to_string(&doc).unwrap();
        let parsed: SeedDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.to_seed().unwrap().identity_key(), s.identity_key());
    }
}

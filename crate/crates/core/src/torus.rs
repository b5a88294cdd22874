//! Sparse exact arithmetic in root-of-unity quantum tori.
//!
//! A torus element is a finite map from exponent vectors in `Z^N` to nonzero
//! `Q(zeta)` coefficients; the product of basis monomials is twisted by a
//! skew-symmetric bicharacter: `X^f X^g = zeta^{L(f,g)} X^{f+g}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cyclotomic::{CycContext, CycRat};
use crate::geom;
use crate::{Error, Result};

/// Skew-symmetric bicharacter `Z^N x Z^N -> Z/l`, stored as canonical
/// residues in `0..l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicharacter {
    pub n: usize,
    pub ell: u64,
    entries: Vec<Vec<i64>>,
}

impl Bicharacter {
    /// Build from signed integer entries, reducing mod `l`. Rejects matrices
    /// that are not skew-symmetric with zero diagonal mod `l`.
    pub fn new(n: usize, ell: u64, entries: Vec<Vec<i64>>) -> Result<Bicharacter> {
        if ell == 0 {
            return Err(Error::BadParameter("ell must be positive".into()));
        }
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::BadInput(format!("bicharacter must be {n}x{n}")));
        }
        let m = ell as i64;
        let canon: Vec<Vec<i64>> = entries
            .iter()
            .map(|r| r.iter().map(|&x| x.rem_euclid(m)).collect())
            .collect();
        for i in 0..n {
            if canon[i][i] != 0 {
                return Err(Error::BadInput("bicharacter diagonal must vanish".into()));
            }
            for j in 0..n {
                if (canon[i][j] + canon[j][i]) % m != 0 {
                    return Err(Error::BadInput("bicharacter must be skew-symmetric".into()));
                }
            }
        }
        Ok(Bicharacter {
            n,
            ell,
            entries: canon,
        })
    }

    pub fn zero(n: usize, ell: u64) -> Bicharacter {
        Bicharacter {
            n,
            ell,
            entries: vec![vec![0; n]; n],
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &Vec<Vec<i64>> {
        &self.entries
    }

    /// `L(f, g)` as a canonical residue in `0..l`.
    pub fn eval(&self, f: &[i64], g: &[i64]) -> i64 {
        debug_assert_eq!(f.len(), self.n);
        debug_assert_eq!(g.len(), self.n);
        let mut acc: i128 = 0;
        for i in 0..self.n {
            if f[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                if g[j] == 0 || self.entries[i][j] == 0 {
                    continue;
                }
                acc += f[i] as i128 * self.entries[i][j] as i128 * g[j] as i128;
            }
        }
        acc.rem_euclid(self.ell as i128) as i64
    }

    /// `L(e_k, g)`.
    pub fn eval_basis(&self, k: usize, g: &[i64]) -> i64 {
        let mut acc: i128 = 0;
        for j in 0..self.n {
            acc += self.entries[k][j] as i128 * g[j] as i128;
        }
        acc.rem_euclid(self.ell as i128) as i64
    }
}

/// Exchangeable / inverted-frozen index structure on `{0, .., N-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexProfile {
    pub n: usize,
    pub ex: Vec<usize>,
    pub inv: Vec<usize>,
}

impl IndexProfile {
    pub fn new(n: usize, mut ex: Vec<usize>, mut inv: Vec<usize>) -> Result<IndexProfile> {
        ex.sort_unstable();
        ex.dedup();
        inv.sort_unstable();
        inv.dedup();
        if ex.iter().chain(&inv).any(|&i| i >= n) {
            return Err(Error::BadInput("index out of range".into()));
        }
        if ex.iter().any(|i| inv.contains(i)) {
            return Err(Error::BadInput("ex and inv must be disjoint".into()));
        }
        Ok(IndexProfile { n, ex, inv })
    }

    /// All indices exchangeable: the fully mutable, fully Laurent case.
    pub fn all_exchangeable(n: usize) -> IndexProfile {
        IndexProfile {
            n,
            ex: (0..n).collect(),
            inv: vec![],
        }
    }

    pub fn is_exchangeable(&self, i: usize) -> bool {
        self.ex.binary_search(&i).is_ok()
    }

    /// Frozen and not inverted: exponents must stay nonnegative there.
    pub fn is_frozen_noninverted(&self, i: usize) -> bool {
        !self.is_exchangeable(i) && self.inv.binary_search(&i).is_err()
    }

    /// Position of exchangeable index `k` in the sorted `ex` list (the
    /// column index of `k` in the exchange matrix).
    pub fn ex_position(&self, k: usize) -> Option<usize> {
        self.ex.binary_search(&k).ok()
    }
}

/// Graded-lexicographic total order on `Z^N` (degree sum first, then lex);
/// translation-invariant, which the division loop relies on.
pub fn cmp_grlex(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let sa: i128 = a.iter().map(|&x| x as i128).sum();
    let sb: i128 = b.iter().map(|&x| x as i128).sum();
    sa.cmp(&sb).then_with(|| a.cmp(b))
}

/// Sparse element of the quantum torus: exponent vector -> coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusElement {
    ctx: Arc<CycContext>,
    n: usize,
    terms: BTreeMap<Vec<i64>, CycRat>,
}

impl TorusElement {
    pub fn zero(ctx: &Arc<CycContext>, n: usize) -> TorusElement {
        TorusElement {
            ctx: Arc::clone(ctx),
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<CycContext>, n: usize) -> TorusElement {
        Self::monomial(ctx, vec![0; n], ctx.one().to_rat())
    }

    /// The element `c * X^f`.
    pub fn monomial(ctx: &Arc<CycContext>, f: Vec<i64>, c: CycRat) -> TorusElement {
        let mut t = TorusElement::zero(ctx, f.len());
        t.insert(f, c);
        t
    }

    pub fn context(&self) -> &Arc<CycContext> {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &CycRat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, f: &[i64]) -> Option<&CycRat> {
        self.terms.get(f)
    }

    fn insert(&mut self, f: Vec<i64>, c: CycRat) {
        assert_eq!(f.len(), self.n, "exponent vector has wrong rank");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(f) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn assert_compatible(&self, other: &TorusElement) {
        assert_eq!(self.ctx.ell, other.ctx.ell, "cyclotomic context mismatch");
        assert_eq!(self.n, other.n, "torus rank mismatch");
    }

    pub fn add(&self, other: &TorusElement) -> TorusElement {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (f, c) in &other.terms {
            out.insert(f.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TorusElement) -> TorusElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TorusElement {
        TorusElement {
            ctx: Arc::clone(&self.ctx),
            n: self.n,
            terms: self.terms.iter().map(|(f, c)| (f.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &CycRat) -> TorusElement {
        if c.is_zero() {
            return TorusElement::zero(&self.ctx, self.n);
        }
        TorusElement {
            ctx: Arc::clone(&self.ctx),
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(f, x)| (f.clone(), x.mul(c)))
                .collect(),
        }
    }

    pub fn scale_zeta(&self, k: i64) -> TorusElement {
        TorusElement {
            ctx: Arc::clone(&self.ctx),
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(f, x)| (f.clone(), x.mul_zeta_pow(k)))
                .collect(),
        }
    }

    /// Exact product twisted by `lam`.
    pub fn mul(&self, other: &TorusElement, lam: &Bicharacter) -> TorusElement {
        self.assert_compatible(other);
        assert_eq!(lam.n, self.n, "bicharacter rank mismatch");
        assert_eq!(lam.ell, self.ctx.ell, "bicharacter modulus mismatch");
        let mut out = TorusElement::zero(&self.ctx, self.n);
        for (f, c) in &self.terms {
            for (g, d) in &other.terms {
                let h: Vec<i64> = f.iter().zip(g).map(|(a, b)| a + b).collect();
                let coeff = c.mul(d).mul_zeta_pow(lam.eval(f, g));
                out.insert(h, coeff);
            }
        }
        out
    }

    /// Right-multiply by the single term `c * X^g`.
    fn mul_term(&self, g: &[i64], c: &CycRat, lam: &Bicharacter) -> TorusElement {
        let mut out = TorusElement::zero(&self.ctx, self.n);
        for (f, x) in &self.terms {
            let h: Vec<i64> = f.iter().zip(g).map(|(a, b)| a + b).collect();
            out.insert(h, x.mul(c).mul_zeta_pow(lam.eval(f, g)));
        }
        out
    }

    pub fn pow(&self, e: u64, lam: &Bicharacter) -> TorusElement {
        let mut acc = TorusElement::one(&self.ctx, self.n);
        for _ in 0..e {
            acc = acc.mul(self, lam);
        }
        acc
    }

    /// Inverse of a single-term element; `None` if not a monomial.
    pub fn inv_monomial(&self, _lam: &Bicharacter) -> Option<TorusElement> {
        if self.terms.len() != 1 {
            return None;
        }
        let (f, c) = self.terms.iter().next().unwrap();
        // (c X^f)(c^{-1} X^{-f}) = zeta^{L(f,-f)} = 1 since L is alternating
        let g: Vec<i64> = f.iter().map(|x| -x).collect();
        Some(TorusElement::monomial(&self.ctx, g, c.inv()))
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    /// Vertex set of the Newton polytope (convex hull of the support).
    pub fn newton_vertices(&self) -> Vec<Vec<i64>> {
        geom::hull_vertices(&self.support())
    }

    /// Split by the `k`-th exponent: returns `n -> a_n` with the `k`-th
    /// exponent zeroed throughout, such that `sum_n X^{n e_k} a_n`
    /// reconstructs the element exactly.
    pub fn component_split(&self, k: usize, lam: &Bicharacter) -> BTreeMap<i64, TorusElement> {
        assert!(k < self.n, "index out of range");
        let mut parts: BTreeMap<i64, TorusElement> = BTreeMap::new();
        for (g, c) in &self.terms {
            let deg = g[k];
            let mut f = g.clone();
            f[k] = 0;
            let adj = (-(deg as i128) * lam.eval_basis(k, g) as i128)
                .rem_euclid(lam.ell as i128) as i64;
            let coeff = c.mul_zeta_pow(adj);
            parts
                .entry(deg)
                .or_insert_with(|| TorusElement::zero(&self.ctx, self.n))
                .insert(f, coeff);
        }
        parts
    }

    /// Reassemble `sum_n X^{n e_k} a_n`; inverse of [`component_split`].
    pub fn recombine(
        parts: &BTreeMap<i64, TorusElement>,
        ctx: &Arc<CycContext>,
        n: usize,
        k: usize,
        lam: &Bicharacter,
    ) -> TorusElement {
        let mut out = TorusElement::zero(ctx, n);
        for (&deg, a) in parts {
            let mut f = vec![0i64; n];
            f[k] = deg;
            let xk = TorusElement::monomial(ctx, f, ctx.one().to_rat());
            out = out.add(&xk.mul(a, lam));
        }
        out
    }

    /// Is the element in the mixed torus: all support vectors nonnegative at
    /// frozen non-inverted positions?
    pub fn in_mixed_torus(&self, idx: &IndexProfile) -> bool {
        self.terms.keys().all(|f| {
            (0..self.n).all(|j| !idx.is_frozen_noninverted(j) || f[j] >= 0)
        })
    }

    /// Is the support contained in `(lZ)^N` (plus mixed positivity when an
    /// index profile is supplied)?
    pub fn in_ell_power_subring(&self, ell: u64, idx: Option<&IndexProfile>) -> bool {
        let m = ell as i64;
        let ell_ok = self
            .terms
            .keys()
            .all(|f| f.iter().all(|&x| x.rem_euclid(m) == 0));
        ell_ok && idx.is_none_or(|p| self.in_mixed_torus(p))
    }

    /// Leading term under grlex.
    fn leading(&self) -> Option<(&Vec<i64>, &CycRat)> {
        self.terms.iter().max_by(|a, b| cmp_grlex(a.0, b.0))
    }

    /// Deterministic canonical key (used for seed deduplication).
    pub fn key(&self) -> String {
        let mut s = String::new();
        for (f, c) in &self.terms {
            s.push_str(&format!("{f:?}:{};", c.key()));
        }
        s
    }
}

/// Exact left division: find `v` with `u * v = w`, or report failure with the
/// exponent that escaped the Newton-polytope bound. In a twisted group
/// algebra over `Q(zeta)` the leading terms multiply without cancellation, so
/// peeling grlex-leading terms either terminates with the quotient or
/// produces a candidate exponent `g` such that `g + Newt(u)` is not contained
/// in `Newt(w)`, which certifies that no quotient exists.
pub fn exact_left_divide(
    u: &TorusElement,
    w: &TorusElement,
    lam: &Bicharacter,
) -> Result<TorusElement> {
    if u.is_zero() {
        return Err(Error::BadParameter("division by zero element".into()));
    }
    if w.is_zero() {
        return Ok(TorusElement::zero(u.context(), u.rank()));
    }
    u.assert_compatible(w);
    let (fu, cu) = {
        let (f, c) = u.leading().unwrap();
        (f.clone(), c.clone())
    };
    let cu_inv = cu.inv();
    let u_vertices = u.newton_vertices();
    let w_support = w.support();
    let mut rem = w.clone();
    let mut quot = TorusElement::zero(u.context(), u.rank());
    // candidate exponents live in the Minkowski difference Newt(w) - Newt(u),
    // a finite lattice set, and strictly decrease in grlex; the cap is a
    // defensive backstop only
    let cap = 10_000 + w.num_terms() * u.num_terms() * 64;
    for _ in 0..cap {
        if rem.is_zero() {
            return Ok(quot);
        }
        let (fr, cr) = {
            let (f, c) = rem.leading().unwrap();
            (f.clone(), c.clone())
        };
        let g: Vec<i64> = fr.iter().zip(&fu).map(|(a, b)| a - b).collect();
        for v in &u_vertices {
            let shifted: Vec<i64> = g.iter().zip(v).map(|(a, b)| a + b).collect();
            if !geom::point_in_hull(&shifted, &w_support) {
                return Err(Error::DivisionFailed(format!(
                    "candidate exponent {g:?} leaves the Newton polytope of the dividend"
                )));
            }
        }
        let scalar = cr.mul(&cu_inv).mul_zeta_pow(-lam.eval(&fu, &g));
        quot.insert(g.clone(), scalar.clone());
        rem = rem.sub(&u.mul_term(&g, &scalar, lam));
    }
    Err(Error::DivisionFailed(
        "iteration bound exceeded without progress".into(),
    ))
}

/// The frame value `M(f)`: the zeta-normalized ordered product
/// `zeta^{-sum_{i<j} L'(e_i,e_j) f_i f_j} * prod_i gens[i]^{f_i}`, computed
/// in the torus carrying `ambient`. Negative exponents are admitted exactly
/// when the corresponding generator value is a monomial.
pub fn frame_value(
    gens: &[TorusElement],
    f: &[i64],
    frame_lambda: &Bicharacter,
    ambient: &Bicharacter,
) -> Result<TorusElement> {
    let n = gens.len();
    if f.len() != n {
        return Err(Error::RankMismatch {
            expected: n,
            got: f.len(),
        });
    }
    let ctx = gens[0].context();
    let mut acc = TorusElement::one(ctx, gens[0].rank());
    for (i, &e) in f.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let base = if e > 0 {
            gens[i].clone()
        } else {
            gens[i].inv_monomial(ambient).ok_or_else(|| {
                Error::NotExpandable(format!(
                    "negative exponent at position {} whose frame value is not a monomial",
                    i + 1
                ))
            })?
        };
        acc = acc.mul(&base.pow(e.unsigned_abs(), ambient), ambient);
    }
    let mut twist: i128 = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            twist += frame_lambda.entry(i, j) as i128 * f[i] as i128 * f[j] as i128;
        }
    }
    let twist = (-twist).rem_euclid(frame_lambda.ell as i128) as i64;
    Ok(acc.scale_zeta(twist))
}

/// Frame value for nonnegative exponent vectors only.
pub fn normalized_product(
    gens: &[TorusElement],
    f: &[i64],
    lam: &Bicharacter,
) -> Result<TorusElement> {
    if let Some(bad) = f.iter().find(|&&e| e < 0) {
        return Err(Error::BadParameter(format!(
            "normalized_product requires nonnegative exponents, got {bad}"
        )));
    }
    frame_value(gens, f, lam, lam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycContext;

    fn a2(ell: u64) -> (Arc<CycContext>, Bicharacter) {
        let ctx = CycContext::new(ell).unwrap();
        let lam = Bicharacter::new(2, ell, vec![vec![0, 1], vec![-1, 0]]).unwrap();
        (ctx, lam)
    }

    fn xf(ctx: &Arc<CycContext>, f: &[i64]) -> TorusElement {
        TorusElement::monomial(ctx, f.to_vec(), ctx.one().to_rat())
    }

    #[test]
    fn monomial_product_rule() {
        let (ctx, lam) = a2(3);
        let x1 = xf(&ctx, &[1, 0]);
        let x2 = xf(&ctx, &[0, 1]);
        // X^(1,0) X^(0,1) = zeta X^(1,1)
        let p = x1.mul(&x2, &lam);
        let expected = TorusElement::monomial(&ctx, vec![1, 1], ctx.zeta_pow(1).to_rat());
        assert_eq!(p, expected);
        // skew: X^(0,1) X^(1,0) = zeta^{-1} X^(1,1)
        let q = x2.mul(&x1, &lam);
        let expected = TorusElement::monomial(&ctx, vec![1, 1], ctx.zeta_pow(-1).to_rat());
        assert_eq!(q, expected);
    }

    #[test]
    fn identity_element() {
        let (ctx, lam) = a2(3);
        let a = xf(&ctx, &[2, -1]).add(&xf(&ctx, &[0, 3]).scale_zeta(2));
        let one = TorusElement::one(&ctx, 2);
        assert_eq!(a.mul(&one, &lam), a);
        assert_eq!(one.mul(&a, &lam), a);
    }

    #[test]
    fn quasi_commutation_on_monomials() {
        let (ctx, lam) = a2(5);
        let f = vec![2, -1];
        let g = vec![-1, 3];
        let a = xf(&ctx, &f);
        let b = xf(&ctx, &g);
        let lhs = a.mul(&b, &lam);
        let rhs = b.mul(&a, &lam).scale_zeta(2 * lam.eval(&f, &g));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalized_product_a2_frame() {
        let (ctx, lam) = a2(3);
        let gens = vec![xf(&ctx, &[1, 0]), xf(&ctx, &[0, 1])];
        // f = e_i returns the generator
        assert_eq!(
            normalized_product(&gens, &[1, 0], &lam).unwrap(),
            gens[0]
        );
        // the initial frame of the based torus gives X^f on the nose
        for f in [[1, 1], [2, 1], [0, 2], [3, 3]] {
            assert_eq!(
                normalized_product(&gens, &f, &lam).unwrap(),
                xf(&ctx, &f),
                "frame value at {f:?}"
            );
        }
        assert!(normalized_product(&gens, &[-1, 0], &lam).is_err());
    }

    #[test]
    fn division_monomial() {
        let (ctx, lam) = a2(3);
        let u = xf(&ctx, &[1, 0]);
        let w = TorusElement::monomial(&ctx, vec![1, 1], ctx.zeta_pow(1).to_rat());
        let v = exact_left_divide(&u, &w, &lam).unwrap();
        assert_eq!(v, xf(&ctx, &[0, 1]));
    }

    #[test]
    fn division_round_trip_binomial() {
        let (ctx, lam) = a2(3);
        let u = xf(&ctx, &[1, 0]).add(&xf(&ctx, &[0, 1]));
        let v = xf(&ctx, &[1, 1]).add(&xf(&ctx, &[0, 0]).scale(&ctx.int(2).to_rat()));
        let w = u.mul(&v, &lam);
        let q = exact_left_divide(&u, &w, &lam).unwrap();
        assert_eq!(q, v);
    }

    #[test]
    fn division_failure_binomial_unit() {
        // 1 + X^(1,0) cannot divide 1: any product with a binomial has at
        // least two Newton vertices
        let (ctx, lam) = a2(3);
        let u = TorusElement::one(&ctx, 2).add(&xf(&ctx, &[1, 0]));
        let w = TorusElement::one(&ctx, 2);
        match exact_left_divide(&u, &w, &lam) {
            Err(Error::DivisionFailed(_)) => {}
            other => panic!("expected division failure, got {other:?}"),
        }
    }

    #[test]
    fn division_by_zero_rejected() {
        let (ctx, lam) = a2(3);
        let z = TorusElement::zero(&ctx, 2);
        let w = TorusElement::one(&ctx, 2);
        assert!(exact_left_divide(&z, &w, &lam).is_err());
    }

    #[test]
    fn support_and_newton_vertices() {
        let (ctx, _) = a2(3);
        assert_eq!(xf(&ctx, &[1, 0]).support(), vec![vec![1, 0]]);
        assert!(TorusElement::zero(&ctx, 2).support().is_empty());
        // Y1 = X^(-1,0) + X^(-1,1): both points are vertices
        let y1 = xf(&ctx, &[-1, 0]).add(&xf(&ctx, &[-1, 1]));
        let mut vs = y1.newton_vertices();
        vs.sort();
        assert_eq!(vs, vec![vec![-1, 0], vec![-1, 1]]);
    }

    #[test]
    fn component_split_round_trip() {
        let (ctx, lam) = a2(3);
        let a = xf(&ctx, &[2, 1])
            .add(&xf(&ctx, &[-1, 0]).scale_zeta(1))
            .add(&xf(&ctx, &[0, -2]).scale(&ctx.int(3).to_rat()));
        for k in 0..2 {
            let parts = a.component_split(k, &lam);
            for part in parts.values() {
                assert!(part.support().iter().all(|f| f[k] == 0));
            }
            let back = TorusElement::recombine(&parts, &ctx, 2, k, &lam);
            assert_eq!(back, a, "round trip at k={k}");
        }
    }

    #[test]
    fn component_split_simple_cases() {
        let (ctx, lam) = a2(3);
        let one = TorusElement::one(&ctx, 2);
        let parts = one.component_split(0, &lam);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&0], one);

        let a = xf(&ctx, &[1, 0]).add(&xf(&ctx, &[-1, 0]));
        let parts = a.component_split(0, &lam);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&1], one);
        assert_eq!(parts[&-1], one);
    }

    #[test]
    fn mixed_torus_membership() {
        let (ctx, _) = a2(3);
        let all_ex = IndexProfile::all_exchangeable(2);
        let frozen2 = IndexProfile::new(2, vec![0], vec![]).unwrap();
        let a = xf(&ctx, &[0, -1]);
        assert!(a.in_mixed_torus(&all_ex));
        assert!(!a.in_mixed_torus(&frozen2));
        assert!(xf(&ctx, &[0, 3]).in_mixed_torus(&frozen2));
    }

    #[test]
    fn ell_power_subring_membership() {
        let (ctx, _) = a2(3);
        assert!(xf(&ctx, &[3, -3]).in_ell_power_subring(3, None));
        assert!(!xf(&ctx, &[3, 1]).in_ell_power_subring(3, None));
        assert!(TorusElement::zero(&ctx, 2).in_ell_power_subring(3, None));
    }

    #[test]
    fn bicharacter_validation() {
        assert!(Bicharacter::new(2, 3, vec![vec![0, 1], vec![-1, 0]]).is_ok());
        assert!(Bicharacter::new(2, 3, vec![vec![1, 1], vec![-1, 0]]).is_err());
        assert!(Bicharacter::new(2, 3, vec![vec![0, 1], vec![1, 0]]).is_err());
        // mod-l skew symmetry: 1 + 2 = 3 = 0 mod 3
        assert!(Bicharacter::new(2, 3, vec![vec![0, 1], vec![2, 0]]).is_ok());
    }
}

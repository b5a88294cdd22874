//! Exact arithmetic in `Z[zeta]` and `Q(zeta)` for a primitive `l`-th root of
//! unity `zeta`, realized as residue classes modulo the `l`-th cyclotomic
//! polynomial `Phi_l`.
//!
//! Coefficients are arbitrary-precision integers; rationals carry a single
//! positive integer denominator. All values are immutable and canonical:
//! residues are fully reduced below degree `phi(l)` and rationals have the
//! gcd of the numerator content and the denominator equal to 1.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Shared context for a fixed root-of-unity order `l`: the cyclotomic
/// polynomial `Phi_l`, its degree `phi(l)`, and a table of reduced powers
/// `zeta^k` for `0 <= k < l`.
#[derive(Debug)]
pub struct CycContext {
    pub ell: u64,
    /// Coefficients of `Phi_l`, ascending degree, monic of degree `phi(l)`.
    pub phi: Vec<BigInt>,
    /// `phi(l)`, the Euler totient of `l`.
    pub degree: usize,
    zeta_powers: Vec<Vec<BigInt>>,
}

impl PartialEq for CycContext {
    fn eq(&self, other: &Self) -> bool {
        self.ell == other.ell
    }
}
impl Eq for CycContext {}

fn poly_trim(coeffs: &mut Vec<BigInt>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Exact division of integer polynomials; panics if the division is inexact.
/// Only used with divisors that divide exactly (cyclotomic factors).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    poly_trim(&mut rem);
    let mut den = den.to_vec();
    poly_trim(&mut den);
    assert!(!den.is_empty(), "division by zero polynomial");
    let dd = den.len() - 1;
    let dlead = den.last().unwrap().clone();
    if rem.len() < den.len() {
        assert!(rem.is_empty(), "inexact polynomial division");
        return vec![];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let (q, r) = rem.last().unwrap().div_rem(&dlead);
        assert!(r.is_zero(), "inexact polynomial division");
        quot[shift] = q.clone();
        for (i, c) in den.iter().enumerate() {
            let t = &q * c;
            rem[shift + i] -= t;
        }
        poly_trim(&mut rem);
    }
    assert!(rem.is_empty(), "inexact polynomial division");
    quot
}

/// Reduce a polynomial modulo the monic `phi`, in place.
fn poly_reduce_mod(coeffs: &mut Vec<BigInt>, phi: &[BigInt]) {
    let d = phi.len() - 1;
    poly_trim(coeffs);
    while coeffs.len() > d {
        let shift = coeffs.len() - 1 - d;
        let lead = coeffs.pop().unwrap();
        for (i, c) in phi.iter().take(d).enumerate() {
            let t = &lead * c;
            coeffs[shift + i] -= t;
        }
        poly_trim(coeffs);
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// The `n`-th cyclotomic polynomial, ascending coefficients, by exact
/// division of `x^n - 1` by all `Phi_d` for proper divisors `d`.
fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    if n == 1 {
        return vec![BigInt::from(-1), BigInt::one()];
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    let mut result = num;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_poly(d);
        result = poly_div_exact(&result, &phi_d);
    }
    result
}

impl CycContext {
    /// Build the context for order `ell`. Rejects `ell = 0`.
    pub fn new(ell: u64) -> Result<Arc<CycContext>> {
        if ell == 0 {
            return Err(Error::BadParameter("ell must be positive".into()));
        }
        let phi = cyclotomic_poly(ell);
        let degree = phi.len() - 1;
        let mut ctx = CycContext {
            ell,
            phi,
            degree,
            zeta_powers: Vec::new(),
        };
        let mut powers = Vec::with_capacity(ell as usize);
        let mut cur = vec![BigInt::one()];
        for _ in 0..ell {
            let mut padded = cur.clone();
            padded.resize(degree, BigInt::zero());
            powers.push(padded);
            // multiply by x, reduce
            cur.insert(0, BigInt::zero());
            poly_reduce_mod(&mut cur, &ctx.phi);
        }
        ctx.zeta_powers = powers;
        Ok(Arc::new(ctx))
    }

    /// Canonical residue of `zeta^k`; `k` is taken modulo `l`.
    pub fn zeta_pow(self: &Arc<Self>, k: i64) -> CycInt {
        let m = k.rem_euclid(self.ell as i64) as usize;
        CycInt {
            ctx: Arc::clone(self),
            coeffs: self.zeta_powers[m].clone(),
        }
    }

    pub fn int(self: &Arc<Self>, v: i64) -> CycInt {
        let mut coeffs = vec![BigInt::zero(); self.degree];
        coeffs[0] = BigInt::from(v);
        // degree 0 is impossible: phi(l) >= 1 for all l >= 1
        CycInt {
            ctx: Arc::clone(self),
            coeffs,
        }
    }

    pub fn zero(self: &Arc<Self>) -> CycInt {
        self.int(0)
    }

    pub fn one(self: &Arc<Self>) -> CycInt {
        self.int(1)
    }

    /// Residue with the given ascending coefficients, reduced mod `Phi_l`.
    pub fn from_coeffs(self: &Arc<Self>, coeffs: Vec<BigInt>) -> CycInt {
        let mut c = coeffs;
        poly_reduce_mod(&mut c, &self.phi);
        c.resize(self.degree, BigInt::zero());
        CycInt {
            ctx: Arc::clone(self),
            coeffs: c,
        }
    }
}

/// An element of `Z[zeta]`: the canonical residue modulo `Phi_l`, stored as
/// `phi(l)` ascending integer coefficients.
#[derive(Debug, Clone)]
pub struct CycInt {
    ctx: Arc<CycContext>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.ell == other.ctx.ell && self.coeffs == other.coeffs
    }
}
impl Eq for CycInt {}

impl CycInt {
    pub fn context(&self) -> &Arc<CycContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn assert_same_ctx(&self, other: &CycInt) {
        assert_eq!(
            self.ctx.ell, other.ctx.ell,
            "cyclotomic context mismatch: ell {} vs {}",
            self.ctx.ell, other.ctx.ell
        );
    }

    pub fn add(&self, other: &CycInt) -> CycInt {
        self.assert_same_ctx(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycInt {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        }
    }

    pub fn sub(&self, other: &CycInt) -> CycInt {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycInt {
        CycInt {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycInt) -> CycInt {
        self.assert_same_ctx(other);
        let mut prod = poly_mul(&self.coeffs, &other.coeffs);
        poly_reduce_mod(&mut prod, &self.ctx.phi);
        prod.resize(self.ctx.degree, BigInt::zero());
        CycInt {
            ctx: Arc::clone(&self.ctx),
            coeffs: prod,
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> CycInt {
        CycInt {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// gcd of all coefficients; zero for the zero residue.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    pub fn to_rat(&self) -> CycRat {
        CycRat {
            num: self.clone(),
            den: BigInt::one(),
        }
    }
}

/// An element of `Q(zeta)`: a `Z[zeta]` numerator over a single positive
/// integer denominator, kept in lowest terms.
#[derive(Debug, Clone)]
pub struct CycRat {
    num: CycInt,
    den: BigInt,
}

impl PartialEq for CycRat {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}
impl Eq for CycRat {}

impl CycRat {
    pub fn new(num: CycInt, den: BigInt) -> CycRat {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = CycRat { num, den };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            self.num = self.num.neg();
        }
        if self.num.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let g = self.num.content().gcd(&self.den);
        if !g.is_one() {
            self.num.coeffs.iter_mut().for_each(|c| *c /= &g);
            self.den /= &g;
        }
    }

    pub fn num(&self) -> &CycInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn context(&self) -> &Arc<CycContext> {
        &self.num.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn add(&self, other: &CycRat) -> CycRat {
        let num = self
            .num
            .mul_int(&other.den)
            .add(&other.num.mul_int(&self.den));
        CycRat::new(num, &self.den * &other.den)
    }

    pub fn sub(&self, other: &CycRat) -> CycRat {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycRat {
        CycRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &CycRat) -> CycRat {
        CycRat::new(self.num.mul(&other.num), &self.den * &other.den)
    }

    /// Exact division by a positive integer.
    pub fn div_by_int(&self, i: u64) -> Result<CycRat> {
        if i == 0 {
            return Err(Error::BadParameter("division by zero integer".into()));
        }
        Ok(CycRat::new(self.num.clone(), &self.den * BigInt::from(i)))
    }

    /// Multiply by `zeta^k`.
    pub fn mul_zeta_pow(&self, k: i64) -> CycRat {
        let z = self.num.ctx.zeta_pow(k);
        CycRat {
            num: self.num.mul(&z),
            den: self.den.clone(),
        }
    }

    /// Field inverse in `Q(zeta)` via the extended Euclidean algorithm
    /// against `Phi_l` over the rationals. Panics on zero.
    pub fn inv(&self) -> CycRat {
        assert!(!self.is_zero(), "inverse of zero in Q(zeta)");
        let ctx = &self.num.ctx;
        let p: Vec<BigRational> = self
            .num
            .coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let phi: Vec<BigRational> = ctx
            .phi
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let inv = qpoly_invert_mod(&p, &phi);
        // clear rational denominators into the single-integer form
        let mut den = BigInt::one();
        for c in &inv {
            den = den.lcm(c.denom());
        }
        let coeffs: Vec<BigInt> = inv
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let num = ctx.from_coeffs(coeffs).mul_int(&self.den);
        CycRat::new(num, den)
    }

    pub fn div(&self, other: &CycRat) -> CycRat {
        self.mul(&other.inv())
    }

    /// Deterministic text key used for canonical serialization.
    pub fn key(&self) -> String {
        let cs: Vec<String> = self.num.coeffs.iter().map(|c| c.to_string()).collect();
        format!("{}/{}", cs.join(","), self.den)
    }
}

// --- rational polynomial helpers for field inversion ---

fn qpoly_trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn qpoly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = num.to_vec();
    qpoly_trim(&mut rem);
    let mut d = den.to_vec();
    qpoly_trim(&mut d);
    assert!(!d.is_empty());
    if rem.len() < d.len() {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - d.len() + 1];
    let lead = d.last().unwrap().clone();
    while rem.len() >= d.len() && !rem.is_empty() {
        let shift = rem.len() - d.len();
        let q = rem.last().unwrap() / &lead;
        quot[shift] = q.clone();
        for (i, c) in d.iter().enumerate() {
            let t = &q * c;
            rem[shift + i] -= t;
        }
        qpoly_trim(&mut rem);
    }
    (quot, rem)
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    qpoly_trim(&mut out);
    out
}

/// Inverse of `p` modulo the monic irreducible `phi` over `Q`.
fn qpoly_invert_mod(p: &[BigRational], phi: &[BigRational]) -> Vec<BigRational> {
    // extended Euclid: r0 = phi, r1 = p; maintain s-coefficients for p
    let mut r0 = phi.to_vec();
    let mut r1 = p.to_vec();
    qpoly_trim(&mut r1);
    let mut s0: Vec<BigRational> = vec![];
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = qpoly_divmod(&r0, &r1);
        let s = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 = gcd = nonzero constant; phi irreducible and p nonzero of lower degree
    assert_eq!(r0.len(), 1, "gcd with cyclotomic polynomial not constant");
    let c = r0[0].clone();
    s0.iter().map(|x| x / &c).collect()
}

// --- display ---

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_zeta_poly(&self.coeffs))
    }
}

impl fmt::Display for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = format_zeta_poly(&self.num.coeffs);
        if self.den.is_one() {
            write!(f, "{body}")
        } else if self.num.coeffs.iter().filter(|c| !c.is_zero()).count() > 1 {
            write!(f, "({body})/{}", self.den)
        } else {
            write!(f, "{body}/{}", self.den)
        }
    }
}

/// Ascending-power polynomial in `z`, e.g. `1 - 2*z^2`.
pub fn format_zeta_poly(coeffs: &[BigInt]) -> String {
    let mut parts: Vec<(bool, String)> = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        let body = if i == 0 {
            a.to_string()
        } else {
            let var = if i == 1 {
                "z".to_string()
            } else {
                format!("z^{i}")
            };
            if a.is_one() {
                var
            } else {
                format!("{a}*{var}")
            }
        };
        parts.push((neg, body));
    }
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (neg, body)) in parts.iter().enumerate() {
        if i == 0 {
            if *neg {
                out.push('-');
            }
        } else {
            out.push_str(if *neg { " - " } else { " + " });
        }
        out.push_str(body);
    }
    out
}

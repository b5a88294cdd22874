//! Trace maps on quantum tori, Newton-identity coefficient extraction,
//! characteristic polynomials and Cayley-Hamilton verification.
//!
//! Three traces are supported on a seed's torus:
//! - the regular trace with respect to the l-th power subring, which keeps
//!   monomials supported in `(lZ)^N` scaled by `l^N`;
//! - the reduced trace, which keeps monomials supported in `Ker(L)` scaled
//!   by the PI degree `d`;
//! - the standard trace, `d` times the reduced trace.

use num_bigint::BigInt;
use serde::Serialize;

use crate::cyclotomic::CycRat;
use crate::lattice::{kernel_mod_ell, KernelData};
use crate::membership::{convert_edge, Conversion};
use crate::seed::Seed;
use crate::torus::{Bicharacter, TorusElement};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceKind {
    /// Regular trace with respect to the l-th power subring; degree `l^N`.
    Regular,
    /// Reduced trace from the kernel of the bicharacter; degree `d`.
    Reduced,
    /// `d` times the reduced trace.
    Standard,
}

/// Regular trace: drop terms outside `(lZ)^N`, scale survivors by `l^N`.
pub fn tr_regular(elem: &TorusElement, ell: u64) -> TorusElement {
    let n = elem.rank() as u32;
    let scale = BigInt::from(ell).pow(n);
    let ctx = elem.context().clone();
    let factor = CycRat::new(ctx.one().mul_int(&scale), BigInt::from(1));
    let m = ell as i64;
    filter_scale(elem, &factor, |f| f.iter().all(|&x| x.rem_euclid(m) == 0))
}

/// Reduced trace: drop terms outside `Ker(L)`, scale survivors by `d`.
pub fn tr_reduced(elem: &TorusElement, kernel: &KernelData) -> TorusElement {
    let ctx = elem.context().clone();
    let factor = CycRat::new(ctx.one().mul_int(&kernel.pi_degree), BigInt::from(1));
    filter_scale(elem, &factor, |f| kernel.contains(f))
}

/// Standard trace: drop terms outside `Ker(L)`, scale survivors by `d^2`.
pub fn tr_standard(elem: &TorusElement, kernel: &KernelData) -> TorusElement {
    let ctx = elem.context().clone();
    let d2 = &kernel.pi_degree * &kernel.pi_degree;
    let factor = CycRat::new(ctx.one().mul_int(&d2), BigInt::from(1));
    filter_scale(elem, &factor, |f| kernel.contains(f))
}

fn filter_scale(
    elem: &TorusElement,
    factor: &CycRat,
    keep: impl Fn(&[i64]) -> bool,
) -> TorusElement {
    let mut out = TorusElement::zero(elem.context(), elem.rank());
    for (f, c) in elem.terms() {
        if keep(f) {
            out = out.add(&TorusElement::monomial(
                elem.context(),
                f.clone(),
                c.mul(factor),
            ));
        }
    }
    out
}

pub fn apply_trace(
    kind: TraceKind,
    elem: &TorusElement,
    ell: u64,
    kernel: &KernelData,
) -> TorusElement {
    match kind {
        TraceKind::Regular => tr_regular(elem, ell),
        TraceKind::Reduced => tr_reduced(elem, kernel),
        TraceKind::Standard => tr_standard(elem, kernel),
    }
}

/// Elementary-symmetric coefficients from power sums via the Newton
/// recursion `sigma_i = (1/i) sum_{j=1..i} (-1)^{j-1} sigma_{i-j} psi_j`.
/// The inputs are central, so products commute and the order is immaterial.
pub fn newton_sigma(psi: &[TorusElement], lam: &Bicharacter) -> Result<Vec<TorusElement>> {
    if psi.is_empty() {
        return Err(Error::BadParameter("degree must be positive".into()));
    }
    let ctx = psi[0].context().clone();
    let n = psi[0].rank();
    let mut sigma: Vec<TorusElement> = vec![TorusElement::one(&ctx, n)];
    for i in 1..=psi.len() {
        let mut acc = TorusElement::zero(&ctx, n);
        for j in 1..=i {
            let term = sigma[i - j].mul(&psi[j - 1], lam);
            acc = if j % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        let scaled = scale_by_inverse_int(&acc, i as u64)?;
        sigma.push(scaled);
    }
    Ok(sigma[1..].to_vec())
}

fn scale_by_inverse_int(elem: &TorusElement, i: u64) -> Result<TorusElement> {
    let mut out = TorusElement::zero(elem.context(), elem.rank());
    for (f, c) in elem.terms() {
        out = out.add(&TorusElement::monomial(
            elem.context(),
            f.clone(),
            c.div_by_int(i)?,
        ));
    }
    Ok(out)
}

/// Power sums, elementary coefficients, and the evaluated characteristic
/// polynomial `chi_{d,a}(a) = sum_{i=0..d} (-1)^i sigma_i a^{d-i}`.
#[derive(Debug, Clone)]
pub struct CharPolyReport {
    pub degree: u64,
    pub psi: Vec<TorusElement>,
    pub sigma: Vec<TorusElement>,
    pub chi: TorusElement,
    pub is_zero: bool,
}

/// Cayley-Hamilton verification with an arbitrary trace map.
pub fn verify_ch_with(
    a: &TorusElement,
    lam: &Bicharacter,
    trace: impl Fn(&TorusElement) -> TorusElement,
    d: u64,
) -> Result<CharPolyReport> {
    if d == 0 {
        return Err(Error::BadParameter("degree must be positive".into()));
    }
    let ctx = a.context().clone();
    let n = a.rank();
    // powers a^0 .. a^d
    let mut powers: Vec<TorusElement> = Vec::with_capacity(d as usize + 1);
    powers.push(TorusElement::one(&ctx, n));
    for i in 1..=d as usize {
        powers.push(powers[i - 1].mul(a, lam));
    }
    let psi: Vec<TorusElement> = (1..=d as usize).map(|i| trace(&powers[i])).collect();
    let sigma = newton_sigma(&psi, lam)?;
    let mut chi = powers[d as usize].clone();
    for i in 1..=d as usize {
        let term = sigma[i - 1].mul(&powers[d as usize - i], lam);
        chi = if i % 2 == 1 { chi.sub(&term) } else { chi.add(&term) };
    }
    let is_zero = chi.is_zero();
    Ok(CharPolyReport {
        degree: d,
        psi,
        sigma,
        chi,
        is_zero,
    })
}

/// Cayley-Hamilton verification for the three built-in trace kinds. For
/// `Regular` the natural degree is `l^N`; for `Reduced` it is the PI degree.
pub fn verify_cayley_hamilton(
    a: &TorusElement,
    lam: &Bicharacter,
    kind: TraceKind,
    d: u64,
) -> Result<CharPolyReport> {
    let kernel = kernel_mod_ell(lam);
    let ell = lam.ell;
    verify_ch_with(a, lam, |x| apply_trace(kind, x, ell, &kernel), d)
}

/// Trace agreement across a mutation edge: the trace computed in the source
/// coordinates, converted to the target seed, must equal the trace of the
/// converted element computed in the target coordinates. The element must
/// lie in the intersection of the two mixed tori.
pub fn trace_agreement(
    seed: &Seed,
    elem: &TorusElement,
    k: usize,
    kind: TraceKind,
) -> Result<bool> {
    let Conversion::Member(at_b) = convert_edge(seed, elem, k)? else {
        return Err(Error::BadInput(
            "element does not lie in the intersection across the edge".into(),
        ));
    };
    let kernel_a = kernel_mod_ell(&seed.lambda);
    let kernel_b = kernel_mod_ell(&at_b.seed.lambda);
    let tr_a = apply_trace(kind, elem, seed.ell(), &kernel_a);
    let tr_b = apply_trace(kind, &at_b.elem, at_b.seed.ell(), &kernel_b);
    let Conversion::Member(tr_a_at_b) = convert_edge(seed, &tr_a, k)? else {
        return Err(Error::BadInput(
            "trace output does not convert across the edge".into(),
        ));
    };
    Ok(tr_a_at_b.elem == tr_b)
}

/// Independent cross-check of the Newton-identity characteristic polynomial
/// against the literal characteristic polynomial of the regular
/// representation. Implemented for rank 2 bicharacters `[[0, s], [-s, 0]]`
/// with `s` coprime to an odd `l <= 5`, where the torus embeds in `l x l`
/// matrices over the commutative Laurent ring generated by the images of
/// `X_1` and `X_2`.
pub fn regular_rep_charpoly_check(a: &TorusElement, lam: &Bicharacter) -> Result<bool> {
    let ell = lam.ell;
    if lam.n != 2 || ell > 5 || ell % 2 == 0 {
        return Err(Error::BadParameter(
            "matrix oracle implemented for rank 2 and odd l <= 5 only".into(),
        ));
    }
    let s = lam.entry(0, 1);
    if num_integer::gcd(s, ell as i64) != 1 {
        return Err(Error::BadParameter(
            "matrix oracle requires the off-diagonal entry coprime to l".into(),
        ));
    }
    let d = ell as usize;
    let ctx = a.context().clone();
    let commutative = Bicharacter::zero(2, ell);

    // rho(X^{(f1,f2)}) = zeta^{-s f1 f2} A^{f1} B^{f2} with A the cyclic
    // shift (wrap factor the image of X_1^l) and B = im(X_2) diag(eps^{-s i})
    let rho_monomial = |f: &[i64], coeff: &CycRat| -> Vec<Vec<TorusElement>> {
        let (f1, f2) = (f[0], f[1]);
        let norm = (-(s as i128) * f1 as i128 * f2 as i128).rem_euclid(ell as i128) as i64;
        let mut mat = vec![vec![TorusElement::zero(&ctx, 2); d]; d];
        for col in 0..d {
            let target = col as i64 + f1;
            let row = target.rem_euclid(ell as i64) as usize;
            let wrap = target.div_euclid(ell as i64);
            // entry = coeff * zeta^{norm - 2 s col f2} X^{(l*wrap, f2)}
            let phase = (norm as i128 - 2 * s as i128 * col as i128 * f2 as i128)
                .rem_euclid(ell as i128) as i64;
            let exp = vec![ell as i64 * wrap, f2];
            mat[row][col] = TorusElement::monomial(&ctx, exp, coeff.mul_zeta_pow(phase));
        }
        mat
    };

    let mut rho_a = vec![vec![TorusElement::zero(&ctx, 2); d]; d];
    for (f, c) in a.terms() {
        let m = rho_monomial(f, c);
        for i in 0..d {
            for j in 0..d {
                rho_a[i][j] = rho_a[i][j].add(&m[i][j]);
            }
        }
    }

    // characteristic polynomial det(t I - rho(a)) by Leibniz expansion;
    // entries are degree <= 1 polynomials in t over the commutative ring
    let zero_poly = || vec![TorusElement::zero(&ctx, 2), TorusElement::zero(&ctx, 2)];
    let mut entries: Vec<Vec<Vec<TorusElement>>> = vec![vec![zero_poly(); d]; d];
    for i in 0..d {
        for j in 0..d {
            entries[i][j][0] = rho_a[i][j].neg();
            if i == j {
                entries[i][j][1] = TorusElement::one(&ctx, 2);
            }
        }
    }
    let charpoly = leibniz_det_poly(&entries, &commutative, &ctx);

    // compare against the Newton route: coefficient of t^{d-i} = (-1)^i sigma_i
    let report = verify_cayley_hamilton(a, lam, TraceKind::Reduced, d as u64)?;
    for i in 0..=d {
        let expected = if i == 0 {
            TorusElement::one(&ctx, 2)
        } else if i % 2 == 1 {
            report.sigma[i - 1].neg()
        } else {
            report.sigma[i - 1].clone()
        };
        let got = charpoly
            .get(d - i)
            .cloned()
            .unwrap_or_else(|| TorusElement::zero(&ctx, 2));
        if got != expected {
            return Ok(false);
        }
    }
    Ok(report.is_zero)
}

fn poly_mul_elem(
    a: &[TorusElement],
    b: &[TorusElement],
    lam: &Bicharacter,
    ctx: &std::sync::Arc<crate::cyclotomic::CycContext>,
) -> Vec<TorusElement> {
    let mut out = vec![TorusElement::zero(ctx, 2); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&ai.mul(bj, lam));
        }
    }
    out
}

fn leibniz_det_poly(
    entries: &[Vec<Vec<TorusElement>>],
    lam: &Bicharacter,
    ctx: &std::sync::Arc<crate::cyclotomic::CycContext>,
) -> Vec<TorusElement> {
    use itertools::Itertools;
    let d = entries.len();
    let mut det = vec![TorusElement::zero(ctx, 2)];
    for perm in (0..d).permutations(d) {
        let mut prod = vec![TorusElement::one(ctx, 2)];
        for (i, &j) in perm.iter().enumerate() {
            prod = poly_mul_elem(&prod, &entries[i][j], lam, ctx);
        }
        let inversions = perm
            .iter()
            .enumerate()
            .map(|(i, &pi)| perm[..i].iter().filter(|&&pj| pj > pi).count())
            .sum::<usize>();
        if det.len() < prod.len() {
            det.resize(prod.len(), TorusElement::zero(ctx, 2));
        }
        for (k, p) in prod.into_iter().enumerate() {
            det[k] = if inversions % 2 == 0 {
                det[k].add(&p)
            } else {
                det[k].sub(&p)
            };
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycContext;
    use crate::seed::a2_seed;

    fn setup(ell: u64) -> (std::sync::Arc<CycContext>, Bicharacter, KernelData) {
        let ctx = CycContext::new(ell).unwrap();
        let lam = Bicharacter::new(2, ell, vec![vec![0, 1], vec![-1, 0]]).unwrap();
        let kernel = kernel_mod_ell(&lam);
        (ctx, lam, kernel)
    }

    fn xf(ctx: &std::sync::Arc<CycContext>, f: &[i64]) -> TorusElement {
        TorusElement::monomial(ctx, f.to_vec(), ctx.one().to_rat())
    }

    #[test]
    fn regular_trace_values() {
        let (ctx, _, _) = setup(3);
        let m = xf(&ctx, &[3, 3]);
        let t = tr_regular(&m, 3);
        assert_eq!(t, m.scale(&ctx.int(9).to_rat()));
        assert!(tr_regular(&xf(&ctx, &[1, 0]), 3).is_zero());
        assert!(tr_regular(&TorusElement::zero(&ctx, 2), 3).is_zero());
    }

    #[test]
    fn reduced_trace_values() {
        let (ctx, _, kernel) = setup(3);
        let m = xf(&ctx, &[3, 0]);
        assert_eq!(tr_reduced(&m, &kernel), m.scale(&ctx.int(3).to_rat()));
        assert!(tr_reduced(&xf(&ctx, &[1, 2]), &kernel).is_zero());
        // tr(1) = d
        let one = TorusElement::one(&ctx, 2);
        assert_eq!(tr_reduced(&one, &kernel), one.scale(&ctx.int(3).to_rat()));
    }

    #[test]
    fn standard_is_d_times_reduced() {
        let (ctx, _, kernel) = setup(3);
        for f in [[3, 0], [1, 0], [0, 3], [3, -3], [2, 2]] {
            let m = xf(&ctx, &f);
            let d = tr_standard(&m, &kernel);
            let r = tr_reduced(&m, &kernel).scale(&ctx.int(3).to_rat());
            assert_eq!(d, r);
        }
        assert_eq!(
            tr_standard(&xf(&ctx, &[3, 0]), &kernel),
            xf(&ctx, &[3, 0]).scale(&ctx.int(9).to_rat())
        );
    }

    #[test]
    fn newton_sigma_small_degrees() {
        let (ctx, lam, _) = setup(3);
        let one = TorusElement::one(&ctx, 2);
        // d = 1: sigma_1 = psi_1
        let psi = vec![xf(&ctx, &[3, 0])];
        let sigma = newton_sigma(&psi, &lam).unwrap();
        assert_eq!(sigma[0], psi[0]);
        // scalar sanity at d = 2 with two eigenvalues 1, 1: psi_i = 2
        let two = one.scale(&ctx.int(2).to_rat());
        let sigma = newton_sigma(&[two.clone(), two], &lam).unwrap();
        assert_eq!(sigma[0], one.scale(&ctx.int(2).to_rat()));
        assert_eq!(sigma[1], one);
    }

    #[test]
    fn ch_monomial_degree_3() {
        let (ctx, lam, _) = setup(3);
        let a = xf(&ctx, &[1, 0]);
        let report = verify_cayley_hamilton(&a, &lam, TraceKind::Reduced, 3).unwrap();
        assert!(report.psi[0].is_zero());
        assert!(report.psi[1].is_zero());
        assert_eq!(report.psi[2], xf(&ctx, &[3, 0]).scale(&ctx.int(3).to_rat()));
        assert!(report.sigma[0].is_zero());
        assert!(report.sigma[1].is_zero());
        assert_eq!(report.sigma[2], xf(&ctx, &[3, 0]));
        assert!(report.is_zero);
    }

    #[test]
    fn ch_identity_element() {
        let (ctx, lam, _) = setup(3);
        let one = TorusElement::one(&ctx, 2);
        for kind in [TraceKind::Reduced, TraceKind::Regular] {
            let d = match kind {
                TraceKind::Regular => 9,
                _ => 3,
            };
            let report = verify_cayley_hamilton(&one, &lam, kind, d).unwrap();
            assert!(report.is_zero, "(t-1)^d at 1 must vanish for {kind:?}");
        }
    }

    #[test]
    fn ch_binomial_reduced() {
        let (ctx, lam, _) = setup(3);
        let a = xf(&ctx, &[1, 0]).add(&xf(&ctx, &[0, 1]));
        let report = verify_cayley_hamilton(&a, &lam, TraceKind::Reduced, 3).unwrap();
        assert!(report.is_zero);
    }

    #[test]
    fn matrix_oracle_agrees() {
        let (ctx, lam, _) = setup(3);
        let a = xf(&ctx, &[1, 0]).add(&xf(&ctx, &[0, 1]));
        assert!(regular_rep_charpoly_check(&a, &lam).unwrap());
        let b = xf(&ctx, &[1, 1])
            .add(&xf(&ctx, &[-1, 0]).scale_zeta(1))
            .add(&xf(&ctx, &[0, 2]).scale(&ctx.int(2).to_rat()));
        assert!(regular_rep_charpoly_check(&b, &lam).unwrap());
    }

    #[test]
    fn matrix_oracle_rep_is_multiplicative() {
        // the homomorphism property of the representation, spot-checked by
        // comparing rho(u v) with rho(u) rho(v) through charpoly agreement
        let (ctx, lam, _) = setup(5);
        let u = xf(&ctx, &[1, 2]);
        assert!(regular_rep_charpoly_check(&u, &lam).unwrap());
    }

    #[test]
    fn trace_agreement_on_cluster_monomials() {
        let s = a2_seed(3).unwrap();
        let m = xf(&s.ctx, &[2, 1]);
        for kind in [TraceKind::Regular, TraceKind::Reduced] {
            for k in 0..2 {
                assert!(
                    trace_agreement(&s, &m, k, kind).unwrap(),
                    "kind {kind:?} edge {k}"
                );
            }
        }
    }

    #[test]
    fn trace_linearity_over_center() {
        let (ctx, lam, kernel) = setup(3);
        let z = xf(&ctx, &[3, -3]).scale_zeta(2);
        let a = xf(&ctx, &[1, 1]).add(&xf(&ctx, &[3, 0]));
        let lhs = tr_reduced(&z.mul(&a, &lam), &kernel);
        let rhs = z.mul(&tr_reduced(&a, &kernel), &lam);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_property_tr_ab_eq_tr_ba() {
        let (ctx, lam, kernel) = setup(3);
        let a = xf(&ctx, &[1, 2]).add(&xf(&ctx, &[-1, 0]).scale_zeta(1));
        let b = xf(&ctx, &[2, 1]).add(&xf(&ctx, &[0, -2]));
        assert_eq!(
            tr_reduced(&a.mul(&b, &lam), &kernel),
            tr_reduced(&b.mul(&a, &lam), &kernel)
        );
        assert_eq!(
            tr_regular(&a.mul(&b, &lam), 3),
            tr_regular(&b.mul(&a, &lam), 3)
        );
    }

    #[test]
    fn degree_zero_rejected() {
        let (ctx, lam, _) = setup(3);
        let a = xf(&ctx, &[1, 0]);
        assert!(verify_cayley_hamilton(&a, &lam, TraceKind::Reduced, 0).is_err());
    }

    #[test]
    fn kernel_index_is_square_here() {
        let (_, _, kernel) = setup(3);
        assert_eq!(kernel.index, BigInt::from(9));
        assert_eq!(kernel.pi_degree, BigInt::from(3));
        assert_eq!(&kernel.pi_degree * &kernel.pi_degree, kernel.index);
    }
}

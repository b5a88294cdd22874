//! The element expression grammar and its printer.
//!
//! Grammar: terms joined by `+`/`-`; a term is a `*`-product of atoms, where
//! an atom is either a variable factor `x<i>` with an optional integer
//! exponent (`x1^-1`), or a scalar: an integer, a power of `z`, or a
//! parenthesized integer polynomial in `z`, each optionally followed by a
//! `/<int>` denominator. `z` denotes the root of unity generating the
//! coefficient ring. Scalars commute and are folded into the coefficient;
//! variable factors multiply in written order through the bicharacter.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::{CycContext, CycRat};
use crate::torus::{Bicharacter, TorusElement};
use crate::{Error, Result};

/// One parsed term: a scalar coefficient and an ordered product of
/// variable powers.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: CycRat,
    pub factors: Vec<(usize, i64)>,
}

/// Parsed abstract form of an element expression.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementExpr {
    pub terms: Vec<Term>,
}

impl ElementExpr {
    /// Evaluate in the torus twisted by `lam`: variable factors multiply in
    /// written order.
    pub fn eval(&self, lam: &Bicharacter) -> TorusElement {
        let ctx = if let Some(t) = self.terms.first() {
            t.coeff.context().clone()
        } else {
            return TorusElement::zero(&CycContext::new(lam.ell).unwrap(), lam.n);
        };
        let n = lam.n;
        let mut out = TorusElement::zero(&ctx, n);
        for term in &self.terms {
            let mut acc = TorusElement::monomial(&ctx, vec![0; n], term.coeff.clone());
            for &(var, exp) in &term.factors {
                let mut f = vec![0i64; n];
                f[var] = exp;
                let factor = TorusElement::monomial(&ctx, f, ctx.one().to_rat());
                acc = acc.mul(&factor, lam);
            }
            out = out.add(&acc);
        }
        out
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ctx: &'a Arc<CycContext>,
    rank: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        let c = self.chars.get(self.pos).copied();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn parse_uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits parse as integer"))
    }

    fn parse_signed_int(&mut self) -> Result<BigInt> {
        let neg = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let v = self.parse_uint()?;
        Ok(if neg { -v } else { v })
    }

    /// Integer polynomial in `z` (used inside parentheses).
    fn parse_zpoly(&mut self) -> Result<CycRat> {
        let mut acc = self.ctx.zero().to_rat();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('-') => {
                    self.bump();
                    true
                }
                Some('+') => {
                    self.bump();
                    false
                }
                _ if first => false,
                _ => break,
            };
            let mono = self.parse_zmonomial()?;
            acc = if sign { acc.sub(&mono) } else { acc.add(&mono) };
            first = false;
            match self.peek() {
                Some('+') | Some('-') => continue,
                _ => break,
            }
        }
        Ok(acc)
    }

    /// `INT ['*' z-power]` or a bare `z`-power.
    fn parse_zmonomial(&mut self) -> Result<CycRat> {
        let coeff = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let v = self.parse_uint()?;
            if self.peek() == Some('*') {
                self.bump();
            } else {
                return Ok(CycRat::new(self.ctx.from_coeffs(vec![v]), BigInt::one()));
            }
            v
        } else {
            BigInt::one()
        };
        if self.peek() != Some('z') {
            return self.err("expected z");
        }
        self.bump();
        let exp = if self.peek() == Some('^') {
            self.bump();
            self.parse_signed_int()?
        } else {
            BigInt::one()
        };
        let exp = i64::try_from(&exp).map_err(|_| Error::Parse {
            pos: self.pos,
            msg: "z exponent out of range".into(),
        })?;
        Ok(self
            .ctx
            .zeta_pow(exp)
            .mul_int(&coeff)
            .to_rat())
    }

    /// One atom; returns either a scalar or a variable power.
    fn parse_atom(&mut self) -> Result<AtomValue> {
        match self.peek() {
            Some('x') => {
                self.bump();
                let idx = self.parse_uint()?;
                let idx = usize::try_from(&idx).unwrap_or(usize::MAX);
                if idx == 0 || idx > self.rank {
                    return self.err(format!(
                        "variable index must be in 1..={}, got x{idx}",
                        self.rank
                    ));
                }
                let exp = if self.peek() == Some('^') {
                    self.bump();
                    let e = self.parse_signed_int()?;
                    i64::try_from(&e).map_err(|_| Error::Parse {
                        pos: self.pos,
                        msg: "exponent out of range".into(),
                    })?
                } else {
                    1
                };
                Ok(AtomValue::Var(idx - 1, exp))
            }
            Some('z') => {
                let v = self.parse_zmonomial()?;
                Ok(AtomValue::Scalar(self.maybe_denominator(v)?))
            }
            Some('(') => {
                self.bump();
                let v = self.parse_zpoly()?;
                if self.bump() != Some(')') {
                    return self.err("expected ')'");
                }
                Ok(AtomValue::Scalar(self.maybe_denominator(v)?))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.parse_zmonomial()?;
                Ok(AtomValue::Scalar(self.maybe_denominator(v)?))
            }
            Some(c) => self.err(format!("unexpected character '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }

    fn maybe_denominator(&mut self, v: CycRat) -> Result<CycRat> {
        if self.peek() == Some('/') {
            self.bump();
            let den = self.parse_uint()?;
            if den.is_zero() {
                return self.err("zero denominator");
            }
            let den_u = u64::try_from(&den).map_err(|_| Error::Parse {
                pos: self.pos,
                msg: "denominator out of range".into(),
            })?;
            v.div_by_int(den_u)
        } else {
            Ok(v)
        }
    }

    fn parse_term(&mut self) -> Result<Term> {
        let mut coeff = self.ctx.one().to_rat();
        let mut factors = Vec::new();
        loop {
            match self.parse_atom()? {
                AtomValue::Scalar(c) => coeff = coeff.mul(&c),
                AtomValue::Var(i, e) => factors.push((i, e)),
            }
            if self.peek() == Some('*') {
                self.bump();
            } else {
                break;
            }
        }
        Ok(Term { coeff, factors })
    }

    fn parse_expr(&mut self) -> Result<ElementExpr> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let mut term = self.parse_term()?;
            if sign {
                term.coeff = term.coeff.neg();
            }
            terms.push(term);
            match self.peek() {
                Some('+') => {
                    self.bump();
                    sign = false;
                }
                Some('-') => {
                    self.bump();
                    sign = true;
                }
                None => break,
                Some(c) => return self.err(format!("unexpected character '{c}'")),
            }
        }
        Ok(ElementExpr { terms })
    }
}

enum AtomValue {
    Scalar(CycRat),
    Var(usize, i64),
}

/// Parse an element expression against a cyclotomic context and torus rank.
pub fn parse_element(text: &str, ctx: &Arc<CycContext>, rank: usize) -> Result<ElementExpr> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        ctx,
        rank,
    };
    let expr = p.parse_expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return p.err("trailing input");
    }
    Ok(expr)
}

/// Parse and evaluate in one step.
pub fn parse_to_element(
    text: &str,
    ctx: &Arc<CycContext>,
    lam: &Bicharacter,
) -> Result<TorusElement> {
    let expr = parse_element(text, ctx, lam.n)?;
    let v = expr.eval(lam);
    if v.rank() != lam.n {
        return Err(Error::RankMismatch {
            expected: lam.n,
            got: v.rank(),
        });
    }
    Ok(v)
}

/// Print an element in the grammar so that parsing the output reproduces the
/// element exactly. Each basis monomial `c X^f` is rendered as the ordered
/// product of generator powers, so the printed coefficient absorbs the
/// normalization factor `zeta^{sum_{i<j} L_{ij} f_i f_j}`.
pub fn format_element(elem: &TorusElement, lam: &Bicharacter) -> String {
    if elem.is_zero() {
        return "0".to_string();
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    for (f, c) in elem.terms() {
        let mut norm: i128 = 0;
        for i in 0..lam.n {
            for j in (i + 1)..lam.n {
                norm += lam.entry(i, j) as i128 * f[i] as i128 * f[j] as i128;
            }
        }
        let printed = c.mul_zeta_pow(norm.rem_euclid(lam.ell as i128) as i64);
        let mut factors = String::new();
        for (i, &e) in f.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !factors.is_empty() {
                factors.push('*');
            }
            factors.push_str(&format!("x{}", i + 1));
            if e != 1 {
                factors.push_str(&format!("^{e}"));
            }
        }
        let (neg, scalar) = signed_scalar_string(&printed);
        let body = if factors.is_empty() {
            scalar
        } else if scalar == "1" {
            factors
        } else {
            format!("{scalar}*{factors}")
        };
        pieces.push((neg, body));
    }
    let mut out = String::new();
    for (i, (neg, body)) in pieces.iter().enumerate() {
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

/// Render a scalar, extracting a global sign when it is a single monomial
/// and parenthesizing multi-monomial numerators.
fn signed_scalar_string(c: &CycRat) -> (bool, String) {
    let nonzero = c.num().coeffs().iter().filter(|x| !x.is_zero()).count();
    if nonzero <= 1 {
        let neg = c.num().coeffs().iter().any(|x| x.is_negative());
        let body = if neg { c.neg() } else { c.clone() };
        (neg, body.to_string())
    } else if c.den().is_one() {
        (false, format!("({c})"))
    } else {
        // CycRat display already parenthesizes multi-term numerators
        (false, c.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(ell: u64) -> (Arc<CycContext>, Bicharacter) {
        let ctx = CycContext::new(ell).unwrap();
        let lam = Bicharacter::new(2, ell, vec![vec![0, 1], vec![-1, 0]]).unwrap();
        (ctx, lam)
    }

    #[test]
    fn parse_y1_expression() {
        // z * x1^-1 * x2 = zeta * zeta^{-1} X^(-1,1) = X^(-1,1)
        let (ctx, lam) = setup(3);
        let v = parse_to_element("x1^-1 + z*x1^-1*x2", &ctx, &lam).unwrap();
        let expected = TorusElement::monomial(&ctx, vec![-1, 0], ctx.one().to_rat()).add(
            &TorusElement::monomial(&ctx, vec![-1, 1], ctx.one().to_rat()),
        );
        assert_eq!(v, expected);
    }

    #[test]
    fn parse_constants_and_scalars() {
        let (ctx, lam) = setup(3);
        assert_eq!(
            parse_to_element("1", &ctx, &lam).unwrap(),
            TorusElement::one(&ctx, 2)
        );
        let v = parse_to_element("(1 - 2*z^2)/3 * x2", &ctx, &lam).unwrap();
        let c = ctx
            .from_coeffs(vec![BigInt::from(1), BigInt::from(0), BigInt::from(-2)])
            .to_rat()
            .div_by_int(3)
            .unwrap();
        assert_eq!(v, TorusElement::monomial(&ctx, vec![0, 1], c));
    }

    #[test]
    fn rank_violation_rejected() {
        let (ctx, lam) = setup(3);
        assert!(matches!(
            parse_to_element("x3", &ctx, &lam),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn malformed_rejected() {
        let (ctx, lam) = setup(3);
        for bad in ["x1^", "x1 +", "* x1", "x1 x2", "(1 + z", "q", "x0"] {
            assert!(
                parse_to_element(bad, &ctx, &lam).is_err(),
                "'{bad}' should fail"
            );
        }
    }

    #[test]
    fn print_parse_round_trip() {
        let (ctx, lam) = setup(3);
        let elems = [
            "x1^-1 + z*x1^-1*x2",
            "1",
            "x1*x2",
            "x2^-3",
            "2*x1 - z^2*x2",
            "(1 + z)/2 * x1^2 - 3",
        ];
        for text in elems {
            let v = parse_to_element(text, &ctx, &lam).unwrap();
            let printed = format_element(&v, &lam);
            let reparsed = parse_to_element(&printed, &ctx, &lam).unwrap();
            assert_eq!(reparsed, v, "round trip through '{printed}'");
        }
        // canonical fixed point: print(parse(print(v))) == print(v)
        let v = parse_to_element("x1^-1 + z*x1^-1*x2", &ctx, &lam).unwrap();
        let p1 = format_element(&v, &lam);
        let p2 = format_element(&parse_to_element(&p1, &ctx, &lam).unwrap(), &lam);
        assert_eq!(p1, p2);
    }

    #[test]
    fn ordered_factors_use_bicharacter() {
        let (ctx, lam) = setup(3);
        // x1*x2 = zeta X^(1,1) while x2*x1 = zeta^{-1} X^(1,1)
        let a = parse_to_element("x1*x2", &ctx, &lam).unwrap();
        let b = parse_to_element("x2*x1", &ctx, &lam).unwrap();
        assert_eq!(a, b.scale_zeta(2));
    }
}

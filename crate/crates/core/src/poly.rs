//! Dense univariate polynomials `K[y]`.

use std::fmt;

use rand::Rng;

use crate::field::{is_negative_literal, Field, FieldError};

/// Polynomial in `y`, coefficients low to high with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BasePoly<F: Field> {
    ctx: F::Ctx,
    coeffs: Vec<F>,
}

impl<F: Field> BasePoly<F> {
    pub fn zero(ctx: &F::Ctx) -> Self {
        BasePoly {
            ctx: ctx.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: F) -> Self {
        BasePoly::from_coeffs(&c.ctx(), vec![c])
    }

    pub fn one(ctx: &F::Ctx) -> Self {
        BasePoly::constant(F::one(ctx))
    }

    /// `c · y^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let ctx = c.ctx();
        let mut coeffs = vec![F::zero(&ctx); k];
        coeffs.push(c);
        BasePoly::from_coeffs(&ctx, coeffs)
    }

    pub fn y(ctx: &F::Ctx) -> Self {
        BasePoly::monomial(F::one(ctx), 1)
    }

    pub fn from_coeffs(ctx: &F::Ctx, mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(F::is_zero) {
            coeffs.pop();
        }
        BasePoly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn from_ints(ctx: &F::Ctx, coeffs: &[i64]) -> Self {
        BasePoly::from_coeffs(ctx, coeffs.iter().map(|&c| F::from_i64(ctx, c)).collect())
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for `deg 0 = −∞`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Units of `K[y]` are the nonzero constants.
    pub fn is_unit(&self) -> bool {
        self.degree() == Some(0)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        BasePoly::from_coeffs(
            &self.ctx,
            (0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        BasePoly {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(F::neg).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        BasePoly::from_coeffs(&self.ctx, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return BasePoly::zero(&self.ctx);
        }
        let mut out = vec![F::zero(&self.ctx); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        BasePoly::from_coeffs(&self.ctx, out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(BasePoly::one(&self.ctx), |acc, _| acc.mul(self))
    }

    /// Formal derivative `d/dy`.
    pub fn derivative(&self) -> Self {
        BasePoly::from_coeffs(
            &self.ctx,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul(&F::from_i64(&self.ctx, k as i64)))
                .collect(),
        )
    }

    /// `p(q·y)`.
    pub fn scale_variable(&self, q: &F) -> Self {
        let mut power = F::one(&self.ctx);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.mul(&power));
            power = power.mul(q);
        }
        BasePoly::from_coeffs(&self.ctx, out)
    }

    /// `p(y + s)`, by Horner's rule.
    pub fn shift_variable(&self, s: &F) -> Self {
        let lin = BasePoly::from_coeffs(&self.ctx, vec![s.clone(), F::one(&self.ctx)]);
        self.coeffs
            .iter()
            .rev()
            .fold(BasePoly::zero(&self.ctx), |acc, c| {
                acc.mul(&lin).add(&BasePoly::constant(c.clone()))
            })
    }

    pub fn eval(&self, y: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(&self.ctx), |acc, c| acc.mul(y).add(c))
    }

    /// Random polynomial of degree `≤ max_deg` with small integer coefficients.
    pub fn random<R: Rng + ?Sized>(ctx: &F::Ctx, rng: &mut R, max_deg: usize) -> Self {
        let d = rng.gen_range(0..=max_deg);
        BasePoly::from_coeffs(ctx, (0..=d).map(|_| F::random_small(ctx, rng, 3)).collect())
    }

    /// Random nonzero polynomial.
    pub fn random_nonzero<R: Rng + ?Sized>(ctx: &F::Ctx, rng: &mut R, max_deg: usize) -> Self {
        loop {
            let p = BasePoly::random(ctx, rng, max_deg);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Parses sums of terms `c`, `c*y^k`, `y^k`, `-y`, e.g. `2*y^2 - y + 1/2`.
    pub fn parse(ctx: &F::Ctx, text: &str) -> Result<Self, FieldError> {
        let bad = || FieldError::InvalidLiteral(text.to_string());
        let mut acc = BasePoly::zero(ctx);
        for (negative, term) in split_signed_terms(text).ok_or_else(bad)? {
            let (coef, var) = match term.split_once('*') {
                Some((c, v)) => (Some(c.trim()), Some(v.trim())),
                None if term.starts_with('y') => (None, Some(term)),
                None => (Some(term), None),
            };
            let c = match coef {
                Some(c) => F::parse(ctx, c)?,
                None => F::one(ctx),
            };
            let k = match var {
                None => 0,
                Some("y") => 1,
                Some(v) => v
                    .strip_prefix("y^")
                    .and_then(|e| e.parse::<usize>().ok())
                    .ok_or_else(bad)?,
            };
            let c = if negative { c.neg() } else { c };
            acc = acc.add(&BasePoly::monomial(c, k));
        }
        Ok(acc)
    }
}

/// Splits `a + b - c` into signed terms; `+ -c` is accepted as well.
pub(crate) fn split_signed_terms(text: &str) -> Option<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut negative = false;
    let mut start = None;
    let bytes = text.as_bytes();
    let mut depth = 0i32;
    for (i, &ch) in bytes.iter().enumerate() {
        match ch {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                // a sign directly after `^` belongs to an exponent
                let prev = text[..i].trim_end().chars().last();
                if prev == Some('^') {
                    continue;
                }
                if let Some(s) = start.take() {
                    let term = text[s..i].trim();
                    if term.is_empty() {
                        return None;
                    }
                    out.push((negative, term));
                    negative = false;
                }
                if ch == b'-' {
                    negative = !negative;
                }
                continue;
            }
            _ => {}
        }
        if start.is_none() && !ch.is_ascii_whitespace() {
            start = Some(i);
        }
    }
    if depth != 0 {
        return None;
    }
    match start {
        Some(s) => out.push((negative, text[s..].trim())),
        None if out.is_empty() && text.trim().is_empty() => return None,
        None => return None,
    }
    Some(out)
}

impl<F: Field> fmt::Display for BasePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if is_negative_literal(c) {
                (true, c.neg())
            } else {
                (false, c.clone())
            };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("y")?,
                1 => write!(f, "{mag}*y")?,
                _ if unit => write!(f, "y^{k}")?,
                _ => write!(f, "{mag}*y^{k}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for BasePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BasePoly({self})")
    }
}

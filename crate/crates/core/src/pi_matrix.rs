//! A non-atomic affine PI ring of 2×2 matrices.
//!
//! With `S = ℚ[x, y, y⁻¹]`, the ring
//!
//! ```text
//! R = ( S   xS        )
//!     ( S   ℚ[y] + xS )
//! ```
//!
//! contains `U = diag(1, y)`, which is not a unit of `R` because `y⁻¹ ∉ ℚ[y] + xS`.
//! Every matrix `A = (a, xb; c, xd)` with `det A ≠ 0` factors as `U · A'` where
//! `A'` has the same shape, so peeling never stops and `A` has no factorization
//! into atoms.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::field::{Field, Rationals, Q};
use crate::poly::split_signed_terms;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PiError {
    #[error("matrix is not of the form (a, xb; c, xd) with nonzero determinant")]
    NotSpecialForm,
    #[error("invalid entry `{0}`")]
    InvalidEntry(String),
    #[error("a matrix literal needs four `;`-separated entries, got {0}")]
    WrongEntryCount(usize),
    #[error("peeling check failed at step {step}: {what}")]
    CheckFailed { step: usize, what: String },
}

/// Element of `ℚ[x, y, y⁻¹]`: `(i, j) ↦ coefficient of xⁱ yʲ`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(u32, i64), Q>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        LaurentPoly2::default()
    }

    pub fn one() -> Self {
        LaurentPoly2::monomial(Q::int(1), 0, 0)
    }

    /// `c xⁱ yʲ`.
    pub fn monomial(c: Q, i: u32, j: i64) -> Self {
        let mut p = LaurentPoly2::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn x() -> Self {
        LaurentPoly2::monomial(Q::int(1), 1, 0)
    }

    pub fn y_pow(j: i64) -> Self {
        LaurentPoly2::monomial(Q::int(1), 0, j)
    }

    fn add_term(&mut self, i: u32, j: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self
            .terms
            .entry((i, j))
            .or_insert_with(|| Q::zero(&Rationals));
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, i64), Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly2 {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly2::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, c1.mul(c2));
            }
        }
        out
    }

    /// Lies in `xS`.
    pub fn divisible_by_x(&self) -> bool {
        self.terms.keys().all(|&(i, _)| i >= 1)
    }

    /// Lies in `ℚ[y] + xS`: the `x`-free part has no negative powers of `y`.
    pub fn in_qy_plus_xs(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i >= 1 || j >= 0)
    }

    /// Random element with small integer coefficients, `0 ≤ i ≤ 2`, `|j| ≤ 2`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_terms: usize) -> Self {
        let mut p = LaurentPoly2::zero();
        for _ in 0..rng.gen_range(0..=max_terms) {
            p.add_term(
                rng.gen_range(0..=2),
                rng.gen_range(-2..=2),
                Q::int(rng.gen_range(-3..=3)),
            );
        }
        p
    }
}

impl FromStr for LaurentPoly2 {
    type Err = PiError;

    /// Sums of products of a rational, `x^i` and `y^j`, e.g. `2*x*y^-1 - 1/2`.
    fn from_str(text: &str) -> Result<Self, PiError> {
        let bad = || PiError::InvalidEntry(text.to_string());
        let mut out = LaurentPoly2::zero();
        for (negative, term) in split_signed_terms(text).ok_or_else(bad)? {
            let (mut c, mut i, mut j) = (Q::int(1), 0u32, 0i64);
            for factor in term.split('*').map(str::trim) {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b.trim(), Some(e.trim().parse::<i64>().map_err(|_| bad())?)),
                    None => (factor, None),
                };
                match base {
                    "x" => i += u32::try_from(exp.unwrap_or(1)).map_err(|_| bad())?,
                    "y" => j += exp.unwrap_or(1),
                    _ if exp.is_none() => {
                        c = c.mul(&Q::parse(&Rationals, base).map_err(|_| bad())?)
                    }
                    _ => return Err(bad()),
                }
            }
            out.add_term(i, j, if negative { c.neg() } else { c });
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative() {
                (true, c.neg())
            } else {
                (false, c.clone())
            };
            match (n == 0, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                factors.push(mag.to_string());
            }
            match i {
                0 => {}
                1 => factors.push("x".into()),
                _ => factors.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => factors.push("y".into()),
                _ => factors.push(format!("y^{j}")),
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `[[a, b], [c, d]]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2(pub [[LaurentPoly2; 2]; 2]);

impl Mat2 {
    pub fn new(a: LaurentPoly2, b: LaurentPoly2, c: LaurentPoly2, d: LaurentPoly2) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        Mat2::diag(LaurentPoly2::one(), LaurentPoly2::one())
    }

    pub fn diag(a: LaurentPoly2, d: LaurentPoly2) -> Self {
        Mat2::new(a, LaurentPoly2::zero(), LaurentPoly2::zero(), d)
    }

    /// `diag(1, y)`.
    pub fn u() -> Self {
        Mat2::diag(LaurentPoly2::one(), LaurentPoly2::y_pow(1))
    }

    pub fn entry(&self, r: usize, c: usize) -> &LaurentPoly2 {
        &self.0[r][c]
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = |r: usize, c: usize| self.0[r][c].add(&other.0[r][c]);
        Mat2([[m(0, 0), m(0, 1)], [m(1, 0), m(1, 1)]])
    }

    pub fn neg(&self) -> Self {
        let m = |r: usize, c: usize| self.0[r][c].neg();
        Mat2([[m(0, 0), m(0, 1)], [m(1, 0), m(1, 1)]])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = |r: usize, c: usize| {
            self.0[r][0]
                .mul(&other.0[0][c])
                .add(&self.0[r][1].mul(&other.0[1][c]))
        };
        Mat2([[m(0, 0), m(0, 1)], [m(1, 0), m(1, 1)]])
    }

    pub fn det(&self) -> LaurentPoly2 {
        self.0[0][0]
            .mul(&self.0[1][1])
            .sub(&self.0[0][1].mul(&self.0[1][0]))
    }

    /// Multiplies row 2 by `p`.
    pub fn scale_row2(&self, p: &LaurentPoly2) -> Self {
        let [r1, r2] = &self.0;
        Mat2([r1.clone(), [r2[0].mul(p), r2[1].mul(p)]])
    }

    /// Random element of `R`.
    pub fn random_in_r<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut qy = LaurentPoly2::zero();
        for _ in 0..rng.gen_range(0..=2) {
            qy.add_term(0, rng.gen_range(0..=2), Q::int(rng.gen_range(-3..=3)));
        }
        Mat2::new(
            LaurentPoly2::random(rng, 3),
            LaurentPoly2::x().mul(&LaurentPoly2::random(rng, 3)),
            LaurentPoly2::random(rng, 3),
            qy.add(&LaurentPoly2::x().mul(&LaurentPoly2::random(rng, 2))),
        )
    }
}

impl FromStr for Mat2 {
    type Err = PiError;

    /// `a; b; c; d`, row by row.
    fn from_str(text: &str) -> Result<Self, PiError> {
        let parts: Vec<&str> = text.split(';').collect();
        if parts.len() != 4 {
            return Err(PiError::WrongEntryCount(parts.len()));
        }
        let e: Vec<LaurentPoly2> = parts.iter().map(|p| p.parse()).collect::<Result<_, _>>()?;
        let [a, b, c, d]: [LaurentPoly2; 4] = e.try_into().expect("four entries");
        Ok(Mat2::new(a, b, c, d))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.0;
        write!(f, "{a}; {b}; {c}; {d}")
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat2({self})")
    }
}

/// Membership in `R`: entry (1,2) in `xS`, entry (2,2) in `ℚ[y] + xS`.
pub fn in_r(a: &Mat2) -> bool {
    a.entry(0, 1).divisible_by_x() && a.entry(1, 1).in_qy_plus_xs()
}

/// `A = (a, xb; c, xd)` with `det A ≠ 0`.
pub fn is_special_form(a: &Mat2) -> bool {
    a.entry(0, 1).divisible_by_x() && a.entry(1, 1).divisible_by_x() && !a.det().is_zero()
}

/// Splits `A = U · A'` with `U = diag(1, y)` and `A'` = `A` with row 2 scaled
/// by `y⁻¹`.
pub fn peel(a: &Mat2) -> Result<(Mat2, Mat2), PiError> {
    if !is_special_form(a) {
        return Err(PiError::NotSpecialForm);
    }
    let next = a.scale_row2(&LaurentPoly2::y_pow(-1));
    let u = Mat2::u();
    debug_assert_eq!(&u.mul(&next), a);
    Ok((u, next))
}

/// What was verified at one peeling step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelStep {
    pub step: usize,
    pub matrix: Mat2,
    /// `U · A_k = A_{k-1}`.
    pub product_ok: bool,
    /// `A = U^k · A_k`.
    pub power_ok: bool,
    pub u_in_r: bool,
    /// `U⁻¹ = diag(1, y⁻¹)` lies outside `R`.
    pub u_not_unit: bool,
    pub factor_in_r: bool,
    pub special_form: bool,
    /// `det A_k = y⁻¹ · det A_{k-1}`.
    pub det_ok: bool,
}

impl PeelStep {
    pub fn passed(&self) -> bool {
        self.product_ok
            && self.power_ok
            && self.u_in_r
            && self.u_not_unit
            && self.factor_in_r
            && self.special_form
            && self.det_ok
    }
}

/// Peels `steps` times, checking every claim along the way.
pub fn peel_chain(a: &Mat2, steps: usize) -> Result<Vec<PeelStep>, PiError> {
    let u_inv = Mat2::diag(LaurentPoly2::one(), LaurentPoly2::y_pow(-1));
    let mut current = a.clone();
    let mut u_pow = Mat2::identity();
    let mut out = Vec::with_capacity(steps);
    for step in 1..=steps {
        let (u, next) = peel(&current)?;
        u_pow = u_pow.mul(&u);
        let s = PeelStep {
            step,
            matrix: next.clone(),
            product_ok: u.mul(&next) == current,
            power_ok: u_pow.mul(&next) == *a,
            u_in_r: in_r(&u),
            u_not_unit: u.mul(&u_inv) == Mat2::identity() && !in_r(&u_inv),
            factor_in_r: in_r(&next),
            special_form: is_special_form(&next),
            det_ok: next.det() == LaurentPoly2::y_pow(-1).mul(&current.det()),
        };
        if !s.passed() {
            return Err(PiError::CheckFailed {
                step,
                what: format!("{s:?}"),
            });
        }
        out.push(s);
        current = next;
    }
    Ok(out)
}

/// `(1, x; 1, xy)`.
pub fn default_matrix() -> Mat2 {
    "1; x; 1; x*y".parse().expect("valid literal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(s: &str) -> Mat2 {
        s.parse().unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(in_r(&Mat2::u()));
        assert!(!in_r(&m("1; 0; 0; y^-1")));
        assert!(in_r(&Mat2::identity()));
        assert!(in_r(&m("y^-3; x*y^-1; 7; 2 + y^2 + x*y^-5")));
        assert!(!in_r(&m("1; y; 0; 1")));
    }

    #[test]
    fn special_form_examples() {
        assert!(is_special_form(&default_matrix()));
        assert!(!is_special_form(&Mat2::identity()));
        assert!(!is_special_form(&m("1; x; 1; x")));
        assert_eq!(default_matrix().det(), "x*y - x".parse().unwrap());
    }

    #[test]
    fn peel_example() {
        let (u, next) = peel(&default_matrix()).unwrap();
        assert_eq!(next, m("1; x; y^-1; x"));
        assert_eq!(u.mul(&next), default_matrix());
        assert_eq!(peel(&Mat2::identity()), Err(PiError::NotSpecialForm));
    }

    #[test]
    fn chains_run_to_depth() {
        for a in [
            default_matrix(),
            m("y^2 + x; 3*x; -1; x^2*y^-1 + x"),
            m("1/2; x*y; x; x"),
        ] {
            let chain = peel_chain(&a, 25).unwrap();
            assert_eq!(chain.len(), 25);
            assert!(chain.iter().all(PeelStep::passed));
        }
    }

    #[test]
    fn literals_round_trip() {
        for s in [
            "1; x; 1; x*y",
            "-1/2*x^2*y^-3 + 4; 0; y - 1; x",
            "y^-1; x*y; 2*x^3; -x",
        ] {
            let a = m(s);
            assert_eq!(m(&a.to_string()), a);
        }
        assert_eq!("1; 2; 3".parse::<Mat2>(), Err(PiError::WrongEntryCount(3)));
        assert!("x^-1".parse::<LaurentPoly2>().is_err());
        assert!("z".parse::<LaurentPoly2>().is_err());
    }

    #[test]
    fn r_is_closed_under_ring_operations() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let a = Mat2::random_in_r(&mut rng);
            let b = Mat2::random_in_r(&mut rng);
            assert!(in_r(&a) && in_r(&b));
            assert!(in_r(&a.add(&b)));
            assert!(in_r(&a.neg()));
            assert!(in_r(&a.mul(&b)));
        }
    }
}

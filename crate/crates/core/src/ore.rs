//! Skew polynomial rings `K[y][x; σ, δ]` and skew Laurent rings
//! `K[y][x^{±1}; σ]`.
//!
//! Polynomials are stored with coefficients on the right, `f = Σ xⁱ aᵢ`, and
//! multiplied using `a·x = x·σ(a) + δ(a)`. With this convention the leading
//! coefficient of `g·h` is `σ^l(b_k)·c_l`, where `b_k` and `c_l` are the leading
//! coefficients of `g` and `h` and `l = deg h`.
//!
//! The length functions use `μ = deg_y` on the base ring. `deg` is a
//! superadditive length function on `K[y]` dominating `max ℒ`, so the values
//! are upper-bound variants of the ones built from `max ℒ`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, FieldError, Rationals, Q};
use crate::lenfn::{self, Flavor, Host, LengthFunctionSpec, Triple, ViolationReport};
use crate::poly::{split_signed_terms, BasePoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OreError {
    #[error("operands live in different rings: {0} vs {1}")]
    Mismatch(String, String),
    #[error("the zero polynomial has no length")]
    Zero,
    #[error("the filtration length is only defined for the Weyl algebra, not {0}")]
    NotWeyl(String),
    #[error("a σ-derivation d/dy needs σ = id")]
    DerivationNeedsIdentity,
    #[error("skew Laurent rings need δ = 0")]
    LaurentNeedsZeroDelta,
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("negative power of x in a polynomial ring: `{0}`")]
    NegativeExponent(String),
    #[error("invalid polynomial literal `{0}`")]
    InvalidLiteral(String),
    #[error("invalid configuration `{0}`; expected weyl, qplane:q=Q or qtorus:q=Q")]
    InvalidConfig(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Automorphism of `K[y]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Sigma<F: Field> {
    Identity,
    /// `y ↦ y + 1`.
    Shift,
    /// `y ↦ q·y`.
    Scale(F),
}

/// σ-derivation of `K[y]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Delta {
    Zero,
    /// `d/dy`; only paired with `σ = id`.
    Derivative,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigmaDelta<F: Field> {
    sigma: Sigma<F>,
    delta: Delta,
}

impl<F: Field> SigmaDelta<F> {
    pub fn new(sigma: Sigma<F>, delta: Delta) -> Result<Self, OreError> {
        if delta == Delta::Derivative && sigma != Sigma::Identity {
            return Err(OreError::DerivationNeedsIdentity);
        }
        if matches!(&sigma, Sigma::Scale(q) if q.is_zero()) {
            return Err(OreError::ZeroScale);
        }
        Ok(SigmaDelta { sigma, delta })
    }

    pub fn weyl() -> Self {
        SigmaDelta {
            sigma: Sigma::Identity,
            delta: Delta::Derivative,
        }
    }

    pub fn sigma(&self) -> &Sigma<F> {
        &self.sigma
    }

    pub fn delta(&self) -> Delta {
        self.delta
    }

    pub fn is_weyl(&self) -> bool {
        *self == Self::weyl()
    }

    /// `σ^k(p)` for any integer `k`; negative powers use `σ⁻¹`.
    pub fn sigma_pow(&self, p: &BasePoly<F>, k: i64) -> BasePoly<F> {
        let ctx = p.ctx();
        match &self.sigma {
            Sigma::Identity => p.clone(),
            Sigma::Shift => p.shift_variable(&F::from_i64(ctx, k)),
            Sigma::Scale(q) => {
                let base = if k < 0 {
                    q.inv().expect("nonzero scale")
                } else {
                    q.clone()
                };
                let qk = (0..k.unsigned_abs()).fold(F::one(ctx), |acc, _| acc.mul(&base));
                p.scale_variable(&qk)
            }
        }
    }

    pub fn apply_sigma(&self, p: &BasePoly<F>) -> BasePoly<F> {
        self.sigma_pow(p, 1)
    }

    pub fn apply_delta(&self, p: &BasePoly<F>) -> BasePoly<F> {
        match self.delta {
            Delta::Zero => BasePoly::zero(p.ctx()),
            Delta::Derivative => p.derivative(),
        }
    }
}

impl<F: Field> fmt::Display for SigmaDelta<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.sigma {
            Sigma::Identity => f.write_str("sigma=id")?,
            Sigma::Shift => f.write_str("sigma=(y->y+1)")?,
            Sigma::Scale(q) => write!(f, "sigma=(y->{q}*y)")?,
        }
        match self.delta {
            Delta::Zero => f.write_str(", delta=0"),
            Delta::Derivative => f.write_str(", delta=d/dy"),
        }
    }
}

/// `(exponent of x, right coefficient)` terms of a literal.
fn parse_terms<F: Field>(ctx: &F::Ctx, text: &str) -> Result<Vec<(i64, BasePoly<F>)>, OreError> {
    let bad = || OreError::InvalidLiteral(text.to_string());
    let strip = |s: &str| -> String {
        let s = s.trim();
        match s.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
            Some(inner) => inner.to_string(),
            None => s.to_string(),
        }
    };
    let mut out = Vec::new();
    for (negative, term) in split_signed_terms(text).ok_or_else(bad)? {
        let (exp, coef) = if let Some(rest) = term.strip_prefix('x') {
            let (power, coef) = match rest.split_once('*') {
                Some((p, c)) => (p.trim(), Some(c)),
                None => (rest.trim(), None),
            };
            let exp = match power {
                "" => 1,
                p => p
                    .strip_prefix('^')
                    .and_then(|e| e.trim().parse::<i64>().ok())
                    .ok_or_else(bad)?,
            };
            let coef = match coef {
                Some(c) => BasePoly::parse(ctx, &strip(c))?,
                None => BasePoly::one(ctx),
            };
            (exp, coef)
        } else {
            if term.contains('x') {
                return Err(bad());
            }
            (0, BasePoly::parse(ctx, &strip(term))?)
        };
        out.push((exp, if negative { coef.neg() } else { coef }));
    }
    Ok(out)
}

fn write_terms<'a, F: Field>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, &'a BasePoly<F>)>,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in terms {
        if c.is_zero() {
            continue;
        }
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        match i {
            0 => write!(f, "({c})")?,
            1 => write!(f, "x*({c})")?,
            _ => write!(f, "x^{i}*({c})")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// `Σ xⁱ aᵢ` in `K[y][x; σ, δ]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrePoly<F: Field> {
    sd: SigmaDelta<F>,
    ctx: F::Ctx,
    coeffs: Vec<BasePoly<F>>,
}

impl<F: Field> OrePoly<F> {
    pub fn from_coeffs(sd: &SigmaDelta<F>, ctx: &F::Ctx, mut coeffs: Vec<BasePoly<F>>) -> Self {
        while coeffs.last().is_some_and(BasePoly::is_zero) {
            coeffs.pop();
        }
        OrePoly {
            sd: sd.clone(),
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn zero(sd: &SigmaDelta<F>, ctx: &F::Ctx) -> Self {
        OrePoly::from_coeffs(sd, ctx, Vec::new())
    }

    /// An element of the base ring.
    pub fn constant(sd: &SigmaDelta<F>, a: BasePoly<F>) -> Self {
        let ctx = a.ctx().clone();
        OrePoly::from_coeffs(sd, &ctx, vec![a])
    }

    pub fn one(sd: &SigmaDelta<F>, ctx: &F::Ctx) -> Self {
        OrePoly::constant(sd, BasePoly::one(ctx))
    }

    pub fn x(sd: &SigmaDelta<F>, ctx: &F::Ctx) -> Self {
        OrePoly::from_coeffs(sd, ctx, vec![BasePoly::zero(ctx), BasePoly::one(ctx)])
    }

    pub fn y(sd: &SigmaDelta<F>, ctx: &F::Ctx) -> Self {
        OrePoly::constant(sd, BasePoly::y(ctx))
    }

    pub fn sigma_delta(&self) -> &SigmaDelta<F> {
        &self.sd
    }

    pub fn coeffs(&self) -> &[BasePoly<F>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BasePoly<F>> {
        self.coeffs.last()
    }

    /// Units are the nonzero constants.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_unit()
    }

    fn check(&self, other: &Self) -> Result<(), OreError> {
        if self.sd != other.sd || self.ctx != other.ctx {
            return Err(OreError::Mismatch(self.describe(), other.describe()));
        }
        Ok(())
    }

    fn describe(&self) -> String {
        format!("{} over {}", self.sd, self.ctx)
    }

    pub fn add(&self, other: &Self) -> Result<Self, OreError> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BasePoly::zero(&self.ctx);
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                a.add(b)
            })
            .collect();
        Ok(OrePoly::from_coeffs(&self.sd, &self.ctx, coeffs))
    }

    pub fn neg(&self) -> Self {
        OrePoly::from_coeffs(
            &self.sd,
            &self.ctx,
            self.coeffs.iter().map(BasePoly::neg).collect(),
        )
    }

    /// `self · x`: each `x^k p_k · x` becomes `x^{k+1} σ(p_k) + x^k δ(p_k)`.
    fn mul_x(&self) -> Self {
        let mut out = vec![BasePoly::zero(&self.ctx); self.coeffs.len() + 1];
        for (k, p) in self.coeffs.iter().enumerate() {
            out[k + 1] = out[k + 1].add(&self.sd.apply_sigma(p));
            out[k] = out[k].add(&self.sd.apply_delta(p));
        }
        OrePoly::from_coeffs(&self.sd, &self.ctx, out)
    }

    /// `self · b` for `b` in the base ring: right coefficients just multiply.
    fn mul_base(&self, b: &BasePoly<F>) -> Self {
        OrePoly::from_coeffs(
            &self.sd,
            &self.ctx,
            self.coeffs.iter().map(|p| p.mul(b)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self, OreError> {
        self.check(other)?;
        let mut acc = OrePoly::zero(&self.sd, &self.ctx);
        let mut shifted = self.clone();
        for (j, b) in other.coeffs.iter().enumerate() {
            if j > 0 {
                shifted = shifted.mul_x();
            }
            if !b.is_zero() {
                acc = acc.add(&shifted.mul_base(b))?;
            }
        }
        Ok(acc)
    }

    /// `deg_x f + deg_y(leading coefficient)`.
    pub fn lambda_skew(&self) -> Result<u64, OreError> {
        let lead = self.leading().ok_or(OreError::Zero)?;
        Ok((self.coeffs.len() - 1 + lead.degree().unwrap()) as u64)
    }

    /// Total degree in `x` and `y` (Bernstein filtration); Weyl algebra only.
    pub fn lambda_filtration(&self) -> Result<u64, OreError> {
        if !self.sd.is_weyl() {
            return Err(OreError::NotWeyl(self.sd.to_string()));
        }
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, a)| a.degree().map(|d| (i + d) as u64))
            .max()
            .ok_or(OreError::Zero)
    }

    pub fn parse(sd: &SigmaDelta<F>, ctx: &F::Ctx, text: &str) -> Result<Self, OreError> {
        let mut acc = OrePoly::zero(sd, ctx);
        for (e, c) in parse_terms(ctx, text)? {
            let e = usize::try_from(e).map_err(|_| OreError::NegativeExponent(text.to_string()))?;
            let mut coeffs = vec![BasePoly::zero(ctx); e];
            coeffs.push(c);
            acc = acc.add(&OrePoly::from_coeffs(sd, ctx, coeffs))?;
        }
        Ok(acc)
    }

    pub fn random<R: Rng + ?Sized>(
        sd: &SigmaDelta<F>,
        ctx: &F::Ctx,
        rng: &mut R,
        max_x: usize,
        max_y: usize,
    ) -> Self {
        let n = rng.gen_range(0..=max_x);
        let coeffs = (0..=n).map(|_| BasePoly::random(ctx, rng, max_y)).collect();
        OrePoly::from_coeffs(sd, ctx, coeffs)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(
        sd: &SigmaDelta<F>,
        ctx: &F::Ctx,
        rng: &mut R,
        max_x: usize,
        max_y: usize,
    ) -> Self {
        loop {
            let f = OrePoly::random(sd, ctx, rng, max_x, max_y);
            if !f.is_zero() {
                return f;
            }
        }
    }

    pub fn random_nonunit<R: Rng + ?Sized>(
        sd: &SigmaDelta<F>,
        ctx: &F::Ctx,
        rng: &mut R,
        max_x: usize,
        max_y: usize,
    ) -> Self {
        loop {
            let f = OrePoly::random_nonzero(sd, ctx, rng, max_x, max_y);
            if !f.is_unit() {
                return f;
            }
        }
    }
}

impl<F: Field> fmt::Display for OrePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs.iter().enumerate().map(|(i, c)| (i as i64, c)),
        )
    }
}

impl<F: Field> fmt::Debug for OrePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrePoly({self})")
    }
}

impl<F: Field> Host for OrePoly<F> {
    fn product(&self, other: &Self) -> Option<Self> {
        self.mul(other).ok()
    }
}

/// `Σ_{i=m}^{n} xⁱ aᵢ` in `K[y][x^{±1}; σ]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentOrePoly<F: Field> {
    sd: SigmaDelta<F>,
    ctx: F::Ctx,
    low: i64,
    coeffs: Vec<BasePoly<F>>,
}

impl<F: Field> LaurentOrePoly<F> {
    /// Coefficients of `x^low, x^{low+1}, …`; zero ends are trimmed.
    pub fn from_coeffs(
        sd: &SigmaDelta<F>,
        ctx: &F::Ctx,
        low: i64,
        mut coeffs: Vec<BasePoly<F>>,
    ) -> Result<Self, OreError> {
        if sd.delta != Delta::Zero {
            return Err(OreError::LaurentNeedsZeroDelta);
        }
        while coeffs.last().is_some_and(BasePoly::is_zero) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..lead_zeros);
        let low = if coeffs.is_empty() {
            0
        } else {
            low + lead_zeros as i64
        };
        Ok(LaurentOrePoly {
            sd: sd.clone(),
            ctx: ctx.clone(),
            low,
            coeffs,
        })
    }

    pub fn zero(sd: &SigmaDelta<F>, ctx: &F::Ctx) -> Result<Self, OreError> {
        LaurentOrePoly::from_coeffs(sd, ctx, 0, Vec::new())
    }

    /// `x^k · a`.
    pub fn term(sd: &SigmaDelta<F>, k: i64, a: BasePoly<F>) -> Result<Self, OreError> {
        let ctx = a.ctx().clone();
        LaurentOrePoly::from_coeffs(sd, &ctx, k, vec![a])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(m, n)` with `a_m, a_n ≠ 0`.
    pub fn window(&self) -> Option<(i64, i64)> {
        (!self.is_zero()).then(|| (self.low, self.low + self.coeffs.len() as i64 - 1))
    }

    /// `f_− = a_m`.
    pub fn lowest(&self) -> Option<&BasePoly<F>> {
        self.coeffs.first()
    }

    pub fn coeff(&self, k: i64) -> BasePoly<F> {
        usize::try_from(k - self.low)
            .ok()
            .and_then(|i| self.coeffs.get(i).cloned())
            .unwrap_or_else(|| BasePoly::zero(&self.ctx))
    }

    /// Units are `x^k · c` with `c` a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_unit()
    }

    fn check(&self, other: &Self) -> Result<(), OreError> {
        if self.sd != other.sd || self.ctx != other.ctx {
            return Err(OreError::Mismatch(
                format!("{} over {}", self.sd, self.ctx),
                format!("{} over {}", other.sd, other.ctx),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, OreError> {
        self.check(other)?;
        let (Some((m1, n1)), Some((m2, n2))) = (self.window(), other.window()) else {
            return Ok(if self.is_zero() {
                other.clone()
            } else {
                self.clone()
            });
        };
        let (m, n) = (m1.min(m2), n1.max(n2));
        let coeffs = (m..=n)
            .map(|k| self.coeff(k).add(&other.coeff(k)))
            .collect();
        LaurentOrePoly::from_coeffs(&self.sd, &self.ctx, m, coeffs)
    }

    /// `(xⁱ a)(xʲ b) = x^{i+j} σʲ(a) b`.
    pub fn mul(&self, other: &Self) -> Result<Self, OreError> {
        self.check(other)?;
        let mut acc = LaurentOrePoly::zero(&self.sd, &self.ctx)?;
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let (i, j) = (self.low + i as i64, other.low + j as i64);
                let c = self.sd.sigma_pow(a, j).mul(b);
                acc = acc.add(&LaurentOrePoly::term(&self.sd, i + j, c)?)?;
            }
        }
        Ok(acc)
    }

    /// `ω(f) + μ(f_−)` with `ω = n − m`.
    pub fn lambda_laurent(&self) -> Result<u64, OreError> {
        let (m, n) = self.window().ok_or(OreError::Zero)?;
        Ok((n - m) as u64 + self.lowest().unwrap().degree().unwrap() as u64)
    }

    pub fn parse(sd: &SigmaDelta<F>, ctx: &F::Ctx, text: &str) -> Result<Self, OreError> {
        let mut acc = LaurentOrePoly::zero(sd, ctx)?;
        for (e, c) in parse_terms(ctx, text)? {
            acc = acc.add(&LaurentOrePoly::from_coeffs(sd, ctx, e, vec![c])?)?;
        }
        Ok(acc)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(
        sd: &SigmaDelta<F>,
        ctx: &F::Ctx,
        rng: &mut R,
        max_width: usize,
        max_y: usize,
    ) -> Self {
        loop {
            let low = rng.gen_range(-3..=3);
            let w = rng.gen_range(0..=max_width);
            let coeffs = (0..=w).map(|_| BasePoly::random(ctx, rng, max_y)).collect();
            let f = LaurentOrePoly::from_coeffs(sd, ctx, low, coeffs).expect("δ = 0");
            if !f.is_zero() {
                return f;
            }
        }
    }

    pub fn random_nonunit<R: Rng + ?Sized>(
        sd: &SigmaDelta<F>,
        ctx: &F::Ctx,
        rng: &mut R,
        max_width: usize,
        max_y: usize,
    ) -> Self {
        loop {
            let f = LaurentOrePoly::random_nonzero(sd, ctx, rng, max_width, max_y);
            if !f.is_unit() {
                return f;
            }
        }
    }
}

impl<F: Field> fmt::Display for LaurentOrePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (self.low + i as i64, c)),
        )
    }
}

impl<F: Field> fmt::Debug for LaurentOrePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentOrePoly({self})")
    }
}

impl<F: Field> Host for LaurentOrePoly<F> {
    fn product(&self, other: &Self) -> Option<Self> {
        self.mul(other).ok()
    }
}

/// The three named rings over `ℚ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OreConfig {
    /// `K[y][x; id, d/dy]`, i.e. `yx = xy + 1`.
    Weyl,
    /// `K[y][x; y ↦ qy]`.
    QPlane(Q),
    /// `K[y][x^{±1}; y ↦ qy]`.
    QTorus(Q),
}

impl OreConfig {
    pub fn sigma_delta(&self) -> SigmaDelta<Q> {
        match self {
            OreConfig::Weyl => SigmaDelta::weyl(),
            OreConfig::QPlane(q) | OreConfig::QTorus(q) => SigmaDelta {
                sigma: Sigma::Scale(q.clone()),
                delta: Delta::Zero,
            },
        }
    }

    pub fn is_laurent(&self) -> bool {
        matches!(self, OreConfig::QTorus(_))
    }
}

impl FromStr for OreConfig {
    type Err = OreError;

    fn from_str(s: &str) -> Result<Self, OreError> {
        let bad = || OreError::InvalidConfig(s.to_string());
        let s = s.trim();
        if s == "weyl" {
            return Ok(OreConfig::Weyl);
        }
        let (kind, q) = match s.split_once(':') {
            Some((kind, param)) => (kind, param.strip_prefix("q=").ok_or_else(bad)?),
            None => (s, "2"),
        };
        let q = Q::parse(&Rationals, q).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(OreError::ZeroScale);
        }
        match kind {
            "qplane" => Ok(OreConfig::QPlane(q)),
            "qtorus" => Ok(OreConfig::QTorus(q)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for OreConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OreConfig::Weyl => f.write_str("weyl"),
            OreConfig::QPlane(q) => write!(f, "qplane:q={q}"),
            OreConfig::QTorus(q) => write!(f, "qtorus:q={q}"),
        }
    }
}

/// Outcome of the randomized checks for one configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkewReport {
    pub config: String,
    pub pairs: usize,
    pub seed: u64,
    /// Always true: λ uses `μ = deg` rather than `max ℒ`.
    pub mu_is_degree_surrogate: bool,
    /// `λ(g·h) > λ(g)` for nonunit `h`.
    pub right_length: ViolationReport,
    /// Products whose leading (or, for Laurent, lowest) coefficient broke the
    /// `σ^l(b_k)·c_l` law.
    pub leading_law_failures: usize,
    /// Products of `k` nonunits with `λ < k`.
    pub bf_bound_failures: usize,
}

impl SkewReport {
    pub fn passed(&self) -> bool {
        self.right_length.passed() && self.leading_law_failures == 0 && self.bf_bound_failures == 0
    }
}

fn right_spec<E: 'static>(
    name: &str,
    lambda: impl Fn(&E) -> u64 + Send + Sync + 'static,
    unit: impl Fn(&E) -> bool + Send + Sync + 'static,
) -> LengthFunctionSpec<E> {
    LengthFunctionSpec::new(name, Flavor::Right, lambda, unit)
}

/// Runs the right length function, leading-coefficient and bound checks on
/// `pairs` random pairs `(g, h)` with `h` a nonunit.
pub fn skew_suite<R: Rng>(config: &OreConfig, pairs: usize, seed: u64, rng: &mut R) -> SkewReport {
    let sd = config.sigma_delta();
    let ctx = Rationals;
    let (right_length, leading_law_failures, bf_bound_failures) = if config.is_laurent() {
        let mut triples = Vec::with_capacity(pairs);
        let mut law = 0;
        for _ in 0..pairs {
            let g = LaurentOrePoly::random_nonzero(&sd, &ctx, rng, 2, 2);
            let h = LaurentOrePoly::random_nonunit(&sd, &ctx, rng, 2, 2);
            let gh = g.mul(&h).unwrap();
            // lowest coefficient of g·h is σ^{m_h}(g_−)·h_−
            let (m_h, _) = h.window().unwrap();
            let expect = sd
                .sigma_pow(g.lowest().unwrap(), m_h)
                .mul(h.lowest().unwrap());
            if gh.lowest() != Some(&expect) {
                law += 1;
            }
            triples.push(Triple::new(gh, g, h));
        }
        let spec = right_spec(
            "laurent",
            |f: &LaurentOrePoly<Q>| f.lambda_laurent().unwrap(),
            LaurentOrePoly::is_unit,
        );
        let report = lenfn::check_contract(&spec, &triples).expect("host products");
        let bf = bound_failures(
            rng,
            pairs / 10,
            |r| LaurentOrePoly::random_nonunit(&sd, &ctx, r, 1, 1),
            |f| f.lambda_laurent().unwrap(),
        );
        (report, law, bf)
    } else {
        let mut triples = Vec::with_capacity(pairs);
        let mut law = 0;
        for _ in 0..pairs {
            let g = OrePoly::random_nonzero(&sd, &ctx, rng, 2, 2);
            let h = OrePoly::random_nonunit(&sd, &ctx, rng, 2, 2);
            let gh = g.mul(&h).unwrap();
            let l = h.deg_x().unwrap() as i64;
            let expect = sd
                .sigma_pow(g.leading().unwrap(), l)
                .mul(h.leading().unwrap());
            if gh.leading() != Some(&expect) {
                law += 1;
            }
            triples.push(Triple::new(gh, g, h));
        }
        let spec = right_spec(
            "skew",
            |f: &OrePoly<Q>| f.lambda_skew().unwrap(),
            OrePoly::is_unit,
        );
        let report = lenfn::check_contract(&spec, &triples).expect("host products");
        let bf = bound_failures(
            rng,
            pairs / 10,
            |r| OrePoly::random_nonunit(&sd, &ctx, r, 1, 1),
            |f| f.lambda_skew().unwrap(),
        );
        (report, law, bf)
    };
    SkewReport {
        config: config.to_string(),
        pairs,
        seed,
        mu_is_degree_surrogate: true,
        right_length,
        leading_law_failures,
        bf_bound_failures,
    }
}

/// Multiplies `k = 2..=5` random nonunits and counts products with `λ < k`.
fn bound_failures<R: Rng, E: Host>(
    rng: &mut R,
    samples: usize,
    mut gen: impl FnMut(&mut R) -> E,
    lambda: impl Fn(&E) -> u64,
) -> usize {
    let mut failures = 0;
    for _ in 0..samples {
        let k = rng.gen_range(2..=5u64);
        let first = gen(rng);
        let product = (1..k).fold(first, |acc, _| acc.product(&gen(rng)).expect("same ring"));
        if lambda(&product) < k {
            failures += 1;
        }
    }
    failures
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub pairs: usize,
    pub seed: u64,
    /// Pairs with `λ(fg) ≠ λ(f) + λ(g)`.
    pub additivity_failures: usize,
    pub superadditive: ViolationReport,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.additivity_failures == 0 && self.superadditive.passed()
    }
}

/// Additivity of the total degree on random nonzero Weyl algebra pairs.
pub fn filtration_suite<R: Rng>(pairs: usize, seed: u64, rng: &mut R) -> FiltrationReport {
    let sd = SigmaDelta::weyl();
    let mut triples = Vec::with_capacity(pairs);
    let mut failures = 0;
    for _ in 0..pairs {
        let f = OrePoly::<Q>::random_nonzero(&sd, &Rationals, rng, 3, 3);
        let g = OrePoly::random_nonzero(&sd, &Rationals, rng, 3, 3);
        let fg = f.mul(&g).unwrap();
        if fg.lambda_filtration().unwrap()
            != f.lambda_filtration().unwrap() + g.lambda_filtration().unwrap()
        {
            failures += 1;
        }
        triples.push(Triple::new(fg, f, g));
    }
    let spec = LengthFunctionSpec::new(
        "bernstein",
        Flavor::Superadditive,
        |f: &OrePoly<Q>| f.lambda_filtration().unwrap(),
        OrePoly::is_unit,
    );
    FiltrationReport {
        pairs,
        seed,
        additivity_failures: failures,
        superadditive: lenfn::check_contract(&spec, &triples).expect("host products"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Prime};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn weyl(s: &str) -> OrePoly<Q> {
        OrePoly::parse(&SigmaDelta::weyl(), &Rationals, s).unwrap()
    }

    fn qplane() -> SigmaDelta<Q> {
        "qplane:q=2".parse::<OreConfig>().unwrap().sigma_delta()
    }

    fn torus(s: &str) -> LaurentOrePoly<Q> {
        let sd = "qtorus:q=2".parse::<OreConfig>().unwrap().sigma_delta();
        LaurentOrePoly::parse(&sd, &Rationals, s).unwrap()
    }

    #[test]
    fn commutation_rules() {
        let sd = SigmaDelta::weyl();
        let (x, y) = (OrePoly::x(&sd, &Rationals), OrePoly::y(&sd, &Rationals));
        assert_eq!(y.mul(&x).unwrap(), weyl("x*(y) + 1"));

        let sd = qplane();
        let (x, y) = (OrePoly::x(&sd, &Rationals), OrePoly::y(&sd, &Rationals));
        assert_eq!(
            y.mul(&x).unwrap(),
            OrePoly::parse(&sd, &Rationals, "x*(2*y)").unwrap()
        );

        let f = weyl("x^2*(y+1) + x*(3) + (1/2)");
        assert_eq!(
            f.mul(&OrePoly::one(&SigmaDelta::weyl(), &Rationals))
                .unwrap(),
            f
        );
        assert_eq!(weyl(&f.to_string()), f);
    }

    #[test]
    fn lambda_examples() {
        let yx = weyl("x*(y) + 1");
        assert_eq!(yx.lambda_skew().unwrap(), 2);
        assert_eq!(weyl("5").lambda_skew().unwrap(), 0);
        assert_eq!(weyl("x^2").lambda_skew().unwrap(), 2);
        assert_eq!(weyl("0").lambda_skew(), Err(OreError::Zero));

        assert_eq!(yx.lambda_filtration().unwrap(), 2);
        assert_eq!(weyl("-3/4").lambda_filtration().unwrap(), 0);
        assert_eq!(yx.mul(&yx).unwrap().lambda_filtration().unwrap(), 4);
        let q = OrePoly::parse(&qplane(), &Rationals, "x").unwrap();
        assert!(matches!(q.lambda_filtration(), Err(OreError::NotWeyl(_))));

        assert_eq!(torus("x^-1 + x").lambda_laurent().unwrap(), 2);
        assert_eq!(torus("x^5").lambda_laurent().unwrap(), 0);
        assert_eq!(torus("x^-2*(y)").lambda_laurent().unwrap(), 1);
        assert_eq!(torus("0").lambda_laurent(), Err(OreError::Zero));
    }

    #[test]
    fn laurent_inverse_power() {
        let x = torus("x");
        let xi = torus("x^-1");
        assert!(x.mul(&xi).unwrap().is_unit());
        let y = torus("(y)");
        // y x^{-1} = x^{-1} σ^{-1}(y) = x^{-1} (y/2)
        assert_eq!(y.mul(&xi).unwrap(), torus("x^-1*(1/2*y)"));
        assert_eq!(xi.mul(&y).unwrap().mul(&x).unwrap(), torus("(2*y)"));
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let f = weyl("x");
        let g = OrePoly::parse(&qplane(), &Rationals, "x").unwrap();
        assert!(matches!(f.mul(&g), Err(OreError::Mismatch(..))));
        assert_eq!(
            SigmaDelta::<Q>::new(Sigma::Shift, Delta::Derivative),
            Err(OreError::DerivationNeedsIdentity)
        );
        assert_eq!(
            LaurentOrePoly::<Q>::zero(&SigmaDelta::weyl(), &Rationals),
            Err(OreError::LaurentNeedsZeroDelta)
        );
        assert!(OrePoly::parse(&qplane(), &Rationals, "x^-1").is_err());
        assert!("qtorus:q=0".parse::<OreConfig>().is_err());
        assert!("banana".parse::<OreConfig>().is_err());
    }

    #[test]
    fn associativity_in_every_ring() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let shift = SigmaDelta::new(Sigma::Shift, Delta::Zero).unwrap();
        for sd in [SigmaDelta::weyl(), qplane(), shift] {
            for _ in 0..50 {
                let f = OrePoly::random(&sd, &Rationals, &mut rng, 2, 2);
                let g = OrePoly::random(&sd, &Rationals, &mut rng, 2, 2);
                let h = OrePoly::random(&sd, &Rationals, &mut rng, 2, 2);
                let lhs = f.mul(&g).unwrap().mul(&h).unwrap();
                assert_eq!(lhs, f.mul(&g.mul(&h).unwrap()).unwrap(), "{sd}");
            }
        }
        let sd = "qtorus:q=3".parse::<OreConfig>().unwrap().sigma_delta();
        for _ in 0..50 {
            let f = LaurentOrePoly::random_nonzero(&sd, &Rationals, &mut rng, 2, 2);
            let g = LaurentOrePoly::random_nonzero(&sd, &Rationals, &mut rng, 2, 2);
            let h = LaurentOrePoly::random_nonzero(&sd, &Rationals, &mut rng, 2, 2);
            let lhs = f.mul(&g).unwrap().mul(&h).unwrap();
            assert_eq!(lhs, f.mul(&g.mul(&h).unwrap()).unwrap());
        }
    }

    #[test]
    fn sigma_derivation_law_and_unit_hypothesis() {
        let p = Prime::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let weyl = SigmaDelta::<Fp>::weyl();
        let scale = SigmaDelta::new(Sigma::Scale(Fp::new(p, 2)), Delta::Zero).unwrap();
        let shift = SigmaDelta::new(Sigma::Shift, Delta::Zero).unwrap();
        for _ in 0..200 {
            let a = BasePoly::<Fp>::random(&p, &mut rng, 4);
            let b = BasePoly::<Fp>::random(&p, &mut rng, 4);
            let lhs = weyl.apply_delta(&a.mul(&b));
            let rhs = weyl
                .apply_sigma(&a)
                .mul(&weyl.apply_delta(&b))
                .add(&weyl.apply_delta(&a).mul(&b));
            assert_eq!(lhs, rhs);
            for sd in [&scale, &shift] {
                assert_eq!(sd.apply_sigma(&a).is_unit(), a.is_unit());
                assert_eq!(sd.sigma_pow(&sd.apply_sigma(&a), -1), a);
            }
        }
    }

    #[test]
    fn suites_pass_on_small_runs() {
        for cfg in ["weyl", "qplane:q=2", "qtorus:q=2"] {
            let cfg: OreConfig = cfg.parse().unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            let report = skew_suite(&cfg, 100, 5, &mut rng);
            assert!(report.passed(), "{report:?}");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        assert!(filtration_suite(100, 6, &mut rng).passed());
    }
}

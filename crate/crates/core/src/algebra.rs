//! The semigroup algebra `K[S]` over an exact field.
//!
//! Elements are finite maps from normal forms to nonzero scalars. Products of
//! monomials are computed with [`NormalFormS::mul`], so the algebra inherits
//! the relations `ba²b = a²` and `a⁴b = ba⁴`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::group::{self, SMembership};
use crate::monoid::{self, NormalFormS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("invalid element literal `{0}`")]
    InvalidLiteral(String),
    #[error("divisor must be nonzero")]
    ZeroDivisor,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement<F: Field> {
    ctx: F::Ctx,
    terms: BTreeMap<NormalFormS, F>,
}

impl<F: Field> AlgebraElement<F> {
    pub fn zero(ctx: &F::Ctx) -> Self {
        AlgebraElement {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &F::Ctx) -> Self {
        AlgebraElement::monomial(F::one(ctx), NormalFormS::identity())
    }

    pub fn monomial(c: F, x: NormalFormS) -> Self {
        let ctx = c.ctx();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(x, c);
        }
        AlgebraElement { ctx, terms }
    }

    /// The basis element `x` with coefficient 1.
    pub fn basis(ctx: &F::Ctx, x: NormalFormS) -> Self {
        AlgebraElement::monomial(F::one(ctx), x)
    }

    pub fn from_terms<I: IntoIterator<Item = (NormalFormS, F)>>(ctx: &F::Ctx, terms: I) -> Self {
        let mut out = AlgebraElement::zero(ctx);
        for (x, c) in terms {
            out.add_term(x, c);
        }
        out
    }

    fn add_term(&mut self, x: NormalFormS, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&x) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&x);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(x, c);
            }
        }
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<NormalFormS, F> {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &NormalFormS> {
        self.terms.keys()
    }

    pub fn coefficient(&self, x: &NormalFormS) -> F {
        self.terms
            .get(x)
            .cloned()
            .unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn check_ctx(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.ctx != other.ctx {
            return Err(FieldError::Mismatch(self.ctx.to_string(), other.ctx.to_string()).into());
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(x.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(x, c)| (x.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        AlgebraElement::from_terms(
            &self.ctx,
            self.terms.iter().map(|(x, d)| (x.clone(), d.mul(c))),
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_ctx(other)?;
        let mut out = AlgebraElement::zero(&self.ctx);
        for (x, c) in &self.terms {
            for (y, d) in &other.terms {
                out.add_term(x.mul(y), c.mul(d));
            }
        }
        Ok(out)
    }

    /// Largest `a`-count in the support; `None` for zero (`−∞`).
    pub fn deg_a(&self) -> Option<u64> {
        self.terms.keys().map(NormalFormS::a_count).max()
    }

    /// Smallest `a`-count in the support; `None` for zero.
    pub fn min_deg_a(&self) -> Option<u64> {
        self.terms.keys().map(NormalFormS::a_count).min()
    }

    /// Random element with up to `max_terms` terms supported on elements of
    /// length `≤ max_len`.
    pub fn random<R: Rng + ?Sized>(
        ctx: &F::Ctx,
        rng: &mut R,
        max_len: u64,
        max_terms: usize,
    ) -> Self {
        let n = rng.gen_range(1..=max_terms);
        let mut out = AlgebraElement::zero(ctx);
        for _ in 0..n {
            let len = rng.gen_range(0..=max_len);
            let letters: Vec<_> = (0..len).map(|_| rng.gen_range(0..2u16)).collect();
            out.add_term(
                monoid::normalize_letters(&letters),
                F::random_small(ctx, rng, 4),
            );
        }
        out
    }

    /// Parses `3/2 * b^2 a^1 + -1 * e`. A bare word has coefficient 1 and a
    /// bare scalar multiplies the identity `e`. Words are normalized.
    pub fn parse(ctx: &F::Ctx, text: &str) -> Result<Self, AlgebraError> {
        let bad = || AlgebraError::InvalidLiteral(text.to_string());
        let mut out = AlgebraElement::zero(ctx);
        if text.trim() == "0" {
            return Ok(out);
        }
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad());
            }
            let (c, x) = match term.split_once('*') {
                Some((c, w)) => (
                    F::parse(ctx, c)?,
                    w.trim().parse::<NormalFormS>().map_err(|_| bad())?,
                ),
                None => match F::parse(ctx, term) {
                    Ok(c) => (c, NormalFormS::identity()),
                    Err(_) => (F::one(ctx), term.parse::<NormalFormS>().map_err(|_| bad())?),
                },
            };
            out.add_term(x, c);
        }
        Ok(out)
    }
}

impl<F: Field> fmt::Display for AlgebraElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (x, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c} * {x}")?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for AlgebraElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({self})")
    }
}

pub fn alg_add<F: Field>(
    f: &AlgebraElement<F>,
    g: &AlgebraElement<F>,
) -> Result<AlgebraElement<F>, AlgebraError> {
    f.add(g)
}

pub fn alg_mul<F: Field>(
    f: &AlgebraElement<F>,
    g: &AlgebraElement<F>,
) -> Result<AlgebraElement<F>, AlgebraError> {
    f.mul(g)
}

pub fn deg_a<F: Field>(f: &AlgebraElement<F>) -> Option<u64> {
    f.deg_a()
}

/// Why a divisibility probe answered `No`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoReason {
    /// The `a`-degree range of `g` cannot be that of `f·h` for any `h ≠ 0`.
    DegreeObstruction,
    /// Both are monomials, so any quotient would be a monomial, and the
    /// group oracle rules that out.
    MonomialOracle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Divisibility<F: Field> {
    /// `f · h = g`, verified by multiplication.
    Yes(AlgebraElement<F>),
    No(NoReason),
    Unknown,
}

/// Searches for `h` with `f · h = g`.
///
/// Both the top and the bottom `a`-degree are additive on products (the group
/// algebra of `F ⋊ ℤ` is a skew Laurent ring in `a` over a domain), which
/// rules out many `g` outright and confines the support of `h` to an
/// `a`-degree window. When `f` and `g` are monomials the quotient must be a
/// monomial and is found exactly by the group oracle. Otherwise the
/// coefficients of `h` on the elements of length `≤ search_cap` inside that
/// window are solved for by Gaussian elimination; failure there is reported
/// as `Unknown`, not `No`.
pub fn divides_right<F: Field>(
    f: &AlgebraElement<F>,
    g: &AlgebraElement<F>,
    search_cap: u64,
) -> Result<Divisibility<F>, AlgebraError> {
    f.check_ctx(g)?;
    if f.is_zero() {
        return Err(AlgebraError::ZeroDivisor);
    }
    if g.is_zero() {
        return Ok(Divisibility::Yes(AlgebraElement::zero(&f.ctx)));
    }
    let (fhi, flo) = (f.deg_a().unwrap(), f.min_deg_a().unwrap());
    let (ghi, glo) = (g.deg_a().unwrap(), g.min_deg_a().unwrap());
    if ghi < fhi || glo < flo || ghi - fhi < glo - flo {
        return Ok(Divisibility::No(NoReason::DegreeObstruction));
    }
    let (hlo, hhi) = (glo - flo, ghi - fhi);

    if f.is_monomial() && g.is_monomial() {
        let (u, c) = f.terms.iter().next().unwrap();
        let (x, d) = g.terms.iter().next().unwrap();
        return Ok(match group::left_quotient_nf(u, x) {
            SMembership::In(v) => {
                let h = AlgebraElement::monomial(d.div(c)?, v);
                debug_assert_eq!(&f.mul(&h)?, g);
                Divisibility::Yes(h)
            }
            SMembership::NotIn => Divisibility::No(NoReason::MonomialOracle),
        });
    }

    let candidates: Vec<NormalFormS> = monoid::enumerate_elements(search_cap)
        .into_iter()
        .filter(|s| (hlo..=hhi).contains(&s.a_count()))
        .collect();
    match solve_candidates(f, g, &candidates) {
        Some(h) if f.mul(&h)? == *g => Ok(Divisibility::Yes(h)),
        _ => Ok(Divisibility::Unknown),
    }
}

/// Least-support solution of `f · Σ hⱼ sⱼ = g` over the given candidates.
fn solve_candidates<F: Field>(
    f: &AlgebraElement<F>,
    g: &AlgebraElement<F>,
    candidates: &[NormalFormS],
) -> Option<AlgebraElement<F>> {
    let ctx = &f.ctx;
    let mut row_of: HashMap<NormalFormS, usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, F)> = Vec::new();
    for (j, s) in candidates.iter().enumerate() {
        for (u, c) in &f.terms {
            let t = u.mul(s);
            let next = row_of.len();
            let r = *row_of.entry(t).or_insert(next);
            entries.push((r, j, c.clone()));
        }
    }
    if g.terms.keys().any(|t| !row_of.contains_key(t)) {
        return None;
    }
    let (rows, cols) = (row_of.len(), candidates.len());
    let mut m = vec![vec![F::zero(ctx); cols + 1]; rows];
    for (r, j, c) in entries {
        m[r][j] = m[r][j].add(&c);
    }
    for (t, r) in &row_of {
        m[*r][cols] = g.coefficient(t);
    }

    // reduced row echelon form, pivots taken in column order
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].inv().expect("nonzero pivot");
        for entry in &mut m[r][col..] {
            *entry = entry.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                let pivot_row = m[r].clone();
                for (entry, p) in m[i][col..].iter_mut().zip(&pivot_row[col..]) {
                    *entry = entry.sub(&factor.mul(p));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    Some(AlgebraElement::from_terms(
        ctx,
        pivots
            .iter()
            .enumerate()
            .map(|(i, &col)| (candidates[col].clone(), m[i][cols].clone())),
    ))
}

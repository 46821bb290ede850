use std::collections::BTreeMap;
use std::fmt;

use super::generator::{Generator, Word};
use crate::coeff::{QExpr, RatFun};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Coefficient rings usable in noncommutative polynomials.
pub trait Coeff: Ring + From<QExpr> {}
impl Coeff for QExpr {}
impl Coeff for RatFun {}

/// A noncommutative polynomial: a finite sum of coefficient-weighted words.
///
/// The optional rank records the matrix size `n` the generators belong to;
/// scalars carry no rank and combine with anything.
#[derive(Clone, Debug)]
pub struct NCElem<C = QExpr> {
    terms: BTreeMap<Word, C>,
    rank: Option<u8>,
}

fn merge_rank(a: Option<u8>, b: Option<u8>) -> Result<Option<u8>> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(Error::RankMismatch(x, y)),
        (Some(x), _) | (_, Some(x)) => Ok(Some(x)),
        _ => Ok(None),
    }
}

impl<C: Coeff> NCElem<C> {
    pub fn zero() -> Self {
        NCElem {
            terms: BTreeMap::new(),
            rank: None,
        }
    }

    pub fn one() -> Self {
        Self::scalar(C::one())
    }

    pub fn scalar(c: C) -> Self {
        Self::from_word(Word::empty(), c)
    }

    pub fn from_word(w: Word, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NCElem { terms, rank: None }
    }

    pub fn gen(g: Generator) -> Self {
        Self::from_word(Word::single(g), C::one())
    }

    /// Product of generators in the given order.
    pub fn word(gs: &[Generator]) -> Self {
        Self::from_word(Word::from_slice(gs), C::one())
    }

    pub fn with_rank(mut self, n: u8) -> Self {
        self.rank = Some(n);
        self
    }

    pub fn rank(&self) -> Option<u8> {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// The scalar value, if only the empty word occurs.
    pub fn as_scalar(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                v.add_assign_ref(c);
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.rank = self.rank.or(rhs.rank);
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Left multiplication by a scalar.
    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        self.map_coeffs(|c| s.mul_ref(c))
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> NCElem<D> {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            let d = f(c);
            if !d.is_zero() {
                terms.insert(w.clone(), d);
            }
        }
        NCElem {
            terms,
            rank: self.rank,
        }
    }

    /// Word concatenation, bilinear over coefficients. No rewriting.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let rank = merge_rank(self.rank, rhs.rank)?;
        let mut out = Self::zero();
        out.rank = rank;
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                out.add_term(wa.concat(wb), &ca.mul_ref(cb));
            }
        }
        Ok(out)
    }

    /// Like [`NCElem::try_mul`]; panics on a rank mismatch.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs)
            .expect("rank mismatch in noncommutative product")
    }

    /// `[a, b]_x = a b - x b a`.
    pub fn q_commutator(a: &Self, b: &Self, x: &QExpr) -> Self {
        a.mul(b).sub(&b.mul(a).scale(&C::from(x.clone())))
    }

    /// Ordinary commutator `a b - b a`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.mul(b).sub(&b.mul(a))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Applies the algebra homomorphism sending each generator `g` to
    /// `image(g)`, or leaving it alone when `image` returns `None`.
    pub fn substitute<F: Fn(Generator) -> Option<Self>>(&self, image: F) -> Self {
        let mut out = Self::zero();
        out.rank = self.rank;
        for (w, c) in &self.terms {
            let mut acc = Self::scalar(c.clone());
            for g in w.gens() {
                let img = image(*g).unwrap_or_else(|| Self::gen(*g));
                acc = acc.mul(&img);
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Every generator is valid for matrix size `n`.
    pub fn valid_for(&self, n: usize) -> bool {
        self.terms
            .keys()
            .all(|w| w.gens().iter().all(|g| g.valid_for(n)))
    }
}

impl<C: Coeff> PartialEq for NCElem<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<C: Coeff> fmt::Display for NCElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let one = C::one();
        let minus_one = one.neg_ref();
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(w, c)| {
                if w.is_empty() {
                    format!("({c})")
                } else if *c == one {
                    w.to_string()
                } else if *c == minus_one {
                    format!("(-1) {w}")
                } else {
                    format!("({c}) {w}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<C: Coeff> Ring for NCElem<C> {
    fn zero() -> Self {
        NCElem::zero()
    }
    fn one() -> Self {
        NCElem::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        if self.rank.is_none() {
            self.rank = rhs.rank;
        }
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c);
        }
    }
}

impl From<QExpr> for NCElem<QExpr> {
    fn from(c: QExpr) -> Self {
        NCElem::scalar(c)
    }
}

impl NCElem<QExpr> {
    pub fn to_ratfun(&self) -> NCElem<RatFun> {
        self.map_coeffs(|c| RatFun::from(c.clone()))
    }
}

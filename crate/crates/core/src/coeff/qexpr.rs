use num_rational::Rational64;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::ring::Ring;

/// Number of commuting auxiliary symbols carried next to `q`.
pub const AUX: usize = 5;

/// Auxiliary commuting units. `W` is `q^p` of the rank-two dynamical
/// sector, `U` is `q^{alpha(p)}`, and `T1..T3` are the independent
/// `q^{p_i}` used by the general diagonal monodromy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Aux {
    W = 0,
    U = 1,
    T1 = 2,
    T2 = 3,
    T3 = 4,
}

impl Aux {
    pub const ALL: [Aux; AUX] = [Aux::W, Aux::U, Aux::T1, Aux::T2, Aux::T3];

    pub fn name(self) -> &'static str {
        match self {
            Aux::W => "w",
            Aux::U => "u",
            Aux::T1 => "t1",
            Aux::T2 => "t2",
            Aux::T3 => "t3",
        }
    }

    /// `t_i` for `1 <= i <= 3`.
    pub fn t(i: usize) -> Aux {
        match i {
            1 => Aux::T1,
            2 => Aux::T2,
            3 => Aux::T3,
            _ => panic!("no auxiliary symbol t{i}"),
        }
    }
}

/// A monomial `q^r * w^a * u^b * t1^c * ...`.
///
/// Ordering is lexicographic on `(r, a, b, ...)`, which is a group order
/// compatible with multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub q: Rational64,
    pub aux: [i32; AUX],
}

impl Mono {
    pub fn one() -> Self {
        Mono {
            q: Rational64::zero(),
            aux: [0; AUX],
        }
    }

    pub fn q(r: Rational64) -> Self {
        Mono {
            q: r,
            aux: [0; AUX],
        }
    }

    pub fn is_one(&self) -> bool {
        self.q.is_zero() && self.aux.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, rhs: &Mono) -> Mono {
        let mut aux = self.aux;
        for (a, b) in aux.iter_mut().zip(rhs.aux.iter()) {
            *a += b;
        }
        Mono {
            q: self.q + rhs.q,
            aux,
        }
    }

    pub fn inv(&self) -> Mono {
        let mut aux = self.aux;
        for a in aux.iter_mut() {
            *a = -*a;
        }
        Mono { q: -self.q, aux }
    }

    pub fn div(&self, rhs: &Mono) -> Mono {
        self.mul(&rhs.inv())
    }

    pub fn pow(&self, k: i32) -> Mono {
        let mut aux = self.aux;
        for a in aux.iter_mut() {
            *a *= k;
        }
        Mono {
            q: self.q * Rational64::from_integer(k as i64),
            aux,
        }
    }

    pub fn aux_exp(&self, a: Aux) -> i32 {
        self.aux[a as usize]
    }

    /// Coordinate-wise maximum of exponents.
    pub fn join(&self, rhs: &Mono) -> Mono {
        let mut aux = self.aux;
        for (a, b) in aux.iter_mut().zip(rhs.aux.iter()) {
            *a = (*a).max(*b);
        }
        Mono {
            q: self.q.max(rhs.q),
            aux,
        }
    }

    /// Coordinate-wise minimum of exponents.
    pub fn meet(&self, rhs: &Mono) -> Mono {
        let mut aux = self.aux;
        for (a, b) in aux.iter_mut().zip(rhs.aux.iter()) {
            *a = (*a).min(*b);
        }
        Mono {
            q: self.q.min(rhs.q),
            aux,
        }
    }
}

fn fmt_rational(r: &Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut push = |name: &str, e: String| {
            if e == "1" {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{e}"));
            }
        };
        if !self.q.is_zero() {
            push("q", fmt_rational(&self.q));
        }
        for a in Aux::ALL {
            let e = self.aux[a as usize];
            if e != 0 {
                push(a.name(), e.to_string());
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Exact finite sum of monomials `q^r w^a u^b ...` with rational
/// coefficients.
///
/// Terms are kept sorted ascending by [`Mono`] with no zero coefficients,
/// so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QExpr {
    terms: Vec<(Mono, Rational64)>,
}

impl QExpr {
    pub fn zero() -> Self {
        QExpr { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational64::one())
    }

    pub fn constant(c: Rational64) -> Self {
        Self::term(Mono::one(), c)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational64::from_integer(c))
    }

    pub fn term(m: Mono, c: Rational64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            QExpr {
                terms: vec![(m, c)],
            }
        }
    }

    pub fn mono(m: Mono) -> Self {
        Self::term(m, Rational64::one())
    }

    /// `q^(num/den)`.
    pub fn q_pow(num: i64, den: i64) -> Self {
        Self::mono(Mono::q(Rational64::new(num, den)))
    }

    pub fn q_rat(r: Rational64) -> Self {
        Self::mono(Mono::q(r))
    }

    pub fn q() -> Self {
        Self::q_pow(1, 1)
    }

    /// `lambda = q - q^-1`.
    pub fn lambda() -> Self {
        Self::q().sub(&Self::q_pow(-1, 1))
    }

    pub fn aux(a: Aux, e: i32) -> Self {
        let mut m = Mono::one();
        m.aux[a as usize] = e;
        Self::mono(m)
    }

    /// Builds an expression from arbitrary (possibly repeated or zero)
    /// terms, bringing it to canonical form.
    pub fn from_terms<I: IntoIterator<Item = (Mono, Rational64)>>(it: I) -> Self {
        let mut terms: Vec<(Mono, Rational64)> = it.into_iter().collect();
        terms.sort_by_key(|a| a.0);
        let mut out: Vec<(Mono, Rational64)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        QExpr { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, Rational64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The single monomial term, if this is one.
    pub fn as_term(&self) -> Option<(Mono, Rational64)> {
        match self.terms.as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    /// Rational constant, if the expression has no symbol dependence.
    pub fn as_constant(&self) -> Option<Rational64> {
        match self.terms.as_slice() {
            [] => Some(Rational64::zero()),
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    /// Greatest term in the monomial order.
    pub fn leading(&self) -> Option<(Mono, Rational64)> {
        self.terms.last().copied()
    }

    /// Least term in the monomial order.
    pub fn trailing(&self) -> Option<(Mono, Rational64)> {
        self.terms.first().copied()
    }

    pub fn add(&self, rhs: &QExpr) -> QExpr {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1 + b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        QExpr { terms: out }
    }

    pub fn neg(&self) -> QExpr {
        QExpr {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &QExpr) -> QExpr {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &QExpr) -> QExpr {
        if self.is_zero() || rhs.is_zero() {
            return QExpr::zero();
        }
        if let Some((m, c)) = rhs.as_term() {
            return self.mul_term(&m, c);
        }
        if let Some((m, c)) = self.as_term() {
            return rhs.mul_term(&m, c);
        }
        QExpr::from_terms(
            self.terms
                .iter()
                .flat_map(|(ma, ca)| rhs.terms.iter().map(move |(mb, cb)| (ma.mul(mb), ca * cb))),
        )
    }

    /// Multiplication by a single term keeps the order, so no re-sort.
    pub fn mul_term(&self, m: &Mono, c: Rational64) -> QExpr {
        if c.is_zero() {
            return QExpr::zero();
        }
        QExpr {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: Rational64) -> QExpr {
        self.mul_term(&Mono::one(), c)
    }

    pub fn pow(&self, k: u32) -> QExpr {
        let mut acc = QExpr::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse of a single-term expression (the units of the Laurent ring).
    pub fn inv_term(&self) -> Option<QExpr> {
        let (m, c) = self.as_term()?;
        Some(QExpr::term(m.inv(), c.recip()))
    }

    /// Integer power of a single-term expression.
    pub fn pow_term(&self, k: i32) -> Option<QExpr> {
        let (m, c) = self.as_term()?;
        let c = if k >= 0 { c.pow(k) } else { c.recip().pow(-k) };
        Some(QExpr::term(m.pow(k), c))
    }

    /// Exact quotient `self / d` when `d` divides `self` in the Laurent
    /// ring, otherwise `None`.
    ///
    /// Long division from the top term. If `self = Q d` then every term of
    /// `Q` lies above `trailing(self) / trailing(d)`, which bounds the loop.
    pub fn div_exact(&self, d: &QExpr) -> Option<QExpr> {
        let (dl_m, dl_c) = d.leading()?;
        if self.is_zero() {
            return Some(QExpr::zero());
        }
        if let Some((m, c)) = d.as_term() {
            return Some(self.mul_term(&m.inv(), c.recip()));
        }
        let bound = self.trailing()?.0.div(&d.trailing()?.0);
        let top = self.leading()?.0.div(&dl_m);
        if top < bound {
            return None;
        }
        // Each exponent of a quotient term is boxed by the exponent
        // ranges of `self` and `d`.
        let (slo, shi) = self.exponent_box()?;
        let (dlo, dhi) = d.exponent_box()?;
        let (lo, hi) = (slo.div(&dlo), shi.div(&dhi));
        let in_box = |m: &Mono| {
            m.q >= lo.q
                && m.q <= hi.q
                && (0..AUX).all(|i| m.aux[i] >= lo.aux[i] && m.aux[i] <= hi.aux[i])
        };
        if !(lo.q <= hi.q && (0..AUX).all(|i| lo.aux[i] <= hi.aux[i])) {
            return None;
        }
        // Failed divisions can grow coefficients quickly; any overflow
        // is reported as "not divisible".
        let mut rem: std::collections::BTreeMap<Mono, Rational64> =
            self.terms.iter().copied().collect();
        let mut quot = Vec::new();
        for _ in 0..100_000 {
            let Some((&rm, &rc)) = rem.iter().next_back() else {
                return Some(QExpr::from_terms(quot));
            };
            let qm = rm.div(&dl_m);
            if qm < bound || !in_box(&qm) {
                return None;
            }
            let qc = rc.checked_div(&dl_c)?;
            quot.push((qm, qc));
            for (m, c) in &d.terms {
                let key = m.mul(&qm);
                let delta = c.checked_mul(&qc)?;
                let slot = rem.entry(key).or_insert_with(Rational64::zero);
                *slot = slot.checked_sub(&delta)?;
                if slot.is_zero() {
                    rem.remove(&key);
                }
            }
        }
        None
    }

    /// Coordinate-wise minimum and maximum exponents.
    pub fn exponent_box(&self) -> Option<(Mono, Mono)> {
        let mut it = self.terms.iter();
        let first = it.next()?.0;
        Some(it.fold((first, first), |(lo, hi), (m, _)| (lo.meet(m), hi.join(m))))
    }

    /// Greatest monomial dividing every term (coordinate-wise minimum).
    pub fn monomial_content(&self) -> Option<Mono> {
        let mut it = self.terms.iter();
        let first = it.next()?.0;
        Some(it.fold(first, |acc, (m, _)| acc.meet(m)))
    }

    /// Applies `f` to every monomial, e.g. to substitute auxiliary symbols.
    /// `f` returns a replacement expression for each monomial.
    pub fn map_monomials<F: Fn(&Mono) -> QExpr>(&self, f: F) -> QExpr {
        let mut acc = QExpr::zero();
        for (m, c) in &self.terms {
            acc = acc.add(&f(m).scale(*c));
        }
        acc
    }

    /// Substitutes `q -> 1` and every auxiliary symbol `-> 1`.
    pub fn at_one(&self) -> Rational64 {
        self.terms.iter().map(|(_, c)| *c).sum()
    }

    /// Largest absolute rational coefficient, used by sanity bounds.
    pub fn max_coeff(&self) -> Rational64 {
        self.terms
            .iter()
            .map(|(_, c)| c.abs())
            .max()
            .unwrap_or_else(Rational64::zero)
    }
}

/// `[m] = (q^m - q^-m) / (q - q^-1)`, expanded as `q^{m-1} + q^{m-3} + ... + q^{1-m}`.
pub fn qnum(m: i64) -> QExpr {
    let k = m.abs();
    let e = QExpr::from_terms((0..k).map(|j| {
        (
            Mono::q(Rational64::from_integer(k - 1 - 2 * j)),
            Rational64::one(),
        )
    }));
    if m < 0 {
        e.neg()
    } else {
        e
    }
}

/// `[m]! = [m][m-1]...[1]`, with `[0]! = 1`.
pub fn qfact(m: u32) -> QExpr {
    (1..=m as i64).fold(QExpr::one(), |acc, j| acc.mul(&qnum(j)))
}

impl fmt::Display for QExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl $tr<&QExpr> for &QExpr {
            type Output = QExpr;
            fn $m(self, rhs: &QExpr) -> QExpr {
                QExpr::$inner(self, rhs)
            }
        }
        impl $tr<QExpr> for QExpr {
            type Output = QExpr;
            fn $m(self, rhs: QExpr) -> QExpr {
                QExpr::$inner(&self, &rhs)
            }
        }
        impl $tr<&QExpr> for QExpr {
            type Output = QExpr;
            fn $m(self, rhs: &QExpr) -> QExpr {
                QExpr::$inner(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl Neg for QExpr {
    type Output = QExpr;
    fn neg(self) -> QExpr {
        QExpr::neg(&self)
    }
}

impl Neg for &QExpr {
    type Output = QExpr;
    fn neg(self) -> QExpr {
        QExpr::neg(self)
    }
}

impl Ring for QExpr {
    fn zero() -> Self {
        QExpr::zero()
    }
    fn one() -> Self {
        QExpr::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        QExpr::add(self, rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        QExpr::mul(self, rhs)
    }
    fn neg_ref(&self) -> Self {
        QExpr::neg(self)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        QExpr::sub(self, rhs)
    }
}

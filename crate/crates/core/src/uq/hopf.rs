use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::QExpr;
use crate::ncalg::{Generator, NCElem, Word};

use super::matrices::{big_k, big_k_inv, k_elem};

type P = NCElem<QExpr>;

/// Element of a tensor power of the free algebra: a sum of pure tensors
/// of words.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorElem {
    legs: usize,
    terms: BTreeMap<Vec<Word>, QExpr>,
}

impl TensorElem {
    pub fn zero(legs: usize) -> Self {
        TensorElem {
            legs,
            terms: BTreeMap::new(),
        }
    }

    /// `a_1 ⊗ ... ⊗ a_L`.
    pub fn pure(factors: &[P]) -> Self {
        let mut out = TensorElem::zero(factors.len());
        out.terms
            .insert(vec![Word::empty(); factors.len()], QExpr::one());
        for (leg, f) in factors.iter().enumerate() {
            out = out.map_leg(leg, |w| P::from_word(w.clone(), QExpr::one()).mul(f));
        }
        out
    }

    /// Embeds an algebra element as a one-leg tensor.
    pub fn from_elem(x: &P) -> Self {
        let mut out = TensorElem::zero(1);
        for (w, c) in x.terms() {
            out.add_term(vec![w.clone()], c);
        }
        out
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &QExpr)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: Vec<Word>, c: &QExpr) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &TensorElem) -> TensorElem {
        assert_eq!(self.legs, rhs.legs);
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, rhs: &TensorElem) -> TensorElem {
        self.add(&rhs.scale(&QExpr::int(-1)))
    }

    pub fn scale(&self, s: &QExpr) -> TensorElem {
        let mut out = TensorElem::zero(self.legs);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &c.mul(s));
        }
        out
    }

    /// Leg-wise product.
    pub fn mul(&self, rhs: &TensorElem) -> TensorElem {
        assert_eq!(self.legs, rhs.legs);
        let mut out = TensorElem::zero(self.legs);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let key = ka.iter().zip(kb).map(|(a, b)| a.concat(b)).collect();
                out.add_term(key, &ca.mul(cb));
            }
        }
        out
    }

    /// Replaces leg `leg` by the image of its word under `f`, keeping the
    /// number of legs.
    pub fn map_leg<F: Fn(&Word) -> P>(&self, leg: usize, f: F) -> TensorElem {
        let mut out = TensorElem::zero(self.legs);
        for (k, c) in &self.terms {
            for (w, d) in f(&k[leg]).terms() {
                let mut key = k.clone();
                key[leg] = w.clone();
                out.add_term(key, &c.mul(d));
            }
        }
        out
    }

    /// Replaces leg `leg` by the image of its word under `f`, which maps
    /// into a `width`-leg tensor; the result has `legs + width - 1` legs.
    pub fn expand_leg<F: Fn(&Word) -> TensorElem>(
        &self,
        leg: usize,
        width: usize,
        f: F,
    ) -> TensorElem {
        let mut out = TensorElem::zero(self.legs + width - 1);
        for (k, c) in &self.terms {
            let image = f(&k[leg]);
            assert_eq!(image.legs, width);
            for (ws, d) in image.terms() {
                let mut key = k[..leg].to_vec();
                key.extend(ws.iter().cloned());
                key.extend(k[leg + 1..].iter().cloned());
                out.add_term(key, &c.mul(d));
            }
        }
        out
    }

    /// Applies a scalar-valued map to leg `leg`, removing it.
    pub fn contract_leg<F: Fn(&Word) -> QExpr>(&self, leg: usize, f: F) -> TensorElem {
        let mut out = TensorElem::zero(self.legs - 1);
        for (k, c) in &self.terms {
            let s = f(&k[leg]);
            let mut key = k.clone();
            key.remove(leg);
            out.add_term(key, &c.mul(&s));
        }
        out
    }

    /// Multiplies all legs together into one algebra element.
    pub fn multiply_out(&self) -> P {
        let mut acc = P::zero();
        for (k, c) in &self.terms {
            let w = k.iter().fold(Word::empty(), |a, b| a.concat(b));
            acc.add_term(w, c);
        }
        acc
    }

    /// The one-leg tensor as an algebra element.
    pub fn to_elem(&self) -> P {
        assert_eq!(self.legs, 1);
        self.multiply_out()
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(k, c)| {
                let legs: Vec<String> = k.iter().map(|w| w.to_string()).collect();
                format!("({c}) {}", legs.join(" ⊗ "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Δ` on a generator; `n` fixes the range of `k_{i±1}` inside `K_i`.
pub fn coproduct_gen(g: Generator, n: usize) -> TensorElem {
    use Generator::*;
    let one = P::one();
    match g {
        E(i) => {
            let e = P::gen(g);
            TensorElem::pure(&[e.clone(), big_k(i as usize, n)]).add(&TensorElem::pure(&[one, e]))
        }
        F(i) => {
            let f = P::gen(g);
            TensorElem::pure(&[f.clone(), one])
                .add(&TensorElem::pure(&[big_k_inv(i as usize, n), f]))
        }
        K(_) | KInv(_) => TensorElem::pure(&[P::gen(g), P::gen(g)]),
        M(..) => panic!("coproduct is defined on U_q generators only"),
    }
}

fn word_coproduct(w: &Word, n: usize) -> TensorElem {
    let mut acc = TensorElem::pure(&[P::one(), P::one()]);
    for g in w.gens() {
        acc = acc.mul(&coproduct_gen(*g, n));
    }
    acc
}

/// `Δ`, extended as an algebra map, for matrix size `n`.
pub fn coproduct(x: &P, n: usize) -> TensorElem {
    let mut acc = TensorElem::zero(2);
    for (w, c) in x.terms() {
        acc = acc.add(&word_coproduct(w, n).scale(c));
    }
    acc
}

/// `Δ` applied to leg `leg` of a tensor, with rank `n`.
pub fn coproduct_on_leg(t: &TensorElem, leg: usize, n: usize) -> TensorElem {
    t.expand_leg(leg, 2, |w| word_coproduct(w, n))
}

pub fn counit_word(w: &Word) -> QExpr {
    if w.gens()
        .iter()
        .any(|g| matches!(g, Generator::E(_) | Generator::F(_)))
    {
        QExpr::zero()
    } else {
        QExpr::one()
    }
}

/// `ε`, extended as an algebra map.
pub fn counit(x: &P) -> QExpr {
    x.terms().fold(QExpr::zero(), |acc, (w, c)| {
        acc.add(&c.mul(&counit_word(w)))
    })
}

/// `S` on a generator.
pub fn antipode_gen(g: Generator, n: usize) -> P {
    use Generator::*;
    match g {
        E(i) => P::gen(g).mul(&big_k_inv(i as usize, n)).neg(),
        F(i) => big_k(i as usize, n).mul(&P::gen(g)).neg(),
        K(i) => k_elem(i as usize, n, true),
        KInv(i) => k_elem(i as usize, n, false),
        M(..) => panic!("antipode is defined on U_q generators only"),
    }
}

/// `S`, extended as an anti-algebra map.
pub fn antipode(x: &P, n: usize) -> P {
    let mut acc = P::zero();
    for (w, c) in x.terms() {
        let img = w
            .gens()
            .iter()
            .rev()
            .fold(P::one(), |a, g| a.mul(&antipode_gen(*g, n)));
        acc = acc.add(&img.scale(c));
    }
    acc
}

use std::collections::BTreeMap;

use num_rational::Rational64;

use crate::coeff::{qfact, QExpr, RatFun};
use crate::error::{Error, Result};
use crate::ncalg::{Generator, NCElem, Word};
use crate::ring::Ring;
use crate::sparse::SparseMat;
use crate::uq::AlgMatrix;

use super::eps::q_eps;
use super::tensor::{embed, rhat};

type P = NCElem<QExpr>;

/// `ε · (Ř_12 ... Ř_{n-1,n} M_n)^n · ε` over the free algebra on the
/// symbols `m^a_b`, before division by `[n]!`.
pub fn qdet_free_numerator(n: usize) -> Result<P> {
    if !(2..=3).contains(&n) {
        return Err(Error::UnsupportedRank(
            n,
            "free quantum determinant is built for n = 2, 3",
        ));
    }
    let lift = |m: &SparseMat<QExpr>| m.map(|x| P::scalar(x.clone()));
    let rh = rhat(n);
    let mut x = SparseMat::<P>::identity(n.pow(n as u32));
    for i in 1..n {
        x = x.mul(&lift(embed(&rh, i, n)?.mat()));
    }
    let mut m = SparseMat::<P>::zeros(n, n);
    for a in 1..=n {
        for b in 1..=n {
            m.set(a - 1, b - 1, P::gen(Generator::M(a as u8, b as u8)));
        }
    }
    let m_last = SparseMat::<P>::identity(n.pow(n as u32 - 1)).kron(&m);
    x = x.mul(&m_last);

    let eps: Vec<P> = q_eps(n).to_vector().into_iter().map(P::scalar).collect();
    let mut v = eps.clone();
    for _ in 0..n {
        v = x.mul_vec(&v);
    }
    let mut acc = P::zero();
    for (e, w) in eps.iter().zip(&v) {
        if !e.is_zero() && !w.is_zero() {
            acc.add_assign_ref(&e.mul(w));
        }
    }
    Ok(acc)
}

/// `det_q(M)` over the free algebra, coefficients divided by `[n]!`.
pub fn qdet_free(n: usize) -> Result<NCElem<RatFun>> {
    let num = qdet_free_numerator(n)?;
    let d = RatFun::from_qexpr(qfact(n as u32)).inv()?;
    Ok(num.to_ratfun().scale(&d))
}

/// The expected two-by-two expansion
/// `(q^2/[2]) (m11 m22 + m22 m11 + q λ m22 m22 - q^-2 m12 m21 - m21 m12)`.
pub fn qdet_free_n2_expected() -> NCElem<RatFun> {
    use Generator::M;
    let w = |a: Generator, b: Generator| P::word(&[a, b]);
    let (m11, m12, m21, m22) = (M(1, 1), M(1, 2), M(2, 1), M(2, 2));
    let inner = w(m11, m22)
        .add(&w(m22, m11))
        .add(&w(m22, m22).scale(&QExpr::q().mul(&QExpr::lambda())))
        .sub(&w(m12, m21).scale(&QExpr::q_pow(-2, 1)))
        .sub(&w(m21, m12));
    let pre = RatFun::new(QExpr::q_pow(2, 1), qfact(2)).expect("nonzero [2]");
    inner.to_ratfun().scale(&pre)
}

/// Replaces each `m^a_b` by `M^a_b`.
pub fn substitute_matrix(x: &P, m: &AlgMatrix) -> P {
    x.substitute(|g| match g {
        Generator::M(a, b) => Some(m.at(a as usize, b as usize).clone()),
        _ => None,
    })
}

/// Image of a polynomial in the `m^a_b` with `m^a_b -> entries[a-1][b-1]`.
pub fn eval_free<S: Ring, F: Fn(&QExpr) -> S>(
    x: &P,
    entries: &[Vec<SparseMat<S>>],
    lift: F,
) -> Result<SparseMat<S>> {
    let dim = entries[0][0].rows();
    let mut acc = SparseMat::zeros(dim, dim);
    for (w, c) in x.terms() {
        let mut prod = SparseMat::identity(dim);
        for g in w.gens() {
            match *g {
                Generator::M(a, b) => prod = prod.mul(&entries[a as usize - 1][b as usize - 1]),
                other => return Err(Error::UnknownGenerator(other.to_string())),
            }
        }
        acc = acc.add(&prod.scale(&lift(c)));
    }
    Ok(acc)
}

/// Sum of `ε_α ε_β M^{α_n}_{β_n} ... M^{α_1}_{β_1}` over index tuples,
/// before division by `[n]!`.
pub fn reversed_contraction(m: &AlgMatrix) -> P {
    let n = m.n();
    let eps = q_eps(n);
    let comps: Vec<(Vec<usize>, QExpr)> = eps
        .components()
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    let mut acc = P::zero();
    for (alpha, ea) in &comps {
        for (beta, eb) in &comps {
            let mut prod = P::scalar(ea.mul(eb));
            for i in (0..n).rev() {
                let e = m.at(alpha[i], beta[i]);
                if e.is_zero() {
                    prod = P::zero();
                    break;
                }
                prod = prod.mul(e);
            }
            acc = acc.add(&prod);
        }
    }
    acc
}

/// The `q = 1`, commuting-entry image: coefficients at `q = 1`, words
/// sorted.
pub fn classical_limit(x: &NCElem<RatFun>) -> Result<BTreeMap<Word, Rational64>> {
    let mut out: BTreeMap<Word, Rational64> = BTreeMap::new();
    for (w, c) in x.terms() {
        let den = c.den().at_one();
        if den == Rational64::from_integer(0) {
            return Err(Error::DivisionByZero);
        }
        let v = c.num().at_one() / den;
        let mut gs = w.gens().to_vec();
        gs.sort();
        *out.entry(Word::from_slice(&gs)).or_default() += v;
    }
    out.retain(|_, v| *v != Rational64::from_integer(0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::M;

    #[test]
    fn rank_two_matches_expansion() {
        assert_eq!(qdet_free(2).unwrap(), qdet_free_n2_expected());
    }

    #[test]
    fn classical_determinant() {
        let c = classical_limit(&qdet_free(2).unwrap()).unwrap();
        let mut expect = BTreeMap::new();
        expect.insert(
            Word::from_slice(&[M(1, 1), M(2, 2)]),
            Rational64::from_integer(1),
        );
        expect.insert(
            Word::from_slice(&[M(1, 2), M(2, 1)]),
            Rational64::from_integer(-1),
        );
        assert_eq!(c, expect);
    }

    #[test]
    fn classical_determinant_rank_three() {
        let c = classical_limit(&qdet_free(3).unwrap()).unwrap();
        assert_eq!(c.len(), 6);
        for v in c.values() {
            assert!(*v == Rational64::from_integer(1) || *v == Rational64::from_integer(-1));
        }
    }

    #[test]
    fn scalar_matrix() {
        // m^a_b = c δ^a_b with c = q^-3/2 gives 1 at n = 2
        for n in 2..=3 {
            let num = qdet_free_numerator(n).unwrap();
            let c = P::gen(M(9, 9));
            let sub = num.substitute(|g| match g {
                M(a, b) if a == b => Some(c.clone()),
                M(..) => Some(P::zero()),
                _ => None,
            });
            let coeff = sub.coeff(&Word::from_slice(&vec![M(9, 9); n]));
            assert_eq!(sub.num_terms(), 1);
            // c^n q^{n^2 - 1} [n]!, so c = q^{1/n - n} gives 1
            let nn = n as i64;
            assert_eq!(
                coeff,
                qfact(n as u32).mul(&QExpr::q_pow(nn * nn - 1, 1)),
                "n = {n}"
            );
        }
    }

    #[test]
    fn unsupported() {
        assert!(qdet_free(4).is_err());
    }
}

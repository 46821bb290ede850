use num_rational::Rational64;
use num_traits::{One, Zero};
use std::fmt;

use super::qexpr::{Mono, QExpr};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// A fraction of two [`QExpr`] values.
///
/// Canonical form: the denominator's greatest monomial is exactly `1`
/// (monomials are units, so this fixes the unit ambiguity), and whenever
/// one side divides the other exactly the fraction is collapsed. No full
/// polynomial gcd is attempted, so two equal values may still differ
/// structurally; `PartialEq` therefore compares by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatFun {
    num: QExpr,
    den: QExpr,
}

impl RatFun {
    pub fn new(num: QExpr, den: QExpr) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_qexpr(num: QExpr) -> Self {
        RatFun {
            num,
            den: QExpr::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_qexpr(QExpr::zero())
    }

    pub fn one() -> Self {
        Self::from_qexpr(QExpr::one())
    }

    pub fn num(&self) -> &QExpr {
        &self.num
    }

    pub fn den(&self) -> &QExpr {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value, if the denominator is trivial.
    pub fn as_qexpr(&self) -> Option<&QExpr> {
        self.den.is_one().then_some(&self.num)
    }

    fn reduce(num: QExpr, den: QExpr) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(q) = num.div_exact(&den) {
            return RatFun {
                num: q,
                den: QExpr::one(),
            };
        }
        let (num, den) = match den.div_exact(&num) {
            Some(q) => (QExpr::one(), q),
            None => (num, den),
        };
        let (m, c) = den.leading().expect("nonzero denominator");
        let (minv, cinv) = (m.inv(), c.recip());
        RatFun {
            num: num.mul_term(&minv, cinv),
            den: den.mul_term(&minv, cinv),
        }
    }

    pub fn add(&self, rhs: &RatFun) -> RatFun {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return Self::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        if let Some(k) = self.den.div_exact(&rhs.den) {
            return Self::reduce(self.num.add(&rhs.num.mul(&k)), self.den.clone());
        }
        if let Some(k) = rhs.den.div_exact(&self.den) {
            return Self::reduce(self.num.mul(&k).add(&rhs.num), rhs.den.clone());
        }
        Self::reduce(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &RatFun) -> RatFun {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // Cancel across before multiplying to keep sizes down.
        let (mut a, mut bd) = (self.num.clone(), rhs.den.clone());
        if let Some(k) = a.div_exact(&bd) {
            a = k;
            bd = QExpr::one();
        }
        let (mut b, mut ad) = (rhs.num.clone(), self.den.clone());
        if let Some(k) = b.div_exact(&ad) {
            b = k;
            ad = QExpr::one();
        }
        Self::reduce(a.mul(&b), ad.mul(&bd))
    }

    pub fn inv(&self) -> Result<RatFun> {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RatFun) -> Result<RatFun> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn scale(&self, c: Rational64) -> RatFun {
        Self::reduce(self.num.scale(c), self.den.clone())
    }

    /// Substitutes a monomial map into numerator and denominator.
    pub fn map_monomials<F: Fn(&Mono) -> QExpr>(&self, f: F) -> Result<RatFun> {
        RatFun::new(self.num.map_monomials(&f), self.den.map_monomials(&f))
    }
}

impl From<QExpr> for RatFun {
    fn from(e: QExpr) -> Self {
        RatFun::from_qexpr(e)
    }
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Ring for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn one() -> Self {
        RatFun::one()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        RatFun::add(self, rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        RatFun::mul(self, rhs)
    }
    fn neg_ref(&self) -> Self {
        RatFun::neg(self)
    }
}

impl RatFun {
    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_qexpr(QExpr::constant(Rational64::from_integer(c)))
    }

    pub fn constant(c: Rational64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else if c.is_one() {
            Self::one()
        } else {
            Self::from_qexpr(QExpr::constant(c))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::qexpr::{qnum, Aux};

    fn w(e: i32) -> QExpr {
        QExpr::aux(Aux::W, e)
    }

    /// `[p + j]` as a fraction in `w = q^p`.
    fn bracket(j: i64) -> RatFun {
        let num = QExpr::q_pow(j, 1) * w(1) - QExpr::q_pow(-j, 1) * w(-1);
        RatFun::new(num, QExpr::lambda()).unwrap()
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert!(matches!(
            RatFun::new(QExpr::one(), QExpr::zero()),
            Err(Error::DivisionByZero)
        ));
        assert!(matches!(RatFun::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn reciprocal_cancels() {
        let a = bracket(-1).div(&bracket(0)).unwrap();
        let b = bracket(0).div(&bracket(-1)).unwrap();
        assert!(a.mul(&b).is_one());
        assert_eq!(a.mul(&b), RatFun::one());
    }

    #[test]
    fn shifted_bracket_identity() {
        let lhs = bracket(-1).mul(&bracket(1)).add(&RatFun::one());
        let rhs = bracket(0).mul(&bracket(0));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn denominator_is_normalised() {
        let f = RatFun::new(QExpr::q(), qnum(2).scale(Rational64::from_integer(3))).unwrap();
        let (m, c) = f.den().leading().unwrap();
        assert!(m.is_one());
        assert!(c.is_one());
        // 3(q + q^-1) / q -> 1 + q^-2 after normalization
        assert_eq!(f.den(), &(QExpr::one() + QExpr::q_pow(-2, 1)));
    }

    #[test]
    fn exact_division_collapses() {
        let lam = QExpr::lambda();
        let f = RatFun::new(lam.clone() * qnum(3), lam).unwrap();
        assert_eq!(f.as_qexpr(), Some(&qnum(3)));
    }

    #[test]
    fn sum_over_common_denominator() {
        let inv_lam = RatFun::new(QExpr::one(), QExpr::lambda()).unwrap();
        let two = inv_lam.add(&inv_lam);
        assert_eq!(two, RatFun::new(QExpr::int(2), QExpr::lambda()).unwrap());
        assert_eq!(two.sub(&inv_lam).sub(&inv_lam), RatFun::zero());
    }
}

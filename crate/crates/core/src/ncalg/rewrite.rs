use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use super::elem::{Coeff, NCElem};
use super::generator::{Generator, Word};
use crate::coeff::{QExpr, RatFun};
use crate::error::{Error, Result};

/// Default budget of rule applications per [`normal_form`] call.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// `lhs[0] lhs[1] -> rhs`.
#[derive(Clone, Debug)]
pub struct Rule<C> {
    pub lhs: [Generator; 2],
    pub rhs: NCElem<C>,
}

/// A length-two rewriting system with its own generator order.
///
/// Every rule's right-hand side only contains words strictly below the
/// pattern in the graded-lexicographic order induced by `order`; this is
/// validated on construction and guarantees termination.
#[derive(Clone, Debug)]
pub struct RewriteSystem<C> {
    rules: Vec<Rule<C>>,
    lookup: HashMap<[Generator; 2], usize>,
    order: fn(&Generator) -> (u8, u8, u8),
    budget: usize,
}

fn default_order(g: &Generator) -> (u8, u8, u8) {
    match *g {
        Generator::F(i) => (0, i, 0),
        Generator::K(i) => (1, i, 0),
        Generator::KInv(i) => (2, i, 0),
        Generator::E(i) => (3, i, 0),
        Generator::M(a, b) => (4, a, b),
    }
}

/// Cartan generators grouped by index, `k_i` just before `k_i^-1`.
fn cartan_order(g: &Generator) -> (u8, u8, u8) {
    match *g {
        Generator::K(i) => (0, i, 0),
        Generator::KInv(i) => (0, i, 1),
        other => {
            let (a, b, c) = default_order(&other);
            (a + 1, b, c)
        }
    }
}

impl<C: Coeff> RewriteSystem<C> {
    pub fn new(rules: Vec<Rule<C>>, order: fn(&Generator) -> (u8, u8, u8)) -> Result<Self> {
        let mut lookup = HashMap::new();
        let cmp = |a: &Word, b: &Word| -> Ordering {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.gens().iter().map(order).cmp(b.gens().iter().map(order)))
        };
        for (i, r) in rules.iter().enumerate() {
            let pattern = Word::from_slice(&r.lhs);
            for (w, _) in r.rhs.terms() {
                if cmp(w, &pattern) != Ordering::Less {
                    return Err(Error::InvalidRule(format!(
                        "{pattern} -> ... contains non-decreasing word {w}"
                    )));
                }
            }
            if lookup.insert(r.lhs, i).is_some() {
                return Err(Error::InvalidRule(format!("duplicate pattern {pattern}")));
            }
        }
        Ok(RewriteSystem {
            rules,
            lookup,
            order,
            budget: DEFAULT_BUDGET,
        })
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn rules(&self) -> &[Rule<C>] {
        &self.rules
    }

    pub fn order_key(&self, g: &Generator) -> (u8, u8, u8) {
        (self.order)(g)
    }

    fn find(&self, w: &Word) -> Option<(usize, &Rule<C>)> {
        let gs = w.gens();
        (0..gs.len().saturating_sub(1)).find_map(|i| {
            self.lookup
                .get(&[gs[i], gs[i + 1]])
                .map(|&r| (i, &self.rules[r]))
        })
    }
}

/// Rewrites to the fixed point of leftmost rule application.
///
/// Terms are processed in rounds, with like words merged between rounds so
/// that cancellations happen as early as possible.
pub fn normal_form<C: Coeff>(a: &NCElem<C>, rs: &RewriteSystem<C>) -> Result<NCElem<C>> {
    let mut done = NCElem::<C>::zero();
    let mut pending: BTreeMap<Word, C> = a.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    let mut applied = 0usize;
    while !pending.is_empty() {
        let mut next: BTreeMap<Word, C> = BTreeMap::new();
        for (w, c) in pending {
            match rs.find(&w) {
                None => done.add_term(w, &c),
                Some((i, rule)) => {
                    applied += 1;
                    if applied > rs.budget {
                        return Err(Error::BudgetExhausted(rs.budget));
                    }
                    let gs = w.gens();
                    for (rw, rc) in rule.rhs.terms() {
                        let mut v = Word::from_slice(&gs[..i]);
                        v.0.extend_from_slice(rw.gens());
                        v.0.extend_from_slice(&gs[i + 2..]);
                        let coef = c.mul_ref(rc);
                        match next.get_mut(&v) {
                            Some(x) => {
                                x.add_assign_ref(&coef);
                                if x.is_zero() {
                                    next.remove(&v);
                                }
                            }
                            None => {
                                if !coef.is_zero() {
                                    next.insert(v, coef);
                                }
                            }
                        }
                    }
                }
            }
        }
        pending = next;
    }
    Ok(match a.rank() {
        Some(n) => done.with_rank(n),
        None => done,
    })
}

/// Commutation of the Cartan generators `k_i^{+-1}` among themselves.
pub fn cartan_system<C: Coeff>(n: usize) -> RewriteSystem<C> {
    let mut gens = Vec::new();
    for i in 1..n as u8 {
        gens.push(Generator::K(i));
        gens.push(Generator::KInv(i));
    }
    let mut rules = Vec::new();
    for &a in &gens {
        for &b in &gens {
            if a.inverse() == Some(b) {
                rules.push(Rule {
                    lhs: [a, b],
                    rhs: NCElem::one(),
                });
            } else if cartan_order(&a) > cartan_order(&b) {
                rules.push(Rule {
                    lhs: [a, b],
                    rhs: NCElem::word(&[b, a]),
                });
            }
        }
    }
    RewriteSystem::new(rules, cartan_order).expect("cartan rules are ordered")
}

/// The `U_q(sl(2))` system (rank index 1, `K = k^2`), reducing every word
/// to the ordered form `F^a k^m E^b`.
///
/// * `E F -> F E + (k k - k^-1 k^-1) / lambda`
/// * `E k -> q^-1 k E`, `E k^-1 -> q k^-1 E`
/// * `k F -> q^-1 F k`, `k^-1 F -> q F k^-1`
/// * `k k^-1 -> 1`, `k^-1 k -> 1`
pub fn sl2_system() -> RewriteSystem<RatFun> {
    use Generator::*;
    let (e, f, k, ki) = (E(1), F(1), K(1), KInv(1));
    let q = |x: i64| RatFun::from(QExpr::q_pow(x, 1));
    let inv_lambda = RatFun::new(QExpr::one(), QExpr::lambda()).expect("lambda is nonzero");
    let w = |gs: &[Generator], c: RatFun| NCElem::<RatFun>::word(gs).scale(&c);
    let rules = vec![
        Rule {
            lhs: [e, f],
            rhs: w(&[f, e], RatFun::one())
                .add(&w(&[k, k], inv_lambda.clone()))
                .sub(&w(&[ki, ki], inv_lambda)),
        },
        Rule {
            lhs: [e, k],
            rhs: w(&[k, e], q(-1)),
        },
        Rule {
            lhs: [e, ki],
            rhs: w(&[ki, e], q(1)),
        },
        Rule {
            lhs: [k, f],
            rhs: w(&[f, k], q(-1)),
        },
        Rule {
            lhs: [ki, f],
            rhs: w(&[f, ki], q(1)),
        },
        Rule {
            lhs: [k, ki],
            rhs: NCElem::one(),
        },
        Rule {
            lhs: [ki, k],
            rhs: NCElem::one(),
        },
    ];
    RewriteSystem::new(rules, default_order).expect("sl2 rules are ordered")
}

/// Bi-degree `(#E - #F, #E + #F)` of a word.
pub fn ef_bidegree(w: &Word) -> (i64, i64) {
    let e = w
        .gens()
        .iter()
        .filter(|g| matches!(g, Generator::E(_)))
        .count() as i64;
    let f = w
        .gens()
        .iter()
        .filter(|g| matches!(g, Generator::F(_)))
        .count() as i64;
    (e - f, e + f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    type R = NCElem<RatFun>;

    fn q(e: i64) -> RatFun {
        RatFun::from(QExpr::q_pow(e, 1))
    }

    fn nf(x: &R) -> R {
        normal_form(x, &sl2_system()).unwrap()
    }

    #[test]
    fn ef_reorders() {
        let inv_lam = RatFun::new(QExpr::one(), QExpr::lambda()).unwrap();
        let expect = R::word(&[F(1), E(1)])
            .add(&R::word(&[K(1), K(1)]).scale(&inv_lam))
            .sub(&R::word(&[KInv(1), KInv(1)]).scale(&inv_lam));
        assert_eq!(nf(&R::word(&[E(1), F(1)])), expect);
    }

    #[test]
    fn k_e_commutation() {
        // k E = q E k, so E k -> q^-1 k E and k E is already ordered.
        assert_eq!(nf(&R::word(&[K(1), E(1)])), R::word(&[K(1), E(1)]));
        assert_eq!(
            nf(&R::word(&[E(1), K(1)])),
            R::word(&[K(1), E(1)]).scale(&q(-1))
        );
    }

    #[test]
    fn cartan_commutator_times_k_vanishes() {
        // [E,F] k - (K - K^-1)/lambda k = 0
        let inv_lam = RatFun::new(QExpr::one(), QExpr::lambda()).unwrap();
        let ef = R::commutator(&R::gen(E(1)), &R::gen(F(1)));
        let big_k = R::word(&[K(1), K(1)]);
        let big_k_inv = R::word(&[KInv(1), KInv(1)]);
        let x = ef
            .mul(&R::gen(K(1)))
            .sub(&big_k.sub(&big_k_inv).scale(&inv_lam).mul(&R::gen(K(1))));
        assert!(nf(&x).is_zero());
    }

    #[test]
    fn rules_lie_in_the_ideal() {
        let rs = sl2_system();
        for r in rs.rules() {
            let x = R::word(&r.lhs).sub(&r.rhs);
            assert!(normal_form(&x, &rs).unwrap().is_zero());
        }
    }

    #[test]
    fn cartan_words_telescope() {
        let rs = cartan_system::<QExpr>(4);
        let x = NCElem::<QExpr>::word(&[K(1), K(2), KInv(1), KInv(3), KInv(2), K(3)]);
        assert_eq!(normal_form(&x, &rs).unwrap(), NCElem::one());
        let y = NCElem::<QExpr>::word(&[K(2), KInv(1)]);
        assert_eq!(
            normal_form(&y, &rs).unwrap(),
            NCElem::word(&[KInv(1), K(2)])
        );
    }

    #[test]
    fn increasing_rule_is_rejected() {
        let bad = Rule {
            lhs: [F(1), E(1)],
            rhs: NCElem::<QExpr>::word(&[E(1), F(1)]),
        };
        assert!(matches!(
            RewriteSystem::new(vec![bad], default_order),
            Err(Error::InvalidRule(_))
        ));
    }

    #[test]
    fn budget_exhaustion_reported() {
        let rs = sl2_system().with_budget(3);
        let x = R::word(&[E(1), E(1), F(1), F(1)]);
        assert!(matches!(
            normal_form(&x, &rs),
            Err(Error::BudgetExhausted(3))
        ));
    }
}

use std::collections::BTreeMap;

use num_rational::Rational64;

use crate::coeff::{qfact, QExpr};

/// The q-antisymmetric tensor; upper and lower components coincide.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsTensor {
    n: usize,
    components: BTreeMap<Vec<usize>, QExpr>,
}

impl EpsTensor {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Component at a 1-based index tuple; zero off the permutations.
    pub fn get(&self, idx: &[usize]) -> QExpr {
        self.components
            .get(idx)
            .cloned()
            .unwrap_or_else(QExpr::zero)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &QExpr)> {
        self.components.iter()
    }

    /// Dense vector on `(C^n)^{⊗n}`, leftmost index most significant.
    pub fn to_vector(&self) -> Vec<QExpr> {
        let mut v = vec![QExpr::zero(); self.n.pow(self.n as u32)];
        for (idx, c) in &self.components {
            let lin = idx.iter().fold(0, |acc, &a| acc * self.n + (a - 1));
            v[lin] = c.clone();
        }
        v
    }

    /// `Σ ε_α ε^α`.
    pub fn contract(&self) -> QExpr {
        self.components
            .values()
            .fold(QExpr::zero(), |acc, c| acc.add(&c.mul(c)))
    }
}

/// Number of pairs `i < j` with `α_i < α_j`: the distance from the
/// descending word `(n, ..., 1)`.
pub fn length(alpha: &[usize]) -> usize {
    let mut l = 0;
    for i in 0..alpha.len() {
        for j in i + 1..alpha.len() {
            if alpha[i] < alpha[j] {
                l += 1;
            }
        }
    }
    l
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// `ε_α = q^{-n(n-1)/4} (-q)^{ℓ(α)}` on permutations of `(n, ..., 1)`.
pub fn q_eps(n: usize) -> EpsTensor {
    let nn = n as i64;
    let pre = QExpr::q_rat(Rational64::new(-nn * (nn - 1), 4));
    let components = permutations(n)
        .into_iter()
        .map(|p| {
            let l = length(&p) as u32;
            let sign = if l.is_multiple_of(2) { 1 } else { -1 };
            let c = pre
                .mul(&QExpr::q_pow(l as i64, 1))
                .scale(Rational64::from_integer(sign));
            (p, c)
        })
        .collect();
    EpsTensor { n, components }
}

/// `Σ ε_α ε^α == [n]!`.
pub fn eps_contraction_holds(n: usize) -> bool {
    q_eps(n).contract() == qfact(n as u32)
}

use std::collections::BTreeMap;

use num_rational::Rational64;

use crate::coeff::{qnum, QExpr};
use crate::error::{Error, Result};
use crate::ncalg::{Generator, NCElem, Word};
use crate::ring::Ring;
use crate::sparse::SparseMat;

use super::cartan::cartan;
use super::matrices::{big_k, big_k_inv, AlgMatrix};

type P = NCElem<QExpr>;

/// A finite-dimensional representation: images of `E_i, F_i, k_i, k_i^-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rep<S = QExpr> {
    n: usize,
    dim: usize,
    label: String,
    images: BTreeMap<Generator, SparseMat<S>>,
}

impl<S: Ring> Rep<S> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn image(&self, g: Generator) -> Result<&SparseMat<S>> {
        self.images
            .get(&g)
            .ok_or_else(|| Error::UnknownGenerator(g.to_string()))
    }

    pub fn images(&self) -> impl Iterator<Item = (&Generator, &SparseMat<S>)> {
        self.images.iter()
    }

    pub fn map<T: Ring, F: Fn(&S) -> T>(&self, f: F) -> Rep<T> {
        Rep {
            n: self.n,
            dim: self.dim,
            label: self.label.clone(),
            images: self.images.iter().map(|(g, m)| (*g, m.map(&f))).collect(),
        }
    }

    pub fn try_map<T: Ring, F: Fn(&S) -> Result<T>>(&self, f: F) -> Result<Rep<T>> {
        let mut images = BTreeMap::new();
        for (g, m) in &self.images {
            images.insert(*g, m.try_map(&f)?);
        }
        Ok(Rep {
            n: self.n,
            dim: self.dim,
            label: self.label.clone(),
            images,
        })
    }

    pub fn word_image(&self, w: &Word) -> Result<SparseMat<S>> {
        let mut acc = SparseMat::identity(self.dim);
        for g in w.gens() {
            acc = acc.mul(self.image(*g)?);
        }
        Ok(acc)
    }

    /// Image of `x`, with coefficients sent to `S` by `lift`.
    pub fn eval_with<F: Fn(&QExpr) -> S>(&self, x: &P, lift: F) -> Result<SparseMat<S>> {
        let mut acc = SparseMat::zeros(self.dim, self.dim);
        for (w, c) in x.terms() {
            acc = acc.add(&self.word_image(w)?.scale(&lift(c)));
        }
        Ok(acc)
    }

    /// Entrywise images of an algebra-valued matrix.
    pub fn eval_matrix_with<F: Fn(&QExpr) -> S>(
        &self,
        m: &AlgMatrix,
        lift: F,
    ) -> Result<Vec<Vec<SparseMat<S>>>> {
        let n = m.n();
        let mut rows = Vec::with_capacity(n);
        for a in 1..=n {
            let mut row = Vec::with_capacity(n);
            for b in 1..=n {
                row.push(self.eval_with(m.at(a, b), &lift)?);
            }
            rows.push(row);
        }
        Ok(rows)
    }
}

impl Rep<QExpr> {
    /// Builds a representation from raw images and checks every defining
    /// relation.
    pub fn new(
        n: usize,
        dim: usize,
        label: &str,
        images: BTreeMap<Generator, SparseMat<QExpr>>,
    ) -> Result<Self> {
        let rep = Rep {
            n,
            dim,
            label: label.to_string(),
            images,
        };
        for i in 1..n {
            for g in [
                Generator::E(i as u8),
                Generator::F(i as u8),
                Generator::K(i as u8),
                Generator::KInv(i as u8),
            ] {
                let m = rep.image(g)?;
                if m.rows() != dim || m.cols() != dim {
                    return Err(Error::RelationFailure(format!(
                        "{g} has the wrong shape in {label}"
                    )));
                }
            }
        }
        for (name, rel) in defining_relations(n) {
            if !rep.eval(&rel)?.is_zero() {
                return Err(Error::RelationFailure(format!("{name} in {label}")));
            }
        }
        for i in 1..n {
            if !rep.image(Generator::K(i as u8))?.is_diagonal() {
                return Err(Error::RelationFailure(format!(
                    "k{i} not diagonal in {label}"
                )));
            }
        }
        Ok(rep)
    }

    pub fn eval(&self, x: &P) -> Result<SparseMat<QExpr>> {
        self.eval_with(x, QExpr::clone)
    }

    pub fn eval_matrix(&self, m: &AlgMatrix) -> Result<Vec<Vec<SparseMat<QExpr>>>> {
        self.eval_matrix_with(m, QExpr::clone)
    }
}

/// Image of `x` in `r`.
pub fn rep_eval(x: &P, r: &Rep) -> Result<SparseMat<QExpr>> {
    r.eval(x)
}

/// The defining relations of the `n`-fold cover, as named elements that
/// must vanish. The `[E, F]` relation is multiplied through by `lambda`.
pub fn defining_relations(n: usize) -> Vec<(String, P)> {
    let mut out = Vec::new();
    out.extend(cartan_relations(n));
    out.extend(cross_relations(n));
    out.extend(serre_relations(n));
    out
}

pub fn cartan_relations(n: usize) -> Vec<(String, P)> {
    use Generator::*;
    let mut out = Vec::new();
    let g = |x: Generator| P::gen(x);
    for i in 1..n as u8 {
        out.push((
            format!("k{i} k{i}^-1 = 1"),
            g(K(i)).mul(&g(KInv(i))).sub(&P::one()),
        ));
        out.push((
            format!("k{i}^-1 k{i} = 1"),
            g(KInv(i)).mul(&g(K(i))).sub(&P::one()),
        ));
        for j in 1..n as u8 {
            if i < j {
                out.push((
                    format!("[k{i}, k{j}] = 0"),
                    P::commutator(&g(K(i)), &g(K(j))),
                ));
            }
            let s = if i == j { 1 } else { 0 };
            let e = g(K(i))
                .mul(&g(E(j)))
                .sub(&g(E(j)).mul(&g(K(i))).scale(&QExpr::q_pow(s, 1)));
            out.push((format!("k{i} E{j} = q^{s} E{j} k{i}"), e));
            let f = g(K(i))
                .mul(&g(F(j)))
                .sub(&g(F(j)).mul(&g(K(i))).scale(&QExpr::q_pow(-s, 1)));
            out.push((format!("k{i} F{j} = q^-{s} F{j} k{i}"), f));
        }
    }
    out
}

pub fn cross_relations(n: usize) -> Vec<(String, P)> {
    use Generator::*;
    let mut out = Vec::new();
    for i in 1..n as u8 {
        for j in 1..n as u8 {
            let c = P::commutator(&P::gen(E(i)), &P::gen(F(j)));
            let rel = if i == j {
                let ii = i as usize;
                c.scale(&QExpr::lambda())
                    .sub(&big_k(ii, n).sub(&big_k_inv(ii, n)))
            } else {
                c
            };
            out.push((format!("[E{i}, F{j}]"), rel));
        }
    }
    out
}

pub fn serre_relations(n: usize) -> Vec<(String, P)> {
    use Generator::*;
    let mut out = Vec::new();
    let two = qnum(2);
    for i in 1..n as u8 {
        for j in 1..n as u8 {
            if i == j {
                continue;
            }
            for (tag, mk) in [
                ("E", E as fn(u8) -> Generator),
                ("F", F as fn(u8) -> Generator),
            ] {
                let (a, b) = (P::gen(mk(i)), P::gen(mk(j)));
                if i.abs_diff(j) == 1 {
                    let aa = a.mul(&a);
                    let rel = aa
                        .mul(&b)
                        .add(&b.mul(&aa))
                        .sub(&a.mul(&b).mul(&a).scale(&two));
                    out.push((format!("Serre {tag}{i}^2 {tag}{j}"), rel));
                } else if i < j {
                    out.push((format!("[{tag}{i}, {tag}{j}] = 0"), P::commutator(&a, &b)));
                }
            }
        }
    }
    out
}

/// The same relations in nested q-commutator form.
pub fn serre_alt_relations(n: usize) -> Vec<(String, P)> {
    use Generator::*;
    let (q, qi) = (QExpr::q(), QExpr::q_pow(-1, 1));
    let mut out = Vec::new();
    for i in 1..(n as u8).saturating_sub(1) {
        for (tag, mk) in [
            ("E", E as fn(u8) -> Generator),
            ("F", F as fn(u8) -> Generator),
        ] {
            let (a, b) = (P::gen(mk(i)), P::gen(mk(i + 1)));
            let first = P::q_commutator(&a, &P::q_commutator(&a, &b, &qi), &q);
            let second = P::q_commutator(&b, &P::q_commutator(&b, &a, &q), &qi);
            out.push((
                format!("[{tag}{i}, [{tag}{i}, {tag}{}]_q^-1]_q", i + 1),
                first,
            ));
            out.push((
                format!("[{tag}{}, [{tag}{}, {tag}{i}]_q]_q^-1", i + 1, i + 1),
                second,
            ));
        }
    }
    out
}

fn unit(dim: usize, r: usize, c: usize) -> SparseMat<QExpr> {
    SparseMat::unit(dim, dim, r, c, QExpr::one())
}

/// The `n`-dimensional defining representation, with
/// `k_i -> diag(q^{(h^i)_alpha})`.
pub fn fundamental_rep(n: usize) -> Result<Rep> {
    let cd = cartan(n)?;
    let mut images = BTreeMap::new();
    for i in 1..n {
        let weights: Vec<Rational64> = (1..=n).map(|a| cd.fundamental_weight(i, a)).collect();
        let g = i as u8;
        images.insert(Generator::E(g), unit(n, i - 1, i));
        images.insert(Generator::F(g), unit(n, i, i - 1));
        images.insert(
            Generator::K(g),
            SparseMat::diag(weights.iter().map(|&w| QExpr::q_rat(w)).collect()),
        );
        images.insert(
            Generator::KInv(g),
            SparseMat::diag(weights.iter().map(|&w| QExpr::q_rat(-w)).collect()),
        );
    }
    Rep::new(n, n, "fund", images)
}

/// The one-dimensional representation given by the counit.
pub fn counit_rep(n: usize) -> Result<Rep> {
    let mut images = BTreeMap::new();
    for i in 1..n as u8 {
        images.insert(Generator::E(i), SparseMat::zeros(1, 1));
        images.insert(Generator::F(i), SparseMat::zeros(1, 1));
        images.insert(Generator::K(i), SparseMat::identity(1));
        images.insert(Generator::KInv(i), SparseMat::identity(1));
    }
    Rep::new(n, 1, "counit", images)
}

/// `r1 ⊗ r2` through the coproduct.
pub fn tensor_rep(r1: &Rep, r2: &Rep) -> Result<Rep> {
    if r1.n != r2.n {
        return Err(Error::RankMismatch(r1.n as u8, r2.n as u8));
    }
    let n = r1.n;
    let (id1, id2) = (SparseMat::identity(r1.dim), SparseMat::identity(r2.dim));
    let mut images = BTreeMap::new();
    for i in 1..n {
        let g = i as u8;
        let k2 = r2.eval(&big_k(i, n))?;
        let kinv1 = r1.eval(&big_k_inv(i, n))?;
        let e = r1
            .image(Generator::E(g))?
            .kron(&k2)
            .add(&id1.kron(r2.image(Generator::E(g))?));
        let f = r1
            .image(Generator::F(g))?
            .kron(&id2)
            .add(&kinv1.kron(r2.image(Generator::F(g))?));
        images.insert(Generator::E(g), e);
        images.insert(Generator::F(g), f);
        for kg in [Generator::K(g), Generator::KInv(g)] {
            images.insert(kg, r1.image(kg)?.kron(r2.image(kg)?));
        }
    }
    let label = format!("{}⊗{}", r1.label, r2.label);
    Rep::new(n, r1.dim * r2.dim, &label, images)
}

/// `fund^{⊗d}`, labelled `fund`, `fund^2`, ...
pub fn fundamental_power(n: usize, d: usize) -> Result<Rep> {
    let f = fundamental_rep(n)?;
    let mut acc = f.clone();
    for _ in 1..d {
        acc = tensor_rep(&acc, &f)?;
    }
    acc.label = if d == 1 {
        "fund".to_string()
    } else {
        format!("fund^{d}")
    };
    Ok(acc)
}

/// Every tensor power up to degree `d`.
pub fn rep_family(n: usize, d: usize) -> Result<Vec<Rep>> {
    (1..=d).map(|k| fundamental_power(n, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uq::matrices::{build_d, build_m, d_elem};
    use Generator::*;

    fn q(num: i64, den: i64) -> QExpr {
        QExpr::q_pow(num, den)
    }

    #[test]
    fn fundamental_sl2_images() {
        let r = fundamental_rep(2).unwrap();
        assert_eq!(
            r.image(K(1)).unwrap(),
            &SparseMat::diag(vec![q(1, 2), q(-1, 2)])
        );
        let kk = r.eval(&P::word(&[K(1), K(1)])).unwrap();
        assert_eq!(kk, SparseMat::diag(vec![q(1, 1), q(-1, 1)]));
        let ef = r
            .eval(&P::commutator(&P::gen(E(1)), &P::gen(F(1))))
            .unwrap();
        assert_eq!(ef, SparseMat::diag(vec![QExpr::one(), QExpr::int(-1)]));
    }

    #[test]
    fn relations_hold_in_small_powers() {
        for n in 2..=4 {
            for d in 1..=2 {
                fundamental_power(n, d).unwrap();
            }
        }
        fundamental_power(3, 3).unwrap();
    }

    #[test]
    fn d_product_is_identity() {
        for n in 2..=4 {
            let r = fundamental_rep(n).unwrap();
            let prod = build_d(n).diag().iter().fold(P::one(), |a, d| a.mul(d));
            assert_eq!(r.eval(&prod).unwrap(), SparseMat::identity(n));
        }
    }

    #[test]
    fn tensor_square_e_has_rank_two() {
        let f = fundamental_rep(2).unwrap();
        let ff = tensor_rep(&f, &f).unwrap();
        let e = ff.image(E(1)).unwrap();
        // rows 1 and 2 are both supported on column 3 only
        assert_eq!(e.nnz(), 4);
        assert_eq!(
            e.row(1).iter().map(|(c, _)| *c).collect::<Vec<_>>(),
            vec![3]
        );
        assert_eq!(
            e.row(2).iter().map(|(c, _)| *c).collect::<Vec<_>>(),
            vec![3]
        );
        assert!(e.row(3).is_empty());
        assert!(ff.image(K(1)).unwrap().is_diagonal());
    }

    #[test]
    fn counit_is_a_unit_for_tensor() {
        let f = fundamental_rep(3).unwrap();
        let c = counit_rep(3).unwrap();
        let fc = tensor_rep(&f, &c).unwrap();
        let cf = tensor_rep(&c, &f).unwrap();
        for (g, m) in f.images() {
            assert_eq!(fc.image(*g).unwrap(), m);
            assert_eq!(cf.image(*g).unwrap(), m);
        }
    }

    #[test]
    fn broken_images_are_rejected() {
        let f = fundamental_rep(2).unwrap();
        let mut images: BTreeMap<_, _> = f.images().map(|(g, m)| (*g, m.clone())).collect();
        images.insert(E(1), unit(2, 1, 0));
        assert!(matches!(
            Rep::new(2, 2, "bad", images),
            Err(Error::RelationFailure(_))
        ));
    }

    #[test]
    fn unknown_generator() {
        let f = fundamental_rep(2).unwrap();
        assert!(matches!(
            f.eval(&P::gen(E(2))),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn m11_in_fundamental() {
        // K^-1 -> diag(q^-1, q), FE -> diag(0, 1)
        let r = fundamental_rep(2).unwrap();
        let m = build_m(2).unwrap();
        let lam = QExpr::lambda();
        let expect = SparseMat::diag(vec![q(-5, 2), q(-1, 2) * (&lam * &lam + QExpr::one())]);
        assert_eq!(r.eval(m.at(1, 1)).unwrap(), expect);
    }

    #[test]
    fn d_entries_commute_with_weights() {
        let r = fundamental_rep(3).unwrap();
        assert_eq!(r.eval(&d_elem(2, 3)).unwrap().rows(), 3);
    }
}

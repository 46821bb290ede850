//! Row-compressed sparse matrices over any [`Ring`].

use std::fmt;

use crate::ring::Ring;

/// Each row holds `(column, value)` pairs sorted by column, with no
/// structural zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat<S> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, S)>>,
}

impl<S: Ring> SparseMat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diag((0..dim).map(|_| S::one()).collect())
    }

    pub fn scalar(dim: usize, s: S) -> Self {
        Self::diag(vec![s; dim])
    }

    pub fn diag(entries: Vec<S>) -> Self {
        let dim = entries.len();
        let data = entries
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                if s.is_zero() {
                    Vec::new()
                } else {
                    vec![(i, s)]
                }
            })
            .collect();
        SparseMat {
            rows: dim,
            cols: dim,
            data,
        }
    }

    /// Sums duplicate positions.
    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, S)>>(
        rows: usize,
        cols: usize,
        it: I,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c, s) in it {
            m.add_at(r, c, &s);
        }
        m
    }

    /// Single matrix unit `e_{r,c}` scaled by `s`.
    pub fn unit(rows: usize, cols: usize, r: usize, c: usize, s: S) -> Self {
        Self::from_triplets(rows, cols, [(r, c, s)])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, S)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        match self.data[r].binary_search_by_key(&c, |(k, _)| *k) {
            Ok(i) => self.data[r][i].1.clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, s: &S) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if s.is_zero() {
            return;
        }
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |(k, _)| *k) {
            Ok(i) => {
                row[i].1.add_assign_ref(s);
                if row[i].1.is_zero() {
                    row.remove(i);
                }
            }
            Err(i) => row.insert(i, (c, s.clone())),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, s: S) {
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |(k, _)| *k) {
            Ok(i) => {
                if s.is_zero() {
                    row.remove(i);
                } else {
                    row[i].1 = s;
                }
            }
            Err(i) => {
                if !s.is_zero() {
                    row.insert(i, (c, s));
                }
            }
        }
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, s)| (r, *c, s)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_diagonal(&self) -> bool {
        self.iter().all(|(r, c, _)| r == c)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in add"
        );
        let mut out = self.clone();
        for (r, c, s) in rhs.iter() {
            out.add_at(r, c, s);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|s| s.neg_ref())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(c, v)| (*c, s.mul_ref(v)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        SparseMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Right scalar multiplication, for noncommutative scalar rings.
    pub fn scale_right(&self, s: &S) -> Self {
        let data = self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(c, v)| (*c, v.mul_ref(s)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        SparseMat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn map<T: Ring, F: Fn(&S) -> T>(&self, f: F) -> SparseMat<T> {
        self.try_map(|s| Ok::<T, std::convert::Infallible>(f(s)))
            .unwrap()
    }

    pub fn try_map<T: Ring, E, F: Fn(&S) -> Result<T, E>>(&self, f: F) -> Result<SparseMat<T>, E> {
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut out = Vec::with_capacity(row.len());
            for (c, v) in row {
                let t = f(v)?;
                if !t.is_zero() {
                    out.push((*c, t));
                }
            }
            data.push(out);
        }
        Ok(SparseMat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        let mut acc: Vec<Option<S>> = vec![None; rhs.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            for (k, a) in row {
                for (c, b) in &rhs.data[*k] {
                    let p = a.mul_ref(b);
                    match &mut acc[*c] {
                        Some(v) => v.add_assign_ref(&p),
                        slot @ None => {
                            *slot = Some(p);
                            touched.push(*c);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for &c in &touched {
                let v = acc[c].take().expect("touched slot");
                if !v.is_zero() {
                    out.push((c, v));
                }
            }
            touched.clear();
            data.push(out);
        }
        SparseMat {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        self.data
            .iter()
            .map(|row| {
                let mut acc = S::zero();
                for (c, a) in row {
                    if !v[*c].is_zero() {
                        acc.add_assign_ref(&a.mul_ref(&v[*c]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product; `self` indexes the most significant factor.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (rr, rc) = (rhs.rows, rhs.cols);
        let mut data = Vec::with_capacity(self.rows * rr);
        for arow in &self.data {
            for brow in &rhs.data {
                let mut out = Vec::with_capacity(arow.len() * brow.len());
                for (ac, a) in arow {
                    for (bc, b) in brow {
                        let p = a.mul_ref(b);
                        if !p.is_zero() {
                            out.push((ac * rc + bc, p));
                        }
                    }
                }
                data.push(out);
            }
        }
        SparseMat {
            rows: self.rows * rr,
            cols: self.cols * rc,
            data,
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.iter().map(|(r, c, s)| (c, r, s.clone())),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Largest entry magnitude, for numeric scalars.
    pub fn max_magnitude(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for (_, _, s) in self.iter() {
            let m = s.magnitude()?;
            best = Some(best.map_or(m, |b: f64| b.max(m)));
        }
        Some(best.unwrap_or(0.0))
    }

    /// The first nonzero entry, as a witness for failed identities.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &S)> {
        self.iter().next()
    }

    /// Entry of largest magnitude (numeric) or the first entry (exact).
    pub fn worst_entry(&self) -> Option<(usize, usize, &S)> {
        let mut best: Option<(usize, usize, &S)> = None;
        let mut best_m = f64::NEG_INFINITY;
        for (r, c, s) in self.iter() {
            match s.magnitude() {
                Some(m) if m > best_m => {
                    best_m = m;
                    best = Some((r, c, s));
                }
                Some(_) => {}
                None => return Some((r, c, s)),
            }
        }
        best
    }
}

impl<S: Ring> fmt::Display for SparseMat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::QExpr;

    fn q(e: i64) -> QExpr {
        QExpr::q_pow(e, 1)
    }

    #[test]
    fn identity_is_neutral() {
        let a =
            SparseMat::from_triplets(2, 2, [(0, 1, q(1)), (1, 0, q(-1)), (1, 1, QExpr::int(3))]);
        let id = SparseMat::identity(2);
        assert_eq!(a.mul(&id), a);
        assert_eq!(id.mul(&a), a);
    }

    #[test]
    fn cancellation_drops_entries() {
        let a = SparseMat::from_triplets(1, 1, [(0, 0, q(1)), (0, 0, q(1).neg())]);
        assert!(a.is_zero());
        assert_eq!(a.nnz(), 0);
    }

    #[test]
    fn kron_layout() {
        let a = SparseMat::unit(2, 2, 0, 1, q(1));
        let b = SparseMat::unit(2, 2, 1, 0, q(2));
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.get(1, 2), q(3));
        assert_eq!(k.nnz(), 1);
    }

    #[test]
    fn mixed_product_property() {
        let a = SparseMat::from_triplets(2, 2, [(0, 0, q(1)), (0, 1, QExpr::one()), (1, 1, q(-1))]);
        let b = SparseMat::from_triplets(2, 2, [(1, 0, q(2)), (0, 0, QExpr::int(2))]);
        let lhs = a.kron(&b).mul(&b.kron(&a));
        let rhs = a.mul(&b).kron(&b.mul(&a));
        assert_eq!(lhs, rhs);
    }
}

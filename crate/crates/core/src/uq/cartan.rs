use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The `sl(n)` Cartan matrix (size `n - 1`) and its exact inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanData {
    pub n: usize,
    pub c: Vec<Vec<i64>>,
    pub c_inv: Vec<Vec<Rational64>>,
}

impl CartanData {
    pub fn rank(&self) -> usize {
        self.n - 1
    }

    /// Exact determinant of `c`.
    pub fn det(&self) -> Rational64 {
        determinant(&to_rational(&self.c))
    }

    /// `c * c_inv == 1` exactly.
    pub fn inverse_is_exact(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| {
            (0..r).all(|j| {
                let s: Rational64 = (0..r)
                    .map(|k| Rational64::from_integer(self.c[i][k]) * self.c_inv[k][j])
                    .sum();
                s == if i == j {
                    Rational64::one()
                } else {
                    Rational64::zero()
                }
            })
        })
    }

    /// Component `alpha` (1-based) of the weight of `h^i` in the
    /// fundamental representation: `sum_j (c^-1)_{ij} (H_j)_alpha` with
    /// `(H_j)_alpha = delta_{alpha,j} - delta_{alpha,j+1}`.
    pub fn fundamental_weight(&self, i: usize, alpha: usize) -> Rational64 {
        (1..self.n)
            .map(|j| {
                let hj = (alpha == j) as i64 - (alpha == j + 1) as i64;
                self.c_inv[i - 1][j - 1] * Rational64::from_integer(hj)
            })
            .sum()
    }
}

fn to_rational(m: &[Vec<i64>]) -> Vec<Vec<Rational64>> {
    m.iter()
        .map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect())
        .collect()
}

pub fn cartan_matrix(n: usize) -> Vec<Vec<i64>> {
    let r = n - 1;
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

/// Exact determinant by rational Gaussian elimination.
pub fn determinant(m: &[Vec<Rational64>]) -> Rational64 {
    let mut a = m.to_vec();
    let r = a.len();
    let mut det = Rational64::one();
    for col in 0..r {
        let Some(p) = (col..r).find(|&i| !a[i][col].is_zero()) else {
            return Rational64::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let piv = a[col][col];
        det *= piv;
        for i in col + 1..r {
            let f = a[i][col] / piv;
            if f.is_zero() {
                continue;
            }
            for j in col..r {
                let v = a[col][j];
                a[i][j] -= f * v;
            }
        }
    }
    det
}

/// Gauss-Jordan inverse; `None` for singular input.
pub fn invert(m: &[Vec<Rational64>]) -> Option<Vec<Vec<Rational64>>> {
    let r = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..r).map(|j| {
                if i == j {
                    Rational64::one()
                } else {
                    Rational64::zero()
                }
            }));
            v
        })
        .collect();
    for col in 0..r {
        let p = (col..r).find(|&i| !a[i][col].is_zero())?;
        a.swap(p, col);
        let piv = a[col][col];
        for v in a[col].iter_mut() {
            *v /= piv;
        }
        for i in 0..r {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[i].iter_mut().zip(pivot_row.iter()) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[r..].to_vec()).collect())
}

/// `(c^-1)_{ij} = j (1 - i/n)` for `j <= i`, `i (1 - j/n)` for `j > i`
/// (1-based indices).
pub fn closed_form_inverse(n: usize) -> Vec<Vec<Rational64>> {
    let nn = n as i64;
    (1..n as i64)
        .map(|i| {
            (1..n as i64)
                .map(|j| {
                    if j <= i {
                        Rational64::from_integer(j) * (Rational64::one() - Rational64::new(i, nn))
                    } else {
                        Rational64::from_integer(i) * (Rational64::one() - Rational64::new(j, nn))
                    }
                })
                .collect()
        })
        .collect()
}

/// The Cartan data for `sl(n)`, with the closed-form inverse cross-checked
/// against direct inversion.
pub fn cartan(n: usize) -> Result<CartanData> {
    if n < 2 {
        return Err(Error::UnsupportedRank(n, "sl(n) needs n >= 2"));
    }
    let c = cartan_matrix(n);
    let direct = invert(&to_rational(&c)).ok_or(Error::DivisionByZero)?;
    let closed = closed_form_inverse(n);
    if direct != closed {
        return Err(Error::RelationFailure(format!(
            "closed-form Cartan inverse at n = {n}"
        )));
    }
    Ok(CartanData {
        n,
        c,
        c_inv: direct,
    })
}

/// `det c(n)` from the three-term recursion `D(n) = 2 D(n-1) - D(n-2)`,
/// `D(2) = 2`, `D(3) = 3` (with `D(1) = 1` for the empty matrix).
pub fn det_by_recursion(n: usize) -> i64 {
    let (mut a, mut b) = (1i64, 2i64);
    if n <= 1 {
        return 1;
    }
    for _ in 3..=n {
        let next = 2 * b - a;
        a = b;
        b = next;
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_equals_n() {
        for n in 2..=10 {
            let cd = cartan(n).unwrap();
            assert_eq!(cd.det(), Rational64::from_integer(n as i64));
            assert_eq!(det_by_recursion(n), n as i64);
        }
        assert_eq!(det_by_recursion(3), 3);
    }

    #[test]
    fn rank_one_inverse() {
        let cd = cartan(2).unwrap();
        assert_eq!(cd.c, vec![vec![2]]);
        assert_eq!(cd.c_inv, vec![vec![Rational64::new(1, 2)]]);
    }

    #[test]
    fn rank_two_inverse() {
        let cd = cartan(3).unwrap();
        let t = |x| Rational64::new(x, 3);
        assert_eq!(cd.c_inv, vec![vec![t(2), t(1)], vec![t(1), t(2)]]);
        assert!(cd.inverse_is_exact());
    }

    #[test]
    fn fundamental_weights_for_sl2() {
        let cd = cartan(2).unwrap();
        assert_eq!(cd.fundamental_weight(1, 1), Rational64::new(1, 2));
        assert_eq!(cd.fundamental_weight(1, 2), Rational64::new(-1, 2));
    }

    #[test]
    fn n_one_rejected() {
        assert!(cartan(1).is_err());
    }
}

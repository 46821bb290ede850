//! Dense complex matrices used as an independent oracle.

#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

pub type C = Complex64;
pub type Mat = Vec<Vec<C>>;

pub fn c(x: f64) -> C {
    C::new(x, 0.0)
}

/// `q^r` with `q = exp(-i pi / h)`.
pub fn qp(h: f64, r: f64) -> C {
    C::from_polar(1.0, -PI * r / h)
}

pub fn zeros(n: usize) -> Mat {
    vec![vec![c(0.0); n]; n]
}

pub fn eye(n: usize) -> Mat {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c(1.0);
    }
    m
}

pub fn unit(n: usize, r: usize, col: usize) -> Mat {
    let mut m = zeros(n);
    m[r][col] = c(1.0);
    m
}

pub fn diag(v: &[C]) -> Mat {
    let mut m = zeros(v.len());
    for (i, x) in v.iter().enumerate() {
        m[i][i] = *x;
    }
    m
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let mut out = vec![vec![c(0.0); m]; n];
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            if x == c(0.0) {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[l][j];
            }
        }
    }
    out
}

pub fn mul_all(ms: &[&Mat]) -> Mat {
    let mut acc = ms[0].clone();
    for m in &ms[1..] {
        acc = mul(&acc, m);
    }
    acc
}

pub fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
        .collect()
}

pub fn sub(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect())
        .collect()
}

pub fn scale(a: &Mat, s: C) -> Mat {
    a.iter()
        .map(|r| r.iter().map(|x| x * s).collect())
        .collect()
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (a.len(), b.len());
    let mut out = zeros(n * m);
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// Gauss-Jordan with partial pivoting.
pub fn inv(a: &Mat) -> Mat {
    let n = a.len();
    let mut m = a.clone();
    let mut r = eye(n);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| m[x][col].norm().total_cmp(&m[y][col].norm()))
            .unwrap();
        assert!(m[piv][col].norm() > 1e-12, "singular");
        m.swap(col, piv);
        r.swap(col, piv);
        let p = m[col][col];
        for j in 0..n {
            m[col][j] /= p;
            r[col][j] /= p;
        }
        for i in 0..n {
            if i != col {
                let f = m[i][col];
                if f != c(0.0) {
                    for j in 0..n {
                        let (mc, rc) = (m[col][j], r[col][j]);
                        m[i][j] -= f * mc;
                        r[i][j] -= f * rc;
                    }
                }
            }
        }
    }
    r
}

pub fn max_abs(a: &Mat) -> f64 {
    a.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn dist(a: &Mat, b: &Mat) -> f64 {
    max_abs(&sub(a, b))
}

/// Drinfeld-Jimbo `R`, rows and columns indexed by `(a, b)` as `a n + b`.
pub fn r_matrix(n: usize, h: f64) -> Mat {
    let pre = qp(h, 1.0 / n as f64);
    let mut r = zeros(n * n);
    for a in 0..n {
        for b in 0..n {
            let eps = (a > b) as i32 - ((a < b) as i32);
            r[a * n + b][a * n + b] += pre;
            r[a * n + b][b * n + a] += pre * (qp(h, -1.0) - qp(h, eps as f64));
        }
    }
    r
}

pub fn swap(n: usize) -> Mat {
    let mut p = zeros(n * n);
    for a in 0..n {
        for b in 0..n {
            p[a * n + b][b * n + a] = c(1.0);
        }
    }
    p
}

/// Operator on `aux^{⊗legs} ⊗ rep` acting as the block matrix `blocks`
/// (an `n × n` array of `d × d` operators) on aux leg `leg` and on `rep`.
pub fn place_blocks(blocks: &[Vec<Mat>], leg: usize, legs: usize, d: usize) -> Mat {
    let n = blocks.len();
    let aux = n.pow(legs as u32);
    let dim = aux * d;
    let mut out = zeros(dim);
    let stride = n.pow((legs - leg) as u32);
    for x in 0..aux {
        let a = (x / stride) % n;
        for b in 0..n {
            let y = x - a * stride + b * stride;
            for i in 0..d {
                for j in 0..d {
                    out[x * d + i][y * d + j] = blocks[a][b][i][j];
                }
            }
        }
    }
    out
}

/// Fundamental representation data for `sl(n)` at `q = exp(-i pi / h)`.
pub struct Fund {
    pub n: usize,
    pub h: f64,
    pub e: Vec<Mat>,
    pub f: Vec<Mat>,
    /// `k_0, ..., k_n` with `k_0 = k_n = 1`.
    pub k: Vec<Mat>,
}

impl Fund {
    pub fn new(n: usize, h: f64) -> Self {
        // (c^-1)^{ij} by direct inversion of the Cartan matrix
        let r = n - 1;
        let mut cm = zeros(r);
        for i in 0..r {
            cm[i][i] = c(2.0);
            if i + 1 < r {
                cm[i][i + 1] = c(-1.0);
                cm[i + 1][i] = c(-1.0);
            }
        }
        let cinv = inv(&cm);
        let mut k = vec![eye(n)];
        for i in 0..r {
            let exps: Vec<C> = (0..n)
                .map(|a| {
                    let mut s = 0.0;
                    for j in 0..r {
                        let hj = (a == j) as i32 as f64 - (a == j + 1) as i32 as f64;
                        s += cinv[i][j].re * hj;
                    }
                    qp(h, s)
                })
                .collect();
            k.push(diag(&exps));
        }
        k.push(eye(n));
        let e = (0..r).map(|i| unit(n, i, i + 1)).collect();
        let f = (0..r).map(|i| unit(n, i + 1, i)).collect();
        Fund { n, h, e, f, k }
    }

    pub fn q(&self, r: f64) -> C {
        qp(self.h, r)
    }

    pub fn lambda(&self) -> C {
        self.q(1.0) - self.q(-1.0)
    }

    /// `d_α = k_{α-1} k_α^-1`, 1-based.
    pub fn d(&self, alpha: usize) -> Mat {
        mul(&self.k[alpha - 1], &inv(&self.k[alpha]))
    }

    /// `K_i = k_{i-1}^-1 k_i^2 k_{i+1}^-1`.
    pub fn big_k(&self, i: usize) -> Mat {
        mul_all(&[
            &inv(&self.k[i - 1]),
            &self.k[i],
            &self.k[i],
            &inv(&self.k[i + 1]),
        ])
    }

    pub fn qcomm(&self, a: &Mat, b: &Mat, r: f64) -> Mat {
        sub(&mul(a, b), &scale(&mul(b, a), self.q(r)))
    }

    /// `(N_+, N_-)` as `n × n` arrays of operators, up to `n = 3`.
    pub fn npm(&self) -> (Vec<Vec<Mat>>, Vec<Vec<Mat>>) {
        let n = self.n;
        let mut np = vec![vec![zeros(n); n]; n];
        let mut nm = vec![vec![zeros(n); n]; n];
        for i in 0..n - 1 {
            np[i][i + 1] = self.f[i].clone();
            nm[i + 1][i] = self.e[i].clone();
        }
        if n >= 3 {
            for i in 0..n - 2 {
                np[i][i + 2] = self.qcomm(&self.f[i + 1], &self.f[i], 1.0);
                nm[i + 2][i] = self.qcomm(&self.e[i], &self.e[i + 1], -1.0);
            }
        }
        assert!(n <= 3);
        (np, nm)
    }

    /// `M_+ = (1 - λ N_+) D`, `M_- = D^-1 (1 + λ N_-)`.
    pub fn mpm(&self) -> (Vec<Vec<Mat>>, Vec<Vec<Mat>>) {
        let n = self.n;
        let (np, nm) = self.npm();
        let lam = self.lambda();
        let mut mp = vec![vec![zeros(n); n]; n];
        let mut mm = vec![vec![zeros(n); n]; n];
        for a in 0..n {
            for b in 0..n {
                let id = if a == b { eye(n) } else { zeros(n) };
                mp[a][b] = mul(&sub(&id, &scale(&np[a][b], lam)), &self.d(b + 1));
                mm[a][b] = mul(&inv(&self.d(a + 1)), &add(&id, &scale(&nm[a][b], lam)));
            }
        }
        (mp, mm)
    }

    /// `M = q^{1/n - n} M_+ M_-^-1` with the inverse taken numerically on
    /// the full block matrix.
    pub fn m(&self) -> Vec<Vec<Mat>> {
        let n = self.n;
        let (mp, mm) = self.mpm();
        let big = |b: &Vec<Vec<Mat>>| place_blocks(b, 1, 1, n);
        let full = scale(
            &mul(&big(&mp), &inv(&big(&mm))),
            self.q(1.0 / n as f64 - n as f64),
        );
        blocks_of(&full, n, n)
    }
}

/// Splits an `(n d) × (n d)` matrix into an `n × n` array of `d × d` blocks.
pub fn blocks_of(m: &Mat, n: usize, d: usize) -> Vec<Vec<Mat>> {
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    (0..d)
                        .map(|i| (0..d).map(|j| m[a * d + i][b * d + j]).collect())
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// q-antisymmetric tensor on permutations of `(n, ..., 1)`, as a dense
/// vector with leftmost index most significant.
pub fn eps_vector(n: usize, h: f64) -> Vec<C> {
    let mut v = vec![c(0.0); n.pow(n as u32)];
    let pre = qp(h, -((n * (n - 1)) as f64) / 4.0);
    let mut idx: Vec<usize> = (0..n).collect();
    permute(&mut idx, 0, &mut |p| {
        let mut asc = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] < p[j] {
                    asc += 1;
                }
            }
        }
        let lin = p.iter().fold(0, |acc, &a| acc * n + a);
        v[lin] = pre * qp(h, asc as f64) * if asc % 2 == 0 { 1.0 } else { -1.0 };
    });
    v
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

pub fn qint(m: i64, h: f64) -> C {
    (qp(h, m as f64) - qp(h, -m as f64)) / (qp(h, 1.0) - qp(h, -1.0))
}

use std::fmt;

use num_traits::{One, Zero};

use crate::exact_arith::{ArithError, GaussRat};

/// Dense square matrix over the Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CMatrix {
    n: usize,
    data: Vec<GaussRat>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![GaussRat::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for k in 0..n {
            m.set(k, k, GaussRat::one());
        }
        m
    }

    /// `A = ||delta_{i, n-1-j}||`.
    pub fn antidiagonal(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for k in 0..n {
            m.set(k, n - 1 - k, GaussRat::one());
        }
        m
    }

    pub fn from_fn<F: Fn(usize, usize) -> GaussRat>(n: usize, f: F) -> Self {
        let mut m = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussRat {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussRat) {
        self.data[r * self.n + c] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[GaussRat]> {
        self.data.chunks(self.n.max(1))
    }

    pub fn mul(&self, o: &CMatrix) -> CMatrix {
        assert_eq!(self.n, o.n);
        let n = self.n;
        CMatrix::from_fn(n, |r, c| {
            let mut acc = GaussRat::zero();
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                acc += &(a * o.get(k, c));
            }
            acc
        })
    }

    pub fn conj(&self) -> CMatrix {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.is_real())
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<CMatrix, ArithError> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = CMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(ArithError::DivisionByZero)?;
            if pivot != col {
                for c in 0..n {
                    a.data.swap(pivot * n + c, col * n + c);
                    inv.data.swap(pivot * n + c, col * n + c);
                }
            }
            let p = a.get(col, col).inv()?;
            for c in 0..n {
                let v = a.get(col, c) * &p;
                a.set(col, c, v);
                let w = inv.get(col, c) * &p;
                inv.set(col, c, w);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = a.get(r, c) - &(&f * a.get(col, c));
                    a.set(r, c, v);
                    let w = inv.get(r, c) - &(&f * inv.get(col, c));
                    inv.set(r, c, w);
                }
            }
        }
        Ok(inv)
    }
}

impl fmt::Display for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|z| z.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::params::{format_rational, ParamVec, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is singular")]
    Singular,
    #[error("result is not half-integral")]
    NotHalfIntegral,
}

/// A 4x4 matrix with entries in `(1/2)ℤ`, stored as integer numerators over 2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfIntMatrix {
    num: [[i64; 4]; 4],
}

impl HalfIntMatrix {
    /// Entries are `num[i][j] / 2`. Rejects singular matrices.
    pub fn from_halves(num: [[i64; 4]; 4]) -> Result<Self, MatrixError> {
        let m = Self { num };
        if m.det().is_zero() {
            return Err(MatrixError::Singular);
        }
        Ok(m)
    }

    /// Integer entries.
    pub fn from_ints(entries: [[i64; 4]; 4]) -> Result<Self, MatrixError> {
        Self::from_halves(entries.map(|r| r.map(|x| 2 * x)))
    }

    pub fn identity() -> Self {
        let mut num = [[0; 4]; 4];
        for (i, row) in num.iter_mut().enumerate() {
            row[i] = 2;
        }
        Self { num }
    }

    pub fn diag(d: [i64; 4]) -> Self {
        let mut num = [[0; 4]; 4];
        for i in 0..4 {
            num[i][i] = 2 * d[i];
        }
        Self::from_halves(num).expect("diagonal entries nonzero")
    }

    pub fn numerators(&self) -> &[[i64; 4]; 4] {
        &self.num
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        Rational::new(self.num[i][j].into(), 2.into())
    }

    pub fn entries(&self) -> [[Rational; 4]; 4] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.entry(i, j)))
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.map(|r| r.map(|x| -x)),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        let mut num = [[0i64; 4]; 4];
        for (i, row) in num.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let s: i64 = (0..4).map(|k| self.num[i][k] * rhs.num[k][j]).sum();
                // (x/2)(y/2) summed is s/4; the numerator over 2 is s/2.
                if s % 2 != 0 {
                    return Err(MatrixError::NotHalfIntegral);
                }
                *cell = s / 2;
            }
        }
        Ok(Self { num })
    }

    pub fn pow(&self, k: u32) -> Result<Self, MatrixError> {
        let mut out = Self::identity();
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn det(&self) -> Rational {
        let mut a = self.entries();
        let mut det = Rational::one();
        for col in 0..4 {
            let Some(pivot) = (col..4).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            det *= &a[col][col];
            for r in col + 1..4 {
                let factor = &a[r][col] / &a[col][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &factor * y;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self, MatrixError> {
        let mut a = self.entries();
        let mut inv: [[Rational; 4]; 4] = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
        });
        for col in 0..4 {
            let pivot = (col..4)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(MatrixError::Singular)?;
            a.swap(pivot, col);
            inv.swap(pivot, col);
            let p = a[col][col].clone();
            for k in 0..4 {
                a[col][k] /= &p;
                inv[col][k] /= &p;
            }
            for r in (0..4).filter(|&r| r != col) {
                let factor = a[r][col].clone();
                if factor.is_zero() {
                    continue;
                }
                for k in 0..4 {
                    let t = &factor * &a[col][k];
                    a[r][k] -= t;
                    let t = &factor * &inv[col][k];
                    inv[r][k] -= t;
                }
            }
        }
        let mut num = [[0i64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let twice = &inv[i][j] * Rational::from_integer(2.into());
                if !twice.is_integer() {
                    return Err(MatrixError::NotHalfIntegral);
                }
                num[i][j] = twice
                    .to_integer()
                    .to_i64()
                    .ok_or(MatrixError::NotHalfIntegral)?;
            }
        }
        Ok(Self { num })
    }

    /// Exact matrix-vector product `M·p`.
    pub fn apply(&self, p: &ParamVec) -> ParamVec {
        ParamVec(std::array::from_fn(|i| {
            let mut s = Rational::zero();
            for j in 0..4 {
                if self.num[i][j] != 0 {
                    s += self.entry(i, j) * &p.0[j];
                }
            }
            s
        }))
    }

    pub fn rows_as_strings(&self) -> [[String; 4]; 4] {
        self.entries().map(|r| r.map(|x| format_rational(&x)))
    }

    /// True iff every entry has absolute value at most 1.
    pub fn is_bounded(&self) -> bool {
        self.entries()
            .iter()
            .flatten()
            .all(|x| x.abs() <= Rational::one())
    }
}

impl fmt::Debug for HalfIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HalfIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows_as_strings().iter().map(|r| r.join(" ")).collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl Serialize for HalfIntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows_as_strings().serialize(s)
    }
}

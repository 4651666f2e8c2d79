//! Arity-4 constraint functions and holographic transformations.
//!
//! Truth tables are indexed by `(x1, x2, x3, x4)` with `x1` the most
//! significant bit. The constraint-matrix view has rows `(x1, x2)` in order
//! 00, 01, 10, 11 and columns `(x3, x4)` in order 00, 10, 01, 11.
//!
//! Everything here is floating-point complex. The identities other modules
//! depend on are re-expressed over the rationals in [`crate::transforms`].

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::params::ParamVec;

pub const TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum HolantError {
    #[error("basis matrix is singular (det = {0})")]
    Singular(Complex64),
    #[error("table length {0} is not a power of two")]
    BadLength(usize),
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A 2x2 complex change of basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Basis2(pub [[Complex64; 2]; 2]);

impl Basis2 {
    pub fn identity() -> Self {
        Self([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]])
    }

    /// `Z = (1/√2)[1 1; i −i]`.
    pub fn z() -> Self {
        let s = FRAC_1_SQRT_2;
        Self([[c(s, 0.0), c(s, 0.0)], [c(0.0, s), c(0.0, -s)]])
    }

    /// `H = (1/√2)[1 1; 1 −1]`.
    pub fn h() -> Self {
        let s = FRAC_1_SQRT_2;
        Self([[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]])
    }

    /// `HZ = (1/2)[1+i 1−i; 1−i 1+i]`, written out directly.
    pub fn hz() -> Self {
        Self([[c(0.5, 0.5), c(0.5, -0.5)], [c(0.5, -0.5), c(0.5, 0.5)]])
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn mul(&self, rhs: &Basis2) -> Basis2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[c(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Basis2(out)
    }

    pub fn inverse(&self) -> Result<Basis2, HolantError> {
        let det = self.det();
        if det.norm() < TOLERANCE {
            return Err(HolantError::Singular(det));
        }
        let m = &self.0;
        Ok(Basis2([
            [m[1][1] / det, -m[0][1] / det],
            [-m[1][0] / det, m[0][0] / det],
        ]))
    }

    pub fn transpose(&self) -> Basis2 {
        let m = &self.0;
        Basis2([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn max_abs_diff(&self, other: &Basis2) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }
}

/// A truth table of arity `n` (length `2^n`), `x1` most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct Table(pub Vec<Complex64>);

impl Table {
    pub fn arity(&self) -> Result<usize, HolantError> {
        let len = self.0.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(HolantError::BadLength(len));
        }
        Ok(len.trailing_zeros() as usize)
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self(values.iter().map(|&x| c(x, 0.0)).collect())
    }

    /// Applies `T` to every index: `f'_y = Σ_x ∏_j T[y_j][x_j] f_x`.
    /// Contracts one index at a time.
    pub fn transform(&self, t: &Basis2) -> Result<Table, HolantError> {
        let n = self.arity()?;
        let mut cur = self.0.clone();
        for j in 0..n {
            let bit = 1 << (n - 1 - j);
            let mut next = vec![c(0.0, 0.0); cur.len()];
            for (idx, out) in next.iter_mut().enumerate() {
                let y = usize::from(idx & bit != 0);
                let lo = idx & !bit;
                *out = t.0[y][0] * cur[lo] + t.0[y][1] * cur[lo | bit];
            }
            cur = next;
        }
        Ok(Table(cur))
    }

    /// Row-vector (covariant) transform `g (T^{-1})^{⊗n}`.
    pub fn covariant_transform(&self, t: &Basis2) -> Result<Table, HolantError> {
        self.transform(&t.inverse()?.transpose())
    }

    pub fn max_abs_diff(&self, other: &Table) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.0.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

/// An arity-4 constraint function.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticFunction(pub [Complex64; 16]);

/// Truth-table index of constraint-matrix cell `(row, col)`.
pub fn matrix_cell_index(row: usize, col: usize) -> usize {
    let (x1, x2) = (row >> 1 & 1, row & 1);
    let (x3, x4) = (col & 1, col >> 1 & 1);
    x1 << 3 | x2 << 2 | x3 << 1 | x4
}

impl QuarticFunction {
    pub fn constant(value: Complex64) -> Self {
        Self([value; 16])
    }

    pub fn from_table(t: &Table) -> Option<Self> {
        <[Complex64; 16]>::try_from(t.0.as_slice()).ok().map(Self)
    }

    pub fn table(&self) -> Table {
        Table(self.0.to_vec())
    }

    pub fn at(&self, x1: u8, x2: u8, x3: u8, x4: u8) -> Complex64 {
        self.0[(x1 as usize) << 3 | (x2 as usize) << 2 | (x3 as usize) << 1 | x4 as usize]
    }

    pub fn constraint_matrix(&self) -> [[Complex64; 4]; 4] {
        let mut m = [[c(0.0, 0.0); 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (col, cell) in row.iter_mut().enumerate() {
                *cell = self.0[matrix_cell_index(r, col)];
            }
        }
        m
    }

    pub fn from_constraint_matrix(m: [[Complex64; 4]; 4]) -> Self {
        let mut t = [c(0.0, 0.0); 16];
        for (r, row) in m.iter().enumerate() {
            for (col, &v) in row.iter().enumerate() {
                t[matrix_cell_index(r, col)] = v;
            }
        }
        Self(t)
    }
}

/// The eight-vertex constraint `M(f) = [d 0 0 a; 0 b c 0; 0 c b 0; a 0 0 d]`.
///
/// Read with 0/1 as green/red it is also the even-coloring constraint with
/// `(w, x, y, z) = (a, b, c, d)`.
pub fn constraint_from_params(p: &ParamVec) -> QuarticFunction {
    let [a, b, cc, d] = p.to_f64().map(|x| c(x, 0.0));
    let z = c(0.0, 0.0);
    QuarticFunction::from_constraint_matrix([
        [d, z, z, a],
        [z, b, cc, z],
        [z, cc, b, z],
        [a, z, z, d],
    ])
}

pub fn holo_transform(t: &Basis2, f: &QuarticFunction) -> Result<QuarticFunction, HolantError> {
    if t.det().norm() < TOLERANCE {
        return Err(HolantError::Singular(t.det()));
    }
    let out = f.table().transform(t)?;
    Ok(QuarticFunction::from_table(&out).expect("arity preserved"))
}

/// `f(x) = f(x̄)` for every input. Tolerance applies to floating inputs.
pub fn arrow_reversal_symmetric(t: &Table, tol: f64) -> Result<bool, HolantError> {
    let n = t.arity()?;
    let mask = (1 << n) - 1;
    Ok((0..t.0.len()).all(|i| (t.0[i] - t.0[i ^ mask]).norm() <= tol))
}

pub fn disequality() -> Table {
    Table::from_real(&[0.0, 1.0, 1.0, 0.0])
}

pub fn equality() -> Table {
    Table::from_real(&[1.0, 0.0, 0.0, 1.0])
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub lines: Vec<CheckLine>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }
}

fn line(name: &str, max_error: f64, tolerance: f64) -> CheckLine {
    CheckLine {
        name: name.to_string(),
        max_error,
        tolerance,
        passed: max_error <= tolerance,
    }
}

/// Checks `(≠₂)(T^{-1})^{⊗2} = (=₂)` for `T = z_like` and `(=₂)(H^{-1})^{⊗2} = (=₂)`.
pub fn binary_transform_check_with(z_like: &Basis2) -> CheckReport {
    let err_of = |g: &Table, t: &Basis2, target: &Table| match g.covariant_transform(t) {
        Ok(out) => out.max_abs_diff(target),
        Err(_) => f64::INFINITY,
    };
    CheckReport {
        lines: vec![
            line(
                "disequality under Z^-1 is equality",
                err_of(&disequality(), z_like, &equality()),
                TOLERANCE,
            ),
            line(
                "equality under H^-1 is equality",
                err_of(&equality(), &Basis2::h(), &equality()),
                TOLERANCE,
            ),
            line(
                "HZ = H*Z",
                Basis2::hz().max_abs_diff(&Basis2::h().mul(&Basis2::z())),
                TOLERANCE,
            ),
        ],
    }
}

pub fn binary_transform_check() -> CheckReport {
    binary_transform_check_with(&Basis2::z())
}

/// The closed forms of `M(Z^{⊗4} f)` and `M((HZ)^{⊗4} f)` for the
/// eight-vertex constraint, divided by 2 as written.
pub fn closed_form_z(p: [f64; 4]) -> [[f64; 4]; 4] {
    let [a, b, cc, d] = p;
    let (s, t, u, v) = (
        a + b + cc + d,
        -a + b + cc - d,
        a - b + cc - d,
        a + b - cc - d,
    );
    [
        [s, 0.0, 0.0, t],
        [0.0, u, v, 0.0],
        [0.0, v, u, 0.0],
        [t, 0.0, 0.0, s],
    ]
    .map(|r| r.map(|x| x / 2.0))
}

pub fn closed_form_hz(p: [f64; 4]) -> [[f64; 4]; 4] {
    let [a, b, cc, d] = p;
    let (s, t, u, v) = (
        a + b + cc - d,
        -a + b + cc + d,
        a - b + cc + d,
        a + b - cc + d,
    );
    [
        [s, 0.0, 0.0, t],
        [0.0, u, v, 0.0],
        [0.0, v, u, 0.0],
        [t, 0.0, 0.0, s],
    ]
    .map(|r| r.map(|x| x / 2.0))
}

fn matrix_error(f: &QuarticFunction, expected: [[f64; 4]; 4]) -> f64 {
    let m = f.constraint_matrix();
    let mut worst: f64 = 0.0;
    for r in 0..4 {
        for col in 0..4 {
            worst = worst.max((m[r][col] - c(expected[r][col], 0.0)).norm());
        }
    }
    worst
}

/// Max deviation of the transformed eight-vertex constraint from the
/// closed forms over `trials` random parameter vectors in `[0, 10)^4`.
pub fn closed_form_check(trials: usize, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut ez, mut ehz) = (0.0f64, 0.0f64);
    for _ in 0..trials {
        let p: [f64; 4] = std::array::from_fn(|_| rng.random_range(0.0..10.0));
        let f = QuarticFunction::from_constraint_matrix({
            let [a, b, cc, d] = p.map(|x| c(x, 0.0));
            let z = c(0.0, 0.0);
            [[d, z, z, a], [z, b, cc, z], [z, cc, b, z], [a, z, z, d]]
        });
        ez = ez.max(matrix_error(
            &holo_transform(&Basis2::z(), &f).unwrap(),
            closed_form_z(p),
        ));
        ehz = ehz.max(matrix_error(
            &holo_transform(&Basis2::hz(), &f).unwrap(),
            closed_form_hz(p),
        ));
    }
    CheckReport {
        lines: vec![
            line("M(Z^4 f) closed form", ez, 1e-10),
            line("M((HZ)^4 f) closed form", ehz, 1e-10),
        ],
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AppendixReport {
    pub arity: usize,
    pub trials: usize,
    /// Largest imaginary part seen over symmetric tables (want < 1e-10).
    pub symmetric_max_imag: f64,
    /// Smallest "largest imaginary part" over non-symmetric tables (want > 1e-6).
    pub asymmetric_min_max_imag: f64,
    pub passed: bool,
}

/// Random real tables: symmetric ones must map to real tables under
/// `Z^{⊗n}`, non-symmetric ones must not.
pub fn appendix_lemma_check(trials: usize, arity: usize, seed: u64) -> AppendixReport {
    assert!(arity == 2 || arity == 4, "arity must be 2 or 4");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = 1 << arity;
    let mask = len - 1;
    let z = Basis2::z();
    let mut sym_worst: f64 = 0.0;
    let mut asym_best = f64::INFINITY;
    for _ in 0..trials {
        let mut sym = vec![0.0; len];
        for i in 0..len / 2 {
            let v = rng.random_range(-1.0..1.0);
            sym[i] = v;
            sym[i ^ mask] = v;
        }
        let t = Table::from_real(&sym);
        sym_worst = sym_worst.max(t.transform(&z).unwrap().max_imag());

        let asym = loop {
            let v: Vec<f64> = (0..len).map(|_| rng.random_range(-1.0..1.0)).collect();
            let t = Table::from_real(&v);
            if !arrow_reversal_symmetric(&t, 1e-9).unwrap() {
                break t;
            }
        };
        asym_best = asym_best.min(asym.transform(&z).unwrap().max_imag());
    }
    AppendixReport {
        arity,
        trials,
        symmetric_max_imag: sym_worst,
        asymmetric_min_max_imag: asym_best,
        passed: sym_worst < 1e-10 && (trials == 0 || asym_best > 1e-6),
    }
}

//! Closed parameter regions over nonnegative `(a, b, c, d)`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::params::{ParamVec, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegionError {
    #[error("regions are defined on nonnegative parameters, got ({0})")]
    Negative(Box<ParamVec>),
    #[error("unknown region {0:?}")]
    Unknown(String),
}

/// Named regions. The `*Bar` forms reverse every inequality and stay
/// closed, so boundary points belong to both a region and its bar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Region {
    A,
    B,
    C,
    D,
    AD,
    BD,
    CD,
    X,
    Y,
    Z,
    ABar,
    BBar,
    CBar,
    DBar,
    ADBar,
    BDBar,
    CDBar,
    XBar,
    YBar,
    ZBar,
}

impl Region {
    pub const ALL: [Region; 20] = {
        use Region::*;
        [
            A, B, C, D, AD, BD, CD, X, Y, Z, ABar, BBar, CBar, DBar, ADBar, BDBar, CDBar, XBar,
            YBar, ZBar,
        ]
    };

    pub fn name(self) -> &'static str {
        use Region::*;
        match self {
            A => "A",
            B => "B",
            C => "C",
            D => "D",
            AD => "AD",
            BD => "BD",
            CD => "CD",
            X => "X",
            Y => "Y",
            Z => "Z",
            ABar => "Abar",
            BBar => "Bbar",
            CBar => "Cbar",
            DBar => "Dbar",
            ADBar => "ADbar",
            BDBar => "BDbar",
            CDBar => "CDbar",
            XBar => "Xbar",
            YBar => "Ybar",
            ZBar => "Zbar",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Region {
    type Err = RegionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Region::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| RegionError::Unknown(s.to_string()))
    }
}

/// `x_i ≤ sum of the other three`.
fn single_le(p: &[Rational; 4], i: usize) -> bool {
    let others: Rational = (0..4).filter(|&j| j != i).map(|j| &p[j]).sum();
    p[i] <= others
}

fn single_ge(p: &[Rational; 4], i: usize) -> bool {
    let others: Rational = (0..4).filter(|&j| j != i).map(|j| &p[j]).sum();
    p[i] >= others
}

/// For `i ∈ {a, b, c}`: `x_i + d` compared with the remaining pair.
fn pair_lhs_rhs(p: &[Rational; 4], i: usize) -> (Rational, Rational) {
    let lhs = &p[i] + &p[3];
    let rhs: Rational = (0..3).filter(|&j| j != i).map(|j| &p[j]).sum();
    (lhs, rhs)
}

fn square_le(p: &[Rational; 4], i: usize) -> bool {
    let others: Rational = (0..4).filter(|&j| j != i).map(|j| &p[j] * &p[j]).sum();
    &p[i] * &p[i] <= others
}

fn square_ge(p: &[Rational; 4], i: usize) -> bool {
    let others: Rational = (0..4).filter(|&j| j != i).map(|j| &p[j] * &p[j]).sum();
    &p[i] * &p[i] >= others
}

/// Exact membership test. Rejects vectors with a negative entry.
pub fn region(p: &ParamVec, r: Region) -> Result<bool, RegionError> {
    if p.0.iter().any(|x| *x < Rational::zero()) {
        return Err(RegionError::Negative(Box::new(p.clone())));
    }
    let v = &p.0;
    use Region::*;
    Ok(match r {
        A => single_le(v, 0),
        B => single_le(v, 1),
        C => single_le(v, 2),
        D => single_le(v, 3),
        ABar => single_ge(v, 0),
        BBar => single_ge(v, 1),
        CBar => single_ge(v, 2),
        DBar => single_ge(v, 3),
        AD | BD | CD => {
            let (l, rhs) = pair_lhs_rhs(v, r as usize - AD as usize);
            l <= rhs
        }
        ADBar | BDBar | CDBar => {
            let (l, rhs) = pair_lhs_rhs(v, r as usize - ADBar as usize);
            l >= rhs
        }
        X => (0..4).all(|i| single_le(v, i)),
        XBar => (0..4).any(|i| single_ge(v, i)),
        Y => (0..3).all(|i| {
            let (l, rhs) = pair_lhs_rhs(v, i);
            l <= rhs
        }),
        YBar => (0..3).any(|i| {
            let (l, rhs) = pair_lhs_rhs(v, i);
            l >= rhs
        }),
        Z => (0..4).all(|i| square_le(v, i)),
        ZBar => (0..4).any(|i| square_ge(v, i)),
    })
}

/// Membership in the intersection of `regions`. Negative vectors are
/// reported as non-members rather than errors.
pub fn in_all(p: &ParamVec, regions: &[Region]) -> bool {
    regions.iter().all(|&r| region(p, r).unwrap_or(false))
}

pub fn in_y_and_z(p: &ParamVec) -> bool {
    in_all(p, &[Region::Y, Region::Z])
}

pub fn format_regions(regions: &[Region]) -> String {
    regions
        .iter()
        .map(|r| r.name())
        .collect::<Vec<_>>()
        .join("∩")
}

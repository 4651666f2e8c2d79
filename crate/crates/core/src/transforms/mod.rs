//! Parameter maps that preserve the eight-vertex partition function.
//!
//! On planar graphs the maps generated by `M_Z^Pl` and `M_HZ^Pl` form a group
//! of order 6; on bipartite graphs `M_Z^Bi` and `M_HZ^Bi` generate a group of
//! order 12. Every element `M` satisfies `Z(G; p) = Z(G; M·p)` on the
//! matching graph class. All arithmetic here is exact.

mod matrix;
mod plan;
mod preimage;
mod regions;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use matrix::{HalfIntMatrix, MatrixError};
pub use plan::{
    plan_transform, sign_normalize, ElementDiagnostic, Flip, PlanFailure, SignError, TransformPlan,
};
pub use preimage::{
    containment_check, footnote_check, preimage_rows, preimage_spotcheck, ContainmentReport,
    FootnoteReport, PreimageReport, PreimageRow, RowReport, SignMap,
};
pub use regions::{format_regions, in_all, in_y_and_z, region, Region, RegionError};

use crate::params::ParamVec;

pub const CLOSURE_CAP: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphClass {
    Planar,
    Bipartite,
}

impl GraphClass {
    pub fn suffix(self) -> &'static str {
        match self {
            GraphClass::Planar => "Pl",
            GraphClass::Bipartite => "Bi",
        }
    }

    /// Generator names in search order.
    pub fn generator_names(self) -> [String; 2] {
        [
            format!("M_Z^{}", self.suffix()),
            format!("M_HZ^{}", self.suffix()),
        ]
    }

    pub fn generators(self) -> [HalfIntMatrix; 2] {
        match self {
            GraphClass::Planar => [m_z_planar(), m_hz_planar()],
            GraphClass::Bipartite => [m_z_bipartite(), m_hz_bipartite()],
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphClass::Planar => "planar",
            GraphClass::Bipartite => "bipartite",
        })
    }
}

impl FromStr for GraphClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "planar" => Ok(GraphClass::Planar),
            "bipartite" => Ok(GraphClass::Bipartite),
            other => Err(format!(
                "unknown graph class {other:?} (expected planar or bipartite)"
            )),
        }
    }
}

/// `Z(G; a,b,c,d)` in the eight-vertex model equals the even-coloring value at `M_Z·p`.
pub fn m_z() -> HalfIntMatrix {
    HalfIntMatrix::from_halves([[-1, 1, 1, -1], [1, -1, 1, -1], [1, 1, -1, -1], [1, 1, 1, 1]])
        .unwrap()
}

pub fn m_hz() -> HalfIntMatrix {
    HalfIntMatrix::from_halves([[-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, -1, 1], [1, 1, 1, -1]])
        .unwrap()
}

/// `(a, b, c, d) ↦ (b, a, d, c)`.
pub fn swap_p() -> HalfIntMatrix {
    HalfIntMatrix::from_ints([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]).unwrap()
}

pub fn m_z_planar() -> HalfIntMatrix {
    swap_p().mul(&m_z()).unwrap()
}

pub fn m_hz_planar() -> HalfIntMatrix {
    swap_p().mul(&m_hz()).unwrap()
}

pub fn m_z_bipartite() -> HalfIntMatrix {
    m_z()
}

pub fn m_hz_bipartite() -> HalfIntMatrix {
    m_hz()
}

/// `N_d`: negate `d`.
pub fn n_d() -> HalfIntMatrix {
    HalfIntMatrix::diag([1, 1, 1, -1])
}

/// `N`: negate everything.
pub fn n_all() -> HalfIntMatrix {
    HalfIntMatrix::diag([-1, -1, -1, -1])
}

pub fn apply(m: &HalfIntMatrix, p: &ParamVec) -> ParamVec {
    m.apply(p)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("closure exceeded {0} elements")]
    CapExceeded(usize),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("set is not closed under multiplication")]
    NotClosed,
    #[error("element has no finite order within the cap")]
    InfiniteOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupElement {
    pub matrix: HalfIntMatrix,
    /// Generator indices; the matrix is their left-to-right product.
    pub word: Vec<usize>,
    pub order: u32,
}

fn element_order(m: &HalfIntMatrix) -> Result<u32, GroupError> {
    let mut cur = m.clone();
    for k in 1..=CLOSURE_CAP as u32 {
        if cur.is_identity() {
            return Ok(k);
        }
        cur = cur.mul(m)?;
    }
    Err(GroupError::InfiniteOrder)
}

/// All products of `generators`, in breadth-first order from the identity
/// with right multiplication. The word kept for each element is the first
/// found: shortest, then lexicographically smallest.
pub fn group_closure(generators: &[HalfIntMatrix]) -> Result<Vec<GroupElement>, GroupError> {
    let mut seen: HashMap<HalfIntMatrix, usize> = HashMap::new();
    let mut out: Vec<(HalfIntMatrix, Vec<usize>)> = Vec::new();
    let id = HalfIntMatrix::identity();
    seen.insert(id.clone(), 0);
    out.push((id, Vec::new()));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (g, gen) in generators.iter().enumerate() {
            let next = out[i].0.mul(gen)?;
            if seen.contains_key(&next) {
                continue;
            }
            if out.len() >= CLOSURE_CAP {
                return Err(GroupError::CapExceeded(CLOSURE_CAP));
            }
            let mut word = out[i].1.clone();
            word.push(g);
            seen.insert(next.clone(), out.len());
            queue.push_back(out.len());
            out.push((next, word));
        }
    }
    out.into_iter()
        .map(|(matrix, word)| {
            Ok(GroupElement {
                order: element_order(&matrix)?,
                matrix,
                word,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupFingerprint {
    pub order: usize,
    pub abelian: bool,
    /// Element order → number of elements with that order.
    pub element_orders: BTreeMap<u32, usize>,
}

impl GroupFingerprint {
    pub fn is_s3(&self) -> bool {
        self.order == 6 && !self.abelian
    }

    pub fn is_d6(&self) -> bool {
        self.order == 12 && self.element_orders == BTreeMap::from([(1, 1), (2, 7), (3, 2), (6, 2)])
    }
}

pub fn group_fingerprint(elements: &[HalfIntMatrix]) -> Result<GroupFingerprint, GroupError> {
    let set: std::collections::HashSet<&HalfIntMatrix> = elements.iter().collect();
    let mut abelian = true;
    for x in elements {
        for y in elements {
            let xy = x.mul(y)?;
            if !set.contains(&xy) {
                return Err(GroupError::NotClosed);
            }
            if abelian && xy != y.mul(x)? {
                abelian = false;
            }
        }
    }
    let mut element_orders = BTreeMap::new();
    for x in elements {
        *element_orders.entry(element_order(x)?).or_default() += 1;
    }
    Ok(GroupFingerprint {
        order: set.len(),
        abelian,
        element_orders,
    })
}

/// One row of a group table: the element written as `Z^i · HZ^j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub label: String,
    pub z_power: u32,
    pub hz_power: u32,
    pub word: Vec<String>,
    pub matrix: HalfIntMatrix,
    pub order: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupTable {
    pub class: GraphClass,
    pub rows: Vec<TableRow>,
    pub fingerprint: GroupFingerprint,
}

fn power_label(names: &[String; 2], i: u32, j: u32) -> String {
    let z = match i {
        0 => String::new(),
        1 => names[0].clone(),
        k => format!("({})^{k}", names[0]),
    };
    let parts: Vec<String> = [
        z,
        if j == 1 {
            names[1].clone()
        } else {
            String::new()
        },
    ]
    .into_iter()
    .filter(|s| !s.is_empty())
    .collect();
    if parts.is_empty() {
        "I".to_string()
    } else {
        parts.join(" ")
    }
}

/// The group for a graph class, with rows sorted as `HZ^0` block then
/// `HZ^1` block, each by increasing power of `Z`.
pub fn group_table(class: GraphClass) -> Result<GroupTable, GroupError> {
    let [z, hz] = class.generators();
    let names = class.generator_names();
    let elements = group_closure(&[z.clone(), hz.clone()])?;
    let z_order = element_order(&z)?;
    let mut rows = Vec::with_capacity(elements.len());
    for el in &elements {
        let (i, j) = (0..z_order)
            .flat_map(|i| [(i, 0u32), (i, 1u32)])
            .find(|&(i, j)| {
                let zi = z.pow(i).unwrap();
                let m = if j == 1 { zi.mul(&hz).unwrap() } else { zi };
                m == el.matrix
            })
            .ok_or(GroupError::NotClosed)?;
        rows.push(TableRow {
            label: power_label(&names, i, j),
            z_power: i,
            hz_power: j,
            word: el.word.iter().map(|&g| names[g].clone()).collect(),
            matrix: el.matrix.clone(),
            order: el.order,
        });
    }
    rows.sort_by_key(|r| (r.hz_power, r.z_power));
    let matrices: Vec<HalfIntMatrix> = rows.iter().map(|r| r.matrix.clone()).collect();
    let fingerprint = group_fingerprint(&matrices)?;
    Ok(GroupTable {
        class,
        rows,
        fingerprint,
    })
}

/// Matrices transcribed from the published group tables, in table order.
pub fn reference_matrices(class: GraphClass) -> Vec<HalfIntMatrix> {
    match class {
        GraphClass::Planar => planar_reference(),
        GraphClass::Bipartite => bipartite_reference(),
    }
}

fn h(num: [[i64; 4]; 4]) -> HalfIntMatrix {
    HalfIntMatrix::from_halves(num).unwrap()
}

fn planar_reference() -> Vec<HalfIntMatrix> {
    vec![
        HalfIntMatrix::identity(),
        h([[1, -1, 1, -1], [-1, 1, 1, -1], [1, 1, 1, 1], [1, 1, -1, -1]]),
        h([[1, -1, 1, 1], [-1, 1, 1, 1], [1, 1, 1, -1], [-1, -1, 1, -1]]),
        h([[1, -1, 1, 1], [-1, 1, 1, 1], [1, 1, 1, -1], [1, 1, -1, 1]]),
        h([[1, -1, 1, -1], [-1, 1, 1, -1], [1, 1, 1, 1], [-1, -1, 1, 1]]),
        HalfIntMatrix::diag([1, 1, 1, -1]),
    ]
}

fn bipartite_reference() -> Vec<HalfIntMatrix> {
    let z = h([[-1, 1, 1, -1], [1, -1, 1, -1], [1, 1, -1, -1], [1, 1, 1, 1]]);
    let z2 = h([
        [1, -1, -1, -1],
        [-1, 1, -1, -1],
        [-1, -1, 1, -1],
        [1, 1, 1, -1],
    ]);
    let hz = h([[-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, -1, 1], [1, 1, 1, -1]]);
    let zhz = h([[1, -1, -1, 1], [-1, 1, -1, 1], [-1, -1, 1, 1], [1, 1, 1, 1]]);
    let z2hz = HalfIntMatrix::diag([-1, -1, -1, 1]);
    let id = HalfIntMatrix::identity();
    vec![
        id.clone(),
        z.clone(),
        z2.clone(),
        id.neg(),
        z.neg(),
        z2.neg(),
        hz.clone(),
        zhz.clone(),
        z2hz.clone(),
        hz.neg(),
        zhz.neg(),
        z2hz.neg(),
    ]
}

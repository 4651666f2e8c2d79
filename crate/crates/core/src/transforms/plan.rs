use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use super::{group_table, in_y_and_z, GraphClass, HalfIntMatrix};
use crate::params::ParamVec;

/// A sign change that leaves the partition function unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flip {
    /// `d ↦ −d`, valid on every graph.
    D,
    /// Negate all four, valid when the vertex count is even.
    All,
}

impl Flip {
    pub fn name(self) -> &'static str {
        match self {
            Flip::D => "d-flip",
            Flip::All => "all-flip",
        }
    }

    pub fn apply(self, p: &ParamVec) -> ParamVec {
        match self {
            Flip::D => p.flip_d(),
            Flip::All => p.negate(),
        }
    }
}

impl fmt::Display for Flip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Flip {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignError {
    #[error("no allowed sign flip makes ({0}) nonnegative")]
    Unreachable(Box<ParamVec>),
}

/// Finds a nonnegative vector in the orbit of `p` under the allowed flips,
/// trying no flip, `d`, all, then all followed by `d`.
pub fn sign_normalize(
    p: &ParamVec,
    even_vertex_count: bool,
) -> Result<(ParamVec, Vec<Flip>), SignError> {
    let mut candidates = vec![vec![], vec![Flip::D]];
    if even_vertex_count {
        candidates.push(vec![Flip::All]);
        candidates.push(vec![Flip::All, Flip::D]);
    }
    for flips in candidates {
        let q = flips.iter().fold(p.clone(), |acc, f| f.apply(&acc));
        if q.is_nonnegative() {
            return Ok((q, flips));
        }
    }
    Err(SignError::Unreachable(Box::new(p.clone())))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransformPlan {
    pub class: GraphClass,
    pub label: String,
    pub element_word: Vec<String>,
    pub matrix: HalfIntMatrix,
    /// `M·p` before sign normalization.
    pub raw_image: ParamVec,
    /// Nonnegative image in Y∩Z.
    pub image: ParamVec,
    pub flips: Vec<Flip>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementDiagnostic {
    pub label: String,
    pub raw_image: ParamVec,
    pub normalized: Option<ParamVec>,
    pub in_y_and_z: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[error("no element of the {class} group maps ({params}) into Y∩Z")]
pub struct PlanFailure {
    pub class: GraphClass,
    pub params: Box<ParamVec>,
    pub diagnostics: Vec<ElementDiagnostic>,
}

/// Searches the class's group for an element whose sign-normalized image
/// of `p` lies in Y∩Z. Candidates are ranked by number of flips, then word
/// length, then word order.
///
/// Planar graphs may have an odd number of vertices, so only `d`-flips are
/// (flips, word length, word)
type PlanRank = (usize, usize, Vec<String>);

/// used there.
pub fn plan_transform(p: &ParamVec, class: GraphClass) -> Result<TransformPlan, PlanFailure> {
    let table = group_table(class).expect("generator groups are finite");
    let even = class == GraphClass::Bipartite;
    let mut diagnostics = Vec::new();
    let mut best: Option<(PlanRank, TransformPlan)> = None;
    for row in &table.rows {
        let raw = row.matrix.apply(p);
        let normalized = sign_normalize(&raw, even).ok();
        let inside = normalized.as_ref().is_some_and(|(q, _)| in_y_and_z(q));
        diagnostics.push(ElementDiagnostic {
            label: row.label.clone(),
            raw_image: raw.clone(),
            normalized: normalized.as_ref().map(|(q, _)| q.clone()),
            in_y_and_z: inside,
        });
        if !inside {
            continue;
        }
        let (image, flips) = normalized.expect("checked above");
        let key = (flips.len(), row.word.len(), row.word.clone());
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((
                key,
                TransformPlan {
                    class,
                    label: row.label.clone(),
                    element_word: row.word.clone(),
                    matrix: row.matrix.clone(),
                    raw_image: raw,
                    image,
                    flips,
                },
            ));
        }
    }
    best.map(|(_, plan)| plan).ok_or(PlanFailure {
        class,
        params: Box::new(p.clone()),
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::int;

    fn p(v: [i64; 4]) -> ParamVec {
        ParamVec::from_ints(v)
    }

    #[test]
    fn sign_examples() {
        assert_eq!(
            sign_normalize(&p([1, 1, 1, -2]), false).unwrap(),
            (p([1, 1, 1, 2]), vec![Flip::D])
        );
        assert_eq!(
            sign_normalize(&p([1, 1, 1, -2]), true).unwrap(),
            (p([1, 1, 1, 2]), vec![Flip::D])
        );
        assert_eq!(
            sign_normalize(&p([-1, -1, -1, 2]), true).unwrap(),
            (p([1, 1, 1, 2]), vec![Flip::All, Flip::D])
        );
        assert!(sign_normalize(&p([-1, 1, 1, 1]), false).is_err());
        assert!(sign_normalize(&p([-1, -1, -1, 2]), false).is_err());
        assert_eq!(
            sign_normalize(&p([1, 2, 3, 4]), false).unwrap(),
            (p([1, 2, 3, 4]), vec![])
        );
    }

    #[test]
    fn planar_plan() {
        let plan = plan_transform(&p([1, 1, 5, 1]), GraphClass::Planar).unwrap();
        assert_eq!(plan.label, "(M_Z^Pl)^2");
        assert_eq!(plan.image, p([3, 3, 3, 1]));
        assert!(plan.flips.is_empty());
    }

    #[test]
    fn bipartite_plan() {
        let plan = plan_transform(&p([1, 1, 1, 5]), GraphClass::Bipartite).unwrap();
        assert_eq!(plan.label, "(M_Z^Bi)^5");
        assert_eq!(plan.image, p([3, 3, 3, 1]));
        assert!(plan.flips.is_empty());
    }

    #[test]
    fn identity_plan() {
        for class in [GraphClass::Planar, GraphClass::Bipartite] {
            let plan = plan_transform(&ParamVec::uniform(), class).unwrap();
            assert_eq!(plan.label, "I");
            assert!(plan.element_word.is_empty());
            assert_eq!(plan.image, ParamVec::uniform());
        }
    }

    #[test]
    fn failure_carries_diagnostics() {
        // No planar image of (1,0,0,0) normalizes into Y.
        let e = plan_transform(
            &ParamVec::new(int(1), int(0), int(0), int(0)),
            GraphClass::Planar,
        )
        .unwrap_err();
        assert_eq!(e.diagnostics.len(), 6);
        assert!(e.diagnostics.iter().all(|d| !d.in_y_and_z));
        let err = plan_transform(&p([10, 1, 1, 1]), GraphClass::Planar).unwrap_err();
        assert_eq!(err.diagnostics.len(), 6);
    }

    #[test]
    fn json_shape() {
        let plan = plan_transform(&p([1, 1, 5, 1]), GraphClass::Planar).unwrap();
        let v = serde_json::to_value(&plan).unwrap();
        assert_eq!(v["image"], serde_json::json!(["3", "3", "3", "1"]));
        assert_eq!(v["element_word"], serde_json::json!(["M_Z^Pl", "M_Z^Pl"]));
        assert_eq!(v["matrix"][0][0], "1/2");
    }
}

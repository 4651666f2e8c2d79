//! Sampling checks of the preimage regions listed for each group element.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{format_regions, group_table, in_all, m_hz_planar, GraphClass, HalfIntMatrix, Region};
use crate::params::{ParamVec, Rational};

pub const SAMPLE_DENOMINATOR: i64 = 1 << 16;
pub const MAX_ATTEMPTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SignMap {
    /// `N_d`: negate `d`.
    Nd,
    /// `N`: negate all four.
    N,
}

impl SignMap {
    pub fn apply(self, p: &ParamVec) -> ParamVec {
        match self {
            SignMap::Nd => p.flip_d(),
            SignMap::N => p.negate(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            SignMap::Nd => "N_d",
            SignMap::N => "N",
        }
    }
}

/// The preimage of Y under one group element: `wrapper(∩ regions)`, where
/// the wrapper maps are applied innermost first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreimageRow {
    pub class: GraphClass,
    pub label: String,
    pub matrix: HalfIntMatrix,
    pub regions: Vec<Region>,
    pub wrapper: Vec<SignMap>,
}

impl PreimageRow {
    pub fn describe(&self) -> String {
        let mut s = format_regions(&self.regions);
        for w in &self.wrapper {
            s = format!("{}({s})", w.name());
        }
        s
    }

    fn wrap(&self, q: &ParamVec) -> ParamVec {
        self.wrapper.iter().fold(q.clone(), |acc, w| w.apply(&acc))
    }

    fn unwrap(&self, p: &ParamVec) -> ParamVec {
        self.wrapper
            .iter()
            .rev()
            .fold(p.clone(), |acc, w| w.apply(&acc))
    }
}

/// Region data per row, keyed by `(Z power, HZ power)` in table order.
pub fn preimage_rows(class: GraphClass) -> Vec<PreimageRow> {
    use Region::*;
    use SignMap::*;
    let cross = vec![AD, BD, CDBar, C];
    let s = vec![ADBar, BDBar, CDBar, D];
    let data: Vec<(u32, u32, Vec<Region>, Vec<SignMap>)> = match class {
        GraphClass::Planar => vec![
            (0, 0, vec![Y], vec![]),
            (1, 0, cross.clone(), vec![Nd]),
            (2, 0, vec![CBar], vec![]),
            (0, 1, cross, vec![]),
            (1, 1, vec![CBar], vec![Nd]),
            (2, 1, vec![Y], vec![Nd]),
        ],
        GraphClass::Bipartite => vec![
            (0, 0, vec![Y], vec![]),
            (1, 0, s.clone(), vec![Nd]),
            (2, 0, vec![DBar], vec![N]),
            (3, 0, vec![Y], vec![N]),
            (4, 0, s.clone(), vec![Nd, N]),
            (5, 0, vec![DBar], vec![]),
            (0, 1, s.clone(), vec![]),
            (1, 1, vec![DBar], vec![Nd, N]),
            (2, 1, vec![Y], vec![Nd, N]),
            (3, 1, s, vec![N]),
            (4, 1, vec![DBar], vec![Nd]),
            (5, 1, vec![Y], vec![Nd]),
        ],
    };
    let table = group_table(class).expect("finite group");
    data.into_iter()
        .map(|(i, j, regions, wrapper)| {
            let row = table
                .rows
                .iter()
                .find(|r| r.z_power == i && r.hz_power == j)
                .expect("every power appears in the table");
            PreimageRow {
                class,
                label: row.label.clone(),
                matrix: row.matrix.clone(),
                regions,
                wrapper,
            }
        })
        .collect()
}

fn random_point(rng: &mut ChaCha8Rng) -> ParamVec {
    ParamVec(std::array::from_fn(|_| {
        Rational::new(
            BigInt::from(rng.random_range(0..=SAMPLE_DENOMINATOR)),
            BigInt::from(SAMPLE_DENOMINATOR),
        )
    }))
}

/// Rejection sample from the unit box; `None` after [`MAX_ATTEMPTS`] misses.
fn sample_in(regions: &[Region], rng: &mut ChaCha8Rng) -> Option<ParamVec> {
    (0..MAX_ATTEMPTS)
        .map(|_| random_point(rng))
        .find(|p| in_all(p, regions))
}

#[derive(Debug, Clone, Serialize)]
pub struct RowReport {
    pub class: GraphClass,
    pub label: String,
    pub preimage: String,
    pub samples: usize,
    /// Points of the stated preimage whose image leaves Y.
    pub forward_failures: usize,
    /// Points of Y whose pullback leaves the stated preimage.
    pub converse_failures: usize,
    /// Samples abandoned after too many rejections.
    pub exhausted: usize,
    pub first_failure: Option<ParamVec>,
}

impl RowReport {
    pub fn passed(&self) -> bool {
        self.forward_failures == 0 && self.converse_failures == 0 && self.exhausted == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PreimageReport {
    pub rows: Vec<RowReport>,
}

impl PreimageReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(RowReport::passed)
    }
}

fn check_row(row: &PreimageRow, samples: usize, seed: u64) -> RowReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inverse = row.matrix.inverse().expect("group elements are invertible");
    let mut report = RowReport {
        class: row.class,
        label: row.label.clone(),
        preimage: row.describe(),
        samples,
        forward_failures: 0,
        converse_failures: 0,
        exhausted: 0,
        first_failure: None,
    };
    for _ in 0..samples {
        match sample_in(&row.regions, &mut rng) {
            None => report.exhausted += 1,
            Some(q) => {
                let image = row.matrix.apply(&row.wrap(&q));
                if !in_all(&image, &[Region::Y]) {
                    report.forward_failures += 1;
                    report.first_failure.get_or_insert(q);
                }
            }
        }
        match sample_in(&[Region::Y], &mut rng) {
            None => report.exhausted += 1,
            Some(y) => {
                let q = row.unwrap(&inverse.apply(&y));
                if !in_all(&q, &row.regions) {
                    report.converse_failures += 1;
                    report.first_failure.get_or_insert(y);
                }
            }
        }
    }
    report
}

/// For every row of both tables: `samples_per_row` points drawn from the
/// stated preimage must map into Y, and as many points of Y must pull back
/// into the stated preimage.
pub fn preimage_spotcheck(samples_per_row: usize, seed: u64) -> PreimageReport {
    let rows: Vec<PreimageRow> = [GraphClass::Planar, GraphClass::Bipartite]
        .into_iter()
        .flat_map(preimage_rows)
        .collect();
    let rows = rows
        .par_iter()
        .enumerate()
        .map(|(i, row)| {
            check_row(
                row,
                samples_per_row,
                seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
            )
        })
        .collect();
    PreimageReport { rows }
}

#[derive(Debug, Clone, Serialize)]
pub struct FootnoteReport {
    pub samples: usize,
    /// Pullbacks of Y∩Z under `M_HZ^Pl` that leave AD∩BD∩CDbar∩C.
    pub outside_cross_region: usize,
    /// Pullbacks that leave Zbar.
    pub outside_zbar: usize,
    pub zbar_counterexample: Option<ParamVec>,
}

/// Pulls points of Y∩Z back through `M_HZ^Pl` and tests the claimed
/// containment in AD∩BD∩CDbar∩C∩Zbar part by part.
pub fn footnote_check(samples: usize, seed: u64) -> FootnoteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inverse = m_hz_planar().inverse().expect("invertible");
    let mut report = FootnoteReport {
        samples: 0,
        outside_cross_region: 0,
        outside_zbar: 0,
        zbar_counterexample: None,
    };
    for _ in 0..samples {
        let Some(y) = sample_in(&[Region::Y, Region::Z], &mut rng) else {
            continue;
        };
        report.samples += 1;
        let x = inverse.apply(&y);
        if !in_all(&x, &[Region::AD, Region::BD, Region::CDBar, Region::C]) {
            report.outside_cross_region += 1;
        }
        if !in_all(&x, &[Region::ZBar]) {
            report.outside_zbar += 1;
            report.zbar_counterexample.get_or_insert(x);
        }
    }
    report
}

#[derive(Debug, Clone, Serialize)]
pub struct ContainmentReport {
    pub samples: usize,
    pub violations: Vec<(String, ParamVec)>,
}

/// Y ⊆ X, Z ⊆ X, AD ⊆ A∩D, BD ⊆ B∩D, CD ⊆ C∩D on random points of the unit box.
pub fn containment_check(samples: usize, seed: u64) -> ContainmentReport {
    use Region::*;
    let pairs: [(Region, &[Region], &str); 5] = [
        (Y, &[X], "Y ⊆ X"),
        (Z, &[X], "Z ⊆ X"),
        (AD, &[A, D], "AD ⊆ A∩D"),
        (BD, &[B, D], "BD ⊆ B∩D"),
        (CD, &[C, D], "CD ⊆ C∩D"),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for _ in 0..samples {
        let p = random_point(&mut rng);
        for (inner, outer, name) in &pairs {
            if in_all(&p, &[*inner]) && !in_all(&p, outer) {
                violations.push((name.to_string(), p.clone()));
            }
        }
    }
    ContainmentReport {
        samples,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_shapes() {
        let planar = preimage_rows(GraphClass::Planar);
        assert_eq!(planar.len(), 6);
        assert_eq!(planar[1].describe(), "N_d(AD∩BD∩CDbar∩C)");
        let bi = preimage_rows(GraphClass::Bipartite);
        assert_eq!(bi.len(), 12);
        assert_eq!(bi[4].describe(), "N(N_d(ADbar∩BDbar∩CDbar∩D))");
        assert_eq!(bi[5].label, "(M_Z^Bi)^5");
    }

    #[test]
    fn every_row_maps_into_y() {
        let report = preimage_spotcheck(100, 1);
        for row in &report.rows {
            assert!(row.passed(), "{row:?}");
        }
        assert_eq!(report.rows.len(), 18);
    }

    #[test]
    fn wrong_region_is_caught() {
        // Swap the two nontrivial planar rows' regions: must fail.
        let mut row = preimage_rows(GraphClass::Planar)[2].clone();
        row.regions = vec![Region::DBar];
        let r = check_row(&row, 50, 3);
        assert!(r.forward_failures > 0);
    }

    #[test]
    fn containments_hold() {
        let r = containment_check(1000, 5);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
    }

    #[test]
    fn footnote_zbar_part_fails() {
        let r = footnote_check(200, 9);
        assert_eq!(r.outside_cross_region, 0);
        assert!(r.outside_zbar > 0);
        // (1,1,1,1) is fixed by M_HZ^Pl and lies strictly inside Z.
        let one = ParamVec::uniform();
        assert_eq!(m_hz_planar().apply(&one), one);
        assert!(!in_all(&one, &[Region::ZBar]));
    }
}

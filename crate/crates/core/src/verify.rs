//! Composite verification suites over the exact oracles and tables.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exact::{census_8v, census_ec, count_even_naive, Census};
use crate::graph::{gen_k44, gen_octahedron, gen_torus, LabeledGraph};
use crate::holant::{appendix_lemma_check, binary_transform_check, closed_form_check};
use crate::mcmc::{exact_chain_diagnostics, ChainConfig};
use crate::params::{rational, ParamVec};
use crate::states::{
    canonical_bipartite_orientation, canonical_planar_orientation, class_profile_coloring,
    class_profile_orientation, enumerate_even_orientations, face_two_coloring, Coloring,
    Orientation, DEFAULT_ENUMERATION_CAP,
};
use crate::transforms::{
    containment_check, group_table, in_y_and_z, m_hz_planar, m_z_bipartite, m_z_planar,
    preimage_spotcheck, reference_matrices, GraphClass, HalfIntMatrix,
};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    /// One line per check: `suite  check  PASS|FAIL  detail`.
    pub fn table(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            for c in &s.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                out.push_str(&format!(
                    "{:<10} {:<44} {status}  {}\n",
                    s.suite.to_string(),
                    c.name,
                    c.detail
                ));
            }
        }
        out.push_str(if self.passed() {
            "overall: PASS\n"
        } else {
            "overall: FAIL\n"
        });
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Holant,
    Groups,
    Bijection,
    Signs,
    Counting,
    Invariance,
    Preimage,
    Chain,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Holant,
        Suite::Groups,
        Suite::Bijection,
        Suite::Signs,
        Suite::Counting,
        Suite::Invariance,
        Suite::Preimage,
        Suite::Chain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Holant => "holant",
            Suite::Groups => "groups",
            Suite::Bijection => "bijection",
            Suite::Signs => "signs",
            Suite::Counting => "counting",
            Suite::Invariance => "invariance",
            Suite::Preimage => "preimage",
            Suite::Chain => "chain",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

pub struct TestGraph {
    pub name: &'static str,
    pub graph: LabeledGraph,
    pub planar: bool,
    pub bipartite: bool,
}

/// The fixed graph corpus the suites run over.
pub fn test_graphs() -> Vec<TestGraph> {
    vec![
        TestGraph {
            name: "octahedron",
            graph: gen_octahedron(),
            planar: true,
            bipartite: false,
        },
        TestGraph {
            name: "torus2x2",
            graph: gen_torus(2, 2),
            planar: true,
            bipartite: true,
        },
        TestGraph {
            name: "torus2x4",
            graph: gen_torus(2, 4),
            planar: true,
            bipartite: true,
        },
        TestGraph {
            name: "torus4x4",
            graph: gen_torus(4, 4),
            planar: true,
            bipartite: true,
        },
        TestGraph {
            name: "k44",
            graph: gen_k44(),
            planar: false,
            bipartite: true,
        },
    ]
}

pub fn random_nonnegative(rng: &mut ChaCha8Rng) -> ParamVec {
    ParamVec(std::array::from_fn(|_| {
        rational(rng.random_range(0..=30), rng.random_range(1..=7))
    }))
}

pub fn random_signed(rng: &mut ChaCha8Rng) -> ParamVec {
    ParamVec(std::array::from_fn(|_| {
        rational(rng.random_range(-30..=30), rng.random_range(1..=7))
    }))
}

/// (A,B,C,D) → (B,A,D,C) on class counts.
fn swap_profile(p: [u32; 4]) -> [u32; 4] {
    [p[1], p[0], p[3], p[2]]
}

pub fn holant_suite(seed: u64) -> Vec<Check> {
    let binary = binary_transform_check();
    let closed = closed_form_check(100, seed);
    let appendix = appendix_lemma_check(100, 4, seed);
    let worst =
        |r: &crate::holant::CheckReport| r.lines.iter().map(|l| l.max_error).fold(0.0, f64::max);
    vec![
        Check::new(
            "binary transform (≠2)(Z^-1)^2 = (=2)",
            binary.passed(),
            format!("max error {:.2e}", worst(&binary)),
        ),
        Check::new(
            "closed forms for Z and HZ, 100 trials",
            closed.passed(),
            format!("max error {:.2e}", worst(&closed)),
        ),
        Check::new(
            "arrow reversal iff real image, arity 4",
            appendix.passed,
            format!(
                "symmetric max imag {:.2e}, non-symmetric min {:.2e}",
                appendix.symmetric_max_imag, appendix.asymmetric_min_max_imag
            ),
        ),
    ]
}

pub fn groups_suite() -> Vec<Check> {
    let mut checks = Vec::new();
    for class in [GraphClass::Planar, GraphClass::Bipartite] {
        match group_table(class) {
            Ok(t) => {
                let got: Vec<HalfIntMatrix> = t.rows.iter().map(|r| r.matrix.clone()).collect();
                let expected = reference_matrices(class);
                let mismatched = got.iter().zip(&expected).filter(|(a, b)| a != b).count();
                checks.push(Check::new(
                    format!("{class} table matches reference"),
                    got.len() == expected.len() && mismatched == 0,
                    format!("{} rows, {mismatched} mismatched", got.len()),
                ));
                let (ok, name) = match class {
                    GraphClass::Planar => (t.fingerprint.is_s3(), "S3"),
                    GraphClass::Bipartite => (t.fingerprint.is_d6(), "D6"),
                };
                checks.push(Check::new(
                    format!("{class} fingerprint is {name}"),
                    ok,
                    format!(
                        "order {}, abelian {}, orders {:?}",
                        t.fingerprint.order, t.fingerprint.abelian, t.fingerprint.element_orders
                    ),
                ));
            }
            Err(e) => checks.push(Check::new(format!("{class} table"), false, e.to_string())),
        }
    }
    let cube = m_z_bipartite().pow(3);
    checks.push(Check::new(
        "(M_Z^Bi)^3 = -I",
        cube.as_ref()
            .is_ok_and(|m| *m == HalfIntMatrix::identity().neg()),
        "",
    ));
    let last = m_z_planar().pow(2).and_then(|m| m.mul(&m_hz_planar()));
    checks.push(Check::new(
        "(M_Z^Pl)^2 M_HZ^Pl = diag(1,1,1,-1)",
        last.as_ref()
            .is_ok_and(|m| *m == HalfIntMatrix::diag([1, 1, 1, -1])),
        "",
    ));
    checks
}

/// Per-state class-multiset check of the orientation→coloring bijection
/// against `tau_c`, plus injectivity and image = all even colorings.
fn bijection_check(
    name: &str,
    g: &LabeledGraph,
    tau_c: &Orientation,
    swap: bool,
    ec: &Census,
) -> Check {
    let states = match enumerate_even_orientations(g, DEFAULT_ENUMERATION_CAP) {
        Ok(s) => s,
        Err(e) => return Check::new(name, false, e.to_string()),
    };
    let mut seen: HashSet<Coloring> = HashSet::new();
    let mut bad_profile = 0u64;
    let mut odd_colorings = 0u64;
    let mut total = 0u64;
    for tau in states {
        total += 1;
        let sigma = Coloring(tau.0.xor(&tau_c.0));
        let (Ok(po), Ok(pc)) = (
            class_profile_orientation(g, &tau),
            class_profile_coloring(g, &sigma),
        ) else {
            odd_colorings += 1;
            continue;
        };
        let expected = if swap { swap_profile(po) } else { po };
        if pc != expected {
            bad_profile += 1;
        }
        seen.insert(sigma);
    }
    let injective = seen.len() as u64 == total;
    let onto = seen.len() as u128 == ec.total();
    Check::new(
        name,
        bad_profile == 0 && odd_colorings == 0 && injective && onto,
        format!("{total} states, {bad_profile} profile mismatches, {odd_colorings} odd images, image size {} of {}", seen.len(), ec.total()),
    )
}

pub fn bijection_suite(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for tg in test_graphs() {
        let g = &tg.graph;
        let (c8, cec) = match (census_8v(g), census_ec(g)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                checks.push(Check::new(
                    format!("{} census", tg.name),
                    false,
                    e.to_string(),
                ));
                continue;
            }
        };
        let mut classes = Vec::new();
        if tg.planar {
            match face_two_coloring(g).and_then(|fc| canonical_planar_orientation(g, &fc)) {
                Ok(t) => classes.push((GraphClass::Planar, t)),
                Err(e) => checks.push(Check::new(
                    format!("{} planar canonical", tg.name),
                    false,
                    e.to_string(),
                )),
            }
        }
        if tg.bipartite {
            match canonical_bipartite_orientation(g) {
                Ok(t) => classes.push((GraphClass::Bipartite, t)),
                Err(e) => checks.push(Check::new(
                    format!("{} bipartite canonical", tg.name),
                    false,
                    e.to_string(),
                )),
            }
        }
        for (class, tau_c) in classes {
            let swap = class == GraphClass::Planar;
            checks.push(bijection_check(
                &format!("{} {class} per-state", tg.name),
                g,
                &tau_c,
                swap,
                &cec,
            ));
            let mut mismatches = 0;
            for _ in 0..5 {
                let p = random_nonnegative(&mut rng);
                let q = if swap { p.swap_planar() } else { p.clone() };
                if c8.evaluate(&p) != cec.evaluate(&q) {
                    mismatches += 1;
                }
            }
            let form = if swap {
                "Z_8V(a,b,c,d) = Z_EC(b,a,d,c)"
            } else {
                "Z_8V(a,b,c,d) = Z_EC(a,b,c,d)"
            };
            checks.push(Check::new(
                format!("{} {form}", tg.name),
                mismatches == 0,
                format!("{mismatches}/5 mismatches"),
            ));
        }
    }
    checks
}

pub fn signs_suite(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for tg in test_graphs() {
        let census = match census_8v(&tg.graph) {
            Ok(c) => c,
            Err(e) => {
                checks.push(Check::new(
                    format!("{} census", tg.name),
                    false,
                    e.to_string(),
                ));
                continue;
            }
        };
        let even = tg.graph.vertex_count() % 2 == 0;
        let (mut d_bad, mut all_bad) = (0, 0);
        for _ in 0..20 {
            let p = random_signed(&mut rng);
            let z = census.evaluate(&p);
            if z != census.evaluate(&p.flip_d()) {
                d_bad += 1;
            }
            if even && z != census.evaluate(&p.negate()) {
                all_bad += 1;
            }
        }
        checks.push(Check::new(
            format!("{} d-flip", tg.name),
            d_bad == 0,
            format!("{d_bad}/20 mismatches"),
        ));
        if even {
            checks.push(Check::new(
                format!("{} all-flip", tg.name),
                all_bad == 0,
                format!("{all_bad}/20 mismatches"),
            ));
        }
    }
    checks
}

pub fn counting_suite() -> Vec<Check> {
    test_graphs()
        .into_iter()
        .filter(|tg| tg.graph.edge_count() <= 16)
        .map(|tg| {
            let expected = 1u64 << tg.graph.cycle_space_dim();
            match count_even_naive(&tg.graph) {
                Ok((o, c)) => Check::new(
                    format!("{} |O_e| = |C_e| = 2^(m-n+k)", tg.name),
                    o == expected && c == expected,
                    format!("orientations {o}, colorings {c}, formula {expected}"),
                ),
                Err(e) => Check::new(tg.name, false, e.to_string()),
            }
        })
        .collect()
}

/// `Z(G; p) = Z(G; M p)` for every element of the class group and
/// `per_element` random nonnegative `p`, evaluated on one shared census.
pub fn invariance_check(
    name: &str,
    g: &LabeledGraph,
    class: GraphClass,
    per_element: usize,
    seed: u64,
) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (census, table) = match (census_8v(g), group_table(class)) {
        (Ok(c), Ok(t)) => (c, t),
        (Err(e), _) => return Check::new(name, false, e.to_string()),
        (_, Err(e)) => return Check::new(name, false, e.to_string()),
    };
    let mut mismatches = Vec::new();
    let mut total = 0;
    for row in &table.rows {
        for _ in 0..per_element {
            let p = random_nonnegative(&mut rng);
            total += 1;
            if census.evaluate(&p) != census.evaluate(&row.matrix.apply(&p)) {
                mismatches.push(format!("{} at ({p})", row.label));
            }
        }
    }
    Check::new(
        name,
        mismatches.is_empty(),
        format!(
            "{} elements, {total} evaluations, {} mismatches{}",
            table.rows.len(),
            mismatches.len(),
            mismatches
                .first()
                .map(|m| format!(", first {m}"))
                .unwrap_or_default()
        ),
    )
}

pub fn invariance_suite(seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    for (i, tg) in test_graphs().into_iter().enumerate() {
        for (ok, class) in [
            (tg.planar, GraphClass::Planar),
            (tg.bipartite, GraphClass::Bipartite),
        ] {
            if ok {
                let name = format!("{} {class} group", tg.name);
                checks.push(invariance_check(
                    &name,
                    &tg.graph,
                    class,
                    10,
                    seed ^ (i as u64) << 8 ^ class as u64,
                ));
            }
        }
    }
    checks
}

pub fn preimage_suite(seed: u64) -> Vec<Check> {
    let report = preimage_spotcheck(100, seed);
    let mut checks: Vec<Check> = report
        .rows
        .iter()
        .map(|r| {
            Check::new(
                format!("{} {} from {}", r.class, r.label, r.preimage),
                r.passed(),
                format!(
                    "{} forward, {} converse, {} exhausted",
                    r.forward_failures, r.converse_failures, r.exhausted
                ),
            )
        })
        .collect();
    let c = containment_check(1000, seed);
    checks.push(Check::new(
        "region containments",
        c.violations.is_empty(),
        format!("{} violations", c.violations.len()),
    ));
    checks
}

/// Parameter points used for the exact chain diagnostics; all lie in Y∩Z.
pub fn chain_points() -> Vec<ParamVec> {
    let half = ParamVec::new(
        rational(1, 1),
        rational(1, 1),
        rational(1, 1),
        rational(1, 2),
    );
    vec![
        ParamVec::uniform(),
        ParamVec::from_ints([2, 2, 3, 1]),
        ParamVec::from_ints([3, 3, 3, 1]),
        ParamVec::from_ints([2, 2, 2, 1]),
        half,
    ]
}

pub fn chain_suite(seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    for (name, g) in [("octahedron", gen_octahedron()), ("k44", gen_k44())] {
        for p in chain_points() {
            let label = format!("{name} at ({p})");
            if !in_y_and_z(&p) {
                checks.push(Check::new(label, false, "point is outside Y∩Z"));
                continue;
            }
            match exact_chain_diagnostics(&g, &p, &ChainConfig::new(seed), 0.01, 1_000_000) {
                Ok(d) => checks.push(Check::new(
                    label,
                    d.passed(),
                    format!(
                        "{} states, balance violations {}, stationary {}, TV<0.01 after {}",
                        d.states,
                        d.balance_violations,
                        d.stationary,
                        d.steps_to_threshold
                            .map(|s| s.to_string())
                            .unwrap_or_else(|| "never".into())
                    ),
                )),
                Err(e) => checks.push(Check::new(label, false, e.to_string())),
            }
        }
    }
    checks
}

pub fn run_suite(suite: Suite, seed: u64) -> SuiteReport {
    let checks = match suite {
        Suite::Holant => holant_suite(seed),
        Suite::Groups => groups_suite(),
        Suite::Bijection => bijection_suite(seed),
        Suite::Signs => signs_suite(seed),
        Suite::Counting => counting_suite(),
        Suite::Invariance => invariance_suite(seed),
        Suite::Preimage => preimage_suite(seed),
        Suite::Chain => chain_suite(seed),
    };
    SuiteReport { suite, checks }
}

pub fn verify(suites: &[Suite], seed: u64) -> VerifyReport {
    VerifyReport {
        seed,
        suites: suites.iter().map(|&s| run_suite(s, seed)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_points_are_inside() {
        assert!(chain_points().iter().all(in_y_and_z));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn fast_suites_pass() {
        let r = verify(
            &[
                Suite::Holant,
                Suite::Groups,
                Suite::Counting,
                Suite::Preimage,
            ],
            7,
        );
        assert!(r.passed(), "{}", r.table());
        assert!(r.table().ends_with("overall: PASS\n"));
    }

    #[test]
    fn swapped_canonical_breaks_bijection_check() {
        // Against the bipartite canonical orientation a planar graph's classes are not swapped.
        let g = gen_torus(2, 4);
        let tau = canonical_bipartite_orientation(&g).unwrap();
        let ec = census_ec(&g).unwrap();
        assert!(bijection_check("x", &g, &tau, false, &ec).passed);
        assert!(!bijection_check("x", &g, &tau, true, &ec).passed);
    }
}

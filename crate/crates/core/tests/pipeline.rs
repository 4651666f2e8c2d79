use eightvertex::estimator::{anchor_z, estimate_z8v, EstimateMethod, EstimatorConfig};
use eightvertex::graph::{gen_k44, gen_octahedron, gen_torus, parse_graph, serialize_graph};
use eightvertex::transforms::{plan_transform, GraphClass};
use eightvertex::verify::{verify, Suite};
use eightvertex::{census_8v, z8v_exact, ParamVec, Rational};
use num_traits::ToPrimitive;

#[test]
fn serialized_graphs_give_the_same_partition_function() {
    let p = ParamVec::from_ints([2, 3, 5, 7]);
    for g in [gen_octahedron(), gen_k44(), gen_torus(2, 4)] {
        let text = serialize_graph(&g);
        let back = parse_graph(&text).unwrap();
        assert_eq!(serialize_graph(&back), text);
        assert_eq!(z8v_exact(&g, &p).unwrap(), z8v_exact(&back, &p).unwrap());
    }
}

#[test]
fn planned_image_has_the_same_exact_value() {
    for (g, p, class) in [
        (gen_octahedron(), [1, 1, 5, 1], GraphClass::Planar),
        (gen_k44(), [1, 1, 1, 5], GraphClass::Bipartite),
        (gen_torus(2, 4), [1, 1, 1, 3], GraphClass::Bipartite),
    ] {
        let p = ParamVec::from_ints(p);
        let plan = plan_transform(&p, class).unwrap();
        let census = census_8v(&g).unwrap();
        assert_eq!(
            census.evaluate(&p),
            census.evaluate(&plan.image),
            "{}",
            plan.label
        );
    }
}

#[test]
fn bipartite_pipeline_matches_exact() {
    let g = gen_k44();
    let p = ParamVec::from_ints([1, 1, 1, 5]);
    let exact = z8v_exact(&g, &p).unwrap().to_f64().unwrap();
    let r = estimate_z8v(
        &g,
        &p,
        GraphClass::Bipartite,
        0.05,
        0.25,
        &EstimatorConfig::new(9),
    )
    .unwrap();
    assert_eq!(r.plan.label, "(M_Z^Bi)^5");
    assert_eq!(r.estimate.method, EstimateMethod::Anneal);
    assert!(r.estimate.warnings.is_empty());
    assert!(
        (r.value / exact - 1.0).abs() < 0.05,
        "{} vs {exact}",
        r.value
    );
}

#[test]
fn anchor_matches_exact_uniform() {
    for g in [
        gen_octahedron(),
        gen_k44(),
        gen_torus(2, 2),
        gen_torus(2, 4),
    ] {
        assert_eq!(
            Rational::from_integer(anchor_z(&g)),
            z8v_exact(&g, &ParamVec::uniform()).unwrap()
        );
    }
}

#[test]
fn every_suite_passes() {
    let report = verify(&Suite::ALL, 11);
    assert!(report.passed(), "{}", report.table());
}

#![cfg(feature = "example2")]

use std::path::PathBuf;

use cli::parse_problem;
use exact_linalg::Rational;
use knitting::{knit_component, Slice, SliceArrow, Translator};
use quiver_rep::is_module_resolution;

#[test]
fn square_component_keeps_modules_on_the_slice() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join("example2.prob");
    let p = parse_problem::<Rational>(&std::fs::read_to_string(path).unwrap()).unwrap();
    let names = ["i1", "s2", "s3", "p4"];
    let nodes = names.iter().map(|n| p.complex(n).unwrap()).collect();
    let index = |n: &str| names.iter().position(|s| *s == n);
    let arrows = p
        .maps
        .iter()
        .filter_map(|m| Some(SliceArrow { source: index(&m.source)?, target: index(&m.target)?, map: m.map.clone() }))
        .collect();
    let slice = Slice::new(&p.alg, nodes, arrows).unwrap();
    let c = knit_component(&Translator::new(&p.alg, 8).unwrap(), &slice, 2, 2).unwrap();
    assert_eq!(c.nodes.len(), 20);
    assert!(c.meshes.iter().all(|m| m.record.report.passes()));
    assert!(c.reducible_slice_arrows.is_empty());
    let modules: Vec<&str> = c
        .nodes
        .iter()
        .filter(|n| is_module_resolution(&p.alg, &n.complex))
        .map(|n| n.signature.as_str())
        .collect();
    let outside: Vec<&str> = c
        .nodes
        .iter()
        .filter(|n| !n.in_slice && is_module_resolution(&p.alg, &n.complex))
        .map(|n| n.signature.as_str())
        .collect();
    assert_eq!(modules.len(), 4, "{modules:?}");
    assert!(outside.is_empty(), "{outside:?}");
}

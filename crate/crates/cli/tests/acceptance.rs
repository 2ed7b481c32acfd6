use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use cli::{emit_dot, parse_problem, write_complex, write_map, Problem};
use complexes::random::{random_algebra, random_chain_map, random_minimal_complex};
use complexes::{compose, cone, hom_k, minimize, ChainMap, ProjComplex};
use exact_linalg::{Matrix, Rational, Scalar, F32003};
use knitting::{knit_component, verify_ar, ARComponent, Direction, Slice, SliceArrow, Translator};
use path_algebra::Algebra;
use quiver_rep::{ar_translate_mod, is_module_resolution, min_proj_resolution, standard_module, ModuleKind, DEFAULT_MAX_RES};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shapes::sample::{sample_classified, ClassKind};
use shapes::{
    classify, is_indecomposable_k, k_isomorphism, no_irreducible_by_pd, orthogonality_check, reduced_cone, split_pattern,
    support_checks, theorem2_shape, MorphClass,
};

type Q = Rational;

const SAMPLES_PER_CLASS: usize = 100;
const PRIME_SAMPLES_PER_CLASS: usize = 25;
const SAMPLE_TRIES: usize = 60;
const RANDOM_VERTICES: usize = 6;
const INFRA_CASES: u64 = 40;

const EXAMPLE_ONE: [&str; 11] = [
    "P1[0]",
    "(P1-P2-P3)[-1]",
    "P3[0]",
    "P2[1]",
    "(P2-P3)[-1]",
    "(P1-P2)[0]",
    "(P2-P3)[0]",
    "P3[-1]",
    "P2[0]",
    "P1[1]",
    "(P1-P2-P3)[0]",
];

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    std::fs::read_to_string(path).unwrap()
}

struct Knitted {
    p: Problem<Q>,
    tr: Translator<Q>,
    c: ARComponent<Q>,
}

fn knit(file: &str, slice: &[&str], fwd: usize, bwd: usize) -> Knitted {
    let p = parse_problem::<Q>(&fixture(file)).unwrap();
    let nodes = slice.iter().map(|n| p.complex(n).unwrap()).collect();
    let index = |n: &str| slice.iter().position(|s| *s == n);
    let arrows = p
        .maps
        .iter()
        .filter_map(|m| Some(SliceArrow { source: index(&m.source)?, target: index(&m.target)?, map: m.map.clone() }))
        .collect();
    let slice = Slice::new(&p.alg, nodes, arrows).unwrap();
    let tr = Translator::new(&p.alg, 8).unwrap();
    let c = knit_component(&tr, &slice, fwd, bwd).unwrap();
    Knitted { p, tr, c }
}

fn a3() -> Knitted {
    knit("a3.prob", &["P1", "P2", "P3"], 4, 2)
}

fn gamma() -> Knitted {
    knit("gamma.prob", &["s1", "s2", "s3", "p4", "p5"], 2, 2)
}

fn orbit_run(c: &ARComponent<Q>, from: usize, len: usize) -> Vec<usize> {
    let mut out = vec![from];
    for _ in 1..len {
        out.push(c.tau_inverse(*out.last().unwrap()).expect("knitted translate"));
    }
    out
}

/// The three rows of the figure: four steps from `P1[0]`, three from the
/// other end of an arrow leaving it, four from `τ P2[0]`.
fn example_window(c: &ARComponent<Q>) -> Vec<usize> {
    let p1 = c.find("P1[0]").expect("P1[0] knitted");
    let p2 = c.find("P2[0]").expect("P2[0] knitted");
    let middle = c
        .mesh_arrows()
        .find(|a| a.source == p1 && c.nodes[a.target].orbit != c.nodes[p1].orbit)
        .expect("arrow out of P1[0]")
        .target;
    let mut w = orbit_run(c, p1, 4);
    w.extend(orbit_run(c, middle, 3));
    w.extend(orbit_run(c, c.tau(p2).expect("τ P2[0] knitted"), 4));
    w
}

/// `Σ x_i b_i = target` solvable, all vectors given as coordinate columns.
fn in_span<F: Scalar>(columns: &[Vec<F>], target: &[F]) -> bool {
    if columns.is_empty() {
        return target.iter().all(|x| x.is_zero());
    }
    let a = Matrix::from_columns(target.len(), columns);
    let b = Matrix::from_columns(target.len(), &[target.to_vec()]);
    a.solve(&b).unwrap().is_some()
}

/// Some `r: B -> A` with `r f ≃ 1_A`.
fn split_mono_in_k<F: Scalar>(alg: &Algebra<F>, f: &ChainMap<F>) -> bool {
    let back = hom_k(alg, f.target(), f.source());
    let end = hom_k(alg, f.source(), f.source());
    let id = end.coordinates(&ChainMap::identity(alg, f.source())).unwrap();
    let cols: Vec<Vec<F>> = back
        .basis
        .iter()
        .map(|r| end.coordinates(&compose(alg, r, f).unwrap()).unwrap())
        .collect();
    in_span(&cols, &id)
}

/// Some `s: B -> A` with `f s ≃ 1_B`.
fn split_epi_in_k<F: Scalar>(alg: &Algebra<F>, f: &ChainMap<F>) -> bool {
    let back = hom_k(alg, f.target(), f.source());
    let end = hom_k(alg, f.target(), f.target());
    let id = end.coordinates(&ChainMap::identity(alg, f.target())).unwrap();
    let cols: Vec<Vec<F>> = back
        .basis
        .iter()
        .map(|s| end.coordinates(&compose(alg, f, s).unwrap()).unwrap())
        .collect();
    in_span(&cols, &id)
}

fn isomorphic<F: Scalar>(alg: &Algebra<F>, x: &ProjComplex<F>, y: &ProjComplex<F>) -> bool {
    let (x, y) = (minimize(alg, x).complex, minimize(alg, y).complex);
    x.cell_profile() == y.cell_profile() && k_isomorphism(alg, &x, &y).is_some()
}

/// The pairing of first and second maps in an AR triangle.
fn table_allows<F>(u: &MorphClass<F>, v: &MorphClass<F>) -> bool {
    match u {
        MorphClass::Smonic => matches!(v, MorphClass::Sepic),
        MorphClass::Sepic => matches!(v, MorphClass::Sirreducible { .. }),
        MorphClass::Sirreducible { .. } => matches!(v, MorphClass::Smonic | MorphClass::Sirreducible { .. }),
        MorphClass::Unclassified(_) => false,
    }
}

type Verdict = Result<String, String>;

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_1() -> Verdict {
    let k = a3();
    let window: BTreeSet<&str> = example_window(&k.c).iter().map(|&i| k.c.nodes[i].signature.as_str()).collect();
    let expected: BTreeSet<&str> = EXAMPLE_ONE.into_iter().collect();
    let unverified = k.c.meshes.iter().filter(|m| !m.record.report.passes()).count();
    check(
        window == expected && unverified == 0,
        format!("window {:?}, {unverified} unverified meshes", window),
    )
}

fn criterion_2() -> Verdict {
    let k = a3();
    let (alg, c) = (&k.p.alg, &k.c);
    let mut found = [0usize; 3];
    let mut bad = Vec::new();
    for f in &c.arrows {
        for g in c.arrows.iter().filter(|g| g.source == f.target) {
            let gf = compose(alg, &g.map, &f.map).unwrap();
            if hom_k(alg, gf.source(), gf.target()).is_null(&gf) {
                continue;
            }
            let Ok(class) = classify(alg, &gf) else { continue };
            let Some(slot) = ClassKind::ALL.iter().position(|k| k.matches(&class)) else { continue };
            found[slot] += 1;
            let through_mesh = c.mesh_starting(f.source).is_some_and(|m| m.middle.contains(&f.target))
                || c.mesh_ending(g.target).is_some_and(|m| m.middle.contains(&f.target));
            let split = split_mono_in_k(alg, &f.map) || split_epi_in_k(alg, &g.map);
            if !through_mesh || split {
                bad.push(format!(
                    "{} -> {} -> {}",
                    c.nodes[f.source].signature, c.nodes[f.target].signature, c.nodes[g.target].signature
                ));
            }
        }
    }
    check(
        found.iter().all(|&n| n > 0) && bad.is_empty(),
        format!("smonic {}, sepic {}, sirreducible {} composites; bad factorizations {:?}", found[0], found[1], found[2], bad),
    )
}

fn criterion_3() -> Verdict {
    let k = gamma();
    let (alg, c) = (&k.p.alg, &k.c);
    let op = alg.opposite().unwrap();
    let mut resolved = Vec::new();
    let mut ok = true;
    for (v, slice_name) in [(0, "s1"), (1, "s2"), (2, "s3")] {
        let m = ar_translate_mod(alg, &op, &standard_module(alg, ModuleKind::Projective, v), Direction::Inverse).unwrap();
        let res = min_proj_resolution(alg, &m, DEFAULT_MAX_RES).unwrap().complex;
        let expected = ["(P1-P2)[0]", "(P1-P3)[0]", "(P1-P4)[0]"][v];
        let sig = res.signature(alg).unwrap();
        ok &= sig == expected && isomorphic(alg, &res, &k.p.complex(slice_name).unwrap());
        resolved.push(sig);
    }
    let others: Vec<ProjComplex<Q>> = c.nodes.iter().map(|n| n.complex.clone()).collect();
    let failed: Vec<&str> = c
        .meshes
        .iter()
        .filter(|m| !verify_ar(alg, &m.record.triangle, &others).passes())
        .map(|m| c.nodes[m.end].signature.as_str())
        .collect();
    let extra_modules: Vec<&str> = c
        .nodes
        .iter()
        .filter(|n| !n.in_slice && is_module_resolution(alg, &n.complex))
        .map(|n| n.signature.as_str())
        .collect();
    check(
        ok && failed.is_empty() && extra_modules.is_empty(),
        format!(
            "resolutions {resolved:?}; {}/{} meshes verified; module resolutions outside the slice: {extra_modules:?}",
            c.meshes.len() - failed.len(),
            c.meshes.len()
        ),
    )
}

fn sampled_reduced_cones<F: Scalar>(seed: u64, per_class: usize) -> [(usize, usize); 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = [(0, 0); 3];
    for (slot, kind) in ClassKind::ALL.into_iter().enumerate() {
        while tally[slot].0 < per_class {
            let alg = random_algebra::<F, _>(&mut rng, RANDOM_VERTICES);
            let Some(f) = sample_classified(&alg, &mut rng, kind, SAMPLE_TRIES) else { continue };
            tally[slot].0 += 1;
            let good = reduced_cone(&alg, &f).is_ok_and(|rc| {
                let direct = minimize(&alg, &cone(&alg, &f).complex).complex;
                rc.verify(&alg).is_ok() && rc.complex.is_minimal(&alg) && isomorphic(&alg, &rc.complex, &direct)
            });
            if !good {
                tally[slot].1 += 1;
            }
        }
    }
    tally
}

fn criterion_4() -> Verdict {
    let q = sampled_reduced_cones::<Q>(0xC0DE, SAMPLES_PER_CLASS);
    let p = sampled_reduced_cones::<F32003>(0xF1E1D, PRIME_SAMPLES_PER_CLASS);
    let failures: usize = q.iter().chain(&p).map(|t| t.1).sum();
    check(failures == 0, format!("Q (samples, failures) {q:?}; GF(32003) {p:?}"))
}

fn criterion_5() -> Verdict {
    let mut meshes = 0;
    let mut exceptions = Vec::new();
    for k in [a3(), gamma()] {
        let (alg, c) = (&k.p.alg, &k.c);
        for m in &c.meshes {
            meshes += 1;
            let t = &m.record.triangle;
            let (u, v) = (classify(alg, &t.u).unwrap(), classify(alg, &t.v).unwrap());
            let shape = theorem2_shape(alg, &u, t);
            let matched = shape.as_ref().is_ok_and(|s| s.checks.iter().all(|c| c.1));
            if !table_allows(&u, &v) || !matched {
                exceptions.push(format!("{}: u={u} v={v}", c.nodes[m.end].signature));
            }
        }
    }
    check(exceptions.is_empty(), format!("{meshes} meshes, exceptions {exceptions:?}"))
}

fn criterion_6() -> Verdict {
    let mut arrows = 0;
    let mut split = Vec::new();
    for k in [a3(), gamma()] {
        let (alg, c) = (&k.p.alg, &k.c);
        for a in &c.arrows {
            arrows += 1;
            let cf = minimize(alg, &cone(alg, &a.map).complex).complex;
            if !is_indecomposable_k(alg, &cf) {
                split.push(format!("{} -> {}", c.nodes[a.source].signature, c.nodes[a.target].signature));
            }
        }
    }
    check(split.is_empty(), format!("{arrows} arrows, decomposable cones {split:?}"))
}

fn criterion_7() -> Verdict {
    let (mut orth, mut supp) = (0, 0);
    let mut bad = Vec::new();
    for k in [a3(), gamma()] {
        let (alg, c) = (&k.p.alg, &k.c);
        for a in &c.arrows {
            let name = format!("{} -> {}", c.nodes[a.source].signature, c.nodes[a.target].signature);
            if is_module_resolution(alg, &c.nodes[a.source].complex) {
                orth += 1;
                if !orthogonality_check(alg, &a.map).unwrap() {
                    bad.push(format!("orthogonality {name}"));
                }
            }
            if a.class.is_classified() {
                supp += 1;
                let r = support_checks(&a.map, &a.class);
                if !r.all_hold() {
                    bad.push(format!("support {name}"));
                }
                if no_irreducible_by_pd(alg, a.map.source(), a.map.target()) {
                    bad.push(format!("pd gap {name}"));
                }
            }
        }
    }

    let p = parse_problem::<Q>(&fixture("gamma.prob")).unwrap();
    let x = p.complex("p5").unwrap();
    let y = p.complex("S5").unwrap();
    let f = ChainMap::from_fn(x.clone(), y.clone(), |n| {
        if n == 0 {
            complexes::HomMatrix::identity(&p.alg, &[4])
        } else {
            complexes::HomMatrix::zeros(&p.alg, y.cell(n).len(), 0)
        }
    });
    let gap = no_irreducible_by_pd(&p.alg, &x, &y);
    let cor1 = support_checks(&f, &classify(&p.alg, &f).unwrap());
    let reported = cor1.clause("cor1").is_some_and(|c| c.applicable && !c.holds);
    if !gap || !reported {
        bad.push(format!("constructed pd gap P5 -> {} not reported", y.signature(&p.alg).unwrap()));
    }
    check(bad.is_empty(), format!("{orth} orthogonality checks, {supp} support reports, violations {bad:?}"))
}

fn criterion_8() -> Verdict {
    let (mut knitted, mut round_trips) = (0, 0);
    let mut bad = Vec::new();
    for k in [a3(), gamma()] {
        let (alg, c, tr) = (&k.p.alg, &k.c, &k.tr);
        for (i, n) in c.nodes.iter().enumerate() {
            let inv = tr.tau(&n.complex, Direction::Inverse).unwrap();
            if let Some(j) = c.tau_inverse(i) {
                knitted += 1;
                if !isomorphic(alg, &inv, &c.nodes[j].complex) {
                    bad.push(format!("τ⁻¹ {}", n.signature));
                }
            }
            round_trips += 1;
            let back = tr.tau(&inv, Direction::Forward).unwrap();
            let forth = tr.tau(&tr.tau(&n.complex, Direction::Forward).unwrap(), Direction::Inverse).unwrap();
            if !isomorphic(alg, &back, &n.complex) || !isomorphic(alg, &forth, &n.complex) {
                bad.push(format!("round trip {}", n.signature));
            }
        }
    }
    check(bad.is_empty(), format!("{knitted} knitted translates, {round_trips} round trips, mismatches {bad:?}"))
}

fn infrastructure<F: Scalar>(seed: u64) -> Vec<String> {
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..INFRA_CASES {
        let alg = random_algebra::<F, _>(&mut rng, RANDOM_VERTICES);
        let p = Problem::new("R", alg).unwrap();
        let x = random_minimal_complex(&p.alg, &mut rng, -1, 3, 2);
        let y = random_minimal_complex(&p.alg, &mut rng, -1, 3, 2);
        let f = random_chain_map(&p.alg, &mut rng, &x, &y);

        let once = minimize(&p.alg, &cone(&p.alg, &f).complex).complex;
        if minimize(&p.alg, &once).complex != once {
            bad.push(format!("case {case}: minimize not idempotent"));
        }
        let text = write_map(&p, "f", &f);
        let back = p.read_serialized(&text);
        if !back.is_ok_and(|b| b.maps[0].map == f && write_map(&b, "f", &b.maps[0].map) == text) {
            bad.push(format!("case {case}: map round trip"));
        }
        if p.read_serialized(&write_complex(&p, "c", &once)).map(|b| b.complexes[0].1.clone()).ok() != Some(once) {
            bad.push(format!("case {case}: complex round trip"));
        }
        if !split_pattern(&p.alg, &f).verify(&p.alg, &f) {
            bad.push(format!("case {case}: split witnesses"));
        }
    }
    bad
}

fn criterion_9() -> Verdict {
    let mut bad = infrastructure::<Q>(0x1A);
    bad.extend(infrastructure::<F32003>(0x1B));
    let (first, second) = (emit_dot(&a3().c), emit_dot(&a3().c));
    if first != second || first != fixture("a3.dot") {
        bad.push("DOT output not byte-stable".into());
    }
    check(bad.is_empty(), format!("{} random cases per field, problems {bad:?}", INFRA_CASES))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("figure window of the A3 component", criterion_1),
        ("composites of mesh arrows", criterion_2),
        ("tilted algebra slice and knitted window", criterion_3),
        ("reduced cone equals minimized cone", criterion_4),
        ("first and second maps of AR triangles", criterion_5),
        ("cones of irreducible maps are indecomposable", criterion_6),
        ("orthogonality, support bounds and pd gaps", criterion_7),
        ("knitted and computed translates agree", criterion_8),
        ("minimize, serialization, DOT and split witnesses", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match verdict {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria {failed:?}");
}

use std::fmt::Write;

use complexes::{ChainMap, HomMatrix, ProjComplex};
use exact_linalg::Scalar;
use path_algebra::Algebra;

use crate::problem::Problem;

fn entries<F: Scalar>(out: &mut String, alg: &Algebra<F>, kw: &str, n: i64, m: &HomMatrix<F>) {
    if m.is_zero() {
        if kw == "c" {
            writeln!(out, "  {kw} {n} = 0").unwrap();
        }
        return;
    }
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let e = m.get(r, c);
            if !alg.is_zero(e) {
                writeln!(out, "  {kw} {n} ({r}, {c}) = {}", alg.format_elem(e)).unwrap();
            }
        }
    }
}

fn header<F: Scalar>(out: &mut String, p: &Problem<F>) {
    writeln!(out, "  field {}", p.field().name()).unwrap();
    writeln!(out, "  algebra {}", p.name).unwrap();
}

/// A `complex` block: cells by degree and the nonzero differential entries
/// as `(row, col)` with exact coefficients.
pub fn write_complex<F: Scalar>(p: &Problem<F>, name: &str, x: &ProjComplex<F>) -> String {
    let q = p.alg.quiver();
    let mut out = format!("complex {name}\n");
    header(&mut out, p);
    if !x.is_zero() {
        for n in x.degrees() {
            let labels: Vec<&str> = x.cell(n).iter().map(|&v| q.vertex_name(v)).collect();
            let sep = if labels.is_empty() { "" } else { " " };
            writeln!(out, "  cell {n} :{sep}{}", labels.join(" ")).unwrap();
        }
        for n in x.lo()..x.hi() {
            entries(&mut out, &p.alg, "d", n, &x.diff(&p.alg, n));
        }
    }
    out.push_str("end\n");
    out
}

/// The two end complexes as `<name>_source` and `<name>_target`, then a
/// `map` block between them.
pub fn write_map<F: Scalar>(p: &Problem<F>, name: &str, f: &ChainMap<F>) -> String {
    let (s, t) = (format!("{name}_source"), format!("{name}_target"));
    let mut out = write_complex(p, &s, f.source());
    out += &write_complex(p, &t, f.target());
    writeln!(out, "map {name} : {s} -> {t}").unwrap();
    header(&mut out, p);
    for (n, m) in f.comps() {
        entries(&mut out, &p.alg, "c", *n, m);
    }
    out.push_str("end\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::parse_problem;
    use exact_linalg::Rational;

    fn problem() -> Problem<Rational> {
        parse_problem(
            "[quiver]\nname T\nvertices 1 2 3\narrow a : 2 -> 1\narrow b : 3 -> 2\narrow c : 3 -> 1\n\
             [complexes]\ncomplex x\n  cell -1 : 1 1\n  cell 0 : 3\n  d -1 = [-1/2*b a + 3*c, -1/2*b a + 3*c]\nend\n\
             [maps]\nmap f : x -> x[0]\n  c -1 = [1, 1; 0, 0]\n  c 0 = [e3]\nend\n",
        )
        .unwrap()
    }

    #[test]
    fn complex_round_trips() {
        let p = problem();
        let x = p.complex("x").unwrap();
        let text = write_complex(&p, "x", &x);
        assert!(text.contains("-1/2*b a"), "{text}");
        let back = p.read_serialized(&text).unwrap();
        assert_eq!(back.complexes[0].1, x);
    }

    #[test]
    fn map_round_trips() {
        let p = problem();
        let f = &p.map("f").unwrap().map;
        let back = p.read_serialized(&write_map(&p, "f", f)).unwrap();
        assert_eq!(&back.maps[0].map, f);
    }

    #[test]
    fn zero_complex_has_no_cells() {
        let p = problem();
        let text = write_complex(&p, "z", &ProjComplex::zero());
        assert_eq!(text, "complex z\n  field Q\n  algebra T\nend\n");
        assert!(p.read_serialized(&text).unwrap().complexes[0].1.is_zero());
    }
}

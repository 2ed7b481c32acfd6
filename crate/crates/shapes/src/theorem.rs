use std::fmt;

use complexes::{minimize, ProjComplex, Triangle};
use exact_linalg::Scalar;
use path_algebra::Algebra;

use crate::classify::{classify, MorphClass};
use crate::reduced::reduced_cone;
use crate::ShapeError;

/// Which display an AR triangle matched, with the checks that were run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    pub u_class: String,
    pub v_class: String,
    /// One of `a`, `b`, `c1`, `c2`, `c3`.
    pub template: &'static str,
    /// True when the distinguished component of `v` sits between
    /// decomposable cells.
    pub flagged: bool,
    pub checks: Vec<(String, bool)>,
}

impl fmt::Display for ShapeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u={} v={} template={}", self.u_class, self.v_class, self.template)?;
        if self.flagged {
            write!(f, " flagged")?;
        }
        for (name, ok) in &self.checks {
            write!(f, "\n  {name}: {}", if *ok { "ok" } else { "FAIL" })?;
        }
        Ok(())
    }
}

fn all_zero(cells: impl Iterator<Item = usize>) -> bool {
    cells.into_iter().all(|n| n == 0)
}

/// Matches an AR triangle against the shape its first map dictates.
pub fn theorem2_shape<F: Scalar>(alg: &Algebra<F>, u_class: &MorphClass<F>, t: &Triangle<F>) -> Result<ShapeReport, ShapeError> {
    let v_class = classify(alg, &t.v)?;
    let rc = reduced_cone(alg, &t.u)?;
    let sf = &rc.standard;
    let (x, y) = (t.x(), t.y());
    let (lo, hi) = sf.degree_window();
    let (lo, hi) = (lo.min(t.z().lo()) - 1, hi.max(t.z().hi()) + 1);
    let x_prime = |k: i64| if k < sf.pivot { sf.complement(k).len() } else { 0 };
    let yn = |k: i64| y.cell(k).len();
    let xn = |k: i64| x.cell(k).len();

    let mut checks: Vec<(String, bool)> = Vec::new();
    let template = match (u_class, &v_class) {
        (MorphClass::Smonic, MorphClass::Sepic) => "a",
        (MorphClass::Sepic, MorphClass::Sirreducible { degree: j, .. }) => {
            let j = *j;
            checks.push((format!("X'^k = 0 for k <= {j}"), all_zero((lo..=j).map(x_prime))));
            checks.push((format!("Y^k = 0 for k >= {}", j + 1), all_zero((j + 1..=hi).map(yn))));
            "b"
        }
        (MorphClass::Sirreducible { degree: i, .. }, MorphClass::Smonic) => {
            let i = *i;
            checks.push((format!("Y^k = 0 for k <= {}", i - 1), all_zero((lo..i).map(yn))));
            checks.push((format!("X^k = 0 for k >= {}", i + 1), all_zero((i + 1..=hi).map(xn))));
            "c1"
        }
        (MorphClass::Sirreducible { degree: i, .. }, MorphClass::Sirreducible { degree: j, .. }) if *j <= *i - 2 => {
            let (i, j) = (*i, *j);
            checks.push((format!("X'^k = 0 for k <= {j}"), all_zero((lo..=j).map(x_prime))));
            checks.push((format!("Y^k = 0 for {j} < k < {i}"), all_zero((j + 1..i).map(yn))));
            checks.push((format!("X^k = 0 for k >= {}", i + 1), all_zero((i + 1..=hi).map(xn))));
            "c2"
        }
        (MorphClass::Sirreducible { degree: i, .. }, MorphClass::Sirreducible { degree: j, .. }) if *j == *i - 1 => {
            let i = *i;
            checks.push((format!("X'^k = 0 for k <= {}", i - 1), all_zero((lo..i).map(x_prime))));
            checks.push((format!("X^k = 0 for k >= {}", i + 1), all_zero((i + 1..=hi).map(xn))));
            "c3"
        }
        (uc, vc) => {
            return Err(ShapeError::ShapeViolation(format!(
                "no template for u={uc} v={vc}: the class of v contradicts the class of u"
            )))
        }
    };
    let ours = minimize(alg, t.z()).complex;
    let reduced = minimize(alg, &rc.complex).complex;
    checks.push(("Z matches the reduced cone".to_string(), profile(&ours) == profile(&reduced)));
    let flagged = matches!(v_class, MorphClass::Sirreducible { flagged: true, .. });
    let report = ShapeReport {
        u_class: u_class.to_string(),
        v_class: v_class.to_string(),
        template,
        flagged,
        checks,
    };
    if report.checks.iter().all(|(_, ok)| *ok) {
        Ok(report)
    } else {
        Err(ShapeError::ShapeViolation(report.to_string()))
    }
}

fn profile<F: Scalar>(x: &ProjComplex<F>) -> Vec<(i64, Vec<usize>)> {
    x.cell_profile()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::a3;
    use complexes::{ChainMap, HomMatrix, Triangle};
    use exact_linalg::Rational;

    /// The AR triangle `P1 -> P2 -> S2 -> P1[1]` over A3 with `b a = 0`, as
    /// projective complexes.
    fn triangle() -> (Algebra<Rational>, Triangle<Rational>) {
        let alg = a3();
        let a = alg.path_elem(&alg.quiver().parse_path("a").unwrap());
        let x = ProjComplex::stalk(vec![0], 0);
        let y = ProjComplex::stalk(vec![1], 0);
        let u = ChainMap::from_fn(x, y, |_| HomMatrix::from_fn(1, 1, |_, _| a.clone()));
        let c = complexes::cone(&alg, &u);
        (alg, c.triangle(&u))
    }

    #[test]
    fn simple_triangle_fits_a_template() {
        let (alg, t) = triangle();
        let uc = classify(&alg, &t.u).unwrap();
        assert_eq!(uc.pivot(), Some(0));
        let r = theorem2_shape(&alg, &uc, &t).unwrap();
        assert_eq!(r.template, "c1");
        assert_eq!(r.v_class, "smonic");
    }

    #[test]
    fn wrong_class_pairing_is_a_violation() {
        let (alg, t) = triangle();
        let err = theorem2_shape(&alg, &MorphClass::Smonic, &t).unwrap_err();
        assert!(matches!(err, ShapeError::ShapeViolation(_)));
    }
}

use complexes::{cone, hom_k, minimize, ChainMap, ProjComplex};
use exact_linalg::Scalar;
use path_algebra::Algebra;
use quiver_rep::{injective, is_module_resolution, min_proj_resolution, DEFAULT_MAX_RES};

use crate::classify::MorphClass;
use crate::ShapeError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseCheck {
    pub name: &'static str,
    /// The hypothesis holds for some shift of the pair.
    pub applicable: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportReport {
    pub clauses: Vec<ClauseCheck>,
}

impl SupportReport {
    pub fn all_hold(&self) -> bool {
        self.clauses.iter().all(|c| c.holds)
    }

    pub fn clause(&self, name: &str) -> Option<&ClauseCheck> {
        self.clauses.iter().find(|c| c.name == name)
    }
}

/// Nonzero-cell predicate on a complex shifted by `s`: `X[s]^n = X^(n+s)`.
struct Shifted<'a, F> {
    x: &'a ProjComplex<F>,
    s: i64,
}

impl<F: Scalar> Shifted<'_, F> {
    fn nz(&self, n: i64) -> bool {
        !self.x.cell(n + self.s).is_empty()
    }

    fn zero_below(&self, n: i64) -> bool {
        self.x.is_zero() || self.x.lo() - self.s >= n
    }

    fn zero_above(&self, n: i64) -> bool {
        self.x.is_zero() || self.x.hi() - self.s <= n
    }

}

/// Shifts and values of `t` that can make a clause's hypothesis hold.
fn search_window<F: Scalar>(x: &ProjComplex<F>, y: &ProjComplex<F>) -> (Vec<i64>, Vec<i64>) {
    let lo = x.lo().min(y.lo());
    let hi = x.hi().max(y.hi());
    let span = hi - lo + 2;
    ((lo - span..=hi + span).collect(), (0..=2 * span + 2).collect())
}

/// Evaluates the boundedness clauses on an irreducible candidate `f` of the
/// given class, each up to a common shift of source and target.
pub fn support_checks<F: Scalar>(f: &ChainMap<F>, class: &MorphClass<F>) -> SupportReport {
    let (x, y) = (f.source(), f.target());
    let mut clauses = Vec::new();
    if x.is_zero() || y.is_zero() {
        return SupportReport { clauses };
    }
    let (shifts, ts) = search_window(x, y);
    let exists = |pred: &dyn Fn(&Shifted<F>, &Shifted<F>, i64) -> bool| {
        shifts.iter().any(|&s| {
            let (xs, ys) = (Shifted { x, s }, Shifted { x: y, s });
            ts.iter().any(|&t| pred(&xs, &ys, t))
        })
    };

    let a = exists(&|xs, ys, t| xs.zero_below(-t) && xs.nz(-t) && !ys.zero_below(-t));
    clauses.push(ClauseCheck {
        name: "lemma1a",
        applicable: a,
        holds: !a || matches!(class, MorphClass::Smonic),
    });
    let b = exists(&|xs, ys, t| {
        xs.zero_above(0) && ys.zero_below(-t) && xs.nz(-(t + 1)) && !ys.zero_above(0)
    });
    clauses.push(ClauseCheck {
        name: "lemma1b",
        applicable: b,
        holds: !b || matches!(class, MorphClass::Sirreducible { .. }),
    });
    let c = exists(&|xs, ys, t| t > 0 && ys.zero_below(-t) && ys.zero_above(0) && xs.nz(-(t + 1)) && xs.nz(1));
    clauses.push(ClauseCheck {
        name: "lemma1c",
        applicable: c,
        holds: !c || matches!(class, MorphClass::Sepic),
    });
    let d = exists(&|xs, ys, t| t > 0 && xs.zero_below(-t) && xs.nz(1) && ys.nz(-(t + 1)) && !ys.nz(1));
    clauses.push(ClauseCheck {
        name: "lemma1d",
        applicable: d,
        holds: !d,
    });
    let p8 = exists(&|xs, ys, t| t > 0 && xs.zero_above(0) && ys.zero_above(0) && xs.zero_below(-t) && xs.nz(-t));
    clauses.push(ClauseCheck {
        name: "prop8",
        applicable: p8,
        holds: !p8 || y.lo() >= x.lo() - 1,
    });
    let stalk_shape = |z: &ProjComplex<F>| z.hi() == 0;
    let gap = stalk_shape(x) && stalk_shape(y) && pd(y) >= pd(x) + 2;
    clauses.push(ClauseCheck {
        name: "cor1",
        applicable: gap,
        holds: !gap,
    });
    SupportReport { clauses }
}

/// Projective dimension of the module a resolution stands for.
fn pd<F: Scalar>(x: &ProjComplex<F>) -> i64 {
    -x.lo()
}

/// For module resolutions `X`, `Y` with `pd Y >= pd X + 2` there is no
/// irreducible map `X -> Y`; returns whether that bound applies.
pub fn no_irreducible_by_pd<F: Scalar>(alg: &Algebra<F>, x: &ProjComplex<F>, y: &ProjComplex<F>) -> bool {
    is_module_resolution(alg, x) && is_module_resolution(alg, y) && pd(y) >= pd(x) + 2
}

/// `Hom(C_f, P_i[0]) = 0` for all `i` when `X` is a module, and
/// `Hom(I_i, C_f[-1]) = 0` for all `i` when `Y` is a module.
pub fn orthogonality_check<F: Scalar>(alg: &Algebra<F>, f: &ChainMap<F>) -> Result<bool, ShapeError> {
    let c = minimize(alg, &cone(alg, f).complex).complex;
    let n = alg.vertex_count();
    if is_module_resolution(alg, f.source()) {
        for i in 0..n {
            if hom_k(alg, &c, &ProjComplex::stalk(vec![i], 0)).dim != 0 {
                return Ok(false);
            }
        }
    }
    if is_module_resolution(alg, f.target()) {
        let shifted = c.shift(-1);
        for i in 0..n {
            let res = min_proj_resolution(alg, &injective(alg, &[i]), DEFAULT_MAX_RES)?;
            if hom_k(alg, &res.complex, &shifted).dim != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

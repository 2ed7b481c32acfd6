use std::collections::BTreeMap;

use complexes::{cone, compose, minimize, ChainMap, Cone, HomMatrix, Homotopy, ProjComplex, Triangle};
use exact_linalg::Scalar;
use path_algebra::Algebra;

use crate::blocks::{embed_identity, grid};
use crate::standard::{standard_form, StandardForm};
use crate::ShapeError;

/// The cone of a classified map with the contractible part cut away, built
/// directly from the blocks of its standard form.
#[derive(Clone)]
pub struct ReducedCone<F> {
    pub standard: StandardForm<F>,
    pub original: ChainMap<F>,
    pub complex: ProjComplex<F>,
    /// `Y_std -> Z`.
    pub g: ChainMap<F>,
    /// `Z -> X_std[1]`.
    pub w: ChainMap<F>,
    pub cone: Cone<F>,
    /// `C -> Z` and `Z -> C` with `hη = 1`.
    pub h: ChainMap<F>,
    pub eta: ChainMap<F>,
    /// `p_f - wh = ∂s + sd`.
    pub s: Homotopy<F>,
    /// `1 - ηh = ∂v + vd`.
    pub v: Homotopy<F>,
}

impl<F: Scalar> ReducedCone<F> {
    /// `X -f-> Y -> Z -> X[1]` in the coordinates of the input map.
    pub fn triangle(&self, alg: &Algebra<F>) -> Triangle<F> {
        let v = compose(alg, &self.g, &self.standard.target_change).expect("ends agree");
        let back = self.standard.source_restore.shift(1);
        let w = compose(alg, &back, &self.w).expect("ends agree");
        Triangle {
            u: self.original.clone(),
            v,
            w,
        }
    }

    /// Checks every identity tying `Z` to the cone, naming the first failure.
    pub fn verify(&self, alg: &Algebra<F>) -> Result<(), ShapeError> {
        let fail = |what: &str| Err(ShapeError::ShapeViolation(what.to_string()));
        if !self.standard.verify(alg) {
            return fail("standard form");
        }
        if !complex_ok(alg, &self.complex) {
            return fail("reduced cone is not a complex");
        }
        for (name, m) in [("g", &self.g), ("w", &self.w), ("h", &self.h), ("eta", &self.eta)] {
            if !m.is_chain_map(alg) {
                return fail(&format!("{name} is not a chain map"));
            }
        }
        let c = &self.cone;
        if compose(alg, &self.h, &self.eta)? != ChainMap::identity(alg, &self.complex) {
            return fail("h eta != 1");
        }
        let wh = compose(alg, &self.w, &self.h)?;
        if !self.s.witnesses(alg, &c.projection, &wh) {
            return fail("s does not witness p ~ w h");
        }
        let eh = compose(alg, &self.eta, &self.h)?;
        if !self.v.witnesses(alg, &ChainMap::identity(alg, &c.complex), &eh) {
            return fail("v does not witness 1 ~ eta h");
        }
        if compose(alg, &self.h, &c.inclusion)? != self.g {
            return fail("g != h t");
        }
        let ours = minimize(alg, &self.complex).complex;
        let theirs = minimize(alg, &c.complex).complex;
        if ours.signature(alg)? != theirs.signature(alg)? {
            return fail("minimal models differ");
        }
        Ok(())
    }
}

fn complex_ok<F: Scalar>(alg: &Algebra<F>, z: &ProjComplex<F>) -> bool {
    if z.is_zero() {
        return true;
    }
    (z.lo()..z.hi()).all(|n| {
        let d = z.diff(alg, n);
        d.fits(alg, z.cell(n + 1), z.cell(n)).is_none() && z.diff(alg, n + 1).mul(alg, &d).is_zero()
    })
}

pub fn reduced_cone<F: Scalar>(alg: &Algebra<F>, f: &ChainMap<F>) -> Result<ReducedCone<F>, ShapeError> {
    let sf = standard_form(alg, f)?;
    let rc = assemble(alg, sf, f.clone());
    Ok(if rc.complex.is_minimal(alg) { rc } else { finish_minimal(alg, rc) })
}

/// A pivot component with an invertible block on decomposable cells leaves
/// that block in `Z`; cancel it and carry the witnesses across
/// `φψ = 1`, `1 - ψφ = dH + Hd`.
fn finish_minimal<F: Scalar>(alg: &Algebra<F>, rc: ReducedCone<F>) -> ReducedCone<F> {
    let m = minimize(alg, &rc.complex);
    let c = &rc.cone.complex;
    let x1 = rc.standard.source().shift(1);
    let g = compose(alg, &m.phi, &rc.g).expect("ends agree");
    let w = compose(alg, &rc.w, &m.psi).expect("ends agree");
    let h = compose(alg, &m.phi, &rc.h).expect("ends agree");
    let eta = compose(alg, &rc.eta, &m.psi).expect("ends agree");
    let s = rc.s.add(alg, c, &x1, &m.homotopy.conjugate(alg, &rc.w, &rc.h));
    let v = rc.v.add(alg, c, c, &m.homotopy.conjugate(alg, &rc.eta, &rc.h));
    ReducedCone {
        complex: m.complex,
        g,
        w,
        h,
        eta,
        s,
        v,
        ..rc
    }
}

fn assemble<F: Scalar>(alg: &Algebra<F>, sf: StandardForm<F>, original: ChainMap<F>) -> ReducedCone<F> {
    let i = sf.pivot;
    let (lo, hi) = sf.degree_window();
    let x = sf.source().clone();
    let y = sf.target().clone();
    let fs = sf.map.clone();
    let nx = |j: i64| x.cell(j).len();
    let ny = |j: i64| y.cell(j).len();
    let z_cell = |j: i64| -> Vec<usize> {
        if j <= i - 2 {
            sf.complement(j + 1).to_vec()
        } else if j == i - 1 {
            x.cell(i).to_vec()
        } else if j == i {
            y.cell(i).to_vec()
        } else {
            sf.complement(j).to_vec()
        }
    };
    let z_diff = |j: i64| -> HomMatrix<F> {
        if j <= i - 2 {
            sf.e(alg, j + 1).neg()
        } else if j == i - 1 {
            fs.comp(alg, i)
        } else {
            sf.e(alg, j)
        }
    };
    let cells: Vec<Vec<usize>> = (lo..=hi).map(z_cell).collect();
    let diffs: Vec<HomMatrix<F>> = (lo..hi).map(z_diff).collect();
    let z = ProjComplex::new_unchecked(lo, cells, diffs);
    let zn = |j: i64| z_cell(j).len();

    let g = ChainMap::from_fn(y.clone(), z.clone(), |j| {
        if j < i - 1 {
            sf.b(alg, j)
        } else if j == i - 1 {
            sf.c.clone()
        } else if j == i {
            HomMatrix::identity(alg, y.cell(i))
        } else {
            embed_identity(alg, zn(j), ny(j), 0, nx(j), sf.complement(j))
        }
    });
    let w = ChainMap::from_fn(z.clone(), x.shift(1), |j| {
        if j < i - 1 {
            embed_identity(alg, nx(j + 1), zn(j), ny(j + 1), 0, sf.complement(j + 1))
        } else if j == i - 1 {
            HomMatrix::identity(alg, x.cell(i))
        } else if j == i {
            sf.ell.neg()
        } else {
            sf.a(alg, j).neg()
        }
    });

    let c = cone(alg, &fs);
    let cn = |j: i64| nx(j + 1) + ny(j);
    let h = ChainMap::from_fn(c.complex.clone(), z.clone(), |j| {
        let ident = HomMatrix::identity(alg, &z_cell(j));
        if j < i - 1 {
            let b = sf.b(alg, j);
            grid(alg, zn(j), cn(j), &[(0, ny(j + 1), &ident), (0, nx(j + 1), &b)])
        } else if j == i - 1 {
            grid(alg, zn(j), cn(j), &[(0, 0, &ident), (0, nx(i), &sf.c)])
        } else if j == i {
            grid(alg, zn(j), cn(j), &[(0, nx(i + 1), &ident)])
        } else {
            grid(alg, zn(j), cn(j), &[(0, nx(j + 1) + nx(j), &ident)])
        }
    });
    let eta = ChainMap::from_fn(z.clone(), c.complex.clone(), |j| {
        let ident = HomMatrix::identity(alg, &z_cell(j));
        if j < i - 1 {
            grid(alg, cn(j), zn(j), &[(ny(j + 1), 0, &ident)])
        } else if j == i - 1 {
            grid(alg, cn(j), zn(j), &[(0, 0, &ident)])
        } else if j == i {
            let l = sf.ell.neg();
            grid(alg, cn(j), zn(j), &[(0, 0, &l), (nx(i + 1), 0, &ident)])
        } else {
            let a = sf.a(alg, j).neg();
            grid(alg, cn(j), zn(j), &[(0, 0, &a), (nx(j + 1) + nx(j), 0, &ident)])
        }
    });

    // Both homotopies move the shared block of C^j into the first block of
    // the degree below.
    let shared_cells = |j: i64| -> Vec<usize> {
        if j < i {
            y.cell(j).to_vec()
        } else {
            x.cell(j).to_vec()
        }
    };
    let mut s = BTreeMap::new();
    let mut v = BTreeMap::new();
    for j in lo..=hi + 1 {
        if j == i || cn(j) == 0 {
            continue;
        }
        let cells = shared_cells(j);
        if cells.is_empty() {
            continue;
        }
        s.insert(j, embed_identity(alg, nx(j), cn(j), 0, nx(j + 1), &cells));
        v.insert(j, embed_identity(alg, cn(j - 1), cn(j), 0, nx(j + 1), &cells));
    }

    ReducedCone {
        standard: sf,
        original,
        complex: z,
        g,
        w,
        cone: c,
        h,
        eta,
        s: Homotopy { comps: s },
        v: Homotopy { comps: v },
    }
}

use std::collections::BTreeMap;

use exact_linalg::Scalar;
use path_algebra::Algebra;

use crate::{ComplexError, HomMatrix, ProjComplex};

/// Degreewise maps `f^n: X^n -> Y^n` commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap<F> {
    source: ProjComplex<F>,
    target: ProjComplex<F>,
    comps: BTreeMap<i64, HomMatrix<F>>,
}

fn common_degrees<F: Scalar>(x: &ProjComplex<F>, y: &ProjComplex<F>, shift: i64) -> Vec<i64> {
    x.degrees()
        .filter(|&n| !x.cell(n).is_empty() && !y.cell(n + shift).is_empty())
        .collect()
}

impl<F: Scalar> ChainMap<F> {
    pub fn new(
        alg: &Algebra<F>,
        source: ProjComplex<F>,
        target: ProjComplex<F>,
        comps: BTreeMap<i64, HomMatrix<F>>,
    ) -> Result<Self, ComplexError> {
        for (&n, m) in &comps {
            if let Some((row, col)) = m.fits(alg, target.cell(n), source.cell(n)) {
                if m.rows() != target.cell(n).len() || m.cols() != source.cell(n).len() {
                    return Err(ComplexError::Shape(format!("component in degree {n}")));
                }
                return Err(ComplexError::WrongBlock { degree: n, row, col });
            }
        }
        let f = Self::new_unchecked(source, target, comps);
        match f.failing_degree(alg) {
            Some(n) => Err(ComplexError::NotChainMap(n)),
            None => Ok(f),
        }
    }

    pub fn new_unchecked(source: ProjComplex<F>, target: ProjComplex<F>, comps: BTreeMap<i64, HomMatrix<F>>) -> Self {
        let comps = comps
            .into_iter()
            .filter(|(n, m)| {
                !source.cell(*n).is_empty() && !target.cell(*n).is_empty() && m.rows() > 0 && m.cols() > 0
            })
            .collect();
        ChainMap { source, target, comps }
    }

    pub fn from_fn(
        source: ProjComplex<F>,
        target: ProjComplex<F>,
        mut f: impl FnMut(i64) -> HomMatrix<F>,
    ) -> Self {
        let comps = common_degrees(&source, &target, 0).into_iter().map(|n| (n, f(n))).collect();
        Self::new_unchecked(source, target, comps)
    }

    pub fn identity(alg: &Algebra<F>, x: &ProjComplex<F>) -> Self {
        Self::from_fn(x.clone(), x.clone(), |n| HomMatrix::identity(alg, x.cell(n)))
    }

    pub fn zero(x: &ProjComplex<F>, y: &ProjComplex<F>) -> Self {
        Self::new_unchecked(x.clone(), y.clone(), BTreeMap::new())
    }

    pub fn source(&self) -> &ProjComplex<F> {
        &self.source
    }

    pub fn target(&self) -> &ProjComplex<F> {
        &self.target
    }

    pub fn comp(&self, alg: &Algebra<F>, n: i64) -> HomMatrix<F> {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| HomMatrix::zeros(alg, self.target.cell(n).len(), self.source.cell(n).len()))
    }

    pub fn comps(&self) -> &BTreeMap<i64, HomMatrix<F>> {
        &self.comps
    }

    /// Degrees where source and target both have cells.
    pub fn degrees(&self) -> Vec<i64> {
        common_degrees(&self.source, &self.target, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|m| m.is_zero())
    }

    /// First degree where `∂^n f^n ≠ f^(n+1) d^n`.
    pub fn failing_degree(&self, alg: &Algebra<F>) -> Option<i64> {
        let lo = self.source.lo().min(self.target.lo()) - 1;
        let hi = self.source.hi().max(self.target.hi());
        (lo..=hi).find(|&n| {
            let lhs = self.target.diff(alg, n).mul(alg, &self.comp(alg, n));
            let rhs = self.comp(alg, n + 1).mul(alg, &self.source.diff(alg, n));
            lhs != rhs
        })
    }

    pub fn is_chain_map(&self, alg: &Algebra<F>) -> bool {
        self.failing_degree(alg).is_none()
    }

    /// `self ∘ f`.
    pub fn after(&self, alg: &Algebra<F>, f: &ChainMap<F>) -> Result<Self, ComplexError> {
        compose(alg, self, f)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&HomMatrix<F>, &HomMatrix<F>) -> HomMatrix<F>, alg: &Algebra<F>) -> Self {
        assert_eq!(self.source, other.source, "sum of maps with different sources");
        assert_eq!(self.target, other.target, "sum of maps with different targets");
        Self::from_fn(self.source.clone(), self.target.clone(), |n| {
            op(&self.comp(alg, n), &other.comp(alg, n))
        })
    }

    pub fn add(&self, alg: &Algebra<F>, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.add(b), alg)
    }

    pub fn sub(&self, alg: &Algebra<F>, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.sub(b), alg)
    }

    pub fn scale(&self, c: &F) -> Self {
        let comps = self.comps.iter().map(|(n, m)| (*n, m.scale(c))).collect();
        Self::new_unchecked(self.source.clone(), self.target.clone(), comps)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    /// `f[k]^n = f^(n+k)`, no sign.
    pub fn shift(&self, k: i64) -> Self {
        let comps = self.comps.iter().map(|(n, m)| (n - k, m.clone())).collect();
        Self::new_unchecked(self.source.shift(k), self.target.shift(k), comps)
    }

    /// Same components viewed between other (equal-celled) complexes.
    pub fn with_ends(&self, source: ProjComplex<F>, target: ProjComplex<F>) -> Self {
        Self::new_unchecked(source, target, self.comps.clone())
    }

    /// Whether every component is an isomorphism of projectives.
    pub fn is_degreewise_iso(&self, alg: &Algebra<F>) -> bool {
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi());
        (lo..=hi).all(|n| {
            let (s, t) = (self.source.cell(n), self.target.cell(n));
            s.len() == t.len() && (s.is_empty() || self.comp(alg, n).inverse(alg, t, s).is_some())
        })
    }

    pub fn format(&self, alg: &Algebra<F>) -> String {
        self.comps
            .iter()
            .map(|(n, m)| format!("{n}: {}", m.format(alg)))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// `g ∘ f`.
pub fn compose<F: Scalar>(alg: &Algebra<F>, g: &ChainMap<F>, f: &ChainMap<F>) -> Result<ChainMap<F>, ComplexError> {
    if g.source.cells() != f.target.cells() || g.source.lo() != f.target.lo() {
        return Err(ComplexError::Mismatch("g's source is not f's target".into()));
    }
    Ok(ChainMap::from_fn(f.source.clone(), g.target.clone(), |n| {
        g.comp(alg, n).mul(alg, &f.comp(alg, n))
    }))
}

/// Degreewise maps `s^n: X^n -> Y^(n-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Homotopy<F> {
    pub comps: BTreeMap<i64, HomMatrix<F>>,
}

impl<F: Scalar> Homotopy<F> {
    pub fn zero() -> Self {
        Homotopy { comps: BTreeMap::new() }
    }

    pub fn comp(&self, alg: &Algebra<F>, x: &ProjComplex<F>, y: &ProjComplex<F>, n: i64) -> HomMatrix<F> {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| HomMatrix::zeros(alg, y.cell(n - 1).len(), x.cell(n).len()))
    }

    /// `∂s + sd` as a map `X -> Y`.
    pub fn boundary(&self, alg: &Algebra<F>, x: &ProjComplex<F>, y: &ProjComplex<F>) -> ChainMap<F> {
        ChainMap::from_fn(x.clone(), y.clone(), |n| {
            let a = y.diff(alg, n - 1).mul(alg, &self.comp(alg, x, y, n));
            let b = self.comp(alg, x, y, n + 1).mul(alg, &x.diff(alg, n));
            a.add(&b)
        })
    }

    /// Checks `f - g = ∂s + sd`.
    pub fn witnesses(&self, alg: &Algebra<F>, f: &ChainMap<F>, g: &ChainMap<F>) -> bool {
        let diff = f.sub(alg, g);
        let b = self.boundary(alg, f.source(), f.target());
        diff.degrees().into_iter().chain(b.degrees()).all(|n| diff.comp(alg, n) == b.comp(alg, n))
    }

    pub fn add(&self, alg: &Algebra<F>, x: &ProjComplex<F>, y: &ProjComplex<F>, other: &Self) -> Self {
        let mut comps = BTreeMap::new();
        for n in self.comps.keys().chain(other.comps.keys()) {
            comps.insert(*n, self.comp(alg, x, y, *n).add(&other.comp(alg, x, y, *n)));
        }
        Homotopy { comps }
    }

    /// `a ∘ s ∘ b` for chain maps `b: W -> X`, `a: Y -> V`.
    pub fn conjugate(&self, alg: &Algebra<F>, a: &ChainMap<F>, b: &ChainMap<F>) -> Self {
        let (x, y) = (b.target(), a.source());
        let mut comps = BTreeMap::new();
        for n in b.source().degrees() {
            let m = a.comp(alg, n - 1).mul(alg, &self.comp(alg, x, y, n)).mul(alg, &b.comp(alg, n));
            if m.rows() > 0 && m.cols() > 0 {
                comps.insert(n, m);
            }
        }
        Homotopy { comps }
    }

    pub fn scale(&self, c: &F) -> Self {
        Homotopy {
            comps: self.comps.iter().map(|(n, m)| (*n, m.scale(c))).collect(),
        }
    }
}

/// `X -u-> Y -v-> Z -w-> X[1]`.
#[derive(Clone, Debug)]
pub struct Triangle<F> {
    pub u: ChainMap<F>,
    pub v: ChainMap<F>,
    pub w: ChainMap<F>,
}

impl<F: Scalar> Triangle<F> {
    pub fn x(&self) -> &ProjComplex<F> {
        self.u.source()
    }

    pub fn y(&self) -> &ProjComplex<F> {
        self.u.target()
    }

    pub fn z(&self) -> &ProjComplex<F> {
        self.v.target()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tests_support::{a5, elem};

    #[test]
    fn compose_with_identity() {
        let alg = a5();
        let x = ProjComplex::stalk(vec![0], 0);
        let y = ProjComplex::stalk(vec![1], 0);
        let f = ChainMap::from_fn(x.clone(), y.clone(), |_| HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "delta")));
        assert!(f.is_chain_map(&alg));
        let id = ChainMap::identity(&alg, &y);
        assert_eq!(compose(&alg, &id, &f).unwrap(), f);
        assert!(compose(&alg, &f, &f).is_err());
    }

    #[test]
    fn chain_condition_checked() {
        let alg = a5();
        let d = HomMatrix::from_fn(1, 1, |_, _| elem(&alg, "delta"));
        let y = ProjComplex::new(&alg, -1, vec![vec![0], vec![1]], vec![d]).unwrap();
        let x = ProjComplex::stalk(vec![0], -1);
        let mut comps = BTreeMap::new();
        comps.insert(-1, HomMatrix::identity(&alg, &[0]));
        assert_eq!(ChainMap::new(&alg, x, y, comps), Err(ComplexError::NotChainMap(-1)));
    }
}

use std::collections::{BTreeMap, HashMap};

use exact_linalg::{Matrix, Scalar};

use crate::{AlgebraError, Path, Quiver};

pub const DEFAULT_MAX_LEN: usize = 32;

/// Dense coordinates over [`Algebra::basis`].
pub type Elem<F> = Vec<F>;

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<F> {
    pub terms: Vec<(F, Path)>,
}

impl<F: Scalar> Relation<F> {
    pub fn new(terms: Vec<(F, Path)>) -> Self {
        Relation { terms }
    }

    pub fn monomial(p: Path) -> Self {
        Relation {
            terms: vec![(F::one(), p)],
        }
    }

    fn check(&self, q: &Quiver) -> Result<(), AlgebraError> {
        let first = self
            .terms
            .first()
            .ok_or_else(|| AlgebraError::InadmissibleRelation("empty relation".into()))?;
        let ends = (first.1.source, first.1.target);
        for (_, p) in &self.terms {
            if p.len() < 2 {
                return Err(AlgebraError::InadmissibleRelation(format!(
                    "term `{}` has length {}",
                    q.format_path(p),
                    p.len()
                )));
            }
            if (p.source, p.target) != ends {
                return Err(AlgebraError::InadmissibleRelation(format!(
                    "term `{}` is not parallel to the others",
                    q.format_path(p)
                )));
            }
        }
        Ok(())
    }
}

/// `kQ/I` with a path basis and a full multiplication table.
#[derive(Clone, Debug)]
pub struct Algebra<F> {
    quiver: Quiver,
    relations: Vec<Relation<F>>,
    max_len: usize,
    /// Every path of this length lies in the ideal.
    nilpotency: usize,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    /// Normal forms of non-basis paths shorter than `nilpotency`.
    reductions: HashMap<Path, Vec<(usize, F)>>,
    table: Vec<Vec<Vec<(usize, F)>>>,
    blocks: Vec<Vec<Vec<usize>>>,
}

impl<F: Scalar> Algebra<F> {
    pub fn build(quiver: Quiver, relations: Vec<Relation<F>>, max_len: usize) -> Result<Self, AlgebraError> {
        for r in &relations {
            r.check(&quiver)?;
        }
        let n = quiver.vertex_count();
        let mut by_len: Vec<Vec<Path>> = vec![(0..n).map(Path::trivial).collect()];
        for bound in 1..=max_len {
            let mut next = Vec::new();
            for p in &by_len[bound - 1] {
                for (i, a) in quiver.arrows().iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(i);
                        next.push(Path {
                            source: p.source,
                            target: a.target,
                            arrows,
                        });
                    }
                }
            }
            by_len.push(next);
            if let Some(found) = Self::try_bound(&relations, &by_len, bound) {
                let (basis, reductions) = found;
                return Ok(Self::assemble(quiver, relations, max_len, bound, basis, reductions));
            }
        }
        Err(AlgebraError::NotFiniteDimensional(max_len))
    }

    /// Tests whether every path of length `bound` lies in `I + rad^(bound+1)`.
    /// On success returns the basis and the reductions of the remaining paths.
    #[allow(clippy::type_complexity)]
    fn try_bound(
        relations: &[Relation<F>],
        by_len: &[Vec<Path>],
        bound: usize,
    ) -> Option<(Vec<Path>, HashMap<Path, Vec<(Path, F)>>)> {
        let mut columns: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
        for p in by_len.iter().flatten() {
            columns.entry((p.source, p.target)).or_default().push(p.clone());
        }
        for cols in columns.values_mut() {
            cols.sort_by(|a, b| a.graded_key().cmp(&b.graded_key()));
        }
        let mut rows: BTreeMap<(usize, usize), Vec<HashMap<Path, F>>> = BTreeMap::new();
        for r in relations {
            let min = r.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
            if min > bound {
                continue;
            }
            let (s, t) = (r.terms[0].1.source, r.terms[0].1.target);
            for ul in 0..=bound - min {
                for u in by_len[ul].iter().filter(|u| u.target == s) {
                    for vl in 0..=bound - min - ul {
                        for v in by_len[vl].iter().filter(|v| v.source == t) {
                            let mut row: HashMap<Path, F> = HashMap::new();
                            for (c, p) in &r.terms {
                                if ul + p.len() + vl > bound {
                                    continue;
                                }
                                let w = u.then(p).and_then(|x| x.then(v)).expect("composable");
                                let e = row.entry(w).or_insert_with(F::zero);
                                *e = e.add_ref(c);
                            }
                            row.retain(|_, c| !c.is_zero());
                            if !row.is_empty() {
                                rows.entry((u.source, v.target)).or_default().push(row);
                            }
                        }
                    }
                }
            }
        }
        let mut basis = Vec::new();
        let mut reductions = HashMap::new();
        for (key, cols) in &columns {
            let gens = rows.get(key).map(|v| v.as_slice()).unwrap_or(&[]);
            let pos: HashMap<&Path, usize> = cols.iter().enumerate().map(|(i, p)| (p, i)).collect();
            let mut m = Matrix::<F>::zeros(gens.len(), cols.len());
            for (i, g) in gens.iter().enumerate() {
                for (p, c) in g {
                    m[(i, pos[p])] = c.clone();
                }
            }
            let rref = m.rref();
            let pivot_row: HashMap<usize, usize> =
                rref.pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
            for (j, p) in cols.iter().enumerate() {
                if p.len() == bound && !pivot_row.contains_key(&j) {
                    return None;
                }
            }
            for (j, p) in cols.iter().enumerate() {
                if p.len() >= bound {
                    continue;
                }
                match pivot_row.get(&j) {
                    None => basis.push(p.clone()),
                    Some(&r) => {
                        let nf: Vec<(Path, F)> = (j + 1..cols.len())
                            .filter(|c| !pivot_row.contains_key(c) && !rref.matrix[(r, *c)].is_zero())
                            .map(|c| (cols[c].clone(), -rref.matrix[(r, c)].clone()))
                            .collect();
                        reductions.insert(p.clone(), nf);
                    }
                }
            }
        }
        Some((basis, reductions))
    }

    fn assemble(
        quiver: Quiver,
        relations: Vec<Relation<F>>,
        max_len: usize,
        nilpotency: usize,
        mut basis: Vec<Path>,
        reductions: HashMap<Path, Vec<(Path, F)>>,
    ) -> Self {
        basis.sort_by(|a, b| {
            (a.len(), a.source, a.target, &a.arrows).cmp(&(b.len(), b.source, b.target, &b.arrows))
        });
        let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let reductions: HashMap<Path, Vec<(usize, F)>> = reductions
            .into_iter()
            .map(|(p, nf)| (p, nf.into_iter().map(|(q, c)| (index[&q], c)).collect()))
            .collect();
        let n = quiver.vertex_count();
        let mut blocks = vec![vec![Vec::new(); n]; n];
        for (i, p) in basis.iter().enumerate() {
            blocks[p.source][p.target].push(i);
        }
        let mut alg = Algebra {
            quiver,
            relations,
            max_len,
            nilpotency,
            basis,
            index,
            reductions,
            table: Vec::new(),
            blocks,
        };
        let dim = alg.basis.len();
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                if let Some(p) = alg.basis[i].then(&alg.basis[j]) {
                    *cell = alg.reduce_path(&p);
                }
            }
        }
        alg.table = table;
        alg
    }

    fn reduce_path(&self, p: &Path) -> Vec<(usize, F)> {
        if p.len() >= self.nilpotency {
            return Vec::new();
        }
        if let Some(&i) = self.index.get(p) {
            return vec![(i, F::one())];
        }
        self.reductions.get(p).cloned().unwrap_or_default()
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation<F>] {
        &self.relations
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// The certified bound `L`: every path of length `L` lies in the ideal.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// Basis indices of paths from `source` to `target`, i.e. of `e_source Λ e_target`.
    pub fn block(&self, source: usize, target: usize) -> &[usize] {
        &self.blocks[source][target]
    }

    /// Basis of `Hom(P_i, P_j) = e_j Λ e_i`.
    pub fn hom_proj(&self, i: usize, j: usize) -> &[usize] {
        self.block(j, i)
    }

    pub fn zero(&self) -> Elem<F> {
        vec![F::zero(); self.dim()]
    }

    pub fn basis_elem(&self, k: usize) -> Elem<F> {
        let mut x = self.zero();
        x[k] = F::one();
        x
    }

    /// The idempotent `e_v`.
    pub fn unit(&self, v: usize) -> Elem<F> {
        self.basis_elem(self.index[&Path::trivial(v)])
    }

    pub fn one(&self) -> Elem<F> {
        let mut x = self.zero();
        for v in 0..self.vertex_count() {
            x[self.index[&Path::trivial(v)]] = F::one();
        }
        x
    }

    pub fn trivial_index(&self, v: usize) -> usize {
        self.index[&Path::trivial(v)]
    }

    pub fn path_elem(&self, p: &Path) -> Elem<F> {
        let mut x = self.zero();
        for (i, c) in self.reduce_path(p) {
            x[i] = x[i].add_ref(&c);
        }
        x
    }

    pub fn from_terms(&self, terms: &[(F, Path)]) -> Elem<F> {
        let mut x = self.zero();
        for (c, p) in terms {
            for (i, d) in self.reduce_path(p) {
                x[i].add_mul(c, &d);
            }
        }
        x
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Elem<F> {
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.mul_ref(b);
                for (k, c) in &self.table[i][j] {
                    out[*k].add_mul(&ab, c);
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[F], y: &[F]) -> Elem<F> {
        x.iter().zip(y).map(|(a, b)| a.add_ref(b)).collect()
    }

    pub fn sub(&self, x: &[F], y: &[F]) -> Elem<F> {
        x.iter().zip(y).map(|(a, b)| a.sub_ref(b)).collect()
    }

    pub fn scale(&self, c: &F, x: &[F]) -> Elem<F> {
        x.iter().map(|a| a.mul_ref(c)).collect()
    }

    pub fn neg(&self, x: &[F]) -> Elem<F> {
        x.iter().map(|a| -a.clone()).collect()
    }

    pub fn is_zero(&self, x: &[F]) -> bool {
        x.iter().all(|a| a.is_zero())
    }

    /// Basis indices of length at least `n`; spans `rad^n`.
    pub fn radical_layer(&self, n: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].len() >= n).collect()
    }

    /// Coefficient of `e_v` in `x`.
    pub fn scalar_part(&self, x: &[F], v: usize) -> F {
        x[self.trivial_index(v)].clone()
    }

    pub fn is_radical(&self, x: &[F]) -> bool {
        x.iter()
            .zip(&self.basis)
            .all(|(c, p)| !p.is_trivial() || c.is_zero())
    }

    /// Radical but not in `rad^2`.
    pub fn is_arrow_class(&self, x: &[F]) -> bool {
        self.is_radical(x) && x.iter().zip(&self.basis).any(|(c, p)| p.len() == 1 && !c.is_zero())
    }

    /// Whether `x` lies in `e_source Λ e_target`.
    pub fn lies_in(&self, x: &[F], source: usize, target: usize) -> bool {
        x.iter()
            .zip(&self.basis)
            .all(|(c, p)| c.is_zero() || (p.source == source && p.target == target))
    }

    /// The opposite algebra, over the reversed quiver with reversed relations.
    pub fn opposite(&self) -> Result<Self, AlgebraError> {
        let rels = self
            .relations
            .iter()
            .map(|r| Relation::new(r.terms.iter().map(|(c, p)| (c.clone(), p.reversed())).collect()))
            .collect();
        Self::build(self.quiver.opposite(), rels, self.max_len)
    }

    /// Maps `x` to `target`, an algebra over the reversed quiver, by reading
    /// every path backwards.
    pub fn transport_reversed(&self, x: &[F], target: &Algebra<F>) -> Elem<F> {
        let mut out = target.zero();
        for (c, p) in x.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (i, d) in target.reduce_path(&p.reversed()) {
                out[i].add_mul(c, &d);
            }
        }
        out
    }

    pub fn format_elem(&self, x: &[F]) -> String {
        let terms: Vec<String> = x
            .iter()
            .zip(&self.basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, p)| {
                let path = self.quiver.format_path(p);
                if c.is_one() {
                    path
                } else {
                    format!("{c}*{path}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    /// Nonzero `(coefficient, path)` terms of `x` in basis order.
    pub fn terms(&self, x: &[F]) -> Vec<(F, Path)> {
        x.iter()
            .zip(&self.basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, p)| (c.clone(), p.clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::{One, Rational, F32003};

    fn a3(with_relation: bool) -> Algebra<Rational> {
        let q = Quiver::new(&["1", "2", "3"], &[("a", "2", "1"), ("b", "3", "2")]).unwrap();
        let rels = if with_relation {
            vec![Relation::monomial(q.parse_path("b a").unwrap())]
        } else {
            vec![]
        };
        Algebra::build(q, rels, DEFAULT_MAX_LEN).unwrap()
    }

    fn a5() -> Algebra<Rational> {
        let q = Quiver::new(
            &["1", "2", "3", "4", "5"],
            &[("delta", "2", "1"), ("gamma", "3", "2"), ("beta", "4", "3"), ("alpha", "5", "4")],
        )
        .unwrap();
        let r = Relation::monomial(q.parse_path("alpha beta gamma delta").unwrap());
        Algebra::build(q, vec![r], DEFAULT_MAX_LEN).unwrap()
    }

    /// Counts paths of a quiver by brute force, independent of the builder.
    fn count_paths(q: &Quiver, max: usize) -> usize {
        let mut frontier: Vec<usize> = (0..q.vertex_count()).collect();
        let mut total = frontier.len();
        for _ in 0..max {
            let next: Vec<usize> = frontier
                .iter()
                .flat_map(|&v| q.arrows().iter().filter(move |a| a.source == v).map(|a| a.target))
                .collect();
            total += next.len();
            frontier = next;
        }
        total
    }

    #[test]
    fn a3_hereditary_dimension() {
        let alg = a3(false);
        assert_eq!(alg.dim(), 6);
        assert_eq!(alg.dim(), count_paths(alg.quiver(), 10));
        let names: Vec<String> = alg.basis().iter().map(|p| alg.quiver().format_path(p)).collect();
        assert!(names.contains(&"b a".to_string()));
        assert_eq!(alg.radical_layer(2).len(), 1);
        assert_eq!(alg.radical_layer(0).len(), 6);
        assert!(alg.radical_layer(alg.nilpotency()).is_empty());
    }

    #[test]
    fn a3_with_relation() {
        let alg = a3(true);
        assert_eq!(alg.dim(), 5);
        assert_eq!(alg.nilpotency(), 2);
    }

    #[test]
    fn a5_dimension_and_products() {
        let alg = a5();
        assert_eq!(count_paths(alg.quiver(), 10), 15);
        assert_eq!(alg.dim(), 14);
        let q = alg.quiver();
        let p = |s: &str| alg.path_elem(&q.parse_path(s).unwrap());
        assert_eq!(alg.mul(&p("alpha"), &p("beta")), p("alpha beta"));
        assert!(alg.is_zero(&alg.mul(&p("alpha beta gamma"), &p("delta"))));
        assert_eq!(alg.hom_proj(0, 1).len(), 1);
        assert!(alg.hom_proj(0, 4).is_empty());
        assert!(alg.is_arrow_class(&p("delta")));
        assert!(!alg.is_arrow_class(&p("gamma delta")));
        assert!(!alg.is_arrow_class(&alg.unit(0)));
    }

    #[test]
    fn single_vertex() {
        let q = Quiver::new(&["1"], &[] as &[(&str, &str, &str)]).unwrap();
        let alg: Algebra<Rational> = Algebra::build(q, vec![], 4).unwrap();
        assert_eq!(alg.dim(), 1);
    }

    #[test]
    fn loop_without_relation_is_infinite() {
        let q = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        let err = Algebra::<Rational>::build(q, vec![], 6).unwrap_err();
        assert_eq!(err, AlgebraError::NotFiniteDimensional(6));
    }

    #[test]
    fn loop_with_nilpotent_relation() {
        let q = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        let r = Relation::monomial(q.parse_path("x x x").unwrap());
        let alg = Algebra::<Rational>::build(q, vec![r], 8).unwrap();
        assert_eq!(alg.dim(), 3);
    }

    #[test]
    fn commutativity_relation() {
        // Commutative square 1 -> 2 -> 4, 1 -> 3 -> 4 with a b = c d.
        let q = Quiver::new(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        )
        .unwrap();
        let r = Relation::new(vec![
            (Rational::one(), q.parse_path("a b").unwrap()),
            (-Rational::one(), q.parse_path("c d").unwrap()),
        ]);
        let alg = Algebra::build(q.clone(), vec![r], 8).unwrap();
        assert_eq!(alg.dim(), 9);
        let ab = alg.path_elem(&q.parse_path("a b").unwrap());
        let cd = alg.path_elem(&q.parse_path("c d").unwrap());
        assert_eq!(ab, cd);
        assert!(!alg.is_zero(&ab));
    }

    #[test]
    fn inadmissible_relations_rejected() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let r = Relation::<Rational>::monomial(q.parse_path("a").unwrap());
        assert!(matches!(
            Algebra::build(q, vec![r], 4),
            Err(AlgebraError::InadmissibleRelation(_))
        ));
    }

    fn check_axioms<F: Scalar>(alg: &Algebra<F>) {
        let n = alg.dim();
        let one = alg.one();
        for i in 0..n {
            let x = alg.basis_elem(i);
            assert_eq!(alg.mul(&one, &x), x);
            assert_eq!(alg.mul(&x, &one), x);
            for j in 0..n {
                let y = alg.basis_elem(j);
                let xy = alg.mul(&x, &y);
                for k in 0..n {
                    let z = alg.basis_elem(k);
                    assert_eq!(alg.mul(&xy, &z), alg.mul(&x, &alg.mul(&y, &z)));
                }
                if alg.basis()[i].len() >= 1 && alg.basis()[j].len() >= 1 {
                    assert!(xy.iter().zip(alg.basis()).all(|(c, p)| c.is_zero() || p.len() >= 2));
                }
            }
        }
        let mut total = 0;
        for s in 0..alg.vertex_count() {
            for t in 0..alg.vertex_count() {
                total += alg.block(s, t).len();
            }
        }
        assert_eq!(total, n);
        for r in alg.relations() {
            assert!(alg.is_zero(&alg.from_terms(&r.terms)));
        }
    }

    #[test]
    fn algebra_axioms_on_fixtures() {
        check_axioms(&a3(false));
        check_axioms(&a3(true));
        check_axioms(&a5());
        let op = a5().opposite().unwrap();
        assert_eq!(op.dim(), 14);
        check_axioms(&op);
    }

    #[test]
    fn transport_is_an_anti_isomorphism() {
        let alg = a5();
        let op = alg.opposite().unwrap();
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let x = alg.basis_elem(i);
                let y = alg.basis_elem(j);
                let lhs = alg.transport_reversed(&alg.mul(&x, &y), &op);
                let rhs = op.mul(&alg.transport_reversed(&y, &op), &alg.transport_reversed(&x, &op));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn prime_field_build() {
        let q = Quiver::new(&["1", "2", "3"], &[("a", "2", "1"), ("b", "3", "2")]).unwrap();
        let alg = Algebra::<F32003>::build(q, vec![], 8).unwrap();
        assert_eq!(alg.dim(), 6);
        check_axioms(&alg);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn linear_with_zero_relations(n: usize, cuts: &[(usize, usize)]) -> Algebra<Rational> {
            let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            let arrows: Vec<(String, String, String)> = (1..n)
                .map(|k| (format!("x{k}"), (k + 1).to_string(), k.to_string()))
                .collect();
            let q = Quiver::new(&names, &arrows).unwrap();
            let rels = cuts
                .iter()
                .filter(|(s, l)| *l >= 2 && s + l < n)
                .map(|&(s, l)| {
                    let arrows: Vec<usize> = (0..l).map(|k| n - 2 - s - k).collect();
                    Relation::monomial(Path::from_arrows(&q, arrows).unwrap())
                })
                .collect();
            Algebra::build(q, rels, 16).unwrap()
        }

        proptest! {
            #[test]
            fn random_linear_algebras_satisfy_axioms(
                n in 1usize..6,
                cuts in proptest::collection::vec((0usize..5, 2usize..5), 0..3)
            ) {
                let alg = linear_with_zero_relations(n, &cuts);
                check_axioms(&alg);
            }
        }
    }
}

use std::collections::BTreeMap;

use complexes::{compose, cone, minimize, ChainMap, ProjComplex, Triangle};
use exact_linalg::Scalar;
use path_algebra::Algebra;
use quiver_rep::Direction;
use shapes::{classify, decompose, k_inverse, k_isomorphism, theorem2_shape, MorphClass};

use crate::ar::{verify_ar, ARTriangleRecord};
use crate::{KnitError, Translator};

#[derive(Clone, Debug)]
pub struct SliceArrow<F> {
    pub source: usize,
    pub target: usize,
    pub map: ChainMap<F>,
}

/// Seed nodes for knitting with the arrows between them.
#[derive(Clone, Debug)]
pub struct Slice<F> {
    pub nodes: Vec<ProjComplex<F>>,
    pub arrows: Vec<SliceArrow<F>>,
}

impl<F: Scalar> Slice<F> {
    pub fn new(alg: &Algebra<F>, nodes: Vec<ProjComplex<F>>, arrows: Vec<SliceArrow<F>>) -> Result<Self, KnitError> {
        let s = Slice { nodes, arrows };
        s.verify(alg)?;
        Ok(s)
    }

    pub fn verify(&self, alg: &Algebra<F>) -> Result<(), KnitError> {
        let bad = |m: String| Err(KnitError::InvalidSlice(m));
        for (i, x) in self.nodes.iter().enumerate() {
            if x.is_zero() || !x.is_minimal(alg) {
                return bad(format!("node {i} is zero or not minimal"));
            }
        }
        for (k, a) in self.arrows.iter().enumerate() {
            if a.source >= self.nodes.len() || a.target >= self.nodes.len() {
                return bad(format!("arrow {k} names a missing node"));
            }
            if a.map.source() != &self.nodes[a.source] || a.map.target() != &self.nodes[a.target] {
                return bad(format!("arrow {k} does not join its declared nodes"));
            }
            if !a.map.is_chain_map(alg) {
                return bad(format!("arrow {k} is not a chain map"));
            }
            if !classify(alg, &a.map)?.is_classified() {
                return bad(format!("arrow {k} is unclassified"));
            }
        }
        Ok(())
    }

    /// The slice quiver as `(source, target)` pairs.
    pub fn quiver(&self) -> Vec<(usize, usize)> {
        self.arrows.iter().map(|a| (a.source, a.target)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Node<F> {
    pub complex: ProjComplex<F>,
    pub signature: String,
    /// τ-orbit id and position along it: `τ⁻¹` raises `index` by one.
    pub orbit: usize,
    pub index: i64,
    pub in_slice: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrowOrigin {
    Slice,
    Mesh,
}

#[derive(Clone, Debug)]
pub struct CompArrow<F> {
    pub source: usize,
    pub target: usize,
    pub map: ChainMap<F>,
    pub class: MorphClass<F>,
    pub origin: ArrowOrigin,
}

/// An AR triangle `start -> ⊕ middle -> end` together with the arrows it
/// contributes.
#[derive(Clone, Debug)]
pub struct Mesh<F> {
    pub start: usize,
    pub end: usize,
    pub middle: Vec<usize>,
    pub in_arrows: Vec<usize>,
    pub out_arrows: Vec<usize>,
    pub record: ARTriangleRecord<F>,
}

#[derive(Clone, Debug)]
pub struct ARComponent<F> {
    pub nodes: Vec<Node<F>>,
    pub arrows: Vec<CompArrow<F>>,
    pub meshes: Vec<Mesh<F>>,
    /// `(x, τ⁻¹x)` for every translate pair found among the nodes.
    pub tau_pairs: Vec<(usize, usize)>,
    /// Given slice arrows that the meshes at their ends show to factor
    /// through other nodes; they are not arrows of the component.
    pub reducible_slice_arrows: Vec<(usize, usize)>,
}

impl<F: Scalar> ARComponent<F> {
    pub fn find(&self, signature: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.signature == signature)
    }

    pub fn signatures(&self) -> Vec<&str> {
        self.nodes.iter().map(|n| n.signature.as_str()).collect()
    }

    pub fn mesh_starting(&self, node: usize) -> Option<&Mesh<F>> {
        self.meshes.iter().find(|m| m.start == node)
    }

    pub fn mesh_ending(&self, node: usize) -> Option<&Mesh<F>> {
        self.meshes.iter().find(|m| m.end == node)
    }

    pub fn tau_inverse(&self, node: usize) -> Option<usize> {
        self.tau_pairs.iter().find(|p| p.0 == node).map(|p| p.1)
    }

    pub fn tau(&self, node: usize) -> Option<usize> {
        self.tau_pairs.iter().find(|p| p.1 == node).map(|p| p.0)
    }

    pub fn mesh_arrows(&self) -> impl Iterator<Item = &CompArrow<F>> {
        self.arrows.iter().filter(|a| a.origin == ArrowOrigin::Mesh)
    }
}

/// `there: x -> node` and `back: node -> x`, mutually inverse in K.
struct Iso<F> {
    there: ChainMap<F>,
    back: ChainMap<F>,
}

struct Knit<'a, F> {
    tr: &'a Translator<F>,
    c: ARComponent<F>,
    by_sig: BTreeMap<String, Vec<usize>>,
    next_orbit: usize,
}

impl<F: Scalar> Knit<'_, F> {
    fn alg(&self) -> &Algebra<F> {
        &self.tr.alg
    }

    fn lookup(&self, x: &ProjComplex<F>, sig: &str) -> Option<(usize, Option<Iso<F>>)> {
        for &id in self.by_sig.get(sig).into_iter().flatten() {
            let node = &self.c.nodes[id].complex;
            if node == x {
                return Some((id, None));
            }
            if let Some(there) = k_isomorphism(self.alg(), x, node) {
                let back = k_inverse(self.alg(), &there).expect("isomorphism");
                return Some((id, Some(Iso { there, back })));
            }
        }
        None
    }

    fn register(&mut self, x: &ProjComplex<F>) -> Result<(usize, Option<Iso<F>>), KnitError> {
        let sig = x.signature(self.alg())?;
        if let Some(hit) = self.lookup(x, &sig) {
            return Ok(hit);
        }
        let id = self.c.nodes.len();
        self.c.nodes.push(Node {
            complex: x.clone(),
            signature: sig.clone(),
            orbit: self.next_orbit,
            index: 0,
            in_slice: false,
        });
        self.next_orbit += 1;
        self.by_sig.entry(sig).or_default().push(id);
        Ok((id, None))
    }

    /// Records `b = τ⁻¹a`, merging orbits.
    fn link(&mut self, a: usize, b: usize) -> Result<(), KnitError> {
        if self.c.tau_pairs.contains(&(a, b)) {
            return Ok(());
        }
        if self.c.tau_inverse(a).is_some() || self.c.tau(b).is_some() {
            return Err(KnitError::MeshInconsistency(format!(
                "{} or {} already has a translate",
                self.c.nodes[a].signature, self.c.nodes[b].signature
            )));
        }
        let (oa, ia) = (self.c.nodes[a].orbit, self.c.nodes[a].index);
        let (ob, ib) = (self.c.nodes[b].orbit, self.c.nodes[b].index);
        if oa == ob {
            if ib != ia + 1 {
                return Err(KnitError::MeshInconsistency(format!(
                    "{} recurs in its own orbit",
                    self.c.nodes[a].signature
                )));
            }
        } else {
            let delta = ia + 1 - ib;
            for n in &mut self.c.nodes {
                if n.orbit == ob {
                    n.orbit = oa;
                    n.index += delta;
                }
            }
        }
        self.c.tau_pairs.push((a, b));
        Ok(())
    }

    fn add_arrow(&mut self, source: usize, target: usize, nth: usize, map: ChainMap<F>) -> Result<usize, KnitError> {
        let existing = self
            .c
            .arrows
            .iter()
            .enumerate()
            .filter(|(_, a)| a.origin == ArrowOrigin::Mesh && a.source == source && a.target == target)
            .map(|(k, _)| k)
            .nth(nth);
        if let Some(k) = existing {
            return Ok(k);
        }
        let class = classify(self.alg(), &map)?;
        self.c.arrows.push(CompArrow {
            source,
            target,
            map,
            class,
            origin: ArrowOrigin::Mesh,
        });
        Ok(self.c.arrows.len() - 1)
    }

    fn add_mesh(&mut self, rec: ARTriangleRecord<F>) -> Result<usize, KnitError> {
        let alg = self.tr.alg.clone();
        let t = rec.triangle;
        let (start, xi) = self.register(t.x())?;
        let (end, zi) = self.register(t.z())?;
        let x = self.c.nodes[start].complex.clone();
        let z = self.c.nodes[end].complex.clone();
        let mut u = t.u.clone();
        let mut v = t.v.clone();
        let mut w = t.w.clone();
        if let Some(iso) = &xi {
            u = compose(&alg, &u, &iso.back)?;
            w = compose(&alg, &iso.there.shift(1), &w)?;
        }
        if let Some(iso) = &zi {
            v = compose(&alg, &iso.there, &v)?;
            w = compose(&alg, &w, &iso.back)?;
        }
        let triangle = Triangle { u, v, w };
        let z_from_cone = minimize(&alg, &cone(&alg, &triangle.u).complex).complex;
        if k_isomorphism(&alg, &z_from_cone, &z).is_none() {
            return Err(KnitError::MeshInconsistency(format!(
                "cone of the left map out of {} is {}, translate is {}",
                x.name(&alg),
                z_from_cone.name(&alg),
                z.name(&alg)
            )));
        }
        let mut middle = Vec::new();
        let mut in_arrows = Vec::new();
        let mut out_arrows = Vec::new();
        for s in decompose(&alg, triangle.y()) {
            let (id, si) = self.register(&s.complex)?;
            let (mut into, mut out) = (s.projection.clone(), s.inclusion.clone());
            if let Some(iso) = &si {
                into = compose(&alg, &iso.there, &into)?;
                out = compose(&alg, &out, &iso.back)?;
            }
            let nth = middle.iter().filter(|&&m| m == id).count();
            in_arrows.push(self.add_arrow(start, id, nth, compose(&alg, &into, &triangle.u)?)?);
            out_arrows.push(self.add_arrow(id, end, nth, compose(&alg, &triangle.v, &out)?)?);
            middle.push(id);
        }
        let u_class = classify(&alg, &triangle.u)?;
        let template = Some(theorem2_shape(&alg, &u_class, &triangle)?.template);
        let report = verify_ar(&alg, &triangle, &[]);
        self.link(start, end)?;
        self.c.meshes.push(Mesh {
            start,
            end,
            middle,
            in_arrows,
            out_arrows,
            record: ARTriangleRecord {
                triangle,
                report,
                template,
            },
        });
        Ok(self.c.meshes.len() - 1)
    }

    fn step(&mut self, node: usize, direction: Direction) -> Result<usize, KnitError> {
        let known = match direction {
            Direction::Inverse => self.c.mesh_starting(node).map(|m| m.end),
            Direction::Forward => self.c.mesh_ending(node).map(|m| m.start),
        };
        if let Some(next) = known {
            return Ok(next);
        }
        let x = self.c.nodes[node].complex.clone();
        let rec = match direction {
            Direction::Inverse => self.tr.ar_triangle_starting(&x)?,
            Direction::Forward => self.tr.ar_triangle_ending(&x)?,
        };
        let id = self.add_mesh(rec)?;
        let m = &self.c.meshes[id];
        Ok(match direction {
            Direction::Inverse => m.end,
            Direction::Forward => m.start,
        })
    }

    /// Places nodes met only as middle terms by matching their translates.
    fn link_orbits(&mut self) -> Result<(), KnitError> {
        for i in 0..self.c.nodes.len() {
            let x = self.c.nodes[i].complex.clone();
            if self.c.tau_inverse(i).is_none() {
                let t = minimize(self.alg(), &self.tr.tau_unchecked(&x, Direction::Inverse)?).complex;
                if let Some((j, _)) = self.lookup(&t, &t.name(self.alg())) {
                    self.link(i, j)?;
                }
            }
            if self.c.tau(i).is_none() {
                let t = minimize(self.alg(), &self.tr.tau_unchecked(&x, Direction::Forward)?).complex;
                if let Some((j, _)) = self.lookup(&t, &t.name(self.alg())) {
                    self.link(j, i)?;
                }
            }
        }
        Ok(())
    }

    fn normalize_orbits(&mut self) {
        let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
        for n in &self.c.nodes {
            let next = ids.len();
            ids.entry(n.orbit).or_insert(next);
        }
        for n in &mut self.c.nodes {
            n.orbit = ids[&n.orbit];
        }
    }
}

/// Knits the component through `slice`, following each slice node `fwd` steps
/// along `τ⁻¹` and `bwd` steps along `τ`. Every mesh is checked against the
/// cone of its left map, matched to a shape template, and verified against
/// all nodes of the result.
pub fn knit_component<F: Scalar>(tr: &Translator<F>, slice: &Slice<F>, fwd: usize, bwd: usize) -> Result<ARComponent<F>, KnitError> {
    let alg = &tr.alg;
    slice.verify(alg)?;
    let mut k = Knit {
        tr,
        c: ARComponent {
            nodes: Vec::new(),
            arrows: Vec::new(),
            meshes: Vec::new(),
            tau_pairs: Vec::new(),
            reducible_slice_arrows: Vec::new(),
        },
        by_sig: BTreeMap::new(),
        next_orbit: 0,
    };
    let mut seeds = Vec::new();
    for x in &slice.nodes {
        let (id, iso) = k.register(x)?;
        if iso.is_some() || seeds.contains(&id) {
            return Err(KnitError::InvalidSlice(format!("{} appears twice", x.name(alg))));
        }
        if !shapes::is_indecomposable_k(alg, x) {
            return Err(KnitError::NotIndecomposable(x.name(alg)));
        }
        k.c.nodes[id].in_slice = true;
        seeds.push(id);
    }
    for &s in &seeds {
        let mut cur = s;
        for _ in 0..fwd {
            cur = k.step(cur, Direction::Inverse)?;
        }
        let mut cur = s;
        for _ in 0..bwd {
            cur = k.step(cur, Direction::Forward)?;
        }
    }
    if fwd + bwd > 0 {
        k.link_orbits()?;
    }
    k.normalize_orbits();
    for a in &slice.arrows {
        let (source, target) = (seeds[a.source], seeds[a.target]);
        if k.c.mesh_arrows().any(|m| m.source == source && m.target == target) {
            continue;
        }
        let known = k.c.mesh_starting(source).is_some() || k.c.mesh_ending(target).is_some();
        if known {
            k.c.reducible_slice_arrows.push((source, target));
            continue;
        }
        k.c.arrows.push(CompArrow {
            source,
            target,
            map: a.map.clone(),
            class: classify(alg, &a.map)?,
            origin: ArrowOrigin::Slice,
        });
    }
    let all: Vec<ProjComplex<F>> = k.c.nodes.iter().map(|n| n.complex.clone()).collect();
    for m in &mut k.c.meshes {
        m.record.report = verify_ar(alg, &m.record.triangle, &all);
    }
    Ok(k.c)
}

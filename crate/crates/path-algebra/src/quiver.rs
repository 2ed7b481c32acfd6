use std::collections::HashSet;

use crate::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Arrows are `(name, source, target)` given by vertex names.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self, AlgebraError> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(AlgebraError::DuplicateName(v.clone()));
            }
        }
        let mut q = Quiver {
            vertices,
            arrows: Vec::new(),
        };
        for (name, s, t) in arrows {
            let name = name.as_ref().to_string();
            if !seen.insert(name.clone()) {
                return Err(AlgebraError::DuplicateName(name));
            }
            let source = q.vertex(s.as_ref())?;
            let target = q.vertex(t.as_ref())?;
            q.arrows.push(Arrow { name, source, target });
        }
        Ok(q)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, name: &str) -> Result<usize, AlgebraError> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| AlgebraError::UnknownVertex(name.to_string()))
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, name: &str) -> Result<usize, AlgebraError> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| AlgebraError::UnknownArrow(name.to_string()))
    }

    /// Same vertices and arrow names, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    /// Parses a path from whitespace-separated arrow names; `e<vertex>` is
    /// the trivial path.
    pub fn parse_path(&self, text: &str) -> Result<Path, AlgebraError> {
        let words: Vec<&str> = text.split_whitespace().collect();
        if let [w] = words.as_slice() {
            if self.arrow(w).is_err() {
                if let Some(v) = w.strip_prefix('e') {
                    return Ok(Path::trivial(self.vertex(v)?));
                }
            }
        }
        if words.is_empty() {
            return Err(AlgebraError::NotComposable("empty path".into()));
        }
        let arrows = words
            .iter()
            .map(|w| self.arrow(w))
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_arrows(self, arrows).ok_or_else(|| AlgebraError::NotComposable(text.to_string()))
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e{}", self.vertices[p.source])
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

/// A path read left to right; trivial when `arrows` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Option<Self> {
        let first = q.arrows.get(*arrows.first()?)?;
        let mut at = first.target;
        for &a in &arrows[1..] {
            let arrow = q.arrows.get(a)?;
            if arrow.source != at {
                return None;
            }
            at = arrow.target;
        }
        Some(Path {
            source: first.source,
            target: at,
            arrows,
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Path) -> Option<Path> {
        if self.target != next.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(Path {
            source: self.source,
            target: next.target,
            arrows,
        })
    }

    /// The same arrows read backwards, as a path of the opposite quiver.
    pub fn reversed(&self) -> Path {
        Path {
            source: self.target,
            target: self.source,
            arrows: self.arrows.iter().rev().copied().collect(),
        }
    }

    /// Ordering key: shorter paths first, then lexicographic.
    pub(crate) fn graded_key(&self) -> (usize, &[usize]) {
        (self.arrows.len(), &self.arrows)
    }
}

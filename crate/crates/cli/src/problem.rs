use std::collections::BTreeMap;

use complexes::{ChainMap, HomMatrix, ProjComplex, Triangle};
use exact_linalg::{Matrix, Scalar};
use path_algebra::{Algebra, AlgebraError, Elem, Path, Quiver, Relation, DEFAULT_MAX_LEN};
use quiver_rep::{ar_translate_mod, min_proj_resolution, standard_module, Direction, ModuleKind, Representation, DEFAULT_MAX_RES};

use crate::error::{CliError, ParseError, ParseErrorKind};
use crate::lex::{lines, tokenize, Cursor, Line, TokKind, Token};

pub const FIELD_ENV: &str = "ARQUIVER_FIELD";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rational,
    Prime,
}

impl FieldChoice {
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().replace(' ', "").as_str() {
            "q" | "qq" | "rational" | "rationals" => Some(FieldChoice::Rational),
            "gf(32003)" | "f32003" | "fp" | "z/32003" => Some(FieldChoice::Prime),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FieldChoice::Rational => "Q",
            FieldChoice::Prime => "GF(32003)",
        }
    }

    pub fn of<F: Scalar>() -> Self {
        if F::characteristic() == 0 {
            FieldChoice::Rational
        } else {
            FieldChoice::Prime
        }
    }
}

const SECTION_NAMES: [&str; 7] = ["field", "quiver", "relations", "modules", "complexes", "maps", "tasks"];

/// Lines of a problem file grouped under their section headers.
pub struct Sections {
    map: BTreeMap<&'static str, (Line, Vec<Line>)>,
}

impl Sections {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut map: BTreeMap<&'static str, (Line, Vec<Line>)> = BTreeMap::new();
        let mut current: Option<&'static str> = None;
        for line in lines(text) {
            let trimmed = line.text.trim();
            if let Some(inner) = trimmed.strip_prefix('[') {
                let col = line.text.find('[').unwrap() + 2;
                let name = inner
                    .strip_suffix(']')
                    .ok_or_else(|| line.error(col, ParseErrorKind::Syntax("unterminated section header".into())))?
                    .trim();
                let known = SECTION_NAMES
                    .iter()
                    .find(|s| **s == name)
                    .ok_or_else(|| line.error(col, ParseErrorKind::Syntax(format!("unknown section `{name}`"))))?;
                if map.contains_key(known) {
                    return Err(line.error(col, ParseErrorKind::Syntax(format!("duplicate section `{name}`"))));
                }
                map.insert(known, (line.clone(), Vec::new()));
                current = Some(known);
            } else {
                let Some(sec) = current else {
                    let col = line.text.len() - line.text.trim_start().len() + 1;
                    return Err(line.error(col, ParseErrorKind::Syntax("expected a section header".into())));
                };
                map.get_mut(sec).unwrap().1.push(line);
            }
        }
        Ok(Sections { map })
    }

    fn body(&self, name: &str) -> &[Line] {
        self.map.get(name).map_or(&[], |(_, b)| b.as_slice())
    }

    fn header(&self, name: &str) -> Option<&Line> {
        self.map.get(name).map(|(h, _)| h)
    }

    /// The declared field; `Q` when the section is absent.
    pub fn field(&self) -> Result<FieldChoice, ParseError> {
        match self.body("field") {
            [] => Ok(FieldChoice::Rational),
            [line] => FieldChoice::parse(&line.text).ok_or_else(|| {
                line.error(first_col(line), ParseErrorKind::Syntax(format!("unknown field `{}`", line.text.trim())))
            }),
            [_, extra, ..] => Err(extra.error(first_col(extra), ParseErrorKind::Syntax("one field per file".into()))),
        }
    }
}

fn first_col(line: &Line) -> usize {
    line.text.len() - line.text.trim_start().len() + 1
}

#[derive(Clone, Debug)]
pub struct NamedMap<F> {
    pub name: String,
    pub source: String,
    pub target: String,
    pub map: ChainMap<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleDef {
    pub name: String,
    pub maps: [String; 3],
}

/// A parsed problem file over the field `F`.
#[derive(Clone)]
pub struct Problem<F> {
    pub name: String,
    pub alg: Algebra<F>,
    pub op: Algebra<F>,
    pub modules: Vec<(String, Representation<F>)>,
    pub complexes: Vec<(String, ProjComplex<F>)>,
    pub maps: Vec<NamedMap<F>>,
    pub triangles: Vec<TriangleDef>,
    pub tasks: Vec<Line>,
}

impl<F: Scalar> std::fmt::Debug for Problem<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("field", &self.field())
            .field("dim", &self.alg.dim())
            .field("modules", &self.modules.iter().map(|(n, _)| n).collect::<Vec<_>>())
            .field("complexes", &self.complexes.iter().map(|(n, _)| n).collect::<Vec<_>>())
            .field("maps", &self.maps.iter().map(|m| &m.name).collect::<Vec<_>>())
            .field("tasks", &self.tasks.len())
            .finish()
    }
}

struct Term<F> {
    coef: F,
    path: Option<Path>,
    col: usize,
}

enum Item<'a> {
    Single(&'a Line),
    Block(&'a Line, &'a [Line]),
}

/// Groups `complex`/`map` blocks, which run up to a line reading `end`.
fn items(body: &[Line]) -> Result<Vec<Item<'_>>, ParseError> {
    let mut out = Vec::new();
    let mut k = 0;
    while k < body.len() {
        let line = &body[k];
        let head = line.text.split_whitespace().next().unwrap_or("");
        let opens = (head == "complex" || head == "map") && !line.text.contains('=');
        if opens {
            let close = body[k + 1..]
                .iter()
                .position(|l| l.text.trim() == "end")
                .ok_or_else(|| line.error(first_col(line), ParseErrorKind::Syntax(format!("`{head}` block without `end`"))))?;
            out.push(Item::Block(line, &body[k + 1..k + 1 + close]));
            k += close + 2;
        } else {
            out.push(Item::Single(line));
            k += 1;
        }
    }
    Ok(out)
}

fn number<F: Scalar>(tok: &Token, line: &Line) -> Result<F, ParseError> {
    F::parse(&tok.text).ok_or_else(|| line.error(tok.col, ParseErrorKind::Syntax(format!("bad number `{}`", tok.text))))
}

fn path_error(e: AlgebraError, line: &Line, col: usize) -> ParseError {
    match e {
        AlgebraError::UnknownArrow(a) | AlgebraError::UnknownVertex(a) => line.error(col, ParseErrorKind::UnknownReference(a)),
        other => line.error(col, ParseErrorKind::Invalid(other.to_string())),
    }
}

/// `elem = sterm {("+" | "-") sterm}`, `sterm = {"-"} (num ["*"] [path] | path)`.
fn terms<F: Scalar>(q: &Quiver, toks: &[Token], line: &Line) -> Result<Vec<Term<F>>, ParseError> {
    let mut out = Vec::new();
    let mut k = 0;
    let end_col = |k: usize| toks.get(k).map_or(line.text.trim_end().chars().count() + 1, |t| t.col);
    let syntax = |k: usize, msg: String| line.error(end_col(k), ParseErrorKind::Syntax(msg));
    loop {
        let mut negative = false;
        while k < toks.len() && toks[k].is("-") {
            negative = !negative;
            k += 1;
        }
        let col = end_col(k);
        let mut coef = F::one();
        let mut seen = false;
        if k < toks.len() && toks[k].kind == TokKind::Num {
            coef = number(&toks[k], line)?;
            seen = true;
            k += 1;
            if k < toks.len() && toks[k].is("*") {
                k += 1;
                if !(k < toks.len() && toks[k].kind == TokKind::Ident) {
                    return Err(syntax(k, "expected a path after `*`".into()));
                }
            }
        }
        let start = k;
        while k < toks.len() && toks[k].kind == TokKind::Ident {
            k += 1;
        }
        let path = if k > start {
            let words: Vec<&str> = toks[start..k].iter().map(|t| t.text.as_str()).collect();
            Some(q.parse_path(&words.join(" ")).map_err(|e| path_error(e, line, toks[start].col))?)
        } else if seen {
            None
        } else {
            return Err(syntax(k, "expected a term".into()));
        };
        if negative {
            coef = -coef;
        }
        out.push(Term { coef, path, col });
        match toks.get(k) {
            None => return Ok(out),
            Some(t) if t.is("+") => k += 1,
            Some(t) if t.is("-") => {}
            Some(t) => return Err(syntax(k, format!("unexpected `{}`", t.text))),
        }
    }
}

fn parse_quiver(sections: &Sections) -> Result<(String, Quiver), ParseError> {
    let mut name = "A".to_string();
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    for line in sections.body("quiver") {
        let toks = line.tokens()?;
        let mut cur = Cursor::new(line, &toks);
        let kw = cur.ident()?;
        match kw.text.as_str() {
            "name" => {
                name = cur.ident()?.text.clone();
                cur.finish()?;
            }
            "vertices" => {
                while !cur.at_end() {
                    let v = cur.ident()?;
                    if vertices.contains(&v.text) {
                        return Err(line.error(v.col, ParseErrorKind::Syntax(format!("duplicate vertex `{}`", v.text))));
                    }
                    vertices.push(v.text.clone());
                }
            }
            "arrow" => {
                let a = cur.ident()?;
                if a.kind != TokKind::Ident {
                    return Err(line.error(a.col, ParseErrorKind::Syntax("arrow names start with a letter".into())));
                }
                if arrows.iter().any(|(n, _, _)| *n == a.text) || vertices.contains(&a.text) {
                    return Err(line.error(a.col, ParseErrorKind::Syntax(format!("duplicate name `{}`", a.text))));
                }
                cur.expect(":")?;
                let s = cur.ident()?;
                cur.expect("->")?;
                let t = cur.ident()?;
                cur.finish()?;
                for v in [s, t] {
                    if !vertices.contains(&v.text) {
                        return Err(line.error(v.col, ParseErrorKind::UnknownReference(v.text.clone())));
                    }
                }
                arrows.push((a.text.clone(), s.text.clone(), t.text.clone()));
            }
            other => return Err(line.error(kw.col, ParseErrorKind::Syntax(format!("unknown quiver entry `{other}`")))),
        }
    }
    if vertices.is_empty() {
        let (line, col) = match sections.header("quiver") {
            Some(h) => (h.number, first_col(h)),
            None => (1, 1),
        };
        return Err(ParseError::new(line, col, ParseErrorKind::Syntax("the quiver needs at least one vertex".into())));
    }
    let arrow_refs: Vec<(&str, &str, &str)> = arrows.iter().map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str())).collect();
    let vertex_refs: Vec<&str> = vertices.iter().map(String::as_str).collect();
    let q = Quiver::new(&vertex_refs, &arrow_refs).map_err(|e| ParseError::new(1, 1, ParseErrorKind::Invalid(e.to_string())))?;
    Ok((name, q))
}

fn parse_relations<F: Scalar>(sections: &Sections, q: &Quiver) -> Result<Vec<Relation<F>>, ParseError> {
    let mut out = Vec::new();
    for line in sections.body("relations") {
        let toks = line.tokens()?;
        let ts = terms::<F>(q, &toks, line)?;
        let mut rel = Vec::new();
        let mut ends = None;
        for t in ts {
            let Some(p) = t.path else {
                return Err(line.error(t.col, ParseErrorKind::InadmissibleRelation("a scalar term is not a path of length at least 2".into())));
            };
            if p.len() < 2 {
                return Err(line.error(
                    t.col,
                    ParseErrorKind::InadmissibleRelation(format!("`{}` has length {}", q.format_path(&p), p.len())),
                ));
            }
            match ends {
                None => ends = Some((p.source, p.target)),
                Some(e) if e != (p.source, p.target) => {
                    return Err(line.error(t.col, ParseErrorKind::InadmissibleRelation("terms are not parallel".into())))
                }
                _ => {}
            }
            rel.push((t.coef, p));
        }
        out.push(Relation::new(rel));
    }
    Ok(out)
}

impl<F: Scalar> Problem<F> {
    /// A problem with no definitions or tasks over a ready-made algebra.
    pub fn new(name: &str, alg: Algebra<F>) -> Result<Self, AlgebraError> {
        let op = alg.opposite()?;
        Ok(Problem {
            name: name.to_string(),
            alg,
            op,
            modules: Vec::new(),
            complexes: Vec::new(),
            maps: Vec::new(),
            triangles: Vec::new(),
            tasks: Vec::new(),
        })
    }

    pub fn field(&self) -> FieldChoice {
        FieldChoice::of::<F>()
    }

    fn vertex(&self, tok: &Token, line: &Line) -> Result<usize, ParseError> {
        self.alg
            .quiver()
            .vertex(&tok.text)
            .map_err(|_| line.error(tok.col, ParseErrorKind::UnknownReference(tok.text.clone())))
    }

    /// An element of `Hom(P_col, P_row)`; a bare scalar means a multiple of
    /// the identity and needs `row == col` unless it is zero.
    fn entry(&self, toks: &[Token], line: &Line, row: usize, col: usize) -> Result<Elem<F>, ParseError> {
        if toks.is_empty() {
            return Err(line.error(line.text.trim_end().len() + 1, ParseErrorKind::Syntax("empty entry".into())));
        }
        let q = self.alg.quiver();
        let mut acc: Vec<(F, Path)> = Vec::new();
        for t in terms::<F>(q, toks, line)? {
            match t.path {
                Some(p) => {
                    if (p.source, p.target) != (row, col) {
                        return Err(line.error(
                            t.col,
                            ParseErrorKind::Invalid(format!(
                                "`{}` is not a map P{} -> P{}",
                                q.format_path(&p),
                                q.vertex_name(col),
                                q.vertex_name(row)
                            )),
                        ));
                    }
                    acc.push((t.coef, p));
                }
                None if t.coef.is_zero() => {}
                None if row == col => acc.push((t.coef, Path::trivial(row))),
                None => {
                    return Err(line.error(
                        t.col,
                        ParseErrorKind::Invalid(format!(
                            "a scalar is not a map P{} -> P{}",
                            q.vertex_name(col),
                            q.vertex_name(row)
                        )),
                    ))
                }
            }
        }
        Ok(self.alg.from_terms(&acc))
    }

    /// `"[" [row {";" row}] "]"` with comma-separated entries, checked
    /// against the given cells; `0` stands for the zero block.
    fn hom_matrix(&self, cur: &mut Cursor<'_>, rows: &[usize], cols: &[usize]) -> Result<HomMatrix<F>, ParseError> {
        let line = cur.line();
        if cur.peek().is_some_and(|t| t.is("0")) {
            cur.next();
            return Ok(HomMatrix::zeros(&self.alg, rows.len(), cols.len()));
        }
        let open = cur.expect("[")?.col;
        let toks = cur.rest();
        let Some(close) = toks.iter().rposition(|t| t.is("]")) else {
            return Err(line.error(open, ParseErrorKind::Syntax("unterminated matrix".into())));
        };
        if close + 1 != toks.len() {
            return Err(line.error(toks[close + 1].col, ParseErrorKind::Syntax(format!("unexpected `{}`", toks[close + 1].text))));
        }
        let inner = &toks[..close];
        let grid: Vec<Vec<&[Token]>> = if inner.is_empty() {
            Vec::new()
        } else {
            inner.split(|t| t.is(";")).map(|r| r.split(|t| t.is(",")).collect()).collect()
        };
        if grid.len() != rows.len() || grid.iter().any(|r| r.len() != cols.len()) {
            return Err(line.error(
                open,
                ParseErrorKind::Invalid(format!("matrix must be {}x{} for these cells", rows.len(), cols.len())),
            ));
        }
        let mut m = HomMatrix::zeros(&self.alg, rows.len(), cols.len());
        for (i, r) in grid.iter().enumerate() {
            for (j, e) in r.iter().enumerate() {
                m.set(i, j, self.entry(e, line, rows[i], cols[j])?);
            }
        }
        Ok(m)
    }

    /// `"(" row "," col ")" "=" elem`, written into `m`.
    fn sparse_entry(&self, cur: &mut Cursor<'_>, m: &mut HomMatrix<F>, rows: &[usize], cols: &[usize]) -> Result<(), ParseError> {
        let line = cur.line();
        cur.expect("(")?;
        let col_r = cur.col();
        let r = cur.int()?;
        cur.expect(",")?;
        let col_c = cur.col();
        let c = cur.int()?;
        cur.expect(")")?;
        cur.expect("=")?;
        if r < 0 || r as usize >= rows.len() {
            return Err(line.error(col_r, ParseErrorKind::Invalid(format!("row {r} out of range"))));
        }
        if c < 0 || c as usize >= cols.len() {
            return Err(line.error(col_c, ParseErrorKind::Invalid(format!("column {c} out of range"))));
        }
        let (r, c) = (r as usize, c as usize);
        let value = self.entry(cur.rest(), line, rows[r], cols[c])?;
        m.set(r, c, value);
        Ok(())
    }

    fn module_at(&self, cur: &mut Cursor<'_>) -> Result<Representation<F>, ParseError> {
        let line = cur.line();
        let tok = cur.ident()?;
        let translate = |dir, cur: &mut Cursor<'_>| -> Result<Representation<F>, ParseError> {
            let inner = self.module_at(cur)?;
            ar_translate_mod(&self.alg, &self.op, &inner, dir).map_err(|e| line.error(tok.col, ParseErrorKind::Invalid(e.to_string())))
        };
        match tok.text.as_str() {
            "tau" => translate(Direction::Forward, cur),
            "tau-inv" => translate(Direction::Inverse, cur),
            "rep" => self.rep_literal(cur),
            name => {
                if let Some((_, m)) = self.modules.iter().find(|(n, _)| n == name) {
                    return Ok(m.clone());
                }
                let kind = match name.chars().next() {
                    Some('P') => Some(ModuleKind::Projective),
                    Some('I') => Some(ModuleKind::Injective),
                    Some('S') => Some(ModuleKind::Simple),
                    _ => None,
                };
                match kind.zip(self.alg.quiver().vertex(&name[1..]).ok()) {
                    Some((k, v)) => Ok(standard_module(&self.alg, k, v)),
                    None => Err(line.error(tok.col, ParseErrorKind::UnknownReference(name.to_string()))),
                }
            }
        }
    }

    /// `rep [d1, ..., dn] {arrow "=" matrix}`; arrows left out act as zero.
    fn rep_literal(&self, cur: &mut Cursor<'_>) -> Result<Representation<F>, ParseError> {
        let line = cur.line();
        let q = self.alg.quiver();
        let at = cur.col();
        let dims: Vec<usize> = self
            .scalar_rows(cur)?
            .into_iter()
            .flatten()
            .map(|(t, _)| t.text.parse::<usize>().map_err(|_| line.error(t.col, ParseErrorKind::Syntax("dimensions are natural numbers".into()))))
            .collect::<Result<_, _>>()?;
        if dims.len() != q.vertex_count() {
            return Err(line.error(at, ParseErrorKind::Invalid(format!("expected {} dimensions", q.vertex_count()))));
        }
        let mut maps: Vec<Matrix<F>> = q.arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
        while !cur.at_end() {
            let a = cur.ident()?;
            let k = q.arrow(&a.text).map_err(|_| line.error(a.col, ParseErrorKind::UnknownReference(a.text.clone())))?;
            cur.expect("=")?;
            let at = cur.col();
            let rows = self.scalar_rows(cur)?;
            let arrow = &q.arrows()[k];
            let (r, c) = (dims[arrow.target], dims[arrow.source]);
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(line.error(at, ParseErrorKind::Invalid(format!("matrix for `{}` must be {r}x{c}", a.text))));
            }
            let values = rows
                .into_iter()
                .map(|row| row.into_iter().map(|(t, neg)| number::<F>(t, line).map(|x| if neg { -x } else { x })).collect())
                .collect::<Result<Vec<Vec<F>>, _>>()?;
            maps[k] = if r == 0 || c == 0 { Matrix::zeros(r, c) } else { Matrix::from_rows(values) };
        }
        Representation::new(&self.alg, dims, maps).map_err(|e| line.error(at, ParseErrorKind::Invalid(e.to_string())))
    }

    /// A bracketed matrix of plain numbers, each with its sign.
    fn scalar_rows<'a>(&self, cur: &mut Cursor<'a>) -> Result<Vec<Vec<(&'a Token, bool)>>, ParseError> {
        cur.expect("[")?;
        let mut rows: Vec<Vec<(&Token, bool)>> = vec![Vec::new()];
        loop {
            match cur.peek() {
                Some(t) if t.is("]") => {
                    cur.next();
                    break;
                }
                Some(t) if t.is(";") => {
                    cur.next();
                    rows.push(Vec::new());
                }
                Some(t) if t.is(",") => {
                    cur.next();
                }
                Some(_) => {
                    let neg = cur.peek_is("-");
                    if neg {
                        cur.next();
                    }
                    match cur.next() {
                        Some(t) if t.kind == TokKind::Num => rows.last_mut().unwrap().push((t, neg)),
                        _ => return Err(cur.error("expected a number")),
                    }
                }
                None => return Err(cur.error("unterminated matrix")),
            }
        }
        if rows.len() == 1 && rows[0].is_empty() {
            rows.clear();
        }
        Ok(rows)
    }

    /// `(name | module-expr) ["[" int "]"]`; a module stands for its minimal
    /// projective resolution.
    fn complex_at(&self, cur: &mut Cursor<'_>) -> Result<ProjComplex<F>, ParseError> {
        let line = cur.line();
        let col = cur.col();
        let named = cur
            .peek()
            .and_then(|t| self.complexes.iter().find(|(n, _)| *n == t.text))
            .map(|(_, x)| x.clone());
        let base = match named {
            Some(x) => {
                cur.next();
                x
            }
            None => {
                let m = self.module_at(cur)?;
                min_proj_resolution(&self.alg, &m, DEFAULT_MAX_RES)
                    .map_err(|e| line.error(col, ParseErrorKind::Invalid(e.to_string())))?
                    .complex
            }
        };
        if cur.peek_is("[") {
            cur.next();
            let k = cur.int()?;
            cur.expect("]")?;
            return Ok(base.shift(k));
        }
        Ok(base)
    }

    fn check_header(&self, cur: &mut Cursor<'_>, kw: &str) -> Result<(), ParseError> {
        let line = cur.line();
        let col = cur.col();
        let rest: Vec<&str> = cur.rest().iter().map(|t| t.text.as_str()).collect();
        let text = rest.join("");
        let ok = match kw {
            "field" => FieldChoice::parse(&text) == Some(self.field()),
            _ => text == self.name,
        };
        if ok {
            Ok(())
        } else {
            Err(line.error(col, ParseErrorKind::Invalid(format!("{kw} `{text}` does not match this file"))))
        }
    }

    fn complex_block(&self, header: &Line, body: &[Line]) -> Result<(String, ProjComplex<F>), ParseError> {
        let htoks = header.tokens()?;
        let mut hc = Cursor::new(header, &htoks);
        hc.expect("complex")?;
        let name = hc.ident()?.text.clone();
        hc.finish()?;
        let mut cells: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        let mut diff_lines = Vec::new();
        for line in body {
            let toks = line.tokens()?;
            let mut cur = Cursor::new(line, &toks);
            let kw = cur.ident()?;
            match kw.text.as_str() {
                "field" | "algebra" => self.check_header(&mut cur, &kw.text)?,
                "cell" => {
                    let n = cur.int()?;
                    cur.expect(":")?;
                    let mut vs = Vec::new();
                    while !cur.at_end() {
                        let t = cur.ident()?;
                        vs.push(self.vertex(t, line)?);
                    }
                    if cells.insert(n, vs).is_some() {
                        return Err(line.error(kw.col, ParseErrorKind::Syntax(format!("cell {n} given twice"))));
                    }
                }
                "d" => diff_lines.push((line, toks.clone())),
                other => return Err(line.error(kw.col, ParseErrorKind::Syntax(format!("unknown complex entry `{other}`")))),
            }
        }
        let (lo, hi) = match (cells.keys().next(), cells.keys().last()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => (0, -1),
        };
        let cell = |n: i64| cells.get(&n).cloned().unwrap_or_default();
        let mut diffs: BTreeMap<i64, HomMatrix<F>> = (lo..hi)
            .map(|n| (n, HomMatrix::zeros(&self.alg, cell(n + 1).len(), cell(n).len())))
            .collect();
        for (line, toks) in &diff_lines {
            let mut cur = Cursor::new(line, toks);
            cur.ident()?;
            let col = cur.col();
            let n = cur.int()?;
            let Some(m) = diffs.get_mut(&n) else {
                return Err(line.error(col, ParseErrorKind::Invalid(format!("no differential leaves degree {n}"))));
            };
            if cur.peek_is("=") {
                cur.next();
                *m = self.hom_matrix(&mut cur, &cell(n + 1), &cell(n))?;
            } else {
                self.sparse_entry(&mut cur, m, &cell(n + 1), &cell(n))?;
            }
            cur.finish()?;
        }
        let x = ProjComplex::new(&self.alg, lo, (lo..=hi).map(cell).collect(), diffs.into_values().collect())
            .map_err(|e| header.error(first_col(header), ParseErrorKind::Invalid(format!("complex `{name}`: {e}"))))?;
        Ok((name, x))
    }

    fn map_block(&self, header: &Line, body: &[Line]) -> Result<NamedMap<F>, ParseError> {
        let htoks = header.tokens()?;
        let mut hc = Cursor::new(header, &htoks);
        hc.expect("map")?;
        let name = hc.ident()?.text.clone();
        hc.expect(":")?;
        let (source, source_name) = self.named_complex_at(&mut hc, "->")?;
        hc.expect("->")?;
        let (target, target_name) = self.named_complex_at(&mut hc, "")?;
        hc.finish()?;
        let mut comps: BTreeMap<i64, HomMatrix<F>> = BTreeMap::new();
        for line in body {
            let toks = line.tokens()?;
            let mut cur = Cursor::new(line, &toks);
            let kw = cur.ident()?;
            match kw.text.as_str() {
                "field" | "algebra" => self.check_header(&mut cur, &kw.text)?,
                "c" => {
                    let n = cur.int()?;
                    let (rows, cols) = (target.cell(n), source.cell(n));
                    let m = comps.entry(n).or_insert_with(|| HomMatrix::zeros(&self.alg, rows.len(), cols.len()));
                    if cur.peek_is("=") {
                        cur.next();
                        *m = self.hom_matrix(&mut cur, rows, cols)?;
                    } else {
                        self.sparse_entry(&mut cur, m, rows, cols)?;
                    }
                    cur.finish()?;
                }
                other => return Err(line.error(kw.col, ParseErrorKind::Syntax(format!("unknown map entry `{other}`")))),
            }
        }
        let map = ChainMap::new(&self.alg, source, target, comps)
            .map_err(|e| header.error(first_col(header), ParseErrorKind::Invalid(format!("map `{name}`: {e}"))))?;
        Ok(NamedMap { name, source: source_name, target: target_name, map })
    }

    /// A complex reference together with its source text.
    fn named_complex_at(&self, cur: &mut Cursor<'_>, stop: &str) -> Result<(ProjComplex<F>, String), ParseError> {
        let start = cur.col();
        let x = self.complex_at(cur)?;
        if !stop.is_empty() && !cur.peek_is(stop) {
            return Err(cur.error(format!("expected `{stop}`")));
        }
        let end = cur.peek().map_or(cur.line().text.len() + 1, |t| t.col);
        let text: String = cur.line().text.chars().skip(start - 1).take(end - start).collect();
        Ok((x, text.split_whitespace().collect::<Vec<_>>().join(" ")))
    }

    fn define(&mut self, line: &Line, kind: &str, name: &Token) -> Result<(), ParseError> {
        let taken = self.modules.iter().any(|(n, _)| *n == name.text)
            || self.complexes.iter().any(|(n, _)| *n == name.text)
            || self.maps.iter().any(|m| m.name == name.text)
            || self.triangles.iter().any(|t| t.name == name.text);
        if taken {
            return Err(line.error(name.col, ParseErrorKind::Syntax(format!("{kind} name `{}` is already defined", name.text))));
        }
        Ok(())
    }

    fn read_modules(&mut self, body: &[Line]) -> Result<(), ParseError> {
        for line in body {
            let toks = line.tokens()?;
            let mut cur = Cursor::new(line, &toks);
            let name = cur.ident()?;
            self.define(line, "module", name)?;
            cur.expect("=")?;
            let m = self.module_at(&mut cur)?;
            cur.finish()?;
            self.modules.push((name.text.clone(), m));
        }
        Ok(())
    }

    /// Reads `complex` and `map` blocks, one-line complex definitions and
    /// `triangle` lines in order.
    pub fn read_definitions(&mut self, body: &[Line]) -> Result<(), ParseError> {
        for item in items(body)? {
            match item {
                Item::Block(header, inner) => {
                    let toks = header.tokens()?;
                    let name_tok = toks.get(1).ok_or_else(|| header.error(first_col(header), ParseErrorKind::Syntax("missing name".into())))?;
                    self.define(header, &toks[0].text, name_tok)?;
                    if toks[0].is("complex") {
                        let (name, x) = self.complex_block(header, inner)?;
                        self.complexes.push((name, x));
                    } else {
                        let m = self.map_block(header, inner)?;
                        self.maps.push(m);
                    }
                }
                Item::Single(line) => {
                    let toks = line.tokens()?;
                    let mut cur = Cursor::new(line, &toks);
                    let first = cur.ident()?;
                    if first.is("triangle") {
                        let name = cur.ident()?;
                        self.define(line, "triangle", name)?;
                        cur.expect(":")?;
                        let mut maps: Vec<String> = Vec::new();
                        for _ in 0..3 {
                            let t = cur.ident()?;
                            if !self.maps.iter().any(|m| m.name == t.text) {
                                return Err(line.error(t.col, ParseErrorKind::UnknownReference(t.text.clone())));
                            }
                            maps.push(t.text.clone());
                        }
                        cur.finish()?;
                        let def = TriangleDef { name: name.text.clone(), maps: [maps[0].clone(), maps[1].clone(), maps[2].clone()] };
                        if self.triangle_of(&def).is_none() {
                            return Err(line.error(name.col, ParseErrorKind::Invalid("the three maps do not form a triangle X -> Y -> Z -> X[1]".into())));
                        }
                        self.triangles.push(def);
                    } else {
                        self.define(line, "complex", first)?;
                        cur.expect("=")?;
                        let x = self.complex_at(&mut cur)?;
                        cur.finish()?;
                        self.complexes.push((first.text.clone(), x));
                    }
                }
            }
        }
        Ok(())
    }

    fn triangle_of(&self, def: &TriangleDef) -> Option<Triangle<F>> {
        let get = |n: &str| self.maps.iter().find(|m| m.name == n).map(|m| m.map.clone());
        let (u, v, w) = (get(&def.maps[0])?, get(&def.maps[1])?, get(&def.maps[2])?);
        let fits = u.target() == v.source() && v.target() == w.source() && *w.target() == u.source().shift(1);
        fits.then_some(Triangle { u, v, w })
    }

    pub fn triangle(&self, name: &str) -> Option<Triangle<F>> {
        self.triangles.iter().find(|t| t.name == name).and_then(|t| self.triangle_of(t))
    }

    pub fn map(&self, name: &str) -> Result<&NamedMap<F>, CliError> {
        self.maps
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| CliError::UnknownReference(name.to_string()))
    }

    fn eval<T>(&self, text: &str, f: impl FnOnce(&Self, &mut Cursor<'_>) -> Result<T, ParseError>) -> Result<T, CliError> {
        let line = Line { number: 0, text: text.to_string() };
        let toks = tokenize(text).map_err(|(_, msg)| CliError::Usage(format!("`{text}`: {msg}")))?;
        let mut cur = Cursor::new(&line, &toks);
        let out = f(self, &mut cur).and_then(|v| cur.finish().map(|_| v));
        out.map_err(|e| match e.kind {
            ParseErrorKind::UnknownReference(r) => CliError::UnknownReference(r),
            ParseErrorKind::Invalid(msg) => CliError::Domain(msg),
            other => CliError::Usage(format!("`{text}`: {other}")),
        })
    }

    /// Evaluates a module expression such as `tau-inv P1`.
    pub fn module(&self, text: &str) -> Result<Representation<F>, CliError> {
        self.eval(text, |p, cur| p.module_at(cur))
    }

    /// Evaluates a complex reference such as `X[1]` or `S2`.
    pub fn complex(&self, text: &str) -> Result<ProjComplex<F>, CliError> {
        self.eval(text, |p, cur| p.complex_at(cur))
    }

    /// Names whose complexes the given slice list refers to.
    pub fn complex_name_of(&self, x: &ProjComplex<F>) -> Option<&str> {
        self.complexes.iter().find(|(_, y)| y == x).map(|(n, _)| n.as_str())
    }

    /// Parses blocks written by the serializer, in this problem's algebra.
    pub fn read_serialized(&self, text: &str) -> Result<Problem<F>, ParseError> {
        let mut scratch = Problem {
            complexes: Vec::new(),
            maps: Vec::new(),
            triangles: Vec::new(),
            ..self.clone()
        };
        scratch.read_definitions(&lines(text))?;
        Ok(scratch)
    }
}

/// Parses a problem file, reading coefficients in `F` whatever the file's
/// `[field]` says; see [`Sections::field`] to pick `F`.
pub fn parse_problem<F: Scalar>(text: &str) -> Result<Problem<F>, ParseError> {
    let sections = Sections::parse(text)?;
    sections.field()?;
    let (name, q) = parse_quiver(&sections)?;
    let relations = parse_relations::<F>(&sections, &q)?;
    let alg = Algebra::build(q, relations, DEFAULT_MAX_LEN).map_err(|e| {
        let (line, col) = sections.header("relations").map_or((1, 1), |h| (h.number, first_col(h)));
        let kind = match e {
            AlgebraError::InadmissibleRelation(m) => ParseErrorKind::InadmissibleRelation(m),
            other => ParseErrorKind::Invalid(other.to_string()),
        };
        ParseError::new(line, col, kind)
    })?;
    let mut p = Problem::new(&name, alg).map_err(|e| ParseError::new(1, 1, ParseErrorKind::Invalid(e.to_string())))?;
    p.tasks = sections.body("tasks").to_vec();
    p.read_modules(sections.body("modules"))?;
    p.read_definitions(sections.body("complexes"))?;
    p.read_definitions(sections.body("maps"))?;
    Ok(p)
}

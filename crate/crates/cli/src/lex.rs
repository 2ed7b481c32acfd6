use crate::error::{ParseError, ParseErrorKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TokKind {
    Ident,
    Num,
    Sym,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub kind: TokKind,
    /// 1-based column in the source line.
    pub col: usize,
}

impl Token {
    pub fn is(&self, s: &str) -> bool {
        self.text == s
    }
}

/// A non-blank source line with comments stripped.
#[derive(Clone, Debug)]
pub struct Line {
    pub number: usize,
    pub text: String,
}

impl Line {
    pub fn tokens(&self) -> Result<Vec<Token>, ParseError> {
        tokenize(&self.text).map_err(|(col, msg)| ParseError::new(self.number, col, ParseErrorKind::Syntax(msg)))
    }

    pub fn error(&self, col: usize, kind: ParseErrorKind) -> ParseError {
        ParseError::new(self.number, col, kind)
    }
}

fn ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '.'
}

/// Splits a line into identifiers, numbers and symbols. A `-` joins two
/// identifier parts when it sits between a letter or digit and a letter, so
/// `tau-inv` is one token while `a - b` is three.
pub fn tokenize(text: &str) -> Result<Vec<Token>, (usize, String)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if ident_start(c) || c.is_ascii_digit() && starts_label(&chars, i) {
            let start = i;
            while i < chars.len() {
                let joins = chars[i] == '-'
                    && i + 1 < chars.len()
                    && ident_start(chars[i + 1])
                    && i > start
                    && chars[i - 1].is_alphanumeric();
                if ident_char(chars[i]) || joins {
                    i += 1;
                } else {
                    break;
                }
            }
            out.push(Token { text: chars[start..i].iter().collect(), kind: TokKind::Ident, col });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            out.push(Token { text: chars[start..i].iter().collect(), kind: TokKind::Num, col });
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Token { text: "->".into(), kind: TokKind::Sym, col });
            i += 2;
        } else if ":=[](),;*+-|".contains(c) {
            out.push(Token { text: c.to_string(), kind: TokKind::Sym, col });
            i += 1;
        } else {
            return Err((col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// Digits followed directly by a letter, as in a vertex label like `2b`.
fn starts_label(chars: &[char], i: usize) -> bool {
    let mut j = i;
    while j < chars.len() && chars[j].is_ascii_digit() {
        j += 1;
    }
    j < chars.len() && ident_start(chars[j])
}

/// Source lines with `#` comments removed, blank lines dropped.
pub fn lines(text: &str) -> Vec<Line> {
    text.lines()
        .enumerate()
        .filter_map(|(k, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            (!body.trim().is_empty()).then(|| Line { number: k + 1, text: body.to_string() })
        })
        .collect()
}

/// Cursor over one line's tokens.
pub struct Cursor<'a> {
    line: &'a Line,
    toks: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(line: &'a Line, toks: &'a [Token]) -> Self {
        Cursor { line, toks, pos: 0 }
    }

    pub fn line(&self) -> &'a Line {
        self.line
    }

    pub fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    pub fn peek_is(&self, s: &str) -> bool {
        self.peek().is_some_and(|t| t.is(s))
    }

    pub fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    /// Column of the next token, or one past the end of the line.
    pub fn col(&self) -> usize {
        self.peek().map_or(self.line.text.trim_end().chars().count() + 1, |t| t.col)
    }

    pub fn error(&self, msg: impl Into<String>) -> ParseError {
        self.line.error(self.col(), ParseErrorKind::Syntax(msg.into()))
    }

    pub fn expect(&mut self, s: &str) -> Result<&'a Token, ParseError> {
        match self.peek() {
            Some(t) if t.is(s) => {
                self.pos += 1;
                Ok(t)
            }
            Some(t) => Err(self.error(format!("expected `{s}`, found `{}`", t.text))),
            None => Err(self.error(format!("expected `{s}`"))),
        }
    }

    pub fn ident(&mut self) -> Result<&'a Token, ParseError> {
        match self.peek() {
            Some(t) if t.kind == TokKind::Ident || t.kind == TokKind::Num => {
                self.pos += 1;
                Ok(t)
            }
            Some(t) => Err(self.error(format!("expected a name, found `{}`", t.text))),
            None => Err(self.error("expected a name")),
        }
    }

    pub fn int(&mut self) -> Result<i64, ParseError> {
        let neg = self.peek_is("-");
        if neg {
            self.pos += 1;
        }
        match self.peek() {
            Some(t) if t.kind == TokKind::Num => {
                let v: i64 = t.text.parse().map_err(|_| self.error(format!("expected an integer, found `{}`", t.text)))?;
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    pub fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected `{}`", t.text))),
        }
    }

    /// Remaining tokens, consuming them.
    pub fn rest(&mut self) -> &'a [Token] {
        let r = &self.toks[self.pos..];
        self.pos = self.toks.len();
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(s: &str) -> Vec<String> {
        tokenize(s).unwrap().into_iter().map(|t| t.text).collect()
    }

    #[test]
    fn hyphenated_names_stay_whole() {
        assert_eq!(texts("resolve tau-inv P1"), vec!["resolve", "tau-inv", "P1"]);
        assert_eq!(texts("a - b"), vec!["a", "-", "b"]);
        assert_eq!(texts("-1/3*b a"), vec!["-", "1/3", "*", "b", "a"]);
    }

    #[test]
    fn arrows_and_columns() {
        let t = tokenize("arrow a : 2 -> 1").unwrap();
        assert_eq!(t[4].text, "->");
        assert_eq!(t[4].col, 13);
        assert_eq!(t[5].kind, TokKind::Num);
    }

    #[test]
    fn comments_and_blanks_are_dropped() {
        let ls = lines("# head\n\n[field] # x\nQ\n");
        assert_eq!(ls.len(), 2);
        assert_eq!(ls[0].number, 3);
        assert_eq!(ls[0].text.trim(), "[field]");
    }

    #[test]
    fn bad_character_is_positioned() {
        assert_eq!(tokenize("a $").unwrap_err().0, 3);
    }
}

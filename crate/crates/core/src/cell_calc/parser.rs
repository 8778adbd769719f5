//! Recursive-descent parser for tree expressions.
//!
//! ```text
//! expr   := "point" | "set" | preset | "fin" "(" json-or-path ")"
//!         | "union" "(" expr ("," expr)+ ")"
//!         | "mset" "(" INT "," expr ")"
//!         | "mset_inf" "(" expr ")"
//!         | "seq_dlo" "(" expr ")"
//! preset := "edge" | "kset" "(" INT ")" | "path3"
//! ```
//!
//! `fin(...)` takes either an inline JSON structure (starting with `{`) or a
//! path to a JSON file. Whitespace is allowed between tokens.

use super::tree::CellTree;
use crate::error::{Error, Result};
use crate::oracle::FiniteStructure;

pub fn parse(text: &str) -> Result<CellTree> {
    let mut p = Parser { text, pos: 0 };
    let tree = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(tree)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(usize, &str)> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected an expression"));
        }
        self.pos += len;
        Ok((start, &self.text[start..start + len]))
    }

    /// A positive integer argument.
    fn count(&mut self, what: &str) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_digit() || c == '-' || c == '+'))
            .unwrap_or(self.rest().len());
        let digits = &self.text[start..start + len];
        let value: i64 = digits.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: format!("expected an integer for {what}"),
        })?;
        if value <= 0 {
            return Err(Error::Syntax {
                pos: start,
                msg: format!("{what} must be positive, got {value}"),
            });
        }
        self.pos += len;
        usize::try_from(value).map_err(|_| Error::Syntax {
            pos: start,
            msg: format!("{what} is too large"),
        })
    }

    fn expr(&mut self) -> Result<CellTree> {
        let (start, name) = self.ident()?;
        match name {
            "point" => Ok(CellTree::point()),
            "set" => Ok(CellTree::set()),
            "edge" => Ok(CellTree::edge()),
            "path3" => Ok(CellTree::path3()),
            "kset" => {
                self.expect('(')?;
                let k = self.count("kset size")?;
                self.expect(')')?;
                let tree = CellTree::kset(k);
                if let CellTree::Leaf(l) = &tree {
                    l.structure.validate()?;
                }
                Ok(tree)
            }
            "fin" => {
                self.expect('(')?;
                let structure = self.fin_body()?;
                self.expect(')')?;
                let label = format!("fin({})", structure.to_json());
                Ok(CellTree::leaf(label, structure))
            }
            "union" => {
                self.expect('(')?;
                let mut children = vec![self.expr()?];
                while self.eat(',') {
                    children.push(self.expr()?);
                }
                self.expect(')')?;
                if children.len() < 2 {
                    return Err(Error::Syntax {
                        pos: start,
                        msg: "union needs at least two parts".into(),
                    });
                }
                CellTree::union(children)
            }
            "mset" => {
                self.expect('(')?;
                let k = self.count("mset copy count")?;
                self.expect(',')?;
                let child = self.expr()?;
                self.expect(')')?;
                CellTree::mset(k, child)
            }
            "mset_inf" => {
                self.expect('(')?;
                let child = self.expr()?;
                self.expect(')')?;
                Ok(CellTree::mset_inf(child))
            }
            "seq_dlo" => {
                self.expect('(')?;
                let child = self.expr()?;
                self.expect(')')?;
                Ok(CellTree::seq_dlo(child))
            }
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }

    /// Inline JSON object or a file path, up to the closing parenthesis.
    fn fin_body(&mut self) -> Result<FiniteStructure> {
        self.skip_ws();
        let start = self.pos;
        if self.rest().starts_with('{') {
            let len = json_object_len(self.rest())
                .ok_or_else(|| self.error("unterminated JSON object"))?;
            self.pos += len;
            return FiniteStructure::from_json(&self.text[start..self.pos]);
        }
        let len = self
            .rest()
            .find(')')
            .ok_or_else(|| self.error("expected `)`"))?;
        let path = self.text[start..start + len].trim();
        if path.is_empty() {
            return Err(self.error("expected a JSON structure or a file path"));
        }
        self.pos += len;
        load_structure(path)
    }
}

/// Reads a finite structure from a JSON file.
pub fn load_structure(path: &str) -> Result<FiniteStructure> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    FiniteStructure::from_json(&text)
}

/// Byte length of the JSON object at the start of `s`, tracking nesting and
/// string literals.
fn json_object_len(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    let mut in_string = false;
    let mut escaped = false;
    for (i, c) in s.char_indices() {
        if in_string {
            match c {
                _ if escaped => escaped = false,
                '\\' => escaped = true,
                '"' => in_string = false,
                _ => {}
            }
            continue;
        }
        match c {
            '"' => in_string = true,
            '{' | '[' => depth += 1,
            '}' | ']' => {
                depth = depth.checked_sub(1)?;
                if depth == 0 {
                    return Some(i + 1);
                }
            }
            _ => {}
        }
    }
    None
}

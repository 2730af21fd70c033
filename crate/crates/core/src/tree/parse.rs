//! Parenthesized text form, e.g. `((1,2),(3,4))`.
//!
//! Input is any fully parenthesized binary expression; the root it implies has
//! degree 2 and is suppressed. Output is rooted at the edge of leaf 1 (the least
//! edge id), with children ordered by their smallest leaf label, so
//! `parse(t.to_string()) == t` and the text is a canonical form.

use std::fmt;
use std::str::FromStr;

use super::Tree;
use crate::error::{Error, Result};

/// Rooted binary expression used by the parser and the builders.
#[derive(Debug, Clone)]
pub(crate) enum Expr {
    Leaf(usize),
    Pair(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub(crate) fn pair(a: Expr, b: Expr) -> Expr {
        Expr::Pair(Box::new(a), Box::new(b))
    }

    /// Builds the unrooted tree, suppressing the degree-2 root.
    pub(crate) fn into_tree(self) -> Result<Tree> {
        let (a, b) = match self {
            Expr::Leaf(_) => return Err(Error::TooFewLeaves(1)),
            Expr::Pair(a, b) => (*a, *b),
        };
        let mut labels = Vec::new();
        let mut edges = Vec::new();
        let va = attach(&a, &mut labels, &mut edges);
        let vb = attach(&b, &mut labels, &mut edges);
        edges.push((va, vb));
        Tree::from_parts(labels, edges)
    }
}

fn attach(expr: &Expr, labels: &mut Vec<Option<usize>>, edges: &mut Vec<(usize, usize)>) -> usize {
    let v = labels.len();
    match expr {
        Expr::Leaf(l) => labels.push(Some(*l)),
        Expr::Pair(a, b) => {
            labels.push(None);
            let va = attach(a, labels, edges);
            let vb = attach(b, labels, edges);
            edges.push((v, va));
            edges.push((v, vb));
        }
    }
    v
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == c => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(self.err(format!("expected '{}', found '{}'", c as char, b as char))),
            None if c == b')' => Err(self.err("unbalanced parentheses")),
            None => Err(self.err(format!("expected '{}', found end of input", c as char))),
        }
    }

    fn node(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let a = self.node()?;
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => return Err(self.err("internal node with a single child")),
                    _ => self.expect(b',')?,
                }
                let b = self.node()?;
                if self.peek() == Some(b',') {
                    return Err(self.err("only binary nodes are supported"));
                }
                self.expect(b')')?;
                Ok(Expr::pair(a, b))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
                let label: usize = text.parse().map_err(|_| self.err("label out of range"))?;
                if label == 0 {
                    return Err(self.err("labels must be positive"));
                }
                Ok(Expr::Leaf(label))
            }
            Some(b')') => Err(self.err("unbalanced parentheses")),
            Some(c) => Err(self.err(format!("unexpected '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(text: &str) -> Result<Tree> {
        let mut p = Parser {
            bytes: text.as_bytes(),
            pos: 0,
        };
        let expr = p.node()?;
        match p.peek() {
            None => {}
            Some(b')') => return Err(p.err("unbalanced parentheses")),
            Some(c) => return Err(p.err(format!("trailing '{}'", c as char))),
        }
        expr.into_tree()
    }
}

enum Step {
    Visit(usize),
    Text(&'static str),
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rooted = self.rooted();
        // the root is leaf 1; its single child carries the rest of the tree
        let (child, _) = rooted.children[rooted.root][0];
        let mut stack = vec![Step::Text(")"), Step::Visit(child), Step::Text("(1,")];
        while let Some(step) = stack.pop() {
            match step {
                Step::Text(s) => f.write_str(s)?,
                Step::Visit(v) => match self.vertex_label(v) {
                    Some(l) => write!(f, "{l}")?,
                    None => {
                        let ch = &rooted.children[v];
                        stack.extend([
                            Step::Text(")"),
                            Step::Visit(ch[1].0),
                            Step::Text(","),
                            Step::Visit(ch[0].0),
                            Step::Text("("),
                        ]);
                    }
                },
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_errors() {
        assert!(matches!("((1,2)".parse::<Tree>(), Err(Error::Parse { .. })));
        assert!(matches!("(1,2))".parse::<Tree>(), Err(Error::Parse { .. })));
        assert!(matches!(
            "((1,1),(3,4))".parse::<Tree>(),
            Err(Error::InvalidLabels(_))
        ));
        assert!(matches!(
            "((1,2),(3,5))".parse::<Tree>(),
            Err(Error::InvalidLabels(_))
        ));
        assert!(matches!("1".parse::<Tree>(), Err(Error::TooFewLeaves(1))));
        assert!("(1,2,3)".parse::<Tree>().is_err());
        assert!("((0,1),2)".parse::<Tree>().is_err());
        assert!("(1,a)".parse::<Tree>().is_err());
        assert!("".parse::<Tree>().is_err());
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a: Tree = " ( (1, 2) ,\n(3,4) ) ".parse().unwrap();
        let b: Tree = "((1,2),(3,4))".parse().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn canonical_serialization() {
        let t: Tree = "((1,2),(3,4))".parse().unwrap();
        assert_eq!(t.to_string(), "(1,(2,(3,4)))");
        let t: Tree = "(2,1)".parse().unwrap();
        assert_eq!(t.to_string(), "(1,2)");
        let t: Tree = "((3,(5,4)),(2,1))".parse().unwrap();
        assert_eq!(t.to_string(), "(1,(2,(3,(4,5))))");
    }

    #[test]
    fn suppressed_root_edge_is_ordinary() {
        // rooting on the 3|4 side of ((1,2),(3,4)) gives the same unrooted tree
        let a: Tree = "((1,2),(3,4))".parse().unwrap();
        let b: Tree = "(3,(4,(1,2)))".parse().unwrap();
        assert_eq!(a, b);
    }
}

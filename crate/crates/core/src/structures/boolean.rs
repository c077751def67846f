use std::fmt;

use crate::error::Error;

/// A Boolean expression over numbered bit variables (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BooleanExpr {
    Const(bool),
    Var(usize),
    Not(Box<BooleanExpr>),
    And(Vec<BooleanExpr>),
    Or(Vec<BooleanExpr>),
}

impl BooleanExpr {
    pub fn var(i: usize) -> BooleanExpr {
        BooleanExpr::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: BooleanExpr) -> BooleanExpr {
        BooleanExpr::Not(Box::new(e))
    }

    /// Conjunction; a single conjunct is returned as is.
    pub fn and_all(mut es: Vec<BooleanExpr>) -> BooleanExpr {
        if es.len() == 1 {
            es.pop().unwrap()
        } else {
            BooleanExpr::And(es)
        }
    }

    /// Disjunction; a single disjunct is returned as is.
    pub fn or_all(mut es: Vec<BooleanExpr>) -> BooleanExpr {
        if es.len() == 1 {
            es.pop().unwrap()
        } else {
            BooleanExpr::Or(es)
        }
    }

    pub fn eval(&self, bits: &[bool]) -> bool {
        match self {
            BooleanExpr::Const(b) => *b,
            BooleanExpr::Var(i) => bits[*i],
            BooleanExpr::Not(e) => !e.eval(bits),
            BooleanExpr::And(es) => es.iter().all(|e| e.eval(bits)),
            BooleanExpr::Or(es) => es.iter().any(|e| e.eval(bits)),
        }
    }

    /// One more than the largest variable index, or 0.
    pub fn min_width(&self) -> usize {
        match self {
            BooleanExpr::Const(_) => 0,
            BooleanExpr::Var(i) => i + 1,
            BooleanExpr::Not(e) => e.min_width(),
            BooleanExpr::And(es) | BooleanExpr::Or(es) => {
                es.iter().map(|e| e.min_width()).max().unwrap_or(0)
            }
        }
    }

    /// Parses an expression. Variables are `x1`, `x2`, ... (or `a1`, ...)
    /// for the first operand and `y1`, ... (or `b1`, ...) for the second,
    /// with the second operand's bits placed after `width` bits of the
    /// first. Accepts `~ ! ¬ ∼`, `& ∧`, `| ∨`, `->` `→`, `0`, `1`.
    pub fn parse(text: &str, width: usize) -> Result<BooleanExpr, Error> {
        let toks = lex(text)?;
        let mut p = Parser {
            toks,
            pos: 0,
            width,
            text,
        };
        let e = p.imp()?;
        if p.pos != p.toks.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(e)
    }

    /// Renders with a custom variable naming.
    pub fn display_with<'a>(&'a self, names: &'a dyn Fn(usize) -> String) -> impl fmt::Display + 'a {
        Shown { e: self, names }
    }
}

struct Shown<'a> {
    e: &'a BooleanExpr,
    names: &'a dyn Fn(usize) -> String,
}

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(self.e, self.names, 0, f)
    }
}

// precedence: 0 = top, 1 = inside or, 2 = inside and, 3 = operand of not
fn write_expr(
    e: &BooleanExpr,
    names: &dyn Fn(usize) -> String,
    ctx: u8,
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    let list = |es: &[BooleanExpr], op: &str, own: u8, f: &mut fmt::Formatter<'_>| {
        let paren = ctx > own;
        if paren {
            f.write_str("(")?;
        }
        for (i, x) in es.iter().enumerate() {
            if i > 0 {
                f.write_str(op)?;
            }
            write_expr(x, names, own + 1, f)?;
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    };
    match e {
        BooleanExpr::Const(b) => f.write_str(if *b { "1" } else { "0" }),
        BooleanExpr::Var(i) => f.write_str(&names(*i)),
        BooleanExpr::Not(x) => {
            f.write_str("~")?;
            write_expr(x, names, 3, f)
        }
        BooleanExpr::And(es) if es.is_empty() => f.write_str("1"),
        BooleanExpr::Or(es) if es.is_empty() => f.write_str("0"),
        BooleanExpr::And(es) => list(es, " & ", 1, f),
        BooleanExpr::Or(es) => list(es, " | ", 0, f),
    }
}

impl fmt::Display for BooleanExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(self, &|i| format!("x{}", i + 1), 0, f)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Not,
    And,
    Or,
    Imp,
    LParen,
    RParen,
    Const(bool),
    Var(char, usize),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, Error> {
    let bad = |pos: usize, m: String| Error::InvalidStructure(format!("expression `{text}` at {pos}: {m}"));
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        i += 1;
        let tok = match c {
            c if c.is_whitespace() => continue,
            '~' | '!' | '¬' | '∼' => Tok::Not,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '→' => Tok::Imp,
            '-' if chars.get(i).map(|x| x.1) == Some('>') => {
                i += 1;
                Tok::Imp
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0' => Tok::Const(false),
            '1' => Tok::Const(true),
            'x' | 'y' | 'a' | 'b' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|x| x.1).collect();
                let n: usize = digits
                    .parse()
                    .map_err(|_| bad(pos, format!("variable `{c}` needs an index")))?;
                if n == 0 {
                    return Err(bad(pos, "variable indices start at 1".into()));
                }
                Tok::Var(c, n - 1)
            }
            other => return Err(bad(pos, format!("unexpected `{other}`"))),
        };
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser<'t> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    width: usize,
    text: &'t str,
}

impl Parser<'_> {
    fn err(&self, m: &str) -> Error {
        let at = self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.text.len());
        Error::InvalidStructure(format!("expression `{}` at {at}: {m}", self.text))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn imp(&mut self) -> Result<BooleanExpr, Error> {
        let l = self.or()?;
        if self.peek() == Some(&Tok::Imp) {
            self.pos += 1;
            let r = self.imp()?;
            return Ok(BooleanExpr::Or(vec![BooleanExpr::not(l), r]));
        }
        Ok(l)
    }

    fn or(&mut self) -> Result<BooleanExpr, Error> {
        let mut es = vec![self.and()?];
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            es.push(self.and()?);
        }
        Ok(BooleanExpr::or_all(es))
    }

    fn and(&mut self) -> Result<BooleanExpr, Error> {
        let mut es = vec![self.unary()?];
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            es.push(self.unary()?);
        }
        Ok(BooleanExpr::and_all(es))
    }

    fn unary(&mut self) -> Result<BooleanExpr, Error> {
        let Some(t) = self.peek().cloned() else {
            return Err(self.err("unexpected end of expression"));
        };
        self.pos += 1;
        match t {
            Tok::Not => Ok(BooleanExpr::not(self.unary()?)),
            Tok::Const(b) => Ok(BooleanExpr::Const(b)),
            Tok::Var(c, i) => {
                if i >= self.width {
                    self.pos -= 1;
                    return Err(self.err("variable index exceeds the snapshot width"));
                }
                let second = matches!(c, 'y' | 'b');
                Ok(BooleanExpr::Var(if second { self.width + i } else { i }))
            }
            Tok::LParen => {
                let e = self.imp()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected an operand"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_eval() {
        let e = BooleanExpr::parse("~(x1 & x2)", 3).unwrap();
        assert!(e.eval(&[true, false, true]));
        assert!(!e.eval(&[true, true, true]));
        let g = BooleanExpr::parse("(~a2 & b3) | (a3 & ~b2) | (a3 & b3)", 3).unwrap();
        assert_eq!(g.min_width(), 6);
        assert!(g.eval(&[true, false, false, true, true, true]));
        let i = BooleanExpr::parse("a1 -> b1", 3).unwrap();
        assert!(!i.eval(&[true, false, false, false, true, false]));
    }

    #[test]
    fn display_round_trips() {
        for s in ["x1 | x2 & ~x3", "(x1 | x2) & x3", "~(x1 & x2)", "0", "1"] {
            let e = BooleanExpr::parse(s, 3).unwrap();
            assert_eq!(e.to_string(), s);
        }
        assert_eq!(BooleanExpr::Or(vec![]).to_string(), "0");
    }

    #[test]
    fn rejects_out_of_range_variables() {
        assert!(BooleanExpr::parse("x4", 3).is_err());
        assert!(BooleanExpr::parse("x0", 3).is_err());
        assert!(BooleanExpr::parse("x1 &", 3).is_err());
        assert!(BooleanExpr::parse("(x1", 3).is_err());
    }
}

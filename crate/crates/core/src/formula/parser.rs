use thiserror::Error;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at position {pos}")]
    UnknownToken { pos: usize, ch: char },
    #[error("`o` is reserved for the consistency operator and cannot name an atom (position {pos})")]
    ReservedAtom { pos: usize },
    #[error("expected {expected} at position {pos}, found {found}")]
    Syntax {
        pos: usize,
        expected: &'static str,
        found: String,
    },
}

impl ParseError {
    /// Character offset the error points at.
    pub fn position(&self) -> usize {
        match self {
            ParseError::UnknownToken { pos, .. }
            | ParseError::ReservedAtom { pos }
            | ParseError::Syntax { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Circ,
    Neg,
    And,
    Or,
    Imp,
    Iff,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("atom `{s}`"),
            Tok::Circ => "`o`".into(),
            Tok::Neg => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Imp => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

pub(super) fn is_valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    name != "o" && chars.all(is_ident_continue)
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '~' | '¬' => Tok::Neg,
            '∘' => Tok::Circ,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '→' => Tok::Imp,
            '↔' => Tok::Iff,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Imp
            }
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                i += 2;
                Tok::Iff
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i + 1;
                while j < chars.len() && is_ident_continue(chars[j]) {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                i = j;
                toks.push((
                    start,
                    if word == "o" { Tok::Circ } else { Tok::Ident(word) },
                ));
                continue;
            }
            ch => return Err(ParseError::UnknownToken { pos: start, ch }),
        };
        i += 1;
        toks.push((start, tok));
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn found(&self) -> String {
        self.peek().map_or_else(|| "end of input".into(), Tok::describe)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    // formula := imp ("<->" formula)?
    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.formula()?;
            return Ok(super::build_derived(super::Derived::Iff, &[lhs, rhs])
                .expect("iff takes two arguments"));
        }
        Ok(lhs)
    }

    // imp := or ("->" imp)?
    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Imp) {
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    // or := and ("|" and)*
    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while self.eat(&Tok::Or) {
            let rhs = self.and()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    // and := unary ("&" unary)*
    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Neg) => {
                self.pos += 1;
                Ok(Formula::neg(self.unary()?))
            }
            Some(Tok::Circ) => {
                self.pos += 1;
                // `o` with nothing to apply to was meant as an atom
                if matches!(
                    self.peek(),
                    None | Some(Tok::And | Tok::Or | Tok::Imp | Tok::Iff | Tok::RParen)
                ) {
                    return Err(ParseError::ReservedAtom { pos: at });
                }
                Ok(Formula::circ(self.unary()?))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Formula::Atom(name.as_str().into()))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.formula()?;
                if !self.eat(&Tok::RParen) {
                    return Err(ParseError::Syntax {
                        pos: self.offset(),
                        expected: "`)`",
                        found: self.found(),
                    });
                }
                Ok(inner)
            }
            _ => Err(ParseError::Syntax {
                pos: at,
                expected: "a formula",
                found: self.found(),
            }),
        }
    }
}

/// Parses the ASCII concrete syntax. `->` and `<->` associate to the right;
/// `&` and `|` to the left.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
    };
    let f = p.formula()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::Syntax {
            pos: p.offset(),
            expected: "a binary connective or end of input",
            found: p.found(),
        });
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }

    #[test]
    fn atoms_and_towers() {
        assert_eq!(parse("p").unwrap(), p());
        assert_eq!(
            parse("o o o p").unwrap(),
            Formula::circ(Formula::circ(Formula::circ(p())))
        );
        assert_eq!(parse("oo").unwrap(), Formula::atom("oo"));
    }

    #[test]
    fn precedence() {
        let f = parse("~p -> q | r").unwrap();
        assert_eq!(
            f,
            Formula::imp(
                Formula::neg(p()),
                Formula::or(Formula::atom("q"), Formula::atom("r"))
            )
        );
        let g = parse("p & q | r & s").unwrap();
        assert_eq!(g.connective(), Some(super::super::Connective::Or));
        let h = parse("p -> q -> r").unwrap();
        assert_eq!(h, Formula::imp(p(), parse("q -> r").unwrap()));
        let k = parse("p | q | r").unwrap();
        assert_eq!(k, Formula::or(parse("p | q").unwrap(), Formula::atom("r")));
    }

    #[test]
    fn iff_sugar() {
        let f = parse("p <-> q").unwrap();
        assert_eq!(f, parse("(p -> q) & (q -> p)").unwrap());
        assert_eq!(parse("¬∘p ∧ q → p").unwrap(), parse("~o p & q -> p").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse("p & $"),
            Err(ParseError::UnknownToken { pos: 4, ch: '$' })
        );
        assert_eq!(parse("p & o"), Err(ParseError::ReservedAtom { pos: 4 }));
        assert_eq!(parse("o & p"), Err(ParseError::ReservedAtom { pos: 0 }));
        assert_eq!(
            parse("p & & q"),
            Err(ParseError::Syntax {
                pos: 4,
                expected: "a formula",
                found: "`&`".into()
            })
        );
        let e = parse("(p & q").unwrap_err();
        assert_eq!(e.position(), 6);
        let e = parse("p q").unwrap_err();
        assert_eq!(e.position(), 2);
        assert!(parse("").is_err());
    }
}

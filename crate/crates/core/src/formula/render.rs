use super::Formula;

struct Style {
    neg: &'static str,
    circ: &'static str,
    circ_paren: &'static str,
    and: &'static str,
    or: &'static str,
    imp: &'static str,
}

const ASCII: Style = Style {
    neg: "~",
    circ: "o ",
    circ_paren: "o ",
    and: " & ",
    or: " | ",
    imp: " -> ",
};

const PRETTY: Style = Style {
    neg: "¬",
    circ: "∘",
    circ_paren: "∘",
    and: " ∧ ",
    or: " ∨ ",
    imp: " → ",
};

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Imp(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Neg(_) | Formula::Circ(_) => 4,
        Formula::Atom(_) => 5,
    }
}

fn write(f: &Formula, style: &Style, out: &mut String) {
    let sub = |g: &Formula, parens: bool, out: &mut String| {
        if parens {
            out.push('(');
            write(g, style, out);
            out.push(')');
        } else {
            write(g, style, out);
        }
    };
    match f {
        Formula::Atom(n) => out.push_str(n),
        Formula::Neg(a) => {
            out.push_str(style.neg);
            sub(a, precedence(a) < 4, out);
        }
        Formula::Circ(a) => {
            let parens = precedence(a) < 4;
            out.push_str(if parens { style.circ_paren } else { style.circ });
            sub(a, parens, out);
        }
        Formula::And(l, r) => {
            sub(l, precedence(l) < 3, out);
            out.push_str(style.and);
            sub(r, precedence(r) <= 3, out);
        }
        Formula::Or(l, r) => {
            sub(l, precedence(l) < 2, out);
            out.push_str(style.or);
            sub(r, precedence(r) <= 2, out);
        }
        Formula::Imp(l, r) => {
            sub(l, precedence(l) <= 1, out);
            out.push_str(style.imp);
            sub(r, false, out);
        }
    }
}

/// ASCII rendering with the fewest parentheses that still parse back to the
/// same tree.
pub fn render(f: &Formula) -> String {
    let mut s = String::new();
    write(f, &ASCII, &mut s);
    s
}

/// Unicode rendering (`¬`, `∘`, `∧`, `∨`, `→`). Also accepted by the parser.
pub fn render_pretty(f: &Formula) -> String {
    let mut s = String::new();
    write(f, &PRETTY, &mut s);
    s
}

#[cfg(test)]
mod tests {
    use super::super::{parse, Formula};
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }

    #[test]
    fn examples() {
        assert_eq!(render(&Formula::circ(p())), "o p");
        assert_eq!(render(&Formula::imp(p(), Formula::imp(q(), p()))), "p -> q -> p");
        assert_eq!(
            render(&Formula::and(Formula::or(p(), q()), Formula::atom("r"))),
            "(p | q) & r"
        );
        assert_eq!(render(&Formula::imp(Formula::imp(p(), q()), p())), "(p -> q) -> p");
        assert_eq!(render(&Formula::and(p(), Formula::and(q(), p()))), "p & (q & p)");
        assert_eq!(render(&Formula::circ(Formula::and(p(), q()))), "o (p & q)");
        assert_eq!(render(&parse("~o~p").unwrap()), "~o ~p");
        assert_eq!(render_pretty(&parse("~o o(p & q) -> p").unwrap()), "¬∘∘(p ∧ q) → p");
    }

    #[test]
    fn pretty_round_trips() {
        for s in ["o o ~p", "~(p -> q) | o (p & ~q)", "(p | q) & r -> p"] {
            let f = parse(s).unwrap();
            assert_eq!(parse(&render_pretty(&f)).unwrap(), f);
        }
    }
}

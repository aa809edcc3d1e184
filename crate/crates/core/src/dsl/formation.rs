//! Formation expressions: `N`, `U`, `S`, `N^r`, `Gp(p)`, `A(m)`, combined by
//! `*` (class product, binds tighter) and `&` (intersection), both
//! left-associative, with parentheses for grouping.

use std::fmt;

use crate::error::{Error, Result};
use crate::formation::{Formation, FormationExpr, Prim};
use crate::numbers::is_prime;

pub fn parse_formation(text: &str) -> Result<FormationExpr> {
    let mut p = Parser {
        chars: text.char_indices().collect(),
        pos: 0,
        len: text.len(),
    };
    let e = p.intersection()?;
    p.skip_ws();
    if let Some(&(at, c)) = p.chars.get(p.pos) {
        return Err(syntax(at, format!("unexpected `{c}`")));
    }
    Ok(e)
}

pub fn compile_formation(e: &FormationExpr) -> Formation {
    Formation::new(e.clone())
}

/// Parses and compiles in one step.
pub fn formation(text: &str) -> Result<Formation> {
    parse_formation(text).map(|e| compile_formation(&e))
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i)
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(syntax(self.offset(), format!("expected `{want}`, found `{c}`"))),
            None => Err(syntax(self.offset(), format!("expected `{want}`, found end of input"))),
        }
    }

    fn intersection(&mut self) -> Result<FormationExpr> {
        let mut e = self.product()?;
        while self.peek() == Some('&') {
            self.pos += 1;
            e = FormationExpr::intersect(e, self.product()?);
        }
        Ok(e)
    }

    fn product(&mut self) -> Result<FormationExpr> {
        let mut e = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            e = FormationExpr::product(e, self.atom()?);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<FormationExpr> {
        let at = {
            self.skip_ws();
            self.offset()
        };
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.intersection()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('N') => {
                self.pos += 1;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    let (r_at, r) = self.integer()?;
                    if r < 1 {
                        return Err(Error::Semantic(format!("nilpotent length bound must be at least 1 (position {r_at})")));
                    }
                    Ok(FormationExpr::Prim(Prim::NilpotentLength(r as u32)))
                } else {
                    Ok(FormationExpr::Prim(Prim::N))
                }
            }
            Some('U') => {
                self.pos += 1;
                Ok(FormationExpr::Prim(Prim::U))
            }
            Some('S') => {
                self.pos += 1;
                Ok(FormationExpr::Prim(Prim::S))
            }
            Some('G') => {
                self.pos += 1;
                self.expect('p')?;
                self.expect('(')?;
                let (p_at, p) = self.integer()?;
                self.expect(')')?;
                if !is_prime(p) {
                    return Err(Error::Semantic(format!("Gp({p}) at position {p_at}: {p} is not prime")));
                }
                Ok(FormationExpr::Prim(Prim::Gp(p)))
            }
            Some('A') => {
                self.pos += 1;
                self.expect('(')?;
                let (m_at, m) = self.integer()?;
                self.expect(')')?;
                if m < 1 {
                    return Err(Error::Semantic(format!("A({m}) at position {m_at}: exponent must be at least 1")));
                }
                Ok(FormationExpr::Prim(Prim::Abelian(m)))
            }
            Some(c) => Err(syntax(at, format!("unexpected `{c}`"))),
            None => Err(syntax(at, "expected a formation, found end of input")),
        }
    }

    fn integer(&mut self) -> Result<(usize, u64)> {
        self.skip_ws();
        let at = self.offset();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(syntax(at, "expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        digits
            .parse()
            .map(|v| (at, v))
            .map_err(|_| syntax(at, "integer out of range"))
    }
}

/// Prints with the fewest parentheses that reparse to the same tree.
pub fn write_expr(f: &mut fmt::Formatter<'_>, e: &FormationExpr) -> fmt::Result {
    write_at(f, e, 0)
}

pub fn print_formation(e: &FormationExpr) -> String {
    struct Show<'a>(&'a FormationExpr);
    impl fmt::Display for Show<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write_expr(f, self.0)
        }
    }
    Show(e).to_string()
}

// precedence: 0 = intersection context, 1 = product context, 2 = atom context
fn write_at(f: &mut fmt::Formatter<'_>, e: &FormationExpr, ctx: u8) -> fmt::Result {
    let own = match e {
        FormationExpr::Intersect(..) => 0,
        FormationExpr::Product(..) => 1,
        FormationExpr::Prim(_) => 2,
    };
    let paren = own < ctx;
    if paren {
        f.write_str("(")?;
    }
    match e {
        FormationExpr::Prim(p) => match p {
            Prim::N => f.write_str("N")?,
            Prim::U => f.write_str("U")?,
            Prim::S => f.write_str("S")?,
            Prim::NilpotentLength(r) => write!(f, "N^{r}")?,
            Prim::Gp(p) => write!(f, "Gp({p})")?,
            Prim::Abelian(m) => write!(f, "A({m})")?,
        },
        FormationExpr::Intersect(a, b) => {
            write_at(f, a, 0)?;
            f.write_str(" & ")?;
            write_at(f, b, 1)?;
        }
        FormationExpr::Product(a, b) => {
            write_at(f, a, 1)?;
            f.write_str("*")?;
            write_at(f, b, 2)?;
        }
    }
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses() {
        assert_eq!(parse_formation("N").unwrap(), FormationExpr::Prim(Prim::N));
        assert_eq!(
            parse_formation("Gp(2)*A(1)").unwrap(),
            FormationExpr::product(FormationExpr::Prim(Prim::Gp(2)), FormationExpr::Prim(Prim::Abelian(1)))
        );
        let e = parse_formation(" N & U * S ").unwrap();
        assert_eq!(
            e,
            FormationExpr::intersect(
                FormationExpr::Prim(Prim::N),
                FormationExpr::product(FormationExpr::Prim(Prim::U), FormationExpr::Prim(Prim::S))
            )
        );
        assert_eq!(parse_formation("N^ 3").unwrap(), FormationExpr::Prim(Prim::NilpotentLength(3)));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_formation("N^"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_formation("(N"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_formation("N U"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_formation(""), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_formation("Gp(4)"), Err(Error::Semantic(_))));
        assert!(matches!(parse_formation("N^0"), Err(Error::Semantic(_))));
        assert!(matches!(parse_formation("A(0)"), Err(Error::Semantic(_))));
    }

    #[test]
    fn printing_is_minimal() {
        for s in ["N*U*S", "N*(U*S)", "(N & U)*S", "N & U & S", "N & (U & S)", "Gp(3)*A(2)", "N^2 & A(4)*Gp(2)"] {
            assert_eq!(print_formation(&parse_formation(s).unwrap()), s);
        }
    }

    fn arb_expr() -> impl Strategy<Value = FormationExpr> {
        let leaf = prop_oneof![
            Just(FormationExpr::Prim(Prim::N)),
            Just(FormationExpr::Prim(Prim::U)),
            Just(FormationExpr::Prim(Prim::S)),
            (1u32..5).prop_map(|r| FormationExpr::Prim(Prim::NilpotentLength(r))),
            prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(|p| FormationExpr::Prim(Prim::Gp(p))),
            (1u64..13).prop_map(|m| FormationExpr::Prim(Prim::Abelian(m))),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| FormationExpr::product(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| FormationExpr::intersect(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(e in arb_expr()) {
            let printed = print_formation(&e);
            prop_assert_eq!(parse_formation(&printed).unwrap(), e);
        }
    }
}

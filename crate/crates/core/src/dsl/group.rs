//! Group specifications: builtin names, permutation generators in 1-based
//! cycle notation, and direct products joined by `x`.
//!
//! ```text
//! spec   := factor ('x' factor)*
//! factor := NAME | 'perm' INT ':' perm (',' perm)* | perm (',' perm)* | '(' spec ')'
//! perm   := cycle+        cycle := '(' INT* ')'
//! ```
//! Bare generators take the largest point mentioned as their degree.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Builtin(String),
    /// Cycle lists per generator, 1-based.
    Generators { degree: usize, gens: Vec<Vec<Vec<usize>>> },
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(syntax(p.pos, format!("unexpected `{}`", p.s[p.pos] as char)));
    }
    Ok(spec)
}

pub fn build_group(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup> {
    let name = spec.to_string();
    let g = match spec {
        GroupSpec::Builtin(b) => builtin(b, cap)?,
        GroupSpec::Generators { degree, gens } => {
            let perms = gens
                .iter()
                .map(|cycles| {
                    let zero: Vec<Vec<usize>> = cycles.iter().map(|c| c.iter().map(|p| p - 1).collect()).collect();
                    Permutation::from_cycles(*degree, &zero)
                })
                .collect::<Result<Vec<_>>>()?;
            FiniteGroup::from_generators(&perms, &name, cap)?
        }
        GroupSpec::Product(a, b) => FiniteGroup::direct_product(&build_group(a, cap)?, &build_group(b, cap)?, cap)?,
    };
    Ok(g.with_name(&name))
}

pub fn parse_group(text: &str, cap: usize) -> Result<FiniteGroup> {
    build_group(&parse_group_spec(text)?, cap)
}

const BUILTIN_HELP: &str = "Cn, Dn (n even), Q8, V4, Sn, An, SL23, Frob21";

fn builtin(name: &str, cap: usize) -> Result<FiniteGroup> {
    let unknown = || Error::UnknownBuiltin(format!("{name} (known: {BUILTIN_HELP})"));
    let num = |prefix: &str| name.strip_prefix(prefix).and_then(|d| d.parse::<usize>().ok()).filter(|&n| n >= 1);
    let cyc = |pts: &[usize]| -> Vec<usize> { pts.to_vec() };
    let (degree, gens): (usize, Vec<Vec<Vec<usize>>>) = match name {
        "Q8" => (8, vec![vec![cyc(&[1, 3, 2, 4]), cyc(&[5, 8, 6, 7])], vec![cyc(&[1, 5, 2, 6]), cyc(&[3, 7, 4, 8])]]),
        "V4" | "D4" => (4, vec![vec![cyc(&[1, 2]), cyc(&[3, 4])], vec![cyc(&[1, 3]), cyc(&[2, 4])]]),
        "SL23" => (8, vec![vec![cyc(&[1, 4, 7]), cyc(&[2, 8, 5])], vec![cyc(&[1, 6, 2, 3]), cyc(&[4, 7, 8, 5])]]),
        "Frob21" => (7, vec![vec![(1..=7).collect()], vec![cyc(&[2, 3, 5]), cyc(&[4, 7, 6])]]),
        _ => {
            if let Some(n) = num("C") {
                (n, if n == 1 { vec![] } else { vec![vec![(1..=n).collect()]] })
            } else if let Some(n) = num("D") {
                if n % 2 != 0 {
                    return Err(unknown());
                }
                let k = n / 2;
                match k {
                    1 => (2, vec![vec![cyc(&[1, 2])]]),
                    2 => (4, vec![vec![cyc(&[1, 2]), cyc(&[3, 4])], vec![cyc(&[1, 3]), cyc(&[2, 4])]]),
                    _ => {
                        let refl: Vec<Vec<usize>> = (2..=k).filter(|&i| i < k + 2 - i).map(|i| vec![i, k + 2 - i]).collect();
                        (k, vec![vec![(1..=k).collect()], refl])
                    }
                }
            } else if let Some(n) = num("S") {
                match n {
                    1 => (1, vec![]),
                    2 => (2, vec![vec![cyc(&[1, 2])]]),
                    _ => (n, vec![vec![cyc(&[1, 2])], vec![(1..=n).collect()]]),
                }
            } else if let Some(n) = num("A") {
                (n.max(1), (3..=n).map(|k| vec![vec![1, 2, k]]).collect())
            } else {
                return Err(unknown());
            }
        }
    };
    build_group(&GroupSpec::Generators { degree, gens }, cap)
}

pub fn is_builtin(name: &str) -> bool {
    builtin(name, 1).map(|_| true).unwrap_or_else(|e| matches!(e, Error::ClosureExceedsCap { .. }))
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    /// Next non-space byte after the current `(`.
    fn after_paren(&self) -> Option<u8> {
        self.s[self.pos + 1..].iter().copied().find(|c| !c.is_ascii_whitespace())
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let mut spec = self.factor()?;
        while self.peek() == Some(b'x') {
            self.pos += 1;
            spec = GroupSpec::Product(Box::new(spec), Box::new(self.factor()?));
        }
        Ok(spec)
    }

    fn factor(&mut self) -> Result<GroupSpec> {
        match self.peek() {
            Some(b'(') if !matches!(self.after_paren(), Some(b'0'..=b'9' | b')')) => {
                self.pos += 1;
                let inner = self.spec()?;
                if self.peek() != Some(b')') {
                    return Err(syntax(self.pos, "expected `)` closing a group product"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'(') => {
                let gens = self.generator_list()?;
                let degree = gens.iter().flatten().flatten().copied().max().unwrap_or(1);
                Ok(GroupSpec::Generators { degree, gens })
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.s[start..self.pos]).unwrap().to_string();
                if word == "perm" {
                    let at = {
                        self.skip_ws();
                        self.pos
                    };
                    let degree = self.integer()?;
                    if degree == 0 {
                        return Err(syntax(at, "degree must be positive"));
                    }
                    if self.peek() != Some(b':') {
                        return Err(syntax(self.pos, "expected `:` after the degree"));
                    }
                    self.pos += 1;
                    let gens = self.generator_list()?;
                    if let Some(&p) = gens.iter().flatten().flatten().find(|&&p| p > degree) {
                        return Err(syntax(at, format!("point {p} exceeds degree {degree}")));
                    }
                    Ok(GroupSpec::Generators { degree, gens })
                } else {
                    Ok(GroupSpec::Builtin(word))
                }
            }
            Some(c) => Err(syntax(self.pos, format!("unexpected `{}`", c as char))),
            None => Err(syntax(self.pos, "expected a group, found end of input")),
        }
    }

    fn generator_list(&mut self) -> Result<Vec<Vec<Vec<usize>>>> {
        let mut gens = vec![self.permutation()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            gens.push(self.permutation()?);
        }
        Ok(gens)
    }

    fn permutation(&mut self) -> Result<Vec<Vec<usize>>> {
        if self.peek() != Some(b'(') {
            return Err(syntax(self.pos, "expected a cycle"));
        }
        let mut cycles = Vec::new();
        while self.peek() == Some(b'(') && matches!(self.after_paren(), Some(b'0'..=b'9' | b')')) {
            let open = self.pos;
            self.pos += 1;
            let mut pts = Vec::new();
            loop {
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    Some(b'0'..=b'9') => {
                        let at = self.pos;
                        let p = self.integer()?;
                        if p == 0 {
                            return Err(syntax(at, "points are numbered from 1"));
                        }
                        if pts.contains(&p) {
                            return Err(syntax(at, format!("point {p} repeated in a cycle")));
                        }
                        pts.push(p);
                    }
                    Some(b',') => self.pos += 1,
                    Some(c) => return Err(syntax(self.pos, format!("unexpected `{}` in a cycle", c as char))),
                    None => return Err(syntax(open, "unbalanced parenthesis")),
                }
            }
            if pts.len() > 1 {
                cycles.push(pts);
            }
        }
        Ok(cycles)
    }

    fn integer(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(syntax(start, "expected an integer"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| syntax(start, "integer out of range"))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Builtin(b) => f.write_str(b),
            GroupSpec::Generators { degree, gens } => {
                write!(f, "perm {degree}: ")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    if g.is_empty() {
                        f.write_str("()")?;
                    }
                    for c in g {
                        let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                        write!(f, "({})", pts.join(" "))?;
                    }
                }
                Ok(())
            }
            GroupSpec::Product(a, b) => {
                write!(f, "{a} x ")?;
                match b.as_ref() {
                    GroupSpec::Product(..) | GroupSpec::Generators { .. } => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ORDER_CAP;
    use proptest::prelude::*;

    fn order(s: &str) -> usize {
        parse_group(s, DEFAULT_ORDER_CAP).unwrap().order()
    }

    #[test]
    fn builtins() {
        assert_eq!(order("S4"), 24);
        assert_eq!(order("A5"), 60);
        assert_eq!(order("C1"), 1);
        assert_eq!(order("D6"), 6);
        assert_eq!(order("D8"), 8);
        assert_eq!(order("D2"), 2);
        assert_eq!(order("V4"), 4);
        assert_eq!(order("Q8"), 8);
        assert_eq!(order("SL23"), 24);
        assert_eq!(order("Frob21"), 21);
        assert_eq!(order("S6"), 720);
        assert_eq!(order("A6"), 360);
        assert_eq!(order("A1"), 1);
        assert!(matches!(parse_group("Foo", 100), Err(Error::UnknownBuiltin(_))));
        assert!(matches!(parse_group("D7", 100), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn permutations_and_products() {
        let d10 = parse_group("perm 5: (1 2 3 4 5), (2 5)(3 4)", 100).unwrap();
        assert_eq!(d10.order(), 10);
        assert!(!d10.is_abelian());
        assert_eq!(order("(1 2 3)(4 5)"), 6);
        assert_eq!(order("S3 x C2 x C5"), 60);
        assert_eq!(order("(S3 x C2) x perm 3: (1 2 3)"), 36);
        assert_eq!(order("perm 4: ()"), 1);
        assert!(matches!(parse_group("S6 x S6", 5000), Err(Error::ClosureExceedsCap { .. })));
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_group_spec("(1 2"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_group_spec("perm 3: (1 4)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_group_spec("perm 3 (1 2)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_group_spec("S3 x"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_group_spec("(1 2 1)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_group_spec("S3 S4"), Err(Error::Syntax { pos: 3, .. })));
    }

    fn arb_spec() -> impl Strategy<Value = GroupSpec> {
        let leaf = prop_oneof![
            prop::sample::select(vec!["S3", "C4", "Q8", "V4", "A4", "D10", "Frob21"]).prop_map(|s| GroupSpec::Builtin(s.into())),
            (3usize..7, prop::collection::vec(prop::collection::vec(1usize..3, 0..2), 1..3)).prop_map(|(d, shape)| {
                let gens = shape
                    .iter()
                    .map(|cs| cs.iter().enumerate().map(|(i, &len)| (0..=len).map(|k| 1 + (i * 3 + k) % d).collect::<Vec<_>>()).filter(|c: &Vec<usize>| {
                        let mut s = c.clone();
                        s.sort();
                        s.dedup();
                        s.len() == c.len()
                    }).collect::<Vec<_>>())
                    .collect();
                GroupSpec::Generators { degree: d, gens }
            }),
        ];
        leaf.prop_recursive(3, 8, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| GroupSpec::Product(Box::new(a), Box::new(b))))
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(spec in arb_spec()) {
            let printed = spec.to_string();
            prop_assert_eq!(parse_group_spec(&printed).unwrap(), spec);
        }
    }
}

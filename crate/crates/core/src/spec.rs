//! The group-spec mini-language.
//!
//! ```text
//! spec   := "S" n | "A" n | "C" n | "D" n | "G72"
//!         | "prod(" spec "," spec ")"
//!         | "gens:" cycles (";" cycles)*
//! cycles := "()" | ("(" point ("," point)* ")")+
//! ```
//!
//! `D<n>` is the dihedral group of order `n`. Whitespace between tokens is
//! ignored.

use crate::catalog;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{Perm, MAX_DEGREE};
use crate::subgroups::SubgroupEmbedding;

/// Parses a group spec into a permutation group.
pub fn parse_group_spec(text: &str) -> Result<PermGroup> {
    let mut parser = Parser::new(text);
    let group = parser.spec()?;
    parser.skip_ws();
    if !parser.at_end() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(group)
}

/// Parses a spec and embeds the resulting group in `ambient`.
pub fn parse_subgroup_spec(ambient: &PermGroup, text: &str) -> Result<SubgroupEmbedding> {
    let group = parse_group_spec(text)?;
    if group.degree() > ambient.degree() {
        // generators may only move points beyond the ambient degree if they are not in it
        for g in group.generators() {
            if (ambient.degree()..g.degree()).any(|x| g.apply(x) != x) {
                return Err(Error::NotInGroup(g.to_string()));
            }
        }
    }
    let gens = group
        .generators()
        .iter()
        .map(|g| {
            if g.degree() > ambient.degree() {
                Perm::new(g.images().take(ambient.degree()).collect())
            } else {
                Ok(g.clone())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    SubgroupEmbedding::new(ambient, gens)
}

/// Renders generators in the `gens:` form; no generators renders as `gens:()`.
pub fn gens_spec(gens: &[Perm]) -> String {
    if gens.is_empty() {
        return "gens:()".into();
    }
    let parts: Vec<String> = gens.iter().map(ToString::to_string).collect();
    format!("gens:{}", parts.join(";"))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn starts_with(&self, s: &str) -> bool {
        self.src[self.pos..].starts_with(s.as_bytes())
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match digits.parse::<usize>() {
            Ok(n) if n <= MAX_DEGREE * 2 => Ok(n),
            _ => Err(Error::DegreeOverflow(digits.parse().unwrap_or(usize::MAX))),
        }
    }

    fn spec(&mut self) -> Result<PermGroup> {
        self.skip_ws();
        let start = self.pos;
        if self.starts_with("gens:") {
            self.pos += 5;
            return self.gens();
        }
        if self.starts_with("prod") {
            self.pos += 4;
            self.expect(b'(')?;
            let a = self.spec()?;
            self.expect(b',')?;
            let b = self.spec()?;
            self.expect(b')')?;
            return catalog::direct_product(&a, &b);
        }
        if self.starts_with("G72") {
            self.pos += 3;
            return Ok(catalog::g72());
        }
        let kind = match self.peek() {
            Some(c @ (b'S' | b'A' | b'C' | b'D')) => c,
            _ => return Err(self.error("unknown group name")),
        };
        self.pos += 1;
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos = start;
            return Err(self.error("unknown group name"));
        }
        let n = self.number()?;
        let built = match kind {
            b'S' => catalog::symmetric(n),
            b'A' => catalog::alternating(n),
            b'C' => catalog::cyclic(n),
            _ => catalog::dihedral(n),
        };
        built.map_err(|e| match e {
            Error::InvalidParameter(msg) => Error::Syntax { pos: start, msg },
            other => other,
        })
    }

    fn gens(&mut self) -> Result<PermGroup> {
        let mut perms: Vec<Vec<Vec<usize>>> = vec![self.cycles()?];
        while self.eat(b';') {
            perms.push(self.cycles()?);
        }
        let degree = perms.iter().flatten().flatten().copied().max().unwrap_or(1);
        if degree > MAX_DEGREE {
            return Err(Error::DegreeOverflow(degree));
        }
        let gens = perms
            .iter()
            .map(|cs| Perm::from_cycles(degree, cs))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(degree, gens)
    }

    fn cycles(&mut self) -> Result<Vec<Vec<usize>>> {
        let mut cycles = Vec::new();
        self.skip_ws();
        if self.peek() != Some(b'(') {
            return Err(self.error("expected '(' starting a cycle"));
        }
        while self.eat(b'(') {
            if self.eat(b')') {
                continue;
            }
            let cycle_start = self.pos;
            let mut cycle = vec![self.point()?];
            while self.eat(b',') {
                cycle.push(self.point()?);
            }
            self.expect(b')')?;
            let mut sorted = cycle.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != cycle.len() {
                return Err(Error::Syntax {
                    pos: cycle_start,
                    msg: "repeated point in cycle".into(),
                });
            }
            if cycles.iter().flatten().any(|p: &usize| cycle.contains(p)) {
                return Err(Error::Syntax {
                    pos: cycle_start,
                    msg: "cycles are not disjoint".into(),
                });
            }
            cycles.push(cycle);
            self.skip_ws();
            if self.peek() != Some(b'(') {
                break;
            }
        }
        Ok(cycles)
    }

    fn point(&mut self) -> Result<usize> {
        let pos = self.pos;
        let p = self.number()?;
        if p == 0 {
            return Err(Error::Syntax {
                pos,
                msg: "points are numbered from 1".into(),
            });
        }
        if p > MAX_DEGREE {
            return Err(Error::DegreeOverflow(p));
        }
        Ok(p)
    }
}

//! A small parser and evaluator for the LaTeX polynomial displays kept under
//! `data/`.
//!
//! Grammar (after removing whitespace, `\\`, `&` and `\displaybreak`):
//!
//! ```text
//! expr   := term*
//! term   := sign+ int? factor+ | int? factor+      (first term may be unsigned)
//! factor := atom ('^' exp)?
//! atom   := 'y_' digit | 'y_{' digit '}' | 'a' | 'b' | 'm' | '\gamma' | '(' expr ')'
//! exp    := digit | 'q' | '{' part ('+' part)* '}'
//! part   := int | int? 'q' ('^' digit)?
//! ```
//!
//! A run of signs collapses to its last sign: displays that break a line
//! repeat the operator on both sides of the break. Exponents are kept as
//! vectors (c_0..c_5) meaning sum c_j q^j, so that x^e is evaluated as
//! prod_j (x^{q^j})^{c_j}.

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};

/// Exponent sum_j c_j q^j.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QExp(pub [u32; 6]);

impl QExp {
    pub const ONE: QExp = QExp([1, 0, 0, 0, 0, 0]);

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &QExp) -> QExp {
        QExp(std::array::from_fn(|j| self.0[j] + other.0[j]))
    }

    /// x^e for x in F_{q^6}.
    pub fn apply(&self, ctx: &FieldCtx, x: Elt) -> Elt {
        let mut acc = Elt::ONE;
        for (j, &c) in self.0.iter().enumerate() {
            if c > 0 {
                acc = ctx.mul(acc, ctx.pow(ctx.frob(x, j as i64), c as u64));
            }
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Y(u8),
    A,
    B,
    M,
    Gamma,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Var(Var),
    Group(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub atom: Atom,
    pub exp: QExp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

/// A flattened monomial: coefficient times prod var^exp.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: i64,
    pub powers: Vec<(Var, QExp)>,
}

impl Monomial {
    pub fn y_degree(&self, i: u8) -> u32 {
        self.powers
            .iter()
            .filter(|(v, _)| *v == Var::Y(i))
            .map(|(_, e)| e.0.iter().sum::<u32>())
            .sum()
    }
}

impl Expr {
    pub fn eval(&self, ctx: &FieldCtx, value: &dyn Fn(Var) -> Elt) -> Elt {
        self.terms.iter().fold(Elt::ZERO, |acc, t| {
            let mut v = ctx.from_int(t.coeff);
            for f in &t.factors {
                let base = match &f.atom {
                    Atom::Var(x) => value(*x),
                    Atom::Group(e) => e.eval(ctx, value),
                };
                v = ctx.mul(v, f.exp.apply(ctx, base));
            }
            ctx.add(acc, v)
        })
    }

    /// The terms as monomials; `None` when a parenthesised group occurs.
    pub fn monomials(&self) -> Option<Vec<Monomial>> {
        self.terms
            .iter()
            .map(|t| {
                let mut powers: Vec<(Var, QExp)> = Vec::new();
                for f in &t.factors {
                    let Atom::Var(v) = f.atom else { return None };
                    match powers.iter_mut().find(|(w, _)| *w == v) {
                        Some((_, e)) => *e = e.add(&f.exp),
                        None => powers.push((v, f.exp)),
                    }
                }
                powers.sort();
                Some(Monomial { coeff: t.coeff, powers })
            })
            .collect()
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.terms.iter().any(|t| {
            t.factors.iter().any(|f| match &f.atom {
                Atom::Var(w) => *w == v,
                Atom::Group(e) => e.mentions(v),
            })
        })
    }
}

/// Removes layout commands and whitespace.
pub fn normalize(src: &str) -> String {
    src.replace("\\\\", " ")
        .replace("\\displaybreak", " ")
        .replace('&', " ")
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect()
}

/// Splits a data file into `(name, body)` sections introduced by `%% name`
/// lines.
pub fn sections(src: &str) -> Vec<(&str, &str)> {
    let mut out = Vec::new();
    let mut rest = src;
    while let Some(start) = rest.find("%% ") {
        let after = &rest[start + 3..];
        let name_end = after.find('\n').unwrap_or(after.len());
        let name = after[..name_end].trim();
        let body_start = (name_end + 1).min(after.len());
        let body = &after[body_start..];
        let body_end = body.find("\n%% ").map(|i| i + 1).unwrap_or(body.len());
        out.push((name, &body[..body_end]));
        rest = &body[body_end..];
    }
    out
}

pub fn parse(src: &str) -> Result<Expr> {
    let text = normalize(src);
    let trimmed = text.trim_end_matches([';', '.', ',']);
    let mut p = Parser {
        s: trimmed.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.s.len() {
        return Err(p.error("unexpected input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        let start = self.pos.saturating_sub(20);
        let end = (self.pos + 20).min(self.s.len());
        Error::Parse(format!(
            "{msg} at offset {}: ...{}...",
            self.pos,
            String::from_utf8_lossy(&self.s[start..end])
        ))
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Option<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| {
            std::str::from_utf8(&self.s[start..self.pos])
                .expect("ascii digits")
                .parse()
                .expect("short integer")
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        loop {
            let mut sign = None;
            while let Some(c @ (b'+' | b'-')) = self.peek() {
                sign = Some(if c == b'-' { -1 } else { 1 });
                self.pos += 1;
            }
            match self.peek() {
                None | Some(b')') => {
                    if sign.is_some() {
                        return Err(self.error("dangling sign"));
                    }
                    break;
                }
                _ => {}
            }
            if sign.is_none() && !terms.is_empty() {
                return Err(self.error("missing operator"));
            }
            let n = self.int().unwrap_or(1) as i64;
            let mut factors = Vec::new();
            while let Some(f) = self.factor()? {
                factors.push(f);
            }
            if factors.is_empty() && n == 1 && self.pos > 0 && !self.s[self.pos - 1].is_ascii_digit() {
                return Err(self.error("empty term"));
            }
            terms.push(Term {
                coeff: sign.unwrap_or(1) * n,
                factors,
            });
        }
        Ok(Expr { terms })
    }

    fn factor(&mut self) -> Result<Option<Factor>> {
        let atom = if self.eat("y_{") {
            let d = self.digit()?;
            if !self.eat("}") {
                return Err(self.error("expected }"));
            }
            Atom::Var(Var::Y(d))
        } else if self.eat("y_") {
            Atom::Var(Var::Y(self.digit()?))
        } else if self.eat("\\gamma") {
            Atom::Var(Var::Gamma)
        } else if self.eat("a") {
            Atom::Var(Var::A)
        } else if self.eat("b") {
            Atom::Var(Var::B)
        } else if self.eat("m") {
            Atom::Var(Var::M)
        } else if self.eat("(") {
            let inner = self.expr()?;
            if !self.eat(")") {
                return Err(self.error("expected )"));
            }
            Atom::Group(inner)
        } else {
            return match self.peek() {
                None | Some(b'+' | b'-' | b')') => Ok(None),
                _ => Err(self.error("unknown token")),
            };
        };
        let exp = if self.eat("^") { self.exponent()? } else { QExp::ONE };
        Ok(Some(Factor { atom, exp }))
    }

    fn digit(&mut self) -> Result<u8> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                self.pos += 1;
                Ok(c - b'0')
            }
            _ => Err(self.error("expected digit")),
        }
    }

    fn q_power(&mut self) -> Result<usize> {
        if self.eat("^") {
            let d = self.digit()? as usize;
            if d > 5 {
                return Err(self.error("q-power above 5"));
            }
            Ok(d)
        } else {
            Ok(1)
        }
    }

    fn exponent(&mut self) -> Result<QExp> {
        let mut e = QExp::default();
        if self.eat("{") {
            loop {
                let n = self.int();
                if self.eat("q") {
                    let j = self.q_power()?;
                    e.0[j] += n.unwrap_or(1);
                } else if let Some(n) = n {
                    e.0[0] += n;
                } else {
                    return Err(self.error("bad exponent"));
                }
                if self.eat("}") {
                    break;
                }
                if !self.eat("+") {
                    return Err(self.error("bad exponent"));
                }
            }
        } else if self.eat("q") {
            e.0[1] = 1;
        } else {
            e.0[0] = self.digit()? as u32;
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exponents_and_coefficients() {
        let e = parse("-2 y_0^2 y_1 a^{q^3+1} + 3 \\gamma^{2q^2+q}").unwrap();
        let m = e.monomials().unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[0].coeff, -2);
        assert_eq!(m[0].y_degree(0), 2);
        assert!(m[0].powers.contains(&(Var::A, QExp([1, 0, 0, 1, 0, 0]))));
        assert_eq!(m[1].coeff, 3);
        assert_eq!(m[1].powers, vec![(Var::Gamma, QExp([0, 1, 2, 0, 0, 0]))]);
    }

    #[test]
    fn repeated_factors_merge() {
        let e = parse("y_0 a^{q^3} a^{q^4}\\gamma^{q^3+q^2}\\gamma^{q^4}").unwrap();
        let m = &e.monomials().unwrap()[0];
        assert!(m.powers.contains(&(Var::A, QExp([0, 0, 0, 1, 1, 0]))));
        assert!(m.powers.contains(&(Var::Gamma, QExp([0, 0, 1, 1, 1, 0]))));
    }

    #[test]
    fn line_breaks_split_terms_and_collapse_signs() {
        let e = parse("a - y_0 y_1 y_2 \\\\& \n y_3 a^{q} -\\\\&&-b^q + \\\\&& -m").unwrap();
        let m = e.monomials().unwrap();
        assert_eq!(m.len(), 4);
        assert_eq!(m[1].y_degree(3), 1);
        assert_eq!(m[2].coeff, -1);
        assert_eq!(m[3].coeff, -1);
    }

    #[test]
    fn rejects_malformed_exponents() {
        assert!(parse("a^{q^3q^2+1}").is_err());
        assert!(parse("\\gamma^{q^4+q^+12}").is_err());
        assert!(parse("a\\- b").is_err());
    }

    #[test]
    fn groups_evaluate_with_frobenius() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let a = ctx.elem(123).unwrap();
        let b = ctx.elem(456).unwrap();
        let e = parse("(a-b)^{q+1} - 2(a)^q").unwrap();
        assert!(e.monomials().is_none());
        let v = e.eval(&ctx, &|x| match x {
            Var::A => a,
            Var::B => b,
            _ => Elt::ZERO,
        });
        let d = ctx.sub(a, b);
        let expect = ctx.sub(ctx.mul(ctx.frob(d, 1), d), ctx.scale(ctx.frob(a, 1), 2));
        assert_eq!(v, expect);
    }

    #[test]
    fn sections_split_on_markers() {
        let s = sections("%% f1\nx + y\n%% g2\na\nb\n");
        assert_eq!(s, vec![("f1", "x + y\n"), ("g2", "a\nb\n")]);
    }

    #[test]
    fn qexp_apply_matches_pow() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let e = QExp([1, 2, 0, 1, 0, 0]);
        for x in ctx.elements() {
            assert_eq!(e.apply(&ctx, x), ctx.pow(x, 1 + 2 * 2 + 8));
        }
    }
}

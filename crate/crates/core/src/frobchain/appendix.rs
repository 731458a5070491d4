//! The six-variable appendix polynomials f1..f4, g1..g3, r1..r3, parsed from
//! their LaTeX source after a documented correction table is applied.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};
use crate::latex::{self, Expr, Monomial, Var};

const SOURCE: &str = include_str!("../../data/appendix.tex");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PolyId {
    F1,
    F2,
    F3,
    F4,
    G1,
    G2,
    G3,
    R1,
    R2,
    R3,
}

impl PolyId {
    pub const ALL: [PolyId; 10] = [
        PolyId::F1,
        PolyId::F2,
        PolyId::F3,
        PolyId::F4,
        PolyId::G1,
        PolyId::G2,
        PolyId::G3,
        PolyId::R1,
        PolyId::R2,
        PolyId::R3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PolyId::F1 => "f1",
            PolyId::F2 => "f2",
            PolyId::F3 => "f3",
            PolyId::F4 => "f4",
            PolyId::G1 => "g1",
            PolyId::G2 => "g2",
            PolyId::G3 => "g3",
            PolyId::R1 => "r1",
            PolyId::R2 => "r2",
            PolyId::R3 => "r3",
        }
    }

    /// No oracle constrains r1..r3.
    pub fn unverified(self) -> bool {
        matches!(self, PolyId::R1 | PolyId::R2 | PolyId::R3)
    }
}

impl fmt::Display for PolyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PolyId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownPolyId(s.to_string()))
    }
}

/// One amendment of a LaTeX source display.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Correction {
    /// Section of the data file the amendment applies to.
    pub section: &'static str,
    /// Verbatim source text; must occur exactly once in the section.
    pub original: &'static str,
    pub replacement: &'static str,
    pub reason: &'static str,
}

pub const CORRECTIONS: &[Correction] = &[
    Correction {
        section: "f2",
        original: "a^{q^3q^2+1}",
        replacement: "a^{q^3+q^2+1}",
        reason: "malformed exponent; the chain coefficient F2 has a^{q^3+q^2+1} in this monomial",
    },
    Correction {
        section: "f2",
        original: "\\-",
        replacement: "-",
        reason: "discretionary hyphen in place of a minus sign; F2 has the term with sign -1",
    },
    Correction {
        section: "f2",
        original: "y_0 y_3 a^{q^3+1}b^q",
        replacement: "y_0 y_3 a^{q^3+1}\\gamma^q",
        reason: "b appears nowhere else in the appendix; F2 has gamma^q in this monomial",
    },
    Correction {
        section: "g3",
        original: "\\gamma^{q^4+q^+12}",
        replacement: "\\gamma^{q^4+q^2+1}",
        reason: "malformed exponent; q^2+1 completes the pattern of the neighbouring a^q gamma terms",
    },
];

/// Applies every correction for `section`, checking that each original
/// occurs exactly once.
pub fn apply_corrections(section: &str, body: &str, table: &[Correction]) -> Result<String> {
    let mut text = body.to_string();
    for c in table.iter().filter(|c| c.section == section) {
        let hits = text.matches(c.original).count();
        if hits != 1 {
            return Err(Error::Parse(format!(
                "correction for {section}: {:?} occurs {hits} times",
                c.original
            )));
        }
        text = text.replacen(c.original, c.replacement, 1);
    }
    Ok(text)
}

#[derive(Clone, Debug)]
pub struct AppendixPoly {
    pub id: PolyId,
    pub expr: Expr,
    /// One entry per source term, in source order.
    pub terms: Vec<Monomial>,
}

impl AppendixPoly {
    pub fn unverified(&self) -> bool {
        self.id.unverified()
    }
}

pub struct Appendix {
    polys: BTreeMap<PolyId, AppendixPoly>,
}

impl Appendix {
    pub fn parse_with(src: &str, table: &[Correction]) -> Result<Self> {
        let mut polys = BTreeMap::new();
        for (name, body) in latex::sections(src) {
            let id: PolyId = name.parse()?;
            let text = apply_corrections(name, body, table)?;
            let expr = latex::parse(&text).map_err(|e| Error::Parse(format!("{name}: {e}")))?;
            let terms = expr
                .monomials()
                .ok_or_else(|| Error::Parse(format!("{name}: unexpected parenthesis")))?;
            polys.insert(id, AppendixPoly { id, expr, terms });
        }
        if let Some(id) = PolyId::ALL.into_iter().find(|id| !polys.contains_key(id)) {
            return Err(Error::Parse(format!("missing section {id}")));
        }
        Ok(Appendix { polys })
    }

    /// The corrected transcription shipped with the crate.
    pub fn get() -> &'static Appendix {
        static CELL: OnceLock<Appendix> = OnceLock::new();
        CELL.get_or_init(|| Appendix::parse_with(SOURCE, CORRECTIONS).expect("bundled appendix source parses"))
    }

    pub fn poly(&self, id: PolyId) -> &AppendixPoly {
        &self.polys[&id]
    }

    pub fn source() -> &'static str {
        SOURCE
    }
}

fn value_of(y: &[Elt; 6], a: Elt, b: Elt, gamma: Elt) -> impl Fn(Var) -> Elt + '_ {
    move |v| match v {
        Var::Y(i) => y[i as usize],
        Var::A => a,
        Var::B => b,
        Var::Gamma => gamma,
        Var::M => Elt::ZERO,
    }
}

/// Term-by-term value of an appendix polynomial.
pub fn eval_appendix(ctx: &FieldCtx, id: &str, y: &[Elt; 6], a: Elt, gamma: Elt) -> Result<Elt> {
    let id: PolyId = id.parse()?;
    Ok(eval_poly(ctx, Appendix::get().poly(id), y, a, Elt::ZERO, gamma))
}

pub fn eval_poly(ctx: &FieldCtx, p: &AppendixPoly, y: &[Elt; 6], a: Elt, b: Elt, gamma: Elt) -> Elt {
    p.expr.eval(ctx, &value_of(y, a, b, gamma))
}

/// A polynomial in y with coefficients fixed for one (a, γ).
#[derive(Clone, Debug)]
pub struct YPoly {
    terms: Vec<([u8; 6], Elt)>,
    max_deg: usize,
}

impl YPoly {
    pub fn specialize(ctx: &FieldCtx, p: &AppendixPoly, a: Elt, b: Elt, gamma: Elt) -> Self {
        let mut merged: BTreeMap<[u8; 6], Elt> = BTreeMap::new();
        let mut max_deg = 0;
        for t in &p.terms {
            let mut key = [0u8; 6];
            let mut c = ctx.from_int(t.coeff);
            for (v, e) in &t.powers {
                match v {
                    Var::Y(i) => {
                        // y exponents in the appendix are plain integers
                        key[*i as usize] += e.0[0] as u8;
                        max_deg = max_deg.max(key[*i as usize] as usize);
                    }
                    Var::A => c = ctx.mul(c, e.apply(ctx, a)),
                    Var::B => c = ctx.mul(c, e.apply(ctx, b)),
                    Var::Gamma => c = ctx.mul(c, e.apply(ctx, gamma)),
                    Var::M => c = Elt::ZERO,
                }
            }
            let slot = merged.entry(key).or_insert(Elt::ZERO);
            *slot = ctx.add(*slot, c);
        }
        let terms = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        YPoly { terms, max_deg }
    }

    pub fn eval(&self, ctx: &FieldCtx, y: &[Elt; 6]) -> Elt {
        let mut pows = [[Elt::ONE; 8]; 6];
        for i in 0..6 {
            for k in 1..=self.max_deg.min(7) {
                pows[i][k] = ctx.mul(pows[i][k - 1], y[i]);
            }
        }
        self.terms.iter().fold(Elt::ZERO, |acc, (key, c)| {
            let v = (0..6).fold(*c, |v, i| ctx.mul(v, pows[i][key[i] as usize]));
            ctx.add(acc, v)
        })
    }

    /// Coefficient of the y-monomial with the given exponents.
    pub fn coefficient(&self, key: [u8; 6]) -> Elt {
        self.terms
            .iter()
            .find(|(k, _)| *k == key)
            .map_or(Elt::ZERO, |(_, c)| *c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_section_parses() {
        let app = Appendix::get();
        for id in PolyId::ALL {
            assert!(!app.poly(id).terms.is_empty(), "{id}");
        }
    }

    #[test]
    fn corrections_cite_text_present_exactly_once() {
        let sections = latex::sections(SOURCE);
        for c in CORRECTIONS {
            let body = sections.iter().find(|(n, _)| *n == c.section).unwrap().1;
            assert_eq!(body.matches(c.original).count(), 1, "{c:?}");
        }
    }

    #[test]
    fn unknown_id_is_rejected() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let z = [Elt::ZERO; 6];
        assert!(matches!(
            eval_appendix(&ctx, "f5", &z, Elt::ONE, Elt::ONE),
            Err(Error::UnknownPolyId(_))
        ));
    }
}

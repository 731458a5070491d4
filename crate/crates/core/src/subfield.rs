//! Slopes in F_{q^2}: the cubic g(y0, y1), its coefficients B..F, the
//! subplane secant criterion and the C = 0 factorisation.
//!
//! For m in F_{q^2} the chain collapses: the X^2 and X coefficients of the
//! numerator and denominator vanish and
//!
//!   X^{q^6} - X = g(m, m^q) (X - m^q) / D^{q^4+q^2+1},
//!
//! where g = -C^q y0 y1^2 - D^q y1^2 + C y0^2 y1 + E y0 y1 - F^q y1 + D y0^2
//! plus F y0 + B + A y0^2 y1^2. The last term vanishes on the A = 0 branch.
//! All displays are evaluated at ã = -a.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};
use crate::frobchain::appendix::{apply_corrections, Correction};
use crate::frobchain::chain;
use crate::latex::{self, Expr, Var};
use crate::oracle::LineTable;
use crate::secant::{self, SecantQuery};

const SOURCE: &str = include_str!("../data/cubic.tex");

pub const CUBIC_CORRECTIONS: &[Correction] = &[Correction {
    section: "B",
    original: "b^{q^4+q^4+q}",
    replacement: "b^{q^5+q^4+q}",
    reason: "repeated q^4; the chain-derived constant term has b^{q^5+q^4+q}",
}];

struct Displays {
    b: Expr,
    c: Expr,
    d: Expr,
    e: Expr,
    f: Expr,
    h1: Expr,
    h2: Expr,
    aq5_num: Expr,
    aq5_den: Expr,
    czero_num: Expr,
    czero_den: Expr,
}

fn displays() -> &'static Displays {
    static CELL: OnceLock<Displays> = OnceLock::new();
    CELL.get_or_init(|| {
        let sections = latex::sections(SOURCE);
        let get = |name: &str| -> Expr {
            let body = sections
                .iter()
                .find(|(n, _)| *n == name)
                .unwrap_or_else(|| panic!("section {name} missing"))
                .1;
            let text = apply_corrections(name, body, CUBIC_CORRECTIONS).expect("corrections apply");
            latex::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
        };
        Displays {
            b: get("B"),
            c: get("C"),
            d: get("D"),
            e: get("E"),
            f: get("F"),
            h1: get("h1"),
            h2: get("h2"),
            aq5_num: get("aq5_num"),
            aq5_den: get("aq5_den"),
            czero_num: get("czero_num"),
            czero_den: get("czero_den"),
        }
    })
}

pub fn source() -> &'static str {
    SOURCE
}

fn eval_at(ctx: &FieldCtx, e: &Expr, a_tilde: Elt, b: Elt, m: Elt) -> Elt {
    e.eval(ctx, &|v| match v {
        Var::A => a_tilde,
        Var::B => b,
        Var::M => m,
        Var::Gamma => ctx.gamma_of(b),
        Var::Y(_) => Elt::ZERO,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CubicCoeffs {
    pub b: Elt,
    pub c: Elt,
    pub d: Elt,
    pub e: Elt,
    pub f: Elt,
}

impl CubicCoeffs {
    /// The eight monomial coefficients in the order of [`MONOMIALS`].
    pub fn monomial_coeffs(&self, ctx: &FieldCtx) -> [Elt; 8] {
        let fr = |x| ctx.frob(x, 1);
        [
            ctx.neg(fr(self.c)),
            ctx.neg(fr(self.d)),
            self.c,
            self.e,
            ctx.neg(fr(self.f)),
            self.d,
            self.f,
            self.b,
        ]
    }

    /// g(y0, y1) without the A y0^2 y1^2 term.
    pub fn eval(&self, ctx: &FieldCtx, y0: Elt, y1: Elt) -> Elt {
        MONOMIALS
            .iter()
            .zip(self.monomial_coeffs(ctx))
            .fold(Elt::ZERO, |acc, (&(i, j), c)| {
                ctx.add(acc, ctx.mul(c, ctx.mul(ctx.pow(y0, i), ctx.pow(y1, j))))
            })
    }

    pub fn e_is_skew(&self, ctx: &FieldCtx) -> bool {
        ctx.frob(self.e, 1) == ctx.neg(self.e)
    }
}

/// Exponents (i, j) of y0^i y1^j, in display order.
pub const MONOMIALS: [(u64, u64); 8] = [(1, 2), (0, 2), (2, 1), (1, 1), (0, 1), (2, 0), (1, 0), (0, 0)];

/// B..F from the transcribed displays.
pub fn cubic_coeffs(ctx: &FieldCtx, a: Elt, b: Elt) -> CubicCoeffs {
    let d = displays();
    let at = ctx.neg(a);
    let ev = |e: &Expr| eval_at(ctx, e, at, b, Elt::ZERO);
    let out = CubicCoeffs {
        b: ev(&d.b),
        c: ev(&d.c),
        d: ev(&d.d),
        e: ev(&d.e),
        f: ev(&d.f),
    };
    debug_assert!(out.e_is_skew(ctx));
    out
}

/// The full cubic value g(m, m^q), including A m^{2q+2}.
pub fn g_value(ctx: &FieldCtx, cc: &CubicCoeffs, a: Elt, m: Elt) -> Elt {
    let mq = ctx.frob(m, 1);
    let quartic = ctx.mul(ctx.capital_a(a), ctx.pow(ctx.mul(m, mq), 2));
    ctx.add(cc.eval(ctx, m, mq), quartic)
}

/// D^{q^4+q^2+1}.
pub fn degeneracy_power(ctx: &FieldCtx, a: Elt, b: Elt, m: Elt) -> Elt {
    let d = secant::degeneracy(ctx, &SecantQuery::new(a, b, m));
    ctx.mul(ctx.mul(d, ctx.frob(d, 2)), ctx.frob(d, 4))
}

/// g(m, m^q) read off the chain: F2 D^{q^4+q^2+1} / F5. `None` for a
/// degenerate slope.
pub fn chain_g_value(ctx: &FieldCtx, a: Elt, b: Elt, m: Elt) -> Option<Elt> {
    let dc = chain::derived_coeffs(ctx, &SecantQuery::new(a, b, m)).ok()?;
    ctx.div(ctx.mul(dc.f2, degeneracy_power(ctx, a, b, m)), dc.f5)
}

/// Compares x^{q^6} - x from the chain with g(m, m^q)(X - m^q)/D^{q^4+q^2+1}
/// (transcribed g) at every nondegenerate m in F_{q^2} and every X in `xs`
/// off the pole. Returns (checked, mismatches).
pub fn eq_h_check(ctx: &FieldCtx, a: Elt, b: Elt, xs: &[Elt]) -> (usize, usize) {
    let cc = cubic_coeffs(ctx, a, b);
    let (mut checked, mut bad) = (0, 0);
    for m in ctx.subfield_elements(2).expect("e = 2 is valid") {
        let sq = SecantQuery::new(a, b, m);
        if secant::degeneracy(ctx, &sq).is_zero() {
            continue;
        }
        let chain = chain::chain_matrix(ctx, &sq);
        let dn = degeneracy_power(ctx, a, b, m);
        let g = g_value(ctx, &cc, a, m);
        let mq = ctx.frob(m, 1);
        for &x in xs {
            let Some(y) = chain.eval(ctx, x) else { continue };
            checked += 1;
            let rhs = ctx.div(ctx.mul(g, ctx.sub(x, mq)), dn).expect("nondegenerate");
            bad += (ctx.sub(y, x) != rhs) as usize;
        }
    }
    (checked, bad)
}

/// Solves rows · x = rhs over F_{q^6} by elimination; errors when the rank
/// is below the number of unknowns and reports inconsistent rows.
pub fn solve(ctx: &FieldCtx, rows: &[Vec<Elt>], rhs: &[Elt]) -> Result<Vec<Elt>> {
    let n = rows.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Elt>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &v)| {
            let mut r = r.clone();
            r.push(v);
            r
        })
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(piv, rank);
        let inv = ctx.inv(m[rank][col]).expect("pivot is nonzero");
        for c in col..=n {
            m[rank][c] = ctx.mul(m[rank][c], inv);
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in col..=n {
                    let v = ctx.mul(f, m[rank][c]);
                    m[r][c] = ctx.sub(m[r][c], v);
                }
            }
        }
        rank += 1;
    }
    if rank < n {
        return Err(Error::UnderdeterminedSystem { rank, unknowns: n });
    }
    if m[rank..].iter().any(|r| !r[n].is_zero()) {
        return Err(Error::ClaimFailed("interpolation system is inconsistent".into()));
    }
    Ok(m[..n].iter().map(|r| r[n]).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct Interpolated {
    pub coeffs: CubicCoeffs,
    /// Coefficient of y0^2 y1^2 when the system determines it; otherwise A
    /// was assumed and subtracted.
    pub quartic: Option<Elt>,
    /// The fitted monomial coefficients satisfy the -C^q, -D^q, -F^q
    /// pattern.
    pub conjugate_pattern_ok: bool,
    pub points: usize,
}

/// B..F fitted to chain values of g at the nondegenerate m in F_{q^2}.
pub fn interpolate_cubic_coeffs(ctx: &FieldCtx, a: Elt, b: Elt) -> Result<Interpolated> {
    let samples: Vec<(Elt, Elt)> = ctx
        .subfield_elements(2)?
        .into_iter()
        .filter_map(|m| chain_g_value(ctx, a, b, m).map(|g| (m, g)))
        .collect();
    let mono = |m: Elt, i: u64, j: u64| ctx.mul(ctx.pow(m, i), ctx.pow(ctx.frob(m, 1), j));
    let rows9: Vec<Vec<Elt>> = samples
        .iter()
        .map(|&(m, _)| {
            let mut r: Vec<Elt> = MONOMIALS.iter().map(|&(i, j)| mono(m, i, j)).collect();
            r.push(mono(m, 2, 2));
            r
        })
        .collect();
    let rhs: Vec<Elt> = samples.iter().map(|s| s.1).collect();
    let (sol, quartic) = match solve(ctx, &rows9, &rhs) {
        Ok(s) => {
            let q = s[8];
            (s[..8].to_vec(), Some(q))
        }
        Err(Error::UnderdeterminedSystem { .. }) => {
            let big_a = ctx.capital_a(a);
            let rows8: Vec<Vec<Elt>> = rows9.iter().map(|r| r[..8].to_vec()).collect();
            let rhs8: Vec<Elt> = samples
                .iter()
                .map(|&(m, g)| ctx.sub(g, ctx.mul(big_a, mono(m, 2, 2))))
                .collect();
            (solve(ctx, &rows8, &rhs8)?, None)
        }
        Err(e) => return Err(e),
    };
    let coeffs = CubicCoeffs {
        b: sol[7],
        c: sol[2],
        d: sol[5],
        e: sol[3],
        f: sol[6],
    };
    let conjugate_pattern_ok = coeffs.monomial_coeffs(ctx).to_vec() == sol;
    Ok(Interpolated {
        coeffs,
        quartic,
        conjugate_pattern_ok,
        points: samples.len(),
    })
}

/// Where interpolation is underdetermined: compares the transcribed cubic
/// with the chain at every nondegenerate m in F_{q^2}. Returns (checked,
/// mismatches).
pub fn cubic_consistency(ctx: &FieldCtx, a: Elt, b: Elt) -> (usize, usize) {
    let cc = cubic_coeffs(ctx, a, b);
    let mut checked = 0;
    let mut bad = 0;
    for m in ctx.subfield_elements(2).expect("e = 2 is valid") {
        if let Some(g) = chain_g_value(ctx, a, b, m) {
            checked += 1;
            bad += (g != g_value(ctx, &cc, a, m)) as usize;
        }
    }
    (checked, bad)
}

/// First ξ in F_{q^2} (hex order) with {ξ, ξ^q} an F_q-basis.
pub fn quadratic_normal_element(ctx: &FieldCtx) -> Elt {
    let mut fq2: Vec<(String, Elt)> = ctx
        .subfield_elements(2)
        .expect("e = 2 is valid")
        .into_iter()
        .map(|x| (ctx.to_hex(x), x))
        .collect();
    fq2.sort();
    fq2.into_iter()
        .map(|(_, x)| x)
        .find(|&x| {
            let xq = ctx.frob(x, 1);
            !ctx.sub(ctx.mul(x, x), ctx.mul(xq, xq)).is_zero()
        })
        .expect("F_{q^2} has a normal element")
}

/// Zeros of the pulled-back cubic g(ξ x0 + ξ^q x1, ξ^q x0 + ξ x1) over
/// F_q^2, and zeros of g(m, m^q) over F_{q^2}.
pub fn pullback_point_counts(ctx: &FieldCtx, a: Elt, b: Elt) -> (usize, usize) {
    let cc = cubic_coeffs(ctx, a, b);
    let xi = quadratic_normal_element(ctx);
    let xiq = ctx.frob(xi, 1);
    let fq = ctx.subfield_elements(1).expect("e = 1 is valid");
    let mut pulled = 0;
    for &x0 in &fq {
        for &x1 in &fq {
            let y0 = ctx.add(ctx.mul(xi, x0), ctx.mul(xiq, x1));
            let y1 = ctx.add(ctx.mul(xiq, x0), ctx.mul(xi, x1));
            let q4 = ctx.mul(ctx.capital_a(a), ctx.pow(ctx.mul(y0, y1), 2));
            pulled += ctx.add(cc.eval(ctx, y0, y1), q4).is_zero() as usize;
        }
    }
    let direct = ctx
        .subfield_elements(2)
        .expect("e = 2 is valid")
        .into_iter()
        .filter(|&m| g_value(ctx, &cc, a, m).is_zero())
        .count();
    (pulled, direct)
}

pub fn in_subplane(ctx: &FieldCtx, a: Elt, b: Elt) -> bool {
    ctx.frob(a, 2) == a && ctx.frob(b, 2) == b
}

/// -(b^{q^2} - b)/(ã^{q^2} - ã), or `None` when a is in F_{q^2}.
pub fn forbidden_slope(ctx: &FieldCtx, a: Elt, b: Elt) -> Option<Elt> {
    let at = ctx.neg(a);
    let num = ctx.sub(ctx.frob(b, 2), b);
    ctx.div(ctx.neg(num), ctx.sub(ctx.frob(at, 2), at))
}

/// Transcribed B..F for one base point, reused across slopes.
pub struct SubfieldCubic {
    a: Elt,
    b: Elt,
    coeffs: CubicCoeffs,
    forbidden: Option<Elt>,
}

impl SubfieldCubic {
    pub fn new(ctx: &FieldCtx, a: Elt, b: Elt) -> Result<Self> {
        if in_subplane(ctx, a, b) {
            return Err(Error::PointInSubplane);
        }
        Ok(SubfieldCubic {
            a,
            b,
            coeffs: cubic_coeffs(ctx, a, b),
            forbidden: forbidden_slope(ctx, a, b),
        })
    }

    pub fn coeffs(&self) -> &CubicCoeffs {
        &self.coeffs
    }

    pub fn predicate(&self, ctx: &FieldCtx, m: Elt) -> Result<bool> {
        if ctx.frob(m, 2) != m {
            return Err(Error::SlopeNotInFq2);
        }
        if self.forbidden == Some(m) {
            return Err(Error::ForbiddenSlope);
        }
        debug_assert!(!secant::degeneracy(ctx, &SecantQuery::new(self.a, self.b, m)).is_zero());
        Ok(g_value(ctx, &self.coeffs, self.a, m).is_zero())
    }
}

/// g(m, m^q) = 0 on the domain where it decides (q+1)-secancy.
pub fn prop2bis_predicate(ctx: &FieldCtx, a: Elt, b: Elt, m: Elt) -> Result<bool> {
    SubfieldCubic::new(ctx, a, b)?.predicate(ctx, m)
}

/// The first m in F_{q^2} (encoding order) giving a (q+1)-secant through
/// (a, b). Slopes outside the cubic's domain go to the line table when one
/// is given, else to root counting.
pub fn subfield_secant_search(ctx: &FieldCtx, a: Elt, b: Elt, table: Option<&LineTable>) -> Result<Option<Elt>> {
    if !ctx.capital_a(a).is_zero() {
        return Err(Error::AIsNotZero);
    }
    let cubic = SubfieldCubic::new(ctx, a, b).ok();
    let fallback = |m: Elt| match table {
        Some(t) => t.is_full(t.through(ctx, a, b, m)),
        None => secant::is_full_secant(ctx, &SecantQuery::new(a, b, m)),
    };
    for m in ctx.subfield_elements(2)? {
        let hit = match cubic.as_ref().map(|c| c.predicate(ctx, m)) {
            Some(Ok(v)) => v,
            _ => fallback(m),
        };
        if hit {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// The paper's h1, h2 at (ã, b, m).
pub fn h1(ctx: &FieldCtx, a: Elt, b: Elt, m: Elt) -> Elt {
    eval_at(ctx, &displays().h1, ctx.neg(a), b, m)
}

pub fn h2(ctx: &FieldCtx, a: Elt, b: Elt, m: Elt) -> Elt {
    eval_at(ctx, &displays().h2, ctx.neg(a), b, m)
}

#[derive(Clone, Debug, Serialize)]
pub struct CzeroReport {
    pub a: String,
    pub b: String,
    #[serde(rename = "A")]
    pub capital_a: String,
    #[serde(rename = "C")]
    pub c: String,
    pub secant_slope: Option<String>,
    /// a^{q^5} = (a^{q+1} - a^{q^2+q} + a^{q^3+q^2} - a^{q^4+q^3})/(a - a^{q^4}).
    pub aq5_ok: bool,
    /// The same with denominator a^{q^4} - a, as printed.
    pub aq5_printed_ok: bool,
    pub czero_bis_ok: bool,
    /// (ã - ã^{q^2})(ã - ã^{q^4}) g = (ã - ã^{q^2})^{q^2} h1 h2 on F_{q^2}.
    pub factorization_ok: bool,
    /// g = (ã - ã^{q^2})^{q^2} h1 h2 on F_{q^2}.
    pub printed_factorization_ok: bool,
    pub h2_root_count: usize,
}

impl CzeroReport {
    pub fn all_ok(&self, q: u32) -> bool {
        self.aq5_ok && self.czero_bis_ok && self.factorization_ok && self.h2_root_count == q as usize
    }
}

/// Base points with A = 0, a not in F_{q^2} and C = 0.
pub fn czero_inputs(ctx: &FieldCtx) -> Vec<(Elt, Elt)> {
    let d = displays();
    let elems: Vec<Elt> = ctx.elements().collect();
    let mut out: Vec<(Elt, Elt)> = elems
        .par_iter()
        .filter(|&&a| ctx.capital_a(a).is_zero() && ctx.frob(a, 2) != a)
        .flat_map_iter(|&a| {
            let at = ctx.neg(a);
            elems
                .iter()
                .filter(move |&&b| eval_at(ctx, &d.c, at, b, Elt::ZERO).is_zero())
                .map(move |&b| (a, b))
        })
        .collect();
    out.sort();
    out
}

pub fn czero_factorization_check(ctx: &FieldCtx, a: Elt, b: Elt, table: Option<&LineTable>) -> Result<CzeroReport> {
    let d = displays();
    let at = ctx.neg(a);
    let cc = cubic_coeffs(ctx, a, b);
    if !ctx.capital_a(a).is_zero() || ctx.frob(a, 2) == a || !cc.c.is_zero() {
        return Err(Error::PreconditionUnsatisfiable);
    }
    let ev = |e: &Expr| eval_at(ctx, e, at, b, Elt::ZERO);
    let (num, den) = (ev(&d.aq5_num), ev(&d.aq5_den));
    let aq5 = ctx.frob(at, 5);
    let aq5_printed_ok = ctx.div(num, den) == Some(aq5);
    let aq5_ok = ctx.div(num, ctx.neg(den)) == Some(aq5);
    let czero_bis_ok = ctx.div(ev(&d.czero_num), ev(&d.czero_den)) == Some(ctx.frob(b, 4));
    let d2 = ctx.sub(at, ctx.frob(at, 2));
    let d4 = ctx.sub(at, ctx.frob(at, 4));
    let lead = ctx.frob(d2, 2);
    let cleared = ctx.mul(d2, d4);
    let fq2 = ctx.subfield_elements(2)?;
    let (mut factorization_ok, mut printed_factorization_ok) = (true, true);
    for &m in &fq2 {
        let g = g_value(ctx, &cc, a, m);
        let rhs = ctx.mul(lead, ctx.mul(h1(ctx, a, b, m), h2(ctx, a, b, m)));
        factorization_ok &= ctx.mul(cleared, g) == rhs;
        printed_factorization_ok &= g == rhs;
    }
    let h2_root_count = fq2.iter().filter(|&&m| h2(ctx, a, b, m).is_zero()).count();
    let slope = subfield_secant_search(ctx, a, b, table)?;
    Ok(CzeroReport {
        a: ctx.to_hex(a),
        b: ctx.to_hex(b),
        capital_a: ctx.to_hex(ctx.capital_a(a)),
        c: ctx.to_hex(cc.c),
        secant_slope: slope.map(|m| ctx.to_hex(m)),
        aq5_ok,
        aq5_printed_ok,
        czero_bis_ok,
        factorization_ok,
        printed_factorization_ok,
        h2_root_count,
    })
}

/// Checks every C = 0 input; `PreconditionUnsatisfiable` when there is none.
pub fn czero_sweep(ctx: &FieldCtx, table: Option<&LineTable>) -> Result<Vec<CzeroReport>> {
    let inputs = czero_inputs(ctx);
    if inputs.is_empty() {
        return Err(Error::PreconditionUnsatisfiable);
    }
    inputs
        .par_iter()
        .map(|&(a, b)| czero_factorization_check(ctx, a, b, table))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian;

    #[test]
    fn zero_point_has_zero_coefficients() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let z = Elt::ZERO;
        assert_eq!(
            cubic_coeffs(&ctx, z, z),
            CubicCoeffs {
                b: z,
                c: z,
                d: z,
                e: z,
                f: z
            }
        );
    }

    #[test]
    fn e_is_skew_exhaustive_q2() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        for a in ctx.elements() {
            for b in ctx.elements() {
                assert!(cubic_coeffs(&ctx, a, b).e_is_skew(&ctx));
            }
        }
    }

    #[test]
    fn transcription_matches_interpolation_q3_q4() {
        for (p, h) in [(3, 1), (2, 2)] {
            let ctx = FieldCtx::new(p, h).unwrap();
            let mut solved = 0;
            for (i, a) in ctx.elements().step_by(97).enumerate() {
                let b = ctx.elem((i as u32 * 1237 + 11) % ctx.size()).unwrap();
                let Ok(it) = interpolate_cubic_coeffs(&ctx, a, b) else {
                    continue;
                };
                assert_eq!(it.coeffs, cubic_coeffs(&ctx, a, b));
                assert!(it.conjugate_pattern_ok);
                assert!(it.coeffs.e_is_skew(&ctx));
                if let Some(qc) = it.quartic {
                    assert_eq!(qc, ctx.capital_a(a));
                }
                solved += 1;
            }
            assert!(solved > 0);
        }
    }

    #[test]
    fn q2_interpolation_is_underdetermined_but_consistent() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let a = ctx.elem(9).unwrap();
        let b = ctx.elem(22).unwrap();
        assert!(matches!(
            interpolate_cubic_coeffs(&ctx, a, b),
            Err(Error::UnderdeterminedSystem { .. })
        ));
        let (n, bad) = cubic_consistency(&ctx, a, b);
        assert!(n > 0);
        assert_eq!(bad, 0);
    }

    #[test]
    fn subplane_and_forbidden_slope_errors() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let z = Elt::ZERO;
        assert!(matches!(prop2bis_predicate(&ctx, z, z, z), Err(Error::PointInSubplane)));
        let a = ctx.elements().find(|&x| ctx.frob(x, 2) != x).unwrap();
        let b = ctx.elem(3).unwrap();
        let m = forbidden_slope(&ctx, a, b).unwrap();
        assert!(ctx.frob(m, 2) == m || ctx.frob(b, 2) != b);
        if ctx.frob(m, 2) == m {
            assert!(matches!(prop2bis_predicate(&ctx, a, b, m), Err(Error::ForbiddenSlope)));
        }
        let outside = ctx.elements().find(|&x| ctx.frob(x, 2) != x).unwrap();
        assert!(matches!(
            prop2bis_predicate(&ctx, a, b, outside),
            Err(Error::SlopeNotInFq2)
        ));
    }

    #[test]
    fn degenerate_subfield_slopes_are_forbidden_exhaustive_q2() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let fq2 = ctx.subfield_elements(2).unwrap();
        for a in ctx.elements() {
            for b in ctx.elements() {
                if in_subplane(&ctx, a, b) {
                    continue;
                }
                for &m in &fq2 {
                    if secant::degeneracy(&ctx, &SecantQuery::new(a, b, m)).is_zero() {
                        assert_eq!(forbidden_slope(&ctx, a, b), Some(m));
                    }
                }
            }
        }
    }

    #[test]
    fn predicate_matches_oracle_sampled_q2() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let arc = hermitian::enumerate_curve(&ctx).unwrap();
        let table = LineTable::build(&ctx, &arc);
        for a in ctx.elements().step_by(5) {
            for b in ctx.elements().step_by(3) {
                let Ok(cubic) = SubfieldCubic::new(&ctx, a, b) else {
                    continue;
                };
                for m in ctx.subfield_elements(2).unwrap() {
                    if let Ok(v) = cubic.predicate(&ctx, m) {
                        assert_eq!(v, table.is_full(table.through(&ctx, a, b, m)));
                    }
                }
            }
        }
    }

    #[test]
    fn eq_h_identity_exhaustive_q2() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let xs: Vec<Elt> = ctx.elements().collect();
        let (mut n, mut bad) = (0, 0);
        for a in ctx.elements() {
            for b in ctx.elements() {
                let (c, k) = eq_h_check(&ctx, a, b, &xs);
                n += c;
                bad += k;
            }
        }
        assert!(n > 0);
        assert_eq!(bad, 0);
    }

    #[test]
    fn pullback_counts_match_q2_q3() {
        for (p, h) in [(2, 1), (3, 1)] {
            let ctx = FieldCtx::new(p, h).unwrap();
            for a in ctx.elements().step_by(13) {
                for b in ctx.elements().step_by(29) {
                    let (x, y) = pullback_point_counts(&ctx, a, b);
                    assert_eq!(x, y);
                }
            }
        }
    }

    #[test]
    fn czero_factorization_q2_q3() {
        for (p, h) in [(2, 1), (3, 1)] {
            let ctx = FieldCtx::new(p, h).unwrap();
            let reports = czero_sweep(&ctx, None).unwrap();
            assert!(!reports.is_empty());
            for r in &reports {
                assert!(r.all_ok(ctx.q()), "{r:?}");
            }
            if p == 3 {
                assert!(reports.iter().any(|r| !r.aq5_printed_ok));
                assert!(reports.iter().any(|r| !r.printed_factorization_ok));
            }
        }
    }

    #[test]
    fn search_requires_a_zero() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let a = ctx.elements().find(|&a| !ctx.capital_a(a).is_zero()).unwrap();
        assert!(matches!(
            subfield_secant_search(&ctx, a, Elt::ZERO, None),
            Err(Error::AIsNotZero)
        ));
    }
}

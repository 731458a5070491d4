//! Ground truth by counting: which lines meet the curve in q+1 points.
//!
//! Nothing here touches the intersection polynomial. Line characters come
//! from incidence counts over the enumerated point set only.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};
use crate::hermitian::{self, CurvePointSet};
use crate::plane::ProjPoint;

/// Secant slopes through an affine point.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SlopeSet {
    pub slopes: Vec<Elt>,
    /// The vertical line X = a is a (q+1)-secant.
    pub vertical: bool,
}

/// Direct count: for every slope, walk the q^6 affine points of the line.
pub fn bruteforce_secant_slopes(ctx: &FieldCtx, arc: &CurvePointSet, a: Elt, b: Elt) -> SlopeSet {
    let full = ctx.q() as usize + 1;
    let slopes = ctx
        .elements()
        .filter(|&m| {
            let hits = ctx
                .elements()
                .filter(|&x| arc.contains_affine(x, ctx.add(ctx.mul(m, ctx.sub(x, a)), b)))
                .take(full + 1)
                .count();
            hits == full
        })
        .collect();
    let vertical = 1 + ctx.elements().filter(|&y| arc.contains_affine(a, y)).count() == full;
    SlopeSet { slopes, vertical }
}

/// Characters of every line of the plane, tabulated once per curve.
pub struct LineTable {
    q: u32,
    n: usize,
    // counts[m * n + c] = |arc ∩ {Y = m X + c}|
    counts: Vec<u16>,
    vertical: Vec<u16>,
}

impl LineTable {
    pub fn build(ctx: &FieldCtx, arc: &CurvePointSet) -> Self {
        let n = ctx.size() as usize;
        let counts: Vec<u16> = ctx
            .elements()
            .collect::<Vec<_>>()
            .into_par_iter()
            .flat_map_iter(|m| hermitian::slope_line_counts(ctx, arc, m))
            .collect();
        LineTable {
            q: ctx.q(),
            n,
            counts,
            vertical: hermitian::vertical_line_counts(ctx, arc),
        }
    }

    /// Character of Y = m X + c.
    #[inline]
    pub fn slope_line(&self, m: Elt, c: Elt) -> usize {
        self.counts[m.index() as usize * self.n + c.index() as usize] as usize
    }

    /// Character of X = c.
    pub fn vertical_line(&self, c: Elt) -> usize {
        self.vertical[c.index() as usize] as usize
    }

    /// Character of Y = m(X - a) + b.
    #[inline]
    pub fn through(&self, ctx: &FieldCtx, a: Elt, b: Elt, m: Elt) -> usize {
        self.slope_line(m, ctx.sub(b, ctx.mul(m, a)))
    }

    pub fn is_full(&self, k: usize) -> bool {
        k == self.q as usize + 1
    }

    pub fn secant_slopes(&self, ctx: &FieldCtx, a: Elt, b: Elt) -> SlopeSet {
        let slopes = ctx
            .elements()
            .filter(|&m| self.is_full(self.through(ctx, a, b, m)))
            .collect();
        SlopeSet {
            slopes,
            vertical: self.is_full(self.vertical_line(a)),
        }
    }

    /// Whether some line through the point is a (q+1)-secant.
    pub fn has_secant_through(&self, ctx: &FieldCtx, p: &ProjPoint) -> bool {
        if let Some((a, b)) = p.to_affine(ctx) {
            return self.is_full(self.vertical_line(a))
                || ctx.elements().any(|m| self.is_full(self.through(ctx, a, b, m)));
        }
        if p.x.is_zero() {
            // (0:1:0): the vertical lines and the line at infinity
            return self.vertical.iter().any(|&k| self.is_full(k as usize));
        }
        // (1:m:0): the lines Y = m X + c and the line at infinity
        let base = p.y.index() as usize * self.n;
        self.counts[base..base + self.n]
            .iter()
            .any(|&k| self.is_full(k as usize))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CompletenessReport {
    pub q: u32,
    /// Every point off the curve lies on a (q+1)-secant.
    pub complete: bool,
    /// Every point of the plane lies on a (q+1)-secant.
    pub strong: bool,
    pub points_checked: u64,
    /// Points off the curve with no (q+1)-secant.
    pub addable_points: Vec<String>,
    /// Curve points with no (q+1)-secant.
    pub uncovered_curve_points: Vec<String>,
}

/// Largest q for which the completeness sweep runs by default.
pub const COMPLETENESS_MAX_Q: u32 = 3;

pub fn completeness_check(
    ctx: &FieldCtx,
    arc: &CurvePointSet,
    table: &LineTable,
    max_q: u32,
) -> Result<CompletenessReport> {
    if ctx.q() > max_q {
        let n = ctx.size() as u64;
        return Err(Error::BudgetExceeded {
            size: n * n + n + 1,
            budget: {
                let m = (max_q as u64).pow(6);
                m * m + m + 1
            },
        });
    }
    let points = crate::plane::all_points(ctx);
    let misses: Vec<(ProjPoint, bool)> = points
        .par_iter()
        .filter(|p| !table.has_secant_through(ctx, p))
        .map(|p| (*p, arc.contains(ctx, p)))
        .collect();
    let addable: Vec<String> = misses.iter().filter(|m| !m.1).map(|m| m.0.display(ctx)).collect();
    let uncovered: Vec<String> = misses.iter().filter(|m| m.1).map(|m| m.0.display(ctx)).collect();
    Ok(CompletenessReport {
        q: ctx.q(),
        complete: addable.is_empty(),
        strong: addable.is_empty() && uncovered.is_empty(),
        points_checked: points.len() as u64,
        addable_points: addable,
        uncovered_curve_points: uncovered,
    })
}

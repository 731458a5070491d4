//! Points, lines and incidence in PG(2, F_{q^6}).
//!
//! Both points and lines are kept in canonical form: the first nonzero
//! coordinate is 1. Ordering is lexicographic on the encodings.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjPoint {
    pub x: Elt,
    pub y: Elt,
    pub z: Elt,
}

/// Line {(x:y:z) : u x + v y + w z = 0}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjLine {
    pub u: Elt,
    pub v: Elt,
    pub w: Elt,
}

fn normalize(ctx: &FieldCtx, c: [Elt; 3]) -> Option<[Elt; 3]> {
    let lead = c.iter().copied().find(|e| !e.is_zero())?;
    let inv = ctx.inv(lead)?;
    Some(c.map(|e| ctx.mul(e, inv)))
}

fn cross(ctx: &FieldCtx, a: [Elt; 3], b: [Elt; 3]) -> [Elt; 3] {
    let d = |i: usize, j: usize| ctx.sub(ctx.mul(a[i], b[j]), ctx.mul(a[j], b[i]));
    [d(1, 2), d(2, 0), d(0, 1)]
}

impl ProjPoint {
    pub fn new(ctx: &FieldCtx, x: Elt, y: Elt, z: Elt) -> Option<Self> {
        normalize(ctx, [x, y, z]).map(|[x, y, z]| ProjPoint { x, y, z })
    }

    pub fn affine(ctx: &FieldCtx, x: Elt, y: Elt) -> Self {
        Self::new(ctx, x, y, Elt::ONE).expect("z = 1")
    }

    /// The single point at infinity of the Hermitian curve.
    pub fn vertical_direction() -> Self {
        ProjPoint {
            x: Elt::ZERO,
            y: Elt::ONE,
            z: Elt::ZERO,
        }
    }

    pub fn coords(&self) -> [Elt; 3] {
        [self.x, self.y, self.z]
    }

    pub fn to_affine(&self, ctx: &FieldCtx) -> Option<(Elt, Elt)> {
        let zi = ctx.inv(self.z)?;
        Some((ctx.mul(self.x, zi), ctx.mul(self.y, zi)))
    }

    pub fn display(&self, ctx: &FieldCtx) -> String {
        format!("{}:{}:{}", ctx.to_hex(self.x), ctx.to_hex(self.y), ctx.to_hex(self.z))
    }
}

impl ProjLine {
    pub fn new(ctx: &FieldCtx, u: Elt, v: Elt, w: Elt) -> Option<Self> {
        normalize(ctx, [u, v, w]).map(|[u, v, w]| ProjLine { u, v, w })
    }

    /// The affine line Y = m X + c.
    pub fn with_slope(ctx: &FieldCtx, m: Elt, c: Elt) -> Self {
        Self::new(ctx, m, ctx.neg(Elt::ONE), c).expect("v = -1")
    }

    /// The affine line X = c.
    pub fn vertical(ctx: &FieldCtx, c: Elt) -> Self {
        Self::new(ctx, Elt::ONE, Elt::ZERO, ctx.neg(c)).expect("u = 1")
    }

    pub fn at_infinity() -> Self {
        ProjLine {
            u: Elt::ZERO,
            v: Elt::ZERO,
            w: Elt::ONE,
        }
    }

    pub fn coords(&self) -> [Elt; 3] {
        [self.u, self.v, self.w]
    }

    pub fn display(&self, ctx: &FieldCtx) -> String {
        format!("{}:{}:{}", ctx.to_hex(self.u), ctx.to_hex(self.v), ctx.to_hex(self.w))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}:{:x}:{:x}", self.x.index(), self.y.index(), self.z.index())
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}:{:x}:{:x}", self.u.index(), self.v.index(), self.w.index())
    }
}

pub fn incident(ctx: &FieldCtx, p: &ProjPoint, l: &ProjLine) -> bool {
    let s = ctx.add(ctx.add(ctx.mul(l.u, p.x), ctx.mul(l.v, p.y)), ctx.mul(l.w, p.z));
    s.is_zero()
}

pub fn line_through(ctx: &FieldCtx, p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
    if p == q {
        return Err(Error::EqualPoints);
    }
    let [u, v, w] = cross(ctx, p.coords(), q.coords());
    Ok(ProjLine::new(ctx, u, v, w).expect("distinct canonical points span a line"))
}

/// Intersection point of two distinct lines.
pub fn meet(ctx: &FieldCtx, l: &ProjLine, m: &ProjLine) -> Result<ProjPoint> {
    if l == m {
        return Err(Error::EqualPoints);
    }
    let [x, y, z] = cross(ctx, l.coords(), m.coords());
    Ok(ProjPoint::new(ctx, x, y, z).expect("distinct lines meet in a point"))
}

/// All q^12 + q^6 + 1 canonical triples, in lexicographic order.
fn all_canonical(ctx: &FieldCtx) -> Vec<[Elt; 3]> {
    let mut out = Vec::with_capacity((ctx.size() as usize).pow(2) + ctx.size() as usize + 1);
    out.push([Elt::ZERO, Elt::ZERO, Elt::ONE]);
    for z in ctx.elements() {
        out.push([Elt::ZERO, Elt::ONE, z]);
    }
    for y in ctx.elements() {
        for z in ctx.elements() {
            out.push([Elt::ONE, y, z]);
        }
    }
    out
}

pub fn all_points(ctx: &FieldCtx) -> Vec<ProjPoint> {
    all_canonical(ctx)
        .into_iter()
        .map(|[x, y, z]| ProjPoint { x, y, z })
        .collect()
}

pub fn all_lines(ctx: &FieldCtx) -> Vec<ProjLine> {
    all_canonical(ctx)
        .into_iter()
        .map(|[u, v, w]| ProjLine { u, v, w })
        .collect()
}

/// Two points spanning the kernel of (c0, c1, c2).
fn kernel_basis(ctx: &FieldCtx, c: [Elt; 3]) -> ([Elt; 3], [Elt; 3]) {
    let (z, o) = (Elt::ZERO, Elt::ONE);
    let pivot = c.iter().position(|e| !e.is_zero()).expect("nonzero triple");
    let pinv = ctx.inv(c[pivot]).expect("nonzero pivot");
    // solve c[pivot] * e_pivot = -c[j] for each free unit vector e_j
    let solve = |j: usize| {
        let mut v = [z, z, z];
        v[j] = o;
        v[pivot] = ctx.neg(ctx.mul(c[j], pinv));
        v
    };
    let free: Vec<usize> = (0..3).filter(|&j| j != pivot).collect();
    (solve(free[0]), solve(free[1]))
}

/// The q^6 + 1 points of a line, sorted.
pub fn points_on(ctx: &FieldCtx, l: &ProjLine) -> Vec<ProjPoint> {
    let (p0, p1) = kernel_basis(ctx, l.coords());
    let mut out: Vec<ProjPoint> = ctx
        .elements()
        .map(|t| {
            let c = [0, 1, 2].map(|i| ctx.add(p1[i], ctx.mul(t, p0[i])));
            ProjPoint::new(ctx, c[0], c[1], c[2]).expect("nonzero combination")
        })
        .collect();
    out.push(ProjPoint::new(ctx, p0[0], p0[1], p0[2]).expect("nonzero basis vector"));
    out.sort();
    out
}

/// The q^6 + 1 lines through a point, sorted.
pub fn lines_through(ctx: &FieldCtx, p: &ProjPoint) -> Vec<ProjLine> {
    let dual = ProjLine { u: p.x, v: p.y, w: p.z };
    points_on(ctx, &dual)
        .into_iter()
        .map(|q| ProjLine { u: q.x, v: q.y, w: q.z })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn line_through_two_affine_points() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let p = ProjPoint::affine(&ctx, Elt::ONE, Elt::ZERO);
        let q = ProjPoint::affine(&ctx, Elt::ZERO, Elt::ONE);
        let l = line_through(&ctx, &p, &q).unwrap();
        let minus_one = ctx.neg(Elt::ONE);
        assert_eq!(
            l,
            ProjLine {
                u: Elt::ONE,
                v: Elt::ONE,
                w: minus_one
            }
        );
        assert!(matches!(line_through(&ctx, &p, &p), Err(Error::EqualPoints)));
    }

    #[test]
    fn equal_x_gives_line_through_vertical_direction() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let inf = ProjPoint::vertical_direction();
        for _ in 0..100 {
            let x = ctx.elem(rng.gen_range(0..64)).unwrap();
            let y1 = ctx.elem(rng.gen_range(0..64)).unwrap();
            let y2 = ctx.elem(rng.gen_range(0..64)).unwrap();
            if y1 == y2 {
                continue;
            }
            let l = line_through(&ctx, &ProjPoint::affine(&ctx, x, y1), &ProjPoint::affine(&ctx, x, y2)).unwrap();
            assert!(incident(&ctx, &inf, &l));
        }
    }

    #[test]
    fn pencil_and_range_sizes_and_union() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let points = all_points(&ctx);
        assert_eq!(points.len(), 4161);
        let p = points[1234];
        let pencil = lines_through(&ctx, &p);
        assert_eq!(pencil.len(), 65);
        let mut union = std::collections::HashSet::new();
        for l in &pencil {
            assert!(incident(&ctx, &p, l));
            let pts = points_on(&ctx, l);
            assert_eq!(pts.len(), 65);
            assert!(pts.windows(2).all(|w| w[0] < w[1]));
            assert!(pts.iter().all(|q| incident(&ctx, q, l)));
            union.extend(pts);
        }
        assert_eq!(union.len(), 4161);
        let c3 = FieldCtx::new(3, 1).unwrap();
        assert_eq!(
            lines_through(&c3, &ProjPoint::affine(&c3, Elt::ONE, Elt::ONE)).len(),
            730
        );
    }

    #[test]
    fn line_at_infinity_holds_points_with_zero_z() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let pts = points_on(&ctx, &ProjLine::at_infinity());
        assert_eq!(pts.len(), 65);
        assert!(pts.iter().all(|p| p.z.is_zero()));
    }

    #[test]
    fn incidence_double_count() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let lines = all_lines(&ctx);
        let total: usize = lines.iter().map(|l| points_on(&ctx, l).len()).sum();
        assert_eq!(total, all_points(&ctx).len() * 65);
    }

    #[test]
    fn two_points_one_line_sampled() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let points = all_points(&ctx);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let p = points[rng.gen_range(0..points.len())];
            let q = points[rng.gen_range(0..points.len())];
            if p == q {
                continue;
            }
            let l = line_through(&ctx, &p, &q).unwrap();
            let common: Vec<_> = lines_through(&ctx, &p)
                .into_iter()
                .filter(|m| incident(&ctx, &q, m))
                .collect();
            assert_eq!(common, vec![l]);
            // duality: meet of two lines through p is p
            let other = lines_through(&ctx, &p).into_iter().find(|m| *m != l).unwrap();
            assert_eq!(meet(&ctx, &l, &other).unwrap(), p);
        }
    }
}

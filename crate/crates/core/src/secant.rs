//! The intersection polynomial of a line Y = m(X - a) + b with the curve and
//! its root classification.
//!
//! Substituting the line into X^{q+1} = Y^q + Y gives
//! f(X) = X^{q+1} - m^q X^q - m X - (m ã + m^q ã^q + γ) with ã = -a and
//! γ = b + b^q. Every closed formula downstream (degeneracy, chain, cubic
//! coefficients) is written in ã; in characteristic 2, ã = a.

use serde::Serialize;

use crate::field::{Elt, FieldCtx};
use crate::upoly::{self, UPoly};

/// Line Y = m(X - a) + b through the affine point (a, b).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SecantQuery {
    pub a: Elt,
    pub b: Elt,
    pub m: Elt,
}

impl SecantQuery {
    pub fn new(a: Elt, b: Elt, m: Elt) -> Self {
        SecantQuery { a, b, m }
    }

    /// ã = -a, the constant the closed formulas are written in.
    pub fn a_tilde(&self, ctx: &FieldCtx) -> Elt {
        ctx.neg(self.a)
    }

    pub fn gamma(&self, ctx: &FieldCtx) -> Elt {
        ctx.gamma_of(self.b)
    }

    /// y-coordinate of the line at x.
    pub fn line_y(&self, ctx: &FieldCtx, x: Elt) -> Elt {
        ctx.add(ctx.mul(self.m, ctx.sub(x, self.a)), self.b)
    }
}

/// Coefficients of f(X), ascending; degree q+1, monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoly {
    pub coeffs: UPoly,
}

impl IntersectionPoly {
    pub fn eval(&self, ctx: &FieldCtx, x: Elt) -> Elt {
        upoly::eval(ctx, &self.coeffs, x)
    }
}

pub fn build_f(ctx: &FieldCtx, sq: &SecantQuery) -> IntersectionPoly {
    let q = ctx.q() as usize;
    let at = sq.a_tilde(ctx);
    let mq = ctx.frob(sq.m, 1);
    let constant = ctx.add(ctx.add(ctx.mul(sq.m, at), ctx.mul(mq, ctx.frob(at, 1))), sq.gamma(ctx));
    let mut coeffs = vec![Elt::ZERO; q + 2];
    coeffs[q + 1] = Elt::ONE;
    coeffs[q] = ctx.add(coeffs[q], ctx.neg(mq));
    coeffs[1] = ctx.add(coeffs[1], ctx.neg(sq.m));
    coeffs[0] = ctx.neg(constant);
    IntersectionPoly { coeffs }
}

/// D = m^{q+1} + m^q ã^q + m ã + γ.
pub fn degeneracy_raw(ctx: &FieldCtx, a_tilde: Elt, gamma: Elt, m: Elt) -> Elt {
    let mq = ctx.frob(m, 1);
    let t = ctx.add(ctx.mul(mq, m), ctx.mul(mq, ctx.frob(a_tilde, 1)));
    ctx.add(ctx.add(t, ctx.mul(m, a_tilde)), gamma)
}

pub fn degeneracy(ctx: &FieldCtx, sq: &SecantQuery) -> Elt {
    degeneracy_raw(ctx, sq.a_tilde(ctx), sq.gamma(ctx), sq.m)
}

pub fn count_roots_exhaustive(ctx: &FieldCtx, f: &IntersectionPoly) -> usize {
    ctx.elements().filter(|&x| f.eval(ctx, x).is_zero()).count()
}

pub fn count_roots_gcd(ctx: &FieldCtx, f: &IntersectionPoly) -> usize {
    upoly::count_roots_gcd(ctx, &f.coeffs)
}

/// Distinct roots of f in F_{q^6}.
pub fn count_rational_roots(ctx: &FieldCtx, f: &IntersectionPoly) -> usize {
    count_roots_gcd(ctx, f)
}

/// The line meets the curve in q+1 distinct points.
///
/// A degenerate f = (X - m^q)(X^q - m) has at most two distinct roots, so
/// the root count alone decides both cases.
pub fn is_full_secant(ctx: &FieldCtx, sq: &SecantQuery) -> bool {
    count_rational_roots(ctx, &build_f(ctx, sq)) == ctx.q() as usize + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_elt(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> Elt {
        ctx.elem(rng.gen_range(0..ctx.size())).unwrap()
    }

    #[test]
    fn trivial_polynomials() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let z = Elt::ZERO;
        let f = build_f(&ctx, &SecantQuery::new(z, z, z));
        assert_eq!(f.coeffs, vec![z, z, z, z, Elt::ONE]);
        let b = ctx.elem(17).unwrap();
        let f = build_f(&ctx, &SecantQuery::new(ctx.elem(5).unwrap(), b, z));
        let mut expect = vec![ctx.neg(ctx.gamma_of(b)), z, z, z, Elt::ONE];
        upoly::trim(&mut expect);
        assert_eq!(f.coeffs, expect);
    }

    #[test]
    fn f_matches_defining_expression() {
        for (p, h) in [(2, 1), (3, 1), (2, 2)] {
            let ctx = FieldCtx::new(p, h).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            for _ in 0..10_000 {
                let sq = SecantQuery::new(
                    random_elt(&ctx, &mut rng),
                    random_elt(&ctx, &mut rng),
                    random_elt(&ctx, &mut rng),
                );
                let x = random_elt(&ctx, &mut rng);
                let y = sq.line_y(&ctx, x);
                let expect = ctx.sub(ctx.pow(x, ctx.q() as u64 + 1), ctx.add(ctx.frob(y, 1), y));
                assert_eq!(build_f(&ctx, &sq).eval(&ctx, x), expect);
            }
        }
    }

    #[test]
    fn degenerate_iff_factorization_exhaustive_q2() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        for a in ctx.elements() {
            for b in ctx.elements() {
                for m in ctx.elements() {
                    let sq = SecantQuery::new(a, b, m);
                    let f = build_f(&ctx, &sq);
                    let mq = ctx.frob(m, 1);
                    let factored = upoly::mul(&ctx, &[ctx.neg(mq), Elt::ONE], &[ctx.neg(m), Elt::ZERO, Elt::ONE]);
                    assert_eq!(degeneracy(&ctx, &sq).is_zero(), f.coeffs == factored);
                }
            }
        }
    }

    #[test]
    fn nondegenerate_f_is_separable() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..2000 {
            let sq = SecantQuery::new(
                random_elt(&ctx, &mut rng),
                random_elt(&ctx, &mut rng),
                random_elt(&ctx, &mut rng),
            );
            // f' = X^q - m vanishes only at m^{1/q} = m^{q^5}
            let r = ctx.frob(sq.m, 5);
            let f_at_r = build_f(&ctx, &sq).eval(&ctx, r);
            assert_eq!(f_at_r.is_zero(), degeneracy(&ctx, &sq).is_zero());
        }
    }

    #[test]
    fn root_counts_agree_and_match_intersections_exhaustive_q2() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let arc = hermitian::enumerate_curve(&ctx).unwrap();
        for a in ctx.elements() {
            for b in ctx.elements().step_by(3) {
                for m in ctx.elements() {
                    let sq = SecantQuery::new(a, b, m);
                    let f = build_f(&ctx, &sq);
                    let e = count_roots_exhaustive(&ctx, &f);
                    assert_eq!(e, count_roots_gcd(&ctx, &f));
                    assert!([0, 1, 2, 3].contains(&e));
                    let on_line = ctx
                        .elements()
                        .filter(|&x| arc.contains_affine(x, sq.line_y(&ctx, x)))
                        .count();
                    assert_eq!(on_line, e);
                }
            }
        }
    }

    #[test]
    fn root_counts_agree_sampled_q3() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..3000 {
            let sq = SecantQuery::new(
                random_elt(&ctx, &mut rng),
                random_elt(&ctx, &mut rng),
                random_elt(&ctx, &mut rng),
            );
            let f = build_f(&ctx, &sq);
            let n = count_roots_exhaustive(&ctx, &f);
            assert_eq!(n, count_roots_gcd(&ctx, &f));
            assert!(n <= 4);
        }
    }

    #[test]
    fn origin_with_zero_slope_is_not_a_secant() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let z = Elt::ZERO;
        assert!(!is_full_secant(&ctx, &SecantQuery::new(z, z, z)));
        assert_eq!(
            count_rational_roots(&ctx, &build_f(&ctx, &SecantQuery::new(z, z, z))),
            1
        );
    }
}

//! The Frobenius chain x -> x^q -> ... -> x^{q^6} as six Möbius steps.
//!
//! On a root x of f with nonzero degeneracy, x^q = (m x + c_0)/(x - m^q)
//! with c_0 = m ã + m^q ã^q + γ. Raising to q^i gives step i.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};
use crate::secant::{self, SecantQuery};

/// [[a, b], [c, d]] acting as x -> (a x + b)/(c x + d).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Mat2 {
    pub a: Elt,
    pub b: Elt,
    pub c: Elt,
    pub d: Elt,
}

impl Mat2 {
    /// self · rhs.
    pub fn mul(&self, ctx: &FieldCtx, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: ctx.add(ctx.mul(self.a, rhs.a), ctx.mul(self.b, rhs.c)),
            b: ctx.add(ctx.mul(self.a, rhs.b), ctx.mul(self.b, rhs.d)),
            c: ctx.add(ctx.mul(self.c, rhs.a), ctx.mul(self.d, rhs.c)),
            d: ctx.add(ctx.mul(self.c, rhs.b), ctx.mul(self.d, rhs.d)),
        }
    }

    pub fn det(&self, ctx: &FieldCtx) -> Elt {
        ctx.sub(ctx.mul(self.a, self.d), ctx.mul(self.b, self.c))
    }

    /// The image of x, or `None` at the pole.
    pub fn apply(&self, ctx: &FieldCtx, x: Elt) -> Option<Elt> {
        let num = ctx.add(ctx.mul(self.a, x), self.b);
        let den = ctx.add(ctx.mul(self.c, x), self.d);
        ctx.div(num, den)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainMatrix {
    pub steps: [Mat2; 6],
    /// steps[5] · ... · steps[0].
    pub product: Mat2,
}

impl ChainMatrix {
    /// x_{q^6} by applying the six steps in turn; `None` if any step hits
    /// its pole.
    pub fn eval(&self, ctx: &FieldCtx, x: Elt) -> Option<Elt> {
        self.steps.iter().try_fold(x, |acc, s| s.apply(ctx, acc))
    }

    pub fn det(&self, ctx: &FieldCtx) -> Elt {
        self.product.det(ctx)
    }
}

/// The chain for ã, γ and m given directly.
pub fn chain_matrix_raw(ctx: &FieldCtx, a_tilde: Elt, gamma: Elt, m: Elt) -> ChainMatrix {
    let ma = ctx.mul(m, a_tilde);
    let steps: [Mat2; 6] = std::array::from_fn(|i| {
        let i = i as i64;
        let c = ctx.add(ctx.add(ctx.frob(ma, i), ctx.frob(ma, i + 1)), ctx.frob(gamma, i));
        Mat2 {
            a: ctx.frob(m, i),
            b: c,
            c: Elt::ONE,
            d: ctx.neg(ctx.frob(m, i + 1)),
        }
    });
    let product = steps[1..].iter().fold(steps[0], |acc, s| s.mul(ctx, &acc));
    ChainMatrix { steps, product }
}

pub fn chain_matrix(ctx: &FieldCtx, sq: &SecantQuery) -> ChainMatrix {
    chain_matrix_raw(ctx, sq.a_tilde(ctx), sq.gamma(ctx), sq.m)
}

/// X^{q^6} - X = (F3 + F2 X + F1 X^2)/(F5 + F4 X) along the chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedCoeffs {
    pub f1: Elt,
    pub f2: Elt,
    pub f3: Elt,
    pub f4: Elt,
    pub f5: Elt,
}

impl DerivedCoeffs {
    pub fn from_product(ctx: &FieldCtx, m: &Mat2) -> Self {
        DerivedCoeffs {
            f1: ctx.neg(m.c),
            f2: ctx.sub(m.a, m.d),
            f3: m.b,
            f4: m.c,
            f5: m.d,
        }
    }

    pub fn numerator(&self, ctx: &FieldCtx, x: Elt) -> Elt {
        ctx.add(ctx.mul(ctx.add(ctx.mul(self.f1, x), self.f2), x), self.f3)
    }

    pub fn denominator(&self, ctx: &FieldCtx, x: Elt) -> Elt {
        ctx.add(ctx.mul(self.f4, x), self.f5)
    }

    /// The rational function at x, `None` at its pole.
    pub fn eval(&self, ctx: &FieldCtx, x: Elt) -> Option<Elt> {
        ctx.div(self.numerator(ctx, x), self.denominator(ctx, x))
    }
}

pub fn derived_coeffs_raw(ctx: &FieldCtx, a_tilde: Elt, gamma: Elt, m: Elt) -> Result<DerivedCoeffs> {
    if secant::degeneracy_raw(ctx, a_tilde, gamma, m).is_zero() {
        return Err(Error::DegenerateSlope);
    }
    Ok(DerivedCoeffs::from_product(
        ctx,
        &chain_matrix_raw(ctx, a_tilde, gamma, m).product,
    ))
}

pub fn derived_coeffs(ctx: &FieldCtx, sq: &SecantQuery) -> Result<DerivedCoeffs> {
    derived_coeffs_raw(ctx, sq.a_tilde(ctx), sq.gamma(ctx), sq.m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::secant::{build_f, degeneracy};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_query(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> SecantQuery {
        let mut r = || ctx.elem(rng.gen_range(0..ctx.size())).unwrap();
        SecantQuery::new(r(), r(), r())
    }

    #[test]
    fn zero_input_gives_singular_steps() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let z = Elt::ZERO;
        let cm = chain_matrix(&ctx, &SecantQuery::new(z, z, z));
        for s in &cm.steps {
            assert_eq!(
                *s,
                Mat2 {
                    a: z,
                    b: z,
                    c: Elt::ONE,
                    d: z
                }
            );
        }
        assert!(cm.det(&ctx).is_zero());
    }

    #[test]
    fn step_determinants_are_conjugate_degeneracies() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let sq = random_query(&ctx, &mut rng);
            let d = degeneracy(&ctx, &sq);
            let cm = chain_matrix(&ctx, &sq);
            for (i, s) in cm.steps.iter().enumerate() {
                assert_eq!(s.det(&ctx), ctx.neg(ctx.frob(d, i as i64)));
            }
            assert_eq!(cm.det(&ctx), ctx.norm_to_fq(d));
        }
    }

    #[test]
    fn first_step_is_the_root_relation() {
        let ctx = FieldCtx::new(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..300 {
            let sq = random_query(&ctx, &mut rng);
            let f = build_f(&ctx, &sq);
            let step = chain_matrix(&ctx, &sq).steps[0];
            for x in ctx.elements().step_by(97) {
                if let Some(y) = step.apply(&ctx, x) {
                    // x^q (x - m^q) = m x + c_0 iff f(x) = 0
                    let lhs = ctx.sub(ctx.frob(x, 1), y);
                    assert_eq!(lhs.is_zero(), f.eval(&ctx, x).is_zero());
                }
            }
        }
    }

    #[test]
    fn roots_are_fixed_by_the_chain() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut seen = 0;
        for _ in 0..400 {
            let sq = random_query(&ctx, &mut rng);
            if degeneracy(&ctx, &sq).is_zero() {
                continue;
            }
            let f = build_f(&ctx, &sq);
            let cm = chain_matrix(&ctx, &sq);
            for x in ctx.elements().filter(|&x| f.eval(&ctx, x).is_zero()) {
                assert_eq!(cm.eval(&ctx, x), Some(x));
                seen += 1;
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn rational_function_matches_chain() {
        for (p, h) in [(2, 1), (3, 1), (2, 2)] {
            let ctx = FieldCtx::new(p, h).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(14);
            for _ in 0..300 {
                let sq = random_query(&ctx, &mut rng);
                let Ok(dc) = derived_coeffs(&ctx, &sq) else { continue };
                assert!(!(dc.f4.is_zero() && dc.f5.is_zero()));
                let cm = chain_matrix(&ctx, &sq);
                for _ in 0..8 {
                    let x = ctx.elem(rng.gen_range(0..ctx.size())).unwrap();
                    if let (Some(x6), Some(r)) = (cm.eval(&ctx, x), dc.eval(&ctx, x)) {
                        assert_eq!(ctx.sub(x6, x), r);
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_slope_is_rejected() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let z = Elt::ZERO;
        assert!(matches!(
            derived_coeffs(&ctx, &SecantQuery::new(z, z, z)),
            Err(Error::DegenerateSlope)
        ));
    }
}

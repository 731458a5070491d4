//! Univariate polynomials over F_{q^6}, coefficients in ascending order.

use crate::field::{Elt, FieldCtx};

pub type UPoly = Vec<Elt>;

pub fn trim(a: &mut UPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub fn degree(a: &[Elt]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn eval(ctx: &FieldCtx, a: &[Elt], x: Elt) -> Elt {
    a.iter().rev().fold(Elt::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
}

pub fn sub(ctx: &FieldCtx, a: &[Elt], b: &[Elt]) -> UPoly {
    let n = a.len().max(b.len());
    let mut out: UPoly = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(Elt::ZERO);
            let y = b.get(i).copied().unwrap_or(Elt::ZERO);
            ctx.sub(x, y)
        })
        .collect();
    trim(&mut out);
    out
}

pub fn mul(ctx: &FieldCtx, a: &[Elt], b: &[Elt]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Elt::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ctx.add(out[i + j], ctx.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
pub fn rem(ctx: &FieldCtx, a: &[Elt], m: &[Elt]) -> UPoly {
    let dm = degree(m).expect("division by zero polynomial");
    let lead_inv = ctx.inv(m[dm]).expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = ctx.mul(r[dr], lead_inv);
        let shift = dr - dm;
        for (i, &c) in m.iter().enumerate().take(dm + 1) {
            r[shift + i] = ctx.sub(r[shift + i], ctx.mul(factor, c));
        }
        trim(&mut r);
    }
    r
}

/// Monic gcd.
pub fn gcd(ctx: &FieldCtx, a: &[Elt], b: &[Elt]) -> UPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while degree(&y).is_some() {
        let r = rem(ctx, &x, &y);
        x = y;
        y = r;
    }
    if let Some(d) = degree(&x) {
        let inv = ctx.inv(x[d]).expect("nonzero leading coefficient");
        for c in x.iter_mut() {
            *c = ctx.mul(*c, inv);
        }
    }
    x
}

/// X^{q^6} mod f, by six applications of g -> g^q mod f.
///
/// g^q = sum g_i^q X^{iq}; the residues X^{iq} mod f are tabulated once.
pub fn x_pow_q6_mod(ctx: &FieldCtx, f: &[Elt]) -> UPoly {
    let d = degree(f).expect("nonzero modulus");
    let xq = rem(ctx, &x_power(ctx.q() as usize), f);
    let mut powers: Vec<UPoly> = Vec::with_capacity(d);
    let mut cur: UPoly = vec![Elt::ONE];
    for _ in 0..d {
        powers.push(cur.clone());
        cur = rem(ctx, &mul(ctx, &cur, &xq), f);
    }
    let mut g = rem(ctx, &x_power(1), f);
    for _ in 0..6 {
        let mut next = vec![Elt::ZERO; d];
        for (i, &c) in g.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cq = ctx.frob(c, 1);
            for (k, &p) in powers[i].iter().enumerate() {
                next[k] = ctx.add(next[k], ctx.mul(cq, p));
            }
        }
        trim(&mut next);
        g = next;
    }
    g
}

fn x_power(k: usize) -> UPoly {
    let mut v = vec![Elt::ZERO; k + 1];
    v[k] = Elt::ONE;
    v
}

/// Number of distinct roots of f in F_{q^6}: deg gcd(f, X^{q^6} - X).
pub fn count_roots_gcd(ctx: &FieldCtx, f: &[Elt]) -> usize {
    match degree(f) {
        None => ctx.size() as usize,
        Some(0) => 0,
        Some(_) => {
            let h = sub(ctx, &x_pow_q6_mod(ctx, f), &x_power(1));
            degree(&gcd(ctx, f, &h)).unwrap_or(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_root_count_matches_exhaustive_on_products_of_linears() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let r = |i: u32| ctx.elem(i).unwrap();
        // (X - 3)(X - 5)^2 (X - 9)
        let mut f: UPoly = vec![Elt::ONE];
        for root in [3, 5, 5, 9] {
            f = mul(&ctx, &f, &[ctx.neg(r(root)), Elt::ONE]);
        }
        let exhaustive = ctx.elements().filter(|&x| eval(&ctx, &f, x).is_zero()).count();
        assert_eq!(exhaustive, 3);
        assert_eq!(count_roots_gcd(&ctx, &f), 3);
    }

    #[test]
    fn x_pow_q6_is_x_modulo_split_polynomial() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let f: UPoly = vec![ctx.elem(7).unwrap(), ctx.elem(100).unwrap(), Elt::ZERO, Elt::ONE];
        let g = x_pow_q6_mod(&ctx, &f);
        // compare with direct square-and-multiply of X modulo f
        let mut acc: UPoly = vec![Elt::ONE];
        let mut base: UPoly = vec![Elt::ZERO, Elt::ONE];
        let mut e = ctx.size() as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&ctx, &mul(&ctx, &acc, &base), &f);
            }
            base = rem(&ctx, &mul(&ctx, &base, &base), &f);
            e >>= 1;
        }
        assert_eq!(g, acc);
    }
}

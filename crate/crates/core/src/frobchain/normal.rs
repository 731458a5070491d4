//! Normal bases of F_{q^6} over F_q and the substitution
//! y_j = sum_i ξ^{q^{i+j}} x_i.

use serde::Serialize;

use crate::field::{Elt, FieldCtx};

#[derive(Clone, Debug, Serialize)]
pub struct NormalBasis {
    pub xi: Elt,
    /// conjugates[i] = ξ^{q^i}.
    pub conjugates: [Elt; 6],
}

/// Determinant of a square matrix over F_{q^6} by elimination.
pub fn det(ctx: &FieldCtx, mut m: Vec<Vec<Elt>>) -> Elt {
    let n = m.len();
    let mut acc = Elt::ONE;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Elt::ZERO;
        };
        if piv != col {
            m.swap(piv, col);
            acc = ctx.neg(acc);
        }
        let p = m[col][col];
        acc = ctx.mul(acc, p);
        let inv = ctx.inv(p).expect("pivot is nonzero");
        for r in col + 1..n {
            let f = ctx.mul(m[r][col], inv);
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let v = ctx.mul(f, m[col][c]);
                m[r][c] = ctx.sub(m[r][c], v);
            }
        }
    }
    acc
}

/// Whether the conjugates of ξ are linearly independent over F_q: the
/// matrix (ξ^{q^{i+j}}) is invertible.
pub fn is_normal(ctx: &FieldCtx, xi: Elt) -> bool {
    let rows = (0..6).map(|i| (0..6).map(|j| ctx.frob(xi, i + j)).collect()).collect();
    !det(ctx, rows).is_zero()
}

/// The first normal element in lexicographic order of hex encodings.
pub fn normal_basis_find(ctx: &FieldCtx) -> NormalBasis {
    let mut order: Vec<(String, Elt)> = ctx.elements().map(|x| (ctx.to_hex(x), x)).collect();
    order.sort();
    let xi = order
        .into_iter()
        .map(|(_, x)| x)
        .find(|&x| is_normal(ctx, x))
        .expect("a normal basis always exists");
    NormalBasis {
        xi,
        conjugates: ctx.frob_tuple(xi),
    }
}

impl NormalBasis {
    /// η(x): y_j = sum_i ξ^{q^{i+j}} x_i.
    pub fn eta(&self, ctx: &FieldCtx, x: &[Elt; 6]) -> [Elt; 6] {
        std::array::from_fn(|j| {
            (0..6).fold(Elt::ZERO, |acc, i| {
                ctx.add(acc, ctx.mul(ctx.frob(self.conjugates[i], j as i64), x[i]))
            })
        })
    }

    /// All of F_q^6 in lexicographic order of the F_q-element indices.
    pub fn fq_vectors(ctx: &FieldCtx) -> Vec<[Elt; 6]> {
        let fq = ctx.subfield_elements(1).expect("e = 1 is valid");
        let q = fq.len();
        (0..q.pow(6))
            .map(|mut k| {
                std::array::from_fn(|_| {
                    let v = fq[k % q];
                    k /= q;
                    v
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn basis_matrix_is_invertible() {
        for (p, h) in [(2, 1), (3, 1), (2, 2)] {
            let ctx = FieldCtx::new(p, h).unwrap();
            let nb = normal_basis_find(&ctx);
            assert!(is_normal(&ctx, nb.xi));
            assert!(!is_normal(&ctx, Elt::ZERO));
            assert!(!is_normal(&ctx, Elt::ONE));
        }
    }

    #[test]
    fn eta_produces_frobenius_tuples_bijectively_q2() {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let nb = normal_basis_find(&ctx);
        let mut seen = HashSet::new();
        for x in NormalBasis::fq_vectors(&ctx) {
            let y = nb.eta(&ctx, &x);
            for j in 0..6 {
                assert_eq!(y[(j + 1) % 6], ctx.frob(y[j], 1));
            }
            assert!(seen.insert(y[0]));
        }
        assert_eq!(seen.len(), 64);
    }

    #[test]
    fn determinant_of_permutation() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let (z, o) = (Elt::ZERO, Elt::ONE);
        let m = vec![vec![z, o], vec![o, z]];
        assert_eq!(det(&ctx, m), ctx.neg(o));
    }
}

use std::sync::OnceLock;

use arcgeom::frobchain::{chain, identities};
use arcgeom::secant::{self, SecantQuery};
use arcgeom::{subfield, Elt, FieldCtx};
use proptest::prelude::*;

fn ctx3() -> &'static FieldCtx {
    static C: OnceLock<FieldCtx> = OnceLock::new();
    C.get_or_init(|| FieldCtx::new(3, 1).unwrap())
}

fn ctx4() -> &'static FieldCtx {
    static C: OnceLock<FieldCtx> = OnceLock::new();
    C.get_or_init(|| FieldCtx::new(2, 2).unwrap())
}

fn elt(ctx: &'static FieldCtx) -> impl Strategy<Value = Elt> {
    (0..ctx.size()).prop_map(move |i| ctx.elem(i).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn ring_laws_q3(x in elt(ctx3()), y in elt(ctx3()), z in elt(ctx3())) {
        let c = ctx3();
        prop_assert_eq!(c.mul(x, c.add(y, z)), c.add(c.mul(x, y), c.mul(x, z)));
        prop_assert_eq!(c.mul(c.mul(x, y), z), c.mul(x, c.mul(y, z)));
        prop_assert_eq!(c.add(x, c.neg(x)), Elt::ZERO);
        prop_assert_eq!(c.mul(x, y), c.mul_reference(x, y));
    }

    #[test]
    fn frobenius_is_a_field_automorphism_q4(x in elt(ctx4()), y in elt(ctx4())) {
        let c = ctx4();
        prop_assert_eq!(c.frob(c.add(x, y), 1), c.add(c.frob(x, 1), c.frob(y, 1)));
        prop_assert_eq!(c.frob(c.mul(x, y), 1), c.mul(c.frob(x, 1), c.frob(y, 1)));
        prop_assert_eq!(c.frob(x, 1), c.pow(x, 4));
    }

    #[test]
    fn hex_round_trip(x in elt(ctx4())) {
        let c = ctx4();
        prop_assert_eq!(c.parse_hex(&c.to_hex(x)).unwrap(), x);
    }

    #[test]
    fn chain_determinant_is_norm_q3(a in elt(ctx3()), b in elt(ctx3()), m in elt(ctx3())) {
        let c = ctx3();
        let sq = SecantQuery::new(a, b, m);
        let det = chain::chain_matrix(c, &sq).det(c);
        prop_assert_eq!(det, c.norm_to_fq(secant::degeneracy(c, &sq)));
        prop_assert!(c.in_subfield(det, 1).unwrap());
    }

    #[test]
    fn e_is_skew_q4(a in elt(ctx4()), b in elt(ctx4())) {
        prop_assert!(subfield::cubic_coeffs(ctx4(), a, b).e_is_skew(ctx4()));
    }

    #[test]
    fn scalar_identities_q3(a in elt(ctx3()), b in elt(ctx3())) {
        let c = ctx3();
        let g = c.gamma_of(b);
        prop_assert!(identities::gamma_alternating_sum(c, g).is_zero());
        let (e1, e2) = (identities::e1(c, a, g), identities::e2(c, a, g));
        prop_assert_eq!(c.frob(e1, 3), e2);
        prop_assert_eq!(c.sub(e2, e1), c.capital_a(a));
    }

    #[test]
    fn cubic_matches_chain_on_subfield_slopes_q3(a in elt(ctx3()), b in elt(ctx3()), k in 0usize..9) {
        let c = ctx3();
        let m = c.subfield_elements(2).unwrap()[k];
        let cc = subfield::cubic_coeffs(c, a, b);
        if let Some(g) = subfield::chain_g_value(c, a, b, m) {
            prop_assert_eq!(g, subfield::g_value(c, &cc, a, m));
        }
    }
}

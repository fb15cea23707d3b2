//! Property suites: ring axioms on random polynomials, the division
//! reassembly invariant, the adjugate identity, verifier symmetry and
//! block-sum preservation.

use proptest::prelude::*;

use mfkit_core::catalog::{make_surface, Exponents, Family, SurfacePoint};
use mfkit_core::divide::divide;
use mfkit_core::factory::{block_diag, construct_quasi};
use mfkit_core::matrix::PolyMatrix;
use mfkit_core::monomial::{Monomial, MonomialOrder};
use mfkit_core::scalar::{rat, Coeff, Rat};
use mfkit_core::verify::verify_matrix_factorization;
use mfkit_core::{Poly, QPoly, Var};

fn arb_monomial(max_deg: i32, laurent: bool) -> impl Strategy<Value = Monomial> {
    let lo = if laurent { -1 } else { 0 };
    (
        0..=max_deg,
        0..=max_deg,
        0..=max_deg,
        lo..=1i32,
        0..=1i32,
        0..=1i32,
    )
        .prop_map(|(e1, e2, e3, ea, eb, ec)| {
            Monomial::from_exps(&[
                (Var::X1, e1),
                (Var::X2, e2),
                (Var::X3, e3),
                (Var::A, ea),
                (Var::B, eb),
                (Var::C, ec),
            ])
        })
}

fn arb_poly(max_terms: usize, max_deg: i32, laurent: bool) -> impl Strategy<Value = QPoly> {
    proptest::collection::vec((arb_monomial(max_deg, laurent), -4i64..=4), 0..=max_terms)
        .prop_map(|terms| {
            let mut p = Poly::zero();
            for (m, c) in terms {
                p.add_term(m, Rat::from_i64(c));
            }
            p
        })
}

fn arb_order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::canonical()),
        Just(MonomialOrder::grlex(MonomialOrder::canonical().precedence)),
        Just(MonomialOrder::elim()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(
        p in arb_poly(4, 2, true),
        q in arb_poly(4, 2, true),
        r in arb_poly(4, 2, true),
    ) {
        prop_assert_eq!(p.add_ref(&q), q.add_ref(&p));
        prop_assert_eq!(p.mul_ref(&q), q.mul_ref(&p));
        prop_assert_eq!(p.add_ref(&q).add_ref(&r), p.add_ref(&q.add_ref(&r)));
        prop_assert_eq!(p.mul_ref(&q).mul_ref(&r), p.mul_ref(&q.mul_ref(&r)));
        prop_assert_eq!(
            p.mul_ref(&q.add_ref(&r)),
            p.mul_ref(&q).add_ref(&p.mul_ref(&r))
        );
        prop_assert_eq!(p.add_ref(&p.neg_ref()), Poly::zero());
    }

    #[test]
    fn division_reassembles(
        p in arb_poly(5, 3, true),
        d1 in arb_poly(3, 2, false),
        d2 in arb_poly(3, 2, false),
        order in arb_order(),
    ) {
        let divisors: Vec<QPoly> = [d1, d2].into_iter().filter(|d| !d.is_zero()).collect();
        prop_assume!(!divisors.is_empty());
        let div = divide(&p, &divisors, &order).unwrap();
        let mut sum = div.remainder.clone();
        for (q, d) in div.quotients.iter().zip(&divisors) {
            sum = sum.add_ref(&q.mul_ref(d));
        }
        prop_assert_eq!(sum, p.mul_term(&div.clearing, &rat(1)));
        // no remainder term is divisible by any divisor leading term
        for d in &divisors {
            let (lm, _) = d.leading_term(&order).unwrap();
            for (m, _) in div.remainder.terms() {
                prop_assert!(m.try_div(&lm).is_none());
            }
        }
    }

    #[test]
    fn adjugate_identity(
        entries in proptest::collection::vec(arb_poly(2, 2, false), 16),
        n in 1usize..=4,
    ) {
        let m = PolyMatrix::new(n, n, entries[..n * n].to_vec()).unwrap();
        let adj = m.adjugate().unwrap();
        let det = m.determinant().unwrap();
        prop_assert_eq!(adj.mul(&m).unwrap(), PolyMatrix::scalar(n, &det));
        prop_assert_eq!(m.mul(&adj).unwrap(), PolyMatrix::scalar(n, &det));
    }

    #[test]
    fn verifier_is_symmetric(
        e00 in arb_poly(2, 1, false),
        e01 in arb_poly(2, 1, false),
        e10 in arb_poly(2, 1, false),
        e11 in arb_poly(2, 1, false),
    ) {
        let m = PolyMatrix::new(2, 2, vec![e00, e01, e10, e11]).unwrap();
        let adj = m.adjugate().unwrap();
        let f = m.determinant().unwrap();
        prop_assume!(!f.is_zero());
        let r1 = verify_matrix_factorization(&adj, &m, &f, &[]).unwrap();
        let r2 = verify_matrix_factorization(&m, &adj, &f, &[]).unwrap();
        prop_assert!(r1.valid && r2.valid);
        prop_assert_eq!(r1.sign, r2.sign);
        prop_assert_eq!(r1.reduced, r2.reduced);
    }
}

#[test]
fn block_sums_preserve_the_report() {
    let spec = make_surface(Family::I, Exponents::pqr(3, 3, 3), None).unwrap();
    let pool: Vec<_> = [
        (rat(1), rat(-1), rat(0)),
        (rat(2), rat(-2), rat(0)),
        (rat(1), rat(0), rat(-1)),
    ]
    .into_iter()
    .map(|(a, b, c)| construct_quasi(&spec, &SurfacePoint::numeric(a, b, c)).unwrap())
    .collect();

    for picks in [[0usize, 1].as_slice(), &[2, 2], &[0, 1, 2], &[1]] {
        let blocks: Vec<_> = picks.iter().map(|&i| pool[i].clone()).collect();
        let sum = block_diag(&blocks).unwrap();
        assert_eq!(sum.sign, -1);
        assert!(sum.reduced);
        assert_eq!(sum.size, 2 * picks.len());
        let report = sum.reverify().unwrap();
        assert!(report.valid);
        assert_eq!(report.sign, Some(-1));
    }
}

use eqschubert::grass::{reduce_mod_im, schubert_product};
use eqschubert::schur::{expand_in_double_schur, SchurExpansion};
use eqschubert::{DiffPoly, GrassContext, Monomial, Partition, Poly};
use proptest::prelude::*;

fn poly_strategy(nx: usize, max_t: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    let term = (
        prop::collection::vec(0u32..3, nx),
        prop::collection::vec((1..=max_t, 0u32..3), 0..3),
        -5i64..=5,
    );
    prop::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        Poly::from_terms(
            nx,
            terms
                .into_iter()
                .map(|(x, t, c)| (Monomial::new(x, t), c.into())),
        )
    })
}

fn t_poly(max_t: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    poly_strategy(0, max_t, max_terms)
}

/// Expansion over partitions with at most two parts and first part at most 3.
fn expansion_strategy() -> impl Strategy<Value = SchurExpansion> {
    let classes = Partition::all_in_box(2, 3);
    prop::collection::vec(t_poly(5, 2), classes.len()).prop_map(move |coeffs| {
        let mut e = SchurExpansion::new(2);
        for (lambda, c) in classes.iter().zip(coeffs) {
            e.add_term(lambda.clone(), c);
        }
        e
    })
}

fn multiply(a: &SchurExpansion, b: &SchurExpansion) -> SchurExpansion {
    let product = &a.to_poly().unwrap() * &b.to_poly().unwrap();
    expand_in_double_schur(&product, a.n()).unwrap()
}

/// `e * sigma_nu` in `G(n,m)`, extended linearly from Schubert products.
fn times_class(e: &SchurExpansion, nu: &Partition, ctx: &GrassContext) -> SchurExpansion {
    let mut out = SchurExpansion::new(ctx.n());
    for (kappa, c) in e.iter() {
        out = out.add(&schubert_product(kappa, nu, ctx).unwrap().scale(c));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_strategy(2, 3, 4), b in poly_strategy(2, 3, 4), c in poly_strategy(2, 3, 4)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Poly::zero(2), a.clone());
        prop_assert_eq!(&a * &Poly::one(2), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_round_trip(a in poly_strategy(2, 3, 4), b in poly_strategy(2, 3, 3)) {
        prop_assume!(!b.is_zero());
        let product = &a * &b;
        prop_assert_eq!(product.exact_div(&b).unwrap(), a);
    }

    #[test]
    fn killing_t_is_a_homomorphism(a in poly_strategy(2, 6, 4), b in poly_strategy(2, 6, 4), m in 1usize..6) {
        prop_assert_eq!((&a * &b).kill_t_above(m), &a.kill_t_above(m) * &b.kill_t_above(m));
        prop_assert_eq!((&a + &b).kill_t_above(m), &a.kill_t_above(m) + &b.kill_t_above(m));
    }

    #[test]
    fn difference_basis_round_trip(u in t_poly(4, 5)) {
        // read the generated polynomial as one in u1..u4, inside m = 5
        let m = 5;
        let as_t = DiffPoly::from_poly(m, u.clone()).unwrap().to_t_poly(0);
        let back = as_t.to_difference_basis(m).unwrap();
        prop_assert_eq!(back.as_poly(), &u);
    }

    #[test]
    fn reduction_is_a_ring_homomorphism(p in expansion_strategy(), q in expansion_strategy()) {
        let ctx = GrassContext::new(2, 4).unwrap();
        let direct = reduce_mod_im(&multiply(&p, &q), &ctx).unwrap();
        let rp = reduce_mod_im(&p, &ctx).unwrap();
        let rq = reduce_mod_im(&q, &ctx).unwrap();
        let via_reduced = reduce_mod_im(&multiply(&rp, &rq), &ctx).unwrap();
        prop_assert_eq!(direct, via_reduced);
    }

    #[test]
    fn associativity_in_g24(i in 0usize..6, j in 0usize..6, k in 0usize..6) {
        let ctx = GrassContext::new(2, 4).unwrap();
        let classes = ctx.classes();
        let (a, b, c) = (&classes[i], &classes[j], &classes[k]);
        let left = times_class(&schubert_product(a, b, &ctx).unwrap(), c, &ctx);
        let right = times_class(&schubert_product(b, c, &ctx).unwrap(), a, &ctx);
        prop_assert_eq!(left, right);
    }
}

#[test]
fn structure_constants_are_homogeneous_and_commutative() {
    for (n, m) in [(1, 4), (2, 4), (2, 5), (3, 5)] {
        let ctx = GrassContext::new(n, m).unwrap();
        for lambda in ctx.classes() {
            for mu in ctx.classes() {
                let product = schubert_product(&lambda, &mu, &ctx).unwrap();
                assert_eq!(product, schubert_product(&mu, &lambda, &ctx).unwrap());
                let total = lambda.size() + mu.size();
                for (nu, c) in product.iter() {
                    assert!(nu.size() <= total, "{lambda} * {mu} has {nu}");
                    assert!(
                        c.is_t_homogeneous_of_degree(total - nu.size()),
                        "{lambda} * {mu} at {nu}: {c}"
                    );
                    assert_eq!(c.kill_t_above(m), *c);
                }
            }
        }
    }
}

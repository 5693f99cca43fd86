//! Randomized invariants: Hilbert bases against a brute-force oracle,
//! Groebner postconditions, point-count multiplicativity, interpolation of
//! affine space, and the parity rule for minus-block actions.

use std::collections::BTreeSet;

use proptest::prelude::*;

use modq::field::Field;
use modq::geometry::{count_points, fit_motive_class, AffineVarietyPresentation, MotiveClass};
use modq::groebner::{normal_form, reduced_groebner_basis, reduces_to_zero, s_polynomial};
use modq::invariants::{diagonal_relations, hilbert_basis_diagonal, minimal_generators};
use modq::poly::{act_on_polynomial, Monomial, MultiPoly, Ring};
use modq::rep::{build_representation, parse_summands, Regime, Representation};

fn rep(p: u64, characteristic: u64, tags: &str) -> Representation {
    let regime = Regime::of(p, characteristic).unwrap();
    let summands = parse_summands(tags, regime, p).unwrap();
    build_representation(p, characteristic, &summands).unwrap()
}

/// Minimal generators of {(a, b) : ia + jb = 0 mod p} by exhaustion over
/// the box [0, p]^2, which contains every minimal pair.
fn brute_force_basis(p: u64, i: u64, j: u64) -> BTreeSet<(u32, u32)> {
    let member = |a: u64, b: u64| (i * a + j * b) % p == 0;
    let mut points = Vec::new();
    for a in 0..=p {
        for b in 0..=p {
            if (a, b) != (0, 0) && member(a, b) {
                points.push((a, b));
            }
        }
    }
    points
        .iter()
        .filter(|&&(a, b)| {
            !points
                .iter()
                .any(|&(c, d)| c <= a && d <= b && (c, d) != (a, b) && member(a - c, b - d)
                    && (a - c, b - d) != (0, 0))
        })
        .map(|&(a, b)| (a as u32, b as u32))
        .collect()
}

/// Builds a polynomial in `ring` from coefficient data, one coefficient
/// per exponent pair below the given caps.
fn poly_from(ring: &Ring, coeffs: &[u64], caps: &[u32]) -> MultiPoly {
    let mut terms = Vec::new();
    let mut idx = 0;
    let mut exps = vec![0u32; caps.len()];
    loop {
        let c = coeffs.get(idx).copied().unwrap_or(0) % ring.field().order();
        idx += 1;
        if c != 0 {
            terms.push((Monomial(exps.clone()), ring.field().from_int(c as i64)));
        }
        let mut k = 0;
        loop {
            if k == caps.len() {
                return MultiPoly::from_terms(ring, terms);
            }
            exps[k] += 1;
            if exps[k] <= caps[k] {
                break;
            }
            exps[k] = 0;
            k += 1;
        }
    }
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(3u64), Just(5), Just(7), Just(11), Just(13)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hilbert_basis_agrees_with_brute_force(p in small_prime(), iraw in 0u64..100, jraw in 0u64..100) {
        let i = 1 + iraw % (p - 1);
        let j = 1 + jraw % (p - 1);
        let basis = hilbert_basis_diagonal(p, i, j).unwrap();
        let got: BTreeSet<(u32, u32)> = basis.pairs.iter().copied().collect();
        prop_assert_eq!(got, brute_force_basis(p, i, j));
        prop_assert!(basis.pairs.contains(&(p as u32, 0)));
        prop_assert!(basis.pairs.contains(&(0, p as u32)));
    }

    #[test]
    fn diagonal_relations_vanish_when_greedy_succeeds(p in small_prime(), iraw in 0u64..100, jraw in 0u64..100) {
        let i = 1 + iraw % (p - 1);
        let j = 1 + jraw % (p - 1);
        let basis = hilbert_basis_diagonal(p, i, j).unwrap();
        let field = Field::new(2, 1).unwrap();
        let Ok(relations) = diagonal_relations(&basis, &field) else {
            // Greedy factorization can hit an obstruction; nothing to check.
            return Ok(());
        };
        let m = basis.pairs.len();
        prop_assert_eq!(relations.len(), (m - 1) * (m - 2) / 2);
        let hr = Ring::weighted(
            field,
            vec!["h1".into(), "h2".into()],
            vec![i as u32, j as u32],
        );
        let monomials = basis.monomials(&hr);
        for rel in &relations {
            prop_assert!(rel.substitute(&monomials).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn groebner_postconditions_on_random_pairs(
        a in proptest::collection::vec(0u64..5, 16),
        b in proptest::collection::vec(0u64..5, 16),
        c in proptest::collection::vec(0u64..5, 16),
    ) {
        let field = Field::new(5, 1).unwrap();
        let ring = Ring::new(field, &["x", "y"]);
        let f = poly_from(&ring, &a, &[3, 3]);
        let g = poly_from(&ring, &b, &[3, 3]);
        let h = poly_from(&ring, &c, &[3, 3]);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let Ok(gb) = reduced_groebner_basis(&[f.clone(), g.clone()], 20_000) else {
            return Ok(());
        };
        for i in 0..gb.len() {
            for j in i + 1..gb.len() {
                prop_assert!(reduces_to_zero(&s_polynomial(&gb[i], &gb[j]), &gb));
            }
        }
        // Normal forms are idempotent and split off an ideal member.
        let nf = normal_form(&h, &gb);
        prop_assert_eq!(normal_form(&nf, &gb), nf.clone());
        prop_assert!(normal_form(&(&h - &nf), &gb).is_zero());
        prop_assert!(normal_form(&(&f * &h), &gb).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn point_counts_multiply_over_disjoint_systems(
        characteristic in prop_oneof![Just(2u64), Just(3)],
        a in proptest::collection::vec(0u64..3, 9),
        b in proptest::collection::vec(0u64..3, 4),
    ) {
        let field = Field::new(characteristic, 1).unwrap();
        let r1 = Ring::new(field.clone(), &["x", "y"]);
        let f = poly_from(&r1, &a, &[2, 2]);
        let r2 = Ring::new(field.clone(), &["z"]);
        let g = poly_from(&r2, &b, &[3]);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let va = AffineVarietyPresentation::new(&r1, vec![f.clone()], None).unwrap();
        let vb = AffineVarietyPresentation::new(&r2, vec![g.clone()], None).unwrap();
        let r3 = Ring::new(field, &["x", "y", "z"]);
        let both = vec![
            r3.parse(&f.to_string()).unwrap(),
            r3.parse(&g.to_string()).unwrap(),
        ];
        let vab = AffineVarietyPresentation::new(&r3, both, None).unwrap();
        for q in [characteristic, characteristic * characteristic] {
            let na = count_points(&va, q, None).unwrap();
            let nb = count_points(&vb, q, None).unwrap();
            prop_assert_eq!(na * nb, count_points(&vab, q, None).unwrap());
        }
    }

    #[test]
    fn interpolating_affine_space_recovers_l_power(
        characteristic in prop_oneof![Just(2u64), Just(3)],
        n in 1usize..=3,
    ) {
        let field = Field::new(characteristic, 1).unwrap();
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let ring = Ring::with_names(field, names);
        let v = AffineVarietyPresentation::new(&ring, vec![], None).unwrap();
        let counts: Vec<(u64, u64)> = (1..=n as u32 + 1)
            .map(|k| {
                let q = characteristic.pow(k);
                (q, count_points(&v, q, None).unwrap())
            })
            .collect();
        prop_assert_eq!(fit_motive_class(&counts).unwrap(), MotiveClass::l_power(n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Products of invariants of the diagonal-1 block pick up the sign
    /// (-1)^degree under the negated block, for any random product.
    #[test]
    fn parity_rule_for_random_invariant_products(
        p in prop_oneof![Just(3u64), Just(5)],
        k in 2u32..=3,
        picks in proptest::collection::vec(0usize..8, 1..=3),
    ) {
        let plus = rep(p, p, &format!("V{k}+"));
        let minus = rep(p, p, &format!("V{k}-"));
        let gens = minimal_generators(&plus, 6);
        let product = picks
            .iter()
            .map(|&i| &gens.generators[i % gens.generators.len()])
            .fold(plus.ring().one(), |acc, g| &acc * g);
        let image = act_on_polynomial(minus.generator(), &product);
        let expected = if product.weighted_degree() % 2 == 0 {
            product.clone()
        } else {
            product.neg()
        };
        prop_assert_eq!(image, expected);
    }
}

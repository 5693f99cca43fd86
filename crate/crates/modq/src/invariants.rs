//! Graded invariant spaces, minimal generating sets, norms, presentations,
//! the monomial Hilbert basis of diagonal two-variable actions, and
//! Hilbert-series consistency checks.
//!
//! The group is cyclic, so a polynomial is invariant exactly when the
//! generator fixes it; every graded computation reduces to linear algebra
//! on the monomial basis of one degree.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::groebner::{standard_monomial_counts, AlgebraMap};
use crate::matrix::{Matrix, RowSpan};
use crate::poly::{act_on_polynomial, Monomial, MultiPoly, Ring};
use crate::rep::Representation;

/// Default sweep bound: twice the group order.
pub fn default_degree_bound(rep: &Representation) -> u32 {
    (2 * rep.group_order()) as u32
}

fn monomial_poly(ring: &Ring, m: &Monomial) -> MultiPoly {
    MultiPoly::from_terms(ring, vec![(m.clone(), ring.field().one())])
}

fn poly_coords(
    f: &MultiPoly,
    index: &HashMap<Monomial, usize>,
    width: usize,
    field: &Field,
) -> Vec<FieldElement> {
    let mut v = vec![field.zero(); width];
    for (m, c) in f.terms() {
        v[*index.get(m).expect("monomial outside the indexed degree")] = c.clone();
    }
    v
}

fn vec_to_poly(ring: &Ring, monomials: &[Monomial], v: &[FieldElement]) -> MultiPoly {
    let terms = monomials
        .iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect();
    MultiPoly::from_terms(ring, terms)
}

/// Echelonized basis of the space of degree-`d` invariants, ordered by
/// descending leading monomial. Degree 0 returns the constant 1.
pub fn invariant_space(rep: &Representation, d: u32) -> Vec<MultiPoly> {
    let ring = rep.ring();
    if d == 0 {
        return vec![ring.one()];
    }
    let monos = ring.monomials_of_degree(d);
    let n = monos.len();
    let field = ring.field().clone();
    let index: HashMap<Monomial, usize> =
        monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    // Columns hold the coordinates of sigma(m_j) - m_j.
    let mut entries = vec![field.zero(); n * n];
    for (j, m) in monos.iter().enumerate() {
        let image = act_on_polynomial(rep.generator(), &monomial_poly(ring, m));
        for (mi, c) in image.terms() {
            entries[index[mi] * n + j] = c.clone();
        }
        let diag = &entries[j * n + j] - &field.one();
        entries[j * n + j] = diag;
    }
    let a = Matrix::new(field.clone(), n, n, entries);
    let mut span = RowSpan::new(field, n);
    for v in a.kernel_basis() {
        span.insert(v);
    }
    span.rows().iter().map(|(_, v)| vec_to_poly(ring, &monos, v)).collect()
}

/// Dimensions of the invariant spaces in degrees `0..=max_degree`.
pub fn invariant_dims(rep: &Representation, max_degree: u32) -> Vec<u64> {
    (0..=max_degree).map(|d| invariant_space(rep, d).len() as u64).collect()
}

/// A minimal homogeneous generating set found by a degree-ascending sweep.
#[derive(Clone)]
pub struct GeneratorSet {
    pub generators: Vec<MultiPoly>,
    pub degrees: Vec<u32>,
    /// The sweep bound used.
    pub bound: u32,
    /// Set when new generators appeared at the bound itself, in which case
    /// the bound may have cut the sweep short.
    pub new_at_bound: bool,
}

/// Minimal generators of the invariant ring up to `degree_bound`.
///
/// At each degree the span of products of previously found generators is
/// computed inside the invariant space; an echelonized complement basis is
/// appended as the new generators. For each degree d the certificate
/// dim(products) + #new = dim(invariants of degree d) holds by
/// construction.
pub fn minimal_generators(rep: &Representation, degree_bound: u32) -> GeneratorSet {
    assert!(degree_bound >= 1);
    let ring = rep.ring();
    let field = ring.field().clone();
    // algebra[e] is an echelon basis of the degree-e piece of the
    // subalgebra generated so far; algebra[0] = {1}.
    let mut algebra: Vec<Vec<MultiPoly>> = vec![vec![ring.one()]];
    let mut gens: Vec<MultiPoly> = Vec::new();
    let mut degrees: Vec<u32> = Vec::new();
    let mut new_at_bound = false;

    for d in 1..=degree_bound {
        let monos = ring.monomials_of_degree(d);
        let width = monos.len();
        let index: HashMap<Monomial, usize> =
            monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let inv = invariant_space(rep, d);

        let mut span = RowSpan::new(field.clone(), width);
        let mut piece: Vec<MultiPoly> = Vec::new();
        'products: for (g, dg) in gens.iter().zip(&degrees) {
            for b in &algebra[(d - dg) as usize] {
                // Products of invariants stay invariant, so the span cannot
                // outgrow the invariant space.
                if span.rank() == inv.len() {
                    break 'products;
                }
                let prod = g * b;
                let v = poly_coords(&prod, &index, width, &field);
                if span.insert(v).is_some() {
                    piece.push(prod);
                }
            }
        }
        let products_rank = span.rank();

        let mut fresh = RowSpan::new(field.clone(), width);
        for f in &inv {
            let v = poly_coords(f, &index, width, &field);
            let r = span.reduce(v);
            if r.iter().any(|c| !c.is_zero()) {
                span.insert(r.clone());
                fresh.insert(r);
            }
        }
        debug_assert_eq!(products_rank + fresh.rank(), inv.len());

        for (_, v) in fresh.rows() {
            let g = vec_to_poly(ring, &monos, v);
            piece.push(g.clone());
            gens.push(g);
            degrees.push(d);
        }
        if d == degree_bound && fresh.rank() > 0 {
            new_at_bound = true;
        }
        algebra.push(piece);
    }

    GeneratorSet { generators: gens, degrees, bound: degree_bound, new_at_bound }
}

/// Echelonized bases of the graded pieces (degrees `0..=max_d`) of the
/// subalgebra generated by the given homogeneous elements.
pub fn graded_subalgebra_bases(ring: &Ring, gens: &[MultiPoly], max_d: u32) -> Vec<Vec<MultiPoly>> {
    let field = ring.field().clone();
    let degs: Vec<u32> = gens.iter().map(|g| g.total_degree()).collect();
    assert!(gens.iter().all(|g| g.is_homogeneous() && !g.is_zero()));
    let mut algebra: Vec<Vec<MultiPoly>> = vec![vec![ring.one()]];
    for d in 1..=max_d {
        let monos = ring.monomials_of_degree(d);
        let width = monos.len();
        let index: HashMap<Monomial, usize> =
            monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut span = RowSpan::new(field.clone(), width);
        let mut piece = Vec::new();
        for (g, dg) in gens.iter().zip(&degs) {
            if *dg > d || *dg == 0 {
                continue;
            }
            for b in &algebra[(d - dg) as usize] {
                let prod = g * b;
                let v = poly_coords(&prod, &index, width, &field);
                if span.insert(v).is_some() {
                    piece.push(prod);
                }
            }
        }
        algebra.push(piece);
    }
    algebra
}

/// Product of the distinct images of a variable under the subgroup
/// generated by `sigma^subgroup_exponent`, taken in power order starting
/// from the identity. No sign normalization is applied.
pub fn norm(rep: &Representation, subgroup_exponent: u64, variable: &str) -> Result<MultiPoly> {
    let ring = rep.ring();
    let idx = ring
        .var_index(variable)
        .ok_or_else(|| Error::Parse(format!("unknown variable {variable:?}")))?;
    let g = rep.sigma_power(subgroup_exponent);
    let ord = g.order(rep.group_order())?;
    let x = ring.var(idx);
    let mut images: Vec<MultiPoly> = Vec::new();
    let mut power = Matrix::identity(ring.field().clone(), rep.dimension());
    for _ in 0..ord {
        let img = act_on_polynomial(&power, &x);
        if !images.contains(&img) {
            images.push(img);
        }
        power = power.mul(&g);
    }
    Ok(images.iter().fold(ring.one(), |acc, f| &acc * f))
}

/// Shape of a presentation's relation ideal.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PresentationClass {
    Polynomial,
    Hypersurface,
    CompleteIntersection,
    Other,
}

impl PresentationClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            PresentationClass::Polynomial => "polynomial",
            PresentationClass::Hypersurface => "hypersurface",
            PresentationClass::CompleteIntersection => "ci",
            PresentationClass::Other => "other",
        }
    }
}

/// Generators plus a minimal weighted-homogeneous relation ideal in tag
/// variables U1..Um (tag weights are the generator degrees).
pub struct AlgebraPresentation {
    pub generators: GeneratorSet,
    pub map: AlgebraMap,
    pub relations: Vec<MultiPoly>,
    pub ambient_dim: usize,
    pub class: PresentationClass,
}

impl AlgebraPresentation {
    pub fn generator_degrees(&self) -> &[u32] {
        &self.generators.degrees
    }

    pub fn relation_degrees(&self) -> Vec<u64> {
        self.relations.iter().map(|r| r.weighted_degree()).collect()
    }
}

fn classify(relations: usize, generators: usize, dim: usize) -> PresentationClass {
    if relations == 0 {
        PresentationClass::Polynomial
    } else if relations == 1 {
        PresentationClass::Hypersurface
    } else if generators >= dim && relations == generators - dim {
        PresentationClass::CompleteIntersection
    } else {
        PresentationClass::Other
    }
}

/// Computes minimal generators up to `degree_bound` and a minimal relation
/// ideal among them.
pub fn presentation(rep: &Representation, degree_bound: u32, budget: u64) -> Result<AlgebraPresentation> {
    let gens = minimal_generators(rep, degree_bound);
    let names: Vec<String> = (1..=gens.generators.len()).map(|i| format!("U{i}")).collect();
    let map = AlgebraMap::new(rep.ring(), &names, &gens.generators, budget)?;
    let relations = map.minimal_relations(budget)?;
    for r in &relations {
        debug_assert!(map.apply(r).is_zero(), "relation fails to vanish: {r}");
        debug_assert!(r.is_homogeneous(), "relation is not weighted-homogeneous: {r}");
    }
    let ambient_dim = rep.dimension();
    let class = classify(relations.len(), gens.generators.len(), ambient_dim);
    if class != PresentationClass::Other {
        // Krull dimension bookkeeping for the regular shapes.
        assert_eq!(
            gens.generators.len() - relations.len(),
            ambient_dim,
            "presentation dimension mismatch"
        );
    }
    Ok(AlgebraPresentation { generators: gens, map, relations, ambient_dim, class })
}

/// Rewrites relations stated on an alternative generator list into the
/// presentation's tag variables, by expressing each alternative generator
/// through the presentation's elimination basis. Used to compare against
/// published generator/relation lists without literal matching.
pub fn transport_relations(
    pres: &AlgebraPresentation,
    alt_gens: &[MultiPoly],
    alt_relations: &[MultiPoly],
) -> Result<Vec<MultiPoly>> {
    let images: Vec<MultiPoly> = alt_gens
        .iter()
        .map(|g| pres.map.express(g))
        .collect::<Result<_>>()?;
    alt_relations
        .iter()
        .map(|r| {
            if r.ring().num_vars() != images.len() {
                return Err(Error::RingMismatch(
                    "relation variable count does not match the generator list".into(),
                ));
            }
            Ok(r.substitute(&images))
        })
        .collect()
}

/// The monomial Hilbert basis of the diagonal action with weights (i, j):
/// minimal exponent pairs (a, b) with i*a + j*b divisible by p, sorted by
/// decreasing a. The endpoints (p, 0) and (0, p) are always present.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertBasisDiagonal {
    pub p: u64,
    pub i: u64,
    pub j: u64,
    pub pairs: Vec<(u32, u32)>,
}

pub fn hilbert_basis_diagonal(p: u64, i: u64, j: u64) -> Result<HilbertBasisDiagonal> {
    if i == 0 || j == 0 || i >= p || j >= p {
        return Err(Error::InvalidInput(format!(
            "weights must satisfy 1 <= i, j <= p-1, got i={i}, j={j}, p={p}"
        )));
    }
    let member = |a: u32, b: u32| (i * a as u64 + j * b as u64) % p == 0;
    let mut s: Vec<(u32, u32)> = Vec::new();
    for a in 0..=p as u32 {
        for b in 0..=p as u32 {
            if (a, b) != (0, 0) && member(a, b) {
                s.push((a, b));
            }
        }
    }
    // A pair decomposes in the invariant monoid exactly when a smaller
    // member sits below it componentwise (differences stay in the monoid).
    let mut pairs: Vec<(u32, u32)> = s
        .iter()
        .copied()
        .filter(|&(a, b)| {
            !s.iter().any(|&(c, d)| (c, d) != (a, b) && c <= a && d <= b)
        })
        .collect();
    pairs.sort_by(|x, y| y.0.cmp(&x.0));
    debug_assert_eq!(pairs.first(), Some(&(p as u32, 0)));
    debug_assert_eq!(pairs.last(), Some(&(0, p as u32)));
    debug_assert!(pairs.windows(2).all(|w| w[0].0 > w[1].0 && w[0].1 < w[1].1));
    Ok(HilbertBasisDiagonal { p, i, j, pairs })
}

impl HilbertBasisDiagonal {
    pub fn m(&self) -> usize {
        self.pairs.len()
    }

    /// Tag ring U1..Um over `field`, weighted by the total degrees a_k + b_k.
    pub fn tag_ring(&self, field: Field) -> Ring {
        let names: Vec<String> = (1..=self.m()).map(|k| format!("U{k}")).collect();
        let weights: Vec<u32> = self.pairs.iter().map(|&(a, b)| a + b).collect();
        Ring::weighted(field, names, weights)
    }

    /// The monomial generators x^a y^b in a two-variable ring.
    pub fn monomials(&self, ring: &Ring) -> Vec<MultiPoly> {
        assert_eq!(ring.num_vars(), 2);
        self.pairs
            .iter()
            .map(|&(a, b)| monomial_poly(ring, &Monomial(vec![a, b])))
            .collect()
    }
}

/// The binomial relations U_k*U_t - (monomial in the intermediates) for all
/// t - k >= 2, with exponents found by greedy factorization; there are
/// (m-1 choose 2) of them. Greedy failure is reported, never patched.
pub fn diagonal_relations(basis: &HilbertBasisDiagonal, field: &Field) -> Result<Vec<MultiPoly>> {
    let ring = basis.tag_ring(field.clone());
    let m = basis.m();
    let mut out = Vec::new();
    for k in 0..m {
        for t in (k + 2)..m {
            let (mut ra, mut rb) = (
                basis.pairs[k].0 + basis.pairs[t].0,
                basis.pairs[k].1 + basis.pairs[t].1,
            );
            let mut exps = vec![0u32; m];
            for s in (k + 1)..t {
                let (a, b) = basis.pairs[s];
                debug_assert!(a >= 1 && b >= 1, "intermediate pairs are interior");
                let d = (ra / a).min(rb / b);
                exps[s] = d;
                ra -= d * a;
                rb -= d * b;
            }
            if (ra, rb) != (0, 0) {
                return Err(Error::ObstructionFound(format!(
                    "greedy factorization of the pair ({k}, {t}) leaves remainder ({ra}, {rb})"
                )));
            }
            let mut lead = vec![0u32; m];
            lead[k] += 1;
            lead[t] += 1;
            let rel = MultiPoly::from_terms(
                &ring,
                vec![
                    (Monomial(lead), field.one()),
                    (Monomial(exps), field.from_int(-1)),
                ],
            );
            debug_assert!(rel.is_homogeneous());
            out.push(rel);
        }
    }
    debug_assert_eq!(out.len(), (m - 1) * (m - 2) / 2);
    Ok(out)
}

/// Hilbert series data of a presentation as a rational function: reduced
/// numerator coefficients over the product of (1 - t^e) for the listed
/// degrees.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertSeries {
    pub numerator: Vec<i64>,
    pub denominator_degrees: Vec<u32>,
}

/// Exact division by (1 - t^e) in Z[t], if the division is exact.
fn divide_one_minus_te(n: &[i64], e: u32) -> Option<Vec<i64>> {
    let e = e as usize;
    if n.len() <= e {
        return None;
    }
    let mut q = vec![0i64; n.len()];
    for idx in 0..n.len() {
        q[idx] = n[idx] + if idx >= e { q[idx - e] } else { 0 };
    }
    if q[n.len() - e..].iter().all(|&c| c == 0) {
        let mut q = q[..n.len() - e].to_vec();
        while q.len() > 1 && *q.last().unwrap() == 0 {
            q.pop();
        }
        Some(q)
    } else {
        None
    }
}

/// Numerator of the Hilbert series over the product of (1 - t^{d_i}) for
/// the generator degrees, via inclusion-exclusion on the leading-monomial
/// ideal of the relation basis; reduced by cancelling denominator factors.
/// Returns None when the relation basis is too large to enumerate subsets.
pub fn presentation_series(pres: &AlgebraPresentation) -> Option<HilbertSeries> {
    let lms: Vec<&Monomial> = pres
        .map
        .kernel_basis()
        .iter()
        .map(|g| g.leading_monomial().expect("basis elements are nonzero"))
        .collect();
    if lms.len() > 22 {
        return None;
    }
    let weights = pres.map.source().weights();
    let mut coeffs: Vec<i64> = vec![1];
    for mask in 1u32..(1 << lms.len()) {
        let mut lcm = Monomial::one(weights.len());
        for (b, lm) in lms.iter().enumerate() {
            if mask >> b & 1 == 1 {
                lcm = lcm.lcm(lm);
            }
        }
        let deg = lcm.weighted_degree(weights) as usize;
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] += if mask.count_ones() % 2 == 1 { -1 } else { 1 };
    }
    let mut denominator: Vec<u32> = pres.generator_degrees().to_vec();
    denominator.sort_unstable();
    // Cancel common (1 - t^e) factors.
    loop {
        let mut cancelled = false;
        for idx in 0..denominator.len() {
            if let Some(q) = divide_one_minus_te(&coeffs, denominator[idx]) {
                coeffs = q;
                denominator.remove(idx);
                cancelled = true;
                break;
            }
        }
        if !cancelled || denominator.is_empty() {
            break;
        }
    }
    Some(HilbertSeries { numerator: coeffs, denominator_degrees: denominator })
}

/// Comparison of invariant-space dimensions against the presentation's
/// Hilbert function up to a degree bound.
#[derive(Clone, Debug)]
pub struct HilbertData {
    pub dims: Vec<u64>,
    pub presentation_dims: Vec<u64>,
    pub series: Option<HilbertSeries>,
    pub matches: bool,
    pub first_mismatch: Option<u32>,
}

/// Checks that the graded dimensions of the invariant ring agree with the
/// Hilbert function of the presentation in degrees `0..=max_degree`.
pub fn hilbert_series_check(
    pres: &AlgebraPresentation,
    rep: &Representation,
    max_degree: u32,
) -> HilbertData {
    let dims = invariant_dims(rep, max_degree);
    let lms: Vec<Monomial> = pres
        .map
        .kernel_basis()
        .iter()
        .map(|g| g.leading_monomial().expect("basis elements are nonzero").clone())
        .collect();
    let presentation_dims =
        standard_monomial_counts(pres.map.source(), &lms, max_degree as u64);
    let first_mismatch = dims
        .iter()
        .zip(&presentation_dims)
        .position(|(a, b)| a != b)
        .map(|d| d as u32);
    HilbertData {
        matches: first_mismatch.is_none(),
        first_mismatch,
        series: presentation_series(pres),
        dims,
        presentation_dims,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{build_representation, parse_summands, Regime};

    fn rep(p: u64, c: u64, tags: &str) -> Representation {
        let regime = Regime::of(p, c).unwrap();
        let summands = parse_summands(tags, regime, p).unwrap();
        build_representation(p, c, &summands).unwrap()
    }

    #[test]
    fn invariant_space_of_sign_representations() {
        let r = rep(3, 3, "V1-,V1-");
        assert_eq!(invariant_space(&r, 0).len(), 1);
        assert_eq!(invariant_space(&r, 1).len(), 0);
        let basis: Vec<String> = invariant_space(&r, 2).iter().map(|f| f.to_string()).collect();
        assert_eq!(basis, ["x^2", "x*y", "y^2"]);
    }

    #[test]
    fn minimal_generators_of_a_jordan_plane() {
        // x and the degree-p norm of y generate.
        let r = rep(3, 3, "V2+");
        let gens = minimal_generators(&r, 6);
        assert_eq!(gens.degrees, vec![1, 3]);
        assert!(!gens.new_at_bound);
        let expected = r.ring().parse("y^3 - x^2*y").unwrap();
        assert_eq!(gens.generators[1].monic(), expected.monic());
        assert_eq!(gens.generators[0], r.ring().parse("x").unwrap());
    }

    #[test]
    fn minimal_generators_of_three_signs_are_the_quadric_monomials() {
        let r = rep(3, 3, "V1-,V1-,V1-");
        let gens = minimal_generators(&r, 4);
        let strings: Vec<String> = gens.generators.iter().map(|f| f.to_string()).collect();
        assert_eq!(strings, ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]);
        assert_eq!(gens.degrees, vec![2; 6]);
    }

    #[test]
    fn norms_multiply_distinct_orbit_images() {
        let r = rep(3, 3, "V2+");
        let n = norm(&r, 1, "y").unwrap();
        assert_eq!(n, r.ring().parse("y^3 - x^2*y").unwrap());
        // Sign representation: the orbit {x, -x} multiplies to -x^2.
        let s = rep(5, 5, "V1-");
        assert_eq!(norm(&s, 1, "x").unwrap(), s.ring().parse("-x^2").unwrap());
        // The full group acting through order p gives a degree-p norm.
        let t = rep(5, 5, "V3+");
        let nz = norm(&t, 1, "z").unwrap();
        assert_eq!(nz.total_degree(), 5);
        assert_eq!(act_on_polynomial(t.generator(), &nz), nz);
        assert!(norm(&r, 1, "w").is_err());
    }

    #[test]
    fn invariance_of_every_emitted_generator() {
        for (p, c, tags) in [
            (2u64, 2u64, "V3"),
            (2, 2, "V2,V2"),
            (3, 3, "V3-"),
            (3, 2, "W1"),
            (5, 2, "V1,V2"),
        ] {
            let r = rep(p, c, tags);
            let gens = minimal_generators(&r, default_degree_bound(&r).min(10));
            for g in &gens.generators {
                assert_eq!(act_on_polynomial(r.generator(), g), *g, "({p},{c},{tags})");
            }
        }
    }

    #[test]
    fn sign_rule_for_minus_blocks_on_plus_invariants() {
        // A plus-block invariant f satisfies sigma_minus(f) = (-1)^deg f.
        for p in [3u64, 5] {
            for k in 2..=3u32 {
                let plus = rep(p, p, &format!("V{k}+"));
                let minus = rep(p, p, &format!("V{k}-"));
                let gens = minimal_generators(&plus, (2 * p) as u32);
                for g in &gens.generators {
                    let expected = if g.total_degree() % 2 == 0 { g.clone() } else { g.neg() };
                    assert_eq!(act_on_polynomial(minus.generator(), g), expected);
                }
            }
        }
    }

    #[test]
    fn presentation_classes_of_the_small_quotients() {
        // Two variables fixed pointwise by the order-2 image: polynomial.
        let v2 = rep(2, 2, "V2");
        let p2 = presentation(&v2, 8, 10_000).unwrap();
        assert_eq!(p2.class, PresentationClass::Polynomial);
        assert_eq!(p2.generator_degrees(), &[1, 2]);

        let v3 = rep(2, 2, "V3");
        let p3 = presentation(&v3, 8, 50_000).unwrap();
        assert_eq!(p3.class, PresentationClass::Hypersurface);
        assert_eq!(p3.generator_degrees(), &[1, 2, 3, 4]);
        assert_eq!(p3.relation_degrees(), vec![6]);
        assert!(p3.map.apply(&p3.relations[0]).is_zero());
    }

    #[test]
    fn hilbert_basis_frozen_examples() {
        assert_eq!(
            hilbert_basis_diagonal(5, 1, 2).unwrap().pairs,
            vec![(5, 0), (3, 1), (1, 2), (0, 5)]
        );
        assert_eq!(
            hilbert_basis_diagonal(3, 1, 2).unwrap().pairs,
            vec![(3, 0), (1, 1), (0, 3)]
        );
        assert_eq!(
            hilbert_basis_diagonal(7, 1, 3).unwrap().pairs,
            vec![(7, 0), (4, 1), (1, 2), (0, 7)]
        );
        assert!(hilbert_basis_diagonal(5, 0, 2).is_err());
        assert!(hilbert_basis_diagonal(5, 1, 5).is_err());
    }

    #[test]
    fn diagonal_relations_factor_greedily() {
        let f2 = Field::new(2, 1).unwrap();
        let basis = hilbert_basis_diagonal(5, 1, 2).unwrap();
        let rels = diagonal_relations(&basis, &f2).unwrap();
        let strings: Vec<String> = rels.iter().map(|r| r.to_string()).collect();
        assert_eq!(strings, ["U1*U3 + U2^2", "U1*U4 + U2*U3^2", "U2*U4 + U3^3"]);
        // Substitution into the monomial generators kills every relation.
        let xy = Ring::new(f2.clone(), &["x", "y"]);
        let images = basis.monomials(&xy);
        for r in &rels {
            assert!(r.substitute(&images).is_zero());
        }
        // p = 3 has the single cube relation.
        let basis3 = hilbert_basis_diagonal(3, 1, 2).unwrap();
        let rels3 = diagonal_relations(&basis3, &f2).unwrap();
        assert_eq!(rels3.len(), 1);
        assert_eq!(rels3[0].to_string(), "U1*U3 + U2^3");
    }

    #[test]
    fn hilbert_series_of_a_polynomial_presentation() {
        let r = rep(3, 3, "V2+");
        let pres = presentation(&r, 6, 10_000).unwrap();
        let data = hilbert_series_check(&pres, &r, 4);
        assert_eq!(data.dims, vec![1, 1, 1, 2, 2]);
        assert!(data.matches);
        let series = data.series.unwrap();
        assert_eq!(series.numerator, vec![1]);
        assert_eq!(series.denominator_degrees, vec![1, 3]);
    }

    #[test]
    fn series_reduction_cancels_shared_factors() {
        // k[x,y]/(x*y) with degrees {1,1}: numerator 1 - t^2 reduces to
        // 1 + t over a single (1 - t).
        let f5 = Field::new(5, 1).unwrap();
        let r = Ring::new(f5.clone(), &["x", "y"]);
        let images = vec![r.parse("x + y").unwrap(), r.parse("x - y").unwrap()];
        // Relations of the squares u = x^2, v = y^2, w = x*y: w^2 = u*v.
        let sq = vec![
            r.parse("x^2").unwrap(),
            r.parse("y^2").unwrap(),
            r.parse("x*y").unwrap(),
        ];
        let names: Vec<String> = ["U1", "U2", "U3"].iter().map(|s| s.to_string()).collect();
        let map = AlgebraMap::new(&r, &names, &sq, 1000).unwrap();
        let rel = map.minimal_relations(1000).unwrap();
        assert_eq!(rel.len(), 1);
        drop(images);
    }

    #[test]
    fn graded_pieces_of_an_explicit_subalgebra() {
        let f5 = Field::new(5, 1).unwrap();
        let r = Ring::new(f5, &["x", "y"]);
        let gens = vec![r.parse("x").unwrap(), r.parse("y^2").unwrap()];
        let pieces = graded_subalgebra_bases(&r, &gens, 3);
        assert_eq!(pieces[1].len(), 1);
        assert_eq!(pieces[2].len(), 2); // x^2, y^2
        assert_eq!(pieces[3].len(), 2); // x^3, x*y^2
    }
}

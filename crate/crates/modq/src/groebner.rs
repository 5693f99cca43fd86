//! Buchberger's algorithm, normal forms, and elimination-based maps into
//! subalgebras.
//!
//! Reduced Groebner bases are returned monic and sorted ascending by leading
//! monomial, so they are canonical for an ideal under a fixed ring order;
//! ideal equality is decided by comparing them. [`AlgebraMap`] packages the
//! elimination computation used for relation ideals and subalgebra
//! membership: adjoin one tag variable per generator image, compute a basis
//! under a block order with the original variables in front, and read
//! kernel elements and normal forms off the result.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, MultiPoly, Ring};

/// Default cap on processed S-pairs before giving up.
pub const DEFAULT_SPAIR_BUDGET: u64 = 200_000;

/// S-polynomial of two nonzero polynomials in the same ring.
pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (lmf, lcf) = f.leading_term().expect("s_polynomial of zero");
    let (lmg, lcg) = g.leading_term().expect("s_polynomial of zero");
    let lcm = lmf.lcm(lmg);
    let mf = lcm.div(lmf).unwrap();
    let mg = lcm.div(lmg).unwrap();
    let a = f.mul_term(&mf, &lcf.inv().expect("nonzero leading coefficient"));
    let b = g.mul_term(&mg, &lcg.inv().expect("nonzero leading coefficient"));
    &a - &b
}

/// Fully reduced normal form of `f` modulo `basis`: no term of the result
/// is divisible by any basis leading monomial.
pub fn normal_form(f: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let ring = f.ring().clone();
    let mut out: Vec<(Monomial, crate::field::FieldElement)> = Vec::new();
    let mut work = f.clone();
    'outer: while let Some((lm, lc)) = work.leading_term() {
        for g in basis {
            if let Some((lmg, lcg)) = g.leading_term() {
                if let Some(q) = lm.div(lmg) {
                    let c = lc * &lcg.inv().expect("nonzero leading coefficient");
                    work = &work - &g.mul_term(&q, &c);
                    continue 'outer;
                }
            }
        }
        // Leading term is irreducible; it is smaller than everything in
        // `out`, so appending keeps the descending order.
        out.push((lm.clone(), lc.clone()));
        let tail = MultiPoly::from_terms(&ring, out.last().iter().map(|(m, c)| ((*m).clone(), (*c).clone())).collect());
        work = &work - &tail;
    }
    MultiPoly::from_terms(&ring, out)
}

/// True when `f` reduces to zero modulo a Groebner basis.
pub fn reduces_to_zero(f: &MultiPoly, gb: &[MultiPoly]) -> bool {
    normal_form(f, gb).is_zero()
}

type Pair = (u64, Vec<u32>, usize, usize);

fn pair_key(basis: &[MultiPoly], i: usize, j: usize) -> Pair {
    let lmi = basis[i].leading_monomial().unwrap();
    let lmj = basis[j].leading_monomial().unwrap();
    let lcm = lmi.lcm(lmj);
    let wd = lcm.weighted_degree(basis[i].ring().weights());
    (wd, lcm.0.clone(), i, j)
}

/// Reduced Groebner basis: monic, fully inter-reduced, sorted ascending by
/// leading monomial. Unique for the ideal under the ring's order.
pub fn reduced_groebner_basis(gens: &[MultiPoly], budget: u64) -> Result<Vec<MultiPoly>> {
    let mut basis: Vec<MultiPoly> = Vec::new();
    let mut ring: Option<Ring> = None;
    for g in gens {
        match &ring {
            None => ring = Some(g.ring().clone()),
            Some(r) => {
                if g.ring() != r {
                    return Err(Error::RingMismatch(
                        "generators must live in one ring".into(),
                    ));
                }
            }
        }
        if !g.is_zero() {
            basis.push(g.monic());
        }
    }
    if basis.is_empty() {
        return Ok(Vec::new());
    }

    let mut pending: BTreeSet<Pair> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pending.insert(pair_key(&basis, i, j));
        }
    }

    let mut processed: u64 = 0;
    while let Some(pair) = pending.iter().next().cloned() {
        pending.remove(&pair);
        let (_, lcm_exps, i, j) = pair;
        let lcm = Monomial(lcm_exps);

        // Product criterion: coprime leading monomials.
        let lmi = basis[i].leading_monomial().unwrap().clone();
        let lmj = basis[j].leading_monomial().unwrap().clone();
        if lmi.gcd_is_one(&lmj) {
            continue;
        }
        // Chain criterion: some k divides the lcm and both companion pairs
        // were already considered.
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            if !basis[k].leading_monomial().unwrap().divides(&lcm) {
                return false;
            }
            let ik = pair_key(&basis, i.min(k), i.max(k));
            let jk = pair_key(&basis, j.min(k), j.max(k));
            !pending.contains(&ik) && !pending.contains(&jk)
        });
        if chain {
            continue;
        }

        processed += 1;
        if processed > budget {
            return Err(Error::BudgetExceeded { budget, processed });
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = normal_form(&s, &basis);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        basis.push(r);
        let new = basis.len() - 1;
        for k in 0..new {
            pending.insert(pair_key(&basis, k, new));
        }
    }

    // Minimalize: drop elements whose leading monomial is divisible by
    // another's.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let lmi = basis[i].leading_monomial().unwrap();
            let lmj = basis[j].leading_monomial().unwrap();
            if lmj.divides(lmi) && (lmi != lmj || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<MultiPoly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();

    // Fully reduce each element against the others.
    let mut reduced: Vec<MultiPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MultiPoly> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| (j != i).then(|| g.clone()))
            .collect();
        let r = normal_form(&minimal[i], &others);
        debug_assert!(!r.is_zero(), "minimal basis element reduced to zero");
        reduced.push(r.monic());
    }
    reduced.sort_by(|a, b| {
        let ra = a.ring().clone();
        ra.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    Ok(reduced)
}

/// Ideal equality via canonical reduced bases.
pub fn ideal_equal(a: &[MultiPoly], b: &[MultiPoly], budget: u64) -> Result<bool> {
    let ga = reduced_groebner_basis(a, budget)?;
    let gb = reduced_groebner_basis(b, budget)?;
    Ok(ga == gb)
}

/// Number of monomials of each weighted degree `0..=max_wd` outside the
/// monomial ideal generated by `lms`. With `lms` the leading monomials of a
/// Groebner basis this is the Hilbert function of the quotient ring.
pub fn standard_monomial_counts(ring: &Ring, lms: &[Monomial], max_wd: u64) -> Vec<u64> {
    let n = ring.num_vars();
    let weights = ring.weights();
    let mut counts = vec![0u64; (max_wd + 1) as usize];
    let mut exps = vec![0u32; n];
    fn rec(
        pos: usize,
        wd: u64,
        exps: &mut Vec<u32>,
        n: usize,
        weights: &[u32],
        max_wd: u64,
        lms: &[Monomial],
        counts: &mut [u64],
    ) {
        if pos == n {
            let m = Monomial(exps.clone());
            if !lms.iter().any(|lm| lm.divides(&m)) {
                counts[wd as usize] += 1;
            }
            return;
        }
        let w = weights[pos] as u64;
        let mut e: u32 = 0;
        while wd + e as u64 * w <= max_wd {
            exps[pos] = e;
            rec(pos + 1, wd + e as u64 * w, exps, n, weights, max_wd, lms, counts);
            e += 1;
        }
        exps[pos] = 0;
    }
    if n == 0 {
        counts[0] = 1;
        return counts;
    }
    rec(0, 0, &mut exps, n, weights, max_wd, lms, &mut counts);
    counts
}

/// A polynomial map `k[U_1..U_m] -> k[x_1..x_n]` given by generator images,
/// carrying the elimination Groebner basis needed to compute its kernel and
/// decide membership in its image.
pub struct AlgebraMap {
    source: Ring,
    target: Ring,
    images: Vec<MultiPoly>,
    combined: Ring,
    gb: Vec<MultiPoly>,
    kernel: Vec<MultiPoly>,
}

impl AlgebraMap {
    /// Builds the map sending the tag variable `names[j]` to `images[j]`.
    /// Each image must be nonzero and homogeneous; tag variables receive its
    /// weighted degree as their weight, so the relation ideal is graded.
    pub fn new(target: &Ring, names: &[String], images: &[MultiPoly], budget: u64) -> Result<AlgebraMap> {
        assert_eq!(names.len(), images.len());
        let n = target.num_vars();
        let m = images.len();
        for (name, f) in names.iter().zip(images) {
            if f.is_zero() || !f.is_homogeneous() {
                return Err(Error::InvalidInput(format!(
                    "image of {name} must be nonzero and homogeneous, got {f}"
                )));
            }
            if f.ring() != target {
                return Err(Error::RingMismatch("images must live in the target ring".into()));
            }
            if target.var_index(name).is_some() || names.iter().filter(|x| *x == name).count() > 1 {
                return Err(Error::InvalidInput(format!("tag variable {name} collides")));
            }
        }

        let mut vars: Vec<String> = target.var_names().to_vec();
        vars.extend(names.iter().cloned());
        let mut weights: Vec<u32> = target.weights().to_vec();
        for f in images {
            weights.push(u32::try_from(f.weighted_degree()).expect("degree fits in u32"));
        }
        let combined = Ring::weighted_with_order(
            target.field().clone(),
            vars,
            weights.clone(),
            MonomialOrder::block(n + m, n),
        );
        let source = Ring::weighted(
            target.field().clone(),
            names.to_vec(),
            weights[n..].to_vec(),
        );

        let embed_target: Vec<Option<usize>> = (0..n).map(Some).collect();
        let mut gens = Vec::with_capacity(m);
        for (j, f) in images.iter().enumerate() {
            let tag = combined.var(n + j);
            let img = f.map_vars(&combined, &embed_target)?;
            gens.push(&tag - &img);
        }
        let gb = reduced_groebner_basis(&gens, budget)?;

        // Elements supported purely on tag variables form a basis of the
        // kernel under the order the source ring induces.
        let to_source: Vec<Option<usize>> = (0..n + m)
            .map(|i| if i < n { None } else { Some(i - n) })
            .collect();
        let mut kernel = Vec::new();
        for g in &gb {
            let pure = g
                .terms()
                .iter()
                .all(|(mono, _)| mono.exponents()[..n].iter().all(|&e| e == 0));
            if pure {
                kernel.push(g.map_vars(&source, &to_source)?);
            }
        }
        kernel.sort_by(|a, b| source.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

        Ok(AlgebraMap {
            source,
            target: target.clone(),
            images: images.to_vec(),
            combined,
            gb,
            kernel,
        })
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn images(&self) -> &[MultiPoly] {
        &self.images
    }

    /// Groebner basis of the relation ideal among the images, in the tag ring.
    pub fn kernel_basis(&self) -> &[MultiPoly] {
        &self.kernel
    }

    /// Evaluates a tag-ring polynomial at the generator images.
    pub fn apply(&self, rel: &MultiPoly) -> MultiPoly {
        assert!(rel.ring() == &self.source, "relation must live in the tag ring");
        rel.substitute(&self.images)
    }

    /// A minimal generating set of the relation ideal, extracted from the
    /// kernel basis by a greedy sweep in ascending weighted degree. The
    /// relation ideal is graded, so the greedy sweep is exact.
    pub fn minimal_relations(&self, budget: u64) -> Result<Vec<MultiPoly>> {
        let mut sorted = self.kernel.clone();
        sorted.sort_by(|a, b| {
            a.weighted_degree()
                .cmp(&b.weighted_degree())
                .then_with(|| self.source.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()))
        });
        let mut kept: Vec<MultiPoly> = Vec::new();
        let mut kept_gb: Vec<MultiPoly> = Vec::new();
        for h in sorted {
            if !reduces_to_zero(&h, &kept_gb) {
                kept.push(h.clone());
                kept_gb = reduced_groebner_basis(&kept, budget)?;
            }
        }
        Ok(kept)
    }

    /// Writes `f` as a polynomial in the images, if possible. The result is
    /// the normal form under the elimination basis, so it is canonical for
    /// the stored generator set and order.
    pub fn express(&self, f: &MultiPoly) -> Result<MultiPoly> {
        if f.ring() != &self.target {
            return Err(Error::RingMismatch("argument must live in the target ring".into()));
        }
        let n = self.target.num_vars();
        let embed: Vec<Option<usize>> = (0..n).map(Some).collect();
        let lifted = f.map_vars(&self.combined, &embed)?;
        let nf = normal_form(&lifted, &self.gb);
        let pure = nf
            .terms()
            .iter()
            .all(|(mono, _)| mono.exponents()[..n].iter().all(|&e| e == 0));
        if !pure {
            return Err(Error::NotInSubalgebra(format!(
                "{f} is not in the subalgebra generated by the images (remainder {nf})"
            )));
        }
        let to_source: Vec<Option<usize>> = (0..self.combined.num_vars())
            .map(|i| if i < n { None } else { Some(i - n) })
            .collect();
        nf.map_vars(&self.source, &to_source)
    }

    /// Membership test that reports failure as `false` instead of an error.
    pub fn contains(&self, f: &MultiPoly) -> Result<bool> {
        match self.express(f) {
            Ok(_) => Ok(true),
            Err(Error::NotInSubalgebra(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }
}

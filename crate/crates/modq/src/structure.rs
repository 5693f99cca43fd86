//! Cohen-Macaulay defect, classification of the CM summand families,
//! Gorenstein verdicts, and the regular-sequence obstruction probe.
//!
//! Depth is never computed directly: for a cyclic group the defect is
//! max(codim of the Sylow fixed space - 2, 0), which is exact.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::{normal_form, reduced_groebner_basis};
use crate::invariants::{
    graded_subalgebra_bases, presentation_series, AlgebraPresentation, GeneratorSet,
    PresentationClass,
};
use crate::matrix::RowSpan;
use crate::poly::{Monomial, MultiPoly};
use crate::rep::{Regime, Representation, Summand};

/// Cohen-Macaulay defect max(codim(W^P) - 2, 0).
pub fn cm_defect(rep: &Representation) -> u32 {
    (rep.sylow_fixed_codim() as u32).saturating_sub(2)
}

/// Multiplicity constraint on the symbolic padding part of a family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Count {
    Exactly(u32),
    AtLeast(u32),
}

impl Count {
    fn admits(&self, n: u32) -> bool {
        match self {
            Count::Exactly(e) => n == *e,
            Count::AtLeast(m) => n >= *m,
        }
    }
}

/// The free part of a family: sign summands V_1^- in characteristic p,
/// nontrivial diagonal summands in characteristic 2 with odd p.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Padding {
    Signs(Count),
    Diagonal(Count),
}

/// One family of the classification: a fixed core of higher summands plus
/// symbolic padding.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Family {
    pub core: Vec<Summand>,
    pub padding: Padding,
}

fn multiset_eq(a: &[Summand], b: &[Summand]) -> bool {
    let count = |v: &[Summand]| {
        let mut m: HashMap<Summand, usize> = HashMap::new();
        for s in v {
            *m.entry(*s).or_default() += 1;
        }
        m
    };
    count(a) == count(b)
}

impl Family {
    /// Membership of a concrete reduced summand list in the family.
    pub fn contains(&self, summands: &[Summand]) -> bool {
        let mut pad = 0u32;
        let mut rest: Vec<Summand> = Vec::new();
        for s in summands {
            let is_pad = match self.padding {
                Padding::Signs(_) => *s == Summand::VMinus(1),
                Padding::Diagonal(_) => matches!(s, Summand::Vi(i) if *i != 0),
            };
            if is_pad {
                pad += 1;
            } else {
                rest.push(*s);
            }
        }
        let count_ok = match self.padding {
            Padding::Signs(c) | Padding::Diagonal(c) => c.admits(pad),
        };
        if !count_ok {
            return false;
        }
        match self.padding {
            // W-block cores match by count; the xi-power index is free.
            Padding::Diagonal(_) => {
                rest.iter().all(|s| matches!(s, Summand::W(_))) && rest.len() == self.core.len()
            }
            Padding::Signs(_) => multiset_eq(&rest, &self.core),
        }
    }

    /// Smallest dimension of a member.
    pub fn min_dimension(&self) -> u32 {
        let core: u32 = self.core.iter().map(|s| s.dimension() as u32).sum();
        let pad = match self.padding {
            Padding::Signs(Count::Exactly(n)) | Padding::Signs(Count::AtLeast(n)) => n,
            Padding::Diagonal(Count::Exactly(n)) | Padding::Diagonal(Count::AtLeast(n)) => n,
        };
        core + pad
    }

    pub fn label(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if !self.core.is_empty() {
            if matches!(self.padding, Padding::Diagonal(_)) {
                parts.push(match self.core.len() {
                    1 => "W".to_string(),
                    n => format!("{n}W"),
                });
            } else {
                // Group equal summands with a multiplicity prefix.
                let mut seen: Vec<(Summand, usize)> = Vec::new();
                for s in &self.core {
                    match seen.iter_mut().find(|(t, _)| t == s) {
                        Some((_, n)) => *n += 1,
                        None => seen.push((*s, 1)),
                    }
                }
                for (s, n) in seen {
                    parts.push(if n == 1 { s.to_string() } else { format!("{n}{s}") });
                }
            }
        }
        match self.padding {
            Padding::Signs(Count::Exactly(0)) => {}
            Padding::Signs(Count::Exactly(1)) => parts.push("V1-".into()),
            Padding::Signs(Count::Exactly(n)) => parts.push(format!("{n}V1-")),
            Padding::Signs(Count::AtLeast(m)) => parts.push(format!("b*V1- (b>={m})")),
            Padding::Diagonal(Count::Exactly(0)) => {}
            Padding::Diagonal(Count::Exactly(n)) => parts.push(format!("{n} diagonal")),
            Padding::Diagonal(Count::AtLeast(m)) => parts.push(format!("diagonal (>={m})")),
        }
        parts.join(" + ")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct ClassifyOptions {
    pub faithful: Option<bool>,
    pub dimension: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct ClassificationResult {
    pub regime: Regime,
    pub families: Vec<Family>,
}

impl ClassificationResult {
    pub fn labels(&self) -> Vec<String> {
        self.families.iter().map(Family::label).collect()
    }
}

/// Reduced multisets of higher summands whose Sylow fixed-space codimension
/// stays at most 2 (each k-dimensional Jordan summand contributes k - 1).
fn small_cores(items: &[(Summand, u32)]) -> Vec<Vec<Summand>> {
    let mut cores: Vec<Vec<Summand>> = vec![vec![]];
    for (i, (s, w)) in items.iter().enumerate() {
        if *w <= 2 {
            cores.push(vec![*s]);
        }
        if *w == 1 {
            for (t, u) in &items[i..] {
                if *u == 1 {
                    cores.push(vec![*s, *t]);
                }
            }
        }
    }
    cores
}

/// Enumerates all reduced summand families with Cohen-Macaulay invariant
/// ring, optionally filtered by faithfulness or total dimension.
pub fn classify_cm(p: u64, characteristic: u64, options: ClassifyOptions) -> Result<ClassificationResult> {
    let regime = Regime::of(p, characteristic)?;
    let mut families: Vec<Family> = Vec::new();

    match regime {
        Regime::CharP => {
            let ks = 2..=(p as u32).min(3);
            let items: Vec<(Summand, u32)> = ks
                .clone()
                .map(|k| (Summand::VPlus(k), k - 1))
                .chain(ks.map(|k| (Summand::VMinus(k), k - 1)))
                .collect();
            for core in small_cores(&items) {
                let has_p_part = !core.is_empty();
                let has_minus = core.iter().any(|s| matches!(s, Summand::VMinus(_)));
                let padding = match options.faithful {
                    // Faithful needs an order-2 part and an order-p part.
                    Some(true) if !has_p_part => continue,
                    Some(true) if has_minus => Padding::Signs(Count::AtLeast(0)),
                    Some(true) => Padding::Signs(Count::AtLeast(1)),
                    Some(false) if has_minus => continue,
                    Some(false) if has_p_part => Padding::Signs(Count::Exactly(0)),
                    Some(false) => Padding::Signs(Count::AtLeast(1)),
                    None if has_p_part => Padding::Signs(Count::AtLeast(0)),
                    None => Padding::Signs(Count::AtLeast(1)),
                };
                families.push(Family { core, padding });
            }
        }
        Regime::Char2P2 => {
            let items = [(Summand::V(2), 1), (Summand::V(3), 2), (Summand::V(4), 3)];
            for core in small_cores(&items) {
                if core.is_empty() {
                    continue;
                }
                // Faithful means the image has order 4: some block of size >= 3.
                let faithful = core.iter().any(|s| matches!(s, Summand::V(k) if *k >= 3));
                if options.faithful.is_some_and(|want| want != faithful) {
                    continue;
                }
                families.push(Family { core, padding: Padding::Signs(Count::Exactly(0)) });
            }
        }
        Regime::Char2POdd => {
            for w in 0u32..=2 {
                if options.faithful.is_some_and(|want| want != (w >= 1)) {
                    continue;
                }
                let min_diag = if w == 0 { 1 } else { 0 };
                families.push(Family {
                    core: vec![Summand::W(1); w as usize],
                    padding: Padding::Diagonal(Count::AtLeast(min_diag)),
                });
            }
        }
    }

    if let Some(n) = options.dimension {
        let mut concrete = Vec::new();
        for f in families {
            let core_dim: u32 = f.core.iter().map(|s| s.dimension() as u32).sum();
            if core_dim > n {
                continue;
            }
            let b = n - core_dim;
            let ok = match f.padding {
                Padding::Signs(c) | Padding::Diagonal(c) => c.admits(b),
            };
            if !ok {
                continue;
            }
            let padding = match f.padding {
                Padding::Signs(_) => Padding::Signs(Count::Exactly(b)),
                Padding::Diagonal(_) => Padding::Diagonal(Count::Exactly(b)),
            };
            concrete.push(Family { core: f.core, padding });
        }
        families = concrete;
    }

    families.sort_by_key(|f| (f.min_dimension(), f.label()));
    families.dedup();
    Ok(ClassificationResult { regime, families })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Yes,
    No,
    Undecided,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Undecided => "undecided",
        }
    }
}

/// A Gorenstein decision together with the rule that produced it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GorensteinVerdict {
    pub verdict: Verdict,
    /// 1: regular presentation class; 2: nonmodular determinant test;
    /// 3: asymmetric h-vector on a CM ring; 4: undecided.
    pub rule: u8,
    pub witness: String,
}

fn palindromic(n: &[i64]) -> bool {
    let rev: Vec<i64> = n.iter().rev().copied().collect();
    rev == n || rev.iter().zip(n).all(|(a, b)| *a == -*b)
}

/// Decision procedure, first applicable rule wins:
/// 1. polynomial/hypersurface/complete-intersection presentation: yes;
/// 2. image order coprime to the characteristic and reflection-free:
///    yes exactly when the image lies in SL (determinant test);
/// 3. Cohen-Macaulay with an asymmetric h-vector: no;
/// 4. otherwise undecided.
pub fn gorenstein_verdict(rep: &Representation, pres: Option<&AlgebraPresentation>) -> GorensteinVerdict {
    if let Some(p) = pres {
        if p.class != PresentationClass::Other {
            return GorensteinVerdict {
                verdict: Verdict::Yes,
                rule: 1,
                witness: format!("presentation class {}", p.class.as_str()),
            };
        }
    }
    let order = rep.generator_order();
    let coprime = order % rep.characteristic() != 0;
    let has_reflection = rep.structure_predicates().has_reflection;
    if coprime && !has_reflection {
        let det = rep.generator().det();
        let in_sl = det == rep.field().one();
        return GorensteinVerdict {
            verdict: if in_sl { Verdict::Yes } else { Verdict::No },
            rule: 2,
            witness: format!(
                "nonmodular reflection-free image of order {order}, det(sigma) = {det}"
            ),
        };
    }
    if cm_defect(rep) == 0 {
        if let Some(series) = pres.and_then(presentation_series) {
            if !palindromic(&series.numerator) {
                return GorensteinVerdict {
                    verdict: Verdict::No,
                    rule: 3,
                    witness: format!("asymmetric h-vector {:?} on a CM ring", series.numerator),
                };
            }
        }
    }
    GorensteinVerdict {
        verdict: Verdict::Undecided,
        rule: 4,
        witness: "no applicable rule".into(),
    }
}

/// Summary facts carried by the CLI and the classification tests.
#[derive(Clone, Debug)]
pub struct StructureReport {
    pub cm_defect: u32,
    pub is_cm: bool,
    pub presentation_class: Option<PresentationClass>,
    pub gorenstein: GorensteinVerdict,
    pub bireflection_ok: bool,
}

/// Whether the image of the characteristic-part subgroup is generated by
/// bireflections (necessary for Cohen-Macaulayness of modular p-group
/// invariants; vacuous when that image is trivial).
pub fn sylow_bireflection_ok(rep: &Representation) -> bool {
    let g = rep.sigma_power(rep.sylow_exponent());
    let ord = g.order(rep.group_order()).expect("group elements have finite order");
    if ord == 1 {
        return true;
    }
    let id = crate::matrix::Matrix::identity(rep.field().clone(), rep.dimension());
    let mut d = ord;
    for a in 1..ord {
        if g.pow(a).sub(&id).rank() <= 2 {
            d = gcd(d, a);
        }
    }
    d == 1
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn structure_report(rep: &Representation, pres: Option<&AlgebraPresentation>) -> StructureReport {
    let defect = cm_defect(rep);
    StructureReport {
        cm_defect: defect,
        is_cm: defect == 0,
        presentation_class: pres.map(|p| p.class),
        gorenstein: gorenstein_verdict(rep, pres),
        bireflection_ok: sylow_bireflection_ok(rep),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProbeVerdict {
    Regular,
    NotRegular,
    Inconclusive,
}

impl ProbeVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProbeVerdict::Regular => "regular",
            ProbeVerdict::NotRegular => "not-regular",
            ProbeVerdict::Inconclusive => "inconclusive",
        }
    }
}

/// Outcome of the regular-sequence probe.
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub verdict: ProbeVerdict,
    pub window: u32,
    /// A subalgebra element m with m * e_r in (e_1..e_{r-1}) but m outside
    /// that ideal, when one exists in the window.
    pub multiplier: Option<MultiPoly>,
    /// Leading monomial of the multiplier reduced against the ideal's
    /// graded piece: no ideal element in that degree has this lead.
    pub certificate_lm: Option<Monomial>,
    /// Full-ring double check: the multiplied element reduces to zero
    /// against a Groebner basis of (e_1..e_{r-1}).
    pub identity_nf_zero: Option<bool>,
}

fn coords(
    f: &MultiPoly,
    index: &HashMap<Monomial, usize>,
    width: usize,
) -> Vec<crate::field::FieldElement> {
    let field = f.ring().field();
    let mut v = vec![field.zero(); width];
    for (m, c) in f.terms() {
        v[*index.get(m).expect("monomial outside degree")] = c.clone();
    }
    v
}

/// Tests whether homogeneous subalgebra elements e_1..e_r form a regular
/// sequence in the subalgebra generated by `gens`, searching a bounded
/// degree window for a zerodivisor certificate on the last element.
///
/// The window defaults to the sum of the element degrees. The certificate
/// is exact: graded pieces of the subalgebra ideal (e_1..e_{r-1}) are
/// computed by linear algebra, so a reported multiplier really lies
/// outside the ideal while its product falls inside.
pub fn regular_sequence_probe(
    elements: &[MultiPoly],
    gens: &GeneratorSet,
    window: Option<u32>,
    budget: u64,
) -> Result<ProbeReport> {
    if elements.is_empty() {
        return Err(Error::InvalidInput("need at least one element".into()));
    }
    let ring = elements[0].ring().clone();
    for e in elements {
        if e.is_zero() || !e.is_homogeneous() {
            return Err(Error::InvalidInput(
                "probe elements must be nonzero and homogeneous".into(),
            ));
        }
        if !ring.same_variables(e.ring()) {
            return Err(Error::RingMismatch("probe elements live in one ring".into()));
        }
    }
    let degs: Vec<u32> = elements.iter().map(|e| e.total_degree()).collect();
    let window = window.unwrap_or_else(|| degs.iter().sum());
    let field = ring.field().clone();

    let max_needed = window.max(*degs.iter().max().unwrap());
    let pieces = graded_subalgebra_bases(&ring, &gens.generators, max_needed);

    // Membership of every element in the subalgebra, degree by degree.
    for (e, d) in elements.iter().zip(&degs) {
        let monos = ring.monomials_of_degree(*d);
        let index: HashMap<Monomial, usize> =
            monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut span = RowSpan::new(field.clone(), monos.len());
        for b in &pieces[*d as usize] {
            span.insert(coords(b, &index, monos.len()));
        }
        if !span.contains(coords(e, &index, monos.len())) {
            return Err(Error::NotInSubalgebra(format!(
                "probe element {e} is not in the subalgebra"
            )));
        }
    }

    let (lead, rest) = elements.split_last().unwrap();
    if rest.is_empty() {
        // A single nonzero element of a domain is always regular.
        return Ok(ProbeReport {
            verdict: ProbeVerdict::Regular,
            window,
            multiplier: None,
            certificate_lm: None,
            identity_nf_zero: None,
        });
    }
    let lead_deg = *degs.last().unwrap();

    // Span of the degree-d piece of the subalgebra ideal (e_1..e_{r-1}).
    let ideal_piece = |d: u32, index: &HashMap<Monomial, usize>, width: usize| {
        let mut span = RowSpan::new(field.clone(), width);
        for (e, de) in rest.iter().zip(&degs) {
            if *de > d {
                continue;
            }
            for b in &pieces[(d - de) as usize] {
                span.insert(coords(&(e * b), index, width));
            }
        }
        span
    };

    for dm in 1..=window.saturating_sub(lead_deg) {
        let monos_m = ring.monomials_of_degree(dm);
        let index_m: HashMap<Monomial, usize> =
            monos_m.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let width_m = monos_m.len();
        let ideal_m = ideal_piece(dm, &index_m, width_m);

        let dp = dm + lead_deg;
        let monos_p = ring.monomials_of_degree(dp);
        let index_p: HashMap<Monomial, usize> =
            monos_p.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let width_p = monos_p.len();
        let ideal_p = ideal_piece(dp, &index_p, width_p);

        // Kernel of m -> [m * e_r] in A_dp / I_dp over the basis of A_dm.
        let basis_m: Vec<&MultiPoly> = pieces[dm as usize].iter().collect();
        if basis_m.is_empty() {
            continue;
        }
        let mut kernel_span = RowSpan::new(field.clone(), width_m);
        let mut pending: Vec<(Vec<crate::field::FieldElement>, Vec<crate::field::FieldElement>)> =
            Vec::new();
        for b in &basis_m {
            let residue = ideal_p.reduce(coords(&(*b * lead), &index_p, width_p));
            pending.push((coords(b, &index_m, width_m), residue));
        }
        // Gaussian elimination on the residues, carrying the multipliers.
        let mut rows: Vec<(Vec<crate::field::FieldElement>, Vec<crate::field::FieldElement>)> =
            Vec::new();
        for (mut mv, mut rv) in pending {
            loop {
                let pivot = rv.iter().position(|c| !c.is_zero());
                match pivot {
                    None => {
                        kernel_span.insert(mv);
                        break;
                    }
                    Some(p) => {
                        if let Some((emv, erv)) =
                            rows.iter().find(|(_, r)| r.iter().position(|c| !c.is_zero()) == Some(p))
                        {
                            let factor = &rv[p] * &erv[p].inv()?;
                            for (a, b) in rv.iter_mut().zip(erv) {
                                *a = &*a - &(&factor * b);
                            }
                            for (a, b) in mv.iter_mut().zip(emv) {
                                *a = &*a - &(&factor * b);
                            }
                        } else {
                            rows.push((mv, rv));
                            break;
                        }
                    }
                }
            }
        }
        // A kernel vector outside the ideal piece certifies a zerodivisor.
        for (_, v) in kernel_span.rows() {
            let residue = ideal_m.reduce(v.clone());
            if residue.iter().any(|c| !c.is_zero()) {
                let multiplier = {
                    let terms = monos_m
                        .iter()
                        .zip(&residue)
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(m, c)| (m.clone(), c.clone()))
                        .collect();
                    MultiPoly::from_terms(&ring, terms)
                };
                let gb = reduced_groebner_basis(rest, budget)?;
                let nf_zero = normal_form(&(&multiplier * lead), &gb).is_zero();
                let certificate_lm = multiplier.leading_monomial().cloned();
                return Ok(ProbeReport {
                    verdict: ProbeVerdict::NotRegular,
                    window,
                    multiplier: Some(multiplier),
                    certificate_lm,
                    identity_nf_zero: Some(nf_zero),
                });
            }
        }
    }

    Ok(ProbeReport {
        verdict: ProbeVerdict::Inconclusive,
        window,
        multiplier: None,
        certificate_lm: None,
        identity_nf_zero: None,
    })
}

//! Singular loci by the Jacobian criterion, exhaustive point counting over
//! small finite fields, fitting point counts to polynomial classes in the
//! symbol L, and the wild McKay comparison for the order-6 group.

use itertools::Itertools;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::invariants::{presentation, AlgebraPresentation, PresentationClass};
use crate::poly::{MultiPoly, Ring};
use crate::rep::{build_representation, Summand};

/// Default cap on exhaustive enumeration size q^n.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// A relation system over the prime field, with the expected codimension
/// of its zero set. Prime-field coefficients let the same system be
/// counted over every F_q of that characteristic.
#[derive(Clone, Debug)]
pub struct AffineVarietyPresentation {
    pub ring: Ring,
    pub relations: Vec<MultiPoly>,
    pub weights: Vec<u32>,
    pub codim: usize,
}

impl AffineVarietyPresentation {
    pub fn new(ring: &Ring, relations: Vec<MultiPoly>, codim: Option<usize>) -> Result<Self> {
        if ring.field().extension_degree() != 1 {
            return Err(Error::InvalidInput(
                "variety presentations require prime-field coefficients".into(),
            ));
        }
        for r in &relations {
            if r.is_zero() {
                return Err(Error::InvalidInput("zero relation".into()));
            }
            if !ring.same_variables(r.ring()) {
                return Err(Error::RingMismatch("relation outside the ambient ring".into()));
            }
        }
        let codim = codim.unwrap_or(relations.len());
        if codim > relations.len() || codim > ring.num_vars() {
            return Err(Error::UnsupportedShape(format!(
                "expected codimension {codim} exceeds the relation system"
            )));
        }
        Ok(AffineVarietyPresentation {
            ring: ring.clone(),
            weights: ring.weights().to_vec(),
            relations,
            codim,
        })
    }

    /// Demotes a presentation's relation ideal to the prime field. The
    /// expected codimension is ambient tags minus the quotient dimension.
    pub fn from_presentation(pres: &AlgebraPresentation) -> Result<Self> {
        let src = pres.map.source();
        let p = src.field().characteristic();
        let prime = Field::new(p, 1)?;
        let ring = Ring::weighted_with_order(
            prime,
            src.var_names().to_vec(),
            src.weights().to_vec(),
            src.order().clone(),
        );
        let relations: Vec<MultiPoly> = pres
            .relations
            .iter()
            .map(|r| {
                for (_, c) in r.terms() {
                    if !c.is_prime_subfield() {
                        return Err(Error::InvalidInput(format!(
                            "relation {r} has coefficients outside the prime field"
                        )));
                    }
                }
                Ok(demote(r, &ring))
            })
            .collect::<Result<_>>()?;
        let codim = src
            .num_vars()
            .checked_sub(pres.ambient_dim)
            .ok_or_else(|| Error::UnsupportedShape("more dimensions than generators".into()))?;
        AffineVarietyPresentation::new(&ring, relations, Some(codim))
    }
}

/// Rewrites a prime-subfield-coefficient polynomial in another ring with
/// the same variables.
fn demote(f: &MultiPoly, target: &Ring) -> MultiPoly {
    let terms = f
        .terms()
        .iter()
        .map(|(m, c)| (m.clone(), target.field().from_int(c.coeffs()[0] as i64)))
        .collect();
    MultiPoly::from_terms(target, terms)
}

fn extension_exponent(characteristic: u64, q: u64) -> Result<usize> {
    let mut m = q;
    let mut k = 0;
    while m > 1 && m % characteristic == 0 {
        m /= characteristic;
        k += 1;
    }
    if m != 1 || k == 0 {
        return Err(Error::InvalidInput(format!(
            "{q} is not a positive power of the characteristic {characteristic}"
        )));
    }
    Ok(k)
}

fn check_cap(q: u64, n: usize, cap: Option<u64>) -> Result<u64> {
    let cap = cap.unwrap_or(DEFAULT_ENUMERATION_CAP);
    let needed = (q as u128).pow(n as u32);
    if needed > cap as u128 {
        return Err(Error::EnumerationCapExceeded { needed, cap });
    }
    Ok(needed as u64)
}

/// Iterates over F_q^n in encoding order, invoking the visitor with each
/// point; the visitor returns whether the point satisfies the system.
fn enumerate_points(
    field: &Field,
    n: usize,
    total: u64,
    mut keep: impl FnMut(&[FieldElement]) -> bool,
) -> Vec<Vec<FieldElement>> {
    let mut out = Vec::new();
    let q = field.order();
    for code in 0..total {
        let mut c = code;
        let point: Vec<FieldElement> = (0..n)
            .map(|_| {
                let e = field.decode(c % q);
                c /= q;
                e
            })
            .collect();
        if keep(&point) {
            out.push(point);
        }
    }
    out
}

/// Exact number of F_q-points of the relation system.
pub fn count_points(pres: &AffineVarietyPresentation, q: u64, cap: Option<u64>) -> Result<u64> {
    let p = pres.ring.field().characteristic();
    let k = extension_exponent(p, q)?;
    let n = pres.ring.num_vars();
    let total = check_cap(q, n, cap)?;
    let fq = Field::new(p, k)?;
    let ring_q = Ring::weighted_with_order(
        fq.clone(),
        pres.ring.var_names().to_vec(),
        pres.weights.clone(),
        pres.ring.order().clone(),
    );
    let lifted: Vec<MultiPoly> = pres.relations.iter().map(|r| demote(r, &ring_q)).collect();
    let points = enumerate_points(&fq, n, total, |pt| {
        lifted.iter().all(|r| r.evaluate(pt).is_zero())
    });
    Ok(points.len() as u64)
}

/// Determinant of a square polynomial matrix by Laplace expansion.
fn poly_det(m: &[Vec<MultiPoly>], ring: &Ring) -> MultiPoly {
    match m.len() {
        0 => ring.one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = ring.zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MultiPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &poly_det(&minor, ring);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// The Jacobian ideal (relations plus all codim-sized minors) and its
/// F_q-points found by exhaustive search.
#[derive(Clone, Debug)]
pub struct SingularLocus {
    pub jacobian_ideal: Vec<MultiPoly>,
    pub points: Vec<Vec<FieldElement>>,
    pub q: u64,
}

pub fn singular_locus(
    pres: &AffineVarietyPresentation,
    q: u64,
    cap: Option<u64>,
) -> Result<SingularLocus> {
    if pres.relations.is_empty() {
        return Ok(SingularLocus { jacobian_ideal: vec![], points: vec![], q });
    }
    let ring = &pres.ring;
    let n = ring.num_vars();
    let c = pres.codim;
    let jacobian: Vec<Vec<MultiPoly>> = pres
        .relations
        .iter()
        .map(|r| (0..n).map(|j| r.partial_derivative(j)).collect())
        .collect();
    let mut ideal = pres.relations.clone();
    for rows in (0..pres.relations.len()).combinations(c) {
        for cols in (0..n).combinations(c) {
            let sub: Vec<Vec<MultiPoly>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| jacobian[i][j].clone()).collect())
                .collect();
            let det = poly_det(&sub, ring);
            if !det.is_zero() && !ideal.contains(&det) {
                ideal.push(det);
            }
        }
    }

    let p = ring.field().characteristic();
    let k = extension_exponent(p, q)?;
    let total = check_cap(q, n, cap)?;
    let fq = Field::new(p, k)?;
    let ring_q = Ring::weighted_with_order(
        fq.clone(),
        ring.var_names().to_vec(),
        pres.weights.clone(),
        ring.order().clone(),
    );
    let lifted: Vec<MultiPoly> = ideal.iter().map(|f| demote(f, &ring_q)).collect();
    let points = enumerate_points(&fq, n, total, |pt| {
        lifted.iter().all(|f| f.evaluate(pt).is_zero())
    });
    Ok(SingularLocus { jacobian_ideal: ideal, points, q })
}

/// An integer polynomial in the class L of the affine line.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MotiveClass {
    /// coeffs[i] is the coefficient of L^i.
    pub coeffs: Vec<i64>,
}

impl MotiveClass {
    pub fn constant(c: i64) -> MotiveClass {
        MotiveClass { coeffs: vec![c] }.trimmed()
    }

    pub fn l_power(k: usize) -> MotiveClass {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        MotiveClass { coeffs }
    }

    fn trimmed(mut self) -> MotiveClass {
        while self.coeffs.len() > 1 && *self.coeffs.last().unwrap() == 0 {
            self.coeffs.pop();
        }
        self
    }

    pub fn add(&self, other: &MotiveClass) -> MotiveClass {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or(0) + other.coeffs.get(i).copied().unwrap_or(0)
            })
            .collect();
        MotiveClass { coeffs }.trimmed()
    }

    pub fn sub(&self, other: &MotiveClass) -> MotiveClass {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or(0) - other.coeffs.get(i).copied().unwrap_or(0)
            })
            .collect();
        MotiveClass { coeffs }.trimmed()
    }

    pub fn scale(&self, c: i64) -> MotiveClass {
        MotiveClass { coeffs: self.coeffs.iter().map(|a| a * c).collect() }.trimmed()
    }

    pub fn evaluate(&self, l: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, c| acc * l + c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

impl std::fmt::Display for MotiveClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "L".to_string(),
                _ => format!("L^{i}"),
            };
            let part = match (i, *c) {
                (0, c) => format!("{c}"),
                (_, 1) => var,
                (_, -1) => format!("-{var}"),
                (_, c) => format!("{c}*{var}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(stripped) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        write!(f, "{out}")
    }
}

/// Lagrange interpolation of point counts as an integer polynomial in q.
/// The fit must be exact and integral; inconsistent or fractional data is
/// reported as a non-polynomial count.
pub fn fit_motive_class(counts: &[(u64, u64)]) -> Result<MotiveClass> {
    if counts.is_empty() {
        return Err(Error::InvalidInput("need at least one point count".into()));
    }
    if !counts.iter().map(|(q, _)| q).all_unique() {
        return Err(Error::InvalidInput("duplicate field sizes in the fit data".into()));
    }
    type Q = Ratio<i128>;
    let mut acc: Vec<Q> = vec![Q::from_integer(0); counts.len()];
    for (i, &(qi, ni)) in counts.iter().enumerate() {
        // Numerator polynomial prod_{j != i} (x - q_j), by coefficient.
        let mut num: Vec<Q> = vec![Q::from_integer(1)];
        let mut denom = Q::from_integer(1);
        for (j, &(qj, _)) in counts.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Q::from_integer(0); num.len() + 1];
            for (k, c) in num.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * Q::from_integer(qj as i128);
            }
            num = next;
            denom *= Q::from_integer(qi as i128 - qj as i128);
        }
        let scale = Q::from_integer(ni as i128) / denom;
        for (k, c) in num.iter().enumerate() {
            acc[k] += c * scale;
        }
    }
    let mut coeffs = Vec::with_capacity(acc.len());
    for c in &acc {
        if !c.is_integer() {
            return Err(Error::NotPolynomialCount(format!(
                "fractional coefficient {c} in the interpolated count"
            )));
        }
        let v = c.to_integer();
        if v > i64::MAX as i128 || v < i64::MIN as i128 {
            return Err(Error::NotPolynomialCount("coefficient overflow".into()));
        }
        coeffs.push(v as i64);
    }
    let class = MotiveClass { coeffs }.trimmed();
    for &(q, n) in counts {
        if class.evaluate(q as i64) != n as i64 {
            return Err(Error::NotPolynomialCount(format!(
                "fit misses the count at q = {q}"
            )));
        }
    }
    Ok(class)
}

/// Comparison data for the wild McKay correspondence on W/C_6.
#[derive(Clone, Debug)]
pub struct McKayReport {
    pub p: u64,
    pub class_of_x: MotiveClass,
    pub class_of_y: MotiveClass,
    pub euler_y: i64,
    pub conj_classes: u64,
    pub matches: bool,
}

/// Builds the two-dimensional W-block quotient, counts its hypersurface
/// model over F_2..F_16, fits the class of X, and applies the resolution
/// decomposition [Y] = [X \ {0}] + 2(L+1) - 1 (two projective lines
/// meeting in a point over the origin).
pub fn mckay_report(p: u64, budget: u64) -> Result<McKayReport> {
    let rep = build_representation(p, 2, &[Summand::W(1)])?;
    let pres = presentation(&rep, (2 * p) as u32, budget)?;
    if pres.class != PresentationClass::Hypersurface {
        return Err(Error::UnsupportedShape(format!(
            "the W quotient for p = {p} is not a hypersurface (class {})",
            pres.class.as_str()
        )));
    }
    let variety = AffineVarietyPresentation::from_presentation(&pres)?;
    let counts: Vec<(u64, u64)> = [2u64, 4, 8, 16]
        .iter()
        .map(|&q| Ok((q, count_points(&variety, q, None)?)))
        .collect::<Result<_>>()?;
    let class_of_x = fit_motive_class(&counts)?;
    let exceptional = MotiveClass::l_power(1)
        .add(&MotiveClass::constant(1))
        .scale(2)
        .sub(&MotiveClass::constant(1));
    let class_of_y = class_of_x.sub(&MotiveClass::constant(1)).add(&exceptional);
    let euler_y = class_of_y.evaluate(1);
    let conj_classes = 2 * p;
    Ok(McKayReport {
        p,
        matches: euler_y == conj_classes as i64,
        class_of_x,
        class_of_y,
        euler_y,
        conj_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(p: u64) -> AffineVarietyPresentation {
        let f = Field::new(p, 1).unwrap();
        let r = Ring::new(f, &["z1", "z2", "z3"]);
        let rel = r.parse("z2^2 - z1*z3").unwrap();
        AffineVarietyPresentation::new(&r, vec![rel], None).unwrap()
    }

    #[test]
    fn cone_counts_and_singular_origin() {
        // q^2 points on the quadric cone: (z1, z2) free with z3 determined
        // when z1 != 0, else z2 = 0 and z3 free.
        for (p, q) in [(3u64, 3u64), (3, 9), (2, 2), (2, 4), (2, 8)] {
            let v = cone(p);
            assert_eq!(count_points(&v, q, None).unwrap(), q * q, "q = {q}");
            let locus = singular_locus(&v, q, None).unwrap();
            assert_eq!(locus.points.len(), 1);
            assert!(locus.points[0].iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn empty_system_is_smooth_affine_space() {
        let f = Field::new(2, 1).unwrap();
        let r = Ring::new(f, &["x", "y"]);
        let v = AffineVarietyPresentation::new(&r, vec![], None).unwrap();
        assert_eq!(count_points(&v, 4, None).unwrap(), 16);
        let locus = singular_locus(&v, 4, None).unwrap();
        assert!(locus.jacobian_ideal.is_empty());
        assert!(locus.points.is_empty());
    }

    #[test]
    fn counts_multiply_over_disjoint_variables() {
        let f = Field::new(2, 1).unwrap();
        let r1 = Ring::new(f.clone(), &["x", "y"]);
        let a = AffineVarietyPresentation::new(&r1, vec![r1.parse("x*y").unwrap()], None).unwrap();
        let r2 = Ring::new(f.clone(), &["z"]);
        let b = AffineVarietyPresentation::new(&r2, vec![r2.parse("z^2").unwrap()], None).unwrap();
        let r3 = Ring::new(f, &["x", "y", "z"]);
        let ab = AffineVarietyPresentation::new(
            &r3,
            vec![r3.parse("x*y").unwrap(), r3.parse("z^2").unwrap()],
            None,
        )
        .unwrap();
        for q in [2u64, 4, 8] {
            let na = count_points(&a, q, None).unwrap();
            let nb = count_points(&b, q, None).unwrap();
            let nab = count_points(&ab, q, None).unwrap();
            assert_eq!(na * nb, nab);
            assert_eq!(na, 2 * q - 1);
            assert_eq!(nb, 1);
        }
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let v = cone(2);
        assert!(matches!(
            count_points(&v, 4, Some(10)),
            Err(Error::EnumerationCapExceeded { needed: 64, cap: 10 })
        ));
        assert!(count_points(&v, 3, None).is_err(), "wrong characteristic");
    }

    #[test]
    fn motive_fitting_matches_known_families() {
        let sq = fit_motive_class(&[(2, 4), (4, 16), (8, 64)]).unwrap();
        assert_eq!(sq, MotiveClass::l_power(2));
        assert_eq!(sq.to_string(), "L^2");
        let line = fit_motive_class(&[(2, 2), (4, 4)]).unwrap();
        assert_eq!(line, MotiveClass::l_power(1));
        let plane = fit_motive_class(&[(2, 7), (4, 21), (8, 73)]).unwrap();
        assert_eq!(plane.coeffs, vec![1, 1, 1]);
        assert_eq!(plane.to_string(), "L^2 + L + 1");
        assert!(matches!(
            fit_motive_class(&[(2, 1), (4, 2)]),
            Err(Error::NotPolynomialCount(_))
        ));
        assert!(fit_motive_class(&[(2, 1), (2, 2)]).is_err());
    }

    #[test]
    fn affine_space_fits_l_powers() {
        let f = Field::new(2, 1).unwrap();
        for n in 1..=3usize {
            let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            let r = Ring::with_names(f.clone(), names);
            let v = AffineVarietyPresentation::new(&r, vec![], None).unwrap();
            let counts: Vec<(u64, u64)> = [2u64, 4, 8, 16]
                .iter()
                .map(|&q| (q, count_points(&v, q, None).unwrap()))
                .collect();
            assert_eq!(fit_motive_class(&counts).unwrap(), MotiveClass::l_power(n));
        }
    }

    #[test]
    fn mckay_chain_for_the_order_six_group() {
        let report = mckay_report(3, 200_000).unwrap();
        assert_eq!(report.class_of_x, MotiveClass::l_power(2));
        assert_eq!(report.class_of_y.coeffs, vec![0, 2, 1]);
        assert_eq!(report.class_of_y.to_string(), "L^2 + 2*L");
        assert_eq!(report.euler_y, 3);
        assert_eq!(report.conj_classes, 6);
        assert!(!report.matches);
        assert!(matches!(mckay_report(5, 200_000), Err(Error::UnsupportedShape(_))));
    }
}

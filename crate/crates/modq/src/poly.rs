//! Sparse multivariate polynomials over finite fields.
//!
//! A [`Ring`] fixes the coefficient field, variable names, per-variable
//! weights and the active monomial order. Polynomials store their terms
//! sorted strictly descending in that order, so equality, display and
//! iteration are all canonical.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::Matrix;

/// An exponent vector. The variable count is fixed by the ambient ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// The shape of a monomial order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrderKind {
    /// Weighted degree first, then lexicographic in priority order.
    GradedLex,
    /// Pure lexicographic in priority order.
    Lex,
    /// Elimination order: the first `first_block` variables (in priority
    /// order) are compared graded-lex first, then the remaining block.
    /// Any monomial touching the first block exceeds every monomial that
    /// does not.
    Block { first_block: usize },
}

/// A monomial order together with a variable priority permutation;
/// `priority[0]` is the most significant variable index.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn graded_lex(n: usize) -> MonomialOrder {
        MonomialOrder { kind: OrderKind::GradedLex, priority: (0..n).collect() }
    }

    pub fn lex(n: usize) -> MonomialOrder {
        MonomialOrder { kind: OrderKind::Lex, priority: (0..n).collect() }
    }

    pub fn block(n: usize, first_block: usize) -> MonomialOrder {
        assert!(first_block <= n);
        MonomialOrder { kind: OrderKind::Block { first_block }, priority: (0..n).collect() }
    }

    /// Graded-lex with an explicit priority permutation (highest first).
    pub fn graded_lex_with_priority(priority: Vec<usize>) -> MonomialOrder {
        let mut sorted = priority.clone();
        sorted.sort_unstable();
        assert!(sorted == (0..priority.len()).collect::<Vec<_>>(), "priority must be a permutation");
        MonomialOrder { kind: OrderKind::GradedLex, priority }
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    fn lex_scan(vars: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
        for &v in vars {
            match a.0[v].cmp(&b.0[v]) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }

    fn block_cmp(vars: &[usize], a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        let da: u64 = vars.iter().map(|&v| a.0[v] as u64 * weights[v] as u64).sum();
        let db: u64 = vars.iter().map(|&v| b.0[v] as u64 * weights[v] as u64).sum();
        da.cmp(&db).then_with(|| Self::lex_scan(vars, a, b))
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::GradedLex => a
                .weighted_degree(weights)
                .cmp(&b.weighted_degree(weights))
                .then_with(|| Self::lex_scan(&self.priority, a, b)),
            OrderKind::Lex => Self::lex_scan(&self.priority, a, b),
            OrderKind::Block { first_block } => {
                let (b1, b2) = self.priority.split_at(first_block);
                Self::block_cmp(b1, a, b, weights).then_with(|| Self::block_cmp(b2, a, b, weights))
            }
        }
    }
}

#[derive(Debug)]
struct RingRepr {
    field: Field,
    vars: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
}

/// Handle to a polynomial ring. Cheap to clone; equality is structural.
#[derive(Clone)]
pub struct Ring(Arc<RingRepr>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.vars == other.0.vars
                && self.0.weights == other.0.weights
                && self.0.order == other.0.order)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.0.field, self.0.vars.join(","))
    }
}

impl Ring {
    /// Standard-graded ring with graded-lex order in declaration order.
    pub fn new(field: Field, vars: &[&str]) -> Ring {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        Self::build(field, names, None, None)
    }

    pub fn with_names(field: Field, vars: Vec<String>) -> Ring {
        Self::build(field, vars, None, None)
    }

    pub fn weighted(field: Field, vars: Vec<String>, weights: Vec<u32>) -> Ring {
        Self::build(field, vars, Some(weights), None)
    }

    pub fn weighted_with_order(
        field: Field,
        vars: Vec<String>,
        weights: Vec<u32>,
        order: MonomialOrder,
    ) -> Ring {
        Self::build(field, vars, Some(weights), Some(order))
    }

    fn build(field: Field, vars: Vec<String>, weights: Option<Vec<u32>>, order: Option<MonomialOrder>) -> Ring {
        let n = vars.len();
        let weights = weights.unwrap_or_else(|| vec![1; n]);
        assert_eq!(weights.len(), n);
        assert!(weights.iter().all(|&w| w >= 1), "weights must be positive");
        let order = order.unwrap_or_else(|| MonomialOrder::graded_lex(n));
        assert_eq!(order.priority.len(), n);
        Ring(Arc::new(RingRepr { field, vars, weights, order }))
    }

    /// Same field, variables and weights under a different order.
    pub fn reorder(&self, order: MonomialOrder) -> Ring {
        assert_eq!(order.priority.len(), self.num_vars());
        Ring(Arc::new(RingRepr {
            field: self.0.field.clone(),
            vars: self.0.vars.clone(),
            weights: self.0.weights.clone(),
            order,
        }))
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn num_vars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn weights(&self) -> &[u32] {
        &self.0.weights
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.0.order.compare(a, b, &self.0.weights)
    }

    /// True when `other` shares field and variables (order may differ).
    pub fn same_variables(&self, other: &Ring) -> bool {
        self.0.field == other.0.field && self.0.vars == other.0.vars && self.0.weights == other.0.weights
    }

    pub fn zero(&self) -> MultiPoly {
        MultiPoly { ring: self.clone(), terms: Vec::new() }
    }

    pub fn one(&self) -> MultiPoly {
        self.constant(self.0.field.one())
    }

    pub fn constant(&self, c: FieldElement) -> MultiPoly {
        assert!(c.field() == &self.0.field, "constant from the wrong field");
        if c.is_zero() {
            return self.zero();
        }
        MultiPoly { ring: self.clone(), terms: vec![(Monomial::one(self.num_vars()), c)] }
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        assert!(i < self.num_vars());
        MultiPoly {
            ring: self.clone(),
            terms: vec![(Monomial::var(self.num_vars(), i), self.0.field.one())],
        }
    }

    /// All monomials of total (unweighted) degree `d`, sorted descending.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.num_vars()];
        fn rec(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, left: u32) {
            if pos + 1 == current.len() {
                current[pos] = left;
                out.push(Monomial(current.clone()));
                return;
            }
            for e in (0..=left).rev() {
                current[pos] = e;
                rec(out, current, pos + 1, left - e);
                current[pos] = 0;
            }
        }
        if self.num_vars() == 0 {
            return out;
        }
        rec(&mut out, &mut current, 0, d);
        out.sort_unstable_by(|a, b| self.compare(b, a));
        out
    }

    pub fn parse(&self, text: &str) -> Result<MultiPoly> {
        parse_poly(self, text)
    }
}

/// A sparse polynomial; terms are sorted strictly descending in the ring order.
#[derive(Clone)]
pub struct MultiPoly {
    ring: Ring,
    terms: Vec<(Monomial, FieldElement)>,
}

impl MultiPoly {
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, FieldElement)>) -> MultiPoly {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_unstable_by(|a, b| ring.compare(&b.0, &a.0));
        let mut merged: Vec<(Monomial, FieldElement)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some((last_m, last_c)) if *last_m == m => {
                    *last_c = &*last_c + &c;
                }
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        MultiPoly { ring: ring.clone(), terms: merged }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    /// Maximal weighted degree over the terms; 0 for the zero polynomial.
    pub fn weighted_degree(&self) -> u64 {
        self.terms
            .iter()
            .map(|(m, _)| m.weighted_degree(self.ring.weights()))
            .max()
            .unwrap_or(0)
    }

    /// Maximal total (unweighted) degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// True when all terms share one weighted degree (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.iter().map(|(m, _)| m.weighted_degree(self.ring.weights()));
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> MultiPoly {
        if c.is_zero() {
            return self.ring.zero();
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_term(&self, mono: &Monomial, coeff: &FieldElement) -> MultiPoly {
        if coeff.is_zero() {
            return self.ring.zero();
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c * coeff))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn evaluate(&self, values: &[FieldElement]) -> FieldElement {
        assert_eq!(values.len(), self.ring.num_vars());
        let field = self.ring.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in values.iter().zip(m.exponents()) {
                if e > 0 {
                    term = &term * &v.pow(e as u64);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`; images live in a common
    /// target ring over the same coefficient field.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.ring.num_vars());
        let target = images
            .first()
            .map(|p| p.ring().clone())
            .unwrap_or_else(|| self.ring.clone());
        assert!(images.iter().all(|p| p.ring() == &target), "images must share a ring");
        assert!(target.field() == self.ring.field(), "field mismatch in substitution");
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut term = target.constant(c.clone());
            for (img, &e) in images.iter().zip(m.exponents()) {
                if e > 0 {
                    term = &term * &img.pow(e);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> MultiPoly {
        assert!(var < self.ring.num_vars());
        let field = self.ring.field();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let factor = field.from_int(e as i64);
            let coeff = c * &factor;
            if coeff.is_zero() {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            terms.push((Monomial(exps), coeff));
        }
        MultiPoly::from_terms(&self.ring, terms)
    }

    /// Re-expresses the polynomial in `target`, sending source variable `i`
    /// to target variable `map[i]`; `None` entries must not occur in the
    /// support.
    pub fn map_vars(&self, target: &Ring, map: &[Option<usize>]) -> Result<MultiPoly> {
        assert_eq!(map.len(), self.ring.num_vars());
        assert!(target.field() == self.ring.field(), "field mismatch");
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.num_vars()];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] += e,
                    None => {
                        return Err(Error::InvalidInput(format!(
                            "variable {} occurs in {} but has no image",
                            self.ring.var_names()[i],
                            self
                        )))
                    }
                }
            }
            terms.push((Monomial(exps), c.clone()));
        }
        Ok(MultiPoly::from_terms(target, terms))
    }

    /// The same polynomial viewed in a ring that differs only by order.
    pub fn reordered(&self, target: &Ring) -> MultiPoly {
        assert!(self.ring.same_variables(target), "reorder requires identical variables");
        MultiPoly::from_terms(target, self.terms.clone())
    }

    fn assert_same_ring(&self, other: &MultiPoly) {
        assert!(
            self.ring == other.ring,
            "polynomials from {:?} and {:?} cannot be combined",
            self.ring,
            other.ring
        );
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.assert_same_ring(rhs);
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            match self.ring.compare(&self.terms[i].0, &rhs.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(rhs.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &rhs.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        MultiPoly { ring: self.ring.clone(), terms: out }
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &rhs.neg()
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.assert_same_ring(rhs);
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                terms.push((ma.mul(mb), ca * cb));
            }
        }
        MultiPoly::from_terms(&self.ring, terms)
    }
}

/// Applies a group element to a polynomial: variable `x_j` is replaced by
/// `sum_i g[j][i] * x_i`. For a lower bidiagonal Jordan block with diagonal
/// `e` this sends `x_1` to `e*x_1` and `x_j` to `x_{j-1} + e*x_j`.
pub fn act_on_polynomial(g: &Matrix, f: &MultiPoly) -> MultiPoly {
    let n = f.ring().num_vars();
    assert_eq!(g.nrows(), n, "matrix size must match the variable count");
    assert_eq!(g.ncols(), n);
    assert!(g.field() == f.ring().field(), "field mismatch in group action");
    let images: Vec<MultiPoly> = (0..n)
        .map(|j| {
            let terms = (0..n)
                .filter(|&i| !g.at(j, i).is_zero())
                .map(|i| (Monomial::var(n, i), g.at(j, i).clone()))
                .collect();
            MultiPoly::from_terms(f.ring(), terms)
        })
        .collect();
    f.substitute(&images)
}

fn coeff_string(c: &FieldElement) -> String {
    let s = c.to_string();
    if s.contains('+') || s.contains('*') {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.var_names();
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut factors = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            let part = if factors.is_empty() {
                coeff_string(c)
            } else if c.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", coeff_string(c), factors.join("*"))
            };
            parts.push(part);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// --- parsing ---

/// Splits text at top level (outside parentheses) on `+`/`-` into signed chunks.
fn split_terms(text: &str) -> Result<Vec<(i64, String)>> {
    let mut chunks = Vec::new();
    let mut current = String::new();
    let mut sign = 1i64;
    let mut depth = 0i32;
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced parentheses in {text:?}")));
                }
                current.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if current.trim().is_empty() {
                    if ch == '-' {
                        sign = -sign;
                    }
                } else {
                    chunks.push((sign, std::mem::take(&mut current)));
                    sign = if ch == '-' { -1 } else { 1 };
                }
            }
            _ => current.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in {text:?}")));
    }
    if current.trim().is_empty() {
        return Err(Error::Parse(format!("empty term in {text:?}")));
    }
    chunks.push((sign, current));
    Ok(chunks)
}

/// Splits a term at top level on `*` into factor strings.
fn split_factors(term: &str) -> Result<Vec<String>> {
    let mut factors = Vec::new();
    let mut current = String::new();
    let mut depth = 0i32;
    for ch in term.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth -= 1;
                current.push(ch);
            }
            '*' if depth == 0 => {
                factors.push(std::mem::take(&mut current));
            }
            _ => current.push(ch),
        }
    }
    factors.push(current);
    if factors.iter().any(|f| f.trim().is_empty()) {
        return Err(Error::Parse(format!("empty factor in {term:?}")));
    }
    Ok(factors)
}

fn parse_poly(ring: &Ring, text: &str) -> Result<MultiPoly> {
    let field = ring.field();
    let mut terms = Vec::new();
    for (sign, chunk) in split_terms(text)? {
        let mut coeff = field.from_int(sign);
        let mut exps = vec![0u32; ring.num_vars()];
        for factor in split_factors(&chunk)? {
            let fstr = factor.trim();
            if let Some(inner) = fstr.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
                let c = field.parse_element(inner)?;
                coeff = &coeff * &c;
            } else if fstr.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                let v: i64 = fstr
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer coefficient {fstr:?}")))?;
                coeff = &coeff * &field.from_int(v);
            } else {
                let (name, exp) = match fstr.split_once('^') {
                    Some((n, e)) => {
                        let exp: u32 = e
                            .trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad exponent in {fstr:?}")))?;
                        (n.trim(), exp)
                    }
                    None => (fstr, 1),
                };
                if let Some(idx) = ring.var_index(name) {
                    exps[idx] += exp;
                } else if let Ok(c) = field.parse_element(fstr) {
                    // Bare extension-field coefficient such as `t` or `t^3`.
                    coeff = &coeff * &c;
                } else {
                    return Err(Error::Parse(format!(
                        "unknown variable {name:?} (ring has {:?})",
                        ring.var_names()
                    )));
                }
            }
        }
        terms.push((Monomial(exps), coeff));
    }
    Ok(MultiPoly::from_terms(ring, terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Field {
        Field::new(p, 1).unwrap()
    }

    fn ring3(p: u64) -> Ring {
        Ring::new(gf(p), &["x", "y", "z"])
    }

    #[test]
    fn parse_and_format_are_canonical() {
        let r = ring3(3);
        let f = r.parse("y^2 - 2*x*z - x*y").unwrap();
        assert_eq!(f.to_string(), "2*x*y + x*z + y^2");
        assert_eq!(r.parse(&f.to_string()).unwrap(), f);
        assert_eq!(r.parse("x + x + x").unwrap(), r.zero());
        assert_eq!(r.parse("2*x*y + x*z + y^2").unwrap(), f);
    }

    #[test]
    fn parse_extension_coefficients() {
        let f4 = Field::new(2, 2).unwrap();
        let r = Ring::new(f4.clone(), &["x", "y"]);
        let p = r.parse("(t+1)*x^2 + t*x*y + y").unwrap();
        assert_eq!(p.to_string(), "(1+t)*x^2 + t*x*y + y");
        assert_eq!(r.parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn graded_lex_orders_by_degree_then_priority() {
        let r = ring3(5);
        let m = |s: &str| r.parse(s).unwrap().leading_monomial().unwrap().clone();
        assert_eq!(r.compare(&m("x^2"), &m("x*y")), Ordering::Greater);
        assert_eq!(r.compare(&m("x*y"), &m("y^2")), Ordering::Greater);
        assert_eq!(r.compare(&m("y^3"), &m("x^2")), Ordering::Greater);
        let f = r.parse("x*y + z^3 + y^2").unwrap();
        assert_eq!(f.to_string(), "z^3 + x*y + y^2");
    }

    #[test]
    fn priority_permutation_changes_leading_monomial() {
        // Graded-lex with x2 > x1 > x3 > x4.
        let field = gf(5);
        let vars: Vec<String> = ["x1", "x2", "x3", "x4"].iter().map(|s| s.to_string()).collect();
        let order = MonomialOrder::graded_lex_with_priority(vec![1, 0, 2, 3]);
        let r = Ring::weighted_with_order(field, vars, vec![1; 4], order);
        let l2 = r.parse("x2^2 - x1*x2 - 2*x1*x3").unwrap();
        let lm = l2.leading_monomial().unwrap();
        assert_eq!(lm, &Monomial(vec![0, 2, 0, 0]));
    }

    #[test]
    fn block_order_eliminates_first_block()
    {
        // Variables x, y ahead of u, v.
        let field = gf(2);
        let vars: Vec<String> = ["x", "y", "u", "v"].iter().map(|s| s.to_string()).collect();
        let r = Ring::weighted_with_order(field, vars, vec![1; 4], MonomialOrder::block(4, 2));
        let m = |s: &str| r.parse(s).unwrap().leading_monomial().unwrap().clone();
        // Any monomial with x or y beats any pure u,v monomial.
        assert_eq!(r.compare(&m("y"), &m("u^5*v^5")), Ordering::Greater);
        assert_eq!(r.compare(&m("u*v"), &m("v^2")), Ordering::Greater);
    }

    #[test]
    fn arithmetic_matches_hand_expansion() {
        let r = ring3(2);
        let f = r.parse("x + y").unwrap();
        let cube = f.pow(3);
        assert_eq!(cube, r.parse("x^3 + x^2*y + x*y^2 + y^3").unwrap());
        let g = r.parse("x*y + y^2").unwrap();
        assert_eq!(&g * &g, r.parse("x^2*y^2 + y^4").unwrap());
    }

    #[test]
    fn action_on_jordan_block_follows_calibration() {
        // V_2 in characteristic 2: x -> x, y -> x + y.
        let f2 = gf(2);
        let r = Ring::new(f2.clone(), &["x", "y"]);
        let sigma = Matrix::new(
            f2.clone(),
            2,
            2,
            vec![f2.one(), f2.zero(), f2.one(), f2.one()],
        );
        let y = r.var(1);
        assert_eq!(act_on_polynomial(&sigma, &y), r.parse("x + y").unwrap());
        let h2 = r.parse("x*y + y^2").unwrap();
        assert_eq!(act_on_polynomial(&sigma, &h2), h2);
    }

    #[test]
    fn action_composition_for_powers_of_a_generator() {
        let f5 = gf(5);
        let r = Ring::new(f5.clone(), &["x", "y", "z"]);
        // 3x3 Jordan block with diagonal -1.
        let mut entries = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let v = if i == j {
                    f5.from_int(-1)
                } else if i == j + 1 {
                    f5.one()
                } else {
                    f5.zero()
                };
                entries.push(v);
            }
        }
        let sigma = Matrix::new(f5.clone(), 3, 3, entries);
        let f = r.parse("x^2*y + 3*z^4 + x*y*z").unwrap();
        for a in 0..4u64 {
            for b in 0..4u64 {
                let lhs = act_on_polynomial(&sigma.pow(a + b), &f);
                let rhs = act_on_polynomial(&sigma.pow(a), &act_on_polynomial(&sigma.pow(b), &f));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn substitution_and_evaluation_agree() {
        let r = ring3(7);
        let f = r.parse("x^2*z + 3*y^2 + 5").unwrap();
        let imgs = [
            r.parse("y + 1").unwrap(),
            r.parse("x*z").unwrap(),
            r.parse("z^2 + x").unwrap(),
        ];
        let g = f.substitute(&imgs);
        let field = gf(7);
        let vals = [field.from_int(2), field.from_int(3), field.from_int(4)];
        let img_vals: Vec<_> = imgs.iter().map(|p| p.evaluate(&vals)).collect();
        assert_eq!(g.evaluate(&vals), f.evaluate(&img_vals));
    }

    #[test]
    fn derivative_in_positive_characteristic() {
        let r = ring3(3);
        let f = r.parse("x^3 + x^2*y + z").unwrap();
        assert_eq!(f.partial_derivative(0), r.parse("2*x*y").unwrap());
        assert_eq!(f.partial_derivative(2), r.one());
    }

    #[test]
    fn weighted_degrees_and_homogeneity() {
        let field = gf(2);
        let vars: Vec<String> = ["u1", "u2"].iter().map(|s| s.to_string()).collect();
        let r = Ring::weighted(field, vars, vec![2, 3]);
        let f = r.parse("u1^3 + u2^2").unwrap();
        assert_eq!(f.weighted_degree(), 6);
        assert!(f.is_homogeneous());
        let g = r.parse("u1 + u2").unwrap();
        assert!(!g.is_homogeneous());
    }

    #[test]
    fn monomial_order_is_total_multiplicative_and_well_founded() {
        use proptest::prelude::*;
        let mut runner = proptest::test_runner::TestRunner::deterministic();
        let strat = proptest::collection::vec(0u32..5, 4);
        let orders = [
            MonomialOrder::graded_lex(4),
            MonomialOrder::lex(4),
            MonomialOrder::block(4, 2),
            MonomialOrder::graded_lex_with_priority(vec![2, 0, 3, 1]),
        ];
        let weights = [1u32, 2, 1, 3];
        runner
            .run(&(strat.clone(), strat.clone(), strat), |(a, b, c)| {
                let (a, b, c) = (Monomial(a), Monomial(b), Monomial(c));
                for ord in &orders {
                    // Totality with antisymmetry.
                    let ab = ord.compare(&a, &b, &weights);
                    prop_assert_eq!(ab.reverse(), ord.compare(&b, &a, &weights));
                    if ab == Ordering::Equal {
                        prop_assert_eq!(&a.0, &b.0);
                    }
                    // Multiplicativity.
                    prop_assert_eq!(ab, ord.compare(&a.mul(&c), &b.mul(&c), &weights));
                    // 1 is minimal.
                    let one = Monomial::one(4);
                    if !a.is_one() {
                        prop_assert_eq!(ord.compare(&a, &one, &weights), Ordering::Greater);
                    }
                }
                Ok(())
            })
            .unwrap();
    }
}

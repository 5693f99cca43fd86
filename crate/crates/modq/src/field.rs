//! Prime and prime-power finite fields with deterministic construction.
//!
//! A field is described by its characteristic `p` and extension degree `k`.
//! For `k >= 2` the modulus is the first monic irreducible polynomial of
//! degree `k` in increasing encoding order (see [`Field::new`]), so a given
//! `(p, k)` always produces the same field with the same element encoding.
//! Elements are little-endian coefficient vectors in the generator `t`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq)]
struct FieldRepr {
    p: u64,
    k: usize,
    /// Little-endian coefficients of the monic modulus, length `k + 1`.
    /// `None` exactly when `k == 1`.
    modulus: Option<Vec<u64>>,
}

/// Handle to a finite field `GF(p^k)`. Cheap to clone and compare.
#[derive(Clone)]
pub struct Field(Arc<FieldRepr>);

/// An element of a [`Field`], stored as `k` coefficients below `p`.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<u64>,
}

/// Serializable description of a field, used by the CLI report format.
#[derive(Debug, Clone, Serialize)]
pub struct FieldDescription {
    pub characteristic: u64,
    pub degree: usize,
    pub order: u64,
    pub modulus: Option<String>,
}

const MAX_ORDER: u64 = 1 << 32;

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.k)
        }
    }
}

impl Field {
    /// Builds `GF(p^k)`. Fails unless `p` is prime, `k >= 1` and `p^k` stays
    /// within desk scale. For `k >= 2` the modulus is the first irreducible
    /// monic `t^k + c_{k-1} t^{k-1} + ... + c_0` when candidates are ordered
    /// by the encoding `sum(c_i * p^i)`.
    pub fn new(p: u64, k: usize) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let mut order: u64 = 1;
        for _ in 0..k {
            order = order
                .checked_mul(p)
                .filter(|&q| q <= MAX_ORDER)
                .ok_or_else(|| Error::InvalidField(format!("GF({p}^{k}) exceeds the supported size")))?;
        }
        let modulus = if k == 1 { None } else { Some(find_modulus(p, k)?) };
        Ok(Field(Arc::new(FieldRepr { p, k, modulus })))
    }

    /// Parses a field specification of the form `GF(p)` or `GF(p^k)`.
    pub fn parse_spec(spec: &str) -> Result<Field> {
        let s = spec.trim();
        let inner = s
            .strip_prefix("GF(")
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected GF(p) or GF(p^k), got {spec:?}")))?;
        let (p_str, k_str) = match inner.split_once('^') {
            Some((a, b)) => (a, b),
            None => (inner, "1"),
        };
        let p: u64 = p_str
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad characteristic in {spec:?}")))?;
        let k: usize = k_str
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad extension degree in {spec:?}")))?;
        Field::new(p, k)
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn extension_degree(&self) -> usize {
        self.0.k
    }

    pub fn order(&self) -> u64 {
        self.0.p.pow(self.0.k as u32)
    }

    /// The modulus as an element-style string, e.g. `1+t+t^2`; `None` for prime fields.
    pub fn modulus_string(&self) -> Option<String> {
        self.0.modulus.as_ref().map(|m| format_poly_in_t(m))
    }

    pub fn describe(&self) -> FieldDescription {
        FieldDescription {
            characteristic: self.characteristic(),
            degree: self.extension_degree(),
            order: self.order(),
            modulus: self.modulus_string(),
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![0; self.0.k],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Embeds an integer as a prime-subfield constant.
    pub fn from_int(&self, value: i64) -> FieldElement {
        let p = self.0.p as i64;
        let c = value.rem_euclid(p) as u64;
        let mut coeffs = vec![0; self.0.k];
        coeffs[0] = c;
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// The generator `t` of the extension. Fails for prime fields.
    pub fn gen(&self) -> Result<FieldElement> {
        if self.0.k < 2 {
            return Err(Error::InvalidField(format!("{self} has no extension generator")));
        }
        let mut coeffs = vec![0; self.0.k];
        coeffs[1] = 1;
        Ok(FieldElement {
            field: self.clone(),
            coeffs,
        })
    }

    /// Builds an element from little-endian coefficients (validated).
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.k {
            return Err(Error::InvalidField(format!(
                "{} coefficients exceed extension degree {}",
                coeffs.len(),
                self.0.k
            )));
        }
        let mut full = vec![0; self.0.k];
        for (i, &c) in coeffs.iter().enumerate() {
            full[i] = c % self.0.p;
        }
        Ok(FieldElement {
            field: self.clone(),
            coeffs: full,
        })
    }

    /// Decodes the element with encoding `m = sum(c_i * p^i)`.
    pub fn decode(&self, mut m: u64) -> FieldElement {
        let p = self.0.p;
        let mut coeffs = vec![0; self.0.k];
        for c in coeffs.iter_mut() {
            *c = m % p;
            m /= p;
        }
        debug_assert_eq!(m, 0, "encoding out of range");
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// All elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |m| self.decode(m))
    }

    /// The multiplicative generator with the smallest encoding.
    pub fn multiplicative_generator(&self) -> FieldElement {
        let q1 = self.order() - 1;
        let prime_factors = distinct_prime_factors(q1);
        for m in 1..self.order() {
            let e = self.decode(m);
            if q1 == 0 || prime_factors.iter().all(|&f| !e.pow(q1 / f).is_one()) {
                return e;
            }
        }
        unreachable!("every finite field has a multiplicative generator")
    }

    /// A primitive `n`-th root of unity for prime `n`, derived from the
    /// smallest-encoding multiplicative generator. Deterministic.
    pub fn root_of_unity(&self, n: u64) -> Result<FieldElement> {
        let q = self.order();
        if n == 0 || n == self.characteristic() || (q - 1) % n != 0 {
            return Err(Error::NoSuchRoot { n, q });
        }
        let xi = self.multiplicative_generator().pow((q - 1) / n);
        debug_assert!(xi.pow(n).is_one());
        debug_assert!((1..n).all(|j| !xi.pow(j).is_one()));
        Ok(xi)
    }

    /// Parses an element literal such as `t+1`, `2*t^2`, `0` or `1+t`.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let p = self.0.p as i64;
        let mut acc = self.zero();
        for (sign, term) in split_signed_terms(text)? {
            let (coeff, power) = parse_t_term(&term)?;
            if power >= self.0.k && self.0.k == 1 && power > 0 {
                return Err(Error::Parse(format!("{self} has no generator t (in {text:?})")));
            }
            let c = (sign * coeff).rem_euclid(p) as u64;
            let mut mono = self.zero();
            if power >= self.0.k {
                // Reduce t^power via repeated multiplication by t.
                let t = self.gen()?;
                let mut v = self.from_int(c as i64);
                for _ in 0..power {
                    v = &v * &t;
                }
                mono = v;
            } else {
                mono.coeffs[power] = c;
            }
            acc = &acc + &mono;
        }
        Ok(acc)
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Integer encoding `sum(c_i * p^i)`; defines the deterministic element order.
    pub fn encoding(&self) -> u64 {
        let p = self.field.0.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// True when the element lies in the prime subfield.
    pub fn is_prime_subfield(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.field.0.p;
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect(),
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(self.pow(self.field.order() - 2))
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The Frobenius endomorphism `x -> x^p`.
    pub fn frobenius(&self) -> FieldElement {
        self.pow(self.field.characteristic())
    }

    fn assert_same_field(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "field elements from {} and {} cannot be combined",
            self.field,
            other.field
        );
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_poly_in_t(&self.coeffs))
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let p = self.field.0.p;
        FieldElement {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| (a + b) % p)
                .collect(),
        }
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &rhs.neg()
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let p = self.field.0.p;
        let k = self.field.0.k;
        if k == 1 {
            return FieldElement {
                field: self.field.clone(),
                coeffs: vec![self.coeffs[0] * rhs.coeffs[0] % p],
            };
        }
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        let modulus = self.field.0.modulus.as_ref().expect("extension field");
        reduce_by_modulus(&mut prod, modulus, p);
        prod.truncate(k);
        FieldElement {
            field: self.field.clone(),
            coeffs: prod,
        }
    }
}

/// Reduces `a` (little-endian) by the monic `modulus` in place.
fn reduce_by_modulus(a: &mut Vec<u64>, modulus: &[u64], p: u64) {
    let deg_m = modulus.len() - 1;
    while a.len() > deg_m {
        let lead = *a.last().unwrap();
        let top = a.len() - 1;
        if lead != 0 {
            for (i, &m) in modulus.iter().enumerate().take(deg_m) {
                let idx = top - deg_m + i;
                a[idx] = (a[idx] + (p - m % p) * lead) % p;
            }
        }
        a.pop();
    }
    while a.len() < deg_m {
        a.push(0);
    }
}

fn format_poly_in_t(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let part = match (i, c) {
            (0, _) => format!("{c}"),
            (1, 1) => "t".to_string(),
            (1, _) => format!("{c}*t"),
            (_, 1) => format!("t^{i}"),
            (_, _) => format!("{c}*t^{i}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

/// Splits `a+b-c` into `[(1, "a"), (1, "b"), (-1, "c")]`.
fn split_signed_terms(text: &str) -> Result<Vec<(i64, String)>> {
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut sign = 1i64;
    let mut seen_any = false;
    for ch in text.chars() {
        match ch {
            '+' | '-' if seen_any && !current.trim().is_empty() => {
                terms.push((sign, current.trim().to_string()));
                current = String::new();
                sign = if ch == '-' { -1 } else { 1 };
            }
            '-' if current.trim().is_empty() => {
                sign = -sign;
                seen_any = true;
            }
            '+' if current.trim().is_empty() => {
                seen_any = true;
            }
            _ => {
                if !ch.is_whitespace() {
                    seen_any = true;
                }
                current.push(ch);
            }
        }
    }
    if current.trim().is_empty() {
        return Err(Error::Parse(format!("empty term in {text:?}")));
    }
    terms.push((sign, current.trim().to_string()));
    Ok(terms)
}

/// Parses `c`, `t`, `t^e`, `c*t` or `c*t^e`, returning `(c, e)`.
fn parse_t_term(term: &str) -> Result<(i64, usize)> {
    let t = term.replace(' ', "");
    if t.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let (coeff_str, t_part) = match t.split_once('*') {
        Some((c, rest)) => (Some(c), rest),
        None if t.starts_with('t') => (None, t.as_str()),
        None => (Some(t.as_str()), ""),
    };
    let coeff = match coeff_str {
        Some(c) => c
            .parse::<i64>()
            .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?,
        None => 1,
    };
    let power = if t_part.is_empty() {
        0
    } else if t_part == "t" {
        1
    } else if let Some(e) = t_part.strip_prefix("t^") {
        e.parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?
    } else {
        return Err(Error::Parse(format!("bad term {term:?}")));
    };
    Ok((coeff, power))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut factors = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            factors.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    factors
}

// --- dense F_p[t] arithmetic used only by the modulus search ---

fn pnorm(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    pnorm(&mut out);
    out
}

fn pmod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    pnorm(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let factor = lead * lead_inv % p;
            let shift = r.len() - 1 - dm;
            for (i, &mc) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + (p - mc * factor % p)) % p;
            }
        }
        pnorm(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    pnorm(&mut x);
    pnorm(&mut y);
    while !y.is_empty() {
        let r = pmod(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat inverse; p prime and a != 0 mod p.
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// True when the monic polynomial `f` (little-endian) is irreducible over F_p:
/// `gcd(f, t^(p^i) - t)` must be constant for all `i <= deg(f)/2`.
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    debug_assert!(k >= 1 && f[k] == 1);
    // x := t^(p^i) mod f, starting at i = 0.
    let mut x = pmod(&[0, 1], f, p);
    for _ in 1..=k / 2 {
        // Raise to the p-th power mod f.
        let mut acc = vec![1u64];
        let mut base = x.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = pmod(&pmul(&acc, &base, p), f, p);
            }
            base = pmod(&pmul(&base, &base, p), f, p);
            e >>= 1;
        }
        x = acc;
        // g := gcd(f, x - t)
        let mut diff = x.clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        pnorm(&mut diff);
        if diff.is_empty() {
            return false; // f divides t^(p^i) - t, so f splits into small factors
        }
        let g = pgcd(f, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn find_modulus(p: u64, k: usize) -> Result<Vec<u64>> {
    let count = p.checked_pow(k as u32).unwrap();
    for m in 1..count {
        let mut coeffs = vec![0u64; k + 1];
        let mut v = m;
        for c in coeffs.iter_mut().take(k) {
            *c = v % p;
            v /= p;
        }
        coeffs[k] = 1;
        if poly_is_irreducible(&coeffs, p) {
            return Ok(coeffs);
        }
    }
    Err(Error::ModulusSearchFailure { p, k })
}

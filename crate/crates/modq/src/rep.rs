//! Indecomposable modular representations of the cyclic group of order 2p.
//!
//! Three regimes exist: p = 2 in characteristic 2 (the group C_4), odd p in
//! characteristic p, and odd p in characteristic 2. Each regime has exactly
//! 2p indecomposables; a [`Representation`] is a direct sum of them, stored
//! as the block-diagonal matrix of its generator together with the
//! polynomial ring it acts on.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{is_prime, Field, FieldElement};
use crate::matrix::Matrix;
use crate::poly::Ring;

/// The (characteristic, p) case being computed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Regime {
    /// Characteristic 2, p = 2: the group C_4.
    Char2P2,
    /// Characteristic p > 2: C_2p over the prime field.
    CharP,
    /// Characteristic 2, p odd: C_2p over the minimal field containing a
    /// primitive p-th root of unity.
    Char2POdd,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Char2P2 => "char2_p2",
            Regime::CharP => "char_p",
            Regime::Char2POdd => "char2_p_odd",
        }
    }

    pub fn of(p: u64, characteristic: u64) -> Result<Regime> {
        if !is_prime(p) || !is_prime(characteristic) {
            return Err(Error::UnsupportedRegime { char_p: characteristic, p });
        }
        match (characteristic, p) {
            (2, 2) => Ok(Regime::Char2P2),
            (c, q) if c == q && c > 2 => Ok(Regime::CharP),
            (2, q) if q > 2 => Ok(Regime::Char2POdd),
            _ => Err(Error::UnsupportedRegime { char_p: characteristic, p }),
        }
    }
}

/// One indecomposable summand. The variant fixes the regime it belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Summand {
    /// Jordan block V_k over C_4 in characteristic 2, 1 <= k <= 4.
    V(u32),
    /// Jordan block with diagonal 1, characteristic p > 2, 1 <= k <= p.
    VPlus(u32),
    /// Jordan block with diagonal -1, characteristic p > 2, 1 <= k <= p.
    VMinus(u32),
    /// One-dimensional summand sending the generator to xi^i, 0 <= i <= p-1.
    Vi(u32),
    /// Two-dimensional block [[xi^i, 0], [1, xi^i]], 0 <= i <= p-1.
    W(u32),
}

impl Summand {
    pub fn dimension(&self) -> usize {
        match self {
            Summand::V(k) | Summand::VPlus(k) | Summand::VMinus(k) => *k as usize,
            Summand::Vi(_) => 1,
            Summand::W(_) => 2,
        }
    }

    /// True for the trivial one-dimensional summand of the regime.
    pub fn is_trivial(&self) -> bool {
        matches!(self, Summand::V(1) | Summand::VPlus(1) | Summand::Vi(0))
    }

    fn admissible(&self, regime: Regime, p: u64) -> bool {
        match (regime, self) {
            (Regime::Char2P2, Summand::V(k)) => (1..=4).contains(k),
            (Regime::CharP, Summand::VPlus(k)) | (Regime::CharP, Summand::VMinus(k)) => {
                (1..=p as u32).contains(k)
            }
            (Regime::Char2POdd, Summand::Vi(i)) | (Regime::Char2POdd, Summand::W(i)) => {
                (*i as u64) < p
            }
            _ => false,
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::V(k) | Summand::Vi(k) => write!(f, "V{k}"),
            Summand::VPlus(k) => write!(f, "V{k}+"),
            Summand::VMinus(k) => write!(f, "V{k}-"),
            Summand::W(i) => write!(f, "W{i}"),
        }
    }
}

/// Parses a single summand tag such as `V3`, `V2+`, `V2-`, or `W1`.
/// `V<n>` is a Jordan block when p = 2 and a one-dimensional xi-power
/// summand in the characteristic-2, odd-p regime.
pub fn parse_summand(token: &str, regime: Regime, p: u64) -> Result<Summand> {
    let token = token.trim();
    let err = || Error::Parse(format!("bad summand tag {token:?}"));
    let (head, rest) = token.split_at(1.min(token.len()));
    let (digits, sign) = match rest.strip_suffix('+') {
        Some(d) => (d, Some('+')),
        None => match rest.strip_suffix('-') {
            Some(d) => (d, Some('-')),
            None => (rest, None),
        },
    };
    let k: u32 = digits.parse().map_err(|_| err())?;
    let summand = match (head, sign, regime) {
        ("V", Some('+'), _) => Summand::VPlus(k),
        ("V", Some('-'), _) => Summand::VMinus(k),
        ("V", None, Regime::Char2P2) => Summand::V(k),
        ("V", None, Regime::Char2POdd) => Summand::Vi(k),
        ("V", None, Regime::CharP) => {
            return Err(Error::Parse(format!(
                "summand {token:?} needs a sign (V{k}+ or V{k}-) in characteristic p"
            )))
        }
        ("W", None, _) => Summand::W(k),
        _ => return Err(err()),
    };
    if !summand.admissible(regime, p) {
        return Err(Error::RegimeMismatch(format!(
            "summand {summand} is not admissible for p = {p} in this regime"
        )));
    }
    Ok(summand)
}

/// Parses a comma-separated summand list like `V2+,V2-,V1-` or `W1,V2`.
pub fn parse_summands(text: &str, regime: Regime, p: u64) -> Result<Vec<Summand>> {
    text.split(',').map(|tok| parse_summand(tok, regime, p)).collect()
}

/// The complete list of indecomposables for a regime, in catalog order.
pub fn indecomposable_catalog(p: u64, characteristic: u64) -> Result<Vec<Summand>> {
    let regime = Regime::of(p, characteristic)?;
    Ok(match regime {
        Regime::Char2P2 => (1..=4).map(Summand::V).collect(),
        Regime::CharP => (1..=p as u32)
            .map(Summand::VPlus)
            .chain((1..=p as u32).map(Summand::VMinus))
            .collect(),
        Regime::Char2POdd => (0..p as u32)
            .map(Summand::Vi)
            .chain((0..p as u32).map(Summand::W))
            .collect(),
    })
}

/// Structural facts about the image of the group that drive the
/// Cohen-Macaulay classification.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct StructurePredicates {
    pub faithful: bool,
    pub reduced: bool,
    pub has_reflection: bool,
    pub is_bireflection_group: bool,
    pub sylow_p_fixed_codim: usize,
}

/// A direct sum of indecomposables with its generator matrix and the
/// polynomial ring the group acts on.
#[derive(Clone)]
pub struct Representation {
    p: u64,
    characteristic: u64,
    regime: Regime,
    field: Field,
    summands: Vec<Summand>,
    generator: Matrix,
    ring: Ring,
}

// The block is the scalar times a unipotent lower Jordan block, so the
// minus block is literally the negative of the plus block and the two
// share one Sylow image.
fn jordan_block(field: &Field, k: usize, scalar: FieldElement) -> Matrix {
    let mut m = Matrix::zero(field.clone(), k, k);
    for i in 0..k {
        *m.at_mut(i, i) = scalar.clone();
        if i > 0 {
            *m.at_mut(i, i - 1) = scalar.clone();
        }
    }
    m
}

/// Multiplicative order of `b` modulo the odd prime `p`.
fn order_mod(b: u64, p: u64) -> usize {
    let mut acc = b % p;
    let mut d = 1;
    while acc != 1 {
        acc = acc * b % p;
        d += 1;
    }
    d
}

/// Builds the field of the regime: the prime field, except for odd p in
/// characteristic 2 where the minimal extension containing a primitive p-th
/// root of unity is used.
pub fn regime_field(p: u64, characteristic: u64) -> Result<Field> {
    let regime = Regime::of(p, characteristic)?;
    match regime {
        Regime::Char2P2 => Field::new(2, 1),
        Regime::CharP => Field::new(p, 1),
        Regime::Char2POdd => Field::new(2, order_mod(2, p)),
    }
}

pub fn build_representation(p: u64, characteristic: u64, summands: &[Summand]) -> Result<Representation> {
    let regime = Regime::of(p, characteristic)?;
    if summands.is_empty() {
        return Err(Error::InvalidInput("at least one summand is required".into()));
    }
    for s in summands {
        if !s.admissible(regime, p) {
            return Err(Error::RegimeMismatch(format!(
                "summand {s} is not admissible for p = {p}, characteristic {characteristic}"
            )));
        }
    }
    let field = regime_field(p, characteristic)?;
    let xi = match regime {
        Regime::Char2POdd => Some(field.root_of_unity(p)?),
        _ => None,
    };

    let blocks: Vec<Matrix> = summands
        .iter()
        .map(|s| match s {
            Summand::V(k) | Summand::VPlus(k) => jordan_block(&field, *k as usize, field.one()),
            Summand::VMinus(k) => jordan_block(&field, *k as usize, field.from_int(-1)),
            Summand::Vi(i) => {
                let e = xi.as_ref().unwrap().pow(*i as u64);
                Matrix::new(field.clone(), 1, 1, vec![e])
            }
            Summand::W(i) => {
                let e = xi.as_ref().unwrap().pow(*i as u64);
                Matrix::new(
                    field.clone(),
                    2,
                    2,
                    vec![e.clone(), field.zero(), field.one(), e],
                )
            }
        })
        .collect();
    let generator = Matrix::block_diagonal(&blocks);
    debug_assert!(generator.pow(2 * p).is_identity());

    let dim = generator.nrows();
    let names: Vec<String> = if dim <= 3 {
        ["x", "y", "z"][..dim].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=dim).map(|i| format!("x{i}")).collect()
    };
    let ring = Ring::with_names(field.clone(), names);

    Ok(Representation {
        p,
        characteristic,
        regime,
        field,
        summands: summands.to_vec(),
        generator,
        ring,
    })
}

impl Representation {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn group_order(&self) -> u64 {
        2 * self.p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dimension(&self) -> usize {
        self.generator.nrows()
    }

    pub fn sigma_power(&self, a: u64) -> Matrix {
        self.generator.pow(a % self.group_order())
    }

    /// Order of the generator in GL(V); equals 2p exactly when faithful.
    pub fn generator_order(&self) -> u64 {
        self.generator.order(self.group_order()).expect("order divides 2p")
    }

    /// Exponent s such that sigma^s generates the Sylow subgroup for the
    /// field characteristic: the index-2 subgroup in characteristic p, the
    /// order-2 subgroup for odd p in characteristic 2, and all of C_4 when
    /// p = 2.
    pub fn sylow_exponent(&self) -> u64 {
        match self.regime {
            Regime::Char2P2 => 1,
            Regime::CharP => 2,
            Regime::Char2POdd => self.p,
        }
    }

    /// codim of the fixed space of the Sylow subgroup for the characteristic.
    pub fn sylow_fixed_codim(&self) -> usize {
        let s = self.sigma_power(self.sylow_exponent());
        s.sub(&Matrix::identity(self.field.clone(), self.dimension())).rank()
    }

    pub fn structure_predicates(&self) -> StructurePredicates {
        let order = self.generator_order();
        let id = Matrix::identity(self.field.clone(), self.dimension());
        let mut ranks = Vec::with_capacity(order as usize);
        let mut power = id.clone();
        for _ in 1..order {
            power = power.mul(&self.generator);
            ranks.push(power.sub(&id).rank());
        }
        let has_reflection = ranks.iter().any(|&r| r == 1);
        // The image is a bi-reflection group when its elements of rank at
        // most 2 generate it; in a cyclic group of order m the subgroup
        // generated by {sigma^a} is determined by gcd(a, m).
        let mut g = order;
        for (a, &r) in (1..order).zip(&ranks) {
            if r <= 2 {
                g = gcd(g, a);
            }
        }
        StructurePredicates {
            faithful: order == self.group_order(),
            reduced: !self.summands.iter().any(|s| s.is_trivial()),
            has_reflection,
            is_bireflection_group: g == 1,
            sylow_p_fixed_codim: self.sylow_fixed_codim(),
        }
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tags: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        write!(
            f,
            "Representation(p={}, char={}, {} over {})",
            self.p,
            self.characteristic,
            tags.join("+"),
            self.field
        )
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(p: u64, c: u64, tags: &str) -> Representation {
        let regime = Regime::of(p, c).unwrap();
        let summands = parse_summands(tags, regime, p).unwrap();
        build_representation(p, c, &summands).unwrap()
    }

    #[test]
    fn catalogs_match_the_three_regimes() {
        let c4: Vec<String> = indecomposable_catalog(2, 2).unwrap().iter().map(|s| s.to_string()).collect();
        assert_eq!(c4, ["V1", "V2", "V3", "V4"]);
        let c6: Vec<String> = indecomposable_catalog(3, 3).unwrap().iter().map(|s| s.to_string()).collect();
        assert_eq!(c6, ["V1+", "V2+", "V3+", "V1-", "V2-", "V3-"]);
        let c6w: Vec<String> = indecomposable_catalog(3, 2).unwrap().iter().map(|s| s.to_string()).collect();
        assert_eq!(c6w, ["V0", "V1", "V2", "W0", "W1", "W2"]);
        assert!(matches!(
            indecomposable_catalog(5, 3),
            Err(Error::UnsupportedRegime { char_p: 3, p: 5 })
        ));
    }

    #[test]
    fn generator_orders_follow_faithfulness() {
        // C_4 in characteristic 2.
        assert_eq!(rep(2, 2, "V1").generator_order(), 1);
        assert_eq!(rep(2, 2, "V2").generator_order(), 2);
        assert_eq!(rep(2, 2, "V3").generator_order(), 4);
        assert_eq!(rep(2, 2, "V4").generator_order(), 4);
        // Characteristic p: plus blocks have order p, minus blocks 2p
        // (except the sign representation of order 2).
        for p in [3u64, 5] {
            for k in 2..=p as u32 {
                assert_eq!(rep(p, p, &format!("V{k}+")).generator_order(), p);
                assert_eq!(rep(p, p, &format!("V{k}-")).generator_order(), 2 * p);
            }
            assert_eq!(rep(p, p, "V1-").generator_order(), 2);
            assert_eq!(rep(p, p, "V1+").generator_order(), 1);
        }
    }

    #[test]
    fn w_block_over_f4_matches_the_display() {
        let r = rep(3, 2, "W1");
        assert_eq!(r.field().order(), 4);
        let g = r.generator();
        assert_eq!(g.at(0, 0).to_string(), "t");
        assert!(g.at(0, 1).is_zero());
        assert!(g.at(1, 0).is_one());
        assert_eq!(g.at(1, 1).to_string(), "t");
        assert_eq!(r.generator_order(), 6);
        assert_eq!(rep(3, 2, "W0").generator_order(), 2);
        assert_eq!(rep(3, 2, "V1").generator_order(), 3);
        assert_eq!(rep(3, 2, "V0").generator_order(), 1);
        // Minimal extension degrees: ord of 2 mod 5 is 4, mod 7 is 3.
        assert_eq!(rep(5, 2, "W1").field().order(), 16);
        assert_eq!(rep(7, 2, "W1").field().order(), 8);
    }

    #[test]
    fn generator_power_2p_is_identity_everywhere() {
        for (p, c) in [(2u64, 2u64), (3, 3), (5, 5), (3, 2), (5, 2)] {
            for s in indecomposable_catalog(p, c).unwrap() {
                let r = build_representation(p, c, &[s]).unwrap();
                assert!(r.sigma_power(2 * p).is_identity(), "{s} at ({p},{c})");
            }
        }
    }

    #[test]
    fn sylow_fixed_codim_is_rank_of_sylow_generator_minus_one() {
        // rank(sigma^2 - 1) = k - 1 on each V_k^{+-}.
        for p in [3u64, 5] {
            for k in 1..=p as u32 {
                assert_eq!(rep(p, p, &format!("V{k}+")).sylow_fixed_codim(), (k - 1) as usize);
                assert_eq!(rep(p, p, &format!("V{k}-")).sylow_fixed_codim(), (k - 1) as usize);
            }
        }
        // Additivity over direct sums.
        assert_eq!(rep(5, 5, "V2+,V2-").sylow_fixed_codim(), 2);
        assert_eq!(rep(5, 5, "V2+,V2-,V1-,V1-").sylow_fixed_codim(), 2);
        // Odd p in characteristic 2: rank(sigma^p - 1) is 0 on V_i, 1 on W_j.
        assert_eq!(rep(5, 2, "V1,V2").sylow_fixed_codim(), 0);
        assert_eq!(rep(5, 2, "W1,W2,V3").sylow_fixed_codim(), 2);
        // p = 2: the Sylow subgroup is all of C_4, so s = 1.
        assert_eq!(rep(2, 2, "V4").sylow_fixed_codim(), 3);
        assert_eq!(rep(2, 2, "V3").sylow_fixed_codim(), 2);
    }

    #[test]
    fn predicates_match_hand_computations() {
        let pr = rep(5, 5, "V2+,V2-").structure_predicates();
        assert!(pr.reduced && pr.faithful);
        assert_eq!(pr.sylow_p_fixed_codim, 2);

        // Diagonal xi-power action has no reflections.
        let pr = rep(5, 2, "V1,V2").structure_predicates();
        assert!(!pr.has_reflection);

        // sigma^3 on W_0 is [[1,0],[1,1]], a transvection.
        let pr = rep(3, 2, "W0").structure_predicates();
        assert!(pr.has_reflection);

        // V_4/C_4: only sigma^2 is a bi-reflection, generating the proper
        // subgroup of order 2.
        let pr = rep(2, 2, "V4").structure_predicates();
        assert!(!pr.is_bireflection_group);
        let pr = rep(2, 2, "V3").structure_predicates();
        assert!(pr.is_bireflection_group);

        // Trivial summands break reducedness.
        assert!(!rep(5, 5, "V2+,V1+").structure_predicates().reduced);
        assert!(!rep(3, 2, "V0,W1").structure_predicates().reduced);
    }

    #[test]
    fn parser_rejects_bad_tags() {
        let charp = Regime::of(5, 5).unwrap();
        assert!(parse_summand("V2", charp, 5).is_err());
        assert!(parse_summand("V6+", charp, 5).is_err());
        assert!(parse_summand("W1", charp, 5).is_err());
        let char2 = Regime::of(5, 2).unwrap();
        assert!(parse_summand("V5", char2, 5).is_err());
        assert!(parse_summand("W5", char2, 5).is_err());
        assert!(parse_summand("V2-", char2, 5).is_err());
        assert!(parse_summands("V2+,V2-,V1-", charp, 5).is_ok());
        assert!(build_representation(5, 5, &[Summand::W(1)]).is_err());
    }

    #[test]
    fn ring_variable_names_track_dimension() {
        assert_eq!(rep(2, 2, "V3").ring().var_names(), &["x", "y", "z"]);
        assert_eq!(
            rep(2, 2, "V2,V2").ring().var_names(),
            &["x1", "x2", "x3", "x4"]
        );
        assert_eq!(rep(5, 2, "V1,V2").ring().var_names(), &["x", "y"]);
    }
}

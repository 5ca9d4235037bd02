//! Ordinals below epsilon-zero in Cantor normal form and the fast-growing
//! hierarchy
//!
//! ```text
//! f_0(n)     = 2^n
//! f_{a+1}(n) = 2^{f_a(n)}
//! f_l(n)     = max_{k <= n} f_{l[k]}(n)     l a limit
//! ```
//!
//! Values too large for the bit cap are kept as towers of twos.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub const DEFAULT_CAP_BITS: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("ordinal syntax error at byte {0}")]
    Syntax(usize),
    #[error("terms must have strictly decreasing exponents")]
    NonCanonical,
    #[error("coefficients must be positive")]
    ZeroCoefficient,
    #[error("{0} is not a limit ordinal")]
    NotLimit(Ordinal),
    #[error("dominance check needs alpha < beta, got {0} and {1}")]
    NotIncreasing(Ordinal, Ordinal),
}

/// Cantor normal form: `w^e1*c1 + w^e2*c2 + ...` with `e1 > e2 > ...` and
/// every `ci >= 1`. Zero is the empty sum.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal(Vec<(Ordinal, u64)>);

impl Ordinal {
    pub fn zero() -> Ordinal {
        Ordinal(Vec::new())
    }

    pub fn finite(n: u64) -> Ordinal {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal(vec![(Ordinal::zero(), n)])
        }
    }

    pub fn omega() -> Ordinal {
        Ordinal(vec![(Ordinal::finite(1), 1)])
    }

    /// Build from terms, checking canonical order.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Ordinal, OrdinalError> {
        if terms.iter().any(|t| t.1 == 0) {
            return Err(OrdinalError::ZeroCoefficient);
        }
        if terms.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(OrdinalError::NonCanonical);
        }
        Ok(Ordinal(terms))
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_limit(&self) -> bool {
        self.0.last().is_some_and(|(e, _)| !e.is_zero())
    }

    /// Split off the finite tail: `self = base + m` with `base` zero or a
    /// limit.
    pub fn split_finite(&self) -> (Ordinal, u64) {
        match self.0.last() {
            Some((e, m)) if e.is_zero() => (Ordinal(self.0[..self.0.len() - 1].to_vec()), *m),
            _ => (self.clone(), 0),
        }
    }

    fn plus_term(mut self, exp: Ordinal, coeff: u64) -> Ordinal {
        if coeff > 0 {
            self.0.push((exp, coeff));
        }
        self
    }

    /// Standard fundamental sequence of a limit ordinal.
    pub fn fundamental(&self, k: u64) -> Result<Ordinal, OrdinalError> {
        if !self.is_limit() {
            return Err(OrdinalError::NotLimit(self.clone()));
        }
        let (beta, c) = self.0.last().cloned().unwrap();
        let mut gamma = Ordinal(self.0[..self.0.len() - 1].to_vec());
        if c > 1 {
            gamma.0.push((beta.clone(), c - 1));
        }
        Ok(if beta.is_limit() {
            gamma.plus_term(beta.fundamental(k)?, 1)
        } else {
            let (pred, _) = beta.predecessor();
            gamma.plus_term(pred, k)
        })
    }

    /// For a successor, its predecessor and `true`.
    fn predecessor(&self) -> (Ordinal, bool) {
        match self.split_finite() {
            (base, m) if m > 0 => (base.plus_term(Ordinal::zero(), m - 1), true),
            _ => (self.clone(), false),
        }
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            let o = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            f.write_str("w")?;
            if *e != Ordinal::finite(1) {
                if e.0.len() == 1 && (e.0[0].1 == 1 || e.0[0].0.is_zero()) {
                    write!(f, "^{e}")?;
                } else {
                    write!(f, "^({e})")?;
                }
            }
            if *c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.s.get(self.i).is_some_and(u8::is_ascii_whitespace) {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn numeral(&mut self) -> Result<u64, OrdinalError> {
        self.skip_ws();
        let start = self.i;
        while self.s.get(self.i).is_some_and(u8::is_ascii_digit) {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[start..self.i])
            .unwrap()
            .parse()
            .map_err(|_| OrdinalError::Syntax(start))
    }

    fn sum(&mut self) -> Result<Ordinal, OrdinalError> {
        let mut terms = vec![self.term()?];
        while self.eat(b'+') {
            terms.push(self.term()?);
        }
        // a sum of zero terms such as "0" contributes nothing
        let terms: Vec<_> = terms.into_iter().flatten().collect();
        Ordinal::from_terms(terms)
    }

    fn term(&mut self) -> Result<Option<(Ordinal, u64)>, OrdinalError> {
        if self.eat(b'w') {
            let exp = if self.eat(b'^') {
                self.exponent()?
            } else {
                Ordinal::finite(1)
            };
            let coeff = if self.eat(b'*') { self.numeral()? } else { 1 };
            if coeff == 0 {
                return Err(OrdinalError::ZeroCoefficient);
            }
            Ok(Some((exp, coeff)))
        } else {
            let n = self.numeral()?;
            Ok((n > 0).then(|| (Ordinal::zero(), n)))
        }
    }

    fn exponent(&mut self) -> Result<Ordinal, OrdinalError> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.sum()?;
                if !self.eat(b')') {
                    return Err(OrdinalError::Syntax(self.i));
                }
                Ok(e)
            }
            Some(b'w') => {
                self.i += 1;
                let inner = if self.eat(b'^') {
                    self.exponent()?
                } else {
                    Ordinal::finite(1)
                };
                Ok(Ordinal(vec![(inner, 1)]))
            }
            _ => Ok(Ordinal::finite(self.numeral()?)),
        }
    }
}

/// Parse `w^e*c + ...` with sugar `w`, `w*k`, `w^k`, plain numerals and
/// parenthesised exponents. Terms out of canonical order are rejected.
pub fn ord_parse(text: &str) -> Result<Ordinal, OrdinalError> {
    let mut p = Parser {
        s: text.as_bytes(),
        i: 0,
    };
    let o = p.sum()?;
    if p.peek().is_some() {
        return Err(OrdinalError::Syntax(p.i));
    }
    Ok(o)
}

impl FromStr for Ordinal {
    type Err = OrdinalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ord_parse(s)
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

pub fn ord_compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

/// A natural, exact or as `2^2^...^top` with `height` twos.
///
/// Towers are kept with `top >= 2` and `top` not a power of two `2^e` with
/// `e >= 2`, which makes the representation unique among towers. Equality
/// and order are by value.
#[derive(Debug, Clone)]
pub enum TowerInt {
    Exact(BigUint),
    Tower { height: u64, top: BigUint },
}

fn exact_log2(n: &BigUint) -> Option<u64> {
    (!n.is_zero() && n.count_ones() == 1).then(|| n.bits() - 1)
}

impl TowerInt {
    pub fn tower(mut height: u64, mut top: BigUint) -> TowerInt {
        if height == 0 {
            return TowerInt::Exact(top);
        }
        while let Some(e) = exact_log2(&top).filter(|&e| e >= 2) {
            height += 1;
            top = BigUint::from(e);
        }
        TowerInt::Tower { height, top }
    }

    /// `2^self`, exact when the result fits in `cap_bits` bits.
    pub fn pow2(&self, cap_bits: u64) -> TowerInt {
        match self {
            TowerInt::Exact(m) => match m.to_u64() {
                Some(e) if e < cap_bits => TowerInt::Exact(BigUint::one() << e),
                _ => TowerInt::tower(1, m.clone()),
            },
            TowerInt::Tower { height, top } => TowerInt::Tower {
                height: height + 1,
                top: top.clone(),
            },
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, TowerInt::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&BigUint> {
        match self {
            TowerInt::Exact(n) => Some(n),
            _ => None,
        }
    }

    /// `self` with one fewer level: the exponent of a tower.
    fn lower(height: u64, top: &BigUint) -> TowerInt {
        if height == 1 {
            TowerInt::Exact(top.clone())
        } else {
            TowerInt::Tower {
                height: height - 1,
                top: top.clone(),
            }
        }
    }
}

/// Compare `2^x` with `a`.
fn cmp_pow2(x: &TowerInt, a: &BigUint) -> Ordering {
    if a.is_zero() {
        return Ordering::Greater;
    }
    // a lies in [2^(b-1), 2^b)
    let b1 = TowerInt::Exact(BigUint::from(a.bits() - 1));
    match x.cmp(&b1) {
        Ordering::Greater => Ordering::Greater,
        Ordering::Less => Ordering::Less,
        Ordering::Equal if exact_log2(a).is_some() => Ordering::Equal,
        Ordering::Equal => Ordering::Less,
    }
}

/// Exact value comparison.
impl Ord for TowerInt {
    fn cmp(&self, other: &Self) -> Ordering {
        use TowerInt::*;
        match (self, other) {
            (Exact(a), Exact(b)) => a.cmp(b),
            (Tower { height, top }, Exact(a)) => cmp_pow2(&TowerInt::lower(*height, top), a),
            (Exact(_), Tower { .. }) => other.cmp(self).reverse(),
            (Tower { height: h, top: t }, Tower { height: g, top: u }) => match h.cmp(g) {
                Ordering::Equal => t.cmp(u),
                // strip the common levels; towers are strictly increasing
                Ordering::Greater => TowerInt::Tower {
                    height: h - g,
                    top: t.clone(),
                }
                .cmp(&Exact(u.clone())),
                Ordering::Less => TowerInt::Exact(t.clone()).cmp(&TowerInt::Tower {
                    height: g - h,
                    top: u.clone(),
                }),
            },
        }
    }
}

impl PartialEq for TowerInt {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for TowerInt {}

impl PartialOrd for TowerInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TowerInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerInt::Exact(n) => write!(f, "{n}"),
            TowerInt::Tower { height, top } => write!(f, "tower({height}, {top})"),
        }
    }
}

impl Serialize for TowerInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            TowerInt::Exact(n) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("exact", &n.to_string())?;
                m.end()
            }
            TowerInt::Tower { height, top } => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("tower", height)?;
                m.serialize_entry("top", &top.to_string())?;
                m.end()
            }
        }
    }
}

#[derive(Deserialize)]
struct TowerWire {
    exact: Option<String>,
    tower: Option<u64>,
    top: Option<String>,
}

impl<'de> Deserialize<'de> for TowerInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = TowerWire::deserialize(d)?;
        let num = |s: String| s.parse::<BigUint>().map_err(D::Error::custom);
        match (w.exact, w.tower, w.top) {
            (Some(n), None, None) => Ok(TowerInt::Exact(num(n)?)),
            (None, Some(height), Some(top)) => Ok(TowerInt::tower(height, num(top)?)),
            _ => Err(D::Error::custom("expected {exact} or {tower, top}")),
        }
    }
}

/// Evaluator with memoisation of `(alpha, n)`.
pub struct Fgh {
    cap_bits: u64,
    memo: HashMap<(Ordinal, u64), TowerInt>,
}

impl Fgh {
    pub fn new(cap_bits: u64) -> Fgh {
        Fgh {
            cap_bits,
            memo: HashMap::new(),
        }
    }

    pub fn eval(&mut self, alpha: &Ordinal, n: u64) -> TowerInt {
        if let Some(v) = self.memo.get(&(alpha.clone(), n)) {
            return v.clone();
        }
        let (base, m) = alpha.split_finite();
        let mut v = if base.is_zero() {
            TowerInt::Exact(BigUint::from(n)).pow2(self.cap_bits)
        } else {
            let mut best: Option<TowerInt> = None;
            for k in 0..=n {
                let lk = base.fundamental(k).expect("base is a limit");
                let v = self.eval(&lk, n);
                if best.as_ref().is_none_or(|b| v > *b) {
                    best = Some(v);
                }
            }
            best.unwrap()
        };
        for _ in 0..m {
            v = v.pow2(self.cap_bits);
        }
        self.memo.insert((alpha.clone(), n), v.clone());
        v
    }
}

pub fn fgh_eval(alpha: &Ordinal, n: u64, cap_bits: u64) -> TowerInt {
    Fgh::new(cap_bits).eval(alpha, n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceRow {
    pub n: u64,
    pub f_alpha: TowerInt,
    pub f_beta: TowerInt,
    pub order: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceReport {
    pub alpha: Ordinal,
    pub beta: Ordinal,
    pub cap_bits: u64,
    pub rows: Vec<DominanceRow>,
    /// First tested point with `f_beta(n) > f_alpha(n)`.
    pub first_crossing: Option<u64>,
    /// `f_beta >= f_alpha` at every tested point from the crossing on.
    pub holds_after_crossing: bool,
    /// Exponents at or above `w^w^w` are representable but untested.
    pub untested_territory: bool,
}

fn order_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    }
}

/// Compare `f_alpha` and `f_beta` at the given points. Reports what was
/// seen at those points only.
pub fn dominance_check(
    alpha: &Ordinal,
    beta: &Ordinal,
    points: &[u64],
    cap_bits: u64,
) -> Result<DominanceReport, OrdinalError> {
    if alpha >= beta {
        return Err(OrdinalError::NotIncreasing(alpha.clone(), beta.clone()));
    }
    let mut fgh = Fgh::new(cap_bits);
    let mut points = points.to_vec();
    points.sort_unstable();
    points.dedup();
    let rows: Vec<DominanceRow> = points
        .iter()
        .map(|&n| {
            let f_alpha = fgh.eval(alpha, n);
            let f_beta = fgh.eval(beta, n);
            DominanceRow {
                n,
                order: order_name(f_alpha.cmp(&f_beta)).to_string(),
                f_alpha,
                f_beta,
            }
        })
        .collect();
    let first_crossing = rows.iter().find(|r| r.f_beta > r.f_alpha).map(|r| r.n);
    let holds_after_crossing = first_crossing.is_some_and(|c| {
        rows.iter()
            .filter(|r| r.n >= c)
            .all(|r| r.f_beta >= r.f_alpha)
    });
    let www = ord_parse("w^w^w").unwrap();
    Ok(DominanceReport {
        alpha: alpha.clone(),
        beta: beta.clone(),
        cap_bits,
        rows,
        first_crossing,
        holds_after_crossing,
        untested_territory: *beta >= www,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn o(s: &str) -> Ordinal {
        ord_parse(s).unwrap()
    }

    fn exact(n: u64) -> TowerInt {
        TowerInt::Exact(BigUint::from(n))
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            o("w*2+3").terms(),
            &[(Ordinal::finite(1), 2), (Ordinal::zero(), 3)]
        );
        assert_eq!(o("w^w").terms(), &[(Ordinal::omega(), 1)]);
        assert_eq!(ord_parse("1+w"), Err(OrdinalError::NonCanonical));
        assert_eq!(ord_parse("w+w"), Err(OrdinalError::NonCanonical));
        assert_eq!(ord_parse("w*0"), Err(OrdinalError::ZeroCoefficient));
        assert!(ord_parse("w^").is_err());
        assert!(ord_parse("w)").is_err());
        assert_eq!(o("0"), Ordinal::zero());
        for s in [
            "0",
            "7",
            "w",
            "w*2+3",
            "w^2*3+w+1",
            "w^w",
            "w^(w+1)",
            "w^w^w",
            "w^(w*2)*4+w^3+5",
        ] {
            assert_eq!(o(s).to_string(), s);
        }
    }

    #[test]
    fn compare_examples() {
        assert_eq!(ord_compare(&o("w"), &o("5")), Ordering::Greater);
        assert_eq!(ord_compare(&o("w*2+1"), &o("w*2")), Ordering::Greater);
        assert_eq!(ord_compare(&o("w^w"), &o("w*9")), Ordering::Greater);
        assert_eq!(ord_compare(&o("w^2"), &o("w^2")), Ordering::Equal);
        assert_eq!(ord_compare(&o("w^(w+1)"), &o("w^w*100")), Ordering::Greater);
    }

    #[test]
    fn fundamental_examples() {
        assert_eq!(o("w").fundamental(3).unwrap(), o("3"));
        for k in 0..5 {
            assert_eq!(
                o("w*2").fundamental(k).unwrap(),
                Ordinal::omega().plus_term(Ordinal::zero(), k)
            );
        }
        assert_eq!(o("w^2").fundamental(2).unwrap(), o("w*2"));
        assert_eq!(o("w^w").fundamental(3).unwrap(), o("w^3"));
        assert_eq!(o("w^(w+1)").fundamental(2).unwrap(), o("w^w*2"));
        assert!(o("w+1").fundamental(1).is_err());
        assert!(Ordinal::zero().fundamental(1).is_err());
    }

    #[test]
    fn fundamental_sequences_climb_below_the_limit() {
        for s in [
            "w", "w*2", "w^2+w*3", "w^2", "w^2*2+w", "w^w", "w^(w+1)", "w^w^w",
        ] {
            let l = o(s);
            for k in 0..6 {
                let a = l.fundamental(k).unwrap();
                let b = l.fundamental(k + 1).unwrap();
                assert!(a < l && b < l, "{s}[{k}]");
                assert!(a < b, "{s}[{k}]");
            }
        }
    }

    #[test]
    fn fgh_values() {
        let cap = DEFAULT_CAP_BITS;
        assert_eq!(fgh_eval(&o("0"), 3, cap), exact(8));
        assert_eq!(fgh_eval(&o("1"), 2, cap), exact(16));
        assert_eq!(fgh_eval(&o("w"), 2, cap), exact(65536));
        assert_eq!(fgh_eval(&o("w+1"), 1, cap), exact(16));
        assert_eq!(
            fgh_eval(&o("2"), 3, cap),
            TowerInt::Exact(BigUint::one() << 256u32)
        );
        assert_eq!(
            fgh_eval(&o("3"), 3, cap),
            TowerInt::Tower {
                height: 4,
                top: BigUint::from(3u32)
            }
        );
    }

    #[test]
    fn limit_rule_matches_explicit_formulas() {
        let cap = DEFAULT_CAP_BITS;
        for n in 0..4 {
            let by_k = (0..=n)
                .map(|k| fgh_eval(&Ordinal::finite(k), n, cap))
                .max()
                .unwrap();
            assert_eq!(fgh_eval(&o("w"), n, cap), by_k);
            let by_k = (0..=n)
                .map(|k| fgh_eval(&Ordinal::omega().plus_term(Ordinal::zero(), k), n, cap))
                .max()
                .unwrap();
            assert_eq!(fgh_eval(&o("w*2"), n, cap), by_k);
        }
    }

    #[test]
    fn successor_rule_and_monotonicity() {
        let cap = 1 << 16;
        for a in ["0", "1", "2", "w", "w+1"] {
            for n in 0..5 {
                let fa = fgh_eval(&o(a), n, cap);
                let (base, m) = o(a).split_finite();
                let next = fgh_eval(&base.plus_term(Ordinal::zero(), m + 1), n, cap);
                assert!(next > fa);
                if let (Some(x), Some(y)) = (fa.as_exact(), next.as_exact()) {
                    assert_eq!(*y, BigUint::one() << x.to_u64().unwrap());
                }
                let later = fgh_eval(&o(a), n + 1, cap);
                assert!(later > fa, "{a} at {n}");
            }
        }
    }

    #[test]
    fn tower_normalisation() {
        // 2^256 = 2^2^2^3
        assert_eq!(
            exact(256).pow2(100),
            TowerInt::Tower {
                height: 3,
                top: BigUint::from(3u32)
            }
        );
        assert_eq!(
            TowerInt::tower(1, BigUint::from(65536u32)),
            TowerInt::tower(4, BigUint::from(2u32))
        );
    }

    #[test]
    fn tower_comparison_is_exact() {
        let t = |h, top: u64| TowerInt::tower(h, BigUint::from(top));
        // 2^2^5 = 2^32 against exact neighbours
        assert_eq!(t(2, 5).cmp(&exact(1 << 32)), Ordering::Equal);
        assert_eq!(t(2, 5).cmp(&exact((1 << 32) - 1)), Ordering::Greater);
        assert_eq!(t(2, 5).cmp(&exact((1 << 32) + 1)), Ordering::Less);
        // height alone does not decide: 2^2^2^3 = 2^256 < 2^1000
        assert!(t(3, 3) < t(1, 1000));
        assert!(t(3, 5) > t(1, 1000));
        assert!(t(4, 3) < t(3, 1_000_000));
        assert!(t(5, 3) < t(3, 1_000_000));
        assert!(t(6, 3) > t(3, 1_000_000));
    }

    proptest! {
        #[test]
        fn tower_order_matches_exact_order(h1 in 1u64..3, t1 in 2u64..12, h2 in 1u64..3, t2 in 2u64..12) {
            let value = |h: u64, t: u64| {
                let mut v = BigUint::from(t);
                for _ in 0..h {
                    v = BigUint::one() << v.to_u64().unwrap();
                }
                v
            };
            let (a, b) = (value(h1, t1), value(h2, t2));
            let ta = TowerInt::tower(h1, BigUint::from(t1));
            let tb = TowerInt::tower(h2, BigUint::from(t2));
            prop_assert_eq!(ta.cmp(&tb), a.cmp(&b));
            prop_assert_eq!(ta.cmp(&TowerInt::Exact(b.clone())), a.cmp(&b));
        }

        #[test]
        fn ordinal_text_round_trips(a in 0u64..4, b in 0u64..4, c in 0u64..4) {
            let mut s = Vec::new();
            if a > 0 { s.push(format!("w^2*{a}")); }
            if b > 0 { s.push(format!("w*{b}")); }
            if c > 0 { s.push(c.to_string()); }
            let text = if s.is_empty() { "0".to_string() } else { s.join("+") };
            let p = o(&text);
            prop_assert_eq!(o(&p.to_string()), p);
        }
    }

    #[test]
    fn dominance_examples() {
        let cap = DEFAULT_CAP_BITS;
        let r = dominance_check(&o("0"), &o("1"), &[1, 2, 3], cap).unwrap();
        let strs: Vec<(String, String)> = r
            .rows
            .iter()
            .map(|x| (x.f_alpha.to_string(), x.f_beta.to_string()))
            .collect();
        assert_eq!(
            strs,
            vec![
                ("2".into(), "4".into()),
                ("4".into(), "16".into()),
                ("8".into(), "256".into())
            ]
        );
        assert_eq!(r.first_crossing, Some(1));
        assert!(r.holds_after_crossing);
        let r = dominance_check(&o("w"), &o("w+1"), &[2], cap).unwrap();
        assert_eq!(r.rows[0].order, "<");
        assert!(dominance_check(&o("w"), &o("w"), &[1], cap).is_err());
    }

    #[test]
    fn serde_shapes() {
        let j = serde_json::to_string(&exact(8)).unwrap();
        assert_eq!(j, r#"{"exact":"8"}"#);
        let t = TowerInt::tower(4, BigUint::from(3u32));
        let j = serde_json::to_string(&t).unwrap();
        assert_eq!(j, r#"{"tower":4,"top":"3"}"#);
        assert_eq!(serde_json::from_str::<TowerInt>(&j).unwrap(), t);
        assert_eq!(serde_json::to_string(&o("w^w+1")).unwrap(), r#""w^w+1""#);
    }
}

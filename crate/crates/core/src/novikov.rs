//! Exact arithmetic for the Novikov field restricted to finite sums with
//! rational exponents, plus a rational-function embedding for linear algebra.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NovikovError {
    #[error("cannot parse rational `{0}`")]
    Parse(String),
    #[error("scale {scale} does not clear the denominator of exponent {exp}")]
    Scale { scale: u64, exp: Rat },
    #[error("rational function {0} is not a Laurent polynomial in the scaled variable")]
    NotLaurent(String),
}

/// A reduced rational number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(n: i64, d: i64) -> Self {
        Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rat(r)
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Representative of `self` mod 1 in `[0, 1)`.
    pub fn frac(&self) -> Rat {
        Rat(&self.0 - self.0.floor())
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn recip(&self) -> Rat {
        Rat(self.0.recip())
    }

    pub fn pow(&self, e: u32) -> Rat {
        Rat(num_traits::pow(self.0.clone(), e as usize))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = NovikovError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || NovikovError::Parse(s.to_string());
        match t.split_once('/') {
            None => t.parse::<BigInt>().map(|n| Rat(BigRational::from_integer(n))).map_err(|_| err()),
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d: BigInt = d.trim().parse().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(Rat(BigRational::new(n, d)))
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            S(String),
            I(i64),
        }
        match Raw::deserialize(d)? {
            Raw::S(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::I(i) => Ok(Rat::int(i)),
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat((&self.0).$m(&o.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                Rat(self.0.$m(o.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat(self.0.$m(&o.0))
            }
        }
    };
}
rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);
rat_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

/// A rational number or `+inf`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ExtendedRat {
    Finite(Rat),
    Inf,
}

impl ExtendedRat {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedRat::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtendedRat::Finite(r) => Some(r),
            ExtendedRat::Inf => None,
        }
    }

    /// `inf - r = inf`.
    pub fn sub_finite(&self, r: &Rat) -> ExtendedRat {
        match self {
            ExtendedRat::Finite(a) => ExtendedRat::Finite(a - r),
            ExtendedRat::Inf => ExtendedRat::Inf,
        }
    }

    pub fn min(self, o: ExtendedRat) -> ExtendedRat {
        if o < self {
            o
        } else {
            self
        }
    }
}

impl Ord for ExtendedRat {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (ExtendedRat::Finite(a), ExtendedRat::Finite(b)) => a.cmp(b),
            (ExtendedRat::Finite(_), ExtendedRat::Inf) => Ordering::Less,
            (ExtendedRat::Inf, ExtendedRat::Finite(_)) => Ordering::Greater,
            (ExtendedRat::Inf, ExtendedRat::Inf) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtendedRat {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for ExtendedRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRat::Finite(r) => write!(f, "{r}"),
            ExtendedRat::Inf => write!(f, "inf"),
        }
    }
}

impl From<Rat> for ExtendedRat {
    fn from(r: Rat) -> Self {
        ExtendedRat::Finite(r)
    }
}

/// A finite sum `Σ c λ^e` with rational coefficients and exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NovikovElement {
    terms: BTreeMap<Rat, Rat>,
}

impl NovikovElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rat::one(), Rat::zero())
    }

    pub fn monomial(coeff: Rat, exp: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        NovikovElement { terms }
    }

    /// The constant `c λ^0`.
    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, Rat::zero())
    }

    /// λ^e
    pub fn lambda(exp: Rat) -> Self {
        Self::monomial(Rat::one(), exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (Rat, Rat)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (c, e) in it {
            out.add_term(c, e);
        }
        out
    }

    pub fn add_term(&mut self, coeff: Rat, exp: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(c) => {
                *c = &*c + &coeff;
                if c.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &Rat) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn mdeg(&self) -> ExtendedRat {
        match self.terms.keys().next() {
            Some(e) => ExtendedRat::Finite(e.clone()),
            None => ExtendedRat::Inf,
        }
    }

    pub fn evaluate_at_one(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |acc, c| acc + c)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NovikovElement { terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect() }
    }

    /// Multiplication by λ^s.
    pub fn shift(&self, s: &Rat) -> Self {
        NovikovElement { terms: self.terms.iter().map(|(e, a)| (e + s, a.clone())).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(c.clone(), e.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(-c, e.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rat::int(-1))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }

    /// Least common multiple of the exponent denominators (1 for zero).
    pub fn exponent_denominator_lcm(&self) -> BigInt {
        self.terms.keys().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
    }
}

impl fmt::Display for NovikovElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{c}*l^({e})")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Debug for NovikovElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Minimum of the component `mdeg`s; `inf` for an empty or all-zero tuple.
pub fn mdeg_tuple<'a, I: IntoIterator<Item = &'a NovikovElement>>(v: I) -> ExtendedRat {
    v.into_iter().map(|a| a.mdeg()).min().unwrap_or(ExtendedRat::Inf)
}

/// Dense univariate polynomial over `Rat`, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rat, deg: usize) -> Self {
        let mut v = vec![Rat::zero(); deg + 1];
        v[deg] = c;
        Poly::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_default();
                let b = o.coeffs.get(i).cloned().unwrap_or_default();
                a + b
            })
            .collect();
        Poly::from_coeffs(v)
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(v)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.lead();
        if d.valuation() == Some(dd) {
            let inv = lead.recip();
            let split = dd.min(self.coeffs.len());
            let rem = Poly::from_coeffs(self.coeffs[..split].to_vec());
            let quot = Poly::from_coeffs(self.coeffs[split..].iter().map(|c| c * &inv).collect());
            return (quot, rem);
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * b);
                }
                quot[k] = c;
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lead().recip())
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c}*m^{i}"))
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

fn monomial_degree(p: &Poly) -> Option<usize> {
    let v = p.valuation()?;
    (p.degree() == Some(v)).then_some(v)
}

/// A reduced fraction of polynomials in μ = λ^{1/scale}; the denominator is monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
    scale: u64,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly, scale: u64) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        assert!(scale > 0);
        if num.is_zero() {
            return RationalFunction { num, den: Poly::constant(Rat::one()), scale };
        }
        let g = match (monomial_degree(&num), monomial_degree(&den)) {
            (_, Some(k)) => Poly::monomial(Rat::one(), k.min(num.valuation().unwrap())),
            (Some(k), _) => Poly::monomial(Rat::one(), k.min(den.valuation().unwrap())),
            _ => num.gcd(&den),
        };
        let (mut n, _) = num.div_rem(&g);
        let (mut d, _) = den.div_rem(&g);
        let l = d.lead();
        n = n.scale(&l.recip());
        d = d.scale(&l.recip());
        RationalFunction { num: n, den: d, scale }
    }

    pub fn zero(scale: u64) -> Self {
        RationalFunction { num: Poly::zero(), den: Poly::constant(Rat::one()), scale }
    }

    pub fn one(scale: u64) -> Self {
        RationalFunction { num: Poly::constant(Rat::one()), den: Poly::constant(Rat::one()), scale }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn same_scale(&self, o: &Self) {
        assert_eq!(self.scale, o.scale, "mixing rational functions of different scales");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_scale(o);
        if self.den == o.den {
            return RationalFunction::new(self.num.add(&o.num), self.den.clone(), self.scale);
        }
        RationalFunction::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den), self.scale)
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone(), scale: self.scale }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_scale(o);
        RationalFunction::new(self.num.mul(&o.num), self.den.mul(&o.den), self.scale)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        RationalFunction::new(self.den.clone(), self.num.clone(), self.scale)
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?}) [mu = l^(1/{})]", self.num, self.den, self.scale)
    }
}

/// Embeds `a` into Q(μ), μ = λ^{1/scale}. Negative exponents go into a monomial denominator.
pub fn to_rational_function(a: &NovikovElement, scale: u64) -> Result<RationalFunction, NovikovError> {
    if scale == 0 {
        return Err(NovikovError::Scale { scale, exp: Rat::zero() });
    }
    let mut ints = Vec::with_capacity(a.len());
    for (e, c) in a.terms() {
        let k = e * &Rat::int(scale as i64);
        if !k.is_integer() {
            return Err(NovikovError::Scale { scale, exp: e.clone() });
        }
        let k = k.to_i64().ok_or_else(|| NovikovError::Scale { scale, exp: e.clone() })?;
        ints.push((k, c.clone()));
    }
    if ints.is_empty() {
        return Ok(RationalFunction::zero(scale));
    }
    let low = ints.iter().map(|(k, _)| *k).min().unwrap().min(0);
    let top = ints.iter().map(|(k, _)| *k).max().unwrap();
    let mut coeffs = vec![Rat::zero(); (top - low + 1) as usize];
    for (k, c) in ints {
        coeffs[(k - low) as usize] = c;
    }
    let den = Poly::monomial(Rat::one(), (-low) as usize);
    Ok(RationalFunction::new(Poly::from_coeffs(coeffs), den, scale))
}

/// Inverse of [`to_rational_function`]; requires a monomial denominator.
pub fn from_rational_function(f: &RationalFunction) -> Result<NovikovElement, NovikovError> {
    if f.is_zero() {
        return Ok(NovikovElement::zero());
    }
    let den = f.denominator();
    let dv = den.valuation().unwrap();
    if den.degree() != Some(dv) {
        return Err(NovikovError::NotLaurent(format!("{f:?}")));
    }
    let dc = den.lead();
    let scale = Rat::int(f.scale() as i64);
    let mut out = NovikovElement::zero();
    for (i, c) in f.numerator().coeffs().iter().enumerate() {
        if !c.is_zero() {
            out.add_term(c / &dc, Rat::int(i as i64 - dv as i64) / scale.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn mono(c: &str, e: &str) -> NovikovElement {
        NovikovElement::monomial(r(c), r(e))
    }

    #[test]
    fn rat_text() {
        assert_eq!(r("6/4").to_string(), "3/2");
        assert_eq!(r("-4/2").to_string(), "-2");
        assert_eq!(r("0").to_string(), "0");
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    #[test]
    fn add_examples() {
        assert!(mono("1", "1/2").add(&mono("-1", "1/2")).is_zero());
        let s = mono("3", "1/2").add(&mono("2", "-1/3"));
        assert_eq!(s.to_string(), "2*l^(-1/3)+3*l^(1/2)");
        let s = mono("1", "1/120").add(&mono("1", "2/5")).add(&mono("1", "2/5"));
        assert_eq!(s, mono("1", "1/120").add(&mono("2", "2/5")));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(mono("1", "1/2").mul(&mono("2", "1/3")), mono("2", "5/6"));
        assert_eq!(mono("8", "2/5").mul(&mono("1", "1/120")), mono("8", "49/120"));
        assert!(mono("5", "7").mul(&NovikovElement::zero()).is_zero());
    }

    #[test]
    fn mdeg_examples() {
        let a = mono("3", "1/2").add(&mono("-2", "-1/3"));
        assert_eq!(a.mdeg(), ExtendedRat::Finite(r("-1/3")));
        assert_eq!(NovikovElement::zero().mdeg(), ExtendedRat::Inf);
        assert_eq!(mono("1", "49/120").mdeg().to_string(), "49/120");
        assert_eq!(mdeg_tuple(&[mono("1", "1"), mono("1", "0")]), ExtendedRat::Finite(Rat::zero()));
        assert_eq!(mdeg_tuple(&[NovikovElement::zero(), NovikovElement::zero()]), ExtendedRat::Inf);
        assert_eq!(mdeg_tuple(&[]), ExtendedRat::Inf);
        let t = [mono("1", "1/120"), NovikovElement::zero(), mono("-1", "-2")];
        assert_eq!(mdeg_tuple(&t), ExtendedRat::Finite(r("-2")));
    }

    #[test]
    fn extended_order() {
        assert!(ExtendedRat::Inf > ExtendedRat::Finite(Rat::int(1_000_000)));
        assert_eq!(ExtendedRat::Inf.sub_finite(&Rat::int(3)), ExtendedRat::Inf);
        assert_eq!(ExtendedRat::Inf.to_string(), "inf");
    }

    #[test]
    fn rational_function_examples() {
        let a = mono("1", "1/2").add(&mono("1", "1/3"));
        let f = to_rational_function(&a, 6).unwrap();
        assert_eq!(f.numerator().coeffs(), &[Rat::zero(), Rat::zero(), Rat::one(), Rat::one()]);
        assert_eq!(f.denominator(), &Poly::constant(Rat::one()));
        assert!(to_rational_function(&NovikovElement::zero(), 5).unwrap().is_zero());
        let f = to_rational_function(&mono("8", "2/5"), 120).unwrap();
        assert_eq!(f.numerator(), &Poly::monomial(Rat::int(8), 48));
        assert!(to_rational_function(&mono("1", "1/7"), 6).is_err());
    }

    #[test]
    fn negative_exponents_round_trip() {
        let a = mono("2", "-1/3").add(&mono("-5", "1/2"));
        let f = to_rational_function(&a, 6).unwrap();
        assert_eq!(from_rational_function(&f).unwrap(), a);
    }

    #[test]
    fn evaluate_at_one_examples() {
        assert_eq!(mono("1", "1/120").evaluate_at_one(), Rat::one());
        assert_eq!(mono("3", "1/2").add(&mono("-2", "-1/3")).evaluate_at_one(), Rat::one());
        assert_eq!(NovikovElement::zero().evaluate_at_one(), Rat::zero());
    }

    #[test]
    fn field_ops_on_rational_functions() {
        let x = RationalFunction::new(Poly::from_coeffs(vec![Rat::int(-1), Rat::one()]), Poly::constant(Rat::one()), 1);
        let y = RationalFunction::new(Poly::from_coeffs(vec![Rat::one(), Rat::one()]), Poly::constant(Rat::one()), 1);
        let q = x.div(&y);
        assert_eq!(q.mul(&y), x);
        let z = x.mul(&y).div(&x);
        assert_eq!(z, y);
        assert!(x.sub(&x).is_zero());
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-20i64..20, 1i64..8).prop_map(|(n, d)| Rat::new(n, d))
    }

    fn arb_elem() -> impl Strategy<Value = NovikovElement> {
        prop::collection::vec((arb_rat(), arb_rat()), 0..5).prop_map(NovikovElement::from_terms)
    }

    proptest! {
        #[test]
        fn mdeg_is_a_valuation(a in arb_elem(), b in arb_elem()) {
            if !a.is_zero() && !b.is_zero() {
                let (ma, mb) = (a.mdeg(), b.mdeg());
                let prod = a.mul(&b).mdeg();
                prop_assert_eq!(prod, ExtendedRat::Finite(ma.finite().unwrap() + mb.finite().unwrap()));
            }
            let s = a.add(&b).mdeg();
            let m = a.mdeg().min(b.mdeg());
            prop_assert!(s >= m);
            if a.mdeg() != b.mdeg() {
                prop_assert_eq!(s, m);
            }
        }

        #[test]
        fn evaluation_is_a_ring_map(a in arb_elem(), b in arb_elem()) {
            prop_assert_eq!(a.mul(&b).evaluate_at_one(), a.evaluate_at_one() * b.evaluate_at_one());
            prop_assert_eq!(a.add(&b).evaluate_at_one(), a.evaluate_at_one() + b.evaluate_at_one());
        }

        #[test]
        fn rational_function_round_trip(a in arb_elem()) {
            let scale = a.exponent_denominator_lcm().to_u64().unwrap();
            let f = to_rational_function(&a, scale).unwrap();
            prop_assert_eq!(from_rational_function(&f).unwrap(), a);
        }

        #[test]
        fn embedding_is_multiplicative(a in arb_elem(), b in arb_elem()) {
            let scale = num_integer::Integer::lcm(&a.exponent_denominator_lcm(), &b.exponent_denominator_lcm()).to_u64().unwrap();
            let fa = to_rational_function(&a, scale).unwrap();
            let fb = to_rational_function(&b, scale).unwrap();
            let fab = to_rational_function(&a.mul(&b), scale).unwrap();
            prop_assert_eq!(fa.mul(&fb), fab);
        }
    }
}

//! Exact scalars over a declared real basis.
//!
//! A scalar is a rational coefficient vector over a finite list of real basis
//! elements whose first entry is always the constant 1. Two scalars over the
//! same basis are equal iff their coefficient vectors are equal (the basis is
//! declared rationally independent; this module never verifies independence,
//! it only exploits it). Signs of nonzero values are decided by interval
//! arithmetic at escalating precision; equality never consults intervals.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub type Rat = BigRational;

/// Decimal digits per escalation level, ceil(bits * log10(2)) for
/// 64, 128, ..., 4096 bits.
const DIGIT_LADDER: &[u32] = &[20, 39, 78, 155, 309, 617, 1233];

fn bits_for_level(level: usize) -> u32 {
    64u32 << level.min(6)
}

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("scalars belong to different bases ({0} vs {1})")]
    BasisMismatch(String, String),
    #[error("sign undecided after interval evaluation at {digits} digits (~{bits} bits): {context}")]
    PrecisionExhausted {
        digits: u32,
        bits: u32,
        context: String,
    },
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("product ({0})*({1}) is not representable over this basis")]
    Unrepresentable(String, String),
    #[error("cannot parse rational coefficient {0:?}")]
    BadCoefficient(String),
}

/// How a basis element's decimal expansion is produced.
#[derive(Debug, Clone)]
enum Provider {
    /// The constant 1 (always element 0).
    One,
    /// sqrt(n) for a non-square integer n, recomputable to any precision.
    Sqrt(u64),
    /// A fixed decimal expansion of |value| with a sign; cannot be extended.
    Digits {
        negative: bool,
        int_part: BigUint,
        frac: String,
    },
}

impl Provider {
    /// Enclosure [lo, hi] of the element value at `digits` decimal digits.
    fn enclosure(&self, digits: u32) -> (Rat, Rat) {
        let scale = BigInt::from(10u32).pow(digits);
        match self {
            Provider::One => (Rat::one(), Rat::one()),
            Provider::Sqrt(n) => {
                let v = BigUint::from(*n) * BigUint::from(10u32).pow(2 * digits);
                let s = BigInt::from(v.sqrt());
                (
                    Rat::new(s.clone(), scale.clone()),
                    Rat::new(s + BigInt::one(), scale),
                )
            }
            Provider::Digits {
                negative,
                int_part,
                frac,
            } => {
                let d = digits as usize;
                debug_assert!(d <= frac.len());
                let mut digits_str = int_part.to_string();
                digits_str.push_str(&frac[..d]);
                let v: BigInt = digits_str.parse().expect("decimal digits");
                let lo = Rat::new(v.clone(), scale.clone());
                let hi = Rat::new(v + BigInt::one(), scale);
                if *negative {
                    (-hi, -lo)
                } else {
                    (lo, hi)
                }
            }
        }
    }

    /// Maximum digits this provider supports, None if unbounded.
    fn max_digits(&self) -> Option<u32> {
        match self {
            Provider::Digits { frac, .. } => Some(frac.len() as u32),
            _ => None,
        }
    }
}

/// Largest square divisor decomposition: n = square * free with free squarefree.
fn squarefree_split(mut n: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            square *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= p;
            }
        }
        p += 1;
    }
    free *= n;
    (square, free)
}

/// A declared basis for exact scalars. Element 0 is always the constant 1.
pub struct Basis {
    names: Vec<String>,
    providers: Vec<Provider>,
    /// products[i][j] = Some((q, k)) if b_i * b_j == q * b_k, None if the
    /// product leaves the span of the basis.
    products: Vec<Vec<Option<(Rat, usize)>>>,
    cache: Mutex<HashMap<(usize, u32), (Rat, Rat)>>,
}

impl fmt::Debug for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Basis{:?}", self.names)
    }
}

impl Basis {
    /// Build a basis from (name, optional decimal expansion) pairs. The first
    /// element must be the constant "1". Names of the form "sqrtN" are
    /// recognized and recomputed internally to any precision; any other name
    /// must supply a decimal expansion with at least 50 fractional digits.
    pub fn new(elements: Vec<(String, Option<String>)>) -> Result<Arc<Basis>, ExactError> {
        if elements.is_empty() {
            return Err(ExactError::InvalidBasis("basis is empty".into()));
        }
        let mut names = Vec::new();
        let mut providers = Vec::new();
        for (idx, (name, decimal)) in elements.iter().enumerate() {
            if names.contains(name) {
                return Err(ExactError::InvalidBasis(format!(
                    "duplicate basis element {name:?}"
                )));
            }
            let provider = if name == "1" {
                if idx != 0 {
                    return Err(ExactError::InvalidBasis(
                        "the constant 1 must be element 0".into(),
                    ));
                }
                Provider::One
            } else if let Some(n) = name.strip_prefix("sqrt").and_then(|s| s.parse::<u64>().ok())
            {
                if n < 2 || n > 1_000_000 {
                    return Err(ExactError::InvalidBasis(format!(
                        "sqrt argument out of range in {name:?}"
                    )));
                }
                let (sq, free) = squarefree_split(n);
                if free == 1 {
                    return Err(ExactError::InvalidBasis(format!(
                        "{name:?} is the rational number {sq}"
                    )));
                }
                if let Some(dec) = decimal {
                    validate_sqrt_decimal(n, dec)?;
                }
                Provider::Sqrt(n)
            } else {
                let dec = decimal.as_ref().ok_or_else(|| {
                    ExactError::InvalidBasis(format!(
                        "element {name:?} needs a decimal expansion"
                    ))
                })?;
                parse_decimal(name, dec)?
            };
            if idx == 0 && !matches!(provider, Provider::One) {
                return Err(ExactError::InvalidBasis(
                    "element 0 must be the constant \"1\"".into(),
                ));
            }
            names.push(name.clone());
            providers.push(provider);
        }
        // Cheap dependence screen: sqrt(m), sqrt(n) are rationally dependent
        // iff m*n is a perfect square.
        for i in 1..providers.len() {
            for j in (i + 1)..providers.len() {
                if let (Provider::Sqrt(m), Provider::Sqrt(n)) = (&providers[i], &providers[j]) {
                    let (_, free) = squarefree_split(m * n);
                    if free == 1 {
                        return Err(ExactError::InvalidBasis(format!(
                            "{} and {} are rationally dependent",
                            names[i], names[j]
                        )));
                    }
                }
            }
        }
        let products = build_products(&providers);
        Ok(Arc::new(Basis {
            names,
            providers,
            products,
            cache: Mutex::new(HashMap::new()),
        }))
    }

    /// The basis {1} of plain rationals.
    pub fn rational() -> Arc<Basis> {
        Basis::new(vec![("1".into(), None)]).expect("rational basis")
    }

    /// The basis {1, sqrt n1, sqrt n2, ...}.
    pub fn with_sqrts(ns: &[u64]) -> Result<Arc<Basis>, ExactError> {
        let mut elems = vec![("1".to_string(), None)];
        elems.extend(ns.iter().map(|n| (format!("sqrt{n}"), None)));
        Basis::new(elems)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Decimal expansion of element `i` to `digits` digits (truncated), as a
    /// string, when available.
    pub fn decimal_of(&self, i: usize, digits: u32) -> Result<String, ExactError> {
        let (lo, _) = self.enclosure(i, digits)?;
        Ok(format_rounded(&round_scaled(&lo, digits, false), digits))
    }

    fn max_digits(&self, i: usize) -> Option<u32> {
        self.providers[i].max_digits()
    }

    fn enclosure(&self, i: usize, digits: u32) -> Result<(Rat, Rat), ExactError> {
        if let Some(cap) = self.max_digits(i) {
            if digits > cap {
                return Err(ExactError::PrecisionExhausted {
                    digits,
                    bits: (digits as f64 * 3.33) as u32,
                    context: format!("basis element {} has only {cap} digits", self.names[i]),
                });
            }
        }
        let mut cache = self.cache.lock().expect("basis cache");
        if let Some(hit) = cache.get(&(i, digits)) {
            return Ok(hit.clone());
        }
        let enc = self.providers[i].enclosure(digits);
        cache.insert((i, digits), enc.clone());
        Ok(enc)
    }

    /// Digit cap across elements with nonzero coefficient (None = unbounded).
    fn digit_cap(&self, coeffs: &[Rat]) -> Option<u32> {
        let mut cap: Option<u32> = None;
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some(d) = self.max_digits(i) {
                cap = Some(cap.map_or(d, |c0| c0.min(d)));
            }
        }
        cap
    }

    /// Construct a scalar with the given coefficients (short vectors are
    /// zero-padded on the right).
    pub fn scalar(self: &Arc<Self>, mut coeffs: Vec<Rat>) -> ExactScalar {
        assert!(
            coeffs.len() <= self.len(),
            "coefficient vector longer than basis"
        );
        coeffs.resize(self.len(), Rat::zero());
        ExactScalar {
            basis: Arc::clone(self),
            coeffs,
        }
    }

    pub fn from_rational(self: &Arc<Self>, q: Rat) -> ExactScalar {
        let mut coeffs = vec![Rat::zero(); self.len()];
        coeffs[0] = q;
        ExactScalar {
            basis: Arc::clone(self),
            coeffs,
        }
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> ExactScalar {
        self.from_rational(Rat::from_integer(BigInt::from(n)))
    }

    pub fn zero(self: &Arc<Self>) -> ExactScalar {
        self.from_rational(Rat::zero())
    }

    /// Parse "p/q" or "p" into a rational.
    pub fn parse_rat(text: &str) -> Result<Rat, ExactError> {
        text.trim()
            .parse::<Rat>()
            .map_err(|_| ExactError::BadCoefficient(text.to_string()))
    }

    /// Parse a coefficient-string vector into a scalar.
    pub fn parse_scalar(self: &Arc<Self>, coeffs: &[String]) -> Result<ExactScalar, ExactError> {
        if coeffs.len() > self.len() {
            return Err(ExactError::InvalidBasis(format!(
                "{} coefficients for a basis of {} elements",
                coeffs.len(),
                self.len()
            )));
        }
        let parsed = coeffs
            .iter()
            .map(|s| Self::parse_rat(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.scalar(parsed))
    }

    pub fn compatible(a: &Arc<Basis>, b: &Arc<Basis>) -> bool {
        Arc::ptr_eq(a, b) || a.names == b.names
    }
}

fn validate_sqrt_decimal(n: u64, decimal: &str) -> Result<(), ExactError> {
    let provider = parse_decimal(&format!("sqrt{n}"), decimal)?;
    if let Provider::Digits {
        negative,
        int_part,
        frac,
    } = &provider
    {
        if *negative {
            return Err(ExactError::InvalidBasis(format!(
                "sqrt{n} expansion must be positive"
            )));
        }
        let check = (frac.len() as u32).min(60);
        let (lo, hi) = Provider::Sqrt(n).enclosure(check);
        let digits = Provider::Digits {
            negative: false,
            int_part: int_part.clone(),
            frac: frac.clone(),
        }
        .enclosure(check);
        // The two enclosures of the same number must overlap.
        if digits.1 < lo || hi < digits.0 {
            return Err(ExactError::InvalidBasis(format!(
                "decimal expansion for sqrt{n} does not match its value"
            )));
        }
    }
    Ok(())
}

fn parse_decimal(name: &str, decimal: &str) -> Result<Provider, ExactError> {
    let s = decimal.trim();
    let (negative, s) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_str, frac) = s.split_once('.').unwrap_or((s, ""));
    if int_str.is_empty() || !int_str.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ExactError::InvalidBasis(format!(
            "bad decimal expansion for {name:?}"
        )));
    }
    if !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ExactError::InvalidBasis(format!(
            "bad decimal expansion for {name:?}"
        )));
    }
    // Recognized sqrt names get validated elsewhere; unknown constants must
    // carry enough digits to be usable.
    let is_sqrt = name.strip_prefix("sqrt").map_or(false, |t| t.parse::<u64>().is_ok());
    if !is_sqrt && frac.len() < 50 {
        return Err(ExactError::InvalidBasis(format!(
            "element {name:?} needs at least 50 fractional digits, got {}",
            frac.len()
        )));
    }
    Ok(Provider::Digits {
        negative,
        int_part: int_str.parse().expect("integer digits"),
        frac: frac.to_string(),
    })
}

fn build_products(providers: &[Provider]) -> Vec<Vec<Option<(Rat, usize)>>> {
    let n = providers.len();
    let mut table = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            table[i][j] = match (&providers[i], &providers[j]) {
                (Provider::One, _) => Some((Rat::one(), j)),
                (_, Provider::One) => Some((Rat::one(), i)),
                (Provider::Sqrt(m), Provider::Sqrt(k)) => {
                    let p = m * k;
                    let (square, free) = squarefree_split(p);
                    if free == 1 {
                        Some((Rat::from_integer(BigInt::from(square)), 0))
                    } else {
                        providers.iter().enumerate().find_map(|(t, prov)| {
                            if let Provider::Sqrt(u) = prov {
                                let (sq_u, free_u) = squarefree_split(*u);
                                if free_u == free {
                                    return Some((
                                        Rat::new(BigInt::from(square), BigInt::from(sq_u)),
                                        t,
                                    ));
                                }
                            }
                            None
                        })
                    }
                }
                _ => None,
            };
        }
    }
    table
}

/// An exact scalar: a rational combination of the basis elements.
#[derive(Clone)]
pub struct ExactScalar {
    basis: Arc<Basis>,
    coeffs: Vec<Rat>,
}

impl ExactScalar {
    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when all non-constant coefficients vanish.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    fn check_basis(&self, other: &ExactScalar) -> Result<(), ExactError> {
        if Basis::compatible(&self.basis, &other.basis) {
            Ok(())
        } else {
            Err(ExactError::BasisMismatch(
                format!("{:?}", self.basis.names),
                format!("{:?}", other.basis.names),
            ))
        }
    }

    pub fn scale(&self, q: &Rat) -> ExactScalar {
        ExactScalar {
            basis: Arc::clone(&self.basis),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn half(&self) -> ExactScalar {
        self.scale(&Rat::new(BigInt::one(), BigInt::from(2)))
    }

    /// Product of two scalars, defined when every needed pairwise basis
    /// product stays in the span (always when either factor is rational).
    pub fn try_mul(&self, other: &ExactScalar) -> Result<ExactScalar, ExactError> {
        self.check_basis(other)?;
        if let Some(q) = self.as_rational() {
            return Ok(other.scale(q));
        }
        if let Some(q) = other.as_rational() {
            return Ok(self.scale(q));
        }
        let mut coeffs = vec![Rat::zero(); self.basis.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                match &self.basis.products[i][j] {
                    Some((q, k)) => coeffs[*k] += a * b * q,
                    None => {
                        return Err(ExactError::Unrepresentable(
                            self.basis.names[i].clone(),
                            self.basis.names[j].clone(),
                        ))
                    }
                }
            }
        }
        Ok(ExactScalar {
            basis: Arc::clone(&self.basis),
            coeffs,
        })
    }

    /// Sign of the value: 0 only for the zero coefficient vector, otherwise
    /// decided by interval arithmetic at escalating precision.
    pub fn sign(&self) -> Result<i8, ExactError> {
        if self.is_zero() {
            return Ok(0);
        }
        if self.is_rational() {
            return Ok(rat_sign(&self.coeffs[0]));
        }
        let cap = self.basis.digit_cap(&self.coeffs);
        let mut levels: Vec<u32> = DIGIT_LADDER
            .iter()
            .copied()
            .filter(|d| cap.map_or(true, |c| *d <= c))
            .collect();
        if let Some(c) = cap {
            if levels.last() != Some(&c) && c < *DIGIT_LADDER.last().unwrap() {
                levels.push(c);
            }
        }
        let mut last = 0;
        for (level, digits) in levels.iter().enumerate() {
            last = *digits;
            let (lo, hi) = self.enclosure_at(*digits)?;
            if lo.is_positive() {
                return Ok(1);
            }
            if hi.is_negative() {
                return Ok(-1);
            }
            let _ = level;
        }
        Err(ExactError::PrecisionExhausted {
            digits: last,
            bits: bits_for_level(DIGIT_LADDER.iter().position(|d| *d == last).unwrap_or(6)),
            context: format!("{self}"),
        })
    }

    fn enclosure_at(&self, digits: u32) -> Result<(Rat, Rat), ExactError> {
        let mut lo = Rat::zero();
        let mut hi = Rat::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (el, eh) = self.basis.enclosure(i, digits)?;
            if c.is_positive() {
                lo += c * el;
                hi += c * eh;
            } else {
                lo += c * eh;
                hi += c * el;
            }
        }
        Ok((lo, hi))
    }

    pub fn compare(&self, other: &ExactScalar) -> Result<Ordering, ExactError> {
        self.check_basis(other)?;
        if self.coeffs == other.coeffs {
            return Ok(Ordering::Equal);
        }
        Ok(match (self - other).sign()? {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        })
    }

    pub fn lt(&self, other: &ExactScalar) -> Result<bool, ExactError> {
        Ok(self.compare(other)? == Ordering::Less)
    }

    pub fn le(&self, other: &ExactScalar) -> Result<bool, ExactError> {
        Ok(self.compare(other)? != Ordering::Greater)
    }

    pub fn gt(&self, other: &ExactScalar) -> Result<bool, ExactError> {
        Ok(self.compare(other)? == Ordering::Greater)
    }

    pub fn ge(&self, other: &ExactScalar) -> Result<bool, ExactError> {
        Ok(self.compare(other)? != Ordering::Less)
    }

    pub fn abs(&self) -> Result<ExactScalar, ExactError> {
        Ok(if self.sign()? < 0 { -self } else { self.clone() })
    }

    pub fn min_of(a: ExactScalar, b: ExactScalar) -> Result<ExactScalar, ExactError> {
        Ok(if a.le(&b)? { a } else { b })
    }

    pub fn max_of(a: ExactScalar, b: ExactScalar) -> Result<ExactScalar, ExactError> {
        Ok(if a.ge(&b)? { a } else { b })
    }

    /// Correctly rounded decimal string with `digits` fractional digits
    /// (ties round away from zero; for irrational values ties cannot occur).
    pub fn to_decimal(&self, digits: u32) -> Result<String, ExactError> {
        if let Some(q) = self.as_rational() {
            return Ok(format_rounded(&round_scaled(q, digits, true), digits));
        }
        let cap = self.basis.digit_cap(&self.coeffs);
        let mut levels: Vec<u32> = DIGIT_LADDER
            .iter()
            .copied()
            .filter(|d| *d > digits && cap.map_or(true, |c| *d <= c))
            .collect();
        if levels.is_empty() {
            levels.push(cap.unwrap_or(*DIGIT_LADDER.last().unwrap()));
        }
        let mut last = 0;
        for d in levels {
            last = d;
            let (lo, hi) = self.enclosure_at(d)?;
            let rlo = round_scaled(&lo, digits, true);
            let rhi = round_scaled(&hi, digits, true);
            if rlo == rhi {
                return Ok(format_rounded(&rlo, digits));
            }
        }
        Err(ExactError::PrecisionExhausted {
            digits: last,
            bits: 0,
            context: format!("rounding {self} to {digits} digits"),
        })
    }

    /// Double-precision approximation (for display and cross-checks only;
    /// never used in exact decisions).
    pub fn approx_f64(&self) -> Result<f64, ExactError> {
        let (lo, hi) = if self.is_rational() {
            (self.coeffs[0].clone(), self.coeffs[0].clone())
        } else {
            self.enclosure_at(DIGIT_LADDER[0])?
        };
        let mid = (lo + hi) / Rat::from_integer(BigInt::from(2));
        Ok(mid.to_f64().unwrap_or(f64::NAN))
    }
}

fn rat_sign(q: &Rat) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// round(v * 10^digits) to the nearest integer, ties away from zero when
/// `ties` is set (truncation toward -inf otherwise).
fn round_scaled(v: &Rat, digits: u32, ties: bool) -> BigInt {
    let scaled = v * Rat::from_integer(BigInt::from(10u32).pow(digits));
    if !ties {
        return scaled.floor().to_integer();
    }
    let two = BigInt::from(2);
    let num = scaled.numer() * &two;
    let den = scaled.denom() * &two;
    if num.is_negative() {
        -((-num + scaled.denom()) / den)
    } else {
        (num + scaled.denom()) / den
    }
}

fn format_rounded(n: &BigInt, digits: u32) -> String {
    let negative = n.is_negative();
    let mut s = n.abs().to_string();
    let d = digits as usize;
    if s.len() <= d {
        s = format!("{}{}", "0".repeat(d + 1 - s.len()), s);
    }
    let split = s.len() - d;
    let (int_part, frac_part) = s.split_at(split);
    let body = if d == 0 {
        int_part.to_string()
    } else {
        format!("{int_part}.{frac_part}")
    };
    if negative && body.bytes().any(|b| b.is_ascii_digit() && b != b'0') {
        format!("-{body}")
    } else {
        body
    }
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        Basis::compatible(&self.basis, &other.basis) && self.coeffs == other.coeffs
    }
}

impl Eq for ExactScalar {}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactScalar({self})")
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*{}", self.basis.names[i])?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ExactScalar", 2)?;
        st.serialize_field("coeffs", &self.coeff_strings())?;
        st.serialize_field(
            "decimal",
            &self.to_decimal(30).unwrap_or_else(|_| "unavailable".into()),
        )?;
        st.end()
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl std::ops::$trait<&ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                debug_assert!(Basis::compatible(&self.basis, &rhs.basis), "basis mismatch");
                ExactScalar {
                    basis: Arc::clone(&self.basis),
                    coeffs: self
                        .coeffs
                        .iter()
                        .zip(&rhs.coeffs)
                        .map(|(a, b)| a $op b)
                        .collect(),
                }
            }
        }
        impl std::ops::$trait<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$method(rhs)
            }
        }
        impl std::ops::$trait<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);

impl std::ops::Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            basis: Arc::clone(&self.basis),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

/// Convenience: parse "p/q" into a rational, panicking on malformed input
/// (for literals in tests and fixtures).
pub fn rat(text: &str) -> Rat {
    Basis::parse_rat(text).expect("rational literal")
}

/// Sort items by an exact scalar key. Comparisons of irrational values may
/// need enclosure refinement, hence the fallible signature; insertion with
/// binary search keeps the exact comparison count low for the small lists
/// this is used on.
pub fn sort_by_scalar_key<T>(
    items: Vec<T>,
    key: impl Fn(&T) -> &ExactScalar,
) -> Result<Vec<T>, ExactError> {
    let mut out: Vec<T> = Vec::with_capacity(items.len());
    for item in items {
        let mut lo = 0usize;
        let mut hi = out.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            if key(&out[mid]).lt(key(&item))? {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        out.insert(lo, item);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt5_basis() -> Arc<Basis> {
        Basis::with_sqrts(&[5]).unwrap()
    }

    #[test]
    fn sign_of_simple_combinations() {
        let b = sqrt5_basis();
        // sqrt5 - 2 > 0
        let x = b.scalar(vec![rat("-2"), rat("1")]);
        assert_eq!(x.sign().unwrap(), 1);
        // 9 - 4*sqrt5 = 9 - 8.944... > 0
        let y = b.scalar(vec![rat("9"), rat("-4")]);
        assert_eq!(y.sign().unwrap(), 1);
        // 4*sqrt5 - 9 < 0
        assert_eq!((-&y).sign().unwrap(), -1);
        assert_eq!(b.zero().sign().unwrap(), 0);
    }

    #[test]
    fn compare_is_exact() {
        let b = sqrt5_basis();
        let x = b.scalar(vec![rat("3/2"), rat("-1/2")]); // (3-sqrt5)/2
        let y = b.scalar(vec![rat("-1/2"), rat("1/2")]); // (sqrt5-1)/2
        assert_eq!(x.compare(&y).unwrap(), Ordering::Less);
        assert_eq!(y.compare(&x).unwrap(), Ordering::Greater);
        assert_eq!(x.compare(&x).unwrap(), Ordering::Equal);
        // x + y == 1 exactly
        let one = b.from_int(1);
        assert_eq!(&x + &y, one);
    }

    #[test]
    fn to_decimal_rounds_correctly() {
        let b = sqrt5_basis();
        let golden = b.scalar(vec![rat("-1/2"), rat("1/2")]);
        assert_eq!(golden.to_decimal(6).unwrap(), "0.618034");
        assert_eq!(golden.to_decimal(1).unwrap(), "0.6");
        let half = b.from_rational(rat("1/2"));
        assert_eq!(half.to_decimal(3).unwrap(), "0.500");
        let neg = b.from_rational(rat("-191/500"));
        assert_eq!(neg.to_decimal(4).unwrap(), "-0.3820");
        assert_eq!(b.zero().to_decimal(3).unwrap(), "0.000");
        // sqrt5 itself to many digits matches the known expansion.
        let s5 = b.scalar(vec![rat("0"), rat("1")]);
        assert_eq!(
            s5.to_decimal(30).unwrap(),
            "2.236067977499789696409173668731"
        );
    }

    #[test]
    fn basis_mismatch_is_detected() {
        let b5 = sqrt5_basis();
        let b2 = Basis::with_sqrts(&[2]).unwrap();
        let x = b5.from_int(1);
        let y = b2.from_int(1);
        assert!(matches!(
            x.compare(&y),
            Err(ExactError::BasisMismatch(_, _))
        ));
    }

    #[test]
    fn dependent_sqrt_pair_rejected() {
        assert!(matches!(
            Basis::with_sqrts(&[2, 8]),
            Err(ExactError::InvalidBasis(_))
        ));
        assert!(matches!(
            Basis::with_sqrts(&[4]),
            Err(ExactError::InvalidBasis(_))
        ));
    }

    #[test]
    fn products_close_in_quadratic_field() {
        let b = sqrt5_basis();
        let x = b.scalar(vec![rat("1"), rat("1")]); // 1 + sqrt5
        let sq = x.try_mul(&x).unwrap(); // 6 + 2 sqrt5
        assert_eq!(sq, b.scalar(vec![rat("6"), rat("2")]));
        // golden ratio satisfies phi^2 = phi + 1 with phi = (1+sqrt5)/2
        let phi = b.scalar(vec![rat("1/2"), rat("1/2")]);
        let phi2 = phi.try_mul(&phi).unwrap();
        assert_eq!(phi2, &phi + &b.from_int(1));
    }

    #[test]
    fn products_of_distinct_primes_unrepresentable() {
        let b = Basis::with_sqrts(&[2, 3]).unwrap();
        let s2 = b.scalar(vec![rat("0"), rat("1"), rat("0")]);
        let s3 = b.scalar(vec![rat("0"), rat("0"), rat("1")]);
        assert!(matches!(
            s2.try_mul(&s3),
            Err(ExactError::Unrepresentable(_, _))
        ));
        // but sqrt2 * sqrt2 = 2 is fine
        assert_eq!(s2.try_mul(&s2).unwrap(), b.from_int(2));
    }

    #[test]
    fn sqrt_products_reduce_into_basis_elements() {
        let b = Basis::with_sqrts(&[2, 3, 6]).unwrap();
        let s2 = b.scalar(vec![rat("0"), rat("1"), rat("0"), rat("0")]);
        let s3 = b.scalar(vec![rat("0"), rat("0"), rat("1"), rat("0")]);
        let s6 = b.scalar(vec![rat("0"), rat("0"), rat("0"), rat("1")]);
        assert_eq!(s2.try_mul(&s3).unwrap(), s6);
        // sqrt2 * sqrt6 = 2 sqrt3
        assert_eq!(s2.try_mul(&s6).unwrap(), s3.scale(&rat("2")));
    }

    #[test]
    fn unknown_decimal_constant_has_bounded_precision() {
        let pi50 = "3.14159265358979323846264338327950288419716939937510";
        let b = Basis::new(vec![
            ("1".into(), None),
            ("pi".into(), Some(pi50.into())),
        ])
        .unwrap();
        let x = b.scalar(vec![rat("0"), rat("1")]);
        assert_eq!(x.sign().unwrap(), 1);
        assert_eq!(x.to_decimal(10).unwrap(), "3.1415926536");
        // An equality the declared digits cannot separate must exhaust.
        let close = &x - &b.from_rational(
            rat("314159265358979323846264338327950288419716939937510")
                / rat("100000000000000000000000000000000000000000000000000"),
        );
        assert!(matches!(
            close.sign(),
            Err(ExactError::PrecisionExhausted { .. })
        ));
    }

    #[test]
    fn short_decimal_rejected() {
        let err = Basis::new(vec![
            ("1".into(), None),
            ("mystery".into(), Some("1.2345".into())),
        ]);
        assert!(matches!(err, Err(ExactError::InvalidBasis(_))));
    }

    #[test]
    fn sqrt_decimal_validated_against_recomputation() {
        let good = Basis::new(vec![
            ("1".into(), None),
            (
                "sqrt5".into(),
                Some("2.23606797749978969640917366873127623544061835961153".into()),
            ),
        ]);
        assert!(good.is_ok());
        let bad = Basis::new(vec![
            ("1".into(), None),
            (
                "sqrt5".into(),
                Some("2.23606797749978969640917366873127623544061835961253".into()),
            ),
        ]);
        assert!(matches!(bad, Err(ExactError::InvalidBasis(_))));
    }

    #[test]
    fn scalar_parse_round_trip() {
        let b = sqrt5_basis();
        let x = b
            .parse_scalar(&["-1/2".to_string(), "1/2".to_string()])
            .unwrap();
        assert_eq!(x.coeff_strings(), vec!["-1/2", "1/2"]);
        assert!(b.parse_scalar(&["x".to_string()]).is_err());
    }
}

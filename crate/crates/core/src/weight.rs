//! Edge weights and similarities.
//!
//! Every run uses one numeric mode: exact rationals ([`Rational`]) or binary64
//! floats ([`F64`]). Algorithms are generic over the [`Weight`] trait so the
//! same code path serves both.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NumericMode {
    Rational,
    Float,
}

impl fmt::Display for NumericMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericMode::Rational => f.write_str("rational"),
            NumericMode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for NumericMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rational" | "exact" => Ok(NumericMode::Rational),
            "float" | "f64" => Ok(NumericMode::Float),
            other => Err(format!("unknown numeric mode `{other}`")),
        }
    }
}

/// A totally ordered, non-negative edge weight or similarity value.
pub trait Weight: Clone + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const MODE: NumericMode;

    fn zero() -> Self;
    fn from_int(v: i64) -> Self;
    /// `num / den`; `den` must be non-zero.
    fn from_ratio(num: i64, den: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    /// `self / (a * b)`: the average-linkage normalization by cluster sizes.
    fn div_sizes(&self, a: u64, b: u64) -> Self;
    /// `self * num / den`.
    fn scale(&self, num: u64, den: u64) -> Self;
    /// `self / other`; `other` must be positive.
    fn ratio(&self, other: &Self) -> Self;
    fn is_positive(&self) -> bool;
    fn to_f64(&self) -> f64;
    fn parse_literal(s: &str) -> Result<Self, String>;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, String>;
}

/// `total_weight / (size_a * size_b)`.
pub fn normalized_similarity<W: Weight>(total_weight: &W, size_a: u64, size_b: u64) -> W {
    debug_assert!(size_a >= 1 && size_b >= 1);
    total_weight.div_sizes(size_a, size_b)
}

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in `i64` stay inline; products
/// for comparison are taken in `i128`, so the common case never allocates.
#[derive(Clone)]
pub struct Rational(Repr);

#[derive(Clone)]
enum Repr {
    Small { num: i64, den: i64 },
    Big(BigRational),
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_big(value: BigRational) -> Self {
        // BigRational is always reduced with a positive denominator.
        match (value.numer().to_i64(), value.denom().to_i64()) {
            (Some(num), Some(den)) => Rational(Repr::Small { num, den }),
            _ => Rational(Repr::Big(value)),
        }
    }

    fn from_i128(mut num: i128, mut den: i128) -> Self {
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(num), Ok(den)) => Rational(Repr::Small { num, den }),
            _ => Rational(Repr::Big(BigRational::new(BigInt::from(num), BigInt::from(den)))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_inline(&self) -> bool {
        matches!(self.0, Repr::Small { .. })
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &other.0) {
            if let (Some(n), Some(m)) = ((*a as i128).checked_mul(*c as i128), (*b as i128).checked_mul(*d as i128)) {
                return Self::from_i128(n, m);
            }
        }
        Self::from_big(self.to_big() * other.to_big())
    }

    pub fn pow(&self, exp: u32) -> Rational {
        let mut acc = Rational::new(1, 1);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Rational {}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // Canonical form is unique, but a value may sit in either repr only
        // when it does not fit inline, so hashing the repr is consistent.
        match &self.0 {
            Repr::Small { num, den } => {
                0u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

fn parse_bigint(s: &str) -> Result<BigInt, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty number".into());
    }
    let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("invalid integer `{t}`"));
    }
    t.trim_start_matches('+').parse::<BigInt>().map_err(|e| format!("invalid integer `{t}`: {e}"))
}

/// Parses `p/q`, an integer, or a decimal literal (with optional exponent)
/// into an exact rational.
fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_bigint(p)?;
        let q = parse_bigint(q)?;
        if q.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| format!("invalid exponent in `{s}`"))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("invalid decimal `{s}`"));
    }
    let negative = int_part.starts_with('-');
    let int_digits = int_part.trim_start_matches(['+', '-']);
    if int_digits.is_empty() && frac_part.is_empty() {
        return Err(format!("invalid number `{s}`"));
    }
    if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("invalid number `{s}`"));
    }
    let all_digits = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac_part);
    let mut numer: BigInt = all_digits.parse().map_err(|_| format!("invalid number `{s}`"))?;
    if negative {
        numer = -numer;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s).map(Rational::from_big)
    }
}

impl Weight for Rational {
    const MODE: NumericMode = NumericMode::Rational;

    fn zero() -> Self {
        Rational(Repr::Small { num: 0, den: 1 })
    }

    fn from_int(v: i64) -> Self {
        Rational(Repr::Small { num: v, den: 1 })
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(num, den)
    }

    fn add(&self, other: &Self) -> Self {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &other.0) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            // |a*d|, |c*b| < 2^126, so the sum cannot overflow.
            return Self::from_i128(a * d + c * b, b * d);
        }
        Self::from_big(self.to_big() + other.to_big())
    }

    fn div_sizes(&self, a: u64, b: u64) -> Self {
        if let Repr::Small { num, den } = &self.0 {
            let prod = (a as u128) * (b as u128);
            if let Some(d) = (*den as u128).checked_mul(prod) {
                if d <= i128::MAX as u128 {
                    return Self::from_i128(*num as i128, d as i128);
                }
            }
        }
        let divisor = BigInt::from(a) * BigInt::from(b);
        Self::from_big(self.to_big() / BigRational::from_integer(divisor))
    }

    fn scale(&self, num: u64, den: u64) -> Self {
        self.mul(&Rational::from_big(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    fn ratio(&self, other: &Self) -> Self {
        Self::from_big(self.to_big() / other.to_big())
    }

    fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num > 0,
            Repr::Big(b) => b.is_positive(),
        }
    }

    fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    fn parse_literal(s: &str) -> Result<Self, String> {
        s.parse()
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::String(s) => s.parse(),
            Value::Number(n) => n.to_string().parse(),
            other => Err(format!("expected rational, found {other}")),
        }
    }
}

/// A binary64 weight with a total order. NaN is rejected at construction.
#[derive(Clone, Copy)]
pub struct F64(f64);

impl F64 {
    pub fn new(v: f64) -> Self {
        assert!(!v.is_nan(), "NaN weight");
        // Normalize -0.0 so equality, ordering and hashing agree.
        F64(if v == 0.0 { 0.0 } else { v })
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl PartialEq for F64 {
    fn eq(&self, other: &Self) -> bool {
        self.0.total_cmp(&other.0) == Ordering::Equal
    }
}

impl Eq for F64 {}

impl PartialOrd for F64 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for F64 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl Hash for F64 {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.to_bits().hash(state);
    }
}

impl fmt::Debug for F64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for F64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Weight for F64 {
    const MODE: NumericMode = NumericMode::Float;

    fn zero() -> Self {
        F64(0.0)
    }

    fn from_int(v: i64) -> Self {
        F64::new(v as f64)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        F64::new(num as f64 / den as f64)
    }

    fn add(&self, other: &Self) -> Self {
        F64::new(self.0 + other.0)
    }

    fn div_sizes(&self, a: u64, b: u64) -> Self {
        F64::new(self.0 / (a as f64 * b as f64))
    }

    fn scale(&self, num: u64, den: u64) -> Self {
        F64::new(self.0 * num as f64 / den as f64)
    }

    fn ratio(&self, other: &Self) -> Self {
        F64::new(self.0 / other.0)
    }

    fn is_positive(&self) -> bool {
        self.0 > 0.0
    }

    fn to_f64(&self) -> f64 {
        self.0
    }

    fn parse_literal(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.contains('/') {
            return parse_rational(s).map(|r| F64::new(r.to_f64().unwrap_or(f64::NAN))).and_then(|v| {
                if v.0.is_finite() {
                    Ok(v)
                } else {
                    Err(format!("weight `{s}` is not finite"))
                }
            });
        }
        let v: f64 = s.parse().map_err(|_| format!("invalid number `{s}`"))?;
        if !v.is_finite() {
            return Err(format!("weight `{s}` is not finite"));
        }
        Ok(F64::new(v))
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(self.0).map(Value::Number).unwrap_or(Value::Null)
    }

    fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::Number(n) => n.as_f64().map(F64::new).ok_or_else(|| "bad number".into()),
            Value::String(s) => F64::parse_literal(s),
            other => Err(format!("expected number, found {other}")),
        }
    }
}

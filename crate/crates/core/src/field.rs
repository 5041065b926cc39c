//! Exact arithmetic over the rationals and a fixed real quadratic field.
//!
//! Every length, coordinate and period in this crate is a [`Quad`]: an
//! element `a + b*sqrt(d)` of `Q(sqrt(d))` with `a`, `b` arbitrary-precision
//! rationals and `d` a fixed squarefree integer `>= 2`, or a plain rational
//! when no field is declared. Comparisons, signs and commensurability tests
//! are decided exactly; no floating point enters any verdict.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Shorthand for `p/q` as a [`Rational`].
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Errors from field-level operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed quadratic fields: sqrt({0}) vs sqrt({1})")]
    MixedFields(u64, u64),
    #[error("invalid field discriminant {0}: must be squarefree and >= 2")]
    BadDiscriminant(u64),
}

/// The quadratic field `Q(sqrt(d))` shared by all numbers of one document.
///
/// `d = 1` and non-squarefree `d` are rejected so every value has a unique
/// representation; pure-rational documents simply use no field at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadField {
    d: u64,
}

impl QuadField {
    pub fn new(d: u64) -> Result<Self, FieldError> {
        if d < 2 || !is_squarefree(d) {
            return Err(FieldError::BadDiscriminant(d));
        }
        Ok(QuadField { d })
    }

    pub fn d(&self) -> u64 {
        self.d
    }
}

fn is_squarefree(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Exact element `a + b*sqrt(d)` of a real quadratic field, or a plain
/// rational when `field` is `None`.
///
/// Canonical form: `field` is `Some` exactly when `b != 0`, so structural
/// equality coincides with numerical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quad {
    a: Rational,
    b: Rational,
    field: Option<QuadField>,
}

impl Quad {
    /// A plain rational element.
    pub fn from_rational(a: Rational) -> Self {
        Quad { a, b: Rational::zero(), field: None }
    }

    /// `a + b*sqrt(d)`; collapses to a plain rational when `b = 0`.
    pub fn new(a: Rational, b: Rational, field: QuadField) -> Self {
        if b.is_zero() {
            Quad::from_rational(a)
        } else {
            Quad { a, b, field: Some(field) }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Quad::from_rational(rat(n, 1))
    }

    pub fn zero() -> Self {
        Quad::from_int(0)
    }

    pub fn one() -> Self {
        Quad::from_int(1)
    }

    /// Rational part (coefficient of 1).
    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    /// Irrational part (coefficient of `sqrt(d)`).
    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    pub fn field(&self) -> Option<QuadField> {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Returns the value as a plain rational if `b = 0`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    fn join_fields(&self, other: &Quad) -> Option<QuadField> {
        match (self.field, other.field) {
            (None, f) | (f, None) => f,
            (Some(f), Some(g)) if f == g => Some(f),
            (Some(f), Some(g)) => panic!(
                "mixed quadratic fields in arithmetic: sqrt({}) vs sqrt({})",
                f.d, g.d
            ),
        }
    }

    fn checked_join(&self, other: &Quad) -> Result<Option<QuadField>, FieldError> {
        match (self.field, other.field) {
            (None, f) | (f, None) => Ok(f),
            (Some(f), Some(g)) if f == g => Ok(Some(f)),
            (Some(f), Some(g)) => Err(FieldError::MixedFields(f.d, g.d)),
        }
    }

    fn build(a: Rational, b: Rational, field: Option<QuadField>) -> Self {
        if b.is_zero() {
            Quad { a, b, field: None }
        } else {
            debug_assert!(field.is_some());
            Quad { a, b, field }
        }
    }

    /// Exact sign of the real value `a + b*sqrt(d)`: `-1`, `0` or `+1`.
    ///
    /// Decided by case analysis on the component signs and, when they
    /// disagree, by comparing `a^2` against `b^2 d` (exact since `d` is not
    /// a perfect square, `a^2 = b^2 d` forces `a = b = 0`).
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        let d = self.field.expect("nonzero surd part requires a field").d;
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // a and b of opposite signs: |a| vs |b|sqrt(d) decides.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rational::from(BigInt::from(d));
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Quad {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse via the conjugate:
    /// `1/(a + b sqrt d) = (a - b sqrt d) / (a^2 - b^2 d)`.
    pub fn checked_inv(&self) -> Result<Quad, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Quad::from_rational(self.a.recip()));
        }
        let d = Rational::from(BigInt::from(self.field.unwrap().d));
        let norm = &self.a * &self.a - &self.b * &self.b * d;
        debug_assert!(!norm.is_zero(), "norm of a nonzero quadratic number is nonzero");
        Ok(Quad::build(&self.a / &norm, -(&self.b / &norm), self.field))
    }

    pub fn checked_div(&self, other: &Quad) -> Result<Quad, FieldError> {
        self.checked_join(other)?;
        Ok(self * &other.checked_inv()?)
    }

    /// Solves `self = r * other` for a rational `r`, if one exists.
    ///
    /// Components in the basis `{1, sqrt(d)}` are unique, so `r` must match
    /// on both: this is the commensurability test behind every discreteness
    /// verdict. `Ok(None)` means no rational ratio exists.
    pub fn rational_ratio(&self, other: &Quad) -> Result<Option<Rational>, FieldError> {
        self.checked_join(other)?;
        if other.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let candidate = if !other.a.is_zero() {
            &self.a / &other.a
        } else {
            // other = b*sqrt(d) with b != 0; need self.a = 0 as well.
            if !self.a.is_zero() {
                return Ok(None);
            }
            &self.b / &other.b
        };
        if &candidate * &other.a == self.a && &candidate * &other.b == self.b {
            Ok(Some(candidate))
        } else {
            Ok(None)
        }
    }

    /// Largest integer `n <= a + b*sqrt(d)`, computed exactly using integer
    /// square-root bounds on the surd part.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        let d = BigInt::from(self.field.unwrap().d);
        // |b|*sqrt(d) = sqrt(p^2 d)/q for b = p/q; isqrt gives exact bounds.
        let p = self.b.numer().abs();
        let q = self.b.denom().clone();
        let s = (&p * &p * &d).sqrt(); // floor of sqrt(p^2 d)
        let surd_lo = Rational::new(s.clone(), q.clone());
        let surd_hi = Rational::new(s + 1, q);
        let (lo, hi) = if self.b.is_positive() {
            (&self.a + &surd_lo, &self.a + &surd_hi)
        } else {
            (&self.a - &surd_hi, &self.a - &surd_lo)
        };
        let mut n = lo.floor().to_integer();
        let top = hi.ceil().to_integer();
        // Tighten with exact sign tests; the bracket is at most a few wide.
        while n < top {
            let next = Quad::from_rational(Rational::from(&n + 1));
            if (self - &next).signum() >= 0 {
                n += 1;
            } else {
                break;
            }
        }
        while (self - &Quad::from_rational(Rational::from(n.clone()))).signum() < 0 {
            n -= 1;
        }
        n
    }

    /// Reduces into `[0, modulus)` for a positive modulus.
    pub fn rem_euclid(&self, modulus: &Quad) -> Quad {
        assert!(modulus.is_positive(), "modulus must be positive");
        let q = self.checked_div(modulus).expect("nonzero modulus");
        let k = q.floor();
        self - &(modulus * &Quad::from_rational(Rational::from(k)))
    }

    /// `f64` approximation; presentation only, never used in a verdict.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        match self.field {
            None => a,
            Some(f) => a + self.b.to_f64().unwrap_or(f64::NAN) * (f.d as f64).sqrt(),
        }
    }
}

fn sign_of(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// The four ring/field results of one operand pair, as a single bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldOps {
    pub sum: Quad,
    pub difference: Quad,
    pub product: Quad,
    pub quotient: Quad,
}

/// Exact sum, difference, product and quotient of `x` and `y`.
pub fn field_ops(x: &Quad, y: &Quad) -> Result<FieldOps, FieldError> {
    x.checked_join(y)?;
    Ok(FieldOps {
        sum: x + y,
        difference: x - y,
        product: x * y,
        quotient: x.checked_div(y)?,
    })
}

impl Add for &Quad {
    type Output = Quad;
    fn add(self, rhs: &Quad) -> Quad {
        let field = self.join_fields(rhs);
        Quad::build(&self.a + &rhs.a, &self.b + &rhs.b, field)
    }
}

impl Sub for &Quad {
    type Output = Quad;
    fn sub(self, rhs: &Quad) -> Quad {
        let field = self.join_fields(rhs);
        Quad::build(&self.a - &rhs.a, &self.b - &rhs.b, field)
    }
}

impl Mul for &Quad {
    type Output = Quad;
    fn mul(self, rhs: &Quad) -> Quad {
        let field = self.join_fields(rhs);
        let d = match field {
            Some(f) => Rational::from(BigInt::from(f.d)),
            None => Rational::zero(),
        };
        let a = &self.a * &rhs.a + &self.b * &rhs.b * &d;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Quad::build(a, b, field)
    }
}

impl Div for &Quad {
    type Output = Quad;
    fn div(self, rhs: &Quad) -> Quad {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad::build(-&self.a, -&self.b, self.field)
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        -&self
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Quad {
            type Output = Quad;
            fn $method(self, rhs: Quad) -> Quad {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Quad> for Quad {
            type Output = Quad;
            fn $method(self, rhs: &Quad) -> Quad {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl PartialOrd for Quad {
    fn partial_cmp(&self, other: &Quad) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Quad {
    fn cmp(&self, other: &Quad) -> Ordering {
        match (self - other).signum() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Display for Quad {
    /// The literal grammar shared by all file formats: `p/q`, optionally
    /// followed by `+r/s*s` or `-r/s*s` for the surd part.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a.numer(), self.a.denom())?;
        if !self.b.is_zero() {
            if self.b.is_negative() {
                let nb = -&self.b;
                write!(f, "-{}/{}*s", nb.numer(), nb.denom())?;
            } else {
                write!(f, "+{}/{}*s", self.b.numer(), self.b.denom())?;
            }
        }
        Ok(())
    }
}

/// Parses the number literal grammar: `<rat>` or `<rat>(+|-)<rat>*s`.
///
/// `field` supplies the meaning of `s`; a literal with a surd part in a
/// document that declares no field is rejected.
pub fn parse_number(text: &str, field: Option<QuadField>) -> Result<Quad, String> {
    let text = text.trim();
    // Split at the +/- that separates the two rational parts, skipping a
    // leading sign of the first part.
    let bytes = text.as_bytes();
    let mut split = None;
    for (i, &c) in bytes.iter().enumerate() {
        if i > 0 && (c == b'+' || c == b'-') {
            split = Some(i);
            break;
        }
    }
    match split {
        None => parse_rat(text).map(Quad::from_rational),
        Some(i) => {
            let head = &text[..i];
            let sign = if bytes[i] == b'-' { -1 } else { 1 };
            let tail = &text[i + 1..];
            let tail = tail
                .strip_suffix("*s")
                .ok_or_else(|| format!("expected `*s` after surd coefficient in `{text}`"))?;
            let a = parse_rat(head)?;
            let mut b = parse_rat(tail)?;
            if sign < 0 {
                b = -b;
            }
            let field =
                field.ok_or_else(|| format!("literal `{text}` uses `s` but no field is declared"))?;
            Ok(Quad::new(a, b, field))
        }
    }
}

fn parse_rat(text: &str) -> Result<Rational, String> {
    let (num_text, den_text) = text
        .split_once('/')
        .ok_or_else(|| format!("expected rational `p/q`, got `{text}`"))?;
    let num: BigInt = num_text
        .parse()
        .map_err(|_| format!("bad integer numerator `{num_text}`"))?;
    let den: BigInt = den_text
        .parse()
        .map_err(|_| format!("bad integer denominator `{den_text}`"))?;
    if den <= BigInt::zero() {
        return Err(format!("denominator must be a positive integer, got `{den_text}`"));
    }
    Ok(Rational::new(num, den))
}

/// gcd on rationals: `gcd(p/q, r/s) = gcd(p s, r q) / (q s)`, the generator
/// of the group `(p/q)Z + (r/s)Z`.
pub fn rational_gcd(x: &Rational, y: &Rational) -> Rational {
    if x.is_zero() {
        return y.abs();
    }
    if y.is_zero() {
        return x.abs();
    }
    let num = (x.numer() * y.denom()).gcd(&(y.numer() * x.denom()));
    Rational::new(num, x.denom() * y.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn field(d: u64) -> QuadField {
        QuadField::new(d).unwrap()
    }

    fn q(a: (i64, i64), b: (i64, i64), d: u64) -> Quad {
        Quad::new(rat(a.0, a.1), rat(b.0, b.1), field(d))
    }

    #[test]
    fn discriminant_validation() {
        assert!(QuadField::new(2).is_ok());
        assert!(QuadField::new(5).is_ok());
        assert!(QuadField::new(6).is_ok());
        assert_eq!(QuadField::new(1), Err(FieldError::BadDiscriminant(1)));
        assert_eq!(QuadField::new(4), Err(FieldError::BadDiscriminant(4)));
        assert_eq!(QuadField::new(12), Err(FieldError::BadDiscriminant(12)));
        assert_eq!(QuadField::new(0), Err(FieldError::BadDiscriminant(0)));
    }

    #[test]
    fn sum_cancels_surd() {
        // (1 + sqrt2) + (2 - sqrt2) = 3, and the result is a plain rational.
        let x = q((1, 1), (1, 1), 2);
        let y = q((2, 1), (-1, 1), 2);
        let s = &x + &y;
        assert_eq!(s, Quad::from_int(3));
        assert!(s.field().is_none());
    }

    #[test]
    fn product_of_conjugates() {
        // (1 + sqrt2)(1 - sqrt2) = 1 - 2 = -1.
        let x = q((1, 1), (1, 1), 2);
        let y = q((1, 1), (-1, 1), 2);
        assert_eq!(&x * &y, Quad::from_int(-1));
    }

    #[test]
    fn inverse_by_conjugate() {
        // 1/(3 + sqrt5) = 3/4 - (1/4) sqrt5; check by multiplying back.
        let x = q((3, 1), (1, 1), 5);
        let inv = x.checked_inv().unwrap();
        assert_eq!(inv, q((3, 4), (-1, 4), 5));
        assert_eq!(&x * &inv, Quad::one());
    }

    #[test]
    fn self_quotient_is_one() {
        for v in [q((3, 2), (5, 7), 2), q((-1, 3), (2, 1), 5), Quad::from_int(-7)] {
            let ops = field_ops(&v, &v).unwrap();
            assert_eq!(ops.quotient, Quad::one());
            assert_eq!(ops.difference, Quad::zero());
        }
    }

    #[test]
    fn division_by_zero_reported() {
        let x = Quad::one();
        assert_eq!(
            field_ops(&x, &Quad::zero()).unwrap_err(),
            FieldError::DivisionByZero
        );
    }

    #[test]
    fn mixed_fields_reported() {
        let x = q((0, 1), (1, 1), 2);
        let y = q((0, 1), (1, 1), 3);
        assert_eq!(field_ops(&x, &y).unwrap_err(), FieldError::MixedFields(2, 3));
    }

    #[test]
    fn sign_cases() {
        assert_eq!(Quad::zero().signum(), 0);
        // 3 - 2 sqrt2 > 0 since 9 > 8.
        assert_eq!(q((3, 1), (-2, 1), 2).signum(), 1);
        // 2 - 3 sqrt5 < 0 since 4 < 45.
        assert_eq!(q((2, 1), (-3, 1), 5).signum(), -1);
        assert_eq!(q((-3, 1), (2, 1), 2).signum(), -1);
        assert_eq!(q((-2, 1), (3, 1), 5).signum(), 1);
        assert_eq!(q((0, 1), (-1, 1), 7).signum(), -1);
    }

    #[test]
    fn sign_is_multiplicative() {
        let samples = [
            Quad::zero(),
            Quad::from_int(2),
            Quad::from_int(-3),
            q((3, 1), (-2, 1), 2),
            q((-3, 1), (2, 1), 2),
            q((1, 2), (1, 3), 2),
            q((-1, 2), (-1, 3), 2),
        ];
        for x in &samples {
            for y in &samples {
                assert_eq!((x * y).signum(), x.signum() * y.signum());
            }
        }
    }

    #[test]
    fn rational_ratio_examples() {
        // (2 + 2 sqrt2) = 2 * (1 + sqrt2).
        let x = q((2, 1), (2, 1), 2);
        let y = q((1, 1), (1, 1), 2);
        let r = x.rational_ratio(&y).unwrap().unwrap();
        assert_eq!(r, rat(2, 1));
        // Round trip: r * y = x.
        assert_eq!(&Quad::from_rational(r) * &y, x);

        // sqrt2 / 1 has no rational ratio.
        let s2 = q((0, 1), (1, 1), 2);
        assert_eq!(s2.rational_ratio(&Quad::one()).unwrap(), None);
        // and neither does 1 / sqrt2.
        assert_eq!(Quad::one().rational_ratio(&s2).unwrap(), None);

        // 0 / 5 = 0.
        assert_eq!(
            Quad::zero().rational_ratio(&Quad::from_int(5)).unwrap(),
            Some(rat(0, 1))
        );

        assert_eq!(
            Quad::one().rational_ratio(&Quad::zero()).unwrap_err(),
            FieldError::DivisionByZero
        );
    }

    #[test]
    fn ratio_round_trip_randomish() {
        // r * y recovered for assorted rationals r and nonzero y.
        let ys = [q((1, 1), (1, 1), 5), q((0, 1), (2, 3), 5), Quad::from_int(4)];
        let rs = [rat(3, 7), rat(-5, 2), rat(0, 1), rat(11, 1)];
        for y in &ys {
            for r in &rs {
                let x = &Quad::from_rational(r.clone()) * y;
                assert_eq!(x.rational_ratio(y).unwrap(), Some(r.clone()));
            }
        }
    }

    #[test]
    fn ordering_matches_value() {
        let phi = q((1, 2), (1, 2), 5);
        assert!(phi > Quad::one());
        assert!(phi < Quad::from_int(2));
        let mut v = vec![Quad::from_int(2), phi.clone(), Quad::one(), Quad::zero()];
        v.sort();
        assert_eq!(v, vec![Quad::zero(), Quad::one(), phi, Quad::from_int(2)]);
    }

    #[test]
    fn floor_exact() {
        let phi = q((1, 2), (1, 2), 5); // ~1.618
        assert_eq!(phi.floor(), BigInt::from(1));
        let neg = -&phi;
        assert_eq!(neg.floor(), BigInt::from(-2));
        assert_eq!(Quad::from_rational(rat(7, 2)).floor(), BigInt::from(3));
        assert_eq!(Quad::from_rational(rat(-7, 2)).floor(), BigInt::from(-4));
        assert_eq!(Quad::from_int(3).floor(), BigInt::from(3));
        // 12 - 5 sqrt5 ~ 0.82
        assert_eq!(q((12, 1), (-5, 1), 5).floor(), BigInt::from(0));
        // floor(n <= v < n+1) checked exactly on a sweep.
        for num in -20i64..20 {
            let v = q((num, 3), (1, 7), 5);
            let f = Rational::from(v.floor());
            assert!((&v - &Quad::from_rational(f.clone())).signum() >= 0);
            assert!(
                (&v - &Quad::from_rational(f + Rational::one())).signum() < 0,
                "floor too small for {v}"
            );
        }
    }

    #[test]
    fn rem_euclid_in_range() {
        let phi = q((1, 2), (1, 2), 5);
        let m = Quad::one();
        let r = phi.rem_euclid(&m);
        assert_eq!(r, q((-1, 2), (1, 2), 5)); // phi - 1
        assert!(r.signum() >= 0 && (&r - &m).signum() < 0);
    }

    #[test]
    fn f64_agreement_on_samples() {
        // Exact arithmetic is authoritative; this is only a sanity cross-check.
        let groups = [
            vec![
                q((3, 1), (-2, 1), 2),
                q((1, 2), (17, 3), 2),
                Quad::from_rational(rat(22, 7)),
            ],
            vec![
                q((1, 2), (1, 2), 5),
                q((-7, 3), (5, 4), 5),
                Quad::from_rational(rat(-3, 11)),
            ],
        ];
        for samples in &groups {
            for x in samples {
                for y in samples {
                    let exact = (x * y).to_f64();
                    let float = x.to_f64() * y.to_f64();
                    if exact.abs() > 1e-6 {
                        assert!(
                            ((exact - float) / exact).abs() < 1e-9,
                            "float drift on {x} * {y}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn literal_round_trip() {
        let f = field(5);
        for text in ["3/4", "-3/2", "1/2+1/2*s", "0/1-7/3*s", "-1/1+1/1*s"] {
            let v = parse_number(text, Some(f)).unwrap();
            assert_eq!(v.to_string(), text, "canonical literal should round-trip");
            assert_eq!(parse_number(&v.to_string(), Some(f)).unwrap(), v);
        }
        // Non-canonical but grammatical input parses and re-serializes reduced.
        let v = parse_number("2/4", None).unwrap();
        assert_eq!(v.to_string(), "1/2");
    }

    #[test]
    fn literal_rejects() {
        assert!(parse_number("1/0", None).is_err());
        assert!(parse_number("1/-2", None).is_err());
        assert!(parse_number("x/2", None).is_err());
        assert!(parse_number("1/2+1/3", Some(field(2))).is_err());
        assert!(parse_number("1/2+1/3*s", None).is_err(), "surd without a field");
        assert!(parse_number("3", None).is_err(), "bare integers are not literals");
    }

    #[test]
    fn rational_gcd_folds() {
        let g = rational_gcd(&rational_gcd(&rat(1, 1), &rat(1, 2)), &rat(1, 3));
        assert_eq!(g, rat(1, 6));
        assert_eq!(rational_gcd(&rat(0, 1), &rat(-3, 4)), rat(3, 4));
        assert_eq!(rational_gcd(&rat(2, 3), &rat(4, 5)), rat(2, 15));
    }
}

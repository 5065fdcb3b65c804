//! Exact scalar arithmetic over a prime field `F_p` or over the rationals.
//!
//! Every scalar is kept in canonical form: prime-field elements as the
//! representative in `0..p`, rationals as a reduced fraction with positive
//! denominator. Equality of scalars is therefore a plain representation
//! check, and serialized forms ("13", "-3/7") are unique.

use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The coefficient field all scalars of a computation live in.
///
/// Prime fields are capped at `p < 2^31` so that products of canonical
/// representatives fit into 64-bit intermediates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    /// The prime field `F_p`.
    Prime(u32),
    /// The rationals with arbitrary-precision integers.
    Rational,
}

/// Errors from scalar construction and arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    /// The requested prime-field modulus is not prime or out of range.
    NotPrime(u64),
    /// Multiplicative inverse of zero.
    DivisionByZero,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(n) => write!(f, "{n} is not a prime in [2, 2^31)"),
            FieldError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

impl core::error::Error for FieldError {}

/// Errors from parsing a scalar string against a [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarParseError {
    /// Empty string or characters outside the expected grammar.
    Malformed(String),
    /// Fraction with a zero denominator.
    ZeroDenominator(String),
    /// Fraction syntax used for a prime-field scalar.
    FractionInPrimeField(String),
}

impl fmt::Display for ScalarParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarParseError::Malformed(s) => write!(f, "malformed scalar {s:?}"),
            ScalarParseError::ZeroDenominator(s) => {
                write!(f, "scalar {s:?} has a zero denominator")
            }
            ScalarParseError::FractionInPrimeField(s) => {
                write!(f, "scalar {s:?} is a fraction but the field is F_p")
            }
        }
    }
}

impl core::error::Error for ScalarParseError {}

impl FieldSpec {
    /// Builds the spec for `F_p`, checking that `p` is prime and `p < 2^31`.
    pub fn prime(p: u64) -> Result<FieldSpec, FieldError> {
        if p < (1 << 31) && is_prime(p) {
            Ok(FieldSpec::Prime(p as u32))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Prime { p: *p, value: 0 },
            FieldSpec::Rational => Scalar::Rational(Box::new(BigRational::zero())),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Prime { p: *p, value: 1 },
            FieldSpec::Rational => Scalar::Rational(Box::new(BigRational::one())),
        }
    }

    /// The image of the integer `n` in this field.
    pub fn from_integer(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => {
                let m = i64::from(*p);
                Scalar::Prime {
                    p: *p,
                    value: n.rem_euclid(m) as u32,
                }
            }
            FieldSpec::Rational => Scalar::Rational(Box::new(BigRational::from_integer(n.into()))),
        }
    }

    /// Parses the canonical string form of a scalar: a signed decimal
    /// integer, or `a/b` over the rationals.
    ///
    /// Prime-field integers of any size are reduced mod `p`; fraction
    /// syntax is rejected for prime fields.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, ScalarParseError> {
        let s = s.trim();
        match self {
            FieldSpec::Prime(p) => {
                if s.contains('/') {
                    return Err(ScalarParseError::FractionInPrimeField(s.into()));
                }
                let (negative, digits) = split_sign(s)?;
                let p64 = u64::from(*p);
                let mut v: u64 = 0;
                for ch in digits.chars() {
                    let d = ch
                        .to_digit(10)
                        .ok_or_else(|| ScalarParseError::Malformed(s.into()))?;
                    v = (v * 10 + u64::from(d)) % p64;
                }
                let value = if negative { (p64 - v) % p64 } else { v } as u32;
                Ok(Scalar::Prime { p: *p, value })
            }
            FieldSpec::Rational => {
                let (numer, denom) = match s.split_once('/') {
                    Some((n, d)) => (parse_bigint(n, s)?, parse_bigint(d, s)?),
                    None => (parse_bigint(s, s)?, BigInt::one()),
                };
                if denom.is_zero() {
                    return Err(ScalarParseError::ZeroDenominator(s.into()));
                }
                Ok(Scalar::Rational(Box::new(BigRational::new(numer, denom))))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

fn split_sign(s: &str) -> Result<(bool, &str), ScalarParseError> {
    let (negative, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    if digits.is_empty() {
        return Err(ScalarParseError::Malformed(s.into()));
    }
    Ok((negative, digits))
}

fn parse_bigint(part: &str, whole: &str) -> Result<BigInt, ScalarParseError> {
    let part = part.trim();
    let (negative, digits) = split_sign(part)?;
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(ScalarParseError::Malformed(whole.into()));
    }
    let mag: BigInt = digits
        .parse()
        .map_err(|_| ScalarParseError::Malformed(whole.into()))?;
    Ok(if negative { -mag } else { mag })
}

/// An element of a prime field or of `Q`, in canonical form.
///
/// Binary operations panic when the operands belong to different fields;
/// all scalars of a computation are expected to be produced from a single
/// [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Prime { p: u32, value: u32 },
    Rational(Box<BigRational>),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Prime { p, .. } => FieldSpec::Prime(*p),
            Scalar::Rational(_) => FieldSpec::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Prime { value, .. } => *value == 0,
            Scalar::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Prime { value, .. } => *value == 1,
            Scalar::Rational(r) => r.is_one(),
        }
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match self {
            Scalar::Prime { p, value } => Ok(Scalar::Prime {
                p: *p,
                value: mod_inverse(*value, *p),
            }),
            Scalar::Rational(r) => Ok(Scalar::Rational(Box::new(r.recip()))),
        }
    }

    fn same_field(&self, other: &Scalar) -> bool {
        self.field() == other.field()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Prime { value, .. } => write!(f, "{value}"),
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt, $prime_op:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                assert!(
                    self.same_field(rhs),
                    "scalar operands from different fields: {} vs {}",
                    self.field(),
                    rhs.field()
                );
                match (self, rhs) {
                    (Scalar::Prime { p, value: a }, Scalar::Prime { value: b, .. }) => {
                        Scalar::Prime { p: *p, value: $prime_op(*a, *b, *p) }
                    }
                    (Scalar::Rational(a), Scalar::Rational(b)) => {
                        Scalar::Rational(Box::new(&**a $op &**b))
                    }
                    _ => unreachable!(),
                }
            }
        }

        impl $trait for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

fn prime_add(a: u32, b: u32, p: u32) -> u32 {
    ((u64::from(a) + u64::from(b)) % u64::from(p)) as u32
}

fn prime_sub(a: u32, b: u32, p: u32) -> u32 {
    ((u64::from(a) + u64::from(p) - u64::from(b)) % u64::from(p)) as u32
}

fn prime_mul(a: u32, b: u32, p: u32) -> u32 {
    ((u64::from(a) * u64::from(b)) % u64::from(p)) as u32
}

scalar_binop!(Add, add, +, prime_add);
scalar_binop!(Sub, sub, -, prime_sub);
scalar_binop!(Mul, mul, *, prime_mul);

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Prime { p, value } => Scalar::Prime {
                p: *p,
                value: if *value == 0 { 0 } else { p - value },
            },
            Scalar::Rational(r) => Scalar::Rational(Box::new(-&**r)),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    // Extended Euclid on (a, p); a is nonzero and p prime.
    let (mut r0, mut r1) = (i64::from(a), i64::from(p));
    let (mut t0, mut t1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(i64::from(p)) as u32
}

/// Deterministic Miller–Rabin primality test, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n % small == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This witness set is deterministic for all 64-bit integers.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(n)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

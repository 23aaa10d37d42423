//! Exact coefficients: rationals (small fast path with big-integer fallback)
//! and prime fields of word size.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field of the ambient power series ring.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase", try_from = "FieldRepr")]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum FieldRepr {
    Rational,
    Prime(u64),
}

impl TryFrom<FieldRepr> for Field {
    type Error = Error;

    fn try_from(repr: FieldRepr) -> Result<Field> {
        match repr {
            FieldRepr::Rational => Ok(Field::Rational),
            FieldRepr::Prime(p) => Field::prime(p),
        }
    }
}

impl Field {
    /// GF(p); `p` must be a prime below 2^32.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 32 {
            return Err(Error::InvalidField(format!("modulus {p} exceeds 2^32")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(Rat::Small(Ratio::from_integer(v))),
            Field::Prime(p) => Scalar::Modular {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// Reduces `num/den` into the field. Fails when `den` vanishes in the field.
    pub fn from_fraction(self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::Parse("division by zero in coefficient".into()));
        }
        match self {
            Field::Rational => Ok(Scalar::Rational(Rat::from_big(BigRational::new(
                num.clone(),
                den.clone(),
            )))),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let n = num.mod_floor(&pb).to_u64().expect("reduced below p");
                let d = den.mod_floor(&pb).to_u64().expect("reduced below p");
                if d == 0 {
                    return Err(Error::Parse(format!(
                        "coefficient {num}/{den} is not reducible mod {p}"
                    )));
                }
                Ok(Scalar::Modular {
                    value: mul_mod(n, inv_mod(d, p), p),
                    modulus: p,
                })
            }
        }
    }

    pub fn label(self) -> String {
        match self {
            Field::Rational => "QQ".to_string(),
            Field::Prime(p) => format!("GF({p})"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Rational number stored as `Ratio<i64>` while it fits.
///
/// Canonical: a value representable as `Small` is never stored as `Big`, so
/// the derived equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rat {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Rat {
    fn from_big(b: BigRational) -> Rat {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::Small(Ratio::new_raw(n, d)),
            _ => Rat::Big(b),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(r) => {
                BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
            }
            Rat::Big(b) => b.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_zero(),
            Rat::Big(b) => b.is_zero(),
        }
    }

    fn binop(
        &self,
        other: &Rat,
        small: impl Fn(&Ratio<i64>, &Ratio<i64>) -> Option<Ratio<i64>>,
        big: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Rat {
        if let (Rat::Small(a), Rat::Small(b)) = (self, other) {
            if let Some(r) = small(a, b) {
                return Rat::Small(r);
            }
        }
        Rat::from_big(big(&self.to_big(), &other.to_big()))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(r) => write!(f, "{r}"),
            Rat::Big(b) => write!(f, "{b}"),
        }
    }
}

/// An exact field element. Modular values are canonical representatives in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rat),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(Rat::Small(r)) => r.is_one(),
            Scalar::Rational(Rat::Big(_)) => false,
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => {
                Scalar::Rational(a.binop(b, |x, y| x.checked_add(y), |x, y| x + y))
            }
            (
                Scalar::Modular {
                    value: a,
                    modulus: p,
                },
                Scalar::Modular {
                    value: b,
                    modulus: q,
                },
            ) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Modular {
                    value: (a + b) % p,
                    modulus: *p,
                }
            }
            _ => panic!("mixed scalar fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => {
                Scalar::Rational(a.binop(b, |x, y| x.checked_sub(y), |x, y| x - y))
            }
            (
                Scalar::Modular {
                    value: a,
                    modulus: p,
                },
                Scalar::Modular {
                    value: b,
                    modulus: q,
                },
            ) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Modular {
                    value: (a + p - b) % p,
                    modulus: *p,
                }
            }
            _ => panic!("mixed scalar fields"),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => {
                Scalar::Rational(a.binop(b, |x, y| x.checked_mul(y), |x, y| x * y))
            }
            (
                Scalar::Modular {
                    value: a,
                    modulus: p,
                },
                Scalar::Modular {
                    value: b,
                    modulus: q,
                },
            ) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Modular {
                    value: mul_mod(*a, *b, *p),
                    modulus: *p,
                }
            }
            _ => panic!("mixed scalar fields"),
        }
    }

    /// `self / other`; panics on a zero divisor.
    pub fn div(&self, other: &Scalar) -> Scalar {
        assert!(!other.is_zero(), "division by zero scalar");
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => {
                Scalar::Rational(a.binop(b, |x, y| x.checked_div(y), |x, y| x / y))
            }
            (
                Scalar::Modular {
                    value: a,
                    modulus: p,
                },
                Scalar::Modular {
                    value: b,
                    modulus: q,
                },
            ) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Modular {
                    value: mul_mod(*a, inv_mod(*b, *p), *p),
                    modulus: *p,
                }
            }
            _ => panic!("mixed scalar fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        self.field().zero().sub(self)
    }

    pub fn inv(&self) -> Scalar {
        self.field().one().div(self)
    }

    /// Numerator and denominator of a rational scalar, for clearing denominators.
    pub fn as_fraction(&self) -> Option<(BigInt, BigInt)> {
        match self {
            Scalar::Rational(r) => {
                let b = r.to_big();
                Some((b.numer().clone(), b.denom().clone()))
            }
            Scalar::Modular { .. } => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(Rat::Small(r)) => r.is_negative(),
            Scalar::Rational(Rat::Big(b)) => b.is_negative(),
            Scalar::Modular { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

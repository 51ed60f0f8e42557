//! Gaussian rationals: the exact base field Q(i).
//!
//! A [`Scalar`] is re + im*i with arbitrary-precision rational components.
//! All arithmetic is exact; equality is decidable and used everywhere in
//! place of tolerance checks.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// num/den as a real rational. Panics if den == 0.
    pub fn rational(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// re_n/re_d + (im_n/im_d)i. Panics on zero denominators.
    pub fn gauss(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> Self {
        assert!(re_d != 0 && im_d != 0, "zero denominator");
        Scalar::new(
            BigRational::new(BigInt::from(re_n), BigInt::from(re_d)),
            BigRational::new(BigInt::from(im_n), BigInt::from(im_d)),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Scalar {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// |z|^2 = re^2 + im^2, a nonnegative rational. Zero iff z == 0.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero scalar");
        let n = self.norm_sq();
        Scalar::new(&self.re / &n, -(&self.im / &n))
    }

    /// True when the scalar is a nonzero real rational (handy for
    /// normalization decisions in printing).
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn rat_str(r: &BigRational) -> String {
        format!("{}/{}", r.numer(), r.denom())
    }

    /// Human-oriented rendering: denominators of 1 elided, unit imaginary
    /// coefficients shortened ("1", "-i", "1+i"). Not the canonical format;
    /// used only in text output.
    pub fn display_compact(&self) -> String {
        fn rat(r: &BigRational) -> String {
            if r.denom().is_one() {
                format!("{}", r.numer())
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        if self.is_zero() {
            return "0".to_string();
        }
        let im_str = |r: &BigRational| -> String {
            if r.is_one() {
                "i".to_string()
            } else if (-r).is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", rat(r))
            }
        };
        if self.im.is_zero() {
            rat(&self.re)
        } else if self.re.is_zero() {
            im_str(&self.im)
        } else if self.im.is_negative() {
            format!("{}-{}", rat(&self.re), im_str(&-self.im.clone()))
        } else {
            format!("{}+{}", rat(&self.re), im_str(&self.im))
        }
    }
}

impl fmt::Display for Scalar {
    /// Canonical text form: "0", "p/q", "r/s*i" or "p/q+r/s*i" with the
    /// imaginary sign folded into the joining operator. Denominators are
    /// always explicit, so round-trips are byte-stable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", Self::rat_str(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", Self::rat_str(&self.im));
        }
        if self.im.is_negative() {
            write!(
                f,
                "{}-{}*i",
                Self::rat_str(&self.re),
                Self::rat_str(&(-self.im.clone()))
            )
        } else {
            write!(f, "{}+{}*i", Self::rat_str(&self.re), Self::rat_str(&self.im))
        }
    }
}

impl fmt::Debug for Scalar {
    // Debug delegates to the canonical text form; keeps assertion output short.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseScalarError(pub String);

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid scalar: {}", self.0)
    }
}

impl std::error::Error for ParseScalarError {}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Lenient parser: accepts the canonical form plus integer shorthands
    /// ("3", "-2"), bare imaginary units ("i", "-i", "2i", "3/4i"), optional
    /// "*" before i, optional whitespace, and terms in either order.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParseScalarError(s.to_string()));
        }
        // split into signed terms at top-level + and -
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (k, c) in compact.chars().enumerate() {
            if (c == '+' || c == '-') && k > 0 && !matches!(compact.as_bytes()[k - 1], b'+' | b'-' | b'/') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(c);
        }
        terms.push(cur);

        let mut total = Scalar::zero();
        for t in terms {
            if t.is_empty() || t == "+" || t == "-" {
                return Err(ParseScalarError(s.to_string()));
            }
            let (imag, body) = match t.strip_suffix('i') {
                Some(rest) => (true, rest.strip_suffix('*').unwrap_or(rest).to_string()),
                None => (false, t.clone()),
            };
            let body = match body.as_str() {
                "" => "1".to_string(),
                "+" => "1".to_string(),
                "-" => "-1".to_string(),
                _ => body,
            };
            let r = BigRational::from_str(&body).map_err(|_| ParseScalarError(s.to_string()))?;
            if imag {
                total += Scalar::new(BigRational::zero(), r);
            } else {
                total += Scalar::new(r, BigRational::zero());
            }
        }
        Ok(total)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop_variants {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}
binop_variants!(Add, add);

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}
binop_variants!(Sub, sub);

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        // (a+bi)(c+di) = ac-bd + (ad+bc)i, skipping zero component products
        let ac_bd = if rhs.im.is_zero() || self.im.is_zero() {
            if self.re.is_zero() || rhs.re.is_zero() {
                BigRational::zero()
            } else {
                &self.re * &rhs.re
            }
        } else if self.re.is_zero() || rhs.re.is_zero() {
            -(&self.im * &rhs.im)
        } else {
            &self.re * &rhs.re - &self.im * &rhs.im
        };
        let ad = if self.re.is_zero() || rhs.im.is_zero() {
            BigRational::zero()
        } else {
            &self.re * &rhs.im
        };
        let bc = if self.im.is_zero() || rhs.re.is_zero() {
            BigRational::zero()
        } else {
            &self.im * &rhs.re
        };
        Scalar::new(ac_bd, ad + bc)
    }
}
binop_variants!(Mul, mul);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * rhs.inv()
    }
}
binop_variants!(Div, div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        *self = (&*self) + rhs;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        *self = (&*self) - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = (&*self) * rhs;
    }
}

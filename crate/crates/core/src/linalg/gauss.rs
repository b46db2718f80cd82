//! Gaussian rationals `re + im·i` and their text grammar.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rat;
use crate::error::ParseError;

/// Ordered lexicographically by `(re, im)`; the order only serves determinism.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub const ZERO: GaussRat = GaussRat { re: Rat::ZERO, im: Rat::ZERO };
    pub const ONE: GaussRat = GaussRat { re: Rat::ONE, im: Rat::ZERO };
    pub const I: GaussRat = GaussRat { re: Rat::ZERO, im: Rat::ONE };

    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn one() -> Self {
        Self::ONE
    }

    pub fn i() -> Self {
        Self::I
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat { re: Rat::from_int(n), im: Rat::ZERO }
    }

    pub fn from_rat(r: Rat) -> Self {
        GaussRat { re: r, im: Rat::ZERO }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        if self.im.is_zero() {
            return self.clone();
        }
        GaussRat { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|^2`, a nonnegative rational.
    pub fn norm_sqr(&self) -> Rat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        if self.im.is_zero() {
            return GaussRat::from_rat(self.re.recip());
        }
        let n = self.norm_sqr();
        GaussRat { re: &self.re / &n, im: -(&self.im / &n) }
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        GaussRat::from_int(n)
    }
}

impl From<Rat> for GaussRat {
    fn from(r: Rat) -> Self {
        GaussRat::from_rat(r)
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        let im = if self.im.is_zero() && rhs.im.is_zero() {
            Rat::ZERO
        } else {
            &self.im + &rhs.im
        };
        GaussRat { re: &self.re + &rhs.re, im }
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        let im = if self.im.is_zero() && rhs.im.is_zero() {
            Rat::ZERO
        } else {
            &self.im - &rhs.im
        };
        GaussRat { re: &self.re - &rhs.re, im }
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => GaussRat::from_rat(&self.re * &rhs.re),
            (true, false) => GaussRat { re: &self.re * &rhs.re, im: &self.re * &rhs.im },
            (false, true) => GaussRat { re: &self.re * &rhs.re, im: &self.im * &rhs.re },
            (false, false) => GaussRat {
                re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
                im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
            },
        }
    }
}

impl<'a> Div<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: &GaussRat) -> GaussRat {
        self * &rhs.inv()
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -&self.re, im: -&self.im }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: GaussRat) -> GaussRat {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: &GaussRat) -> GaussRat {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        *self = &*self - rhs;
    }
}

fn write_imag(f: &mut fmt::Formatter<'_>, im: &Rat) -> fmt::Result {
    if im.is_one() {
        write!(f, "i")
    } else if (-im).is_one() {
        write!(f, "-i")
    } else {
        write!(f, "{im}i")
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write_imag(f, &self.im);
        }
        write!(f, "{}", self.re)?;
        if self.im.is_negative() {
            write_imag(f, &self.im)
        } else {
            write!(f, "+")?;
            write_imag(f, &self.im)
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussRat {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ParseError::Coefficient(s.to_string());
        let Some(body) = t.strip_suffix('i') else {
            return Ok(GaussRat::from_rat(t.parse().map_err(|_| bad())?));
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(k, _)| k)
            .last();
        let (re_text, im_text) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let re = if re_text.is_empty() {
            Rat::ZERO
        } else {
            re_text.parse().map_err(|_| bad())?
        };
        let im = match im_text {
            "" | "+" => Rat::ONE,
            "-" => -Rat::ONE,
            other => {
                if other.contains('i') {
                    return Err(bad());
                }
                other.parse().map_err(|_| bad())?
            }
        };
        Ok(GaussRat { re, im })
    }
}

impl Serialize for GaussRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

struct GaussVisitor;

impl<'de> Visitor<'de> for GaussVisitor {
    type Value = GaussRat;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "a Gaussian rational as a string like \"-1/2+3i\" or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<GaussRat, E> {
        v.parse().map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<GaussRat, E> {
        Ok(GaussRat::from_int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<GaussRat, E> {
        i64::try_from(v)
            .map(GaussRat::from_int)
            .map_err(|_| E::custom("integer coefficient out of range; use a string"))
    }
}

impl<'de> Deserialize<'de> for GaussRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(GaussVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussRat {
        s.parse().unwrap()
    }

    #[test]
    fn grammar_examples() {
        for s in ["3", "-1/2", "2+1/3i", "-i", "i", "5i", "-2/7i", "1-i", "-3/4-5/6i"] {
            assert_eq!(g(s).to_string(), s, "{s}");
        }
        assert_eq!(g("2 + 1/3 i"), g("2+1/3i"));
        assert_eq!(g("+i"), GaussRat::I);
        assert_eq!(g("0+0i"), GaussRat::ZERO);
        for bad in ["", "i i", "1/0", "2+", "ii", "1+2", "--1"] {
            assert!(bad.parse::<GaussRat>().is_err(), "{bad}");
        }
    }

    #[test]
    fn field_arithmetic() {
        let a = g("1+2i");
        let b = g("3-i");
        assert_eq!((&a * &b).to_string(), "5+5i");
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(&a * &a.inv(), GaussRat::ONE);
        assert_eq!(GaussRat::I.inv(), g("-i"));
        assert_eq!(a.conj().conj(), a);
        assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn serde_accepts_strings_and_integers() {
        let v: Vec<GaussRat> = serde_json::from_str(r#"["1/2", -3, "i"]"#).unwrap();
        assert_eq!(v, vec![g("1/2"), g("-3"), GaussRat::I]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1/2","-3","i"]"#);
    }
}

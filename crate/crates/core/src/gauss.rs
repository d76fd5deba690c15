//! Gaussian integers `a + bi` with `i64` parts.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gaussian {
    pub re: i64,
    pub im: i64,
}

impl Gaussian {
    pub const ZERO: Gaussian = Gaussian { re: 0, im: 0 };
    pub const ONE: Gaussian = Gaussian { re: 1, im: 0 };
    pub const I: Gaussian = Gaussian { re: 0, im: 1 };

    pub const fn new(re: i64, im: i64) -> Gaussian {
        Gaussian { re, im }
    }

    pub const fn real(re: i64) -> Gaussian {
        Gaussian { re, im: 0 }
    }

    #[inline]
    pub fn conj(self) -> Gaussian {
        Gaussian::new(self.re, -self.im)
    }

    /// `|z|^2`.
    #[inline]
    pub fn norm(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    pub fn scale(self, k: i64) -> Gaussian {
        Gaussian::new(self.re * k, self.im * k)
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    #[inline]
    fn add(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re + o.re, self.im + o.im)
    }
}

impl AddAssign for Gaussian {
    #[inline]
    fn add_assign(&mut self, o: Gaussian) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    #[inline]
    fn sub(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    #[inline]
    fn mul(self, o: Gaussian) -> Gaussian {
        Gaussian::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl std::iter::Sum for Gaussian {
    fn sum<I: Iterator<Item = Gaussian>>(iter: I) -> Gaussian {
        iter.fold(Gaussian::ZERO, |a, b| a + b)
    }
}

/// Renders as `a+bi`, `a-bi`, or `a` when purely real.
impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0 {
            write!(f, "{}", self.re)
        } else if self.im < 0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl FromStr for Gaussian {
    type Err = Error;

    fn from_str(s: &str) -> Result<Gaussian, Error> {
        let bad = || Error::Parse(format!("not a Gaussian integer: {s:?}"));
        let s = s.trim();
        let Some(body) = s.strip_suffix('i') else {
            return s.parse().map(Gaussian::real).map_err(|_| bad());
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let re: i64 = body[..split].parse().map_err(|_| bad())?;
        let im_str = &body[split..];
        let im: i64 = match im_str {
            "+" => 1,
            "-" => -1,
            _ => im_str.trim_start_matches('+').parse().map_err(|_| bad())?,
        };
        Ok(Gaussian::new(re, im))
    }
}

impl Serialize for Gaussian {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Gaussian {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Gaussian, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

//! Exact rational scalars and the fraction-string encoding used by every
//! JSON interchange format ("3", "-1/2").

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// Vector of exact coordinates in some fixed basis.
pub type Vector = Vec<Scalar>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_scaled(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

pub fn scaled(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

/// Parses `"p"`, `"p/q"` or a plain decimal-free integer with optional sign.
pub fn parse(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let bad = || Error::ParseScalar(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Scalar::from_integer(n))
        }
    }
}

/// Reduced fraction string; integers print without a denominator.
pub fn format(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Scalar) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn sign(x: &Scalar) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// serde adapter: a `Scalar` as a fraction string.
pub mod serde_frac {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

/// serde adapter: a `Vector` as a list of fraction strings.
pub mod serde_frac_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vector, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|x| parse(x).map_err(serde::de::Error::custom)).collect()
    }
}

/// serde adapter: a list of `Vector`s as nested lists of fraction strings.
pub mod serde_frac_vecs {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vector], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|row| row.iter().map(format).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vector>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|row| row.iter().map(|x| parse(x).map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}

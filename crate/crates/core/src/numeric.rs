//! Small numeric helpers shared by the series kernel, the classifier and the
//! report types.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Natural logarithm of a big integer. Returns `-inf` for zero.
pub fn ln_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map_or(f64::NAN, f64::ln);
    }
    let shift = bits - 64;
    let head = (x >> shift).to_f64().unwrap_or(f64::NAN);
    head.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `a / b` as a float, accurate to double precision even when both operands
/// are far beyond `f64` range.
pub fn ratio_f64(a: &BigUint, b: &BigUint) -> f64 {
    if b.is_zero() {
        return if a.is_zero() { f64::NAN } else { f64::INFINITY };
    }
    let bits = a.bits().max(b.bits());
    let shift = bits.saturating_sub(96);
    let num = (a >> shift).to_f64().unwrap_or(f64::NAN);
    let den = (b >> shift).to_f64().unwrap_or(f64::NAN);
    if den == 0.0 {
        // b is negligible next to a
        return (ln_big(a) - ln_big(b)).exp();
    }
    num / den
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The `r`-fold iterated natural logarithm; `None` once an iterate drops to
/// or below zero.
pub fn iterated_ln(x: f64, r: u32) -> Option<f64> {
    let mut v = x;
    for _ in 0..r {
        if v <= 0.0 {
            return None;
        }
        v = v.ln();
    }
    (v > 0.0 && v.is_finite()).then_some(v)
}

/// Serde adapters rendering big integers as decimal strings.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        BigUint::parse_bytes(text.as_bytes(), 10)
            .ok_or_else(|| serde::de::Error::custom(format!("not a decimal integer: {text}")))
    }

    pub mod vec {
        use num_bigint::BigUint;
        use serde::ser::SerializeSeq;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(xs: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&x.to_str_radix(10))?;
            }
            seq.end()
        }
    }
}

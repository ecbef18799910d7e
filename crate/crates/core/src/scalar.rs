//! Scalars and coordinate vectors.
//!
//! Exact scalars are complex numbers with arbitrary-precision rational real
//! and imaginary parts. A [`Vector`] is either exact or float, tagged at the
//! vector level; anything exact stays exact until an operation genuinely
//! requires a square root that is not rational, at which point the caller
//! gets the documented float fallback.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Comparison tolerance used whenever an exact check falls back to floats.
pub const FLOAT_EQ_TOL: f64 = 1e-12;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(k: i64) -> Rat {
    Rat::from_integer(BigInt::from(k))
}

pub fn rat_to_f64(q: &Rat) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // fall back to a widening division for extreme numerators
        let n = q.numer().to_f64().unwrap_or(f64::MAX);
        let d = q.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// `"p"` for integers, `"p/q"` otherwise.
pub fn rat_to_string(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p/q"`, integers, and decimal literals (`-3`, `0.25`, `1.5e-3`)
/// exactly. Decimal digits convert exactly, so `0.1` means one tenth.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().ok()?;
        let den: BigInt = q.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rat::new(num, den));
    }
    // decimal literal with optional exponent
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if frac_part.contains(['+', '-']) {
        return None;
    }
    let digits = format!(
        "{}{}",
        if int_part.is_empty() || int_part == "-" || int_part == "+" {
            format!("{int_part}0")
        } else {
            int_part.to_string()
        },
        frac_part
    );
    let num: BigInt = digits.parse().ok()?;
    let scale = frac_part.len() as i32;
    let ten = BigInt::from(10);
    let power = |k: i32| -> BigInt { ten.pow(k.unsigned_abs()) };
    let value = if exp >= scale {
        Rat::from_integer(num * power(exp - scale))
    } else {
        Rat::new(num, power(scale - exp))
    };
    Some(value)
}

fn exact_sqrt_int(x: &BigInt) -> Option<BigInt> {
    match x.sign() {
        Sign::Minus => None,
        Sign::NoSign => Some(BigInt::zero()),
        Sign::Plus => {
            let r = x.sqrt();
            if &(&r * &r) == x {
                Some(r)
            } else {
                None
            }
        }
    }
}

/// Exact square root of a nonnegative rational, when it is rational.
pub fn exact_sqrt(q: &Rat) -> Option<Rat> {
    if q.is_negative() {
        return None;
    }
    let num = exact_sqrt_int(q.numer())?;
    let den = exact_sqrt_int(q.denom())?;
    Some(Rat::new(num, den))
}

/// Complex scalar with exact rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactComplex {
    pub re: Rat,
    pub im: Rat,
}

impl ExactComplex {
    pub fn new(re: Rat, im: Rat) -> Self {
        ExactComplex { re, im }
    }

    pub fn from_real(re: Rat) -> Self {
        ExactComplex {
            re,
            im: Rat::zero(),
        }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_real(rat_int(k))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        ExactComplex {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ExactComplex {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        ExactComplex {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn neg(&self) -> Self {
        ExactComplex {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn scale(&self, by: &Rat) -> Self {
        ExactComplex {
            re: &self.re * by,
            im: &self.im * by,
        }
    }

    pub fn modulus_squared(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `|z|` when it is a rational number (always the case for real or
    /// purely imaginary scalars), otherwise `None`.
    pub fn rational_modulus(&self) -> Option<Rat> {
        if self.im.is_zero() {
            return Some(self.re.abs());
        }
        if self.re.is_zero() {
            return Some(self.im.abs());
        }
        exact_sqrt(&self.modulus_squared())
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = ExactComplex::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Debug for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", rat_to_string(&self.re))
        } else {
            write!(f, "{}+{}i", rat_to_string(&self.re), rat_to_string(&self.im))
        }
    }
}

/// A numeric result: exact rational, or a float estimate.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rat),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => rat_to_f64(q),
            Value::Float(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn exact(&self) -> Option<&Rat> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Float(_) => None,
        }
    }

    /// Strict `> 1`, exact where possible, `1 + tol` in float mode.
    pub fn exceeds_one(&self, float_tol: f64) -> bool {
        match self {
            Value::Exact(q) => *q > Rat::one(),
            Value::Float(x) => *x > 1.0 + float_tol,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Value::Exact(q) => q.is_one(),
            Value::Float(x) => (*x - 1.0).abs() <= FLOAT_EQ_TOL,
        }
    }
}

/// Coordinate vector, exact or float.
#[derive(Clone, Debug, PartialEq)]
pub enum Vector {
    Exact(Vec<ExactComplex>),
    Float(Vec<Complex64>),
}

/// Coordinatewise moduli of a vector, exact when every coordinate has a
/// rational modulus.
pub enum Moduli {
    Exact(Vec<Rat>),
    Float(Vec<f64>),
}

impl Vector {
    pub fn dim(&self) -> usize {
        match self {
            Vector::Exact(v) => v.len(),
            Vector::Float(v) => v.len(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Vector::Exact(_))
    }

    pub fn from_rationals(coords: Vec<Rat>) -> Self {
        Vector::Exact(coords.into_iter().map(ExactComplex::from_real).collect())
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector::Exact(coords.iter().map(|&k| ExactComplex::from_int(k)).collect())
    }

    pub fn from_f64s(coords: &[f64]) -> Self {
        Vector::Float(coords.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zero_exact(n: usize) -> Self {
        Vector::Exact(vec![ExactComplex::zero(); n])
    }

    pub fn basis(n: usize, j: usize) -> Self {
        let mut coords = vec![ExactComplex::zero(); n];
        coords[j] = ExactComplex::one();
        Vector::Exact(coords)
    }

    pub fn exact_coords(&self) -> Option<&[ExactComplex]> {
        match self {
            Vector::Exact(v) => Some(v),
            Vector::Float(_) => None,
        }
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        match self {
            Vector::Exact(v) => v.iter().map(ExactComplex::to_c64).collect(),
            Vector::Float(v) => v.clone(),
        }
    }

    /// Every imaginary part identically zero.
    pub fn is_real(&self) -> bool {
        match self {
            Vector::Exact(v) => v.iter().all(|z| z.im.is_zero()),
            Vector::Float(v) => v.iter().all(|z| z.im == 0.0),
        }
    }

    /// Exact, real, and every coordinate `>= 0`.
    pub fn is_nonnegative_exact(&self) -> bool {
        match self {
            Vector::Exact(v) => v.iter().all(|z| z.im.is_zero() && !z.re.is_negative()),
            Vector::Float(_) => false,
        }
    }

    /// Coordinatewise moduli; exact unless some coordinate has an irrational
    /// modulus, in which case the whole vector drops to floats.
    pub fn moduli(&self) -> Moduli {
        match self {
            Vector::Float(v) => Moduli::Float(v.iter().map(|z| z.norm()).collect()),
            Vector::Exact(v) => {
                let mut out = Vec::with_capacity(v.len());
                for z in v {
                    match z.rational_modulus() {
                        Some(m) => out.push(m),
                        None => {
                            return Moduli::Float(v.iter().map(|z| z.to_c64().norm()).collect())
                        }
                    }
                }
                Moduli::Exact(out)
            }
        }
    }

    /// Indices of nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        match self {
            Vector::Exact(v) => v
                .iter()
                .enumerate()
                .filter(|(_, z)| !z.is_zero())
                .map(|(i, _)| i)
                .collect(),
            Vector::Float(v) => v
                .iter()
                .enumerate()
                .filter(|(_, z)| z.norm() > FLOAT_EQ_TOL)
                .map(|(i, _)| i)
                .collect(),
        }
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        match (self, other) {
            (Vector::Exact(a), Vector::Exact(b)) => Ok(Vector::Exact(
                a.iter().zip(b).map(|(x, y)| x.add(y)).collect(),
            )),
            _ => {
                let a = self.to_c64();
                let b = other.to_c64();
                Ok(Vector::Float(
                    a.iter().zip(&b).map(|(x, y)| x + y).collect(),
                ))
            }
        }
    }

    pub fn scale_rational(&self, by: &Rat) -> Vector {
        match self {
            Vector::Exact(v) => Vector::Exact(v.iter().map(|z| z.scale(by)).collect()),
            Vector::Float(v) => {
                let f = rat_to_f64(by);
                Vector::Float(v.iter().map(|z| z * f).collect())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(rat_from_str("1/2").unwrap(), rat(1, 2));
        assert_eq!(rat_from_str("-3").unwrap(), rat_int(-3));
        assert_eq!(rat_from_str("0.1").unwrap(), rat(1, 10));
        assert_eq!(rat_from_str("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(rat_from_str("1.5e-3").unwrap(), rat(3, 2000));
        assert_eq!(rat_from_str("2e3").unwrap(), rat_int(2000));
        assert_eq!(rat_from_str(".5").unwrap(), rat(1, 2));
        assert!(rat_from_str("1/0").is_none());
        assert!(rat_from_str("abc").is_none());
    }

    #[test]
    fn exact_sqrt_checks() {
        assert_eq!(exact_sqrt(&rat(9, 4)).unwrap(), rat(3, 2));
        assert_eq!(exact_sqrt(&rat_int(0)).unwrap(), rat_int(0));
        assert!(exact_sqrt(&rat_int(2)).is_none());
        assert!(exact_sqrt(&rat_int(-1)).is_none());
    }

    #[test]
    fn modulus_rationality() {
        // 3/5 + 4/5 i has modulus exactly 1
        let z = ExactComplex::new(rat(3, 5), rat(4, 5));
        assert_eq!(z.rational_modulus().unwrap(), rat_int(1));
        // 1 + i has modulus sqrt(2)
        let w = ExactComplex::new(rat_int(1), rat_int(1));
        assert!(w.rational_modulus().is_none());
        let imag = ExactComplex::new(rat_int(0), rat(-2, 3));
        assert_eq!(imag.rational_modulus().unwrap(), rat(2, 3));
    }

    #[test]
    fn moduli_fallback() {
        let v = Vector::Exact(vec![
            ExactComplex::one(),
            ExactComplex::new(rat_int(1), rat_int(1)),
        ]);
        match v.moduli() {
            Moduli::Float(m) => {
                assert!((m[0] - 1.0).abs() < 1e-15);
                assert!((m[1] - 2f64.sqrt()).abs() < 1e-15);
            }
            Moduli::Exact(_) => panic!("expected float fallback"),
        }
    }

    #[test]
    fn complex_arithmetic() {
        let a = ExactComplex::new(rat(1, 2), rat(1, 3));
        let b = ExactComplex::new(rat(2, 1), rat(-1, 1));
        let p = a.mul(&b);
        assert_eq!(p.re, rat(1, 1) + rat(1, 3));
        assert_eq!(p.im, rat(2, 3) - rat(1, 2));
        assert_eq!(a.pow(2), a.mul(&a));
        assert!(a.sub(&a).is_zero());
    }
}

//! Power series over the rationals, exact through a fixed degree.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `c_0 + c_1 t + ... + c_N t^N + O(t^{N+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl TruncatedSeries {
    pub fn zero(precision: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); precision + 1],
        }
    }

    pub fn one(precision: usize) -> Self {
        Self::from_i64(&[1], precision)
    }

    /// Coefficients beyond the slice are zero; extra entries are dropped.
    pub fn from_i64(c: &[i64], precision: usize) -> Self {
        let mut s = Self::zero(precision);
        for (o, v) in s.coeffs.iter_mut().zip(c) {
            *o = q(*v);
        }
        s
    }

    pub fn from_counts(c: &[usize]) -> Self {
        TruncatedSeries {
            coeffs: c.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect(),
        }
    }

    pub fn from_integers(c: &[BigInt], precision: usize) -> Self {
        let mut s = Self::zero(precision);
        for (o, v) in s.coeffs.iter_mut().zip(c) {
            *o = BigRational::from_integer(v.clone());
        }
        s
    }

    pub fn from_rationals(c: Vec<BigRational>) -> Self {
        assert!(!c.is_empty(), "a series needs at least a constant term");
        TruncatedSeries { coeffs: c }
    }

    /// Degree of the last known coefficient.
    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Integer coefficients, if all are integral.
    pub fn integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn truncate(&self, precision: usize) -> Self {
        let n = precision.min(self.precision());
        TruncatedSeries {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    fn common(&self, other: &Self) -> usize {
        self.precision().min(other.precision())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common(other);
        TruncatedSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.common(other);
        TruncatedSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common(other);
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs: out }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `t^k · self`, keeping the precision.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.precision();
        let mut out = vec![BigRational::zero(); n + 1];
        for i in k..=n {
            out[i] = self.coeffs[i - k].clone();
        }
        TruncatedSeries { coeffs: out }
    }

    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::Series("reciprocal of a series with zero constant term".into()));
        }
        let n = self.precision();
        let inv0 = c0.recip();
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut s = BigRational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    s += &self.coeffs[i] * &out[k - i];
                }
            }
            out[k] = -s * &inv0;
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.reciprocal()?))
    }

    /// First degree where the two series differ, up to the common precision.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        (0..=self.common(other)).find(|&i| self.coeffs[i] != other.coeffs[i])
    }

    /// Degrees in `[from, precision]` with a nonzero coefficient.
    pub fn nonzero_from(&self, from: usize) -> Vec<usize> {
        (from..=self.precision()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    /// Coefficients as `i64` when they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.integers()?.iter().map(|c| c.to_i64()).collect()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show = i == 0 || !a.is_one();
            if show {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}t", if show { "*" } else { "" })?,
                _ => write!(f, "{}t^{i}", if show { "*" } else { "" })?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.precision() + 1)
    }
}

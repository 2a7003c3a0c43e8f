//! Integer polynomials in `t` and quotients of them.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::TruncatedSeries;
use crate::error::{Error, Result};

/// `c_0 + c_1 t + ...` with integer coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `t^k`
    pub fn monomial(k: usize, c: i64) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::from_i64(&v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder over the rationals.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Vec<BigRational>, Vec<BigRational>)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::Series("division by the zero polynomial".into()));
        };
        let lead = BigRational::from_integer(divisor.coeffs[dd].clone());
        let mut rem: Vec<BigRational> = self.coeffs.iter().cloned().map(BigRational::from_integer).collect();
        if rem.len() <= dd {
            return Ok((Vec::new(), rem));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * BigRational::from_integer(b.clone());
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((quot, rem))
    }

    /// Whether `self` divides `other` in `Q[t]`.
    pub fn divides(&self, other: &Self) -> Result<bool> {
        let (_, r) = other.div_rem(self)?;
        Ok(r.iter().all(|c| c.is_zero()))
    }

    pub fn to_series(&self, precision: usize) -> TruncatedSeries {
        TruncatedSeries::from_integers(&self.coeffs, precision)
    }

    /// `(1 + t^k)^e` or `(1 - t^k)^e`
    pub fn binomial_power(k: usize, plus: bool, e: u32) -> Self {
        let mut base = vec![0i64; k + 1];
        base[0] = 1;
        base[k] = if plus { 1 } else { -1 };
        Self::from_i64(&base).pow(e)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
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
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `num / den` with `den(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalFn {
    pub num: IntPoly,
    pub den: IntPoly,
}

impl RationalFn {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        let c = den.coeff(0);
        if c == BigInt::one() {
            Ok(RationalFn { num, den })
        } else if c == -BigInt::one() {
            let neg = IntPoly::default();
            Ok(RationalFn {
                num: neg.sub(&num),
                den: neg.sub(&den),
            })
        } else {
            Err(Error::Series(format!("denominator {den} does not have constant term 1")))
        }
    }

    pub fn polynomial(p: IntPoly) -> Self {
        RationalFn {
            num: p,
            den: IntPoly::one(),
        }
    }

    /// `1 / den`
    pub fn inverse_of(den: IntPoly) -> Result<Self> {
        Self::new(IntPoly::one(), den)
    }

    pub fn expand(&self, precision: usize) -> TruncatedSeries {
        let d = self.den.to_series(precision).reciprocal().expect("den(0) = 1");
        self.num.to_series(precision).mul(&d)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

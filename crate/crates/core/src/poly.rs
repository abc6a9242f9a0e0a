//! Exact integer polynomials and characteristic polynomials of 0/1
//! matrices.
//!
//! Coefficients are arbitrary-precision integers; the characteristic
//! polynomial is computed by fraction-free Bareiss elimination over the
//! polynomial ring, so identities like the doubling factorization can be
//! checked as exact equalities rather than up to floating-point error.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("matrix is not square: {rows} rows, row {row} has {cols} columns")]
    NotSquare { rows: usize, row: usize, cols: usize },
    #[error("division by the zero polynomial")]
    DivisorZero,
}

/// Integer polynomial in canonical form: `coeffs[k]` is the coefficient of
/// `λ^k`, the top coefficient is nonzero, and the zero polynomial is `[0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::zero()],
        }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial { coeffs: vec![c] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// Degree of the polynomial; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> &BigInt {
        self.coeffs.last().expect("canonical form is nonempty")
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPolynomial::from_coeffs(out)
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        IntPolynomial::from_coeffs(out)
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl fmt::Display for IntPolynomial {
    /// Descending powers with `l` as the variable, e.g. `l^3 - l^2 - l + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "l")?,
                (1, false) => write!(f, "{mag}*l")?,
                (_, true) => write!(f, "l^{k}")?,
                (_, false) => write!(f, "{mag}*l^{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    coeffs: Vec<String>,
}

impl Serialize for IntPolynomial {
    /// JSON form `{"coeffs": ["c0", "c1", ...]}`: ascending powers, with
    /// decimal strings so arbitrary precision survives.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyWire {
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = PolyWire::deserialize(deserializer)?;
        let mut coeffs = Vec::with_capacity(wire.coeffs.len());
        for s in wire.coeffs {
            let c: BigInt = s
                .parse()
                .map_err(|e| serde::de::Error::custom(format!("bad integer {s:?}: {e}")))?;
            coeffs.push(c);
        }
        Ok(IntPolynomial::from_coeffs(coeffs))
    }
}

pub fn poly_mul(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    a.mul(b)
}

/// `λ^n − 1`, the factor contributed by each doubling step.
pub fn cyclotomic_like(n: usize) -> IntPolynomial {
    assert!(n >= 1);
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[0] = -BigInt::one();
    coeffs[n] = BigInt::one();
    IntPolynomial { coeffs }
}

/// Exact quotient `p / d` over the integers, or `None` when `d` does not
/// divide `p` in `ℤ[λ]`.
pub fn divides_exactly(
    d: &IntPolynomial,
    p: &IntPolynomial,
) -> Result<Option<IntPolynomial>, PolyError> {
    if d.is_zero() {
        return Err(PolyError::DivisorZero);
    }
    if p.is_zero() {
        return Ok(Some(IntPolynomial::zero()));
    }
    let dd = d.degree().expect("nonzero");
    let dp = match p.degree() {
        Some(dp) if dp >= dd => dp,
        _ => return Ok(None),
    };
    let lead = d.leading_coeff();
    let mut rem = p.coeffs.clone();
    let mut quot = vec![BigInt::zero(); dp - dd + 1];
    for k in (0..quot.len()).rev() {
        let top = rem[k + dd].clone();
        if top.is_zero() {
            continue;
        }
        let (q, r) = num_integer::div_rem(top, lead.clone());
        if !r.is_zero() {
            return Ok(None);
        }
        for (i, c) in d.coeffs.iter().enumerate() {
            rem[k + i] -= &q * c;
        }
        quot[k] = q;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Ok(None);
    }
    Ok(Some(IntPolynomial::from_coeffs(quot)))
}

/// Characteristic polynomial `det(λI − m)` of a square 0/1 matrix, exact
/// and monic. Fraction-free Bareiss elimination over `ℤ[λ]`: every pivot is
/// a leading principal minor of `λI − m`, hence monic and nonzero, so no
/// pivoting is needed and every division is exact.
pub fn charpoly(m: &[Vec<u8>]) -> Result<IntPolynomial, PolyError> {
    let d = m.len();
    for (row, r) in m.iter().enumerate() {
        if r.len() != d {
            return Err(PolyError::NotSquare {
                rows: d,
                row: row + 1,
                cols: r.len(),
            });
        }
    }
    if d == 0 {
        return Ok(IntPolynomial::one());
    }

    let mut a: Vec<Vec<IntPolynomial>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let mut coeffs = vec![BigInt::from(-(i64::from(m[i][j])))];
                    if i == j {
                        coeffs.push(BigInt::one());
                    }
                    IntPolynomial::from_coeffs(coeffs)
                })
                .collect()
        })
        .collect();

    let mut prev_pivot = IntPolynomial::one();
    for k in 0..d - 1 {
        for i in k + 1..d {
            for j in k + 1..d {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = divides_exactly(&prev_pivot, &num)
                    .expect("pivot is monic, never zero")
                    .expect("bareiss division is exact");
            }
        }
        prev_pivot = a[k][k].clone();
    }
    Ok(a[d - 1][d - 1].clone())
}

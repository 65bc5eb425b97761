//! Integer polynomials in one variable `T`: exact characteristic
//! polynomials (fraction-free determinants + interpolation) and the
//! trace classification of monic reciprocal quadratics.

use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::{Error, Int, IntMat, Rat, RatMat, Result};

/// Dense integer polynomial, coefficients ascending (coeffs[i] ↔ Tⁱ).
#[derive(Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<Int>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Int>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Int::zero());
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    /// T − c
    pub fn linear(c: i64) -> Self {
        IntPoly::from_i64(&[-c, 1])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_else(Int::zero)
    }

    pub fn leading(&self) -> &Int {
        self.coeffs.last().expect("nonempty by construction")
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = vec![Int::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, n: u32) -> IntPoly {
        let mut acc = IntPoly::from_i64(&[1]);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl fmt::Display for IntPoly {
    /// Compact form, e.g. "T^2-14T+1", "T^17", "0".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                write!(f, "{}", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "T")?,
                _ => write!(f, "T^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Exact determinant of a rational matrix via a cleared-denominator
/// fraction-free elimination.
pub fn rat_det(m: &RatMat) -> Rat {
    assert!(m.rows() == m.cols(), "determinant of non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Rat::one();
    }
    let delta = m.denom_lcm();
    let scaled = m
        .map(|x| x * Rat::from_integer(delta.clone()))
        .to_int()
        .expect("cleared denominators");
    let det = scaled.bareiss_det();
    Rat::new(det, delta.pow(n as u32))
}

/// Characteristic polynomial det(T·I − M) of a rational matrix, required
/// to have integer coefficients (integral similarity class).
pub fn characteristic_polynomial(m: &RatMat) -> Result<IntPoly> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "characteristic polynomial of {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    // evaluate p(s) = det(sI − M) at s = 0..=n, then interpolate
    let mut values: Vec<Rat> = Vec::with_capacity(n + 1);
    for s in 0..=n as i64 {
        let mut a = m.map(|x| -x.clone());
        for i in 0..n {
            let cur = a[(i, i)].clone();
            a[(i, i)] = cur + Rat::from_integer(Int::from(s));
        }
        values.push(rat_det(&a));
    }
    // Lagrange interpolation over Q on nodes 0..=n
    let mut acc = vec![Rat::zero(); n + 1];
    for (s, value) in values.iter().enumerate() {
        let mut numer = vec![Rat::one()];
        let mut denom = Rat::one();
        for t in 0..=n {
            if t == s {
                continue;
            }
            // numer *= (T − t)
            let mut next = vec![Rat::zero(); numer.len() + 1];
            for (i, c) in numer.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * Rat::from_integer(Int::from(t as i64));
            }
            numer = next;
            denom *= Rat::from_integer(Int::from(s as i64 - t as i64));
        }
        let w = value / denom;
        for (i, c) in numer.iter().enumerate() {
            acc[i] += c * &w;
        }
    }
    if !acc.iter().all(|c| c.is_integer()) {
        return Err(Error::NotIntegralSimilar(
            "characteristic polynomial has non-integer coefficients".into(),
        ));
    }
    let p = IntPoly::new(acc.iter().map(|c| c.to_integer()).collect());
    if !p.is_monic() || p.degree() != n {
        return Err(Error::NotIntegralSimilar(
            "characteristic polynomial is not monic of full degree".into(),
        ));
    }
    Ok(p)
}

/// Convenience wrapper for integer matrices.
pub fn characteristic_polynomial_int(m: &IntMat) -> Result<IntPoly> {
    characteristic_polynomial(&m.to_rat())
}

/// Classification of a monic integer quadratic with constant term 1 by its
/// root configuration on/off the unit circle; decided purely by the trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SalemClass {
    /// trace > 2: real reciprocal roots λ > 1 > 1/λ > 0
    Salem,
    /// (T−1)²: double root 1, infinite order when the matrix isn't identity
    Unipotent,
    /// roots are roots of unity (trace in {−2,−1,0,1})
    FiniteOrder,
    /// trace < −2: real reciprocal roots, both negative
    Other,
}

impl fmt::Display for SalemClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SalemClass::Salem => "salem",
            SalemClass::Unipotent => "unipotent",
            SalemClass::FiniteOrder => "finite-order",
            SalemClass::Other => "other",
        })
    }
}

/// Classify T² − τT + 1. Errors: non-quadratic/monic input is invalid;
/// constant term ≠ 1 is not reciprocal.
pub fn quadratic_salem_check(p: &IntPoly) -> Result<SalemClass> {
    if p.degree() != 2 || !p.is_monic() {
        return Err(Error::InvalidInput(format!(
            "expected a monic quadratic, got {p}"
        )));
    }
    if !p.coeff(0).is_one() {
        return Err(Error::NotReciprocal(format!(
            "constant term {} is not 1",
            p.coeff(0)
        )));
    }
    let trace = -p.coeff(1);
    let two = Int::from(2);
    Ok(if trace > two {
        SalemClass::Salem
    } else if trace == two {
        SalemClass::Unipotent
    } else if trace >= -two {
        SalemClass::FiniteOrder
    } else {
        SalemClass::Other
    })
}

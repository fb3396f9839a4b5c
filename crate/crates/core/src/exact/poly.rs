//! Integer polynomials in one variable and exact Lagrange interpolation.
//!
//! Coefficients are stored constant term first and kept trimmed: the leading
//! coefficient of a nonzero polynomial is nonzero, and the zero polynomial
//! has an empty coefficient vector.

use num::{BigInt, BigRational, One, Signed, Zero};

/// Polynomial with `BigInt` coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Failure modes of [`interpolate_int_poly`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InterpolationError {
    /// Two sample points share an abscissa.
    DuplicateAbscissa(BigInt),
    /// The interpolating polynomial exists but has a non-integer coefficient.
    NonIntegralCoefficient { power: usize, value: BigRational },
}

impl std::fmt::Display for InterpolationError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InterpolationError::DuplicateAbscissa(x) => {
                write!(f, "duplicate abscissa {x}")
            }
            InterpolationError::NonIntegralCoefficient { power, value } => {
                write!(f, "coefficient of q^{power} is {value}, not an integer")
            }
        }
    }
}

impl std::error::Error for InterpolationError {}

impl IntPoly {
    /// Builds a polynomial from coefficients, constant term first. Trailing
    /// zeros are trimmed.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Coefficients, constant term first, trimmed.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    /// Evaluates at an integer point by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluates at a rational point by Horner's rule.
    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }
}

impl std::fmt::Display for IntPoly {
    /// Renders highest power first, e.g. `q^3 - 6*q^2 + 9*q`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
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
            let unit_coeff = mag.is_one() && power > 0;
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            if power > 0 {
                if !unit_coeff {
                    write!(f, "*")?;
                }
                write!(f, "q")?;
                if power > 1 {
                    write!(f, "^{power}")?;
                }
            }
        }
        Ok(())
    }
}

/// Interpolates the unique polynomial of degree below `samples.len()` through
/// the given `(x, y)` pairs, requiring every coefficient to be an integer.
///
/// Interpolation runs over the rationals (Lagrange basis accumulated into a
/// coefficient vector); a non-integer coefficient is reported as an error
/// rather than rounded.
pub fn interpolate_int_poly(samples: &[(BigInt, BigInt)]) -> Result<IntPoly, InterpolationError> {
    for (i, (xi, _)) in samples.iter().enumerate() {
        for (xj, _) in &samples[..i] {
            if xi == xj {
                return Err(InterpolationError::DuplicateAbscissa(xi.clone()));
            }
        }
    }
    let n = samples.len();
    let mut acc = vec![BigRational::zero(); n.max(1)];
    for (i, (xi, yi)) in samples.iter().enumerate() {
        // numerator polynomial prod_{j != i} (q - x_j), rational coefficients
        let mut basis = vec![BigRational::zero(); n];
        basis[0] = BigRational::one();
        let mut deg = 0usize;
        let mut denom = BigRational::one();
        for (j, (xj, _)) in samples.iter().enumerate() {
            if j == i {
                continue;
            }
            // multiply basis by (q - x_j)
            for k in (0..=deg).rev() {
                let shifted = basis[k].clone();
                basis[k + 1] += &shifted;
                basis[k] = -BigRational::from(xj.clone()) * shifted;
            }
            deg += 1;
            denom *= BigRational::from(xi - xj);
        }
        let scale = BigRational::from(yi.clone()) / denom;
        for (a, b) in acc.iter_mut().zip(basis) {
            *a += b * &scale;
        }
    }
    let mut coeffs = Vec::with_capacity(acc.len());
    for (power, value) in acc.into_iter().enumerate() {
        if !value.is_integer() {
            return Err(InterpolationError::NonIntegralCoefficient { power, value });
        }
        coeffs.push(value.to_integer());
    }
    Ok(IntPoly::new(coeffs))
}

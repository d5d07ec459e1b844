use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::LinalgError;

/// Dense integer polynomial, coefficients in ascending powers.
///
/// Stored normalised: no trailing zero coefficients, so the zero polynomial
/// is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x − root`.
    pub fn linear(root: &BigInt) -> Self {
        Self::new(vec![-root.clone(), BigInt::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^power` (zero beyond the degree).
    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// For a degree-`n` polynomial written `x^n + a_1 x^{n−1} + ⋯ + a_n`,
    /// returns `a_j`, the coefficient of `x^{n−j}`.
    pub fn descending_coeff(&self, j: usize) -> BigInt {
        match self.degree() {
            Some(n) if j <= n => self.coeff(n - j),
            _ => BigInt::zero(),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, exp: usize) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Synthetic division by `x − root`: returns `(quotient, remainder)`.
    pub fn divide_linear(&self, root: &BigInt) -> (Self, BigInt) {
        let Some(n) = self.degree() else {
            return (self.clone(), BigInt::zero());
        };
        if n == 0 {
            return (Self::new(Vec::new()), self.coeffs[0].clone());
        }
        let mut quotient = vec![BigInt::zero(); n];
        let mut carry = BigInt::zero();
        for k in (0..=n).rev() {
            carry = carry * root + &self.coeffs[k];
            if k > 0 {
                quotient[k - 1] = carry.clone();
            }
        }
        (Self::new(quotient), carry)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_mag = power == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{power}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(ToString::to_string))
    }
}

/// Integer roots of a monic polynomial with multiplicities, plus the cofactor
/// that has no integer roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSpectrum {
    /// Sorted by eigenvalue, descending.
    pub eigenvalues: Vec<(BigInt, usize)>,
    pub residual: IntPolynomial,
}

impl IntegerSpectrum {
    pub fn multiplicity(&self, lambda: &BigInt) -> usize {
        self.eigenvalues
            .iter()
            .find(|(l, _)| l == lambda)
            .map_or(0, |&(_, m)| m)
    }

    pub fn multiplicity_of(&self, lambda: i64) -> usize {
        self.multiplicity(&BigInt::from(lambda))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BigInt, usize)> {
        self.eigenvalues.iter().map(|(l, m)| (l, *m))
    }

    /// `(λ, multiplicity)` for even `λ`.
    pub fn even(&self) -> impl Iterator<Item = (&BigInt, usize)> {
        self.iter().filter(|(l, _)| l.is_even())
    }

    /// `∏ (x − λ)^mult · residual`.
    pub fn reconstruct(&self) -> IntPolynomial {
        self.eigenvalues
            .iter()
            .fold(self.residual.clone(), |acc, (l, m)| {
                acc.mul(&IntPolynomial::linear(l).pow(*m))
            })
    }

    /// `[(λ, mult)]` with eigenvalues rendered as decimal strings.
    pub fn to_pairs(&self) -> Vec<(String, usize)> {
        self.eigenvalues
            .iter()
            .map(|(l, m)| (l.to_string(), *m))
            .collect()
    }
}

impl Serialize for IntegerSpectrum {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("IntegerSpectrum", 2)?;
        let eigen: Vec<serde_json::Value> = self
            .eigenvalues
            .iter()
            .map(|(l, m)| serde_json::json!({ "value": l.to_string(), "multiplicity": m }))
            .collect();
        s.serialize_field("eigenvalues", &eigen)?;
        s.serialize_field("residual_degree", &self.residual.degree().unwrap_or(0))?;
        s.end()
    }
}

fn ceil_root(x: &BigInt, k: u32) -> BigInt {
    let r = x.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) < *x {
        r + 1
    } else {
        r
    }
}

/// Upper bound on the modulus of every root of a monic polynomial: the
/// smaller of the Cauchy bound and the Fujiwara bound.
fn root_bound(p: &IntPolynomial) -> BigInt {
    let n = p.degree().unwrap_or(0);
    let cauchy: BigInt = p.coeffs[..n]
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_default()
        + 1;
    let mut fujiwara = BigInt::zero();
    for k in 1..=n {
        let mut a = p.coeff(n - k).abs();
        if k == n {
            a = (a + 1) / 2;
        }
        fujiwara = fujiwara.max(ceil_root(&a, k as u32));
    }
    cauchy.min(fujiwara * 2)
}

/// Finds every integer root of a monic polynomial with its multiplicity.
///
/// Zero roots are stripped first. Any other integer root divides the trailing
/// nonzero coefficient, so candidates are its divisors `d` (both signs) with
/// `|d|` within the root bound; multiplicities come from repeated synthetic
/// division.
pub fn integer_eigenvalues(p: &IntPolynomial) -> Result<IntegerSpectrum, LinalgError> {
    if !p.is_monic() {
        return Err(LinalgError::NotMonic);
    }
    let zeros = p.coeffs.iter().take_while(|c| c.is_zero()).count();
    let mut rest = IntPolynomial::new(p.coeffs[zeros..].to_vec());
    let mut found: Vec<(BigInt, usize)> = Vec::new();
    if zeros > 0 {
        found.push((BigInt::zero(), zeros));
    }

    if rest.degree().unwrap_or(0) > 0 {
        let constant = rest.coeff(0).abs();
        let bound = root_bound(&rest);
        let mut candidates = Vec::new();
        // Pair each divisor d ≤ √|c| with its cofactor |c|/d.
        let limit = bound.clone().min(constant.sqrt());
        let limit = limit.to_u64().expect("root search range exceeds u64");
        for d in 1..=limit {
            let d = BigInt::from(d);
            let (q, r) = constant.div_rem(&d);
            if r.is_zero() {
                if q <= bound {
                    candidates.push(q.clone());
                }
                candidates.push(d);
            }
        }
        candidates.sort();
        candidates.dedup();
        for d in candidates {
            for root in [d.clone(), -d] {
                let mut mult = 0;
                loop {
                    let (q, r) = rest.divide_linear(&root);
                    if !r.is_zero() {
                        break;
                    }
                    rest = q;
                    mult += 1;
                }
                if mult > 0 {
                    found.push((root, mult));
                }
            }
        }
    }
    found.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(IntegerSpectrum {
        eigenvalues: found,
        residual: rest,
    })
}

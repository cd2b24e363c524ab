use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};

/// A polynomial in `k` with rational coefficients, constant term first.
/// The coefficient list never ends in a zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolynomialQ {
    coefficients: Vec<Rational>,
}

impl PolynomialQ {
    pub fn new(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        PolynomialQ { coefficients }
    }

    pub fn zero() -> Self {
        PolynomialQ::default()
    }

    pub fn constant(c: Rational) -> Self {
        PolynomialQ::new(vec![c])
    }

    /// The polynomial `k`.
    pub fn k() -> Self {
        PolynomialQ::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_ints(coefficients: &[i64]) -> Self {
        PolynomialQ::new(coefficients.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// Coefficient of `k^p` (zero past the degree).
    pub fn coefficient(&self, p: usize) -> Rational {
        self.coefficients.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coefficients.last()
    }

    /// Sign of the polynomial as `k → ∞`: the sign of its leading coefficient.
    pub fn eventual_sign(&self) -> i8 {
        match self.leading() {
            None => 0,
            Some(c) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }

    pub fn eval(&self, k: &Rational) -> Rational {
        self.coefficients.iter().rev().fold(Rational::zero(), |acc, c| acc * k + c)
    }

    pub fn eval_int(&self, k: i64) -> Rational {
        self.eval(&rational::int(k))
    }

    pub fn scale(&self, s: &Rational) -> PolynomialQ {
        PolynomialQ::new(self.coefficients.iter().map(|c| c * s).collect())
    }

    /// Cauchy bound `1 + max_i |a_i| / |a_lead|`: every real root lies strictly
    /// inside it. `None` for constants, which have no roots (or are zero).
    pub fn cauchy_bound(&self) -> Option<Rational> {
        let lead = self.leading()?.abs();
        if self.coefficients.len() < 2 {
            return None;
        }
        let max = self.coefficients[..self.coefficients.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .expect("at least one lower coefficient");
        Some(Rational::one() + max)
    }

    /// An integer `T` such that the sign is constant for all integers `k > T`,
    /// or `None` if the polynomial is constant.
    pub fn sign_stable_after(&self) -> Option<i64> {
        self.cauchy_bound().map(|b| rational::ceil_int(&b).to_i64().expect("bound fits in i64"))
    }

    /// Newton forward-difference interpolant through `(start + m, samples[m])`.
    pub fn interpolate(start: i64, samples: &[Rational]) -> PolynomialQ {
        let mut diffs = samples.to_vec();
        let mut leading = Vec::with_capacity(samples.len());
        for _ in 0..samples.len() {
            leading.push(diffs[0].clone());
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        // Σ_m Δ^m f(start) · C(k − start, m)
        let mut result = PolynomialQ::zero();
        let mut binom = PolynomialQ::constant(Rational::one());
        for (m, delta) in leading.iter().enumerate() {
            result = &result + &binom.scale(delta);
            let shift = rational::int(start + m as i64);
            let factor = PolynomialQ::new(vec![-shift, Rational::one()])
                .scale(&Rational::new(BigInt::one(), BigInt::from(m + 1)));
            binom = &binom * &factor;
        }
        result
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson { coefficients: self.coefficients.clone(), text: self.to_string() }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&PolynomialQ> for &PolynomialQ {
            type Output = PolynomialQ;
            fn $method(self, rhs: &PolynomialQ) -> PolynomialQ {
                $body(self, rhs)
            }
        }
        impl $trait for PolynomialQ {
            type Output = PolynomialQ;
            fn $method(self, rhs: PolynomialQ) -> PolynomialQ {
                $body(&self, &rhs)
            }
        }
    };
}

fn add(a: &PolynomialQ, b: &PolynomialQ) -> PolynomialQ {
    let n = a.coefficients.len().max(b.coefficients.len());
    PolynomialQ::new((0..n).map(|i| a.coefficient(i) + b.coefficient(i)).collect())
}

fn sub(a: &PolynomialQ, b: &PolynomialQ) -> PolynomialQ {
    let n = a.coefficients.len().max(b.coefficients.len());
    PolynomialQ::new((0..n).map(|i| a.coefficient(i) - b.coefficient(i)).collect())
}

fn mul(a: &PolynomialQ, b: &PolynomialQ) -> PolynomialQ {
    if a.is_zero() || b.is_zero() {
        return PolynomialQ::zero();
    }
    let mut out = vec![Rational::zero(); a.coefficients.len() + b.coefficients.len() - 1];
    for (i, x) in a.coefficients.iter().enumerate() {
        for (j, y) in b.coefficients.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    PolynomialQ::new(out)
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl Neg for &PolynomialQ {
    type Output = PolynomialQ;
    fn neg(self) -> PolynomialQ {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for PolynomialQ {
    /// Descending powers, e.g. `1/6*k^3 - 1/2*k^2 + 1/3*k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (p, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let magnitude = c.abs();
            let var = match p {
                0 => String::new(),
                1 => "k".to_string(),
                _ => format!("k^{p}"),
            };
            match (p, magnitude.is_one()) {
                (0, _) => write!(f, "{magnitude}")?,
                (_, true) => f.write_str(&var)?,
                (_, false) => write!(f, "{magnitude}*{var}")?,
            }
        }
        Ok(())
    }
}

/// Exact coefficient list (constant first) with a readable rendering alongside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialJson {
    #[serde(with = "rational::serde_str::vec")]
    pub coefficients: Vec<Rational>,
    pub text: String,
}

impl From<&PolynomialJson> for PolynomialQ {
    fn from(j: &PolynomialJson) -> Self {
        PolynomialQ::new(j.coefficients.clone())
    }
}

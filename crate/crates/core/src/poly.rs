//! Dense univariate polynomials over the rationals, enough to recover a
//! polynomial from exact samples.

use num_traits::{One, Zero};

use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    /// Coefficients from the constant term up, with no trailing zeros.
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// The unique polynomial of degree below `points.len()` through the
    /// given points (Newton divided differences). The abscissae must be
    /// pairwise distinct.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Polynomial {
        let n = points.len();
        let xs: Vec<&Rational> = points.iter().map(|(x, _)| x).collect();
        let mut table: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                table[i] = (&table[i] - &table[i - 1]) / (xs[i] - xs[i - level]);
            }
        }
        // Horner on the Newton form: p = t0 + (x - x0)(t1 + (x - x1)(t2 + ...))
        let mut acc: Vec<Rational> = Vec::new();
        for i in (0..n).rev() {
            // acc = acc * (x - x_i) + table[i]
            let mut next = vec![Rational::zero(); acc.len() + 1];
            for (j, c) in acc.iter().enumerate() {
                next[j + 1] += c;
                next[j] -= c * xs[i];
            }
            next[0] += &table[i];
            acc = next;
        }
        Polynomial::new(acc)
    }
}

impl Polynomial {
    pub fn one() -> Self {
        Polynomial::new(vec![Rational::one()])
    }
}

//! Dense univariate polynomials over exact rationals.

use super::{fmt_rat, Rat};
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in one variable `z` with rational coefficients, stored in
/// ascending degree order with trailing zeros trimmed. The zero polynomial
/// has an empty coefficient vector and degree −1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(Rat::from_integer(1.into()))
    }

    /// The variable `z` itself.
    pub fn var() -> Self {
        Poly::from_coeffs(vec![Rat::zero(), Rat::from_integer(1.into())])
    }

    /// Builds from ascending-degree coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial at −1.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `z^k` (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, z: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", fmt_rat(c))?,
                1 => write!(f, "{}*z", fmt_rat(c))?,
                _ => write!(f, "{}*z^{}", fmt_rat(c), k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn p(coeffs: &[(i64, i64)]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn degree_conventions() {
        assert_eq!(Poly::zero().degree(), -1);
        assert_eq!(Poly::one().degree(), 0);
        assert_eq!(Poly::var().degree(), 1);
        assert_eq!(p(&[(1, 2), (0, 1), (0, 1)]).degree(), 0);
    }

    #[test]
    fn eval_at_zero_is_constant_coeff() {
        let q = p(&[(3, 7), (1, 2), (5, 1)]);
        assert_eq!(q.eval(&rat(0, 1)), rat(3, 7));
    }

    #[test]
    fn uz_style_evaluations() {
        // 1/1024 - z^4/96 + 7 z^6/108 + z^8/18 at z = 1/2
        let q = p(&[
            (1, 1024),
            (0, 1),
            (0, 1),
            (0, 1),
            (-1, 96),
            (0, 1),
            (7, 108),
            (0, 1),
            (1, 18),
        ]);
        assert_eq!(q.eval(&rat(1, 2)), rat(43, 27648));
        // 1/1024 + 5 z^4/288 - 5 z^6/36 + 5 z^8/162 at z = 1/3
        let q = p(&[
            (1, 1024),
            (0, 1),
            (0, 1),
            (0, 1),
            (5, 288),
            (0, 1),
            (-5, 36),
            (0, 1),
            (5, 162),
        ]);
        assert_eq!(q.eval(&rat(1, 3)), rat(546961, 544195584));
    }

    proptest! {
        #[test]
        fn product_evaluates_pointwise(
            a in proptest::collection::vec((-20i64..20, 1i64..8), 0..5),
            b in proptest::collection::vec((-20i64..20, 1i64..8), 0..5),
            zn in -9i64..9, zd in 1i64..9,
        ) {
            let (pa, pb) = (p(&a), p(&b));
            let z = rat(zn, zd);
            prop_assert_eq!((&pa * &pb).eval(&z), pa.eval(&z) * pb.eval(&z));
            prop_assert_eq!((&pa + &pb).eval(&z), pa.eval(&z) + pb.eval(&z));
        }
    }
}

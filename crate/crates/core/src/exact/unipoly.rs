use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactError, FactoredPolynomial, Monomial, MultiPoly, Rational, VarId};

/// Dense univariate polynomial, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    var: VarId,
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(var: VarId, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    pub fn zero(var: VarId) -> Self {
        UniPoly::new(var, Vec::new())
    }

    pub fn constant(var: VarId, c: Rational) -> Self {
        UniPoly::new(var, vec![c])
    }

    /// `s - root`.
    pub fn linear(var: VarId, root: &Rational) -> Self {
        UniPoly::new(var, vec![-root.clone(), Rational::one()])
    }

    pub fn from_roots<'a>(var: VarId, roots: impl IntoIterator<Item = &'a Rational>) -> Self {
        roots
            .into_iter()
            .fold(UniPoly::constant(var, Rational::one()), |acc, r| {
                acc.mul(&UniPoly::linear(var, r))
            })
    }

    pub fn var(&self) -> VarId {
        self.var
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Rational::zero();
        UniPoly::new(
            self.var,
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.var, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.var);
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(self.var, out)
    }

    /// `p(s + c)`.
    pub fn shift(&self, c: &Rational) -> UniPoly {
        let lin = UniPoly::new(self.var, vec![c.clone(), Rational::one()]);
        self.coeffs.iter().rev().fold(UniPoly::zero(self.var), |acc, a| {
            acc.mul(&lin).add(&UniPoly::constant(self.var, a.clone()))
        })
    }

    /// Divides by `s - root`, returning the quotient when the division is exact.
    pub fn deflate(&self, root: &Rational) -> Option<UniPoly> {
        let n = self.coeffs.len();
        if n == 0 {
            return Some(self.clone());
        }
        let mut q = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for i in (0..n).rev() {
            let v = &self.coeffs[i] + &carry * root;
            if i == 0 {
                if !v.is_zero() {
                    return None;
                }
            } else {
                q[i - 1] = v.clone();
            }
            carry = v;
        }
        Some(UniPoly::new(self.var, q))
    }

    pub fn to_multipoly(&self) -> MultiPoly {
        MultiPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::pow_of(self.var, k as u32), c.clone())),
        )
    }

    /// Exact Lagrange interpolation through `points`; the result has degree
    /// below the number of points.
    pub fn interpolate(points: &[(Rational, Rational)], var: VarId) -> Result<UniPoly, ExactError> {
        if points.is_empty() {
            return Err(ExactError::EmptyInterpolation);
        }
        for (i, (a, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|(b, _)| b == a) {
                return Err(ExactError::DuplicateAbscissa(a.to_string()));
            }
        }
        let mut acc = UniPoly::zero(var);
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = UniPoly::constant(var, Rational::one());
            let mut denom = Rational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = basis.mul(&UniPoly::linear(var, xj));
                    denom *= xi - xj;
                }
            }
            acc = acc.add(&basis.scale(&(yi / denom)));
        }
        Ok(acc)
    }

    /// Splits the polynomial into rational linear factors.
    pub fn factor_linear(&self) -> Result<FactoredPolynomial, ExactError> {
        if self.is_zero() {
            return Err(ExactError::NonLinearFactor(self.to_string()));
        }
        let lead = self.leading();
        let mut rest = self.scale(&(Rational::one() / &lead));
        let mut roots: Vec<Rational> = Vec::new();
        while rest.degree().unwrap_or(0) > 0 {
            match rest.find_rational_root() {
                Some(r) => {
                    rest = rest.deflate(&r).expect("root divides exactly");
                    roots.push(r);
                }
                None => return Err(ExactError::NonLinearFactor(rest.to_string())),
            }
        }
        Ok(FactoredPolynomial::from_roots(self.var, lead, roots))
    }

    /// A rational root by the rational-root test, if one exists.
    fn find_rational_root(&self) -> Option<Rational> {
        if self.coeffs.first().is_some_and(Zero::is_zero) {
            return Some(Rational::zero());
        }
        let ints = self.integer_coefficients();
        let a0 = ints.first()?.abs();
        let an = ints.last()?.abs();
        let ps = divisors(&a0);
        let qs = divisors(&an);
        for p in &ps {
            for q in &qs {
                if !p.gcd(q).is_one() {
                    continue;
                }
                for cand in [
                    Rational::new(p.clone(), q.clone()),
                    Rational::new(-p.clone(), q.clone()),
                ] {
                    if self.eval(&cand).is_zero() {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }

    /// Primitive integer multiple of the polynomial.
    fn integer_coefficients(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            ints
        } else {
            ints.into_iter().map(|c| c / &g).collect()
        }
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    // Coefficients met here are products of small integers; trial division is
    // ample.
    let limit = n.sqrt();
    let mut d = BigInt::one();
    while d <= limit {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_multipoly().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};

    fn s() -> VarId {
        VarId::S
    }

    fn poly(c: &[i64]) -> UniPoly {
        UniPoly::new(s(), c.iter().map(|&k| rat(k)).collect())
    }

    #[test]
    fn interpolates_quadratic() {
        let pts = [(rat(0), rat(6)), (rat(1), rat(12)), (rat(2), rat(20))];
        assert_eq!(UniPoly::interpolate(&pts, s()).unwrap(), poly(&[6, 5, 1]));
    }

    #[test]
    fn interpolates_constant_and_degree_drop() {
        let one = [(rat(5), rat(7))];
        assert_eq!(UniPoly::interpolate(&one, s()).unwrap(), poly(&[7]));
        let line: Vec<_> = (0..4).map(|k| (rat(k), rat(k))).collect();
        let p = UniPoly::interpolate(&line, s()).unwrap();
        assert_eq!(p, poly(&[0, 1]));
        assert_eq!(p.degree(), Some(1));
    }

    #[test]
    fn interpolation_errors() {
        assert_eq!(
            UniPoly::interpolate(&[], s()),
            Err(ExactError::EmptyInterpolation)
        );
        let dup = [(rat(1), rat(2)), (rat(1), rat(3))];
        assert!(matches!(
            UniPoly::interpolate(&dup, s()),
            Err(ExactError::DuplicateAbscissa(_))
        ));
    }

    #[test]
    fn factors() {
        let f = poly(&[6, 5, 1]).factor_linear().unwrap();
        assert!(f.lead().is_one());
        assert_eq!(f.roots(), vec![rat(-2), rat(-3)]);
        let f = poly(&[0, 1]).factor_linear().unwrap();
        assert_eq!(f.roots(), vec![rat(0)]);
        assert!(matches!(
            poly(&[1, 0, 1]).factor_linear(),
            Err(ExactError::NonLinearFactor(_))
        ));
        // 2s + 9 has the non-integral root -9/2
        let f = poly(&[9, 2]).factor_linear().unwrap();
        assert_eq!(f.lead(), &rat(2));
        assert_eq!(f.roots(), vec![frac(-9, 2)]);
    }

    #[test]
    fn shift_substitutes() {
        // (s+2)(s+3) at s -> s - 2 gives s(s+1)
        let p = poly(&[6, 5, 1]).shift(&rat(-2));
        assert_eq!(p, poly(&[0, 1, 1]));
    }

    #[test]
    fn deflate_rejects_non_roots() {
        assert_eq!(poly(&[6, 5, 1]).deflate(&rat(-2)), Some(poly(&[3, 1])));
        assert_eq!(poly(&[6, 5, 1]).deflate(&rat(2)), None);
    }
}

use std::fmt;

use num_traits::One;

use super::{FactoredPolynomial, MultiPoly, Rational, VarId};

/// A quotient of polynomials with a distinguished variable `s`.
///
/// When the denominator only involves `s`, it is kept monic and every linear
/// factor shared with the numerator is cancelled. Otherwise only constant
/// content is normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    var: VarId,
    numerator: MultiPoly,
    denominator: MultiPoly,
}

impl RationalFunction {
    /// Panics if `denominator` is zero.
    pub fn new(var: VarId, numerator: MultiPoly, denominator: MultiPoly) -> Self {
        assert!(!denominator.is_zero(), "zero denominator");
        let mut rf = RationalFunction {
            var,
            numerator,
            denominator,
        };
        rf.reduce();
        rf
    }

    pub fn polynomial(var: VarId, p: MultiPoly) -> Self {
        RationalFunction::new(var, p, MultiPoly::one())
    }

    pub fn var(&self) -> VarId {
        self.var
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.denominator
    }

    /// Whether the reduced denominator is free of `s`.
    pub fn is_polynomial_in_var(&self) -> bool {
        self.denominator.degree_in(self.var) == 0
    }

    /// Monic factorization of the denominator, when it splits into linear
    /// factors in `s`.
    pub fn denominator_factored(&self) -> Option<FactoredPolynomial> {
        self.denominator.to_unipoly(self.var)?.factor_linear().ok()
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        if self.denominator == other.denominator {
            return RationalFunction::new(
                self.var,
                &self.numerator + &other.numerator,
                self.denominator.clone(),
            );
        }
        RationalFunction::new(
            self.var,
            &self.numerator * &other.denominator + &other.numerator * &self.denominator,
            &self.denominator * &other.denominator,
        )
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            self.var,
            &self.numerator * &other.numerator,
            &self.denominator * &other.denominator,
        )
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> RationalFunction {
        RationalFunction::new(self.var, &self.numerator * p, self.denominator.clone())
    }

    /// Replaces variables other than `s` by rationals.
    pub fn eval_var(&self, v: VarId, value: &Rational) -> RationalFunction {
        RationalFunction::new(
            self.var,
            self.numerator.eval_var(v, value),
            self.denominator.eval_var(v, value),
        )
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.denominator = MultiPoly::one();
            return;
        }
        if let Some(c) = self.denominator.constant_value() {
            self.numerator = self.numerator.scale(&(Rational::one() / c));
            self.denominator = MultiPoly::one();
            return;
        }
        let Some(factored) = self.denominator_factored() else {
            // Only content normalization outside the univariate case.
            let (_, lc) = self.denominator.leading_term().expect("nonzero");
            let inv = Rational::one() / lc;
            self.numerator = self.numerator.scale(&inv);
            self.denominator = self.denominator.scale(&inv);
            return;
        };
        let mut num = self.numerator.scale(&(Rational::one() / factored.lead()));
        let mut kept = Vec::new();
        for (root, mult) in factored.factors() {
            let mut left = *mult;
            while left > 0 {
                match divide_by_linear(&num, self.var, root) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            kept.extend(std::iter::repeat_n(root.clone(), left as usize));
        }
        self.numerator = num;
        self.denominator = FactoredPolynomial::monic(self.var, kept).expand().to_multipoly();
    }
}

/// Exact quotient of `p` by `(v - root)`, if the division leaves no remainder.
pub fn divide_by_linear(p: &MultiPoly, v: VarId, root: &Rational) -> Option<MultiPoly> {
    let coeffs = p.coefficients_in(v);
    let n = coeffs.len();
    let mut q = vec![MultiPoly::zero(); n.saturating_sub(1)];
    let mut carry = MultiPoly::zero();
    for i in (0..n).rev() {
        let val = &coeffs[i] + &carry.scale(root);
        if i == 0 {
            if !val.is_zero() {
                return None;
            }
        } else {
            q[i - 1] = val.clone();
        }
        carry = val;
    }
    let mut out = MultiPoly::zero();
    let vp = MultiPoly::var(v);
    for c in q.iter().rev() {
        out = &(&out * &vp) + c;
    }
    Some(out)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn s() -> MultiPoly {
        MultiPoly::var(VarId::S)
    }

    #[test]
    fn cancels_common_linear_factor() {
        // (s^2 + 5s + 6) / (2s + 4) = (s + 3) / 2
        let num = &s() * &s() + s().scale(&rat(5)) + MultiPoly::int(6);
        let den = s().scale(&rat(2)) + MultiPoly::int(4);
        let rf = RationalFunction::new(VarId::S, num, den);
        assert!(rf.is_polynomial_in_var());
        assert_eq!(
            rf.numerator(),
            &(s().scale(&crate::exact::frac(1, 2)) + MultiPoly::constant(crate::exact::frac(3, 2)))
        );
    }

    #[test]
    fn keeps_uncancelled_factor() {
        let chi = MultiPoly::var(VarId::chi(&[0]));
        let rf = RationalFunction::new(VarId::S, chi.clone(), &s() + &MultiPoly::int(2));
        assert!(!rf.is_polynomial_in_var());
        let f = rf.denominator_factored().unwrap();
        assert_eq!(f.roots(), vec![rat(-2)]);
        let cleared = rf.mul_poly(&(&s() + &MultiPoly::int(2)));
        assert!(cleared.is_polynomial_in_var());
        assert_eq!(cleared.numerator(), &chi);
    }

    #[test]
    fn sum_over_common_denominator() {
        let a = RationalFunction::new(VarId::S, MultiPoly::one(), &s() + &MultiPoly::int(2));
        let b = RationalFunction::new(VarId::S, MultiPoly::one(), &s() + &MultiPoly::int(3));
        let sum = a.add(&b);
        // (2s + 5) / ((s + 2)(s + 3))
        assert_eq!(
            sum.denominator(),
            &(&s() * &s() + s().scale(&rat(5)) + MultiPoly::int(6))
        );
        assert_eq!(sum.numerator(), &(s().scale(&rat(2)) + MultiPoly::int(5)));
    }

    #[test]
    fn divide_by_linear_exact() {
        let p = &s() * &s() - MultiPoly::one();
        assert_eq!(
            divide_by_linear(&p, VarId::S, &rat(1)),
            Some(&s() + &MultiPoly::one())
        );
        assert_eq!(divide_by_linear(&p, VarId::S, &rat(2)), None);
    }
}

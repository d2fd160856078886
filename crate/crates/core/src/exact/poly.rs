use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{Monomial, Rational, UniPoly, VarId};

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept in a `BTreeMap` under the graded-lex order, with no zero
/// coefficients, so two polynomials are equal exactly when their
/// representations are.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        MultiPoly::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        MultiPoly::constant(rat(n))
    }

    pub fn var(v: VarId) -> Self {
        MultiPoly::term(Monomial::var(v), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    /// Collects terms, summing repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing term order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Simultaneous substitution of variables by polynomials. Variables
    /// without a binding are left alone.
    pub fn subst(&self, bindings: &BTreeMap<VarId, MultiPoly>) -> MultiPoly {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut power_cache: BTreeMap<(VarId, u32), MultiPoly> = BTreeMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = MultiPoly::one();
            for &(v, e) in m.iter() {
                match bindings.get(&v) {
                    Some(image) => {
                        let pw = power_cache.entry((v, e)).or_insert_with(|| image.pow(e)).clone();
                        factor = &factor * &pw;
                    }
                    None => kept.push((v, e)),
                }
            }
            let kept = Monomial::from_pairs(kept);
            out += &factor.mul_monomial(&kept, c);
        }
        out
    }

    /// Substitutes a rational value for one variable.
    pub fn eval_var(&self, v: VarId, value: &Rational) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            let k = if e == 0 {
                c.clone()
            } else {
                c * num_traits::pow(value.clone(), e as usize)
            };
            out.add_term(rest, k);
        }
        out
    }

    /// Evaluates at a full assignment; `None` if a variable is unbound.
    pub fn eval(&self, point: &BTreeMap<VarId, Rational>) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.iter() {
                t *= num_traits::pow(point.get(&v)?.clone(), e as usize);
            }
            acc += t;
        }
        Some(acc)
    }

    /// Coefficients with respect to `v`: entry `k` is the coefficient of
    /// `v^k`, a polynomial free of `v`.
    pub fn coefficients_in(&self, v: VarId) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    /// Partial derivative of order `k` with respect to `v`.
    pub fn derivative(&self, v: VarId, k: u32) -> MultiPoly {
        if k == 0 {
            return self.clone();
        }
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            if e < k {
                continue;
            }
            let falling: i64 = ((e - k + 1)..=e).map(i64::from).product();
            out.add_term(rest.mul(&Monomial::pow_of(v, e - k)), c * rat(falling));
        }
        out
    }

    /// Applies the constant-coefficient operator `∂^m` (one partial per
    /// variable occurrence in `m`).
    pub fn apply_partials(&self, m: &Monomial) -> MultiPoly {
        if m.is_one() {
            return self.clone();
        }
        let mut out = MultiPoly::zero();
        'terms: for (mono, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = Vec::new();
            let mut pi = m.iter().peekable();
            for &(v, e) in mono.iter() {
                // A partial on a variable absent from the monomial kills it.
                if let Some(&&(dv, _)) = pi.peek() {
                    if dv < v {
                        continue 'terms;
                    }
                }
                match pi.peek() {
                    Some(&&(dv, k)) if dv == v => {
                        pi.next();
                        if e < k {
                            continue 'terms;
                        }
                        let falling: i64 = ((e - k + 1)..=e).map(i64::from).product();
                        coef *= rat(falling);
                        if e > k {
                            rest.push((v, e - k));
                        }
                    }
                    _ => rest.push((v, e)),
                }
            }
            if pi.next().is_some() {
                continue;
            }
            out.add_term(Monomial::from_pairs(rest), coef);
        }
        out
    }

    /// If `self = c · other` for a rational `c`, returns `c`.
    ///
    /// Compares leading terms to fix the candidate scalar, then checks the
    /// full identity; no polynomial division is involved.
    pub fn scalar_multiple_of(&self, other: &MultiPoly) -> Option<Rational> {
        if other.is_zero() {
            return if self.is_zero() {
                Some(Rational::zero())
            } else {
                None
            };
        }
        if self.is_zero() {
            return Some(Rational::zero());
        }
        let (ma, ca) = self.leading_term()?;
        let (mb, cb) = other.leading_term()?;
        if ma != mb || self.len() != other.len() {
            return None;
        }
        let c = ca / cb;
        if *self == other.scale(&c) {
            Some(c)
        } else {
            None
        }
    }

    /// Views the polynomial as univariate in `v`; fails if any other variable
    /// occurs.
    pub fn to_unipoly(&self, v: VarId) -> Option<UniPoly> {
        let coeffs = self
            .coefficients_in(v)
            .into_iter()
            .map(|c| c.constant_value())
            .collect::<Option<Vec<_>>>()?;
        Some(UniPoly::new(v, coeffs))
    }

    pub fn map_coefficients(&self, f: impl Fn(&Rational) -> Rational) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn rename(&self, f: impl Fn(VarId) -> VarId + Copy) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.rename(f), c.clone())))
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<VarId> for MultiPoly {
    fn from(v: VarId) -> Self {
        MultiPoly::var(v)
    }
}

impl<'a> AddAssign<&'a MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &'a MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<'a> SubAssign<&'a MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &'a MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl<'a> Add<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        let (small, big) = if self.len() <= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = MultiPoly::zero();
        for (m, c) in &small.terms {
            for (k, d) in &big.terms {
                out.add_term(m.mul(k), c * d);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &'a MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Writes a signed term `coef*monomial` with the sign handled by the caller's
/// joiner; `first` suppresses the leading `+`.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    coef: &Rational,
    body: Option<&str>,
    first: bool,
) -> fmt::Result {
    let neg = coef.is_negative();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let mag = coef.abs();
    match body {
        None => write!(f, "{mag}"),
        Some(b) if mag.is_one() => f.write_str(b),
        Some(b) => write!(f, "{mag}*{b}"),
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let body = if m.is_one() { None } else { Some(m.to_string()) };
            write_term(f, c, body.as_deref(), k == 0)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, j: usize) -> MultiPoly {
        MultiPoly::var(VarId::x(i, j))
    }

    #[test]
    fn difference_of_squares() {
        let v = MultiPoly::var(VarId::named("x"));
        let p = (&v + &MultiPoly::one()) * (&v - &MultiPoly::one());
        assert_eq!(p, &v * &v - MultiPoly::one());
        assert_eq!(p.to_string(), "x^2 - 1");
    }

    #[test]
    fn add_zero_is_identity() {
        let p = &x(1, 1) * &x(2, 2) + MultiPoly::int(3);
        assert_eq!(&p + &MultiPoly::zero(), p);
    }

    #[test]
    fn square_of_2x2_determinant() {
        let det = &x(1, 1) * &x(2, 2) - &x(1, 2) * &x(2, 1);
        let sq = det.pow(2);
        assert_eq!(sq.len(), 3);
        // (ad - bc)^2 = a^2 d^2 - 2abcd + b^2 c^2
        let mut coeffs: Vec<i64> = sq
            .terms()
            .map(|(_, c)| c.to_integer().try_into().unwrap())
            .collect();
        coeffs.sort();
        assert_eq!(coeffs, vec![-2, 1, 1]);
        let abcd = Monomial::from_pairs([
            (VarId::x(1, 1), 1),
            (VarId::x(1, 2), 1),
            (VarId::x(2, 1), 1),
            (VarId::x(2, 2), 1),
        ]);
        assert_eq!(sq.coefficient(&abcd), rat(-2));
    }

    #[test]
    fn canonical_text() {
        let det = &x(1, 1) * &x(2, 2) - &x(1, 2) * &x(2, 1);
        assert_eq!(det.to_string(), "x[1,1]*x[2,2] - x[1,2]*x[2,1]");
        let p = det.scale(&frac(3, 2)) + MultiPoly::int(-4);
        assert_eq!(p.to_string(), "3/2*x[1,1]*x[2,2] - 3/2*x[1,2]*x[2,1] - 4");
    }

    #[test]
    fn subst_shift() {
        let xv = VarId::named("x");
        let y = MultiPoly::var(VarId::named("y"));
        let p = MultiPoly::var(xv).pow(2) + MultiPoly::var(xv);
        let b = BTreeMap::from([(xv, &y + &MultiPoly::one())]);
        assert_eq!(p.subst(&b), y.pow(2) + y.scale(&rat(3)) + MultiPoly::int(2));
        assert_eq!(p.subst(&BTreeMap::new()), p);
    }

    #[test]
    fn partials() {
        let v = VarId::named("x");
        let p = MultiPoly::var(v).pow(3);
        assert_eq!(p.derivative(v, 2), MultiPoly::var(v).scale(&rat(6)));
        assert_eq!(p.apply_partials(&Monomial::pow_of(v, 3)), MultiPoly::int(6));
        assert!(p.apply_partials(&Monomial::pow_of(v, 4)).is_zero());
        let q = &x(1, 1) * &x(2, 2);
        assert!(q.apply_partials(&Monomial::var(VarId::x(1, 2))).is_zero());
        assert_eq!(q.apply_partials(&Monomial::var(VarId::x(1, 1))), x(2, 2));
    }

    #[test]
    fn scalar_multiple() {
        let p = &x(1, 1) * &x(2, 2) - &x(1, 2) * &x(2, 1);
        assert_eq!(p.scale(&rat(7)).scalar_multiple_of(&p), Some(rat(7)));
        assert_eq!((&p + &x(1, 1)).scalar_multiple_of(&p), None);
        assert_eq!(MultiPoly::zero().scalar_multiple_of(&p), Some(rat(0)));
    }
}

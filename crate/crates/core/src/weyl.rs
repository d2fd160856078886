//! The Weyl algebra over a fixed set of coordinates.
//!
//! Elements are stored in normal order (all `x` to the left of all `∂`), with
//! coefficients in a commutative ring of central parameters such as `z`, `s`
//! or `u`. Products are normal-ordered with the closed form
//! `∂^b x^a = Σ_k C(a,k) C(b,k) k! x^(a-k) ∂^(b-k)` per variable.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::One;
use thiserror::Error;

use crate::exact::{binomial, rat, write_term, Monomial, MultiPoly, Rational, VarId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("operands live on different coordinate sets")]
    VariableMismatch,
}

/// The ordered coordinate list an operator acts on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coords(Arc<Vec<VarId>>);

impl Coords {
    pub fn new(mut vars: Vec<VarId>) -> Self {
        vars.sort();
        vars.dedup();
        Coords(Arc::new(vars))
    }

    pub fn vars(&self) -> &[VarId] {
        &self.0
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    fn same(&self, other: &Coords) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

/// A normal-ordered monomial `x^x · ∂^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylMonomial {
    pub x: Monomial,
    pub d: Monomial,
}

impl WeylMonomial {
    pub fn order(&self) -> u32 {
        self.d.degree()
    }
}

impl Ord for WeylMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.x.degree() + self.d.degree())
            .cmp(&(other.x.degree() + other.d.degree()))
            .then_with(|| self.x.cmp(&other.x))
            .then_with(|| self.d.cmp(&other.d))
    }
}

impl PartialOrd for WeylMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    coords: Coords,
    terms: BTreeMap<WeylMonomial, MultiPoly>,
}

impl WeylElement {
    pub fn zero(coords: &Coords) -> Self {
        WeylElement {
            coords: coords.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(coords: &Coords) -> Self {
        WeylElement::scalar(coords, MultiPoly::one())
    }

    /// A central element; `c` must not involve the coordinates.
    pub fn scalar(coords: &Coords, c: MultiPoly) -> Self {
        let mut w = WeylElement::zero(coords);
        w.add_term(
            WeylMonomial {
                x: Monomial::one(),
                d: Monomial::one(),
            },
            c,
        );
        w
    }

    pub fn int(coords: &Coords, n: i64) -> Self {
        WeylElement::scalar(coords, MultiPoly::int(n))
    }

    pub fn x(coords: &Coords, v: VarId) -> Self {
        WeylElement::from_parts(coords, Monomial::var(v), Monomial::one(), MultiPoly::one())
    }

    pub fn d(coords: &Coords, v: VarId) -> Self {
        WeylElement::from_parts(coords, Monomial::one(), Monomial::var(v), MultiPoly::one())
    }

    pub fn from_parts(coords: &Coords, x: Monomial, d: Monomial, c: MultiPoly) -> Self {
        let mut w = WeylElement::zero(coords);
        w.add_term(WeylMonomial { x, d }, c);
        w
    }

    /// Multiplication by a polynomial. Coordinate variables go to the `x`
    /// part, everything else is treated as a central parameter.
    pub fn from_poly(coords: &Coords, p: &MultiPoly) -> Self {
        let mut w = WeylElement::zero(coords);
        for (m, c) in p.terms() {
            let (xs, params): (Vec<_>, Vec<_>) = m.iter().partition(|(v, _)| coords.contains(*v));
            w.add_term(
                WeylMonomial {
                    x: Monomial::from_pairs(xs),
                    d: Monomial::one(),
                },
                MultiPoly::term(Monomial::from_pairs(params), c.clone()),
            );
        }
        w
    }

    /// The constant-coefficient operator `p(∂)`: each coordinate is replaced
    /// by its partial derivative.
    pub fn from_poly_in_partials(coords: &Coords, p: &MultiPoly) -> Self {
        let mut w = WeylElement::zero(coords);
        for (m, c) in p.terms() {
            let (ds, params): (Vec<_>, Vec<_>) = m.iter().partition(|(v, _)| coords.contains(*v));
            w.add_term(
                WeylMonomial {
                    x: Monomial::one(),
                    d: Monomial::from_pairs(ds),
                },
                MultiPoly::term(Monomial::from_pairs(params), c.clone()),
            );
        }
        w
    }

    fn add_term(&mut self, m: WeylMonomial, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing order.
    pub fn terms(&self) -> impl Iterator<Item = (&WeylMonomial, &MultiPoly)> {
        self.terms.iter().rev()
    }

    /// Order as a differential operator.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(WeylMonomial::order).max().unwrap_or(0)
    }

    /// The value of a central element, if this is one.
    pub fn as_scalar(&self) -> Option<MultiPoly> {
        match self.terms.len() {
            0 => Some(MultiPoly::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                (m.x.is_one() && m.d.is_one()).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &MultiPoly) -> WeylElement {
        let mut w = WeylElement::zero(&self.coords);
        if c.is_zero() {
            return w;
        }
        for (m, a) in &self.terms {
            w.add_term(m.clone(), a * c);
        }
        w
    }

    pub fn scale_rational(&self, c: &Rational) -> WeylElement {
        self.scale(&MultiPoly::constant(c.clone()))
    }

    fn check(&self, other: &WeylElement) -> Result<(), WeylError> {
        if self.coords.same(&other.coords) {
            Ok(())
        } else {
            Err(WeylError::VariableMismatch)
        }
    }

    pub fn try_add(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        self.check(other)?;
        let mut w = self.clone();
        for (m, c) in &other.terms {
            w.add_term(m.clone(), c.clone());
        }
        Ok(w)
    }

    pub fn try_sub(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        self.try_add(&-other)
    }

    /// Normal-ordered product.
    pub fn try_mul(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        self.check(other)?;
        let mut out = WeylElement::zero(&self.coords);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = ca * cb;
                for (k, x, d) in reorder(&a.d, &b.x) {
                    out.add_term(
                        WeylMonomial {
                            x: a.x.mul(&x),
                            d: d.mul(&b.d),
                        },
                        c.scale(&k),
                    );
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> WeylElement {
        (0..e).fold(WeylElement::one(&self.coords), |acc, _| &acc * self)
    }

    /// `ab - ba`.
    pub fn commutator(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        Ok(&self.try_mul(other)? - &other.try_mul(self)?)
    }

    /// Applies the operator to a polynomial.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let g = f.apply_partials(&m.d);
            if g.is_zero() {
                continue;
            }
            let g = g.mul_monomial(&m.x, &Rational::one());
            match c.constant_value() {
                Some(k) => out += &g.scale(&k),
                None => out += &(&g * c),
            }
        }
        out
    }

    /// The automorphism `x ↦ ∂, ∂ ↦ -x`.
    pub fn fourier(&self) -> WeylElement {
        let mut out = WeylElement::zero(&self.coords);
        for (m, c) in &self.terms {
            let sign = if m.d.degree() % 2 == 0 { 1 } else { -1 };
            let c = c.scale(&rat(sign));
            // ∂^α x^β, normal-ordered
            for (k, x, d) in reorder(&m.x, &m.d) {
                out.add_term(WeylMonomial { x, d }, c.scale(&k));
            }
        }
        out
    }

    /// Splits by powers of a central parameter: entry `k` is the coefficient
    /// of `v^k`.
    pub fn coefficients_in(&self, v: VarId) -> Vec<WeylElement> {
        let deg = self.terms.values().map(|c| c.degree_in(v)).max().unwrap_or(0) as usize;
        let mut out = vec![WeylElement::zero(&self.coords); deg + 1];
        for (m, c) in &self.terms {
            for (k, ck) in c.coefficients_in(v).into_iter().enumerate() {
                out[k].add_term(m.clone(), ck);
            }
        }
        out
    }

    /// Substitutes a value for a central parameter.
    pub fn eval_param(&self, v: VarId, value: &Rational) -> WeylElement {
        let mut out = WeylElement::zero(&self.coords);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.eval_var(v, value));
        }
        out
    }
}

type PartialTerm = (Rational, Vec<(VarId, u32)>, Vec<(VarId, u32)>);

/// Normal ordering of `∂^d x^x`: returns `(coefficient, x-part, ∂-part)`.
fn reorder(d: &Monomial, x: &Monomial) -> Vec<(Rational, Monomial, Monomial)> {
    // Variables carrying both a partial and a coordinate power.
    let shared: Vec<(VarId, u32, u32)> = d
        .iter()
        .filter_map(|&(v, b)| {
            let a = x.exponent(v);
            (a > 0).then_some((v, a, b))
        })
        .collect();
    if shared.is_empty() {
        return vec![(Rational::one(), x.clone(), d.clone())];
    }
    let mut out: Vec<PartialTerm> = vec![(Rational::one(), Vec::new(), Vec::new())];
    for &(v, a, b) in &shared {
        let mut next = Vec::with_capacity(out.len() * (a.min(b) as usize + 1));
        for (c, xs, ds) in &out {
            for k in 0..=a.min(b) {
                let weight = binomial(a as u64, k as u64) * binomial(b as u64, k as u64) * factorial(k);
                let mut xs = xs.clone();
                let mut ds = ds.clone();
                xs.push((v, a - k));
                ds.push((v, b - k));
                next.push((c * rat(weight), xs, ds));
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|(c, xs, ds)| {
            let xm = Monomial::from_pairs(
                x.iter()
                    .filter(|(v, _)| !shared.iter().any(|s| s.0 == *v))
                    .copied()
                    .chain(xs),
            );
            let dm = Monomial::from_pairs(
                d.iter()
                    .filter(|(v, _)| !shared.iter().any(|s| s.0 == *v))
                    .copied()
                    .chain(ds),
            );
            (c, xm, dm)
        })
        .collect()
}

fn factorial(k: u32) -> i64 {
    (1..=k as i64).product()
}

impl<'a> Add<&'a WeylElement> for &WeylElement {
    type Output = WeylElement;
    /// Panics on mismatched coordinates; see [`WeylElement::try_add`].
    fn add(self, rhs: &'a WeylElement) -> WeylElement {
        self.try_add(rhs).expect("coordinate mismatch in Weyl addition")
    }
}

impl<'a> Sub<&'a WeylElement> for &WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &'a WeylElement) -> WeylElement {
        self.try_sub(rhs)
            .expect("coordinate mismatch in Weyl subtraction")
    }
}

impl<'a> Mul<&'a WeylElement> for &WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &'a WeylElement) -> WeylElement {
        self.try_mul(rhs).expect("coordinate mismatch in Weyl product")
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        WeylElement {
            coords: self.coords.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let mut parts: Vec<String> = Vec::new();
            if !m.x.is_one() {
                parts.push(m.x.to_string());
            }
            for &(v, e) in m.d.iter() {
                let name = v.partial_name();
                parts.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            let body = parts.join("*");
            match c.constant_value() {
                Some(q) => write_term(f, &q, (!body.is_empty()).then_some(body.as_str()), k == 0)?,
                None => {
                    if k > 0 {
                        f.write_str(" + ")?;
                    }
                    if body.is_empty() {
                        write!(f, "({c})")?;
                    } else {
                        write!(f, "({c})*{body}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("matrix space needs m >= n >= 1, got m={m}, n={n}")]
    BadMatrix { m: usize, n: usize },
    #[error("skew space needs n >= 1")]
    BadSkew,
}

/// One of the two families of generic spaces.
///
/// `Matrix { m, n }` is the space of `m × n` matrices with coordinates
/// `x[i,j]`; `Skew { n }` is the space of `(2n+1) × (2n+1)` skew-symmetric
/// matrices with one coordinate `x[i,j]` per pair `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    Matrix { m: usize, n: usize },
    Skew { n: usize },
}

impl Space {
    pub fn matrix(m: usize, n: usize) -> Result<Space, SpaceError> {
        if n == 0 || m < n {
            return Err(SpaceError::BadMatrix { m, n });
        }
        Ok(Space::Matrix { m, n })
    }

    pub fn skew(n: usize) -> Result<Space, SpaceError> {
        if n == 0 {
            return Err(SpaceError::BadSkew);
        }
        Ok(Space::Skew { n })
    }

    /// The parameter `n`: the size of the minors, resp. half the size of the
    /// Pfaffians.
    pub fn n(&self) -> usize {
        match *self {
            Space::Matrix { n, .. } | Space::Skew { n } => n,
        }
    }

    /// Rank of the general linear group acting by polarization: `n` on the
    /// columns of a matrix, `2n+1` for skew matrices.
    pub fn rank(&self) -> usize {
        match *self {
            Space::Matrix { n, .. } => n,
            Space::Skew { n } => 2 * n + 1,
        }
    }

    pub fn vars(&self) -> Vec<VarId> {
        match *self {
            Space::Matrix { m, n } => (1..=m)
                .flat_map(|i| (1..=n).map(move |j| VarId::x(i, j)))
                .collect(),
            Space::Skew { n } => {
                let size = 2 * n + 1;
                (1..=size)
                    .flat_map(|i| ((i + 1)..=size).map(move |j| VarId::x(i, j)))
                    .collect()
            }
        }
    }

    pub fn coords(&self) -> Coords {
        Coords::new(self.vars())
    }

    /// Matrix entry at `(i, j)`, 1-based. For skew spaces this resolves
    /// `x[j,i] = -x[i,j]` and `x[i,i] = 0`.
    pub fn entry(&self, i: usize, j: usize) -> MultiPoly {
        match *self {
            Space::Matrix { .. } => MultiPoly::var(VarId::x(i, j)),
            Space::Skew { .. } => skew_entry(VarId::x, i, j),
        }
    }
}

/// Entry `(i, j)` of a generic skew-symmetric matrix whose upper triangle is
/// given by `var`.
pub fn skew_entry(var: fn(usize, usize) -> VarId, i: usize, j: usize) -> MultiPoly {
    use std::cmp::Ordering;
    match i.cmp(&j) {
        Ordering::Less => MultiPoly::var(var(i, j)),
        Ordering::Equal => MultiPoly::zero(),
        Ordering::Greater => -&MultiPoly::var(var(j, i)),
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Space::Matrix { m, n } => write!(f, "matrix({m},{n})"),
            Space::Skew { n } => write!(f, "skew({})", 2 * n + 1),
        }
    }
}

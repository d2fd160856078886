//! Invariant operators attached to the tuple of maximal minors or
//! sub-maximal Pfaffians, the Cayley identities, recovery of `P_f(s)` by
//! interpolation, and the closed-form b-functions.
//!
//! Powers `f^s` are never formed symbolically. Every identity is checked at
//! nonnegative integer exponents and then interpolated, which is sound
//! because the scalars involved are polynomials of known degree in `|â|`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::capelli::{self, UeaMatrix};
use crate::exact::{rat, ExactError, FactoredPolynomial, MultiPoly, Rational, UniPoly, VarId};
use crate::genmat::{self, GenmatError};
use crate::report::Report;
use crate::weyl::{Space, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BfunError {
    #[error("D_d applied to f^{0} is not a multiple of f^{0}")]
    NotCollinear(String),
    #[error("scalar for |a| = {degree} differs between {first} and {second}")]
    ScalarDependsOnTuple {
        degree: u32,
        first: String,
        second: String,
    },
    #[error("samples cover {0} exponent degrees, need at least {1}")]
    TooFewDegrees(usize, usize),
    #[error("interpolated polynomial has degree {got:?}, expected {want}")]
    WrongDegree { got: Option<usize>, want: usize },
    #[error("sample at |a| = {0} is off the interpolant")]
    OffInterpolant(u32),
    #[error("exponent tuple has {got} entries, tuple has {want} members")]
    BadExponent { got: usize, want: usize },
    #[error("no several-variables formula for {0}")]
    UnsupportedSpace(Space),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Genmat(#[from] GenmatError),
}

/// The tuple of maximal minors `d_K` (in lexicographic order of `K`) or of
/// sub-maximal Pfaffians `d_1, …, d_(2n+1)`.
#[derive(Clone, Debug)]
pub struct TupleF {
    pub space: Space,
    pub labels: Vec<String>,
    pub members: Vec<MultiPoly>,
}

impl TupleF {
    pub fn new(space: Space) -> TupleF {
        let (labels, members) = match space {
            Space::Matrix { m, n } => genmat::index_subsets(m, n)
                .into_iter()
                .map(|k| {
                    let label = format!("d{k:?}").replace(' ', "");
                    (label, genmat::minor(space, &k).expect("valid subset"))
                })
                .unzip(),
            Space::Skew { n } => (1..=2 * n + 1)
                .map(|i| {
                    (
                        format!("d[{i}]"),
                        genmat::pfaffian(space, i).expect("valid index"),
                    )
                })
                .unzip(),
        };
        TupleF {
            space,
            labels,
            members,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `f^â`.
    pub fn power(&self, a: &ExponentTuple) -> Result<MultiPoly, BfunError> {
        self.check(a)?;
        Ok(self
            .members
            .iter()
            .zip(&a.0)
            .filter(|(_, &e)| e > 0)
            .fold(MultiPoly::one(), |acc, (f, &e)| &acc * &f.pow(e)))
    }

    fn check(&self, a: &ExponentTuple) -> Result<(), BfunError> {
        if a.0.len() != self.len() {
            return Err(BfunError::BadExponent {
                got: a.0.len(),
                want: self.len(),
            });
        }
        Ok(())
    }
}

/// Exponents `â`, one per member of the tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentTuple(pub Vec<u32>);

impl ExponentTuple {
    pub fn pure(len: usize, i: usize, e: u32) -> ExponentTuple {
        let mut v = vec![0; len];
        v[i] = e;
        ExponentTuple(v)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn support(&self) -> usize {
        self.0.iter().filter(|&&e| e > 0).count()
    }

    /// All tuples of the given length and total.
    pub fn all_of_total(len: usize, total: u32) -> Vec<ExponentTuple> {
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentTuple>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(ExponentTuple(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e;
                rec(pos + 1, left - e, cur, out);
            }
        }
        if len == 0 {
            return if total == 0 {
                vec![ExponentTuple(Vec::new())]
            } else {
                Vec::new()
            };
        }
        let mut out = Vec::new();
        rec(0, total, &mut vec![0; len], &mut out);
        out
    }
}

impl fmt::Display for ExponentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Applies the constant-coefficient operator `p(∂)` to `g`.
pub fn apply_star(p: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for (m, c) in p.terms() {
        let h = g.apply_partials(m);
        if !h.is_zero() {
            out += &h.scale(c);
        }
    }
    out
}

/// `D_d = Σ f_K* · f_K`, normal-ordered.
pub fn build_dd(t: &TupleF) -> WeylElement {
    let coords = t.space.coords();
    t.members.iter().fold(WeylElement::zero(&coords), |acc, f| {
        &acc + &(&genmat::star(&coords, f) * &WeylElement::from_poly(&coords, f))
    })
}

/// `D_∂ = Σ f_K · f_K*`, normal-ordered.
pub fn build_ddual(t: &TupleF) -> WeylElement {
    let coords = t.space.coords();
    t.members.iter().fold(WeylElement::zero(&coords), |acc, f| {
        &acc + &(&WeylElement::from_poly(&coords, f) * &genmat::star(&coords, f))
    })
}

/// `D_d • g` computed as `Σ f_K* • (f_K g)`, without expanding `D_d`.
pub fn apply_dd(t: &TupleF, g: &MultiPoly) -> MultiPoly {
    t.members
        .iter()
        .fold(MultiPoly::zero(), |acc, f| &acc + &apply_star(f, &(f * g)))
}

/// `D_∂ • g` computed as `Σ f_K (f_K* • g)`.
pub fn apply_ddual(t: &TupleF, g: &MultiPoly) -> MultiPoly {
    t.members
        .iter()
        .fold(MultiPoly::zero(), |acc, f| &acc + &(f * &apply_star(f, g)))
}

/// `∏_{i<n} (s + i)` on matrices, `∏_{i<n} (s + 2i)` on skew matrices: the
/// Cayley scalar, which is also `b_Z`.
pub fn cayley_polynomial(space: Space) -> FactoredPolynomial {
    let n = space.n() as i64;
    let step = match space {
        Space::Matrix { .. } => 1,
        Space::Skew { .. } => 2,
    };
    FactoredPolynomial::monic(VarId::S, (0..n).map(|i| rat(-step * i)))
}

/// `f_L* • f_L^a = c_a f_L^(a-1)` for `a = 1..=a_max`, with `c_a` the Cayley
/// polynomial at `a`, and `f_K* • f_L^a = 0` for `K != L`. When enough
/// exponents are sampled the scalars are also interpolated and compared with
/// the Cayley polynomial as polynomials.
pub fn verify_cayley(t: &TupleF, l: usize, a_max: u32) -> Report {
    let mut rep = Report::new();
    let expected = cayley_polynomial(t.space).expand();
    let f = &t.members[l];
    let mut points = vec![(Rational::from_integer(0.into()), expected.eval(&rat(0)))];
    let mut prev = MultiPoly::one();
    for a in 1..=a_max {
        let fa = &prev * f;
        let g = apply_star(f, &fa);
        let want = expected.eval(&rat(a as i64));
        match g.scalar_multiple_of(&prev) {
            Some(c) => {
                rep.check(format!("{}^{a}", t.labels[l]), c == want, || {
                    format!("scalar {c}, expected {want}")
                });
                points.push((rat(a as i64), c));
            }
            None => rep.fail(
                format!("{}^{a}", t.labels[l]),
                "not a multiple of the previous power",
            ),
        }
        for (k, other) in t.members.iter().enumerate() {
            if k != l {
                let h = apply_star(other, &fa);
                rep.check(
                    format!("{}*{}^{a}", t.labels[k], t.labels[l]),
                    h.is_zero(),
                    || h.to_string(),
                );
            }
        }
        prev = fa;
    }
    if points.len() > t.space.n() {
        match UniPoly::interpolate(&points, VarId::S) {
            Ok(p) => rep.check("interpolation", p == expected, || p.to_string()),
            Err(e) => rep.fail("interpolation", e.to_string()),
        }
    }
    rep
}

/// The default sample plan: pure powers of the first member for
/// `|â| = 0..=n+2`, plus two mixed tuples in each of the degrees 2 and 3.
pub fn default_samples(t: &TupleF) -> Vec<ExponentTuple> {
    let len = t.len();
    let n = t.space.n() as u32;
    let mut out: Vec<ExponentTuple> = (0..=n + 2).map(|e| ExponentTuple::pure(len, 0, e)).collect();
    if len >= 2 {
        let mut mixed = |v: &[(usize, u32)]| {
            let mut e = vec![0; len];
            for &(i, k) in v {
                e[i] += k;
            }
            out.push(ExponentTuple(e));
        };
        let last = len - 1;
        mixed(&[(0, 1), (1, 1)]);
        mixed(&[(0, 1), (last, 1)]);
        mixed(&[(0, 2), (last, 1)]);
        if len >= 3 {
            mixed(&[(0, 1), (1, 1), (2, 1)]);
        } else {
            mixed(&[(0, 1), (1, 2)]);
        }
    }
    out
}

/// The scalar `c` with `D_d • f^â = c f^â`.
pub fn dd_scalar(t: &TupleF, a: &ExponentTuple) -> Result<Rational, BfunError> {
    let fa = t.power(a)?;
    apply_dd(t, &fa)
        .scalar_multiple_of(&fa)
        .ok_or_else(|| BfunError::NotCollinear(a.to_string()))
}

/// Result of recovering `P_f(s)`.
#[derive(Clone, Debug)]
pub struct Recovery {
    pub polynomial: FactoredPolynomial,
    /// `(â, scalar)` for every sample, in sample order.
    pub samples: Vec<(ExponentTuple, Rational)>,
}

/// Recovers `P_f(s)` from `D_d • f^â = P_f(|â|) f^â` at the given samples.
///
/// Every sample must be collinear, and samples of equal total must agree.
/// The first `n+1` distinct totals determine the interpolant; every further
/// total must lie on it, and the interpolant must have degree `n`.
pub fn recover_pf(t: &TupleF, samples: &[ExponentTuple]) -> Result<Recovery, BfunError> {
    let n = t.space.n();
    let mut by_degree: BTreeMap<u32, (ExponentTuple, Rational)> = BTreeMap::new();
    let mut all = Vec::with_capacity(samples.len());
    for a in samples {
        let c = dd_scalar(t, a)?;
        let d = a.total();
        match by_degree.get(&d) {
            Some((first, c0)) if *c0 != c => {
                return Err(BfunError::ScalarDependsOnTuple {
                    degree: d,
                    first: first.to_string(),
                    second: a.to_string(),
                })
            }
            Some(_) => {}
            None => {
                by_degree.insert(d, (a.clone(), c.clone()));
            }
        }
        all.push((a.clone(), c));
    }
    if by_degree.len() < n + 2 {
        return Err(BfunError::TooFewDegrees(by_degree.len(), n + 2));
    }
    let points: Vec<(Rational, Rational)> = by_degree
        .iter()
        .map(|(d, (_, c))| (rat(*d as i64), c.clone()))
        .collect();
    let p = UniPoly::interpolate(&points[..=n], VarId::S)?;
    for (x, y) in &points[n + 1..] {
        if p.eval(x) != *y {
            return Err(BfunError::OffInterpolant(
                x.to_integer().try_into().unwrap_or(u32::MAX),
            ));
        }
    }
    if p.degree() != Some(n) {
        return Err(BfunError::WrongDegree {
            got: p.degree(),
            want: n,
        });
    }
    Ok(Recovery {
        polynomial: p.factor_linear()?,
        samples: all,
    })
}

/// The closed-form b-function: `∏_{i=m-n+1}^{m} (s+i)` for maximal minors,
/// `∏_{i<n} (s+2i+3)` for sub-maximal Pfaffians.
pub fn catalog_bfunction(space: Space) -> FactoredPolynomial {
    match space {
        Space::Matrix { m, n } => {
            FactoredPolynomial::monic(VarId::S, ((m - n + 1)..=m).map(|i| rat(-(i as i64))))
        }
        Space::Skew { n } => FactoredPolynomial::monic(VarId::S, (0..n).map(|i| rat(-(2 * i as i64 + 3)))),
    }
}

/// Codimension of the zero locus: `m-n+1` for maximal minors, `3` for
/// sub-maximal Pfaffians.
pub fn codim(space: Space) -> i64 {
    match space {
        Space::Matrix { m, n } => (m - n + 1) as i64,
        Space::Skew { .. } => 3,
    }
}

/// `b_Z(s) = b(s - codim)`.
pub fn shift_to_bz(b: &FactoredPolynomial, space: Space) -> FactoredPolynomial {
    b.shift(&rat(-codim(space)))
}

/// The tail factors `k` in `(s_i + 1) ∏_k (s + k)`, if the space carries a
/// several-variables formula.
fn several_variables_tail(space: Space) -> Result<Vec<i64>, BfunError> {
    match space {
        Space::Matrix { m, n } if m == n + 1 => Ok((2..=n as i64).collect()),
        Space::Skew { n } => Ok((1..n as i64).map(|k| 2 * k + 1).collect()),
        _ => Err(BfunError::UnsupportedSpace(space)),
    }
}

/// `f_i* · f_i • f^â = (â_i + 1) ∏_k (|â| + k) f^â`.
pub fn verify_several_variables(t: &TupleF, i: usize, a: &ExponentTuple) -> Result<Report, BfunError> {
    let tail = several_variables_tail(t.space)?;
    let fa = t.power(a)?;
    let f = &t.members[i];
    let g = apply_star(f, &(f * &fa));
    let total = a.total() as i64;
    let want = tail
        .iter()
        .fold(rat(a.0[i] as i64 + 1), |acc, k| acc * rat(total + k));
    let mut rep = Report::new();
    let name = format!("{}{a}", t.labels[i]);
    match g.scalar_multiple_of(&fa) {
        Some(c) => rep.check(name, c == want, || format!("scalar {c}, expected {want}")),
        None => rep.fail(name, "not collinear"),
    }
    Ok(rep)
}

/// `τ(C_n) = D_∂` for `m × n` matrices.
pub fn verify_capelli_equals_ddual(space: Space) -> Report {
    let mut rep = Report::new();
    let Space::Matrix { n, .. } = space else {
        rep.fail("space", format!("{space} is not a matrix space"));
        return rep;
    };
    let tau = UeaMatrix::polarization(space);
    let c = capelli::capelli_realized(&tau);
    let dd = build_ddual(&TupleF::new(space));
    rep.check(format!("C{n}=D_partial"), c.coeffs[n] == dd, || {
        (&c.coeffs[n] - &dd).to_string()
    });
    rep
}

/// `D_d = (-1)^n F(D_∂)`.
pub fn verify_fourier_dd(space: Space) -> Report {
    let t = TupleF::new(space);
    let dd = build_dd(&t);
    let mut f = build_ddual(&t).fourier();
    if space.n() % 2 == 1 {
        f = -&f;
    }
    let mut rep = Report::new();
    rep.check("D_d=(-1)^n*F(D_partial)", dd == f, || (&dd - &f).to_string());
    rep
}

/// `D_d = col-det(E + diag(m, m-1, …, m-n+1))` for `m × n` matrices.
pub fn verify_determinantal_dd(space: Space) -> Report {
    let mut rep = Report::new();
    let Space::Matrix { m, n } = space else {
        rep.fail("space", format!("{space} is not a matrix space"));
        return rep;
    };
    let tau = UeaMatrix::polarization(space);
    let a: Vec<Vec<WeylElement>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    if i == j {
                        tau.e(i, i) + &WeylElement::int(&tau.coords, (m + 1 - i) as i64)
                    } else {
                        tau.e(i, j).clone()
                    }
                })
                .collect()
        })
        .collect();
    let det = capelli::column_det(&a).expect("shared coordinates");
    let dd = build_dd(&TupleF::new(space));
    rep.check("D_d=col-det", det == dd, || (&det - &dd).to_string());
    rep
}

/// `b_Z` of maximal minors does not depend on `m`, and
/// `b_Z(m-1, n-1)` divides `b_Z(m, n)`.
pub fn verify_divisibility_chain(max_m: usize) -> Report {
    let mut rep = Report::new();
    for n in 1..=max_m {
        let base = shift_to_bz(
            &catalog_bfunction(Space::Matrix { m: n, n }),
            Space::Matrix { m: n, n },
        );
        for m in n..=max_m {
            let s = Space::Matrix { m, n };
            let bz = shift_to_bz(&catalog_bfunction(s), s);
            rep.check(
                format!("bZ-independent-of-m[{m},{n}]"),
                bz == base && bz == cayley_polynomial(s),
                || bz.to_string(),
            );
            if n >= 2 && m >= 2 {
                let smaller = Space::Matrix { m: m - 1, n: n - 1 };
                let bz_small = shift_to_bz(&catalog_bfunction(smaller), smaller);
                rep.check(
                    format!("divides[{},{}]|[{m},{n}]", m - 1, n - 1),
                    bz_small.divides(&bz),
                    || format!("{bz_small} does not divide {bz}"),
                );
            }
        }
    }
    for n in 1..=max_m {
        let s = Space::Skew { n };
        let bz = shift_to_bz(&catalog_bfunction(s), s);
        rep.check(format!("bZ-skew[{n}]"), bz == cayley_polynomial(s), || {
            bz.to_string()
        });
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(m: usize, n: usize) -> TupleF {
        TupleF::new(Space::matrix(m, n).unwrap())
    }

    fn skew(n: usize) -> TupleF {
        TupleF::new(Space::skew(n).unwrap())
    }

    #[test]
    fn tuples() {
        let t = matrix(3, 2);
        assert_eq!(t.labels, vec!["d[1,2]", "d[1,3]", "d[2,3]"]);
        assert_eq!(skew(2).len(), 5);
        assert!(t.power(&ExponentTuple(vec![1])).is_err());
        assert_eq!(ExponentTuple::all_of_total(3, 2).len(), 6);
    }

    #[test]
    fn dd_normal_form_skew3() {
        let t = skew(1);
        assert_eq!(
            build_dd(&t).to_string(),
            "x[1,2]*d[1,2] + x[1,3]*d[1,3] + x[2,3]*d[2,3] + 3"
        );
    }

    #[test]
    fn factored_application_matches_operator() {
        for t in [matrix(2, 2), matrix(3, 2), skew(1), skew(2)] {
            let dd = build_dd(&t);
            let dual = build_ddual(&t);
            for a in ExponentTuple::all_of_total(t.len(), 2) {
                let g = t.power(&a).unwrap();
                assert_eq!(dd.apply(&g), apply_dd(&t, &g));
                assert_eq!(dual.apply(&g), apply_ddual(&t, &g));
            }
        }
    }

    #[test]
    fn cayley() {
        for t in [matrix(2, 2), matrix(3, 2), skew(1), skew(2)] {
            let r = verify_cayley(&t, 0, 3);
            assert!(r.passed(), "{r}");
        }
        let t = matrix(3, 3);
        let g = apply_star(&t.members[0], &t.members[0].pow(2));
        assert_eq!(g.scalar_multiple_of(&t.members[0]), Some(rat(24)));
        let s5 = skew(2);
        assert_eq!(apply_star(&s5.members[0], &s5.members[0]), MultiPoly::int(3));
    }

    #[test]
    fn recovery_small() {
        for (t, want) in [
            (matrix(2, 2), "(s + 1)*(s + 2)"),
            (matrix(3, 2), "(s + 2)*(s + 3)"),
            (skew(1), "(s + 3)"),
        ] {
            let r = recover_pf(&t, &default_samples(&t)).unwrap();
            assert_eq!(r.polynomial.to_string(), want);
            assert_eq!(r.polynomial, catalog_bfunction(t.space));
        }
    }

    #[test]
    fn recovery_needs_enough_degrees() {
        let t = matrix(3, 2);
        let few: Vec<_> = (0..3).map(|e| ExponentTuple::pure(3, 0, e)).collect();
        assert!(matches!(
            recover_pf(&t, &few),
            Err(BfunError::TooFewDegrees(3, 4))
        ));
    }

    #[test]
    fn catalog_and_shift() {
        let s = |m, n| Space::matrix(m, n).unwrap();
        assert_eq!(catalog_bfunction(s(3, 2)).to_string(), "(s + 2)*(s + 3)");
        assert_eq!(
            catalog_bfunction(Space::skew(2).unwrap()).to_string(),
            "(s + 3)*(s + 5)"
        );
        assert_eq!(catalog_bfunction(s(4, 4)).degree(), 4);
        assert_eq!(
            shift_to_bz(&catalog_bfunction(s(3, 2)), s(3, 2)).to_string(),
            "s*(s + 1)"
        );
        let sk = Space::skew(2).unwrap();
        assert_eq!(shift_to_bz(&catalog_bfunction(sk), sk).to_string(), "s*(s + 2)");
        assert_eq!(
            shift_to_bz(&catalog_bfunction(s(2, 2)), s(2, 2)).to_string(),
            "s*(s + 1)"
        );
        assert!(verify_divisibility_chain(6).passed());
    }

    #[test]
    fn several_variables() {
        let t = matrix(2, 1);
        let r = verify_several_variables(&t, 0, &ExponentTuple(vec![2, 1])).unwrap();
        assert!(r.passed(), "{r}");
        let t = skew(1);
        assert!(verify_several_variables(&t, 0, &ExponentTuple(vec![1, 1, 0]))
            .unwrap()
            .passed());
        let t = skew(2);
        assert!(
            verify_several_variables(&t, 0, &ExponentTuple(vec![1, 0, 0, 0, 0]))
                .unwrap()
                .passed()
        );
        assert!(matches!(
            verify_several_variables(&matrix(2, 2), 0, &ExponentTuple(vec![1])),
            Err(BfunError::UnsupportedSpace(_))
        ));
    }

    #[test]
    fn operator_identities() {
        for (m, n) in [(1, 1), (2, 2), (3, 2)] {
            let s = Space::matrix(m, n).unwrap();
            assert!(verify_capelli_equals_ddual(s).passed(), "{s}");
            assert!(verify_fourier_dd(s).passed(), "{s}");
            assert!(verify_determinantal_dd(s).passed(), "{s}");
        }
        assert!(verify_fourier_dd(Space::skew(1).unwrap()).passed());
    }
}

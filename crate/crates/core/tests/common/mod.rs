//! Strategies and property bodies shared by the property tests and the
//! acceptance runner.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::OnceLock;

use bsato_core::capelli::{self, CapelliPolynomial, UeaMatrix};
use bsato_core::exact::{frac, rat, FactoredPolynomial, Monomial, MultiPoly, Rational, UniPoly, VarId};
use bsato_core::weyl::{Coords, Space, WeylElement};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// Seed for every randomized run; printed by the acceptance runner.
pub const SEED: [u8; 32] = *b"bsato-exact-identities-seed-0001";

pub fn poly_vars() -> Vec<VarId> {
    vec![VarId::named("p"), VarId::named("q"), VarId::named("r")]
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| frac(n, d))
}

/// Sparse polynomials in the given variables, degree at most 3 per variable.
pub fn poly_in(vars: Vec<VarId>, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let k = vars.len();
    prop::collection::vec((prop::collection::vec(0u32..=3, k), rational()), 0..=max_terms).prop_map(
        move |terms| {
            MultiPoly::from_terms(
                terms
                    .into_iter()
                    .map(|(exps, c)| (Monomial::from_pairs(vars.iter().copied().zip(exps)), c)),
            )
        },
    )
}

pub fn poly() -> impl Strategy<Value = MultiPoly> {
    poly_in(poly_vars(), 4)
}

pub fn weyl_coords() -> Coords {
    Coords::new(vec![VarId::named("v"), VarId::named("w")])
}

/// Operators on two coordinates with orders at most 2 in each partial and a
/// coefficient that may involve the central parameter `s`.
pub fn weyl() -> impl Strategy<Value = WeylElement> {
    let term = (
        prop::collection::vec(0u32..=2, 2),
        prop::collection::vec(0u32..=2, 2),
        rational(),
        0u32..=1,
    );
    prop::collection::vec(term, 0..=3).prop_map(|terms| {
        let coords = weyl_coords();
        let vars = coords.vars().to_vec();
        terms
            .into_iter()
            .fold(WeylElement::zero(&coords), |acc, (x, d, c, s)| {
                let coeff = MultiPoly::term(Monomial::pow_of(VarId::S, s), c);
                let t = WeylElement::from_parts(
                    &coords,
                    Monomial::from_pairs(vars.iter().copied().zip(x)),
                    Monomial::from_pairs(vars.iter().copied().zip(d)),
                    coeff,
                );
                &acc + &t
            })
    })
}

pub fn weyl_target() -> impl Strategy<Value = MultiPoly> {
    poly_in(weyl_coords().vars().to_vec(), 3)
}

pub fn ring_axioms((a, b, c): (MultiPoly, MultiPoly, MultiPoly)) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    prop_assert_eq!(&a + &b, &b + &a);
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &b, &b * &a);
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    prop_assert_eq!(&a * &MultiPoly::one(), a.clone());
    prop_assert_eq!(&(&a - &b) + &b, a.clone());
    prop_assert_eq!(&a + &(-&a), MultiPoly::zero());
    Ok(())
}

/// Substituting then evaluating equals evaluating at the substituted point,
/// and evaluation is a ring map.
pub fn subst_composition(
    (p, g, q, pt): (MultiPoly, MultiPoly, MultiPoly, Vec<Rational>),
) -> Result<(), TestCaseError> {
    let vars = poly_vars();
    let point: BTreeMap<VarId, Rational> = vars.iter().copied().zip(pt).collect();
    let composed = p.subst(&BTreeMap::from([(vars[0], g.clone())]));
    let mut moved = point.clone();
    moved.insert(vars[0], g.eval(&point).unwrap());
    prop_assert_eq!(composed.eval(&point), p.eval(&moved));
    let pq = (&p * &q).eval(&point).unwrap();
    prop_assert_eq!(pq, p.eval(&point).unwrap() * q.eval(&point).unwrap());
    Ok(())
}

pub fn interpolation_points() -> impl Strategy<Value = Vec<(Rational, Rational)>> {
    prop::collection::btree_map(-20i64..=20, rational(), 1..=7)
        .prop_map(|m| m.into_iter().map(|(x, y)| (rat(x), y)).collect())
}

/// The interpolant passes through every point and has degree below the
/// number of points.
pub fn interpolation_roundtrip(points: Vec<(Rational, Rational)>) -> Result<(), TestCaseError> {
    let p = UniPoly::interpolate(&points, VarId::S).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for (x, y) in &points {
        prop_assert_eq!(&p.eval(x), y);
    }
    prop_assert!(p.degree().is_none_or(|d| d < points.len()));
    Ok(())
}

pub fn roots() -> impl Strategy<Value = (Rational, Vec<Rational>)> {
    (
        (1i64..=4).prop_map(rat),
        prop::collection::vec((-9i64..=9, 1i64..=2).prop_map(|(n, d)| frac(n, d)), 0..=5),
    )
}

/// Factoring an expanded product of linear factors recovers the factors.
pub fn factor_roundtrip((lead, rs): (Rational, Vec<Rational>)) -> Result<(), TestCaseError> {
    let f = FactoredPolynomial::from_roots(VarId::S, lead, rs);
    let back = f
        .expand()
        .factor_linear()
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&back, &f);
    prop_assert_eq!(back.expand(), f.expand());
    Ok(())
}

pub fn weyl_associativity((a, b, c): (WeylElement, WeylElement, WeylElement)) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    Ok(())
}

/// `(AB) • f = A • (B • f)`.
pub fn weyl_action((a, b, f): (WeylElement, WeylElement, MultiPoly)) -> Result<(), TestCaseError> {
    prop_assert_eq!((&a * &b).apply(&f), a.apply(&b.apply(&f)));
    Ok(())
}

/// The Fourier transform is an algebra map of order four.
pub fn fourier_laws((a, b): (WeylElement, WeylElement)) -> Result<(), TestCaseError> {
    prop_assert_eq!((&a * &b).fourier(), &a.fourier() * &b.fourier());
    prop_assert_eq!((&a + &b).fourier(), &a.fourier() + &b.fourier());
    prop_assert_eq!(a.fourier().fourier().fourier().fourier(), a.clone());
    Ok(())
}

/// Spaces of rank at most 3 together with their polarization operators and
/// realized Capelli elements.
pub struct CapelliCase {
    pub space: Space,
    pub tau: UeaMatrix,
    pub caps: CapelliPolynomial<WeylElement>,
}

pub fn capelli_cases() -> &'static [CapelliCase] {
    static CASES: OnceLock<Vec<CapelliCase>> = OnceLock::new();
    CASES.get_or_init(|| {
        let spaces = [
            Space::matrix(1, 1),
            Space::matrix(2, 2),
            Space::matrix(3, 2),
            Space::matrix(3, 3),
            Space::skew(1),
        ];
        spaces
            .into_iter()
            .map(|s| {
                let space = s.expect("valid space");
                let tau = UeaMatrix::polarization(space);
                let caps = capelli::capelli_realized(&tau);
                CapelliCase { space, tau, caps }
            })
            .collect()
    })
}

/// A case index, a Capelli index, a generator and a polynomial on the case's
/// space (degree at most 2 per coordinate, at most 4 terms).
pub fn centrality_input() -> impl Strategy<Value = (usize, usize, usize, usize, MultiPoly)> {
    (0..capelli_cases().len()).prop_flat_map(|k| {
        let case = &capelli_cases()[k];
        let r = case.tau.r;
        let vars = case.space.vars();
        let n = vars.len();
        let term = (prop::collection::vec(0u32..=2, n), rational());
        (
            Just(k),
            0..=r,
            1..=r,
            1..=r,
            prop::collection::vec(term, 0..=4).prop_map(move |terms| {
                MultiPoly::from_terms(
                    terms
                        .into_iter()
                        .map(|(e, c)| (Monomial::from_pairs(vars.iter().copied().zip(e)), c)),
                )
            }),
        )
    })
}

/// `τ(C_a)` commutes with `τ(E_ij)`, checked on a polynomial.
pub fn capelli_centrality(
    (k, a, i, j, f): (usize, usize, usize, usize, MultiPoly),
) -> Result<(), TestCaseError> {
    let case = &capelli_cases()[k];
    let c = &case.caps.coeffs[a];
    let e = case.tau.e(i, j);
    prop_assert_eq!(
        c.apply(&e.apply(&f)),
        e.apply(&c.apply(&f)),
        "{} C{} E{}{}",
        case.space,
        a,
        i,
        j
    );
    Ok(())
}

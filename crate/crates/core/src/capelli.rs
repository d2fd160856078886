//! Capelli elements of `U(gl_r)`, their realization as differential operators
//! through polarization, the Fourier transform with parameter `u`, and the
//! eigenvalue identities on highest-weight vectors.
//!
//! Abstract elements of `U(gl_r)` are kept as noncommutative polynomials in
//! the generators `E_ij`, never reduced to a PBW basis. Equalities are
//! decided after realizing them in the Weyl algebra, where normal forms are
//! canonical.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exact::{falling_factorial, rat, to_falling_basis, MultiPoly, VarId};
use crate::genmat::{self, GenmatError, Partition};
use crate::linalg;
use crate::report::Report;
use crate::weyl::{Coords, Space, WeylElement, WeylError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CapelliError {
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Genmat(#[from] GenmatError),
}

type Word = Vec<(u16, u16)>;

/// An element of the free algebra on `E_ij`, `1 <= i, j <= r`, with central
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UeaElement {
    r: usize,
    terms: BTreeMap<Word, MultiPoly>,
}

impl UeaElement {
    pub fn zero(r: usize) -> Self {
        UeaElement {
            r,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(r: usize, c: MultiPoly) -> Self {
        let mut e = UeaElement::zero(r);
        e.add_term(Vec::new(), c);
        e
    }

    pub fn one(r: usize) -> Self {
        UeaElement::scalar(r, MultiPoly::one())
    }

    /// The generator `E_ij` (1-based).
    pub fn gen(r: usize, i: usize, j: usize) -> Self {
        assert!(
            (1..=r).contains(&i) && (1..=r).contains(&j),
            "E{i}{j} outside gl_{r}"
        );
        let mut e = UeaElement::zero(r);
        e.add_term(vec![(i as u16, j as u16)], MultiPoly::one());
        e
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    fn add_term(&mut self, w: Word, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &UeaElement) -> UeaElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> UeaElement {
        UeaElement {
            r: self.r,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &UeaElement) -> UeaElement {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UeaElement) -> UeaElement {
        let mut out = UeaElement::zero(self.r);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &MultiPoly) -> UeaElement {
        let mut out = UeaElement::zero(self.r);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a * c);
        }
        out
    }

    /// Coefficients of the powers of a central variable.
    pub fn coefficients_in(&self, v: VarId) -> Vec<UeaElement> {
        let deg = self.terms.values().map(|c| c.degree_in(v)).max().unwrap_or(0) as usize;
        let mut out = vec![UeaElement::zero(self.r); deg + 1];
        for (w, c) in &self.terms {
            for (k, ck) in c.coefficients_in(v).into_iter().enumerate() {
                out[k].add_term(w.clone(), ck);
            }
        }
        out
    }

    /// Substitutes each generator by an element; the result is built by
    /// multiplying the images along every word.
    pub fn substitute(&self, image: impl Fn(usize, usize) -> UeaElement) -> UeaElement {
        let mut out = UeaElement::zero(self.r);
        for (w, c) in &self.terms {
            let prod = w
                .iter()
                .fold(UeaElement::scalar(self.r, c.clone()), |acc, &(i, j)| {
                    acc.mul(&image(i as usize, j as usize))
                });
            out = out.add(&prod);
        }
        out
    }

    /// The Fourier transform with parameter `u`: `E_ij ↦ -E_ji` for `i != j`,
    /// `E_ii ↦ -E_ii - u`. This preserves the defining relations, so it
    /// extends to an algebra automorphism applied letter by letter.
    pub fn fourier_u(&self, u: &MultiPoly) -> UeaElement {
        let r = self.r;
        self.substitute(|i, j| {
            let g = UeaElement::gen(r, j, i).neg();
            if i == j {
                g.sub(&UeaElement::scalar(r, u.clone()))
            } else {
                g
            }
        })
    }

    /// Image under a realization `E_ij ↦ τ(E_ij)`.
    pub fn realize(&self, tau: &UeaMatrix) -> WeylElement {
        assert_eq!(self.r, tau.r, "rank mismatch");
        let mut out = WeylElement::zero(&tau.coords);
        for (w, c) in &self.terms {
            let mut prod = WeylElement::scalar(&tau.coords, c.clone());
            for &(i, j) in w {
                prod = &prod * &tau.entries[i as usize - 1][j as usize - 1];
            }
            out = &out + &prod;
        }
        out
    }
}

impl fmt::Display for UeaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // Longer words first, then lexicographic, for a stable reading order.
        let mut terms: Vec<(&Word, &MultiPoly)> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(b.0)));
        for (k, (w, c)) in terms.into_iter().enumerate() {
            let body: Vec<String> = w.iter().map(|(i, j)| format!("E{i}{j}")).collect();
            let body = body.join("*");
            match c.constant_value() {
                Some(q) => {
                    crate::exact::write_term(f, &q, (!body.is_empty()).then_some(body.as_str()), k == 0)?
                }
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

/// A realization `τ: U(gl_r) → D_X`, stored as the matrix of images of `E_ij`.
#[derive(Clone, Debug)]
pub struct UeaMatrix {
    pub r: usize,
    pub space: Space,
    pub coords: Coords,
    pub entries: Vec<Vec<WeylElement>>,
}

impl UeaMatrix {
    /// The polarization realization on `space` (column action on matrices,
    /// the action on `Λ²` for skew matrices).
    pub fn polarization(space: Space) -> UeaMatrix {
        let r = space.rank();
        let coords = space.coords();
        let entries = (1..=r)
            .map(|i| {
                (1..=r)
                    .map(|j| genmat::polarization(space, i, j).expect("indices in range"))
                    .collect()
            })
            .collect();
        let tau = UeaMatrix {
            r,
            space,
            coords,
            entries,
        };
        debug_assert!(tau.relations_hold(), "polarization violates gl relations");
        tau
    }

    pub fn e(&self, i: usize, j: usize) -> &WeylElement {
        &self.entries[i - 1][j - 1]
    }

    /// `[E_ij, E_kl] = δ_jk E_il - δ_il E_kj` for all index quadruples.
    pub fn relations_hold(&self) -> bool {
        let r = self.r;
        let zero = WeylElement::zero(&self.coords);
        for i in 1..=r {
            for j in 1..=r {
                for k in 1..=r {
                    for l in 1..=r {
                        let lhs = self.e(i, j).commutator(self.e(k, l)).expect("same coords");
                        let mut rhs = zero.clone();
                        if j == k {
                            rhs = &rhs + self.e(i, l);
                        }
                        if i == l {
                            rhs = &rhs - self.e(k, j);
                        }
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// `C(z) = Σ_a (-1)^(r-a) C_a [z]_(r-a)`; `coeffs[a]` is `C_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapelliPolynomial<T> {
    pub r: usize,
    pub coeffs: Vec<T>,
}

fn delta(r: usize, i: usize) -> MultiPoly {
    // Δ = diag(r-1-z, …, 1-z, -z), 1-based i
    &MultiPoly::int((r - i) as i64) - &MultiPoly::var(VarId::Z)
}

/// Reads `C_a` off a polynomial in `z` given by its power coefficients.
fn capelli_coefficients<T: Clone>(
    r: usize,
    power_coeffs: Vec<T>,
    zero: T,
    scale_add: impl Fn(&T, &crate::exact::Rational, &T) -> T,
    negate: impl Fn(&T) -> T,
) -> Vec<T> {
    let mut padded = power_coeffs;
    padded.resize(r + 1, zero.clone());
    let falling = to_falling_basis(&padded, zero, scale_add);
    (0..=r)
        .map(|a| {
            let c = &falling[r - a];
            if (r - a) % 2 == 1 {
                negate(c)
            } else {
                c.clone()
            }
        })
        .collect()
}

/// The Capelli elements of `U(gl_r)` from `col-det(E + Δ)`.
pub fn capelli_c(r: usize) -> CapelliPolynomial<UeaElement> {
    let a: Vec<Vec<UeaElement>> = (1..=r)
        .map(|i| {
            (1..=r)
                .map(|j| {
                    let g = UeaElement::gen(r, i, j);
                    if i == j {
                        g.add(&UeaElement::scalar(r, delta(r, i)))
                    } else {
                        g
                    }
                })
                .collect()
        })
        .collect();
    let cz = linalg::column_det(
        &a,
        UeaElement::one(r),
        |x, y| x.add(y),
        |x| x.neg(),
        |x, y| x.mul(y),
    )
    .expect("square");
    let coeffs = capelli_coefficients(
        r,
        cz.coefficients_in(VarId::Z),
        UeaElement::zero(r),
        |acc, s, c| acc.add(&c.scale(&MultiPoly::constant(s.clone()))),
        UeaElement::neg,
    );
    CapelliPolynomial { r, coeffs }
}

/// `τ(C_a)` computed directly as a column-determinant in the Weyl algebra.
pub fn capelli_realized(tau: &UeaMatrix) -> CapelliPolynomial<WeylElement> {
    let r = tau.r;
    let coords = &tau.coords;
    let a: Vec<Vec<WeylElement>> = (1..=r)
        .map(|i| {
            (1..=r)
                .map(|j| {
                    if i == j {
                        tau.e(i, j) + &WeylElement::scalar(coords, delta(r, i))
                    } else {
                        tau.e(i, j).clone()
                    }
                })
                .collect()
        })
        .collect();
    let cz = column_det(&a).expect("entries share coordinates");
    let coeffs = capelli_coefficients(
        r,
        cz.coefficients_in(VarId::Z),
        WeylElement::zero(coords),
        |acc, s, c| acc + &c.scale_rational(s),
        |c| -c,
    );
    CapelliPolynomial { r, coeffs }
}

/// Column-determinant of a square array of operators.
pub fn column_det(a: &[Vec<WeylElement>]) -> Result<WeylElement, WeylError> {
    let Some(first) = a.first().and_then(|row| row.first()) else {
        return Err(WeylError::VariableMismatch);
    };
    let coords = first.coords().clone();
    if a.iter().flatten().any(|e| e.coords() != &coords) {
        return Err(WeylError::VariableMismatch);
    }
    Ok(linalg::column_det(a, WeylElement::one(&coords), |x, y| x + y, |x| -x, |x, y| x * y).expect("square"))
}

/// The eigenvalue polynomial in `z`: `∏ (λ_i + r - i - z)` (plain) or
/// `∏ (-λ_(r+1-i) - u + r - i - z)` (Fourier with parameter `u`).
///
/// Entries of `λ` may be symbolic; dominance is only checked between entries
/// that are both constants.
pub fn eigenvalue_poly(
    lambda: &[MultiPoly],
    r: usize,
    fourier: Option<&MultiPoly>,
) -> Result<MultiPoly, CapelliError> {
    if lambda.len() > r {
        return Err(CapelliError::NotDominant(format!(
            "{} entries for rank {r}",
            lambda.len()
        )));
    }
    let lam = |i: usize| lambda.get(i - 1).cloned().unwrap_or_else(MultiPoly::zero);
    for i in 1..r {
        if let (Some(a), Some(b)) = (lam(i).constant_value(), lam(i + 1).constant_value()) {
            if a < b {
                return Err(CapelliError::NotDominant(format!("entry {i} is {a} < {b}")));
            }
        }
    }
    let z = MultiPoly::var(VarId::Z);
    let mut p = MultiPoly::one();
    for i in 1..=r {
        let shift = MultiPoly::int((r - i) as i64);
        let factor = match fourier {
            None => &(&lam(i) + &shift) - &z,
            Some(u) => &(&(&(-&lam(r + 1 - i)) - u) + &shift) - &z,
        };
        p = &p * &factor;
    }
    Ok(p)
}

/// Coefficients `P_a` of a polynomial in `z` written as
/// `Σ_a (-1)^(r-a) P_a [z]_(r-a)`.
pub fn falling_coefficients(p: &MultiPoly, r: usize) -> Vec<MultiPoly> {
    capelli_coefficients(
        r,
        p.coefficients_in(VarId::Z),
        MultiPoly::zero(),
        |acc, s, c| acc + &c.scale(s),
        |c| -c,
    )
}

fn rebuild_from_falling(coeffs: &[MultiPoly], r: usize) -> MultiPoly {
    coeffs.iter().enumerate().fold(MultiPoly::zero(), |acc, (a, c)| {
        let sign = if (r - a) % 2 == 1 { -1 } else { 1 };
        &acc + &(&falling_factorial(VarId::Z, (r - a) as u32) * &c.scale(&rat(sign)))
    })
}

/// The symbolic parameter used when `u` is left free.
pub fn symbolic_u() -> MultiPoly {
    MultiPoly::var(VarId::named("u"))
}

fn s_var() -> MultiPoly {
    MultiPoly::var(VarId::S)
}

fn compare_coefficients(rep: &mut Report, prefix: &str, lhs: &MultiPoly, rhs: &MultiPoly, r: usize) {
    let a = falling_coefficients(lhs, r);
    let b = falling_coefficients(rhs, r);
    for (k, (x, y)) in a.iter().zip(&b).enumerate() {
        rep.check(format!("{prefix}-a{k}"), x == y, || format!("{x} != {y}"));
    }
    rep.check(
        format!("{prefix}-basis-roundtrip"),
        rebuild_from_falling(&a, r) == *lhs,
        || "falling basis round trip failed".into(),
    );
}

/// `F_u P_a(s) = P_a(-s-u)` where `P(s, z) = ∏ (s + r - i - z)` is the
/// eigenvalue polynomial of `λ = (s, …, s)`.
pub fn verify_lemma_fsr(r: usize, u: &MultiPoly) -> Report {
    let lambda = vec![s_var(); r];
    let p = eigenvalue_poly(&lambda, r, None).expect("symbolic weight");
    let fp = eigenvalue_poly(&lambda, r, Some(u)).expect("symbolic weight");
    let shifted = p.subst(&BTreeMap::from([(VarId::S, &(-&s_var()) - u)]));
    let mut rep = Report::new();
    rep.check("polynomial", fp == shifted, || (&fp - &shifted).to_string());
    compare_coefficients(&mut rep, "coefficient", &fp, &shifted, r);
    rep
}

/// `F_(r-1) Q_a(s) = Q_a(-s-r)` for `λ = (s, …, s, 0)`.
pub fn verify_lemma_fsr1(r: usize) -> Report {
    let mut lambda = vec![s_var(); r.saturating_sub(1)];
    lambda.push(MultiPoly::zero());
    lambda.truncate(r);
    let u = MultiPoly::int(r as i64 - 1);
    let q = eigenvalue_poly(&lambda, r, None).expect("symbolic weight");
    let fq = eigenvalue_poly(&lambda, r, Some(&u)).expect("symbolic weight");
    let shifted = q.subst(&BTreeMap::from([(
        VarId::S,
        &(-&s_var()) - &MultiPoly::int(r as i64),
    )]));
    let mut rep = Report::new();
    rep.check("polynomial", fq == shifted, || (&fq - &shifted).to_string());
    compare_coefficients(&mut rep, "coefficient", &fq, &shifted, r);
    rep
}

/// `τ(C_a) • v_λ = P_a(λ) v_λ` for every `a`, with `P_a` read off the
/// eigenvalue polynomial.
pub fn verify_eigenvalue_on_hwv(
    space: Space,
    lambda: &Partition,
    capelli: &CapelliPolynomial<WeylElement>,
) -> Result<Report, CapelliError> {
    let v = genmat::highest_weight_vector(space, lambda)?;
    let r = space.rank();
    let w: Vec<MultiPoly> = genmat::weight_of(space, lambda)
        .into_iter()
        .map(MultiPoly::int)
        .collect();
    let p = falling_coefficients(&eigenvalue_poly(&w, r, None)?, r);
    let mut rep = Report::new();
    for (a, (op, pa)) in capelli.coeffs.iter().zip(&p).enumerate() {
        let got = op.apply(&v);
        let want = &v * pa;
        rep.check(format!("{lambda}-C{a}"), got == want, || {
            format!(
                "eigenvalue {pa}, got {}",
                got.scalar_multiple_of(&v)
                    .map_or("non-multiple".into(), |c| c.to_string())
            )
        });
    }
    Ok(rep)
}

/// `[τ(C_a), τ(E_ij)] = 0` for all `a, i, j`.
pub fn verify_centrality(tau: &UeaMatrix, capelli: &CapelliPolynomial<WeylElement>) -> Report {
    let mut rep = Report::new();
    for (a, c) in capelli.coeffs.iter().enumerate() {
        let mut ok = true;
        let mut witness = String::new();
        'outer: for i in 1..=tau.r {
            for j in 1..=tau.r {
                let k = c.commutator(tau.e(i, j)).expect("same coordinates");
                if !k.is_zero() {
                    ok = false;
                    witness = format!("[C{a}, E{i}{j}] = {k}");
                    break 'outer;
                }
            }
        }
        rep.check(format!("central-C{a}"), ok, || witness);
    }
    rep
}

/// The Fourier parameter matching polarization on `space`: `m` for
/// `m × n` matrices, `2n` for skew matrices of size `2n+1`.
pub fn fourier_parameter(space: Space) -> i64 {
    match space {
        Space::Matrix { m, .. } => m as i64,
        Space::Skew { n } => 2 * n as i64,
    }
}

/// `F(τ(P)) = τ(F_u(P))` for `P` among the generators and the Capelli
/// elements `C_1, …, C_max_a`.
pub fn verify_fourier_square(tau: &UeaMatrix, max_a: usize) -> Report {
    let r = tau.r;
    let u = MultiPoly::int(fourier_parameter(tau.space));
    let mut rep = Report::new();
    for i in 1..=r {
        for j in 1..=r {
            let g = UeaElement::gen(r, i, j);
            let lhs = g.realize(tau).fourier();
            let rhs = g.fourier_u(&u).realize(tau);
            rep.check(format!("E{i}{j}"), lhs == rhs, || (&lhs - &rhs).to_string());
        }
    }
    let caps = capelli_c(r);
    for (a, c) in caps.coeffs.iter().enumerate().skip(1).take(max_a) {
        let lhs = c.realize(tau).fourier();
        let rhs = c.fourier_u(&u).realize(tau);
        rep.check(format!("C{a}"), lhs == rhs, || (&lhs - &rhs).to_string());
    }
    rep
}

/// For rank 2: `C_1 = E11 + E22` and `C_2 = (E11 + 1) E22 - E21 E12`, both
/// abstractly and after realization, plus agreement of the two ways of
/// computing `τ(C_a)`.
pub fn verify_capelli_display(tau: &UeaMatrix) -> Report {
    let mut rep = Report::new();
    if tau.r != 2 {
        rep.fail("rank", format!("display is for rank 2, got {}", tau.r));
        return rep;
    }
    let e = |i, j| UeaElement::gen(2, i, j);
    let c1 = e(1, 1).add(&e(2, 2));
    let c2 = e(1, 1)
        .add(&UeaElement::one(2))
        .mul(&e(2, 2))
        .sub(&e(2, 1).mul(&e(1, 2)));
    let abs = capelli_c(2);
    rep.check("abstract-C0", abs.coeffs[0] == UeaElement::one(2), || {
        abs.coeffs[0].to_string()
    });
    rep.check("abstract-C1", abs.coeffs[1] == c1, || abs.coeffs[1].to_string());
    rep.check("abstract-C2", abs.coeffs[2] == c2, || abs.coeffs[2].to_string());
    let real = capelli_realized(tau);
    for (a, want) in [UeaElement::one(2), c1, c2].iter().enumerate() {
        let w = want.realize(tau);
        rep.check(format!("realized-C{a}"), real.coeffs[a] == w, || {
            (&real.coeffs[a] - &w).to_string()
        });
    }
    rep
}

/// `τ(C_a)` realized word by word agrees with the Weyl column-determinant.
pub fn verify_realization_routes(tau: &UeaMatrix) -> Report {
    let abs = capelli_c(tau.r);
    let real = capelli_realized(tau);
    let mut rep = Report::new();
    for (a, (c, w)) in abs.coeffs.iter().zip(&real.coeffs).enumerate() {
        let v = c.realize(tau);
        rep.check(format!("route-C{a}"), &v == w, || (&v - w).to_string());
    }
    rep
}

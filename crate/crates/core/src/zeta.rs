//! Topological zeta functions from resolution data, the product test
//! `b(s) · Z(s) ∈ ℚ[χ][s]`, and the chart identity for the first blow-up of
//! the Pfaffian ideals.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{frac, rat, FactoredPolynomial, Monomial, MultiPoly, Rational, RationalFunction, VarId};
use crate::genmat::{index_subsets, pfaffian_of};
use crate::linalg;
use crate::report::Report;
use crate::weyl::{skew_entry, Space};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("component {0} has a = 0")]
    ZeroMultiplicity(usize),
    #[error("duplicate component label {0}")]
    DuplicateLabel(usize),
    #[error("at most 64 components are supported, got {0}")]
    TooManyComponents(usize),
    #[error("bad chi key {0:?}")]
    BadChiKey(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<usize>,
    pub a: u32,
    pub k: u32,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChiMode {
    #[default]
    #[serde(rename = "symbolic")]
    Symbolic,
}

/// Euler characteristics: all symbolic, or integer overrides keyed by
/// comma-separated component positions (`""` is the empty stratum).
/// Positions without an override stay symbolic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ChiSpec {
    Mode(ChiMode),
    Values(BTreeMap<String, i64>),
}

impl Default for ChiSpec {
    fn default() -> Self {
        ChiSpec::Mode(ChiMode::Symbolic)
    }
}

/// Numerical data `(a_j, k_j)` of a log resolution: `E = Σ a_j E_j`,
/// `K = Σ k_j E_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionData {
    pub components: Vec<Component>,
    #[serde(default)]
    pub chi: ChiSpec,
}

impl ResolutionData {
    pub fn new(pairs: impl IntoIterator<Item = (u32, u32)>) -> ResolutionData {
        ResolutionData {
            components: pairs
                .into_iter()
                .map(|(a, k)| Component { label: None, a, k })
                .collect(),
            chi: ChiSpec::default(),
        }
    }

    pub fn validate(&self) -> Result<(), ZetaError> {
        if self.components.len() > 64 {
            return Err(ZetaError::TooManyComponents(self.components.len()));
        }
        let mut seen = BTreeSet::new();
        for (pos, c) in self.components.iter().enumerate() {
            if c.a == 0 {
                return Err(ZetaError::ZeroMultiplicity(pos));
            }
            let label = c.label.unwrap_or(pos);
            if !seen.insert(label) {
                return Err(ZetaError::DuplicateLabel(label));
            }
        }
        if let ChiSpec::Values(map) = &self.chi {
            for key in map.keys() {
                parse_chi_key(key, self.components.len())?;
            }
        }
        Ok(())
    }

    /// The candidate poles `-(k_j + 1)/a_j`, distinct and increasing.
    pub fn poles(&self) -> Vec<Rational> {
        let set: BTreeSet<Rational> = self
            .components
            .iter()
            .map(|c| frac(-(c.k as i64 + 1), c.a as i64))
            .collect();
        set.into_iter().collect()
    }

    fn chi_value(&self, subset: &[usize]) -> MultiPoly {
        if let ChiSpec::Values(map) = &self.chi {
            for (key, v) in map {
                if parse_chi_key(key, self.components.len()).ok().as_deref() == Some(subset) {
                    return MultiPoly::int(*v);
                }
            }
        }
        MultiPoly::var(VarId::chi(subset))
    }
}

fn parse_chi_key(key: &str, len: usize) -> Result<Vec<usize>, ZetaError> {
    if key.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out: Vec<usize> = key
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| ZetaError::BadChiKey(key.into()))?;
    out.sort_unstable();
    out.dedup();
    if out.iter().any(|&i| i >= len) {
        return Err(ZetaError::BadChiKey(key.into()));
    }
    Ok(out)
}

/// The resolution data for maximal minors (`a_i = n-i`,
/// `k_i + 1 = (m-i)(n-i)`) or sub-maximal Pfaffians (`a_i = n-i`,
/// `k_i + 1 = 2(n-i)^2 + (n-i)`), `i = 0..n-1`.
pub fn resolution_for(space: Space) -> ResolutionData {
    let pairs: Vec<(u32, u32)> = match space {
        Space::Matrix { m, n } => (0..n)
            .map(|i| ((n - i) as u32, ((m - i) * (n - i) - 1) as u32))
            .collect(),
        Space::Skew { n } => (0..n)
            .map(|i| {
                let j = n - i;
                (j as u32, (2 * j * j + j - 1) as u32)
            })
            .collect(),
    };
    ResolutionData::new(pairs)
}

/// `Z(s) = Σ_{I ⊆ J} χ_I ∏_{i ∈ I} 1/(a_i s + k_i + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaFunction {
    pub value: RationalFunction,
}

impl fmt::Display for ZetaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

fn linear_factor(c: &Component) -> MultiPoly {
    &MultiPoly::var(VarId::S).scale(&rat(c.a as i64)) + &MultiPoly::int(c.k as i64 + 1)
}

pub fn zeta_of(data: &ResolutionData) -> Result<ZetaFunction, ZetaError> {
    data.validate()?;
    let len = data.components.len();
    let factors: Vec<MultiPoly> = data.components.iter().map(linear_factor).collect();
    let denominator = factors.iter().fold(MultiPoly::one(), |acc, f| &acc * f);
    // Over the common denominator, subset I contributes χ_I ∏_{j ∉ I} factor_j.
    let mut numerator = MultiPoly::zero();
    for mask in 0u64..(1u64 << len) {
        let subset: Vec<usize> = (0..len).filter(|&i| mask & (1 << i) != 0).collect();
        let rest = (0..len)
            .filter(|&i| mask & (1 << i) == 0)
            .fold(MultiPoly::one(), |acc, i| &acc * &factors[i]);
        numerator += &(&data.chi_value(&subset) * &rest);
    }
    Ok(ZetaFunction {
        value: RationalFunction::new(VarId::S, numerator, denominator),
    })
}

pub fn pole_set(data: &ResolutionData) -> Vec<Rational> {
    data.poles()
}

/// `(q*s + p)` for the root `-p/q`, with integer `p, q`.
fn integral_factor(root: &Rational) -> String {
    let q = root.denom().clone();
    let p = -root.numer().clone();
    let lead = if q.is_one() {
        "s".to_string()
    } else {
        format!("{q}*s")
    };
    if p.is_zero() {
        lead
    } else if p.is_negative() {
        format!("({lead} - {})", -p)
    } else {
        format!("({lead} + {p})")
    }
}

/// Checks that `b · Z` has no denominator in `s` and that every candidate
/// pole is a root of `b`.
pub fn smc_check(b: &FactoredPolynomial, data: &ResolutionData) -> Result<Report, ZetaError> {
    let z = zeta_of(data)?;
    let product = z.value.mul_poly(&b.expand().to_multipoly());
    let mut rep = Report::new();
    rep.check(
        "b*Z-polynomial",
        product.is_polynomial_in_var(),
        || match product.denominator_factored() {
            Some(f) => f
                .roots()
                .iter()
                .map(integral_factor)
                .collect::<Vec<_>>()
                .join("*"),
            None => product.denominator().to_string(),
        },
    );
    for pole in data.poles() {
        rep.check(format!("pole {pole}"), b.multiplicity(&pole) > 0, || {
            integral_factor(&pole)
        });
    }
    Ok(rep)
}

/// Chart identities for the first blow-up of the Pfaffian ideals of a
/// `(2n+1) × (2n+1)` skew matrix, on the chart `x_ij = t0 u_ij`, `u12 = 1`.
///
/// With `M_ij = Pf_{1,2,i+2,j+2}(u)`, for each `p` with `p + 1 <= n`:
/// every `2(p+1)`-Pfaffian of `x` pulls back to `t0^(p+1)` times an explicit
/// `ℚ[u]`-combination of the `2p`-Pfaffians of `M` (found by exact linear
/// algebra), and conversely each `2p`-Pfaffian of `M` is the pullback of
/// `Pf_{1,2,A+2}` divided by `t0^(p+1)`.
pub fn verify_pfaffian_blowup(n: usize) -> Report {
    let size = 2 * n + 1;
    let t0 = MultiPoly::var(VarId::T0);
    let pullback: BTreeMap<VarId, MultiPoly> = (1..=size)
        .flat_map(|i| ((i + 1)..=size).map(move |j| (i, j)))
        .map(|(i, j)| {
            let image = if (i, j) == (1, 2) {
                t0.clone()
            } else {
                &t0 * &MultiPoly::var(VarId::u(i, j))
            };
            (VarId::x(i, j), image)
        })
        .collect();
    let u = |i: usize, j: usize| -> MultiPoly {
        if (i, j) == (1, 2) {
            MultiPoly::one()
        } else if (i, j) == (2, 1) {
            -&MultiPoly::one()
        } else {
            skew_entry(VarId::u, i, j)
        }
    };
    let m_entry = |i: usize, j: usize| pfaffian_of(u, &[1, 2, i + 2, j + 2]);
    let m_skew = |i: usize, j: usize| -> MultiPoly {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => m_entry(i, j),
            std::cmp::Ordering::Equal => MultiPoly::zero(),
            std::cmp::Ordering::Greater => -&m_entry(j, i),
        }
    };
    let x = |i: usize, j: usize| skew_entry(VarId::x, i, j);
    let chart_vars: Vec<VarId> = (1..=size)
        .flat_map(|i| ((i + 1)..=size).map(move |j| (i, j)))
        .filter(|&p| p != (1, 2))
        .map(|(i, j)| VarId::u(i, j))
        .collect();

    let mut rep = Report::new();
    for p in 0..n {
        let generators: Vec<MultiPoly> = index_subsets(2 * n - 1, 2 * p)
            .iter()
            .map(|a| pfaffian_of(m_skew, a))
            .collect();
        for s in index_subsets(size, 2 * p + 2) {
            let pf_x = pfaffian_of(x, &s);
            let pulled = pf_x.subst(&pullback);
            let factor = t0.pow(p as u32 + 1);
            let reduced = pfaffian_of(u, &s);
            let name = format!("p{p}/Pf{s:?}");
            rep.check(format!("{name}/pullback"), pulled == &factor * &reduced, || {
                "pullback is not t0^(p+1) times the chart Pfaffian".into()
            });
            let ok = in_ideal(&reduced, &generators, &chart_vars, p as u32 + 1);
            rep.check(format!("{name}/membership"), ok, || reduced.to_string());
        }
        for a in index_subsets(2 * n - 1, 2 * p) {
            let idx: Vec<usize> = [1, 2].into_iter().chain(a.iter().map(|i| i + 2)).collect();
            let lhs = pfaffian_of(u, &idx);
            let rhs = pfaffian_of(m_skew, &a);
            rep.check(format!("p{p}/reverse{a:?}"), lhs == rhs, || {
                (&lhs - &rhs).to_string()
            });
        }
    }
    rep
}

/// All monomials in `vars` of degree at most `d`.
fn monomials_up_to(vars: &[VarId], d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut layer = vec![(Monomial::one(), 0usize)];
    for _ in 0..d {
        let mut next = Vec::new();
        for (m, start) in &layer {
            for (k, &v) in vars.iter().enumerate().skip(*start) {
                next.push((m.mul(&Monomial::var(v)), k));
            }
        }
        out.extend(next.iter().map(|(m, _)| m.clone()));
        layer = next;
    }
    out
}

/// Whether `target = Σ q_g g` with every `q_g` of degree at most `deg`.
fn in_ideal(target: &MultiPoly, generators: &[MultiPoly], vars: &[VarId], deg: u32) -> bool {
    if target.is_zero() {
        return true;
    }
    if generators.is_empty() {
        return false;
    }
    let multipliers = monomials_up_to(vars, deg);
    let columns: Vec<MultiPoly> = generators
        .iter()
        .flat_map(|g| {
            multipliers
                .iter()
                .map(move |m| g.mul_monomial(m, &Rational::one()))
        })
        .collect();
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    for poly in columns.iter().chain(std::iter::once(target)) {
        for (m, _) in poly.terms() {
            let next = rows.len();
            rows.entry(m.clone()).or_insert(next);
        }
    }
    let mut a = vec![vec![Rational::zero(); columns.len()]; rows.len()];
    for (j, poly) in columns.iter().enumerate() {
        for (m, c) in poly.terms() {
            a[rows[m]][j] = c.clone();
        }
    }
    let mut b = vec![Rational::zero(); rows.len()];
    for (m, c) in target.terms() {
        b[rows[m]] = c.clone();
    }
    linalg::solve(&a, &b).is_some()
}

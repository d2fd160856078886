use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Rational, UniPoly, VarId};

/// A univariate polynomial written as `lead · ∏ (s - root)^mult`.
///
/// Factors are kept sorted by decreasing root, so `(s+2)(s+3)` lists `-2`
/// before `-3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredPolynomial {
    var: VarId,
    lead: Rational,
    factors: Vec<(Rational, u32)>,
}

impl FactoredPolynomial {
    pub fn from_roots(var: VarId, lead: Rational, roots: impl IntoIterator<Item = Rational>) -> Self {
        let mut all: Vec<Rational> = roots.into_iter().collect();
        all.sort_by(|a, b| b.cmp(a));
        let mut factors: Vec<(Rational, u32)> = Vec::new();
        for r in all {
            match factors.last_mut() {
                Some((last, m)) if *last == r => *m += 1,
                _ => factors.push((r, 1)),
            }
        }
        FactoredPolynomial { var, lead, factors }
    }

    /// Monic product of `(s - root)` over the given roots.
    pub fn monic(var: VarId, roots: impl IntoIterator<Item = Rational>) -> Self {
        FactoredPolynomial::from_roots(var, Rational::one(), roots)
    }

    pub fn var(&self) -> VarId {
        self.var
    }

    pub fn lead(&self) -> &Rational {
        &self.lead
    }

    pub fn factors(&self) -> &[(Rational, u32)] {
        &self.factors
    }

    /// Roots with multiplicity, decreasing.
    pub fn roots(&self) -> Vec<Rational> {
        self.factors
            .iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r.clone(), *m as usize))
            .collect()
    }

    pub fn multiplicity(&self, root: &Rational) -> u32 {
        self.factors
            .iter()
            .find(|(r, _)| r == root)
            .map_or(0, |(_, m)| *m)
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    pub fn expand(&self) -> UniPoly {
        UniPoly::from_roots(self.var, self.roots().iter()).scale(&self.lead)
    }

    /// The polynomial `p(s + c)`: every root moves by `-c`.
    pub fn shift(&self, c: &Rational) -> FactoredPolynomial {
        FactoredPolynomial::from_roots(
            self.var,
            self.lead.clone(),
            self.roots().into_iter().map(|r| r - c),
        )
    }

    /// Whether `self` divides `other` (both nonzero).
    pub fn divides(&self, other: &FactoredPolynomial) -> bool {
        self.factors.iter().all(|(r, m)| other.multiplicity(r) >= *m)
    }

    pub fn to_json(&self) -> FactoredJson {
        FactoredJson {
            lead: self.lead.to_string(),
            factors: self
                .factors
                .iter()
                .map(|(r, m)| FactorJson {
                    root: r.to_string(),
                    mult: *m,
                })
                .collect(),
        }
    }
}

/// Serialized form: `{"lead": "1", "factors": [{"root": "-2", "mult": 1}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredJson {
    pub lead: String,
    pub factors: Vec<FactorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub root: String,
    pub mult: u32,
}

impl FactoredJson {
    pub fn parse(&self, var: VarId) -> Result<FactoredPolynomial, String> {
        let lead: Rational = self.lead.parse().map_err(|e| format!("bad lead: {e:?}"))?;
        if lead.is_zero() {
            return Err("lead must be nonzero".into());
        }
        let mut roots = Vec::new();
        for f in &self.factors {
            let r: Rational = f.root.parse().map_err(|e| format!("bad root: {e:?}"))?;
            roots.extend(std::iter::repeat_n(r, f.mult as usize));
        }
        Ok(FactoredPolynomial::from_roots(var, lead, roots))
    }
}

impl fmt::Display for FactoredPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bare = !self.lead.is_one();
        if bare || self.factors.is_empty() {
            write!(f, "{}", self.lead)?;
        }
        for (k, (r, m)) in self.factors.iter().enumerate() {
            if k > 0 || bare {
                f.write_str("*")?;
            }
            if r.is_zero() {
                write!(f, "{}", self.var)?;
            } else if r.is_negative() {
                write!(f, "({} + {})", self.var, -r)?;
            } else {
                write!(f, "({} - {})", self.var, r)?;
            }
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

//! Generic matrices and skew-symmetric matrices: minors, Pfaffians,
//! polarization operators, highest-weight vectors, representation dimensions,
//! Plücker coordinates and the localization identities.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{Monomial, MultiPoly, VarId};
use crate::linalg;
use crate::report::Report;
use crate::weyl::{skew_entry, Coords, Space, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenmatError {
    #[error("bad index set: {0}")]
    BadIndexSet(String),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("operation not defined on {0}")]
    WrongSpace(Space),
}

/// Determinant of a square array of commuting polynomials.
pub fn poly_det(a: &[Vec<MultiPoly>]) -> MultiPoly {
    linalg::column_det(a, MultiPoly::one(), |x, y| x + y, |x| -x, |x, y| x * y)
        .unwrap_or_else(MultiPoly::zero)
}

/// Pfaffian of the skew matrix restricted to `indices` (kept in the given
/// order); `entry(a, b)` is consulted only for positions `a < b`.
pub fn pfaffian_of(entry: impl Fn(usize, usize) -> MultiPoly, indices: &[usize]) -> MultiPoly {
    linalg::pfaffian(
        indices.len(),
        |a, b| entry(indices[a], indices[b]),
        MultiPoly::one(),
        MultiPoly::zero(),
        |x, y| x + y,
        |x| -x,
        |x, y| x * y,
    )
}

/// Minor with the given rows and columns of the matrix `entry`.
pub fn minor_of(entry: impl Fn(usize, usize) -> MultiPoly, rows: &[usize], cols: &[usize]) -> MultiPoly {
    let a: Vec<Vec<MultiPoly>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| entry(i, j)).collect())
        .collect();
    poly_det(&a)
}

fn check_index_set(k: &[usize], size: usize, bound: usize) -> Result<(), GenmatError> {
    let sorted = k.windows(2).all(|w| w[0] < w[1]);
    if k.len() != size || !sorted || k.iter().any(|&i| i == 0 || i > bound) {
        return Err(GenmatError::BadIndexSet(format!(
            "{k:?} (need {size} sorted indices in 1..={bound})"
        )));
    }
    Ok(())
}

/// The maximal minor `d_K` of a generic `m × n` matrix.
pub fn minor(space: Space, k: &[usize]) -> Result<MultiPoly, GenmatError> {
    let Space::Matrix { m, n } = space else {
        return Err(GenmatError::WrongSpace(space));
    };
    check_index_set(k, n, m)?;
    let cols: Vec<usize> = (1..=n).collect();
    Ok(minor_of(|i, j| MultiPoly::var(VarId::x(i, j)), k, &cols))
}

/// The sub-maximal Pfaffian `d_i`: delete row and column `i` of the generic
/// `(2n+1) × (2n+1)` skew matrix.
pub fn pfaffian(space: Space, i: usize) -> Result<MultiPoly, GenmatError> {
    let Space::Skew { n } = space else {
        return Err(GenmatError::WrongSpace(space));
    };
    let size = 2 * n + 1;
    if i == 0 || i > size {
        return Err(GenmatError::BadIndexSet(format!("{i} not in 1..={size}")));
    }
    let keep: Vec<usize> = (1..=size).filter(|&j| j != i).collect();
    Ok(pfaffian_of(|a, b| skew_entry(VarId::x, a, b), &keep))
}

/// `p* = p(∂)`.
pub fn star(coords: &Coords, p: &MultiPoly) -> WeylElement {
    WeylElement::from_poly_in_partials(coords, p)
}

/// The polarization operator `E_ij`.
///
/// On matrices this is `Σ_k x[k,i] ∂[k,j]`, moving column `j` to column `i`.
/// On skew matrices it is the derivation with `E_ij(x[a,b]) = δ_ja x[i,b] +
/// δ_jb x[a,i]`, using `x[b,a] = -x[a,b]`.
pub fn polarization(space: Space, i: usize, j: usize) -> Result<WeylElement, GenmatError> {
    let r = space.rank();
    if i == 0 || j == 0 || i > r || j > r {
        return Err(GenmatError::BadIndexSet(format!("({i},{j}) not in 1..={r}")));
    }
    let coords = space.coords();
    let mut out = WeylElement::zero(&coords);
    match space {
        Space::Matrix { m, .. } => {
            for k in 1..=m {
                out = &out
                    + &WeylElement::from_parts(
                        &coords,
                        Monomial::var(VarId::x(k, i)),
                        Monomial::var(VarId::x(k, j)),
                        MultiPoly::one(),
                    );
            }
        }
        Space::Skew { .. } => {
            for v in space.vars() {
                let VarId::X(a, b) = v else { unreachable!() };
                let (a, b) = (a as usize, b as usize);
                let mut image = MultiPoly::zero();
                if a == j {
                    image += &space.entry(i, b);
                }
                if b == j {
                    image += &space.entry(a, i);
                }
                if !image.is_zero() {
                    let d = WeylElement::d(&coords, v);
                    out = &out + &(&WeylElement::from_poly(&coords, &image) * &d);
                }
            }
        }
    }
    Ok(out)
}

/// A partition: weakly decreasing positive parts (trailing zeros dropped).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Partition, GenmatError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(GenmatError::BadPartition(format!("{parts:?} is not decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Each part repeated twice.
    pub fn doubled(&self) -> Partition {
        Partition(self.0.iter().flat_map(|&p| [p, p]).collect())
    }

    /// All partitions of `d` with at most `max_len` parts, in lexicographically
    /// decreasing order.
    pub fn all(d: u32, max_len: usize) -> Vec<Partition> {
        fn rec(left: u32, cap: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if slots == 0 {
                return;
            }
            for p in (1..=cap.min(left)).rev() {
                cur.push(p);
                rec(left - p, p, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, d, max_len, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions with at most `max_len` parts and size at most `d`.
    pub fn up_to(d: u32, max_len: usize) -> Vec<Partition> {
        (0..=d).flat_map(|k| Partition::all(k, max_len)).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The weight of the highest-weight vector for `λ` as a vector of length
/// `space.rank()`: `λ` itself on matrices, `λ` with doubled parts on skew
/// matrices.
pub fn weight_of(space: Space, lambda: &Partition) -> Vec<i64> {
    let w = match space {
        Space::Matrix { .. } => lambda.clone(),
        Space::Skew { .. } => lambda.doubled(),
    };
    (0..space.rank()).map(|i| w.part(i) as i64).collect()
}

/// Highest-weight vector of weight `λ` (resp. `λ` doubled): a product of
/// leading principal minors, resp. leading principal Pfaffians.
pub fn highest_weight_vector(space: Space, lambda: &Partition) -> Result<MultiPoly, GenmatError> {
    let n = space.n();
    if lambda.len() > n {
        return Err(GenmatError::BadPartition(format!(
            "{lambda} has more than {n} parts"
        )));
    }
    let mut v = MultiPoly::one();
    for i in 1..=lambda.len() {
        let e = lambda.part(i - 1) - lambda.part(i);
        if e == 0 {
            continue;
        }
        let idx: Vec<usize> = match space {
            Space::Matrix { .. } => (1..=i).collect(),
            Space::Skew { .. } => (1..=2 * i).collect(),
        };
        let block = match space {
            Space::Matrix { .. } => minor_of(|a, b| MultiPoly::var(VarId::x(a, b)), &idx, &idx),
            Space::Skew { .. } => pfaffian_of(|a, b| skew_entry(VarId::x, a, b), &idx),
        };
        v = &v * &block.pow(e);
    }
    Ok(v)
}

/// Checks `E_ii • v = w_i v` and `E_ij • v = 0` for `i < j`.
pub fn verify_highest_weight(space: Space, lambda: &Partition) -> Result<Report, GenmatError> {
    let v = highest_weight_vector(space, lambda)?;
    let w = weight_of(space, lambda);
    let r = space.rank();
    let mut rep = Report::new();
    for i in 1..=r {
        for j in i..=r {
            let e = polarization(space, i, j)?;
            let got = e.apply(&v);
            let want = if i == j {
                v.scale(&crate::exact::rat(w[i - 1]))
            } else {
                MultiPoly::zero()
            };
            rep.check(format!("E{i}{j}"), got == want, || got.to_string());
        }
    }
    Ok(rep)
}

/// `dim S_λ ℂ^N` by the Weyl dimension formula.
pub fn schur_dim(lambda: &Partition, big_n: usize) -> Result<BigUint, GenmatError> {
    if lambda.len() > big_n {
        return Err(GenmatError::BadPartition(format!(
            "{lambda} has more than {big_n} parts"
        )));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..big_n {
        for j in (i + 1)..big_n {
            let diff = lambda.part(i) as u64 - lambda.part(j) as u64;
            num *= diff + (j - i) as u64;
            den *= (j - i) as u64;
        }
    }
    Ok(num / den)
}

fn binomial_big(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Both sides of the Cauchy formula in degree `d`: the dimension of the
/// degree-`d` part of the coordinate ring, and the sum of Schur dimensions.
pub fn cauchy_sides(space: Space, d: u32) -> (BigUint, BigUint) {
    let nvars = space.vars().len() as u64;
    let lhs = if nvars == 0 {
        if d == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        }
    } else {
        binomial_big(nvars + d as u64 - 1, d as u64)
    };
    let rhs = match space {
        Space::Matrix { m, n } => Partition::all(d, n)
            .iter()
            .map(|l| {
                let a = schur_dim(l, m).unwrap_or_default();
                let b = schur_dim(l, n).unwrap_or_default();
                a * b
            })
            .sum(),
        Space::Skew { n } => Partition::all(d, n)
            .iter()
            .map(|l| schur_dim(&l.doubled(), 2 * n + 1).unwrap_or_default())
            .sum(),
    };
    (lhs, rhs)
}

pub fn cauchy_check(space: Space, d: u32) -> Report {
    let (lhs, rhs) = cauchy_sides(space, d);
    let mut rep = Report::new();
    rep.check(format!("cauchy-d{d}"), lhs == rhs, || format!("{lhs} != {rhs}"));
    rep
}

/// Plücker coordinates: `p_0 = d_[n]` and `p(i,j)` for `i ∈ [n]`,
/// `j ∈ [m] \ [n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Plucker {
    P0,
    P(usize, usize),
}

/// The row set of a Plücker coordinate, sorted: `[n] \ {i} ∪ {j}`.
pub fn plucker_rows(n: usize, which: Plucker) -> Vec<usize> {
    match which {
        Plucker::P0 => (1..=n).collect(),
        Plucker::P(i, j) => {
            let mut rows: Vec<usize> = (1..=n).filter(|&a| a != i).collect();
            rows.push(j);
            rows.sort_unstable();
            rows
        }
    }
}

pub fn plucker_coordinate(space: Space, which: Plucker) -> Result<MultiPoly, GenmatError> {
    let Space::Matrix { m, n } = space else {
        return Err(GenmatError::WrongSpace(space));
    };
    if let Plucker::P(i, j) = which {
        if i == 0 || i > n || j <= n || j > m {
            return Err(GenmatError::BadIndexSet(format!(
                "p({i},{j}) needs i in 1..={n}, j in {}..={m}",
                n + 1
            )));
        }
    }
    minor(space, &plucker_rows(n, which))
}

/// Checks `p_0^(k-1) d_K = (-1)^(k(k-1)/2) det(p(i_a, j_b))` where
/// `{i_a} = [n] \ K` and `{j_b} = K \ [n]`, both increasing, `k = |{i_a}|`.
///
/// The sign comes from listing the rows of `p(i,j)` in increasing order.
/// For `k = 0` the identity reads `d_K = p_0`.
pub fn verify_plucker_relation(space: Space, k_set: &[usize]) -> Result<Report, GenmatError> {
    let Space::Matrix { m, n } = space else {
        return Err(GenmatError::WrongSpace(space));
    };
    check_index_set(k_set, n, m)?;
    let is: Vec<usize> = (1..=n).filter(|a| !k_set.contains(a)).collect();
    let js: Vec<usize> = k_set.iter().copied().filter(|&b| b > n).collect();
    let k = is.len();
    let d_k = minor(space, k_set)?;
    let p0 = plucker_coordinate(space, Plucker::P0)?;
    let mut rep = Report::new();
    let name = format!("plucker{k_set:?}");
    if k == 0 {
        rep.check(name, d_k == p0, || "d_K != p0".into());
        return Ok(rep);
    }
    let mut table = Vec::with_capacity(k);
    for &i in &is {
        let mut row = Vec::with_capacity(k);
        for &j in &js {
            row.push(plucker_coordinate(space, Plucker::P(i, j))?);
        }
        table.push(row);
    }
    let mut rhs = poly_det(&table);
    if (k * (k - 1) / 2) % 2 == 1 {
        rhs = -&rhs;
    }
    let lhs = &p0.pow(k as u32 - 1) * &d_k;
    rep.check(name, lhs == rhs, || (&lhs - &rhs).to_string());
    Ok(rep)
}

fn u_var(i: usize, j: usize) -> MultiPoly {
    MultiPoly::var(VarId::u(i, j))
}

fn subsets(set: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if set.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (pos, &first) in set.iter().enumerate() {
        for mut rest in subsets(&set[pos + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Sorted `k`-subsets of `1..=n`.
pub fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(&(1..=n).collect::<Vec<_>>(), k)
}

/// The chart identities for `m × n` matrices with `u[1,1]` inverted.
///
/// With `M[i,j] = u11 u[i+1,j+1] - u[1,j+1] u[i+1,1]`, checks that each
/// `M[i,j]` is the corner minor on rows `{1,i+1}` and columns `{1,j+1}`,
/// and the condensation identity `det M[A,B] = u11^(k-1) det u[1∪A', 1∪B']`
/// for every pair of `k`-subsets, which says that `u` has rank `r+1` exactly
/// when `M` has rank `r`.
pub fn verify_localization_matrix(m: usize, n: usize) -> Report {
    let mut rep = Report::new();
    let entry =
        |i: usize, j: usize| &(&u_var(1, 1) * &u_var(i + 1, j + 1)) - &(&u_var(1, j + 1) * &u_var(i + 1, 1));
    let u_entry = |i: usize, j: usize| u_var(i, j);
    for i in 1..m {
        for j in 1..n {
            let corner = minor_of(u_entry, &[1, i + 1], &[1, j + 1]);
            rep.check(format!("entry[{i},{j}]"), entry(i, j) == corner, || {
                (&entry(i, j) - &corner).to_string()
            });
        }
    }
    let u11 = u_var(1, 1);
    for k in 1..n {
        for a in index_subsets(m - 1, k) {
            for b in index_subsets(n - 1, k) {
                let lhs = minor_of(entry, &a, &b);
                let rows: Vec<usize> = std::iter::once(1).chain(a.iter().map(|i| i + 1)).collect();
                let cols: Vec<usize> = std::iter::once(1).chain(b.iter().map(|j| j + 1)).collect();
                let rhs = &u11.pow(k as u32 - 1) * &minor_of(u_entry, &rows, &cols);
                rep.check(format!("condensation{a:?}x{b:?}"), lhs == rhs, || {
                    (&lhs - &rhs).to_string()
                });
            }
        }
    }
    rep
}

/// The chart identities for `(2n+1) × (2n+1)` skew matrices with `u[1,2]`
/// inverted.
///
/// Checks `u12 M[i,j] = Pf_{1,2,i+2,j+2}(u)` entrywise, and the block
/// identity `C^t u C = u12^3 J ⊕ u12 P`, where `C = [[u12 I, X], [0, u12 I]]`
/// clears `u[1..2, 3..]` against the corner `[[0, u12], [-u12, 0]]`, `J` is
/// the standard `2 × 2` symplectic block and `P` is the matrix of the
/// Pfaffians `Pf_{1,2,i+2,j+2}`.
pub fn verify_localization_skew(n: usize) -> Report {
    let size = 2 * n + 1;
    let rest = size - 2;
    let u = |i: usize, j: usize| skew_entry(VarId::u, i, j);
    let u12 = u(1, 2);
    // u12 · M[i,j] with the fraction cleared
    let scaled_m = |i: usize, j: usize| {
        let (c, d) = (i + 2, j + 2);
        &(&(&u12 * &u(c, d)) - &(&u(1, c) * &u(2, d))) + &(&u(1, d) * &u(2, c))
    };
    let pf = |i: usize, j: usize| -> MultiPoly {
        if i == j {
            MultiPoly::zero()
        } else if i < j {
            pfaffian_of(u, &[1, 2, i + 2, j + 2])
        } else {
            -&pfaffian_of(u, &[1, 2, j + 2, i + 2])
        }
    };
    let mut rep = Report::new();
    for i in 1..=rest {
        for j in 1..=rest {
            let (a, b) = (scaled_m(i, j), pf(i, j));
            rep.check(format!("entry[{i},{j}]"), a == b, || (&a - &b).to_string());
        }
    }

    // C as a full size × size matrix; X[1,j] = u[2,j+2], X[2,j] = -u[1,j+2]
    let c = |r: usize, col: usize| -> MultiPoly {
        if r == col {
            u12.clone()
        } else if r <= 2 && col > 2 {
            if r == 1 {
                u(2, col)
            } else {
                -&u(1, col)
            }
        } else {
            MultiPoly::zero()
        }
    };
    let idx: Vec<usize> = (1..=size).collect();
    let mut uc: BTreeMap<(usize, usize), MultiPoly> = BTreeMap::new();
    for &r in &idx {
        for &col in &idx {
            let mut acc = MultiPoly::zero();
            for &k in &idx {
                acc += &(&u(r, k) * &c(k, col));
            }
            uc.insert((r, col), acc);
        }
    }
    let u12_cubed = u12.pow(3);
    for &r in &idx {
        for &col in &idx {
            let mut got = MultiPoly::zero();
            for &k in &idx {
                got += &(&c(k, r) * &uc[&(k, col)]);
            }
            let want = match (r, col) {
                (1, 2) => u12_cubed.clone(),
                (2, 1) => -&u12_cubed,
                (a, b) if a > 2 && b > 2 => &u12 * &pf(a - 2, b - 2),
                _ => MultiPoly::zero(),
            };
            rep.check(format!("block[{r},{col}]"), got == want, || {
                (&got - &want).to_string()
            });
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn x(i: usize, j: usize) -> MultiPoly {
        MultiPoly::var(VarId::x(i, j))
    }

    #[test]
    fn minors() {
        let s = Space::matrix(2, 2).unwrap();
        assert_eq!(
            minor(s, &[1, 2]).unwrap(),
            &(&x(1, 1) * &x(2, 2)) - &(&x(1, 2) * &x(2, 1))
        );
        let s = Space::matrix(3, 2).unwrap();
        assert_eq!(
            minor(s, &[1, 3]).unwrap(),
            &(&x(1, 1) * &x(3, 2)) - &(&x(1, 2) * &x(3, 1))
        );
        assert!(minor(s, &[3, 1]).is_err());
        assert!(minor(s, &[1, 4]).is_err());
        let d3 = minor(Space::matrix(3, 3).unwrap(), &[1, 2, 3]).unwrap();
        assert_eq!(d3.len(), 6);
        let diag = Monomial::from_pairs([(VarId::x(1, 1), 1), (VarId::x(2, 2), 1), (VarId::x(3, 3), 1)]);
        assert_eq!(d3.coefficient(&diag), rat(1));
    }

    #[test]
    fn pfaffians() {
        let s3 = Space::skew(1).unwrap();
        assert_eq!(pfaffian(s3, 1).unwrap(), x(2, 3));
        assert_eq!(pfaffian(s3, 3).unwrap(), x(1, 2));
        let s5 = Space::skew(2).unwrap();
        let want = &(&(&x(1, 2) * &x(3, 4)) - &(&x(1, 3) * &x(2, 4))) + &(&x(1, 4) * &x(2, 3));
        assert_eq!(pfaffian(s5, 5).unwrap(), want);
        assert!(pfaffian(s5, 6).is_err());
        for i in 1..=5 {
            let p = pfaffian(s5, i).unwrap();
            assert!(p.is_homogeneous() && p.degree() == 2);
        }
    }

    #[test]
    fn pfaffian_squared_is_determinant() {
        let idx = [1, 2, 3, 4];
        let e = |a: usize, b: usize| skew_entry(VarId::x, a, b);
        let pf = pfaffian_of(e, &idx);
        assert_eq!(pf.pow(2), minor_of(e, &idx, &idx));
    }

    #[test]
    fn star_replaces_coordinates() {
        let s = Space::matrix(2, 2).unwrap();
        let c = s.coords();
        let d = star(&c, &minor(s, &[1, 2]).unwrap());
        assert_eq!(d.to_string(), "d[1,1]*d[2,2] - d[1,2]*d[2,1]");
        assert_eq!(star(&c, &MultiPoly::one()), WeylElement::one(&c));
    }

    #[test]
    fn polarization_operators() {
        let s = Space::matrix(2, 2).unwrap();
        let e12 = polarization(s, 1, 2).unwrap();
        assert_eq!(e12.to_string(), "x[1,1]*d[1,2] + x[2,1]*d[2,2]");
        let e11 = polarization(s, 1, 1).unwrap();
        let e22 = polarization(s, 2, 2).unwrap();
        assert!(e11.commutator(&e22).unwrap().is_zero());
        assert_eq!(e11.commutator(&e12).unwrap(), e12);
        let sk = Space::skew(1).unwrap();
        assert!(polarization(sk, 1, 1).unwrap().apply(&x(2, 3)).is_zero());
        assert_eq!(polarization(sk, 1, 2).unwrap().apply(&x(2, 3)), x(1, 3));
        assert!(polarization(s, 3, 1).is_err());
    }

    #[test]
    fn gl_relations_hold_for_skew_polarization() {
        let s = Space::skew(1).unwrap();
        let e = |i, j| polarization(s, i, j).unwrap();
        for i in 1..=3 {
            for j in 1..=3 {
                for k in 1..=3 {
                    for l in 1..=3 {
                        let lhs = e(i, j).commutator(&e(k, l)).unwrap();
                        let mut rhs = WeylElement::zero(&s.coords());
                        if j == k {
                            rhs = &rhs + &e(i, l);
                        }
                        if i == l {
                            rhs = &rhs - &e(k, j);
                        }
                        assert_eq!(lhs, rhs, "[E{i}{j}, E{k}{l}]");
                    }
                }
            }
        }
    }

    #[test]
    fn highest_weight_vectors() {
        let s = Space::matrix(3, 2).unwrap();
        let l = Partition::new(vec![2, 1]).unwrap();
        let v = highest_weight_vector(s, &l).unwrap();
        assert_eq!(
            v,
            &x(1, 1) * &minor(Space::matrix(2, 2).unwrap(), &[1, 2]).unwrap()
        );
        assert!(verify_highest_weight(s, &l).unwrap().passed());
        let sk = Space::skew(2).unwrap();
        let l = Partition::new(vec![1, 1]).unwrap();
        assert_eq!(highest_weight_vector(sk, &l).unwrap(), pfaffian(sk, 5).unwrap());
        assert_eq!(weight_of(sk, &l), vec![1, 1, 1, 1, 0]);
        assert!(verify_highest_weight(sk, &l).unwrap().passed());
        assert!(highest_weight_vector(s, &Partition::new(vec![1, 1, 1]).unwrap()).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    /// Semistandard tableaux of shape `λ` with entries in `1..=n`, by brute force.
    fn ssyt_count(lambda: &Partition, n: u32) -> u64 {
        let shape: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
        let cells: Vec<(usize, usize)> = shape
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
            .collect();
        fn fill(pos: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<u32>>, n: u32) -> u64 {
            if pos == cells.len() {
                return 1;
            }
            let (r, c) = cells[pos];
            let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
            let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
            let mut total = 0;
            for v in lo_row.max(lo_col)..=n {
                grid[r][c] = v;
                total += fill(pos + 1, cells, grid, n);
            }
            grid[r][c] = 0;
            total
        }
        let mut grid: Vec<Vec<u32>> = shape.iter().map(|&l| vec![0; l]).collect();
        fill(0, &cells, &mut grid, n)
    }

    #[test]
    fn schur_dims_match_tableaux() {
        let d = |p: Vec<u32>, n| schur_dim(&Partition::new(p).unwrap(), n).unwrap();
        assert_eq!(d(vec![1, 1], 3), BigUint::from(3u32));
        assert_eq!(d(vec![2], 2), BigUint::from(3u32));
        assert_eq!(d(vec![2, 2], 3), BigUint::from(6u32));
        for size in 0..=6 {
            for n in 1..=5usize {
                for l in Partition::all(size, n) {
                    assert_eq!(
                        schur_dim(&l, n).unwrap(),
                        BigUint::from(ssyt_count(&l, n as u32)),
                        "{l} on C^{n}"
                    );
                }
            }
        }
        assert!(schur_dim(&Partition::new(vec![1, 1, 1]).unwrap(), 2).is_err());
    }

    #[test]
    fn cauchy_examples() {
        let (l, r) = cauchy_sides(Space::matrix(2, 2).unwrap(), 2);
        assert_eq!((l, r), (BigUint::from(10u32), BigUint::from(10u32)));
        let (l, r) = cauchy_sides(Space::skew(2).unwrap(), 2);
        assert_eq!((l, r), (BigUint::from(55u32), BigUint::from(55u32)));
        assert!(cauchy_check(Space::skew(1).unwrap(), 0).passed());
    }

    #[test]
    fn plucker() {
        let s = Space::matrix(3, 2).unwrap();
        assert_eq!(
            plucker_coordinate(s, Plucker::P(1, 3)).unwrap(),
            minor(s, &[2, 3]).unwrap()
        );
        assert_eq!(
            plucker_coordinate(s, Plucker::P(2, 3)).unwrap(),
            minor(s, &[1, 3]).unwrap()
        );
        assert!(plucker_coordinate(s, Plucker::P(1, 2)).is_err());
        let s4 = Space::matrix(4, 2).unwrap();
        for k in index_subsets(4, 2) {
            assert!(verify_plucker_relation(s4, &k).unwrap().passed(), "{k:?}");
        }
        // The three-term relation in its classical form.
        let d = |a, b| minor(s4, &[a, b]).unwrap();
        let rel = &(&(&d(1, 2) * &d(3, 4)) - &(&d(1, 3) * &d(2, 4))) + &(&d(1, 4) * &d(2, 3));
        assert!(rel.is_zero());
    }

    #[test]
    fn localization() {
        for (m, n) in [(2, 2), (3, 2), (3, 3)] {
            let r = verify_localization_matrix(m, n);
            assert!(r.passed(), "{r}");
        }
        for n in [1, 2] {
            let r = verify_localization_skew(n);
            assert!(r.passed(), "{r}");
        }
    }
}

//! Determinants, Pfaffians and linear solving over exact rings.
//!
//! The determinant and Pfaffian routines are generic over the entry type and
//! take the ring operations as closures, so the same code serves commuting
//! polynomials and noncommuting Weyl operators.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::exact::Rational;

/// Column-determinant `Σ_σ sgn(σ) a[σ(0)][0] · a[σ(1)][1] ⋯`, with the
/// factors multiplied left to right in column order.
///
/// Runs a dynamic program over the set of rows used by the first columns,
/// so it costs `O(2^r · r)` ring multiplications instead of `r!`.
pub fn column_det<T: Clone>(
    a: &[Vec<T>],
    one: T,
    add: impl Fn(&T, &T) -> T,
    neg: impl Fn(&T) -> T,
    mul: impl Fn(&T, &T) -> T,
) -> Option<T> {
    let r = a.len();
    assert!(
        a.iter().all(|row| row.len() == r),
        "column_det needs a square array"
    );
    assert!(r < 32, "column_det size");
    let mut layer: HashMap<u32, T> = HashMap::from([(0u32, one)]);
    for col in 0..r {
        let mut next: HashMap<u32, T> = HashMap::new();
        let mut keys: Vec<u32> = layer.keys().copied().collect();
        keys.sort_unstable();
        for used in keys {
            let prefix = &layer[&used];
            for (row, entries) in a.iter().enumerate() {
                if used & (1 << row) != 0 {
                    continue;
                }
                let mut term = mul(prefix, &entries[col]);
                // Rows already placed that sit below this one are inversions.
                if (used >> (row + 1)).count_ones() % 2 == 1 {
                    term = neg(&term);
                }
                let key = used | (1 << row);
                let merged = match next.remove(&key) {
                    Some(acc) => add(&acc, &term),
                    None => term,
                };
                next.insert(key, merged);
            }
        }
        layer = next;
    }
    if r == 0 {
        return layer.remove(&0);
    }
    layer.remove(&((1u32 << r) - 1))
}

/// Pfaffian of the skew matrix on `indices`, where `entry(a, b)` gives the
/// entry for `a < b` (positions in `indices`). Expansion along the first row:
/// `Pf = Σ_j (-1)^(j+1) a[0][j] Pf(without 0, j)` with 0-based `j`.
pub fn pfaffian<T: Clone>(
    size: usize,
    entry: impl Fn(usize, usize) -> T,
    one: T,
    zero: T,
    add: impl Fn(&T, &T) -> T,
    neg: impl Fn(&T) -> T,
    mul: impl Fn(&T, &T) -> T,
) -> T {
    if size % 2 == 1 {
        return zero;
    }
    let mut memo: HashMap<u64, T> = HashMap::new();
    let full = if size == 64 { u64::MAX } else { (1u64 << size) - 1 };
    pf_rec(full, &entry, &one, &zero, &add, &neg, &mul, &mut memo)
}

#[allow(clippy::too_many_arguments)]
fn pf_rec<T: Clone>(
    set: u64,
    entry: &impl Fn(usize, usize) -> T,
    one: &T,
    zero: &T,
    add: &impl Fn(&T, &T) -> T,
    neg: &impl Fn(&T) -> T,
    mul: &impl Fn(&T, &T) -> T,
    memo: &mut HashMap<u64, T>,
) -> T {
    if set == 0 {
        return one.clone();
    }
    if let Some(v) = memo.get(&set) {
        return v.clone();
    }
    let first = set.trailing_zeros() as usize;
    let rest = set & !(1 << first);
    let mut acc = zero.clone();
    let mut bits = rest;
    let mut pos = 0;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let sub = pf_rec(rest & !(1 << j), entry, one, zero, add, neg, mul, memo);
        let mut term = mul(&entry(first, j), &sub);
        if pos % 2 == 1 {
            term = neg(&term);
        }
        acc = add(&acc, &term);
        pos += 1;
    }
    memo.insert(set, acc.clone());
    acc
}

/// Solves `A y = b` over the rationals; returns one solution if the system is
/// consistent. Rows are equations, columns unknowns.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        let Some(p) = (pr..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(pr, p);
        let inv = Rational::one() / &m[pr][c];
        for v in m[pr].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[pr].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != pr && !row[c].is_zero() {
                let f = row[c].clone();
                for (dst, src) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *dst -= &f * src;
                }
            }
        }
        pivots.push(c);
        pr += 1;
        if pr == rows {
            break;
        }
    }
    if m[pr..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut y = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        y[c] = m[i][cols].clone();
    }
    Some(y)
}

//! Local multiplicity by dual-space dimension.
//!
//! After translating the zero to the origin, a functional of order `<= k` is a
//! combination of coefficient extractions `x^j -> [j]` with `|j| <= k`; it lies
//! in the dual space when it kills every `x^a * g` truncated to degree `k`. The
//! count of such functionals is `columns - rank` of the Macaulay matrix and is
//! non-decreasing in `k`; its first repeat is the local multiplicity.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{MPoly, Rational};
use crate::error::{domain, Error, Result};

/// Default bound on the differential order explored.
pub const DEFAULT_CAP: usize = 64;

/// Exponent vector `[j1, ..., jr]` of the differential `d^|j| / dx^j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiffIndex(pub Vec<u32>);

impl DiffIndex {
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// All indices in `nvars` variables with total order exactly `k`.
fn indices_of_order(nvars: usize, k: u32) -> Vec<DiffIndex> {
    fn go(v: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<DiffIndex>) {
        if v + 1 == cur.len() {
            cur[v] = left;
            out.push(DiffIndex(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[v] = e;
            go(v + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if k == 0 {
            out.push(DiffIndex(Vec::new()));
        }
        return out;
    }
    go(0, k, &mut vec![0; nvars], &mut out);
    out
}

/// `g(x + a)`.
fn translate(g: &MPoly, a: &[Rational]) -> MPoly {
    let mut out = MPoly::zero();
    for (exps, c) in g.terms(a.len()) {
        let mut t = MPoly::constant(c);
        for (v, &e) in exps.iter().enumerate() {
            if e > 0 {
                let shifted = &MPoly::var(v) + &MPoly::constant(a[v].clone());
                t = &t * &shifted.pow(e);
            }
        }
        out = &out + &t;
    }
    out
}

/// Row echelon form over the integers; rows are kept primitive.
struct Echelon {
    pivots: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    fn insert(&mut self, mut row: Vec<BigInt>) {
        for (c, p) in &self.pivots {
            if row[*c].is_zero() {
                continue;
            }
            let (pv, rv) = (p[*c].clone(), row[*c].clone());
            for (x, y) in row.iter_mut().zip(p) {
                *x = &*x * &pv - &rv * y;
            }
            make_primitive(&mut row);
        }
        if let Some(c) = row.iter().position(|x| !x.is_zero()) {
            self.pivots.push((c, row));
        }
    }
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

fn integer_row(entries: &[(usize, Rational)], ncols: usize) -> Vec<BigInt> {
    let l = entries
        .iter()
        .fold(BigInt::one(), |l, (_, r)| l.lcm(r.denom()));
    let mut row = vec![BigInt::zero(); ncols];
    for (c, r) in entries {
        row[*c] = r.numer() * (&l / r.denom());
    }
    make_primitive(&mut row);
    row
}

/// Nullity of the order-`k` Macaulay matrix of the translated generators.
fn nullity(gens: &[Vec<(Vec<u32>, Rational)>], nvars: usize, k: u32) -> usize {
    let cols: Vec<DiffIndex> = (0..=k).flat_map(|d| indices_of_order(nvars, d)).collect();
    let index: HashMap<&[u32], usize> = cols
        .iter()
        .enumerate()
        .map(|(i, j)| (j.0.as_slice(), i))
        .collect();
    let mut ech = Echelon { pivots: Vec::new() };
    for g in gens {
        let ord = g
            .iter()
            .map(|(e, _)| e.iter().sum::<u32>())
            .min()
            .unwrap_or(k + 1);
        if ord > k {
            continue;
        }
        for shift in (0..=k - ord).flat_map(|d| indices_of_order(nvars, d)) {
            let entries: Vec<(usize, Rational)> = g
                .iter()
                .filter_map(|(e, c)| {
                    let m: Vec<u32> = e.iter().zip(&shift.0).map(|(a, b)| a + b).collect();
                    index.get(m.as_slice()).map(|&i| (i, c.clone()))
                })
                .collect();
            if !entries.is_empty() {
                ech.insert(integer_row(&entries, cols.len()));
            }
        }
    }
    cols.len() - ech.pivots.len()
}

/// Dimension of the dual space of `<gens>` at the rational zero `a`.
pub fn dual_space_dim(gens: &[MPoly], a: &[Rational], cap: usize) -> Result<u64> {
    if cap == 0 {
        return domain("order cap must be positive");
    }
    let nvars = a.len();
    if gens
        .iter()
        .any(|g| g.main_var().is_some_and(|v| v >= nvars))
    {
        return domain("generator uses more variables than the point has");
    }
    let mut shifted = Vec::with_capacity(gens.len());
    for g in gens {
        let t = translate(g, a).terms(nvars);
        if t.iter()
            .any(|(e, c)| e.iter().all(|&x| x == 0) && !c.is_zero())
        {
            return domain("point is not a common zero of the generators");
        }
        shifted.push(t);
    }
    let mut prev = 1;
    for k in 1..=cap {
        let n = nullity(&shifted, nvars, k as u32);
        if n == prev {
            return Ok(n as u64);
        }
        prev = n;
    }
    Err(Error::OracleCap { cap, nullity: prev })
}

//! Real root isolation for simple chains and real solution isolation with
//! multiplicity.
//!
//! Each simple branch is isolated on its own by triangular lifting: the roots
//! of `B_k(a, y)` are isolated for every real zero `a` of the chain below. When
//! all coordinates of `a` are rational this is exact univariate isolation;
//! otherwise coefficients are enclosed by rational interval arithmetic over the
//! box of `a`, and the box is refined whenever a sign or root count cannot be
//! certified. Boxes of different branches are then refined until pairwise
//! disjoint in at least one coordinate.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{format_rational, simplest_between, MPoly, Rational, UPoly};
use crate::chains::ZeroDimChain;
use crate::error::{domain, Error, Result};
use crate::reg2sim::reg2sim;

/// Default bound on consecutive refinement rounds for one decision.
pub const DEFAULT_DEPTH_CAP: usize = 256;

/// Refinement cap, overridable by the `TRICHAIN_DEPTH_CAP` environment variable.
pub fn depth_cap() -> usize {
    std::env::var("TRICHAIN_DEPTH_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or(DEFAULT_DEPTH_CAP)
}

/// Closed rational interval; `lo == hi` marks an exact value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalQ {
    pub lo: Rational,
    pub hi: Rational,
}

impl IntervalQ {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return domain("interval lower end exceeds upper end");
        }
        Ok(IntervalQ { lo, hi })
    }

    pub fn point(r: Rational) -> Self {
        IntervalQ {
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn overlaps(&self, other: &IntervalQ) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    fn add(&self, o: &IntervalQ) -> IntervalQ {
        IntervalQ {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    fn mul(&self, o: &IntervalQ) -> IntervalQ {
        if self.is_point() {
            return o.scale(&self.lo);
        }
        if o.is_point() {
            return self.scale(&o.lo);
        }
        let ps = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        IntervalQ {
            lo: ps.iter().min().unwrap().clone(),
            hi: ps.iter().max().unwrap().clone(),
        }
    }

    fn scale(&self, c: &Rational) -> IntervalQ {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if a <= b {
            IntervalQ { lo: a, hi: b }
        } else {
            IntervalQ { lo: b, hi: a }
        }
    }

    fn abs_max(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }

    /// Sign of every element, if it is the same for all of them.
    fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }
}

impl fmt::Display for IntervalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            format_rational(&self.lo),
            format_rational(&self.hi)
        )
    }
}

/// One interval per variable, in variable order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoxQ {
    pub intervals: Vec<IntervalQ>,
}

impl BoxQ {
    pub fn contains(&self, point: &[Rational]) -> bool {
        self.intervals.len() == point.len()
            && self.intervals.iter().zip(point).all(|(i, p)| i.contains(p))
    }

    /// Disjoint in at least one coordinate.
    pub fn disjoint(&self, other: &BoxQ) -> bool {
        self.intervals
            .iter()
            .zip(&other.intervals)
            .any(|(a, b)| !a.overlaps(b))
    }

    pub fn max_width(&self) -> Rational {
        self.intervals
            .iter()
            .map(IntervalQ::width)
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for BoxQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.intervals.iter().map(IntervalQ::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// A real zero with its local multiplicity and the decomposition branch it
/// lies on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatedZero {
    pub bounds: BoxQ,
    pub multiplicity: u64,
    pub branch_index: usize,
}

/// Isolating interval plus the signs of the defining polynomial at its ends
/// (0 for an exact coordinate).
#[derive(Debug, Clone)]
struct Cell {
    iv: IntervalQ,
    s_lo: i8,
    s_hi: i8,
}

impl Cell {
    fn exact(r: Rational) -> Cell {
        Cell {
            iv: IntervalQ::point(r),
            s_lo: 0,
            s_hi: 0,
        }
    }
}

fn eval_iv(p: &MPoly, pts: &[IntervalQ]) -> IntervalQ {
    match p {
        MPoly::Const(c) => IntervalQ::point(c.clone()),
        MPoly::Rec(v, cs) => {
            let x = &pts[*v];
            let mut acc = eval_iv(cs.last().unwrap(), pts);
            for c in cs.iter().rev().skip(1) {
                acc = acc.mul(x).add(&eval_iv(c, pts));
            }
            acc
        }
    }
}

/// `(min, max)` number of sign variations over all sign choices compatible
/// with the intervals.
fn variation_range(cs: &[IntervalQ]) -> (usize, usize) {
    // state: last nonzero sign none / + / -
    const INF: usize = usize::MAX;
    let mut st = [(0usize, 0usize), (INF, 0), (INF, 0)];
    let mut reach = [true, false, false];
    for c in cs {
        let can_pos = c.hi.is_positive();
        let can_neg = c.lo.is_negative();
        let can_zero = !c.lo.is_positive() && !c.hi.is_negative();
        let mut next = [(INF, 0usize); 3];
        let mut nreach = [false; 3];
        for s in 0..3 {
            if !reach[s] {
                continue;
            }
            let (mn, mx) = st[s];
            let mut put = |t: usize, add: usize| {
                let (a, b) = &mut next[t];
                *a = (*a).min(mn + add);
                *b = (*b).max(mx + add);
                nreach[t] = true;
            };
            if can_zero {
                put(s, 0);
            }
            if can_pos {
                put(1, usize::from(s == 2));
            }
            if can_neg {
                put(2, usize::from(s == 1));
            }
        }
        st = next;
        reach = nreach;
    }
    let mut mn = INF;
    let mut mx = 0;
    for s in 0..3 {
        if reach[s] {
            mn = mn.min(st[s].0);
            mx = mx.max(st[s].1);
        }
    }
    (mn, mx)
}

/// Descartes test on `(a, b)` for the polynomial with interval coefficients
/// `cs` (increasing degree).
fn descartes_iv(cs: &[IntervalQ], a: &Rational, b: &Rational) -> (usize, usize) {
    let n = cs.len();
    let mut c = cs.to_vec();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = c[j + 1].scale(a);
            c[j] = c[j].add(&t);
        }
    }
    let s = b - a;
    let mut pw = Rational::one();
    for ci in c.iter_mut() {
        *ci = ci.scale(&pw);
        pw *= &s;
    }
    c.reverse();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = c[j + 1].clone();
            c[j] = c[j].add(&t);
        }
    }
    variation_range(&c)
}

/// Split candidates inside `(lo, hi)`, nearest to the midpoint first; `count`
/// distinct points.
fn split_points(lo: &Rational, hi: &Rational, count: usize) -> Vec<Rational> {
    let w = hi - lo;
    let denom = Rational::from_integer(BigInt::from(2 * (count as i64 + 2)));
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    (0..count)
        .map(|j| {
            let k = j.div_ceil(2) as i64;
            let off =
                Rational::from_integer(BigInt::from(if j % 2 == 1 { -k } else { k })) / &denom;
            lo + &w * (&half + off)
        })
        .collect()
}

struct Lifter<'a> {
    polys: &'a [MPoly],
    cap: usize,
}

impl Lifter<'_> {
    fn ivs(cells: &[Cell]) -> Vec<IntervalQ> {
        cells.iter().map(|c| c.iv.clone()).collect()
    }

    /// Sign of `B_k(a, y)` if certifiable from the current prefix box.
    fn sign_at(&self, prefix: &[Cell], y: &Rational) -> Option<i8> {
        let mut pts = Self::ivs(prefix);
        pts.push(IntervalQ::point(y.clone()));
        eval_iv(&self.polys[prefix.len()], &pts).sign()
    }

    fn refine_prefix(&self, cells: &mut [Cell]) -> Result<()> {
        for i in 0..cells.len() {
            if !cells[i].iv.is_point() {
                self.bisect(cells, i)?;
            }
        }
        Ok(())
    }

    /// Halves (roughly) the isolating interval of coordinate `i`.
    fn bisect(&self, cells: &mut [Cell], i: usize) -> Result<()> {
        let (prefix, rest) = cells.split_at_mut(i);
        let cell = &mut rest[0];
        let deg = self.polys[i].degree(i);
        for _ in 0..self.cap {
            for m in split_points(&cell.iv.lo, &cell.iv.hi, deg + 1) {
                match self.sign_at(prefix, &m) {
                    Some(0) => {
                        *cell = Cell::exact(m);
                        return Ok(());
                    }
                    Some(s) => {
                        if s == cell.s_lo {
                            cell.iv.lo = m;
                        } else {
                            cell.iv.hi = m;
                            cell.s_hi = s;
                        }
                        return Ok(());
                    }
                    None => {}
                }
            }
            self.refine_prefix(prefix)?;
        }
        Err(Error::DepthCap { cap: self.cap })
    }

    fn refine_to(&self, cells: &mut [Cell], width: &Rational) -> Result<()> {
        for i in 0..cells.len() {
            let mut steps = 0usize;
            while &cells[i].iv.width() > width {
                self.bisect(cells, i)?;
                steps += 1;
                if steps > self.cap * 64 {
                    return Err(Error::DepthCap { cap: self.cap });
                }
            }
        }
        Ok(())
    }

    /// All real roots of `B_k(a, y)` above the zero `a` isolated by `prefix`.
    fn lift(&self, mut prefix: Vec<Cell>) -> Result<Vec<Vec<Cell>>> {
        let k = prefix.len();
        let with = |prefix: &[Cell], c: Cell| {
            let mut v = prefix.to_vec();
            v.push(c);
            v
        };
        if prefix.iter().all(|c| c.iv.is_point()) {
            let pt: Vec<Rational> = prefix.iter().map(|c| c.iv.lo.clone()).collect();
            let mut f = self.polys[k].clone();
            for (v, r) in pt.iter().enumerate() {
                f = f.substitute(v, r);
            }
            let u = UPoly::from_mpoly(&f, k).expect("substituted all lower variables");
            if u.squarefree_part().degree() != u.degree() {
                return domain(format!(
                    "chain is not simple: polynomial #{} has a repeated root",
                    k + 1
                ));
            }
            return Ok(uni_cells(&u)
                .into_iter()
                .map(|c| with(&prefix, c))
                .collect());
        }

        let coeffs = self.polys[k].coeffs_in(k);
        let n = coeffs.len() - 1;
        let civs = |prefix: &[Cell]| -> Vec<IntervalQ> {
            let pts = Self::ivs(prefix);
            coeffs.iter().map(|c| eval_iv(c, &pts)).collect()
        };
        let mut cs = civs(&prefix);
        let mut rounds = 0;
        let lc_sign = loop {
            match cs[n].sign() {
                Some(s) if s != 0 => break s,
                Some(_) => {
                    return Err(Error::Invariant(
                        "initial vanishes at a zero of a regular chain".into(),
                    ))
                }
                None => {
                    rounds += 1;
                    if rounds > self.cap {
                        return Err(Error::DepthCap { cap: self.cap });
                    }
                    self.refine_prefix(&mut prefix)?;
                    cs = civs(&prefix);
                }
            }
        };
        let lc_min = cs[n].lo.abs().min(cs[n].hi.abs());
        let bound = (cs[..n]
            .iter()
            .map(IntervalQ::abs_max)
            .max()
            .unwrap_or_else(Rational::zero)
            / lc_min)
            .ceil()
            + Rational::one();
        let parity: i8 = if n.is_multiple_of(2) { 1 } else { -1 };

        struct Node {
            lo: Rational,
            hi: Rational,
            s_lo: i8,
            s_hi: i8,
            depth: usize,
            stalls: usize,
        }
        let mut stack = vec![Node {
            lo: -bound.clone(),
            hi: bound,
            s_lo: lc_sign * parity,
            s_hi: lc_sign,
            depth: 0,
            stalls: 0,
        }];
        let mut found = Vec::new();
        while let Some(mut node) = stack.pop() {
            if node.depth > self.cap {
                return Err(Error::DepthCap { cap: self.cap });
            }
            let (mn, mx) = descartes_iv(&cs, &node.lo, &node.hi);
            if mx == 0 {
                continue;
            }
            if mn == 1 && mx == 1 {
                found.push(Cell {
                    iv: IntervalQ {
                        lo: node.lo,
                        hi: node.hi,
                    },
                    s_lo: node.s_lo,
                    s_hi: node.s_hi,
                });
                continue;
            }
            if mn != mx && node.stalls < 2 {
                self.refine_prefix(&mut prefix)?;
                cs = civs(&prefix);
                node.stalls += 1;
                stack.push(node);
                continue;
            }
            let mut split = None;
            for _ in 0..self.cap {
                split = split_points(&node.lo, &node.hi, n + 1)
                    .into_iter()
                    .find_map(|m| match self.sign_at(&prefix, &m) {
                        Some(s) if s != 0 => Some((m, s)),
                        _ => None,
                    });
                if split.is_some() {
                    break;
                }
                self.refine_prefix(&mut prefix)?;
                cs = civs(&prefix);
            }
            let Some((m, s)) = split else {
                return Err(Error::DepthCap { cap: self.cap });
            };
            stack.push(Node {
                lo: m.clone(),
                hi: node.hi,
                s_lo: s,
                s_hi: node.s_hi,
                depth: node.depth + 1,
                stalls: 0,
            });
            stack.push(Node {
                lo: node.lo,
                hi: m,
                s_lo: node.s_lo,
                s_hi: s,
                depth: node.depth + 1,
                stalls: 0,
            });
        }
        found.sort_by(|a, b| a.iv.lo.cmp(&b.iv.lo));
        Ok(found.into_iter().map(|c| with(&prefix, c)).collect())
    }

    fn isolate(&self) -> Result<Vec<Vec<Cell>>> {
        let mut level = vec![Vec::new()];
        for _ in 0..self.polys.len() {
            let mut next = Vec::new();
            for prefix in level {
                next.extend(self.lift(prefix)?);
            }
            level = next;
        }
        Ok(level)
    }

    /// Rebuilds endpoint signs for a box given from outside.
    fn cells_of(&self, b: &BoxQ) -> Result<Vec<Cell>> {
        let mut cells: Vec<Cell> = Vec::with_capacity(b.intervals.len());
        for (i, iv) in b.intervals.iter().enumerate() {
            if iv.is_point() {
                cells.push(Cell::exact(iv.lo.clone()));
                continue;
            }
            let mut signs = [0i8; 2];
            for (slot, y) in [&iv.lo, &iv.hi].into_iter().enumerate() {
                let mut rounds = 0;
                signs[slot] = loop {
                    match self.sign_at(&cells[..i], y) {
                        Some(0) => return domain("box endpoint is a zero of the chain"),
                        Some(s) => break s,
                        None => {
                            rounds += 1;
                            if rounds > self.cap {
                                return Err(Error::DepthCap { cap: self.cap });
                            }
                            self.refine_prefix(&mut cells[..i])?;
                        }
                    }
                };
            }
            if signs[0] == signs[1] {
                return domain(format!("interval {} does not carry a sign change", i + 1));
            }
            cells.push(Cell {
                iv: iv.clone(),
                s_lo: signs[0],
                s_hi: signs[1],
            });
        }
        Ok(cells)
    }
}

/// Cells for the real roots of a squarefree rational polynomial; rational
/// roots come out exact.
fn uni_cells(u: &UPoly) -> Vec<Cell> {
    let ints = u.primitive_integer();
    let lc = Rational::from_integer(ints.last().cloned().unwrap_or_default());
    // distinct fractions with denominators dividing lc are 1/lc^2 apart
    let w = Rational::one() / (&lc * &lc * Rational::from_integer(BigInt::from(2)));
    u.isolate_real_roots()
        .into_iter()
        .map(|(lo, hi)| {
            if lo == hi {
                return Cell::exact(lo);
            }
            let (a, b) = u.refine(lo.clone(), hi.clone(), &w);
            let r = if a == b { a } else { simplest_between(&a, &b) };
            if u.eval(&r).is_zero() {
                Cell::exact(r)
            } else {
                Cell {
                    s_lo: sign_of(&u.eval(&lo)),
                    s_hi: sign_of(&u.eval(&hi)),
                    iv: IntervalQ { lo, hi },
                }
            }
        })
        .collect()
}

fn sign_of(r: &Rational) -> i8 {
    match r.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Refines boxes until pairwise disjoint; `polys(tag)` is the chain a box
/// belongs to.
fn separate<'a>(
    zeros: &mut [(usize, Vec<Cell>)],
    polys: impl Fn(usize) -> &'a [MPoly],
    cap: usize,
) -> Result<()> {
    let two = Rational::from_integer(BigInt::from(2));
    for i in 0..zeros.len() {
        for j in i + 1..zeros.len() {
            let mut rounds = 0;
            while !to_box(&zeros[i].1).disjoint(&to_box(&zeros[j].1)) {
                rounds += 1;
                if rounds > cap {
                    return Err(Error::Invariant(
                        "isolating boxes of distinct zeros do not separate".into(),
                    ));
                }
                for idx in [i, j] {
                    let (tag, cells) = &mut zeros[idx];
                    let lifter = Lifter {
                        polys: polys(*tag),
                        cap,
                    };
                    let w = to_box(cells).max_width() / &two;
                    if w.is_positive() {
                        lifter.refine_to(cells, &w)?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn to_box(cells: &[Cell]) -> BoxQ {
    BoxQ {
        intervals: cells.iter().map(|c| c.iv.clone()).collect(),
    }
}

/// Isolating intervals of the real roots of a squarefree univariate
/// polynomial, increasing; rational roots are returned as exact points.
pub fn uni_isolate(f: &MPoly) -> Result<Vec<IntervalQ>> {
    if f.is_zero() {
        return domain("cannot isolate the roots of the zero polynomial");
    }
    let v = f.main_var().unwrap_or(0);
    let Some(u) = UPoly::from_mpoly(f, v) else {
        return domain("polynomial is not univariate");
    };
    if u.squarefree_part().degree() != u.degree() {
        return domain("polynomial is not squarefree");
    }
    let polys = [u.to_mpoly(0)];
    let mut cells: Vec<(usize, Vec<Cell>)> =
        uni_cells(&u).into_iter().map(|c| (0, vec![c])).collect();
    separate(&mut cells, |_| &polys, depth_cap())?;
    Ok(cells.into_iter().map(|(_, mut c)| c.remove(0).iv).collect())
}

/// One box per real zero of a simple chain.
pub fn isolate_simple_set(b: &ZeroDimChain) -> Result<Vec<BoxQ>> {
    let lifter = Lifter {
        polys: b.polys(),
        cap: depth_cap(),
    };
    let mut zeros: Vec<(usize, Vec<Cell>)> =
        lifter.isolate()?.into_iter().map(|c| (0, c)).collect();
    separate(&mut zeros, |_| b.polys(), lifter.cap)?;
    Ok(zeros.iter().map(|(_, c)| to_box(c)).collect())
}

/// Shrinks a box returned by [`isolate_simple_set`] until every interval has
/// width at most `width`, keeping the same zero inside.
pub fn refine_box(b: &ZeroDimChain, bx: &BoxQ, width: &Rational) -> Result<BoxQ> {
    if !width.is_positive() {
        return domain("refinement width must be positive");
    }
    if bx.intervals.len() != b.len() {
        return domain("box dimension does not match the chain");
    }
    let lifter = Lifter {
        polys: b.polys(),
        cap: depth_cap(),
    };
    let mut cells = lifter.cells_of(bx)?;
    lifter.refine_to(&mut cells, width)?;
    Ok(to_box(&cells))
}

/// Real zeros of a regular chain with their local multiplicities.
pub fn iso_mult(t: &ZeroDimChain) -> Result<Vec<IsolatedZero>> {
    iso_mult_with_width(t, None)
}

/// Like [`iso_mult`], additionally refining every box to `width`.
pub fn iso_mult_with_width(
    t: &ZeroDimChain,
    width: Option<&Rational>,
) -> Result<Vec<IsolatedZero>> {
    if let Some(w) = width {
        if !w.is_positive() {
            return domain("refinement width must be positive");
        }
    }
    let d = reg2sim(t)?;
    let cap = depth_cap();
    let per_branch: Vec<Vec<(usize, Vec<Cell>)>> = d
        .branches
        .par_iter()
        .enumerate()
        .map(|(i, br)| {
            let lifter = Lifter {
                polys: br.chain.polys(),
                cap,
            };
            let mut zeros = lifter.isolate()?;
            if let Some(w) = width {
                for z in &mut zeros {
                    lifter.refine_to(z, w)?;
                }
            }
            Ok(zeros.into_iter().map(|z| (i, z)).collect())
        })
        .collect::<Result<_>>()?;
    let mut zeros: Vec<(usize, Vec<Cell>)> = per_branch.into_iter().flatten().collect();

    separate(&mut zeros, |i| d.branches[i].chain.polys(), cap)?;

    let mut out: Vec<IsolatedZero> = zeros
        .into_iter()
        .map(|(i, cells)| IsolatedZero {
            bounds: to_box(&cells),
            multiplicity: d.branches[i].array.product(),
            branch_index: i,
        })
        .collect();
    out.sort_by(|a, b| {
        let key = |z: &IsolatedZero| {
            z.bounds
                .intervals
                .iter()
                .map(IntervalQ::midpoint)
                .collect::<Vec<_>>()
        };
        key(a).cmp(&key(b))
    });
    Ok(out)
}

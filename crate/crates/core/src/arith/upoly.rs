//! Dense univariate polynomials over the rationals and exact real root
//! isolation by Descartes' rule of signs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{MPoly, Rational, Var};

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    /// `None` unless `p` involves no variable other than `v`.
    pub fn from_mpoly(p: &MPoly, v: Var) -> Option<Self> {
        match p {
            MPoly::Const(c) => Some(UPoly::new(vec![c.clone()])),
            MPoly::Rec(w, _) if *w != v => None,
            MPoly::Rec(_, _) => {
                let cs = p.coeffs_in(v);
                let mut out = Vec::with_capacity(cs.len());
                for c in cs {
                    out.push(c.as_constant()?.clone());
                }
                Some(UPoly::new(out))
            }
        }
    }

    pub fn to_mpoly(&self, v: Var) -> MPoly {
        MPoly::from_coeffs_in(v, self.0.iter().cloned().map(MPoly::constant).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.lc();
        UPoly(self.0.iter().map(|c| c / &lc).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.0.clone();
        let dn = d.degree();
        if r.len() <= dn {
            return (UPoly(Vec::new()), self.clone());
        }
        let lc = d.lc();
        let mut q = vec![Rational::zero(); r.len() - dn];
        for k in (0..q.len()).rev() {
            let c = &r[k + dn] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dn);
        (UPoly::new(q), UPoly::new(r))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic squarefree part.
    pub fn squarefree_part(&self) -> UPoly {
        if self.degree() == 0 {
            return self.monic();
        }
        self.div_rem(&self.gcd(&self.derivative())).0.monic()
    }

    /// Integer multiple with coprime coefficients and positive leading term.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let mut l = BigInt::one();
        for c in &self.0 {
            l = l.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self.0.iter().map(|c| (c * &l).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() {
            for c in &mut ints {
                *c /= &g;
            }
        }
        if ints.last().is_some_and(Signed::is_negative) {
            for c in &mut ints {
                *c = -&*c;
            }
        }
        ints
    }

    /// `p(a + s*x)`.
    fn compose_affine(&self, a: &Rational, s: &Rational) -> UPoly {
        let mut c = self.0.clone();
        taylor_shift(&mut c, a);
        let mut pw = Rational::one();
        for ci in c.iter_mut() {
            *ci *= &pw;
            pw *= s;
        }
        UPoly::new(c)
    }

    /// Upper bound on the number of roots in the open interval `(a, b)`;
    /// exact when it is 0 or 1.
    pub fn descartes_bound(&self, a: &Rational, b: &Rational) -> usize {
        let h = self.compose_affine(a, &(b - a));
        let mut rev: Vec<Rational> = h.0.into_iter().rev().collect();
        taylor_shift(&mut rev, &Rational::one());
        sign_variations(&rev)
    }

    /// Disjoint isolating intervals of the real roots of a squarefree
    /// polynomial, in increasing order. Each entry is either `(r, r)` with `r`
    /// an exact root or an open interval `(a, b)` containing exactly one root,
    /// with `p(a)` and `p(b)` nonzero.
    pub fn isolate_real_roots(&self) -> Vec<(Rational, Rational)> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let b = self.root_bound();
        let two = Rational::from_integer(BigInt::from(2));
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            match self.descartes_bound(&lo, &hi) {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / &two;
                    if self.eval(&mid).is_zero() {
                        // keep open endpoints off the root
                        let mut d = (&hi - &lo) / Rational::from_integer(BigInt::from(4));
                        while self.eval(&(&mid - &d)).is_zero()
                            || self.eval(&(&mid + &d)).is_zero()
                            || self.descartes_bound(&(&mid - &d), &mid) > 0
                            || self.descartes_bound(&mid, &(&mid + &d)) > 0
                        {
                            d /= &two;
                        }
                        out.push((mid.clone(), mid.clone()));
                        stack.push((lo, &mid - &d));
                        stack.push((&mid + &d, hi));
                    } else {
                        stack.push((lo, mid.clone()));
                        stack.push((mid, hi));
                    }
                }
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    /// Strict bound on the absolute value of every root.
    pub fn root_bound(&self) -> Rational {
        let lc = self.lc().abs();
        let m = self.0[..self.degree()]
            .iter()
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::one()
    }

    /// Narrows an open isolating interval until its width is at most `w`.
    /// Returns a degenerate interval if an exact root is hit.
    pub fn refine(&self, mut lo: Rational, mut hi: Rational, w: &Rational) -> (Rational, Rational) {
        if lo == hi {
            return (lo, hi);
        }
        let two = Rational::from_integer(BigInt::from(2));
        let sign_lo = self.eval(&lo).signum();
        while &(&hi - &lo) > w {
            let mid = (&lo + &hi) / &two;
            let s = self.eval(&mid).signum();
            if s.is_zero() {
                return (mid.clone(), mid);
            }
            if s == sign_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo, hi)
    }

    /// All distinct rational roots, increasing.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let sq = self.squarefree_part();
        let lc = Rational::from_integer(sq.primitive_integer().last().cloned().unwrap_or_default());
        // two fractions with denominators dividing lc are at least 1/lc^2 apart
        let w = Rational::one() / (&lc * &lc * Rational::from_integer(BigInt::from(2)));
        let mut roots = Vec::new();
        for (lo, hi) in sq.isolate_real_roots() {
            let (lo, hi) = sq.refine(lo, hi, &w);
            let r = simplest_between(&lo, &hi);
            if sq.eval(&r).is_zero() {
                roots.push(r);
            }
        }
        roots
    }
}

/// Replaces `c` by the coefficients of `p(x + a)`.
fn taylor_shift(c: &mut [Rational], a: &Rational) {
    let n = c.len();
    if a.is_zero() {
        return;
    }
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = &c[j + 1] * a;
            c[j] += t;
        }
    }
}

pub fn sign_variations(c: &[Rational]) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for x in c {
        let s = if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            continue;
        };
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Rational with the smallest denominator in `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi);
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if fl + Rational::one() <= *hi {
        return lo.ceil();
    }
    // lo, hi share the integer part; recurse on reciprocals of the fractional parts
    let f = lo.floor();
    let inner = simplest_between(
        &(Rational::one() / (hi - &f)),
        &(Rational::one() / (lo - &f)),
    );
    f + Rational::one() / inner
}

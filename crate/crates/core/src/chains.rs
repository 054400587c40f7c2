//! Triangular sets, zero-dimensional regular chains, reduction modulo a chain
//! and the invertibility test with case splitting that drives all branching.
//!
//! Semantics are those of zero sets: a polynomial is "zero" on a chain when it
//! vanishes at every (complex) zero of the chain and "invertible" when it
//! vanishes at none of them. For squarefree (simple) chains this coincides
//! with membership in, respectively invertibility modulo, the chain's ideal.

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{pseudo_divide, MPoly, Rational, UPoly, Var, VarOrder};
use crate::error::{domain, Error, Result};
use crate::pgcd::gcd_pair_plain;

/// Polynomials `[T1, ..., Tr]` with strictly increasing leading variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriangularSet {
    polys: Vec<MPoly>,
    nvars: usize,
}

impl TriangularSet {
    pub fn new(polys: Vec<MPoly>, nvars: usize) -> Result<Self> {
        let mut last: Option<Var> = None;
        for (i, p) in polys.iter().enumerate() {
            let Some(v) = p.main_var() else {
                return domain(format!(
                    "polynomial #{} of a triangular set is constant",
                    i + 1
                ));
            };
            if v >= nvars {
                return domain(format!("polynomial #{} uses an unknown variable", i + 1));
            }
            if last.is_some_and(|w| w >= v) {
                return domain(format!(
                    "leading variables not strictly ascending at polynomial #{}",
                    i + 1
                ));
            }
            last = Some(v);
        }
        Ok(TriangularSet { polys, nvars })
    }

    pub fn polys(&self) -> &[MPoly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Every variable is the leading variable of exactly one polynomial.
    pub fn is_zero_dimensional(&self) -> bool {
        self.polys.len() == self.nvars
    }
}

/// Triangular set over the variables `x_0 < ... < x_{k-1}` in which
/// polynomial `i` has leading variable `x_i`.
///
/// Regularity of the initials is not enforced by construction; see
/// [`check_regular`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ZeroDimChain {
    polys: Vec<MPoly>,
}

impl ZeroDimChain {
    pub fn empty() -> Self {
        ZeroDimChain { polys: Vec::new() }
    }

    pub fn new(polys: Vec<MPoly>) -> Result<Self> {
        for (i, p) in polys.iter().enumerate() {
            if p.main_var() != Some(i) {
                return domain(format!(
                    "polynomial #{} must have leading variable #{}",
                    i + 1,
                    i + 1
                ));
            }
        }
        Ok(ZeroDimChain { polys })
    }

    pub fn from_triangular(t: &TriangularSet) -> Result<Self> {
        if !t.is_zero_dimensional() {
            return domain(format!(
                "triangular set with {} polynomials in {} variables is not zero-dimensional",
                t.len(),
                t.nvars()
            ));
        }
        ZeroDimChain::new(t.polys.clone())
    }

    pub fn polys(&self) -> &[MPoly] {
        &self.polys
    }

    pub fn poly(&self, i: usize) -> &MPoly {
        &self.polys[i]
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Chain of the first `k` polynomials.
    pub fn prefix(&self, k: usize) -> ZeroDimChain {
        ZeroDimChain {
            polys: self.polys[..k].to_vec(),
        }
    }

    /// Appends a polynomial whose leading variable is `x_{len}`.
    pub fn pushed(&self, p: MPoly) -> ZeroDimChain {
        debug_assert_eq!(p.main_var(), Some(self.polys.len()));
        let mut polys = self.polys.clone();
        polys.push(p);
        ZeroDimChain { polys }
    }

    /// Dimension of `Q[x]/<T>` as a vector space: the product of main degrees.
    pub fn dimension(&self) -> u64 {
        self.polys.iter().map(|p| p.main_degree() as u64).product()
    }

    pub fn to_texts(&self, order: &VarOrder) -> Vec<String> {
        self.polys.iter().map(|p| p.to_text(order)).collect()
    }

    pub fn to_triangular(&self) -> TriangularSet {
        TriangularSet {
            polys: self.polys.clone(),
            nvars: self.polys.len(),
        }
    }
}

impl fmt::Display for ZeroDimChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = VarOrder::generic(self.len().max(1));
        write!(f, "[{}]", self.to_texts(&order).join(", "))
    }
}

/// Product of the main degrees of a chain.
pub fn chain_dimension(t: &ZeroDimChain) -> u64 {
    t.dimension()
}

/// Iterated pseudo-remainder of `f` through the chain, top variable first.
///
/// Returns `(h, r)` with `h * f - r` in the ideal of the chain, where `h` is a
/// product of powers of initials. Constant initials are divided out, so they
/// never contribute to `h`.
pub fn reduce_with_multiplier(f: &MPoly, t: &ZeroDimChain) -> (MPoly, MPoly) {
    let mut r = f.clone();
    let mut h = MPoly::one();
    for (i, ti) in t.polys.iter().enumerate().rev() {
        if r.degree(i) < ti.main_degree() {
            continue;
        }
        let ini = ti.initial();
        if let Some(c) = ini.as_constant() {
            let monic = ti.scale(&c.recip());
            r = pseudo_divide(&r, &monic, i)
                .expect("chain polynomial")
                .remainder;
        } else {
            let pd = pseudo_divide(&r, ti, i).expect("chain polynomial");
            if pd.exponent > 0 {
                h = &h * &ini.pow(pd.exponent);
            }
            r = pd.remainder;
        }
    }
    (h, r)
}

/// Reduces `f` modulo the chain: the result has degree below `deg(Ti)` in
/// every chain variable, and is zero only if `f` lies in the saturated ideal.
pub fn reduce(f: &MPoly, t: &ZeroDimChain) -> MPoly {
    reduce_with_multiplier(f, t).1
}

/// `reduce` followed by primitive normalization; zero stays zero.
pub(crate) fn reduce_normalized(f: &MPoly, t: &ZeroDimChain) -> MPoly {
    reduce(f, t).normalized()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitStatus {
    /// The tested polynomial vanishes at no zero of the chain.
    Invertible,
    /// The tested polynomial vanishes at every zero of the chain.
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCase {
    pub chain: ZeroDimChain,
    pub status: SplitStatus,
}

/// Cases whose chains partition the zeros of the input chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitOutcome {
    pub cases: Vec<SplitCase>,
}

impl SplitOutcome {
    pub fn all_invertible(&self) -> bool {
        self.cases
            .iter()
            .all(|c| c.status == SplitStatus::Invertible)
    }

    pub fn all_zero(&self) -> bool {
        self.cases.iter().all(|c| c.status == SplitStatus::Zero)
    }
}

/// Splits `t` into cases on which `p` is either invertible or zero.
///
/// `p` must only involve the chain's variables.
pub fn regularize(p: &MPoly, t: &ZeroDimChain) -> SplitOutcome {
    let p = reduce(p, t);
    let Some(v) = p.main_var() else {
        let status = if p.is_zero() {
            SplitStatus::Zero
        } else {
            SplitStatus::Invertible
        };
        return SplitOutcome {
            cases: vec![SplitCase {
                chain: t.clone(),
                status,
            }],
        };
    };
    assert!(
        v < t.len(),
        "regularize: polynomial involves a variable outside the chain"
    );

    let lower = t.prefix(v);
    let upper = &t.polys[v + 1..];
    let mut cases = Vec::new();
    for (c, zero_part, inv_part) in split_off(&p, t.poly(v), &lower, v) {
        if zero_part.degree(v) > 0 {
            cases.push(SplitCase {
                chain: rebuild(&c, zero_part, upper),
                status: SplitStatus::Zero,
            });
        }
        if inv_part.degree(v) > 0 {
            cases.push(SplitCase {
                chain: rebuild(&c, inv_part, upper),
                status: SplitStatus::Invertible,
            });
        }
    }
    SplitOutcome { cases }
}

/// Factors `t = z * w` over splittings of `c`, where every root of `z` is a
/// root of `p` and no root of `w` is. Multiplicities of `t` are kept, so the
/// factor chains have the same total dimension as `t`.
fn split_off(p: &MPoly, t: &MPoly, c: &ZeroDimChain, v: Var) -> Vec<(ZeroDimChain, MPoly, MPoly)> {
    let mut out = Vec::new();
    for (g, c1) in gcd_pair_plain(p, t, c, v) {
        let t1 = reduce_normalized(t, &c1);
        if g.degree(v) == 0 {
            out.push((c1, MPoly::one(), t1));
            continue;
        }
        let q = pseudo_divide(&t1, &g, v)
            .expect("gcd has positive degree")
            .quotient;
        let q = reduce_normalized(&q, &c1);
        if q.degree(v) == 0 {
            out.push((c1, t1, MPoly::one()));
            continue;
        }
        for (c2, z, w) in split_off(&g, &q, &c1, v) {
            let zero_part = reduce_normalized(&(&reduce(&g, &c2) * &z), &c2);
            out.push((c2, zero_part, w));
        }
    }
    out
}

/// Chain `lower + [f] + upper`, with `f` and each upper polynomial reduced
/// modulo the part below it and primitive-normalized.
pub(crate) fn rebuild(lower: &ZeroDimChain, f: MPoly, upper: &[MPoly]) -> ZeroDimChain {
    let mut chain = lower.pushed(reduce_normalized(&f, lower));
    for u in upper {
        let r = reduce_normalized(u, &chain);
        chain = chain.pushed(r);
    }
    chain
}

/// Same zeros and ideal with every initial scaled to 1, so that `reduce` by
/// the result is an exact normal form. `None` if some initial is a zero
/// divisor modulo the chain below it.
pub fn monic_chain(t: &ZeroDimChain) -> Option<ZeroDimChain> {
    let mut out = ZeroDimChain::empty();
    for p in &t.polys {
        let p = reduce(p, &out);
        let ini = p.initial();
        let q = match ini.as_constant() {
            Some(c) => p.scale(&c.recip()),
            None => reduce(&(&inverse_monic(&ini, &out)? * &p), &out),
        };
        out = out.pushed(q);
    }
    Some(out)
}

/// Inverse of `a` in `Q[x]/<m>` for a monic chain `m`, by solving the linear
/// system of multiplication by `a` on the monomial basis.
fn inverse_monic(a: &MPoly, m: &ZeroDimChain) -> Option<MPoly> {
    let a = reduce(a, m);
    if let Some(c) = a.as_constant() {
        return (!c.is_zero()).then(|| MPoly::constant(c.recip()));
    }
    let n = m.len();
    let degs: Vec<usize> = m.polys.iter().map(|p| p.main_degree()).collect();
    let dim: usize = degs.iter().product();
    let index = |e: &[u32]| {
        e.iter()
            .zip(&degs)
            .rev()
            .fold(0, |acc, (&x, &d)| acc * d + x as usize)
    };
    let basis: Vec<Vec<u32>> = (0..dim)
        .map(|mut k| {
            degs.iter()
                .map(|&d| {
                    let e = (k % d) as u32;
                    k /= d;
                    e
                })
                .collect()
        })
        .collect();
    // rows: coordinates; columns: images of basis monomials; last column: rhs
    let mut mat = vec![vec![Rational::zero(); dim + 1]; dim];
    for (j, e) in basis.iter().enumerate() {
        let img = reduce(&(&a * &MPoly::monomial(e, Rational::one())), m);
        for (exps, c) in img.terms(n) {
            mat[index(&exps)][j] = c;
        }
    }
    mat[0][dim] = Rational::one();
    for col in 0..dim {
        let piv = (col..dim).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(col, piv);
        let inv = mat[col][col].recip();
        for x in mat[col][col..].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = mat[col].clone();
        for (r, row) in mat.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &f * y;
            }
        }
    }
    let mut out = MPoly::zero();
    for (e, row) in basis.iter().zip(&mat) {
        if !row[dim].is_zero() {
            out = &out + &MPoly::monomial(e, row[dim].clone());
        }
    }
    Some(out)
}

/// Inverse of `a` modulo the ideal of `t`, if `a` vanishes at no zero of `t`.
pub fn invert(a: &MPoly, t: &ZeroDimChain) -> Option<MPoly> {
    inverse_monic(a, &monic_chain(t)?)
}

/// Associate of `f` modulo `t` whose initial in `x_v` is 1 before clearing
/// denominators. Falls back to plain normalization if the initial is not
/// invertible.
pub fn make_monic(f: &MPoly, t: &ZeroDimChain, v: Var) -> MPoly {
    if f.degree(v) == 0 || f.lc_in(v).is_constant() {
        return f.normalized();
    }
    let Some(m) = monic_chain(t) else {
        return f.normalized();
    };
    match inverse_monic(&f.lc_in(v), &m) {
        Some(inv) => reduce(&(&inv * f), &m).normalized(),
        None => f.normalized(),
    }
}

/// Splits off the rational roots of the first chain polynomial, each with
/// its full multiplicity; the cofactor, if any, has no rational root.
pub fn split_rational_base(t: &ZeroDimChain) -> Vec<ZeroDimChain> {
    let Some(base) = t.polys.first().and_then(|p| UPoly::from_mpoly(p, 0)) else {
        return vec![t.clone()];
    };
    let roots = base.rational_roots();
    if roots.is_empty() || (roots.len() == 1 && base.squarefree_part().degree() == 1) {
        return vec![t.clone()];
    }
    let mut rest = base;
    let mut pieces = Vec::new();
    for r in roots {
        let lin = UPoly::new(vec![-r, Rational::one()]);
        let mut piece = UPoly::new(vec![Rational::one()]);
        loop {
            let (q, rem) = rest.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            rest = q;
            piece = UPoly::new(poly_mul(piece.coeffs(), lin.coeffs()));
        }
        pieces.push(piece);
    }
    if rest.degree() > 0 {
        pieces.push(rest);
    }
    let upper = &t.polys[1..];
    pieces
        .into_iter()
        .map(|p| rebuild(&ZeroDimChain::empty(), p.to_mpoly(0), upper))
        .collect()
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Whether every initial is invertible modulo the chain below it.
pub fn is_regular_chain(t: &TriangularSet) -> bool {
    t.is_zero_dimensional()
        && ZeroDimChain::from_triangular(t)
            .map(|c| check_regular(&c).is_ok())
            .unwrap_or(false)
}

/// Like [`is_regular_chain`], naming the first offending initial on failure.
pub fn check_regular(t: &ZeroDimChain) -> Result<()> {
    for i in 0..t.len() {
        let ini = t.poly(i).initial();
        if !regularize(&ini, &t.prefix(i)).all_invertible() {
            return Err(Error::NotRegular {
                index: i,
                initial: ini.to_string(),
            });
        }
    }
    Ok(())
}

/// `check_regular` with variable names in the diagnostic.
pub fn check_regular_named(t: &ZeroDimChain, order: &VarOrder) -> Result<()> {
    check_regular(t).map_err(|e| match e {
        Error::NotRegular { index, .. } => Error::NotRegular {
            index,
            initial: t.poly(index).initial().to_text(order),
        },
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly;

    fn order() -> VarOrder {
        VarOrder::new(&["x", "y", "z"]).unwrap()
    }

    fn p(s: &str) -> MPoly {
        parse_poly(s, &order()).unwrap()
    }

    fn chain(ps: &[&str]) -> ZeroDimChain {
        ZeroDimChain::new(ps.iter().map(|s| p(s)).collect()).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(reduce(&p("y"), &chain(&["x", "y-x"])).is_zero());
        assert_eq!(reduce(&p("x^2"), &chain(&["x^2-x"])), p("x"));
        assert_eq!(reduce(&MPoly::int(5), &chain(&["x"])), MPoly::int(5));
    }

    #[test]
    fn reduce_multiplier_identity() {
        let t = chain(&["x^2-2", "x*y^2-1"]);
        let f = p("y^3 + x*y + 1");
        let (h, r) = reduce_with_multiplier(&f, &t);
        assert!(r.degree(1) < 2 && r.degree(0) < 2);
        // h*f - r must vanish at all four zeros; check via reduction
        assert!(reduce(&(&(&h * &f) - &r), &t).is_zero());
    }

    #[test]
    fn regularize_examples() {
        let out = regularize(&p("x"), &chain(&["x^2-x"]));
        assert_eq!(out.cases.len(), 2);
        assert!(out.cases.contains(&SplitCase {
            chain: chain(&["x"]),
            status: SplitStatus::Zero
        }));
        assert!(out.cases.contains(&SplitCase {
            chain: chain(&["x-1"]),
            status: SplitStatus::Invertible
        }));

        let t = chain(&["x^3-x^2+2", "(x^5+x)*y^3 - x^3*y^2"]);
        let out = regularize(&MPoly::one(), &t);
        assert_eq!(
            out.cases,
            vec![SplitCase {
                chain: t,
                status: SplitStatus::Invertible
            }]
        );

        let t = chain(&["x^3-x^2+2"]);
        let out = regularize(&p("x^5+x"), &t);
        assert_eq!(
            out.cases,
            vec![SplitCase {
                chain: t,
                status: SplitStatus::Invertible
            }]
        );
    }

    #[test]
    fn regularize_keeps_multiplicity_with_the_zero_part() {
        let out = regularize(&p("x"), &chain(&["x^3-x^2"]));
        assert_eq!(out.cases.len(), 2);
        let dims: u64 = out.cases.iter().map(|c| c.chain.dimension()).sum();
        assert_eq!(dims, 3);
        let zero = out
            .cases
            .iter()
            .find(|c| c.status == SplitStatus::Zero)
            .unwrap();
        assert_eq!(zero.chain, chain(&["x^2"]));
    }

    #[test]
    fn regularize_degenerate_inputs() {
        let t = chain(&["x^2-1"]);
        assert!(regularize(&MPoly::zero(), &t).all_zero());
        assert!(regularize(&MPoly::int(3), &t).all_invertible());
        assert!(regularize(&p("x^2-1"), &t).all_zero());
    }

    #[test]
    fn regularize_over_two_levels() {
        // zeros: (0,0), (0,1), (1,1), (1,2)
        let t = chain(&["x^2-x", "(y-x)*(y-x-1)"]);
        let out = regularize(&p("y-1"), &t);
        let dims: u64 = out.cases.iter().map(|c| c.chain.dimension()).sum();
        assert_eq!(dims, 4);
        let zero_dim: u64 = out
            .cases
            .iter()
            .filter(|c| c.status == SplitStatus::Zero)
            .map(|c| c.chain.dimension())
            .sum();
        assert_eq!(zero_dim, 2);
    }

    #[test]
    fn regularity_examples() {
        let ex = TriangularSet::new(vec![p("x^3-x^2+2"), p("(x^5+x)*y^3 - x^3*y^2")], 2).unwrap();
        assert!(is_regular_chain(&ex));
        let bad = TriangularSet::new(vec![p("x"), p("x*y-1")], 2).unwrap();
        assert!(!is_regular_chain(&bad));
        let err = check_regular(&ZeroDimChain::from_triangular(&bad).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotRegular { index: 1, .. }));
        let single = TriangularSet::new(vec![p("x")], 1).unwrap();
        assert!(is_regular_chain(&single));
        let short = TriangularSet::new(vec![p("x")], 2).unwrap();
        assert!(!is_regular_chain(&short));
    }

    #[test]
    fn triangular_set_validation() {
        assert!(TriangularSet::new(vec![p("y"), p("x")], 2).is_err());
        assert!(TriangularSet::new(vec![p("x"), MPoly::int(2)], 2).is_err());
        assert!(TriangularSet::new(vec![p("x"), p("x^2+y")], 2).is_ok());
        assert!(ZeroDimChain::new(vec![p("y")]).is_err());
    }

    #[test]
    fn inverses_modulo_chain() {
        let t = chain(&["x^2-2*x+2", "x*y-1"]);
        let m = monic_chain(&t).unwrap();
        assert_eq!(m.poly(0), &p("x^2-2*x+2"));
        assert_eq!(m.poly(1).initial(), MPoly::one());
        let inv = invert(&p("x-1"), &t).unwrap();
        assert_eq!(reduce(&(&inv * &p("x-1")), &m), MPoly::one());
        let inv = invert(&p("x+y"), &t).unwrap();
        assert_eq!(reduce(&(&inv * &p("x+y")), &m), MPoly::one());
        assert!(invert(&p("x"), &chain(&["x^2-x"])).is_none());
        assert_eq!(
            make_monic(&p("(3*x-3)*y-2"), &chain(&["x^2-2*x+2"]), 1),
            p("3*y+2*x-2")
        );
    }

    #[test]
    fn rational_base_split() {
        let parts = split_rational_base(&chain(&["x^3-x^2+2", "x*y-1"]));
        assert_eq!(
            parts,
            vec![chain(&["x+1", "y+1"]), chain(&["x^2-2*x+2", "x*y-1"])]
        );
        let parts = split_rational_base(&chain(&["x^2*(x-1)"]));
        assert_eq!(parts, vec![chain(&["x^2"]), chain(&["x-1"])]);
        assert_eq!(split_rational_base(&chain(&["x^2-2"])).len(), 1);
        assert_eq!(split_rational_base(&chain(&["(x-1)^3"])).len(), 1);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(
            chain_dimension(&chain(&["x^3-x^2+2", "(x^5+x)*y^3 - x^3*y^2"])),
            9
        );
        assert_eq!(chain_dimension(&chain(&["x"])), 1);
        assert_eq!(chain_dimension(&chain(&["x*(x-1)", "y^20*(y-1)"])), 42);
    }
}

//! Pseudo gcd of a polynomial set modulo a zero-dimensional regular chain.
//!
//! Euclidean remainder descent in the top variable `z`. Before a polynomial is
//! used as a divisor its leading coefficient is regularized over the current
//! chain; cases where it vanishes drop the leading term, and the computation
//! continues separately on every case. Each output branch therefore carries a
//! gcd whose leading coefficient is invertible on its chain, and the branch
//! chains partition the zeros of the input chain.

use crate::arith::{pseudo_divide, MPoly, Rational, Var};
use crate::chains::{reduce_with_multiplier, regularize, SplitStatus, ZeroDimChain};
use crate::error::{domain, Result};

/// One branch `(G, A)`: on every zero of `A`, the gcd of the specialized input
/// equals `G` specialized, up to a nonzero constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PgcdBranch {
    /// Primitive-normalized gcd; `1` when the gcd is a unit, `0` when every
    /// input vanishes identically on the branch.
    pub gcd: MPoly,
    pub chain: ZeroDimChain,
}

/// Membership witness: `multiplier * gcd - sum_j cofactors[j] * F_j` lies in
/// the ideal of the branch chain (when that chain is squarefree).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PgcdCertificate {
    pub multiplier: MPoly,
    pub cofactors: Vec<MPoly>,
}

/// A polynomial together with cofactors expressing it in terms of the
/// original inputs modulo the chain. `cof` is empty when not tracked.
#[derive(Debug, Clone)]
struct Tracked {
    poly: MPoly,
    cof: Vec<MPoly>,
}

impl Tracked {
    fn plain(poly: MPoly) -> Self {
        Tracked {
            poly,
            cof: Vec::new(),
        }
    }

    fn input(poly: MPoly, j: usize, n: usize) -> Self {
        let mut cof = vec![MPoly::zero(); n];
        cof[j] = MPoly::one();
        Tracked { poly, cof }
    }

    fn scaled(self, c: &Rational) -> Self {
        Tracked {
            poly: self.poly.scale(c),
            cof: self.cof.iter().map(|x| x.scale(c)).collect(),
        }
    }

    /// Reduces modulo `chain` and primitive-normalizes.
    fn reduced(&self, chain: &ZeroDimChain) -> Self {
        let (h, r) = reduce_with_multiplier(&self.poly, chain);
        let cof = if h.is_one() {
            self.cof.clone()
        } else {
            self.cof.iter().map(|x| x * &h).collect()
        };
        normalize(Tracked { poly: r, cof })
    }

    fn degree(&self, v: Var) -> usize {
        self.poly.degree(v)
    }
}

fn normalize(t: Tracked) -> Tracked {
    if t.poly.is_zero() {
        return t;
    }
    let n = t.poly.normalized();
    // n = s * poly for a nonzero rational s; recover s from leading terms
    let s = n.leading_rational() / t.poly.leading_rational();
    if t.cof.is_empty() {
        Tracked {
            poly: n,
            cof: Vec::new(),
        }
    } else {
        t.scaled(&s)
    }
}

/// Splits `chain` until the leading coefficient of `f` in `x_v` is invertible
/// on each case, discarding leading terms on cases where it vanishes.
fn make_regular(f: Tracked, chain: &ZeroDimChain, v: Var) -> Vec<(Tracked, ZeroDimChain)> {
    let mut out = Vec::new();
    let mut stack = vec![(f.reduced(chain), chain.clone())];
    while let Some((t, c)) = stack.pop() {
        if t.poly.is_zero() {
            out.push((t, c));
            continue;
        }
        let lc = t.poly.lc_in(v);
        let split = regularize(&lc, &c);
        for case in split.cases {
            let t1 = if case.chain == c {
                t.clone()
            } else {
                t.reduced(&case.chain)
            };
            match case.status {
                SplitStatus::Invertible => out.push((t1, case.chain)),
                SplitStatus::Zero => {
                    let dropped = drop_leading(t1, v, t.degree(v));
                    stack.push((dropped, case.chain));
                }
            }
        }
    }
    out
}

/// Removes the `x_v^deg` term if it is still present.
fn drop_leading(t: Tracked, v: Var, deg: usize) -> Tracked {
    let mut cs = t.poly.coeffs_in(v);
    if cs.len() == deg + 1 {
        cs.pop();
    }
    let poly = MPoly::from_coeffs_in(v, cs);
    normalize(Tracked { poly, cof: t.cof })
}

/// Gcd of two polynomials in `x_v` over splittings of `chain`.
fn gcd_pair(a: Tracked, b: Tracked, chain: &ZeroDimChain, v: Var) -> Vec<(Tracked, ZeroDimChain)> {
    let mut out = Vec::new();
    let mut work = Vec::new();
    for (a1, c1) in make_regular(a, chain, v) {
        let b0 = b.reduced(&c1);
        for (b1, c2) in make_regular(b0, &c1, v) {
            let a2 = if c2 == c1 {
                a1.clone()
            } else {
                a1.reduced(&c2)
            };
            work.push((a2, b1, c2));
        }
    }
    // both members of every work item have invertible leading coefficients
    while let Some((a, b, c)) = work.pop() {
        if b.poly.is_zero() {
            out.push((a, c));
            continue;
        }
        if a.poly.is_zero() {
            out.push((b, c));
            continue;
        }
        if b.degree(v) == 0 {
            out.push((b, c));
            continue;
        }
        if a.degree(v) == 0 {
            out.push((a, c));
            continue;
        }
        let (a, b) = if a.degree(v) < b.degree(v) {
            (b, a)
        } else {
            (a, b)
        };
        let pd = pseudo_divide(&a.poly, &b.poly, v).expect("divisor has positive degree");
        let cof = if a.cof.is_empty() {
            Vec::new()
        } else {
            let lift = b.poly.initial().pow(pd.exponent);
            a.cof
                .iter()
                .zip(&b.cof)
                .map(|(ca, cb)| &(&lift * ca) - &(&pd.quotient * cb))
                .collect()
        };
        let r = Tracked {
            poly: pd.remainder,
            cof,
        };
        for (r1, c1) in make_regular(r, &c, v) {
            let b1 = if c1 == c { b.clone() } else { b.reduced(&c1) };
            work.push((b1, r1, c1));
        }
    }
    out
}

/// Untracked gcd of two polynomials in `x_v` over splittings of `chain`.
///
/// Returned gcds are reduced and normalized; a gcd of degree 0 in `x_v` is a
/// unit on its branch.
pub(crate) fn gcd_pair_plain(
    a: &MPoly,
    b: &MPoly,
    chain: &ZeroDimChain,
    v: Var,
) -> Vec<(MPoly, ZeroDimChain)> {
    gcd_pair(
        Tracked::plain(a.clone()),
        Tracked::plain(b.clone()),
        chain,
        v,
    )
    .into_iter()
    .map(|(g, c)| (g.poly, c))
    .collect()
}

fn check_inputs(fs: &[MPoly], t: &ZeroDimChain, z: Var) -> Result<()> {
    if fs.is_empty() {
        return domain("pgcd of an empty polynomial set");
    }
    if z != t.len() {
        return domain(format!(
            "pgcd variable #{} must be the variable directly above the chain",
            z + 1
        ));
    }
    if fs.iter().any(|f| f.main_var().is_some_and(|w| w > z)) {
        return domain("pgcd input involves a variable above the gcd variable");
    }
    Ok(())
}

fn run(fs: &[MPoly], t: &ZeroDimChain, z: Var, track: bool) -> Vec<(Tracked, ZeroDimChain)> {
    let n = fs.len();
    let input = |j: usize| {
        if track {
            Tracked::input(fs[j].clone(), j, n)
        } else {
            Tracked::plain(fs[j].clone())
        }
    };
    let mut current = make_regular(input(0), t, z);
    for j in 1..n {
        let mut next = Vec::new();
        for (g, c) in current {
            next.extend(gcd_pair(g, input(j), &c, z));
        }
        current = next;
    }
    current
}

fn finish(g: Tracked, z: Var) -> (MPoly, PgcdCertificate) {
    if g.poly.is_zero() {
        return (
            MPoly::zero(),
            PgcdCertificate {
                multiplier: MPoly::one(),
                cofactors: g.cof,
            },
        );
    }
    if g.degree(z) == 0 {
        return (
            MPoly::one(),
            PgcdCertificate {
                multiplier: g.poly,
                cofactors: g.cof,
            },
        );
    }
    let normalized = g.poly.normalized();
    // normalized = s * g.poly, so g.poly = (1/s) * normalized
    let s = normalized.leading_rational() / g.poly.leading_rational();
    (
        normalized,
        PgcdCertificate {
            multiplier: MPoly::constant(s.recip()),
            cofactors: g.cof,
        },
    )
}

/// Pseudo gcd of `fs` in `x_z` modulo the chain `t` over the variables below
/// `z`. The empty chain gives the ordinary gcd over the rationals.
pub fn pgcd(fs: &[MPoly], t: &ZeroDimChain, z: Var) -> Result<Vec<PgcdBranch>> {
    check_inputs(fs, t, z)?;
    Ok(run(fs, t, z, false)
        .into_iter()
        .map(|(g, chain)| PgcdBranch {
            gcd: finish(g, z).0,
            chain,
        })
        .collect())
}

/// [`pgcd`] with a membership certificate per branch.
pub fn pgcd_certified(
    fs: &[MPoly],
    t: &ZeroDimChain,
    z: Var,
) -> Result<Vec<(PgcdBranch, PgcdCertificate)>> {
    check_inputs(fs, t, z)?;
    Ok(run(fs, t, z, true)
        .into_iter()
        .map(|(g, chain)| {
            let (gcd, cert) = finish(g, z);
            (PgcdBranch { gcd, chain }, cert)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, VarOrder};
    use crate::chains::reduce;

    fn order() -> VarOrder {
        VarOrder::new(&["x", "y"]).unwrap()
    }

    fn p(s: &str) -> MPoly {
        parse_poly(s, &order()).unwrap()
    }

    fn chain(ps: &[&str]) -> ZeroDimChain {
        ZeroDimChain::new(ps.iter().map(|s| p(s)).collect()).unwrap()
    }

    #[test]
    fn splits_on_specialization() {
        let mut out = pgcd(&[p("y^2-x"), p("y-1")], &chain(&["x^2-x"]), 1).unwrap();
        out.sort_by_key(|b| b.gcd.main_degree());
        assert_eq!(
            out,
            vec![
                PgcdBranch {
                    gcd: MPoly::one(),
                    chain: chain(&["x"])
                },
                PgcdBranch {
                    gcd: p("y-1"),
                    chain: chain(&["x-1"])
                },
            ]
        );
    }

    #[test]
    fn singleton_with_invertible_initial() {
        let t = chain(&["x^2-2"]);
        let out = pgcd(&[p("3*x*y^2 - 6")], &t, 1).unwrap();
        assert_eq!(
            out,
            vec![PgcdBranch {
                gcd: p("x*y^2 - 2"),
                chain: t
            }]
        );
    }

    #[test]
    fn univariate_gcd_over_empty_chain() {
        let out = pgcd(
            &[p("3*x^5-3*x^3"), p("15*x^4-9*x^2")],
            &ZeroDimChain::empty(),
            0,
        )
        .unwrap();
        assert_eq!(
            out,
            vec![PgcdBranch {
                gcd: p("x^2"),
                chain: ZeroDimChain::empty()
            }]
        );
    }

    #[test]
    fn all_inputs_vanishing_gives_zero() {
        let out = pgcd(&[p("x*y"), p("x*y^2")], &chain(&["x"]), 1).unwrap();
        assert_eq!(
            out,
            vec![PgcdBranch {
                gcd: MPoly::zero(),
                chain: chain(&["x"])
            }]
        );
    }

    #[test]
    fn input_validation() {
        assert!(pgcd(&[], &ZeroDimChain::empty(), 0).is_err());
        assert!(pgcd(&[p("y")], &ZeroDimChain::empty(), 0).is_err());
        assert!(pgcd(&[p("x")], &chain(&["x"]), 0).is_err());
    }

    #[test]
    fn certificate_identity() {
        let t = chain(&["x^2-x"]);
        let fs = [p("y^2-x"), p("y-1")];
        for (b, cert) in pgcd_certified(&fs, &t, 1).unwrap() {
            let mut lhs = &cert.multiplier * &b.gcd;
            for (c, f) in cert.cofactors.iter().zip(&fs) {
                lhs = &lhs - &(c * f);
            }
            assert!(reduce(&lhs, &b.chain).is_zero(), "branch {:?}", b);
        }
    }
}

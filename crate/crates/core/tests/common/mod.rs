//! Random chain generators, independent oracles and property checks shared by
//! the property and acceptance suites.
#![allow(dead_code)]

use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use trichain::arith::{pseudo_divide, GaussianRational, MPoly, Rational, UPoly};
use trichain::chains::{regularize, SplitStatus, ZeroDimChain};
use trichain::dualspace::{dual_space_dim, DEFAULT_CAP};
use trichain::isolate::{iso_mult, refine_box};
use trichain::pgcd::pgcd;
use trichain::psqf::psqf;
use trichain::reg2sim::{is_simple, reg2sim, reg_mult};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn int(n: i64) -> MPoly {
    MPoly::constant(q(n))
}

/// `lead * x_i - (constant + sum lower[v] * x_v)`, or its square minus
/// `surd` when `surd > 0`.
#[derive(Debug, Clone)]
pub struct Factor {
    pub lower: Vec<i64>,
    pub constant: i64,
    pub lead: i64,
    pub exp: u32,
    pub surd: i64,
}

impl Factor {
    fn degree(&self) -> u32 {
        self.exp * if self.surd > 0 { 2 } else { 1 }
    }

    fn shift(&self, i: usize) -> MPoly {
        let mut l = int(self.constant);
        for (v, &c) in self.lower.iter().take(i).enumerate() {
            l = &l + &(&int(c) * &MPoly::var(v));
        }
        l
    }

    pub fn base(&self, i: usize) -> MPoly {
        let lin = &(&int(self.lead) * &MPoly::var(i)) - &self.shift(i);
        if self.surd > 0 {
            &lin.pow(2) - &int(self.surd)
        } else {
            lin
        }
    }

    /// Root above the rational point `a` (linear factors only).
    fn root(&self, a: &[Rational]) -> Rational {
        let mut s = q(self.constant);
        for (c, x) in self.lower.iter().zip(a) {
            s += q(*c) * x;
        }
        s / q(self.lead)
    }
}

#[derive(Debug, Clone)]
pub struct ChainShape {
    pub levels: Vec<Vec<Factor>>,
}

impl ChainShape {
    pub fn nvars(&self) -> usize {
        self.levels.len()
    }

    pub fn poly(&self, i: usize) -> MPoly {
        self.levels[i]
            .iter()
            .fold(MPoly::one(), |acc, f| &acc * &f.base(i).pow(f.exp))
    }

    pub fn chain(&self) -> ZeroDimChain {
        ZeroDimChain::new((0..self.nvars()).map(|i| self.poly(i)).collect()).unwrap()
    }

    pub fn is_rational(&self) -> bool {
        self.levels.iter().flatten().all(|f| f.surd == 0)
    }

    /// Distinct zeros with their local multiplicities.
    ///
    /// Initials are constant, so above a zero `a` of the lower levels the
    /// local ring splits by Hensel lifting and each level contributes the
    /// order of vanishing of `T_i(a, x_i)` at the root.
    pub fn zeros(&self) -> Vec<(Vec<Rational>, u64)> {
        assert!(self.is_rational());
        let mut pts: Vec<(Vec<Rational>, u64)> = vec![(Vec::new(), 1)];
        for level in &self.levels {
            let mut next = Vec::new();
            for (a, m) in &pts {
                let mut roots: Vec<(Rational, u64)> = Vec::new();
                for f in level {
                    let r = f.root(a);
                    match roots.iter_mut().find(|(x, _)| *x == r) {
                        Some((_, k)) => *k += u64::from(f.exp),
                        None => roots.push((r, u64::from(f.exp))),
                    }
                }
                for (r, k) in roots {
                    let mut b = a.clone();
                    b.push(r);
                    next.push((b, m * k));
                }
            }
            pts = next;
        }
        pts
    }
}

fn factor(surd: bool) -> impl Strategy<Value = Factor> {
    let s = if surd {
        prop_oneof![3 => Just(0i64), 1 => Just(2i64), 1 => Just(3i64)].boxed()
    } else {
        Just(0i64).boxed()
    };
    (
        prop::collection::vec(-2i64..=2, 3),
        -3i64..=3,
        1i64..=2,
        1u32..=3,
        s,
    )
        .prop_map(|(lower, constant, lead, exp, surd)| Factor {
            lower,
            constant,
            lead,
            exp,
            surd,
        })
}

/// Factors of one level, total degree at most `max_deg`.
fn level(surd: bool, max_deg: u32) -> impl Strategy<Value = Vec<Factor>> {
    prop::collection::vec(factor(surd), 1..=3).prop_map(move |fs| {
        let mut out: Vec<Factor> = Vec::new();
        let mut deg = 0;
        for mut f in fs {
            let unit = f.degree() / f.exp;
            if deg + unit > max_deg {
                continue;
            }
            f.exp = f.exp.min((max_deg - deg) / unit);
            deg += f.degree();
            out.push(f);
        }
        out
    })
}

/// Chains in at most `max_vars` variables, degree at most 4 per level.
pub fn chain_shape(max_vars: usize, surd: bool) -> impl Strategy<Value = ChainShape> {
    prop::collection::vec(level(surd, 4), 1..=max_vars).prop_map(|levels| ChainShape { levels })
}

/// Runs `test` on `cases` inputs from a fixed-seed generator.
pub fn suite<S>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
{
    let config = Config {
        cases,
        failure_persistence: None,
        max_shrink_iters: 256,
        ..Config::default()
    };
    let mut runner =
        TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn fail<T: std::fmt::Display>(e: T) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

fn gaussian(a: &[Rational]) -> Vec<GaussianRational> {
    a.iter().cloned().map(GaussianRational::real).collect()
}

fn vanishes(t: &ZeroDimChain, a: &[Rational]) -> bool {
    t.polys()
        .iter()
        .all(|p| p.eval_rational(&a[..t.len()]).unwrap().is_zero())
}

// ---- CRT identity and multiplicity oracles ----

pub fn check_crt(shape: ChainShape) -> Result<(), TestCaseError> {
    let t = shape.chain();
    let d = reg2sim(&t).map_err(fail)?;
    prop_assert_eq!(d.weighted_dimension(), t.dimension());
    for b in &d.branches {
        prop_assert!(is_simple(&b.chain), "branch {} is not simple", b.chain);
    }
    Ok(())
}

/// reg_mult against the dual-space oracle and the fiber-order oracle at one
/// zero picked by `pick`.
pub fn check_dual_agreement((shape, pick): (ChainShape, usize)) -> Result<(), TestCaseError> {
    let t = shape.chain();
    let zeros = shape.zeros();
    let (a, want) = &zeros[pick % zeros.len()];
    let m = reg_mult(&t, &gaussian(a)).map_err(fail)?;
    let dual = dual_space_dim(t.polys(), a, DEFAULT_CAP).map_err(fail)?;
    prop_assert_eq!(m, dual, "reg_mult vs dual space at {:?}", a);
    prop_assert_eq!(m, *want, "reg_mult vs fiber orders at {:?}", a);
    Ok(())
}

// ---- pseudo-division ----

fn poly3() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((0u32..=3, 0u32..=3, 0u32..=3, -5i64..=5), 1..=6).prop_map(|ts| {
        ts.into_iter().fold(MPoly::zero(), |acc, (a, b, c, k)| {
            &acc + &MPoly::monomial(&[a, b, c], q(k))
        })
    })
}

pub fn pseudo_division_input() -> impl Strategy<Value = (MPoly, MPoly)> {
    (
        poly3(),
        poly3().prop_filter("divisor must be non-constant", |g| !g.is_constant()),
    )
}

pub fn check_pseudo_division((f, g): (MPoly, MPoly)) -> Result<(), TestCaseError> {
    let v = g.main_var().unwrap();
    let pd = pseudo_divide(&f, &g, v).map_err(fail)?;
    prop_assert!(pd.remainder.is_zero() || pd.remainder.degree(v) < g.degree(v));
    prop_assert!(pd.exponent as usize <= (f.degree(v) + 1).saturating_sub(g.degree(v)));
    let lhs = &g.initial().pow(pd.exponent) * &f;
    let rhs = &(&pd.quotient * &g) + &pd.remainder;
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

// ---- regularize ----

/// Product of one or two affine forms over the chain's variables.
fn affine_product() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 1..=2)
}

fn affine_poly(forms: &[Vec<i64>], n: usize) -> MPoly {
    forms.iter().fold(MPoly::one(), |acc, c| {
        let mut l = int(c[0]);
        for v in 0..n {
            l = &l + &(&int(c[v + 1]) * &MPoly::var(v));
        }
        &acc * &l
    })
}

pub fn regularize_input() -> impl Strategy<Value = (ChainShape, Vec<Vec<i64>>)> {
    (chain_shape(3, false), affine_product())
}

pub fn check_regularize((shape, forms): (ChainShape, Vec<Vec<i64>>)) -> Result<(), TestCaseError> {
    let t = shape.chain();
    let p = affine_poly(&forms, shape.nvars());
    let out = regularize(&p, &t);
    let dims: u64 = out.cases.iter().map(|c| c.chain.dimension()).sum();
    prop_assert_eq!(dims, t.dimension());
    for (a, _) in shape.zeros() {
        let hits: Vec<_> = out
            .cases
            .iter()
            .filter(|c| vanishes(&c.chain, &a))
            .collect();
        prop_assert_eq!(hits.len(), 1, "zero {:?} lies on {} cases", a, hits.len());
        let zero = p.eval_rational(&a).unwrap().is_zero();
        prop_assert_eq!(
            hits[0].status == SplitStatus::Zero,
            zero,
            "status at {:?}",
            a
        );
    }
    Ok(())
}

// ---- psqf ----

/// Top-level factors `(c * z - L)^e` where `c` may involve `x_0`, and an
/// optional `(z^2 + 1)^e`.
#[derive(Debug, Clone)]
pub struct TopPoly {
    pub lin: Vec<(i64, i64, Vec<i64>, u32)>,
    pub irreducible: u32,
}

impl TopPoly {
    pub fn poly(&self, z: usize) -> MPoly {
        let mut f = MPoly::one();
        for (lead, lead_x0, lower, e) in &self.lin {
            let mut c = int(*lead);
            if z > 0 {
                c = &c + &(&int(*lead_x0) * &MPoly::var(0));
            }
            let mut l = MPoly::zero();
            for (v, k) in lower.iter().enumerate().take(z + 1) {
                l = &l
                    + &(&int(*k)
                        * &if v == 0 {
                            MPoly::one()
                        } else {
                            MPoly::var(v - 1)
                        });
            }
            f = &f * &(&(&c * &MPoly::var(z)) - &l).pow(*e);
        }
        if self.irreducible > 0 {
            f = &f * &(&MPoly::var(z).pow(2) + &MPoly::one()).pow(self.irreducible);
        }
        f
    }
}

pub fn psqf_input() -> impl Strategy<Value = (ChainShape, TopPoly)> {
    let lin = prop::collection::vec(
        (
            1i64..=2,
            prop_oneof![2 => Just(0i64), 1 => Just(1i64), 1 => Just(-1i64)],
            prop::collection::vec(-2i64..=2, 3),
            1u32..=3,
        ),
        1..=3,
    );
    (
        chain_shape(2, false),
        lin,
        prop_oneof![3 => Just(0u32), 1 => 1u32..=2],
    )
        .prop_map(|(shape, lin, irreducible)| (shape, TopPoly { lin, irreducible }))
}

fn specialize(f: &MPoly, a: &[Rational], z: usize) -> UPoly {
    let mut g = f.clone();
    for (v, r) in a.iter().enumerate() {
        g = g.substitute(v, r);
    }
    UPoly::from_mpoly(&g, z).unwrap()
}

/// Squarefree decomposition by repeated gcd: `[(monic factor, exponent)]`.
pub fn sqf_oracle(f: &UPoly) -> Vec<(UPoly, u32)> {
    let mut out = Vec::new();
    let mut g = f.gcd(&f.derivative());
    let mut w = f.div_rem(&g).0;
    let mut k = 1;
    while w.degree() > 0 {
        let y = w.gcd(&g);
        let part = w.div_rem(&y).0;
        if part.degree() > 0 {
            out.push((part.monic(), k));
        }
        g = g.div_rem(&y).0;
        w = y;
        k += 1;
    }
    out
}

pub fn check_psqf((shape, top): (ChainShape, TopPoly)) -> Result<(), TestCaseError> {
    let t = shape.chain();
    let z = shape.nvars();
    let f = top.poly(z);
    let out = psqf(&f, &t, z).map_err(fail)?;
    for br in &out {
        let exps: Vec<u32> = br.components.iter().map(|c| c.exponent).collect();
        prop_assert!(exps.windows(2).all(|w| w[0] < w[1]), "exponents {:?}", exps);
        for (i, ci) in br.components.iter().enumerate() {
            let sq =
                pgcd(&[ci.factor.clone(), ci.factor.derivative(z)], &br.chain, z).map_err(fail)?;
            prop_assert!(
                sq.iter().all(|g| g.gcd.degree(z) == 0 && !g.gcd.is_zero()),
                "not squarefree: {}",
                ci.factor
            );
            for cj in &br.components[i + 1..] {
                let cp =
                    pgcd(&[ci.factor.clone(), cj.factor.clone()], &br.chain, z).map_err(fail)?;
                prop_assert!(
                    cp.iter().all(|g| g.gcd.degree(z) == 0),
                    "not coprime: {} {}",
                    ci.factor,
                    cj.factor
                );
            }
        }
    }
    for (a, _) in shape.zeros() {
        let hits: Vec<_> = out.iter().filter(|b| vanishes(&b.chain, &a)).collect();
        prop_assert_eq!(
            hits.len(),
            1,
            "zero {:?} lies on {} branches",
            a,
            hits.len()
        );
        let fa = specialize(&f, &a, z);
        if fa.is_zero() {
            continue;
        }
        let mut got: Vec<(UPoly, u32)> = hits[0]
            .components
            .iter()
            .map(|c| (specialize(&c.factor, &a, z).monic(), c.exponent))
            .collect();
        let mut want = sqf_oracle(&fa);
        got.sort_by_key(|(_, e)| *e);
        want.sort_by_key(|(_, e)| *e);
        prop_assert_eq!(got, want, "decomposition at {:?}", a);
    }
    Ok(())
}

// ---- isolation ----

pub fn check_isolation(shape: ChainShape) -> Result<(), TestCaseError> {
    let t = shape.chain();
    let zs = iso_mult(&t).map_err(fail)?;
    let d = reg2sim(&t).map_err(fail)?;
    if shape.is_rational() {
        let known = shape.zeros();
        prop_assert_eq!(zs.len(), known.len());
        for z in &zs {
            let inside: Vec<_> = known.iter().filter(|(a, _)| z.bounds.contains(a)).collect();
            prop_assert_eq!(inside.len(), 1);
            prop_assert_eq!(z.multiplicity, inside[0].1);
            prop_assert!(z.bounds.intervals.iter().all(|iv| iv.is_point()));
        }
    }
    let mut refined = Vec::new();
    for z in &zs {
        let b = &d.branches[z.branch_index].chain;
        let mut cur = z.bounds.clone();
        for k in 1..=12u32 {
            let w = Rational::new(1.into(), (1u64 << k).into());
            let next = refine_box(b, &cur, &w).map_err(fail)?;
            prop_assert!(next.max_width() <= w);
            for (n, c) in next.intervals.iter().zip(&cur.intervals) {
                prop_assert!(c.lo <= n.lo && n.hi <= c.hi, "refinement left the box");
            }
            cur = next;
        }
        refined.push(cur);
    }
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            prop_assert!(zs[i].bounds.disjoint(&zs[j].bounds));
            prop_assert!(refined[i].disjoint(&refined[j]));
        }
    }
    Ok(())
}

//! Decomposition of a zero-dimensional regular chain into simple chains with
//! multiplicity arrays, and multiplicity queries at given zeros.
//!
//! For `T = [T1, ..., Tn]` the chain is processed bottom-up: each `Ti` is
//! squarefree-decomposed modulo the simple chain built so far, and every
//! squarefree factor `C` with exponent `c` extends that chain by `C` and the
//! multiplicity array by `c`. A zero of `T` lies on exactly one output branch,
//! and its local multiplicity is the product of that branch's array.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use crate::arith::{GaussianRational, MPoly, VarOrder};
use crate::chains::{check_regular, ZeroDimChain};
use crate::error::{domain, Error, Result};
use crate::pgcd::pgcd;
use crate::psqf::psqf;

/// Per-variable exponents `[p1, ..., pr]` of a simple branch.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiplicityArray(pub Vec<u32>);

impl MultiplicityArray {
    /// Local multiplicity of every zero of the branch.
    pub fn product(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).product()
    }
}

impl fmt::Display for MultiplicityArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleBranch {
    pub chain: ZeroDimChain,
    pub array: MultiplicityArray,
}

impl SimpleBranch {
    /// `[B1^p1, ..., Br^pr]`.
    pub fn powered(&self) -> Vec<MPoly> {
        self.chain
            .polys()
            .iter()
            .zip(&self.array.0)
            .map(|(b, &p)| b.pow(p))
            .collect()
    }

    pub fn vanishes_at(&self, point: &[GaussianRational]) -> Result<bool> {
        for b in self.chain.polys() {
            if !num_traits::Zero::is_zero(&b.eval_at(point)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub branches: Vec<SimpleBranch>,
    pub source: ZeroDimChain,
}

impl Decomposition {
    /// `sum over branches of prod_i p_i * deg(B_i)`; equals the dimension of
    /// the source chain.
    pub fn weighted_dimension(&self) -> u64 {
        self.branches
            .iter()
            .map(|b| b.array.product() * b.chain.dimension())
            .sum()
    }

    /// Index of the unique branch vanishing at `point`.
    pub fn branch_at(&self, point: &[GaussianRational]) -> Result<usize> {
        let mut hits = Vec::new();
        for (i, b) in self.branches.iter().enumerate() {
            if b.vanishes_at(point)? {
                hits.push(i);
            }
        }
        match hits.as_slice() {
            [i] => Ok(*i),
            _ => Err(Error::Invariant(format!(
                "zero lies on {} branches of the decomposition, expected exactly one",
                hits.len()
            ))),
        }
    }
}

/// Whether each `Bi` is squarefree modulo the chain below it.
pub fn is_simple(chain: &ZeroDimChain) -> bool {
    (0..chain.len()).all(|i| {
        let b = chain.poly(i);
        pgcd(&[b.clone(), b.derivative(i)], &chain.prefix(i), i)
            .map(|out| {
                out.iter()
                    .all(|br| br.gcd.degree(i) == 0 && !br.gcd.is_zero())
            })
            .unwrap_or(false)
    })
}

/// Decomposition without consulting the cache.
pub fn reg2sim_uncached(t: &ZeroDimChain) -> Result<Decomposition> {
    check_regular(t)?;
    let mut branches = Vec::new();
    let mut stack: Vec<(ZeroDimChain, Vec<u32>)> = vec![(ZeroDimChain::empty(), Vec::new())];
    while let Some((simple, array)) = stack.pop() {
        let k = simple.len();
        if k == t.len() {
            branches.push(SimpleBranch {
                chain: simple,
                array: MultiplicityArray(array),
            });
            continue;
        }
        for br in psqf(t.poly(k), &simple, k)? {
            for comp in br.components {
                let mut arr = array.clone();
                arr.push(comp.exponent);
                stack.push((br.chain.pushed(comp.factor), arr));
            }
        }
    }
    branches.sort_by_cached_key(|b| (b.chain.to_string(), b.array.0.clone()));
    Ok(Decomposition {
        branches,
        source: t.clone(),
    })
}

static CACHE: LazyLock<RwLock<HashMap<ZeroDimChain, Arc<Decomposition>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Decomposes a regular chain into simple chains with multiplicity arrays.
/// Results are memoized per input chain.
pub fn reg2sim(t: &ZeroDimChain) -> Result<Arc<Decomposition>> {
    if let Some(d) = CACHE.read().unwrap().get(t) {
        return Ok(Arc::clone(d));
    }
    let d = Arc::new(reg2sim_uncached(t)?);
    let mut cache = CACHE.write().unwrap();
    Ok(Arc::clone(cache.entry(t.clone()).or_insert(d)))
}

/// Decomposition with chains rendered through `order`, for diagnostics.
pub fn reg2sim_named(t: &ZeroDimChain, order: &VarOrder) -> Result<Arc<Decomposition>> {
    crate::chains::check_regular_named(t, order)?;
    reg2sim(t)
}

/// Local multiplicity of the zero `point` of `t`.
pub fn reg_mult(t: &ZeroDimChain, point: &[GaussianRational]) -> Result<u64> {
    if point.len() != t.len() {
        return domain(format!(
            "point has {} coordinates, chain has {} variables",
            point.len(),
            t.len()
        ));
    }
    for p in t.polys() {
        if !num_traits::Zero::is_zero(&p.eval_at(point)?) {
            return domain("point is not a zero of the chain");
        }
    }
    let d = reg2sim(t)?;
    let i = d.branch_at(point)?;
    Ok(d.branches[i].array.product())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, rat};

    fn order() -> VarOrder {
        VarOrder::new(&["x", "y"]).unwrap()
    }

    fn chain(ps: &[&str]) -> ZeroDimChain {
        ZeroDimChain::new(
            ps.iter()
                .map(|s| parse_poly(s, &order()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn pt(xs: &[i64]) -> Vec<GaussianRational> {
        xs.iter().map(|&x| GaussianRational::real(rat(x))).collect()
    }

    #[test]
    fn t1_branches() {
        let d = reg2sim_uncached(&chain(&["x*(x-1)", "y^20*(y-1)"])).unwrap();
        let got: Vec<(ZeroDimChain, Vec<u32>)> = d
            .branches
            .iter()
            .map(|b| (b.chain.clone(), b.array.0.clone()))
            .collect();
        assert_eq!(
            got,
            vec![
                (chain(&["x-1", "y-1"]), vec![1, 1]),
                (chain(&["x-1", "y"]), vec![1, 20]),
                (chain(&["x", "y-1"]), vec![1, 1]),
                (chain(&["x", "y"]), vec![1, 20]),
            ]
        );
        assert_eq!(d.weighted_dimension(), 42);
    }

    #[test]
    fn cubic_example_branches() {
        let d = reg2sim_uncached(&chain(&["x^3-x^2+2", "(x^5+x)*y^3 - x^3*y^2"])).unwrap();
        let arrays: Vec<Vec<u32>> = d.branches.iter().map(|b| b.array.0.clone()).collect();
        assert_eq!(d.branches.len(), 4);
        assert_eq!(d.weighted_dimension(), 9);
        let find = |x: &str, y: &str| {
            d.branches
                .iter()
                .find(|b| b.chain == chain(&[x, y]))
                .map(|b| b.array.0.clone())
        };
        assert_eq!(find("x+1", "2*y-1"), Some(vec![1, 1]), "{arrays:?}");
        assert_eq!(find("x+1", "y"), Some(vec![1, 2]));
        assert_eq!(find("x^2-2*x+2", "y"), Some(vec![1, 2]));
        assert_eq!(find("x^2-2*x+2", "3*y+2*x-2"), Some(vec![1, 1]));
        let i = GaussianRational::new(rat(1), rat(1));
        let t = chain(&["x^3-x^2+2", "(x^5+x)*y^3 - x^3*y^2"]);
        assert_eq!(
            reg_mult(&t, &[i, GaussianRational::real(rat(0))]).unwrap(),
            2
        );
    }

    #[test]
    fn already_simple() {
        let d = reg2sim_uncached(&chain(&["x"])).unwrap();
        assert_eq!(d.branches.len(), 1);
        assert_eq!(d.branches[0].array, MultiplicityArray(vec![1]));
    }

    #[test]
    fn multiplicity_queries() {
        let t2 = chain(&["x*(x-1)^20", "y*(y-1)"]);
        assert_eq!(reg_mult(&t2, &pt(&[1, 1])).unwrap(), 20);
        assert_eq!(reg_mult(&t2, &pt(&[0, 1])).unwrap(), 1);
        assert!(matches!(reg_mult(&t2, &pt(&[5, 5])), Err(Error::Domain(_))));
        assert!(reg_mult(&t2, &pt(&[1])).is_err());
    }

    #[test]
    fn rejects_irregular_input() {
        let err = reg2sim_uncached(&chain(&["x", "x*y-1"])).unwrap_err();
        assert!(matches!(err, Error::NotRegular { index: 1, .. }));
    }

    #[test]
    fn simplicity_check() {
        assert!(is_simple(&chain(&["x^2-x", "y-x"])));
        assert!(!is_simple(&chain(&["x^2", "y"])));
        assert!(!is_simple(&chain(&["x-1", "y^2-2*x*y+1"])));
    }
}

//! Pseudo squarefree decomposition of a polynomial modulo a regular chain.
//!
//! Work items `[B, C, chain, acc, d]` form a splitting tree. Along any path,
//! specialized at a zero of the node's chain, `B` is the product of the
//! squarefree factors of multiplicity `>= d` and `C` is the part still carrying
//! repeated factors; `B / gcd(B, C)` is the factor of multiplicity exactly `d`.

use std::cmp::Ordering;

use crate::arith::{pseudo_divide, MPoly, Var};
use crate::chains::{make_monic, reduce, reduce_normalized, split_rational_base, ZeroDimChain};
use crate::error::{domain, Result};
use crate::pgcd::pgcd;

/// Squarefree factor `factor` with multiplicity `exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SqfComponent {
    pub factor: MPoly,
    pub exponent: u32,
}

/// Squarefree decomposition valid at every zero of `chain`. Components are
/// sorted by increasing exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsqfBranch {
    pub components: Vec<SqfComponent>,
    pub chain: ZeroDimChain,
}

#[derive(Debug, Clone)]
struct WorkItem {
    b: MPoly,
    c: MPoly,
    chain: ZeroDimChain,
    acc: Vec<SqfComponent>,
    d: u32,
}

/// Pseudo-quotient in `x_z`; a divisor of degree 0 is a unit on the branch.
fn pquo(f: &MPoly, g: &MPoly, z: Var) -> MPoly {
    if g.degree(z) == 0 {
        f.clone()
    } else {
        pseudo_divide(f, g, z)
            .expect("positive degree divisor")
            .quotient
    }
}

type Done = Vec<(Vec<SqfComponent>, ZeroDimChain)>;

/// Regularizes the leading coefficient of `f`, then opens one tree root per
/// branch of `pgcd(f, f')`.
fn seed(
    f: &MPoly,
    t: &ZeroDimChain,
    z: Var,
    done: &mut Done,
    stack: &mut Vec<WorkItem>,
) -> Result<()> {
    // a leading coefficient vanishing on part of the chain is dropped there
    for reg in pgcd(std::slice::from_ref(f), t, z)? {
        let f1 = reg.gcd;
        if f1.degree(z) == 0 {
            done.push((Vec::new(), reg.chain));
            continue;
        }
        let df = f1.derivative(z);
        for root in pgcd(&[f1.clone(), df], &reg.chain, z)? {
            let f2 = reduce_normalized(&f1, &root.chain);
            let c1 = make_monic(&root.gcd, &root.chain, z);
            let b1 = make_monic(&reduce(&pquo(&f2, &c1, z), &root.chain), &root.chain, z);
            stack.push(WorkItem {
                b: b1,
                c: c1,
                chain: root.chain,
                acc: Vec::new(),
                d: 1,
            });
        }
    }
    Ok(())
}

/// Pseudo squarefree decomposition of `f` in `x_z` modulo `t`, where `t` is a
/// chain over the variables below `z` (possibly empty).
pub fn psqf(f: &MPoly, t: &ZeroDimChain, z: Var) -> Result<Vec<PsqfBranch>> {
    if z != t.len() {
        return domain(format!(
            "psqf variable #{} must be the variable directly above the chain",
            z + 1
        ));
    }
    if f.main_var() != Some(z) {
        return domain("psqf needs a polynomial of positive degree in the top variable");
    }

    let mut done = Vec::new();
    let mut stack = Vec::new();
    for base in split_rational_base(t) {
        let fb = if base == *t {
            f.clone()
        } else {
            reduce_normalized(f, &base)
        };
        if fb.degree(z) == 0 {
            done.push((Vec::new(), base));
            continue;
        }
        seed(&fb, &base, z, &mut done, &mut stack)?;
    }

    while let Some(item) = stack.pop() {
        if item.b.degree(z) == 0 {
            done.push((item.acc, item.chain));
            continue;
        }
        for br in pgcd(&[item.b.clone(), item.c.clone()], &item.chain, z)? {
            let a = &br.chain;
            let same = *a == item.chain;
            let b1 = if same {
                item.b.clone()
            } else {
                reduce_normalized(&item.b, a)
            };
            let c1 = if same {
                item.c.clone()
            } else {
                reduce_normalized(&item.c, a)
            };
            let b2 = make_monic(&br.gcd, a, z);
            let c2 = make_monic(&reduce(&pquo(&c1, &b2, z), a), a, z);
            let p = reduce(&pquo(&b1, &b2, z), a);
            let mut acc: Vec<SqfComponent> = if same {
                item.acc.clone()
            } else {
                item.acc
                    .iter()
                    .map(|s| SqfComponent {
                        factor: make_monic(&reduce(&s.factor, a), a, z),
                        exponent: s.exponent,
                    })
                    .collect()
            };
            if p.degree(z) > 0 {
                acc.push(SqfComponent {
                    factor: make_monic(&p, a, z),
                    exponent: item.d,
                });
            }
            stack.push(WorkItem {
                b: b2,
                c: c2,
                chain: br.chain,
                acc,
                d: item.d + 1,
            });
        }
    }

    let mut out: Vec<PsqfBranch> = done
        .into_iter()
        .map(|(mut components, chain)| {
            components.sort_by_key(|c| c.exponent);
            PsqfBranch { components, chain }
        })
        .collect();
    out.sort_by(compare_branches);
    Ok(out)
}

fn compare_branches(a: &PsqfBranch, b: &PsqfBranch) -> Ordering {
    let key = |br: &PsqfBranch| {
        (
            br.chain.to_string(),
            br.components
                .iter()
                .map(|c| (c.exponent, c.factor.to_string()))
                .collect::<Vec<_>>(),
        )
    };
    key(a).cmp(&key(b))
}

//! Exact rational arithmetic and recursive multivariate polynomials.
//!
//! Polynomials are stored recursively by main variable ([`MPoly`]); variables
//! are plain indices whose names and order live in a [`VarOrder`]. Index `0` is
//! the smallest variable.

mod gaussian;
mod parse;
mod poly;
mod upoly;

pub use gaussian::GaussianRational;
pub use parse::{parse_poly, parse_rational};
pub use poly::{pseudo_divide, MPoly, PseudoDivision};
pub use upoly::{simplest_between, UPoly};

use num_rational::BigRational;

use crate::error::{domain, Result};

/// Arbitrary-precision rational, always stored in lowest terms.
pub type Rational = BigRational;

/// Index of a variable in a [`VarOrder`].
pub type Var = usize;

#[cfg(test)]
pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[cfg(test)]
pub(crate) fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Ascending list of distinct variable names, `names[0] < names[1] < ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarOrder {
    names: Vec<String>,
}

impl VarOrder {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return domain("variable order must not be empty");
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return domain(format!("`{n}` is not a valid variable name"));
            }
            if names[..i].contains(n) {
                return domain(format!("duplicate variable `{n}`"));
            }
        }
        Ok(VarOrder { names })
    }

    /// Generic order `x1 < x2 < ... < xn`.
    pub fn generic(n: usize) -> Self {
        VarOrder {
            names: (1..=n).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: Var) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<Var> {
        self.names.iter().position(|n| n == name)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

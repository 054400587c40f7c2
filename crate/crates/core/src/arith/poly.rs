use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{format_rational, GaussianRational, Rational, Var, VarOrder};
use crate::error::{domain, Result};

/// Exact multivariate polynomial over the rationals, stored recursively by its
/// main (largest) variable.
///
/// `Rec(v, cs)` is `sum_i cs[i] * x_v^i`. Canonical form: `cs.len() >= 2`, the
/// last entry is nonzero, and every entry only involves variables `< v`. Zero
/// is `Const(0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MPoly {
    Const(Rational),
    Rec(Var, Vec<MPoly>),
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::Const(Rational::zero())
    }

    pub fn one() -> Self {
        MPoly::Const(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        MPoly::Const(c)
    }

    pub fn int(n: i64) -> Self {
        MPoly::Const(Rational::from_integer(BigInt::from(n)))
    }

    /// The polynomial `x_v`.
    pub fn var(v: Var) -> Self {
        MPoly::Rec(v, vec![MPoly::zero(), MPoly::one()])
    }

    /// `x_v^k`.
    pub fn var_pow(v: Var, k: usize) -> Self {
        if k == 0 {
            return MPoly::one();
        }
        let mut cs = vec![MPoly::zero(); k + 1];
        cs[k] = MPoly::one();
        MPoly::Rec(v, cs)
    }

    /// Builds `sum_i cs[i] * x_v^i` from coefficients free of variables `>= v`,
    /// restoring canonical form.
    pub(crate) fn from_parts(v: Var, mut cs: Vec<MPoly>) -> Self {
        while cs.last().is_some_and(MPoly::is_zero) {
            cs.pop();
        }
        match cs.len() {
            0 => MPoly::zero(),
            1 => cs.pop().unwrap(),
            _ => {
                debug_assert!(cs.iter().all(|c| c.main_var().is_none_or(|w| w < v)));
                MPoly::Rec(v, cs)
            }
        }
    }

    /// Builds `sum_i cs[i] * x_v^i` where the coefficients are free of `x_v`
    /// but may involve variables above it.
    pub fn from_coeffs_in(v: Var, cs: Vec<MPoly>) -> Self {
        if cs.iter().all(|c| c.main_var().is_none_or(|w| w < v)) {
            return MPoly::from_parts(v, cs);
        }
        let mut acc = MPoly::zero();
        for c in cs.into_iter().rev() {
            acc = &(&acc * &MPoly::var(v)) + &c;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MPoly::Const(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, MPoly::Const(c) if c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, MPoly::Const(_))
    }

    pub fn as_constant(&self) -> Option<&Rational> {
        match self {
            MPoly::Const(c) => Some(c),
            MPoly::Rec(..) => None,
        }
    }

    /// Largest variable occurring in the polynomial.
    pub fn main_var(&self) -> Option<Var> {
        match self {
            MPoly::Const(_) => None,
            MPoly::Rec(v, _) => Some(*v),
        }
    }

    /// Degree in the main variable (0 for constants).
    pub fn main_degree(&self) -> usize {
        match self {
            MPoly::Const(_) => 0,
            MPoly::Rec(_, cs) => cs.len() - 1,
        }
    }

    pub fn degree(&self, v: Var) -> usize {
        match self {
            MPoly::Const(_) => 0,
            MPoly::Rec(w, cs) => match w.cmp(&v) {
                Ordering::Less => 0,
                Ordering::Equal => cs.len() - 1,
                Ordering::Greater => cs.iter().map(|c| c.degree(v)).max().unwrap_or(0),
            },
        }
    }

    pub fn total_degree(&self) -> usize {
        match self {
            MPoly::Const(_) => 0,
            MPoly::Rec(_, cs) => cs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| i + c.total_degree())
                .max()
                .unwrap_or(0),
        }
    }

    /// Coefficient of `x_main^deg`.
    pub fn initial(&self) -> MPoly {
        match self {
            MPoly::Const(_) => self.clone(),
            MPoly::Rec(_, cs) => cs.last().unwrap().clone(),
        }
    }

    /// `(lv, deg, ini)` of a non-constant polynomial.
    pub fn leading_data(&self) -> Result<(Var, usize, MPoly)> {
        match self {
            MPoly::Const(_) => domain("leading data of a constant polynomial"),
            MPoly::Rec(v, cs) => Ok((*v, cs.len() - 1, cs.last().unwrap().clone())),
        }
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `x_v`.
    /// Entries are free of `x_v`; the list is empty only for zero.
    pub fn coeffs_in(&self, v: Var) -> Vec<MPoly> {
        if self.is_zero() {
            return Vec::new();
        }
        match self {
            MPoly::Rec(w, cs) if *w == v => cs.clone(),
            MPoly::Rec(w, cs) if *w > v => {
                let views: Vec<Vec<MPoly>> = cs.iter().map(|c| c.coeffs_in(v)).collect();
                let d = views.iter().map(Vec::len).max().unwrap_or(0);
                (0..d)
                    .map(|j| {
                        let col = views
                            .iter()
                            .map(|vw| vw.get(j).cloned().unwrap_or_else(MPoly::zero))
                            .collect();
                        MPoly::from_parts(*w, col)
                    })
                    .collect()
            }
            _ => vec![self.clone()],
        }
    }

    /// Leading coefficient in `x_v`.
    pub fn lc_in(&self, v: Var) -> MPoly {
        self.coeffs_in(v).pop().unwrap_or_else(MPoly::zero)
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        match self {
            MPoly::Const(a) => MPoly::Const(a * c),
            MPoly::Rec(v, cs) => MPoly::Rec(*v, cs.iter().map(|p| p.scale(c)).collect()),
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exponentiation by a signed integer; negative exponents are rejected.
    pub fn pow_signed(&self, e: i64) -> Result<MPoly> {
        if e < 0 {
            return domain("negative exponent");
        }
        let e = u32::try_from(e).map_err(|_| crate::Error::Domain("exponent too large".into()))?;
        Ok(self.pow(e))
    }

    /// Formal partial derivative with respect to `x_v`.
    pub fn derivative(&self, v: Var) -> MPoly {
        match self {
            MPoly::Const(_) => MPoly::zero(),
            MPoly::Rec(w, cs) => match w.cmp(&v) {
                Ordering::Less => MPoly::zero(),
                Ordering::Equal => {
                    let ds = cs
                        .iter()
                        .enumerate()
                        .skip(1)
                        .map(|(i, c)| c.scale(&Rational::from_integer(BigInt::from(i))))
                        .collect();
                    MPoly::from_parts(v, ds)
                }
                Ordering::Greater => {
                    MPoly::from_parts(*w, cs.iter().map(|c| c.derivative(v)).collect())
                }
            },
        }
    }

    /// Substitutes the rational `value` for `x_v`.
    pub fn substitute(&self, v: Var, value: &Rational) -> MPoly {
        match self {
            MPoly::Const(_) => self.clone(),
            MPoly::Rec(w, cs) => match w.cmp(&v) {
                Ordering::Less => self.clone(),
                Ordering::Equal => {
                    let mut acc = MPoly::zero();
                    for c in cs.iter().rev() {
                        acc = &acc.scale(value) + c;
                    }
                    acc
                }
                Ordering::Greater => {
                    MPoly::from_coeffs_in(*w, cs.iter().map(|c| c.substitute(v, value)).collect())
                }
            },
        }
    }

    /// Exact evaluation over the Gaussian rationals. `point[v]` is the value
    /// of `x_v`; every variable occurring in `self` must be assigned.
    pub fn eval(&self, point: &[Option<GaussianRational>]) -> Result<GaussianRational> {
        match self {
            MPoly::Const(c) => Ok(GaussianRational::real(c.clone())),
            MPoly::Rec(v, cs) => {
                let Some(Some(x)) = point.get(*v) else {
                    return domain(format!("no value assigned to variable #{}", v + 1));
                };
                let mut acc = GaussianRational::zero();
                for c in cs.iter().rev() {
                    acc = acc * x.clone() + c.eval(point)?;
                }
                Ok(acc)
            }
        }
    }

    /// Evaluates at a fully specified Gaussian-rational point.
    pub fn eval_at(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        let assign: Vec<Option<GaussianRational>> = point.iter().cloned().map(Some).collect();
        self.eval(&assign)
    }

    pub fn eval_rational(&self, point: &[Rational]) -> Result<Rational> {
        match self {
            MPoly::Const(c) => Ok(c.clone()),
            MPoly::Rec(v, cs) => {
                let Some(x) = point.get(*v) else {
                    return domain(format!("no value assigned to variable #{}", v + 1));
                };
                let mut acc = Rational::zero();
                for c in cs.iter().rev() {
                    acc = acc * x + c.eval_rational(point)?;
                }
                Ok(acc)
            }
        }
    }

    fn for_each_coeff<'a>(&'a self, f: &mut impl FnMut(&'a Rational)) {
        match self {
            MPoly::Const(c) => f(c),
            MPoly::Rec(_, cs) => cs.iter().for_each(|c| c.for_each_coeff(f)),
        }
    }

    /// Nonzero terms as `(exponents, coefficient)` with `nvars` exponents each.
    pub fn terms(&self, nvars: usize) -> Vec<(Vec<u32>, Rational)> {
        fn walk(p: &MPoly, exps: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, Rational)>) {
            match p {
                MPoly::Const(c) => {
                    if !c.is_zero() {
                        out.push((exps.clone(), c.clone()));
                    }
                }
                MPoly::Rec(v, cs) => {
                    for (k, c) in cs.iter().enumerate() {
                        exps[*v] = k as u32;
                        walk(c, exps, out);
                    }
                    exps[*v] = 0;
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut vec![0; nvars], &mut out);
        out
    }

    /// `c * prod_i x_i^exps[i]`.
    pub fn monomial(exps: &[u32], c: Rational) -> MPoly {
        let mut p = MPoly::constant(c);
        for (v, &e) in exps.iter().enumerate() {
            if e > 0 {
                p = &p * &MPoly::var_pow(v, e as usize);
            }
        }
        p
    }

    /// Nonzero rational coefficients in recursive order.
    pub fn coefficients(&self) -> Vec<&Rational> {
        let mut out = Vec::new();
        self.for_each_coeff(&mut |c| {
            if !c.is_zero() {
                out.push(c)
            }
        });
        out
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coefficients().len()
    }

    /// Coefficient of the recursively leading term.
    pub fn leading_rational(&self) -> &Rational {
        match self {
            MPoly::Const(c) => c,
            MPoly::Rec(_, cs) => cs.last().unwrap().leading_rational(),
        }
    }

    /// Scales by the nonzero rational making all coefficients coprime integers
    /// with a positive recursively leading coefficient. Zero is rejected.
    pub fn primitive_normalize(&self) -> Result<MPoly> {
        if self.is_zero() {
            return domain("cannot normalize the zero polynomial");
        }
        Ok(self.scale(&self.normalizing_factor()))
    }

    /// Like [`MPoly::primitive_normalize`] but maps zero to zero.
    pub fn normalized(&self) -> MPoly {
        if self.is_zero() {
            MPoly::zero()
        } else {
            self.scale(&self.normalizing_factor())
        }
    }

    fn normalizing_factor(&self) -> Rational {
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        self.for_each_coeff(&mut |c| {
            if !c.is_zero() {
                den_lcm = den_lcm.lcm(c.denom());
                num_gcd = num_gcd.gcd(c.numer());
            }
        });
        let mut f = Rational::new(den_lcm, num_gcd);
        if self.leading_rational().is_negative() {
            f = -f;
        }
        f
    }

    /// Renders with the given variable names.
    pub fn display<'a>(&'a self, order: &'a VarOrder) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, order }
    }

    /// Renders with the given variable names.
    pub fn to_text(&self, order: &VarOrder) -> String {
        self.display(order).to_string()
    }

    fn write_terms(&self, order: &VarOrder, out: &mut Vec<(bool, String)>) {
        match self {
            MPoly::Const(c) => {
                if !c.is_zero() {
                    out.push((c.is_negative(), format_rational(&c.abs())));
                }
            }
            MPoly::Rec(v, cs) => {
                for (i, c) in cs.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let power = match i {
                        0 => String::new(),
                        1 => order.name(*v).to_string(),
                        _ => format!("{}^{}", order.name(*v), i),
                    };
                    if i == 0 {
                        c.write_terms(order, out);
                        continue;
                    }
                    match c {
                        MPoly::Const(k) => {
                            let neg = k.is_negative();
                            let k = k.abs();
                            let text = if k.is_one() {
                                power
                            } else {
                                format!("{}*{}", format_rational(&k), power)
                            };
                            out.push((neg, text));
                        }
                        _ => {
                            let mut inner = Vec::new();
                            c.write_terms(order, &mut inner);
                            if inner.len() == 1 {
                                let (neg, t) = inner.pop().unwrap();
                                out.push((neg, format!("{t}*{power}")));
                            } else {
                                out.push((false, format!("({})*{}", join_terms(&inner), power)));
                            }
                        }
                    }
                }
            }
        }
    }
}

fn join_terms(terms: &[(bool, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (neg, t)) in terms.iter().enumerate() {
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(t);
    }
    s
}

pub struct PolyDisplay<'a> {
    poly: &'a MPoly,
    order: &'a VarOrder,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        self.poly.write_terms(self.order, &mut terms);
        f.write_str(&join_terms(&terms))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.main_var().map_or(1, |v| v + 1);
        write!(f, "{}", self.display(&VarOrder::generic(n)))
    }
}

fn add_ref(a: &MPoly, b: &MPoly) -> MPoly {
    match (a, b) {
        (MPoly::Const(x), MPoly::Const(y)) => MPoly::Const(x + y),
        _ if b.is_zero() => a.clone(),
        _ if a.is_zero() => b.clone(),
        _ => match a.main_var().cmp(&b.main_var()) {
            Ordering::Greater => add_below(a, b),
            Ordering::Less => add_below(b, a),
            Ordering::Equal => {
                let (MPoly::Rec(v, xs), MPoly::Rec(_, ys)) = (a, b) else {
                    unreachable!()
                };
                let n = xs.len().max(ys.len());
                let cs = (0..n)
                    .map(|i| match (xs.get(i), ys.get(i)) {
                        (Some(x), Some(y)) => add_ref(x, y),
                        (Some(x), None) => x.clone(),
                        (None, Some(y)) => y.clone(),
                        (None, None) => unreachable!(),
                    })
                    .collect();
                MPoly::from_parts(*v, cs)
            }
        },
    }
}

/// `a + b` where `b` only involves variables below `a`'s main variable.
fn add_below(a: &MPoly, b: &MPoly) -> MPoly {
    let MPoly::Rec(v, cs) = a else { unreachable!() };
    let mut cs = cs.clone();
    cs[0] = add_ref(&cs[0], b);
    MPoly::Rec(*v, cs)
}

fn mul_ref(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() || b.is_zero() {
        return MPoly::zero();
    }
    match (a, b) {
        (MPoly::Const(x), MPoly::Const(y)) => MPoly::Const(x * y),
        (MPoly::Const(x), _) => b.scale(x),
        (_, MPoly::Const(y)) => a.scale(y),
        (MPoly::Rec(va, xs), MPoly::Rec(vb, ys)) => match va.cmp(vb) {
            Ordering::Greater => MPoly::Rec(*va, xs.iter().map(|x| mul_ref(x, b)).collect()),
            Ordering::Less => MPoly::Rec(*vb, ys.iter().map(|y| mul_ref(a, y)).collect()),
            Ordering::Equal => {
                let mut cs = vec![MPoly::zero(); xs.len() + ys.len() - 1];
                for (i, x) in xs.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in ys.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        cs[i + j] = add_ref(&cs[i + j], &mul_ref(x, y));
                    }
                }
                MPoly::from_parts(*va, cs)
            }
        },
    }
}

fn neg_ref(a: &MPoly) -> MPoly {
    match a {
        MPoly::Const(c) => MPoly::Const(-c),
        MPoly::Rec(v, cs) => MPoly::Rec(*v, cs.iter().map(neg_ref).collect()),
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        add_ref(self, rhs)
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        add_ref(self, &neg_ref(rhs))
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        mul_ref(self, rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        neg_ref(self)
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        add_ref(&self, &rhs)
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        mul_ref(&self, &rhs)
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        neg_ref(&self)
    }
}

/// Result of [`pseudo_divide`]: `ini(G)^exponent * F = quotient * G + remainder`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoDivision {
    pub quotient: MPoly,
    pub remainder: MPoly,
    pub exponent: u32,
}

/// Lazy pseudo-division of `f` by `g` in `x_v`, where `v = lv(g)`.
///
/// The initial of `g` multiplies the running remainder once per elimination
/// step; an initial equal to 1 is never counted.
pub fn pseudo_divide(f: &MPoly, g: &MPoly, v: Var) -> Result<PseudoDivision> {
    if g.main_var() != Some(v) {
        return domain(format!(
            "pseudo-division needs a divisor with leading variable #{}",
            v + 1
        ));
    }
    let gc = g.coeffs_in(v);
    let dg = gc.len() - 1;
    let ini = &gc[dg];
    let unit_ini = ini.is_one();
    let mut fc = f.coeffs_in(v);
    if fc.len() <= dg {
        return Ok(PseudoDivision {
            quotient: MPoly::zero(),
            remainder: f.clone(),
            exponent: 0,
        });
    }
    let mut q = vec![MPoly::zero(); fc.len() - dg];
    let mut e = 0u32;
    while fc.len() > dg {
        let d = fc.len() - 1;
        let lead = fc[d].clone();
        if !unit_ini {
            for c in fc.iter_mut() {
                *c = &*c * ini;
            }
            for c in q.iter_mut() {
                *c = &*c * ini;
            }
            e += 1;
        }
        q[d - dg] = &q[d - dg] + &lead;
        for (j, gj) in gc.iter().enumerate() {
            fc[d - dg + j] = &fc[d - dg + j] - &(&lead * gj);
        }
        while fc.last().is_some_and(MPoly::is_zero) {
            fc.pop();
        }
    }
    Ok(PseudoDivision {
        quotient: MPoly::from_coeffs_in(v, q),
        remainder: MPoly::from_coeffs_in(v, fc),
        exponent: e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, rat, rat_frac};

    fn xy() -> VarOrder {
        VarOrder::new(&["x", "y"]).unwrap()
    }

    fn p(s: &str) -> MPoly {
        parse_poly(s, &xy()).unwrap()
    }

    #[test]
    fn ring_operation_examples() {
        assert!((&p("x+1") + &p("-x-1")).is_zero());
        assert_eq!(&p("x+1") * &p("x-1"), p("x^2-1"));
        assert_eq!(p("2*y-1").pow(2), p("4*y^2-4*y+1"));
        assert!(p("x").pow_signed(-1).is_err());
        assert_eq!(p("x+y").pow_signed(0).unwrap(), MPoly::one());
    }

    #[test]
    fn leading_data_examples() {
        let (v, d, ini) = p("(x^5+x)*y^3 - x^3*y^2").leading_data().unwrap();
        assert_eq!((v, d, ini), (1, 3, p("x^5+x")));
        assert_eq!(p("x").leading_data().unwrap(), (0, 1, MPoly::one()));
        assert_eq!(
            p("3*x^5-3*x^3").leading_data().unwrap(),
            (0, 5, MPoly::int(3))
        );
        assert!(MPoly::int(7).leading_data().is_err());
    }

    #[test]
    fn pseudo_division_examples() {
        let r = pseudo_divide(&p("x^2"), &p("2*x+1"), 0).unwrap();
        assert_eq!(r.quotient, p("2*x-1"));
        assert_eq!(r.remainder, MPoly::one());
        assert_eq!(r.exponent, 2);

        let r = pseudo_divide(&p("x^2+1"), &p("x"), 0).unwrap();
        assert_eq!(r.quotient, p("x"));
        assert_eq!(r.remainder, MPoly::one());
        assert_eq!(r.exponent, 0);

        let r = pseudo_divide(&p("y^2-x"), &p("x*y-1"), 1).unwrap();
        assert_eq!(r.quotient, p("x*y+1"));
        assert_eq!(r.remainder, p("1-x^3"));
        assert_eq!(r.exponent, 2);

        assert!(pseudo_divide(&p("x"), &p("x^2"), 1).is_err());
        assert!(pseudo_divide(&p("x"), &MPoly::int(3), 0).is_err());
    }

    #[test]
    fn pseudo_division_with_dividend_above_divisor_variable() {
        let f = p("x^2*y^3 + x*y + 1");
        let g = p("2*x+1");
        let r = pseudo_divide(&f, &g, 0).unwrap();
        let lhs = &g.initial().pow(r.exponent) * &f;
        assert_eq!(lhs, &(&r.quotient * &g) + &r.remainder);
        assert_eq!(r.remainder.degree(0), 0);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("3*x^5-3*x^3").derivative(0), p("15*x^4-9*x^2"));
        assert!(p("x").derivative(1).is_zero());
        assert_eq!(
            p("(x^5+x)*y^3 - x^3*y^2").derivative(1),
            p("3*(x^5+x)*y^2 - 2*x^3*y")
        );
        assert_eq!(p("x^2*y + y^3").derivative(0), p("2*x*y"));
    }

    #[test]
    fn eval_examples() {
        let one_plus_i = GaussianRational::new(rat(1), rat(1));
        let v = p("x^2-2*x+2").eval(&[Some(one_plus_i)]).unwrap();
        assert!(v.is_zero());
        let m1 = GaussianRational::real(rat(-1));
        assert!(p("x+1").eval(&[Some(m1.clone())]).unwrap().is_zero());
        assert!(p("x^3-x^2+2").eval(&[Some(m1)]).unwrap().is_zero());
        assert!(p("x+y").eval(&[Some(GaussianRational::zero())]).is_err());
        assert!(p("x+y")
            .eval(&[Some(GaussianRational::zero()), None])
            .is_err());
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(p("3*x^2-3").primitive_normalize().unwrap(), p("x^2-1"));
        assert_eq!(p("-2*y+1").primitive_normalize().unwrap(), p("2*y-1"));
        assert_eq!(
            MPoly::var(0)
                .scale(&rat_frac(1, 2))
                .primitive_normalize()
                .unwrap(),
            p("x")
        );
        assert!(MPoly::zero().primitive_normalize().is_err());
        assert_eq!(
            p("6*x*y - 4*x")
                .scale(&rat_frac(-1, 3))
                .primitive_normalize()
                .unwrap(),
            p("3*x*y - 2*x")
        );
    }

    #[test]
    fn coefficient_views() {
        let f = p("x^2*y^3 + x*y + 1");
        let cs = f.coeffs_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], MPoly::one());
        assert_eq!(cs[1], p("y"));
        assert_eq!(cs[2], p("y^3"));
        assert_eq!(MPoly::from_coeffs_in(0, cs), f);
        assert_eq!(f.lc_in(1), p("x^2"));
        assert_eq!(f.degree(0), 2);
        assert_eq!(f.degree(1), 3);
        assert_eq!(f.total_degree(), 5);
    }

    #[test]
    fn substitution() {
        let f = p("x^2*y + x - y");
        assert_eq!(f.substitute(0, &rat(2)), p("3*y + 2"));
        assert_eq!(f.substitute(1, &rat(1)), p("x^2 + x - 1"));
    }

    #[test]
    fn display_round_trips() {
        let order = xy();
        for s in [
            "(x^5 + x)*y^3 - x^3*y^2",
            "x^3 - x^2 + 2",
            "-2*y + 1",
            "0",
            "(3*x - 3)*y - 2",
            "x*y",
        ] {
            let f = p(s);
            assert_eq!(f.to_text(&order), s);
            assert_eq!(p(&f.to_text(&order)), f);
        }
        assert_eq!(
            MPoly::var(0).scale(&rat_frac(-1, 2)).to_text(&order),
            "-1/2*x"
        );
    }
}

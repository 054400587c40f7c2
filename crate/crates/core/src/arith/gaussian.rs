use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{format_rational, parse_rational, Rational};
use crate::error::{domain, Result};

/// Element `re + im*i` of the Gaussian rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` with rational `a`, `b`
    /// written as `p` or `p/q`.
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return domain("empty coordinate");
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(GaussianRational::real(parse_rational(&s)?));
        };
        // split off the imaginary term at the last sign that is not leading
        let split = body
            .char_indices()
            .rev()
            .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i);
        let (re_text, im_text) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let im = match im_text {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            t => parse_rational(t.strip_prefix('+').unwrap_or(t))?,
        };
        let re = if re_text.is_empty() {
            Rational::zero()
        } else {
            parse_rational(re_text)?
        };
        Ok(GaussianRational { re, im })
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::real(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::real(Rational::one())
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        GaussianRational::real(r)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> Self {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussianRational::new(re, im)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", format_rational(&self.re));
        }
        let im = if self.im.abs().is_one() {
            String::new()
        } else {
            format_rational(&self.im.abs())
        };
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if self.re.is_zero() {
            let lead = if self.im.is_negative() { "-" } else { "" };
            write!(f, "{lead}{im}i")
        } else {
            write!(f, "{}{sign}{im}i", format_rational(&self.re))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};

    #[test]
    fn parses_point_coordinates() {
        let g = GaussianRational::parse("1+1i").unwrap();
        assert_eq!(g, GaussianRational::new(rat(1), rat(1)));
        let g = GaussianRational::parse("-3/2-i").unwrap();
        assert_eq!(g, GaussianRational::new(rat_frac(-3, 2), rat(-1)));
        let g = GaussianRational::parse("2i").unwrap();
        assert_eq!(g, GaussianRational::new(rat(0), rat(2)));
        let g = GaussianRational::parse("-i").unwrap();
        assert_eq!(g, GaussianRational::new(rat(0), rat(-1)));
        let g = GaussianRational::parse("0").unwrap();
        assert!(g.is_zero());
        assert!(GaussianRational::parse("1+").is_err());
        assert!(GaussianRational::parse("").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["1+i", "-3/2-i", "2i", "-i", "0", "7/3", "1-5/2i"] {
            let g = GaussianRational::parse(s).unwrap();
            assert_eq!(GaussianRational::parse(&g.to_string()).unwrap(), g);
        }
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::new(rat(0), rat(1));
        assert_eq!(i.clone() * i, GaussianRational::real(rat(-1)));
    }
}

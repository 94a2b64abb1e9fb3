use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{factorize, ln_bigint};

/// A formal sum `Σ c_p · log p` over primes with rational coefficients.
///
/// Every logarithm of a positive rational has a unique such expansion, so
/// equality of two expressions is decided exactly by comparing coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LogExpr {
    terms: BTreeMap<BigInt, BigRational>,
}

impl LogExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn prime_term(p: BigInt, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(p, coeff);
        }
        LogExpr { terms }
    }

    /// `log |n|` for a nonzero integer.
    pub fn ln_int(n: &BigInt) -> Self {
        let f = factorize(n).expect("log of zero");
        let mut out = LogExpr::zero();
        for (p, e) in f.factors() {
            out.terms
                .insert(p.clone(), BigRational::from_integer(BigInt::from(*e)));
        }
        out
    }

    /// `log |r|` for a nonzero rational.
    pub fn ln_rat(r: &BigRational) -> Self {
        LogExpr::ln_int(r.numer()).sub(&LogExpr::ln_int(r.denom()))
    }

    pub fn add(&self, other: &LogExpr) -> LogExpr {
        let mut terms = self.terms.clone();
        for (p, c) in &other.terms {
            let e = terms.entry(p.clone()).or_insert_with(BigRational::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(p);
            }
        }
        LogExpr { terms }
    }

    pub fn sub(&self, other: &LogExpr) -> LogExpr {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> LogExpr {
        if k.is_zero() {
            return LogExpr::zero();
        }
        LogExpr {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c * k)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &BigInt) -> BigRational {
        self.terms.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Floating-point value of the sum.
    pub fn value(&self) -> f64 {
        self.terms
            .iter()
            .map(|(p, c)| rat_to_f64(c) * ln_bigint(p))
            .sum()
    }

    /// Exact sign of the real number the expression denotes.
    pub fn signum(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let l = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut pos = BigInt::one();
        let mut neg = BigInt::one();
        for (p, c) in &self.terms {
            let k = (c * BigRational::from_integer(l.clone())).to_integer();
            let e: usize = k.abs().try_into().expect("exponent fits usize");
            if k.is_positive() {
                pos *= num_traits::pow(p.clone(), e);
            } else {
                neg *= num_traits::pow(p.clone(), e);
            }
        }
        pos.cmp(&neg)
    }

    /// Exact comparison of the values of two expressions.
    pub fn cmp_value(&self, other: &LogExpr) -> Ordering {
        self.sub(other).signum()
    }
}

impl fmt::Display for LogExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| {
                if c.denom().is_one() {
                    format!("{}*log({p})", c.numer())
                } else {
                    format!("({}/{})*log({p})", c.numer(), c.denom())
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        let sign = if r.is_negative() { -1.0 } else { 1.0 };
        sign * (ln_bigint(r.numer()) - ln_bigint(r.denom())).exp()
    })
}

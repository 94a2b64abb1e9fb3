//! Polynomials over Q with weighted degree accounting.
//!
//! Text grammar: `term (('+'|'-') term)*`, each term a `*`-separated product
//! of rational constants (`3`, `3/2`) and powers `x<i>` or `x<i>^<e>`.
//! Whitespace is ignored.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{parse_rat, rat_to_string, Rat};
use crate::error::{Error, Result};
use crate::weights::Weights;

/// Weighted degree of a nonzero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Homogeneous(u64),
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WPolynomial {
    terms: BTreeMap<Vec<u32>, Rat>,
    weights: Weights,
}

impl WPolynomial {
    /// Builds a polynomial, merging duplicate exponent tuples and dropping
    /// zero coefficients.
    pub fn new(terms: impl IntoIterator<Item = (Rat, Vec<u32>)>, weights: Weights) -> Result<Self> {
        let mut map: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (c, e) in terms {
            if e.len() != weights.len() {
                return Err(Error::ArityMismatch {
                    expected: weights.len(),
                    got: e.len(),
                });
            }
            *map.entry(e).or_insert_with(Rat::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(WPolynomial {
            terms: map,
            weights,
        })
    }

    /// The coordinate function `x_i`.
    pub fn variable(i: usize, weights: &Weights) -> Self {
        let mut e = vec![0; weights.len()];
        e[i] = 1;
        WPolynomial::new([(Rat::one(), e)], weights.clone()).expect("arity")
    }

    pub fn parse(s: &str, weights: &Weights) -> Result<Self> {
        parse_poly(s, weights)
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(coefficient, exponents)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &[u32])> {
        self.terms.iter().map(|(e, c)| (c, e.as_slice()))
    }

    pub fn term_degree(&self, exps: &[u32]) -> u64 {
        exps.iter()
            .zip(self.weights.q())
            .map(|(&e, &q)| e as u64 * q)
            .sum()
    }

    pub fn weighted_degree(&self) -> Result<Degree> {
        let mut degrees = self.terms.keys().map(|e| self.term_degree(e));
        let first = degrees.next().ok_or(Error::ZeroPolynomial)?;
        if degrees.all(|d| d == first) {
            Ok(Degree::Homogeneous(first))
        } else {
            Ok(Degree::Mixed)
        }
    }

    /// Degree of a homogeneous polynomial, `NotHomogeneous` otherwise.
    pub fn homogeneous_degree(&self) -> Result<u64> {
        match self.weighted_degree()? {
            Degree::Homogeneous(d) => Ok(d),
            Degree::Mixed => Err(Error::NotHomogeneous),
        }
    }

    pub fn eval(&self, x: &[Rat]) -> Result<Rat> {
        if x.len() != self.weights.len() {
            return Err(Error::ArityMismatch {
                expected: self.weights.len(),
                got: x.len(),
            });
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(xi.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn mul(&self, other: &WPolynomial) -> Result<WPolynomial> {
        if self.weights != other.weights {
            return Err(Error::WeightMismatch);
        }
        let mut out = Vec::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.push((c1 * c2, e));
            }
        }
        WPolynomial::new(out, self.weights.clone())
    }

    /// For a binary form `f(x_0, x_1)`, the coefficients (index = power of
    /// `X`) of `f / x_1^{d/q_1}` written in `X = x_0^{q_1} / x_1^{q_0}`.
    /// Each term `x_0^{a} x_1^{b}` becomes `X^{a/q_1}`.
    pub fn dehomogenize_binary(&self) -> Result<Vec<Rat>> {
        if self.weights.len() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                got: self.weights.len(),
            });
        }
        self.homogeneous_degree()?;
        let q1 = self.weights.get(1);
        let mut coeffs: Vec<Rat> = Vec::new();
        for (e, c) in &self.terms {
            if e[0] as u64 % q1 != 0 {
                return Err(Error::NonIntegralExponent {
                    exponent: e[0],
                    divisor: q1,
                });
            }
            let k = (e[0] as u64 / q1) as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rat::zero());
            }
            coeffs[k] += c;
        }
        Ok(coeffs)
    }
}

impl fmt::Display for WPolynomial {
    /// Terms sorted by exponent tuple, descending lexicographic.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            let is_const = e.iter().all(|&x| x == 0);
            if !mag.is_one() || is_const {
                factors.push(rat_to_string(&mag));
            }
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(format!("x{i}")),
                    _ => factors.push(format!("x{i}^{x}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for WPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn parse_poly(s: &str, weights: &Weights) -> Result<WPolynomial> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    // split into signed terms at top-level + / -
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in t.char_indices() {
        if (ch == '+' || ch == '-') && !t[..i].ends_with('^') {
            if i == 0 {
                neg = ch == '-';
                continue;
            }
            if cur.is_empty() {
                return Err(Error::Parse(format!("dangling sign in `{s}`")));
            }
            pieces.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("dangling sign in `{s}`")));
    }
    pieces.push((neg, cur));

    let mut terms = Vec::new();
    for (neg, body) in pieces {
        let mut coeff = if neg { -Rat::one() } else { Rat::one() };
        let mut exps = vec![0u32; weights.len()];
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in `{s}`")));
            }
            if let Some(var) = factor.strip_prefix('x') {
                let (idx, pow) = match var.split_once('^') {
                    Some((i, p)) => (i, p),
                    None => (var, "1"),
                };
                let bad = || Error::Parse(format!("bad variable `{factor}`"));
                if idx.is_empty() || !idx.chars().all(|c| c.is_ascii_digit()) {
                    return Err(bad());
                }
                if pow.is_empty() || !pow.chars().all(|c| c.is_ascii_digit()) {
                    return Err(bad());
                }
                let i: usize = idx.parse().map_err(|_| bad())?;
                let p: u32 = pow.parse().map_err(|_| bad())?;
                if i >= weights.len() {
                    return Err(Error::Parse(format!(
                        "variable x{i} out of range for {} coordinates",
                        weights.len()
                    )));
                }
                exps[i] += p;
            } else {
                coeff *= parse_rat(factor)?;
            }
        }
        terms.push((coeff, exps));
    }
    WPolynomial::new(terms, weights.clone())
}

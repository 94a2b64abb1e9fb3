//! Weighted greatest common divisors.
//!
//! `wgcd(x) = ∏_p p^{min_i ⌊ν_p(x_i)/q_i⌋}` on integer tuples, and the
//! generalized `hwgcd` on rational tuples using `ν⁺ = max(ν, 0)`. Zero
//! coordinates contribute `+∞` to every minimum.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{cmp_roots, ord_int, prime_divisors, ExtValue, LogExpr, Place, Rat};
use crate::error::{Error, Result};
use crate::points::WPoint;
use crate::weights::Weights;
use crate::wpoly::{Degree, WPolynomial};

/// A closed subscheme cut out by generators `f_1, …, f_t`, with one GCD
/// weight per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subscheme {
    generators: Vec<WPolynomial>,
    gcd_weights: Weights,
}

impl Subscheme {
    /// `gcd_weights` defaults to the generators' weighted degrees, which
    /// requires every generator to be homogeneous of positive degree.
    pub fn new(generators: Vec<WPolynomial>, gcd_weights: Option<Weights>) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::DegenerateGenerators("no generators".into()))?;
        if generators.iter().any(|g| g.weights() != first.weights()) {
            return Err(Error::WeightMismatch);
        }
        if generators.iter().any(WPolynomial::is_zero) {
            return Err(Error::DegenerateGenerators("zero generator".into()));
        }
        let gcd_weights = match gcd_weights {
            Some(gw) => {
                if gw.len() != generators.len() {
                    return Err(Error::ArityMismatch {
                        expected: generators.len(),
                        got: gw.len(),
                    });
                }
                gw
            }
            None => {
                let mut degs = Vec::with_capacity(generators.len());
                for g in &generators {
                    match g.weighted_degree()? {
                        Degree::Homogeneous(0) => {
                            return Err(Error::DegenerateGenerators(format!(
                                "constant generator `{g}`"
                            )))
                        }
                        Degree::Homogeneous(d) => degs.push(d),
                        Degree::Mixed => {
                            return Err(Error::DegenerateGenerators(format!(
                                "`{g}` is not weighted homogeneous; gcd weights must be given"
                            )))
                        }
                    }
                }
                Weights::new(degs)?
            }
        };
        Ok(Subscheme {
            generators,
            gcd_weights,
        })
    }

    /// Parses `;`-separated generators.
    pub fn parse(s: &str, weights: &Weights, gcd_weights: Option<Weights>) -> Result<Self> {
        let gens = s
            .split(';')
            .filter(|p| !p.trim().is_empty())
            .map(|p| WPolynomial::parse(p, weights))
            .collect::<Result<Vec<_>>>()?;
        Subscheme::new(gens, gcd_weights)
    }

    pub fn generators(&self) -> &[WPolynomial] {
        &self.generators
    }

    pub fn gcd_weights(&self) -> &Weights {
        &self.gcd_weights
    }

    pub fn weights(&self) -> &Weights {
        self.generators[0].weights()
    }

    pub fn all_homogeneous(&self) -> bool {
        self.generators
            .iter()
            .all(|g| matches!(g.weighted_degree(), Ok(Degree::Homogeneous(_))))
    }

    /// Generator list of the intersection `Y ∩ Y'`.
    pub fn intersect(&self, other: &Subscheme) -> Result<Subscheme> {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        let mut gw = self.gcd_weights.q().to_vec();
        gw.extend_from_slice(other.gcd_weights.q());
        Subscheme::new(gens, Some(Weights::new(gw)?))
    }

    pub fn values(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        self.generators.iter().map(|g| g.eval(x)).collect()
    }
}

fn check_arity(len: usize, w: &Weights) -> Result<()> {
    if len != w.len() {
        return Err(Error::ArityMismatch {
            expected: w.len(),
            got: len,
        });
    }
    Ok(())
}

/// Prime exponents of `hwgcd` for a rational tuple (integers included, where
/// `ν⁺ = ν`).
pub fn hwgcd_exponents(xs: &[Rat], w: &Weights) -> Result<BTreeMap<BigInt, u64>> {
    check_arity(xs.len(), w)?;
    let nonzero: Vec<(usize, &Rat)> = xs
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .collect();
    if nonzero.is_empty() {
        return Err(Error::AllZero);
    }
    // every contributing prime divides every nonzero numerator
    let (_, pivot) = nonzero
        .iter()
        .min_by(|a, b| a.1.numer().abs().cmp(&b.1.numer().abs()))
        .expect("nonempty");
    let mut out = BTreeMap::new();
    if pivot.numer().abs().is_one() {
        return Ok(out);
    }
    for p in prime_divisors(pivot.numer())? {
        let e = nonzero
            .iter()
            .map(|&(i, x)| {
                let num = ord_int(x.numer(), &p);
                let den = ord_int(x.denom(), &p);
                num.saturating_sub(den) / w.get(i)
            })
            .min()
            .expect("nonempty");
        if e > 0 {
            out.insert(p, e);
        }
    }
    Ok(out)
}

/// Prime exponents of `wgcd` for an integer tuple.
pub fn wgcd_exponents(xs: &[BigInt], w: &Weights) -> Result<BTreeMap<BigInt, u64>> {
    let rats: Vec<Rat> = xs.iter().cloned().map(Rat::from_integer).collect();
    hwgcd_exponents(&rats, w)
}

fn product(exps: &BTreeMap<BigInt, u64>) -> BigInt {
    exps.iter().fold(BigInt::one(), |acc, (p, &e)| {
        acc * num_traits::pow(p.clone(), e as usize)
    })
}

fn as_log(exps: &BTreeMap<BigInt, u64>) -> LogExpr {
    exps.iter().fold(LogExpr::zero(), |acc, (p, &e)| {
        acc.add(&LogExpr::prime_term(
            p.clone(),
            BigRational::from_integer(e.into()),
        ))
    })
}

/// Weighted gcd of an integer tuple. Always divides the ordinary gcd.
pub fn wgcd(xs: &[BigInt], w: &Weights) -> Result<BigInt> {
    Ok(product(&wgcd_exponents(xs, w)?))
}

/// `log wgcd` as the exact sum `Σ e_p log p`.
pub fn log_wgcd(xs: &[BigInt], w: &Weights) -> Result<LogExpr> {
    Ok(as_log(&wgcd_exponents(xs, w)?))
}

/// Generalized weighted gcd over finite places.
pub fn hwgcd(xs: &[Rat], w: &Weights) -> Result<BigInt> {
    Ok(product(&hwgcd_exponents(xs, w)?))
}

/// `log hwgcd`: exact finite-place part, plus the archimedean term
/// `min_i ν⁺_∞(x_i)/q_i` (no floor) when requested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogHwgcd {
    pub finite: LogExpr,
    pub archimedean: Option<LogExpr>,
}

impl LogHwgcd {
    pub fn total(&self) -> LogExpr {
        match &self.archimedean {
            Some(a) => self.finite.add(a),
            None => self.finite.clone(),
        }
    }

    pub fn value(&self) -> f64 {
        self.total().value()
    }
}

pub fn log_hwgcd(xs: &[Rat], w: &Weights, include_archimedean: bool) -> Result<LogHwgcd> {
    let finite = as_log(&hwgcd_exponents(xs, w)?);
    let archimedean = include_archimedean.then(|| archimedean_term(xs, w));
    Ok(LogHwgcd {
        finite,
        archimedean,
    })
}

/// `min_i max(-log|x_i|, 0) / q_i` over nonzero coordinates, exactly.
fn archimedean_term(xs: &[Rat], w: &Weights) -> LogExpr {
    let nonzero: Vec<(usize, Rat)> = xs
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.abs()))
        .collect();
    if nonzero.iter().any(|(_, x)| x >= &Rat::one()) {
        return LogExpr::zero();
    }
    // minimize (1/|x_i|)^{1/q_i}
    let (i, x) = nonzero
        .iter()
        .min_by(|(i, a), (j, b)| {
            cmp_roots(&a.recip(), w.get(*i), &b.recip(), w.get(*j)).then(Ordering::Equal)
        })
        .expect("nonzero point");
    LogExpr::ln_rat(&x.recip()).scale(&BigRational::new(BigInt::one(), BigInt::from(w.get(*i))))
}

/// `T_ν(x) = min_i ⌊ν⁺(x_i)/q_i⌋` at a finite place; at the archimedean
/// place the unfloored `min_i ν⁺(x_i)/q_i`.
pub fn t_nu(x: &WPoint, place: &Place) -> ExtValue {
    let w = x.weights();
    match place {
        Place::Finite(p) => {
            let e = x
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    ord_int(c.numer(), p).saturating_sub(ord_int(c.denom(), p)) / w.get(i)
                })
                .min()
                .expect("nonzero point");
            ExtValue::Count(e)
        }
        Place::Archimedean => ExtValue::Real(archimedean_term(x.coords(), w).value()),
    }
}

/// `log hwgcd(x; Y)` realized as `log wgcd(f_1(x), …, f_t(x))` on the
/// normalized representative of `x`, with `Y`'s gcd weights.
pub fn hwgcd_subscheme(x: &WPoint, y: &Subscheme) -> Result<LogExpr> {
    if x.weights() != y.weights() {
        return Err(Error::WeightMismatch);
    }
    let n = x.normalize();
    let values = y.values(n.coords())?;
    if values.iter().all(Zero::is_zero) {
        return Err(Error::PointOnSubscheme);
    }
    Ok(as_log(&hwgcd_exponents(&values, y.gcd_weights())?))
}
